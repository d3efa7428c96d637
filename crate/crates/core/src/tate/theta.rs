use super::TateCurve;
use crate::error::{Error, Result};
use crate::padic::Padic;

impl TateCurve {
    /// `(1 - u) prod_{n >= 1} (1 - q^n u)(1 - q^n / u)`, for `u` with valuation
    /// in `[-ord q, 2 ord q]`.
    pub fn theta(&self, u: &Padic) -> Result<Padic> {
        if u.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let v = u.valuation();
        if v < -self.ord_q || v > 2 * self.ord_q {
            return Err(Error::InvalidInput(format!(
                "theta argument valuation {v} outside [-{q}, {}]",
                2 * self.ord_q,
                q = self.ord_q
            )));
        }
        let p = self.p();
        let one = Padic::one(p, self.prec + 2 * self.ord_q);
        let u_inv = u.inv()?;
        let mut acc = one.sub(u);
        let mut qn = one.clone();
        for _ in 1..=self.terms() {
            qn = qn.mul(&self.q);
            acc = acc.mul(&one.sub(&qn.mul(u)));
            acc = acc.mul(&one.sub(&qn.mul(&u_inv)));
        }
        Ok(acc)
    }
}
