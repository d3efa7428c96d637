use super::element::Padic;
use crate::error::{Error, Result};

/// Power series in one variable truncated at `O(t^len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicSeries {
    p: u64,
    coeffs: Vec<Padic>,
}

impl PadicSeries {
    pub fn new(p: u64, coeffs: Vec<Padic>) -> PadicSeries {
        PadicSeries { p, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Padic {
        &self.coeffs[i]
    }

    fn zero_like(&self, len: usize) -> PadicSeries {
        let prec = self.coeffs.iter().map(Padic::prec).max().unwrap_or(0);
        PadicSeries::new(self.p, vec![Padic::zero(self.p, prec); len])
    }

    pub fn add(&self, o: &PadicSeries) -> PadicSeries {
        let n = self.len().min(o.len());
        PadicSeries::new(self.p, (0..n).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect())
    }

    pub fn sub(&self, o: &PadicSeries) -> PadicSeries {
        let n = self.len().min(o.len());
        PadicSeries::new(self.p, (0..n).map(|i| self.coeffs[i].sub(&o.coeffs[i])).collect())
    }

    pub fn scale(&self, c: &Padic) -> PadicSeries {
        PadicSeries::new(self.p, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &PadicSeries) -> PadicSeries {
        let n = self.len().min(o.len());
        let mut out: Vec<Option<Padic>> = vec![None; n];
        for i in 0..n {
            for j in 0..(n - i) {
                let t = self.coeffs[i].mul(&o.coeffs[j]);
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
        }
        PadicSeries::new(self.p, out.into_iter().map(|x| x.expect("filled")).collect())
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<PadicSeries> {
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = &self.coeffs[0];
        let inv0 = a0.inv()?;
        let mut b: Vec<Padic> = vec![inv0.clone()];
        for k in 1..n {
            let mut acc = self.coeffs[k].mul(&b[0]);
            for (j, bj) in b.iter().enumerate().take(k).skip(1) {
                acc = acc.add(&self.coeffs[k - j].mul(bj));
            }
            b.push(acc.neg().mul(&inv0));
        }
        Ok(PadicSeries::new(self.p, b))
    }

    /// `self(g(t))` for `g` without constant term.
    pub fn compose(&self, g: &PadicSeries) -> Result<PadicSeries> {
        if !g.is_empty() && !g.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("inner series must vanish at 0".into()));
        }
        let n = self.len().min(g.len());
        let mut acc = self.zero_like(n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&PadicSeries::new(self.p, g.coeffs[..n].to_vec()));
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Compositional inverse of `g = t + O(t^2)` (leading coefficient a unit).
    pub fn reversion(&self) -> Result<PadicSeries> {
        let n = self.len();
        if n < 2 || !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("reversion needs g(0) = 0 and a linear term".into()));
        }
        let a1 = &self.coeffs[1];
        let inv1 = a1.inv()?;
        // Newton-free iteration: h <- h - (g(h) - t) / g'(0), one new coefficient per round
        let prec = a1.prec();
        let mut h = vec![Padic::zero(self.p, prec); n];
        h[1] = inv1.clone();
        let mut hs = PadicSeries::new(self.p, h);
        for k in 2..n {
            let gh = self.compose(&hs)?;
            let fix = gh.coeffs[k].mul(&inv1);
            hs.coeffs[k] = hs.coeffs[k].sub(&fix);
        }
        Ok(hs)
    }

    pub fn derivative(&self) -> PadicSeries {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a.mul_int(i as i64)).collect();
        PadicSeries::new(self.p, c)
    }

    /// Antiderivative vanishing at 0; one term longer than `self`.
    pub fn integral(&self) -> Result<PadicSeries> {
        let prec = self.coeffs.first().map(Padic::prec).unwrap_or(0);
        let mut c = vec![Padic::zero(self.p, prec)];
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a.div_int(i as i64 + 1)?);
        }
        Ok(PadicSeries::new(self.p, c))
    }

    /// Divides by `t^k`, requiring the first `k` coefficients to vanish to
    /// absolute precision `tol`.
    pub fn shift_down(&self, k: usize, tol: i64) -> Result<PadicSeries> {
        if let Some(i) = (0..k.min(self.len())).find(|&i| self.coeffs[i].valuation() < tol) {
            return Err(Error::PrecisionExhausted(format!("coefficient {i} of a series expected to vanish")));
        }
        Ok(PadicSeries::new(self.p, self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Keeps the first `len` coefficients.
    pub fn truncate_len(&self, len: usize) -> PadicSeries {
        PadicSeries::new(self.p, self.coeffs.iter().take(len).cloned().collect())
    }

    /// Evaluates at `x` with `ord(x) > 0`; the caller accounts for the tail.
    pub fn eval(&self, x: &Padic) -> Padic {
        let mut acc = Padic::zero(self.p, x.prec().max(0));
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u64, c: &[i64]) -> PadicSeries {
        PadicSeries::new(p, c.iter().map(|&a| Padic::from_int(p, a, 20)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_t = s(5, &[1, -1, 0, 0, 0, 0]);
        let inv = one_minus_t.inverse().unwrap();
        assert_eq!(inv, s(5, &[1, 1, 1, 1, 1, 1]).mul(&s(5, &[1, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn reversion_roundtrip() {
        let g = s(7, &[0, 1, 3, -2, 5, 1, 4]);
        let h = g.reversion().unwrap();
        let id = g.compose(&h).unwrap();
        assert!(id.coeff(1).agrees_mod(&Padic::one(7, 20), 20));
        for k in 2..7 {
            assert!(id.coeff(k).valuation() >= 20, "coefficient {k}");
        }
    }
}
