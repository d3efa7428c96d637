//! The Tate curve `G_m / q^Z` over `Q_p` and its Poincaré biextension, realized
//! on the trivial cover `G_m x G_m x G_m` modulo the descent action.

mod biext;
mod theta;
mod weierstrass;

pub use biext::BiextPoint;
pub use weierstrass::{j_series, sigma_sum};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::Padic;

/// Extra product/sum terms beyond `ceil(N / ord q)`, enough for arguments with
/// valuation in `[-ord q, 2 ord q]`.
pub const TRUNCATION_BUFFER: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum Membership {
    /// Reduces to the identity: `u ≡ 1 (mod p)` after normalization.
    Formal,
    /// In the identity component of the Néron model but not formal.
    IdentityComponent,
    /// In the component indexed by `ord u mod ord q`.
    Component(i64),
}

#[derive(Debug, Clone)]
pub struct TateCurve {
    q: Padic,
    ord_q: i64,
    prec: i64,
}

impl TateCurve {
    /// `prec` is the absolute precision series are truncated for.
    pub fn new(q: Padic, prec: i64) -> Result<TateCurve> {
        if q.is_zero() || q.valuation() < 1 {
            return Err(Error::InvalidInput("the Tate parameter must have positive valuation".into()));
        }
        let ord_q = q.valuation();
        Ok(TateCurve { q, ord_q, prec })
    }

    pub fn p(&self) -> u64 {
        self.q.p()
    }

    pub fn q(&self) -> &Padic {
        &self.q
    }

    pub fn ord_q(&self) -> i64 {
        self.ord_q
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Number of terms `M` kept in the theta product and the `X`, `Y` sums.
    pub fn terms(&self) -> i64 {
        (self.prec + self.ord_q - 1).div_euclid(self.ord_q) + TRUNCATION_BUFFER
    }

    /// `u = q^k u0` with `0 <= ord u0 < ord q`; returns `(k, u0)`.
    pub fn normalize(&self, u: &Padic) -> Result<(i64, Padic)> {
        if u.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let k = u.valuation().div_euclid(self.ord_q);
        Ok((k, u.mul(&self.q.pow(-k)?)))
    }

    pub fn membership(&self, u: &Padic) -> Result<Membership> {
        let (_, u0) = self.normalize(u)?;
        let v = u0.valuation();
        Ok(if v > 0 {
            Membership::Component(v)
        } else if u0.residue() == 1 {
            Membership::Formal
        } else {
            Membership::IdentityComponent
        })
    }

    pub fn is_identity(&self, u: &Padic) -> Result<bool> {
        let (_, u0) = self.normalize(u)?;
        Ok(u0.sub(&Padic::one(u0.p(), u0.prec())).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> TateCurve {
        TateCurve::new(Padic::from_int(5, 125 * 3, 40), 30).unwrap()
    }

    #[test]
    fn normalization_range() {
        let t = curve();
        let u = Padic::from_i64_ratio(5, 7, 5 * 5 * 5 * 5 * 5 * 5 * 5, 30).unwrap();
        let (k, u0) = t.normalize(&u).unwrap();
        assert_eq!(k, -3);
        assert_eq!(u0.valuation(), 2);
        let back = u0.mul(&t.q().pow(k).unwrap());
        assert!(back.agrees_mod(&u, 20));
    }

    #[test]
    fn membership_classes() {
        let t = curve();
        let m = |n: i64, d: i64| t.membership(&Padic::from_i64_ratio(5, n, d, 30).unwrap()).unwrap();
        assert_eq!(m(6, 1), Membership::Formal);
        assert_eq!(m(2, 1), Membership::IdentityComponent);
        assert_eq!(m(10, 1), Membership::Component(1));
        assert_eq!(m(1, 5), Membership::Component(2));
        assert_eq!(m(375 * 11, 1), Membership::Formal);
    }

    #[test]
    fn rejects_unit_parameter() {
        assert!(TateCurve::new(Padic::from_int(5, 3, 20), 20).is_err());
    }
}
