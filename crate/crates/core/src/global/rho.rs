//! The family of local functionals `ρ_v` on `Q^×`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::rational::prime_support;
use crate::error::{Error, Result};
use crate::padic::element::rational_valuation;
use crate::padic::{LogBranch, Padic};

/// `ρ_p = δ·λ` at `p` and `ρ_ℓ(x) = -ord_ℓ(x)·δ·log_p(ℓ)` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoFamily {
    pub p: u64,
    pub branch: LogBranch,
    pub delta: Padic,
}

/// One place's contribution to a finite sum over places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceValue {
    pub prime: u64,
    pub value: Padic,
}

impl RhoFamily {
    pub fn new(branch: LogBranch, delta: Padic) -> Result<RhoFamily> {
        if delta.p() != branch.p {
            return Err(Error::PrimeMismatch(delta.p(), branch.p));
        }
        Ok(RhoFamily { p: branch.p, branch, delta })
    }

    pub fn iwasawa(p: u64, prec: i64) -> RhoFamily {
        RhoFamily { p, branch: LogBranch::iwasawa(p), delta: Padic::one(p, prec) }
    }

    /// `log_p(ℓ)` for a prime `ℓ != p`.
    pub fn log_prime(&self, l: u64, prec: i64) -> Result<Padic> {
        if l == self.p {
            return Err(Error::InvalidInput("log_prime takes primes other than p".into()));
        }
        self.branch.log(&Padic::from_bigint(self.p, &BigInt::from(l), prec))
    }

    pub fn at_p(&self, x: &BigRational, prec: i64) -> Result<Padic> {
        let v = rational_valuation(self.p, x).ok_or(Error::DivisionByIndistinguishableZero)?;
        Ok(self.delta.mul(&self.branch.log(&Padic::from_rational(self.p, x, v + prec)?)?))
    }

    pub fn at_prime(&self, l: u64, x: &BigRational, prec: i64) -> Result<Padic> {
        let v = rational_valuation(l, x).ok_or(Error::DivisionByIndistinguishableZero)?;
        Ok(self.delta.mul(&self.log_prime(l, prec)?).mul_int(-v))
    }

    /// Every nonzero term of `Σ_v ρ_v(x)`, `p` first.
    pub fn places(&self, x: &BigRational, prec: i64) -> Result<Vec<PlaceValue>> {
        if x.is_zero() {
            return Err(Error::InvalidInput("ρ is defined on Q^× only".into()));
        }
        let mut out = vec![PlaceValue { prime: self.p, value: self.at_p(x, prec)? }];
        for l in prime_support(x)? {
            if l != self.p {
                out.push(PlaceValue { prime: l, value: self.at_prime(l, x, prec)? });
            }
        }
        Ok(out)
    }
}

/// `Σ_v ρ_v(α)`. Vanishes exactly when `ord_p(α)·δ·λ(p) = 0`, so always for
/// the Iwasawa branch.
pub fn product_formula_check(alpha: &BigRational, rho: &RhoFamily, prec: i64) -> Result<Padic> {
    let mut acc = Padic::zero(rho.p, prec);
    for pv in rho.places(alpha, prec)? {
        acc = acc.add(&pv.value);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::rat;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn ten_at_five() {
        let rho = RhoFamily::iwasawa(5, 30);
        let places = rho.places(&rat(10), 30).unwrap();
        assert_eq!(places.iter().map(|pv| pv.prime).collect::<Vec<_>>(), vec![5, 2]);
        // log_p(10) = log_p(2) under the Iwasawa branch
        assert!(places[0].value.agrees_mod(&rho.log_prime(2, 30).unwrap(), 25));
        assert!(product_formula_check(&rat(10), &rho, 30).unwrap().valuation() >= 25);
    }

    #[test]
    fn roots_of_unity() {
        let rho = RhoFamily::iwasawa(7, 30);
        for a in [1, -1] {
            assert!(product_formula_check(&rat(a), &rho, 30).unwrap().valuation() >= 25);
        }
    }

    #[test]
    fn other_branch_leaves_p_part() {
        let rho = RhoFamily::new(LogBranch::with_int(5, 3, 30), Padic::from_int(5, 2, 30)).unwrap();
        let alpha = ratio(-2 * 125 * 7, 3 * 11);
        let defect = product_formula_check(&alpha, &rho, 30).unwrap();
        // δ·ord_p(α)·λ(p) = 2·3·3
        assert!(defect.agrees_mod(&Padic::from_int(5, 18, 30), 25));
        let mut iw = rho.clone();
        iw.branch = LogBranch::iwasawa(5);
        assert!(product_formula_check(&alpha, &iw, 30).unwrap().valuation() >= 25);
    }
}
