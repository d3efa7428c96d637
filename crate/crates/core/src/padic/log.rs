//! Branches of the p-adic logarithm and the functionals `rho = delta * lambda`.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::element::{inv_mod, ppow, strip_p, Padic};
use crate::error::{Error, Result};

/// Precision used for values that are exact by construction (only ever
/// attached to zero, where no digits are materialized).
pub const EXACT: i64 = i64::MAX / 8;

/// `log` of a p-adic unit, to absolute precision equal to the relative
/// precision of `u`.
///
/// Reduces to a principal unit congruent to 1 mod `p^(k+1)` by raising to
/// `(p-1) p^k`, sums the alternating series there, and divides back out.
pub fn log_unit(u: &Padic) -> Result<Padic> {
    if u.is_zero() || u.valuation() != 0 {
        return Err(Error::NotAUnit);
    }
    let p = u.p();
    let r = u.rel_prec();
    if r < 1 {
        return Err(Error::PrecisionExhausted("log of a unit with no known digits".into()));
    }
    let k = (r as u64).sqrt().max(1) as i64;
    let work = r + k;
    let modulus = ppow(p, work);
    let exponent = BigUint::from(p - 1) * ppow(p, k);
    let w = u.unit().modpow(&exponent, &modulus);
    let z = (&w + &modulus - BigUint::one()) % &modulus;
    let mut acc = BigInt::zero();
    if !z.is_zero() {
        let (s, z0) = strip_p(p, &BigInt::from(z));
        let z0 = z0
            .to_biguint()
            .expect("residue is non-negative");
        let mut n: i64 = 1;
        let mut z0n = BigUint::one();
        loop {
            let (vn, n_unit) = strip_p(p, &BigInt::from(n));
            let shift = s * n - vn;
            // s*n - log_p(n) bounds this and every later term from below
            if s * n - (n as u64).ilog(p) as i64 >= work {
                break;
            }
            z0n = (&z0n * &z0) % &modulus;
            if shift < work {
                let nu = n_unit.to_biguint().expect("positive");
                let inv = inv_mod(&(&nu % &modulus), &modulus).ok_or(Error::NotAUnit)?;
                let term = BigInt::from((&z0n * ppow(p, shift) % &modulus) * inv % &modulus);
                if n % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            n += 1;
        }
    }
    // log(W) has valuation >= k+1, so dividing by p^k leaves an integer
    let total = Padic::from_parts(p, 0, &acc, work);
    if total.is_zero() {
        return Ok(Padic::zero(p, r));
    }
    let scaled = Padic::from_parts(p, total.valuation() - k, &BigInt::from(total.unit().clone()), r);
    scaled.div_int((p - 1) as i64)
}

/// A branch of the logarithm on `Q_p^x`, fixed by its value at `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogBranch {
    pub p: u64,
    pub value_at_p: Padic,
}

impl LogBranch {
    /// The branch vanishing on `p`.
    pub fn iwasawa(p: u64) -> LogBranch {
        LogBranch {
            p,
            value_at_p: Padic::zero(p, EXACT),
        }
    }

    pub fn new(value_at_p: Padic) -> LogBranch {
        LogBranch {
            p: value_at_p.p(),
            value_at_p,
        }
    }

    /// Branch with an integer value at `p`, known to precision `prec`.
    pub fn with_int(p: u64, value: i64, prec: i64) -> LogBranch {
        if value == 0 {
            return LogBranch::iwasawa(p);
        }
        LogBranch::new(Padic::from_int(p, value, prec))
    }

    pub fn is_iwasawa(&self) -> bool {
        self.value_at_p.is_zero() && self.value_at_p.prec() >= EXACT
    }

    /// `lambda(x) = ord(x) lambda(p) + log(unit part)`.
    pub fn log(&self, x: &Padic) -> Result<Padic> {
        if x.p() != self.p {
            return Err(Error::PrimeMismatch(x.p(), self.p));
        }
        if x.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let v = x.valuation();
        let unit = Padic::from_parts(self.p, 0, &BigInt::from(x.unit().clone()), x.rel_prec());
        let l = log_unit(&unit)?;
        Ok(l.add(&self.value_at_p.mul_int(v)))
    }
}

/// `rho = delta * lambda`, with `delta` a scalar since the base field is `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoFunctional {
    pub branch: LogBranch,
    pub delta: Padic,
}

impl RhoFunctional {
    pub fn new(branch: LogBranch, delta: Padic) -> RhoFunctional {
        RhoFunctional { branch, delta }
    }

    pub fn eval(&self, x: &Padic) -> Result<Padic> {
        Ok(self.delta.mul(&self.branch.log(x)?))
    }

    /// Applies `delta` to a value already computed at the lambda level.
    pub fn apply_delta(&self, lambda_value: &Padic) -> Padic {
        self.delta.mul(lambda_value)
    }

    /// Ramified iff `rho` is nonzero on units, i.e. `delta != 0`.
    pub fn is_ramified(&self) -> bool {
        !self.delta.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    // independent oracle: sum the raw series for log(1+z) over the rationals
    fn log_series_oracle(p: u64, z: i64, prec: i64) -> Padic {
        let zr = BigRational::from_integer(BigInt::from(z));
        let mut acc = BigRational::zero();
        let mut pow = zr.clone();
        for n in 1..(4 * prec) {
            let term = &pow / BigRational::from_integer(BigInt::from(n));
            if n % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            pow *= &zr;
        }
        Padic::from_rational(p, &acc, prec).unwrap()
    }

    #[test]
    fn log_of_one_is_zero() {
        let b = LogBranch::iwasawa(5);
        assert!(b.log(&Padic::one(5, 20)).unwrap().is_zero());
    }

    #[test]
    fn log_six_matches_series() {
        let b = LogBranch::iwasawa(5);
        let l = b.log(&Padic::from_int(5, 6, 20)).unwrap();
        let o = log_series_oracle(5, 5, 20);
        assert!(l.agrees_mod(&o, 20), "{l} vs {o}");
        assert_eq!(l.valuation(), 1);
    }

    #[test]
    fn log_p_is_branch_value() {
        let b = LogBranch::iwasawa(5);
        assert!(b.log(&Padic::from_int(5, 5, 20)).unwrap().is_zero());
        let b1 = LogBranch::with_int(5, 1, 20);
        let l = b1.log(&Padic::from_int(5, 5, 20)).unwrap();
        assert!(l.agrees_mod(&Padic::one(5, 20), 19));
    }

    #[test]
    fn log_kills_roots_of_unity() {
        let b = LogBranch::iwasawa(7);
        let w = super::super::teichmuller::teichmuller(&Padic::from_int(7, 3, 25)).unwrap();
        assert!(b.log(&w).unwrap().is_zero());
        let m1 = Padic::from_int(7, -1, 25);
        assert!(b.log(&m1).unwrap().is_zero());
    }

    #[test]
    fn log_additive() {
        let b = LogBranch::with_int(3, 2, 30);
        let x = Padic::from_i64_ratio(3, 14, 5, 30).unwrap();
        let y = Padic::from_i64_ratio(3, 9, 11, 30).unwrap();
        let lhs = b.log(&x.mul(&y)).unwrap();
        let rhs = b.log(&x).unwrap().add(&b.log(&y).unwrap());
        assert!(lhs.agrees_mod(&rhs, 28));
    }
}
