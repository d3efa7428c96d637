//! Local terms of the pairing between a degree-zero divisor `D = Σ m_j (w_j)`
//! and a degree-zero cycle `Σ n_i (a_i)` of rational points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::formal::{log_sigma, sigma_correction, FormalGroup};
use super::rational::{to_padic_point, RationalCurve, GUARD_DIGITS};
use super::rho::{PlaceValue, RhoFamily};
use crate::curve::Point;
use crate::error::{Error, Result};
use crate::padic::element::rational_valuation;
use crate::padic::{LogBranch, Padic, PadicSeries};
use crate::splittings::{local_pairing, DivisorZeroCyclePair, LambdaSplitting};
use crate::tate::{sigma_sum, TateCurve};

pub type RationalDivisor = Vec<(Point<BigRational>, i64)>;

/// All `a_i - w_j` with weight `n_i m_j`.
pub fn differences(e: &RationalCurve, divisor: &RationalDivisor, cycle: &RationalDivisor) -> Result<RationalDivisor> {
    for d in [divisor, cycle] {
        if d.iter().map(|t| t.1).sum::<i64>() != 0 {
            return Err(Error::InvalidInput("divisor and cycle must have degree zero".into()));
        }
        if d.iter().any(|(pt, _)| !e.contains(pt)) {
            return Err(Error::InvalidInput("point is not on the curve".into()));
        }
    }
    let mut out = Vec::with_capacity(divisor.len() * cycle.len());
    for (a, n) in cycle {
        for (w, m) in divisor {
            let diff = e.curve.sub(a, w)?;
            if diff.is_infinity() {
                return Err(Error::SupportsIntersect);
            }
            out.push((diff, n * m));
        }
    }
    Ok(out)
}

/// Néron function `max(0, -ord_ℓ x)/2` on the identity component of a model
/// minimal at `ℓ`, constant term dropped.
pub fn neron_function(e: &RationalCurve, pt: &Point<BigRational>, l: u64) -> Result<i64> {
    let (x, _) = pt.coords().ok_or(Error::IdentityPoint)?;
    if !e.in_identity_component(pt, l) {
        return Err(Error::InvalidInput(format!("point leaves the identity component at {l}")));
    }
    let v = rational_valuation(l, x).unwrap_or(0);
    if v >= 0 {
        return Ok(0);
    }
    if v % 2 != 0 {
        return Err(Error::InvalidInput(format!("ord_{l} x = {v} is odd; model not minimal")));
    }
    Ok(-v / 2)
}

/// `-δ·log_p(ℓ)·Σ n_i m_j λ_ℓ(a_i - w_j)` for `ℓ != p`.
pub fn unramified_term(e: &RationalCurve, rho: &RhoFamily, l: u64, diffs: &RationalDivisor, prec: i64) -> Result<Padic> {
    let mut total = 0i64;
    for (pt, k) in diffs {
        total += k * neron_function(e, pt, l)?;
    }
    Ok(rho.delta.mul(&rho.log_prime(l, prec)?).mul_int(-total))
}

fn strip(mut n: BigInt, primes: &[u64]) -> BigInt {
    for &l in primes {
        let bl = BigInt::from(l);
        while (&n % &bl).is_zero() {
            n /= &bl;
        }
    }
    n
}

/// Sum of the unramified terms over all primes of good reduction other than
/// `p`, read off the denominators of `x(a_i - w_j)` without factoring them.
pub fn good_primes_term(e: &RationalCurve, rho: &RhoFamily, diffs: &RationalDivisor, prec: i64) -> Result<Padic> {
    let mut excluded = e.bad_primes.clone();
    excluded.push(e.p);
    let mut acc = Padic::zero(rho.p, prec);
    for (pt, k) in diffs {
        let (x, _) = pt.coords().ok_or(Error::IdentityPoint)?;
        let den = strip(x.denom().clone(), &excluded);
        if den.is_one() {
            continue;
        }
        // den = d^2; log d = log(den) / 2
        let log_den = rho.branch.log(&Padic::from_bigint(rho.p, &den, prec))?;
        acc = acc.add(&log_den.mul_int(*k));
    }
    rho.delta.mul(&acc).div_int(-2)
}

/// The Mazur–Tate sigma data at `p` for a Tate model.
#[derive(Debug, Clone)]
pub struct SigmaData {
    pub formal: FormalGroup,
    pub correction: PadicSeries,
}

impl SigmaData {
    pub fn new(tate: &TateCurve, formal: FormalGroup) -> Result<SigmaData> {
        let c = sigma_sum(tate.q(), 1, tate.terms()).mul_int(2);
        let correction = sigma_correction(&formal, &c)?;
        Ok(SigmaData { formal, correction })
    }

    /// `δ·Σ k λ(σ(t(pt)))` over points of the Tate model in the formal group.
    pub fn weighted_sum(&self, branch: &LogBranch, delta: &Padic, pts: &[(Point<Padic>, i64)]) -> Result<Padic> {
        let mut acc = Padic::zero(branch.p, delta.prec());
        for (pt, k) in pts {
            let t = self.formal.parameter(pt)?;
            acc = acc.add(&log_sigma(&self.formal, &self.correction, branch, &t)?.mul_int(*k));
        }
        Ok(delta.mul(&acc))
    }
}

/// The term at `p` through the Weierstrass sigma function.
pub fn p_term_sigma(e: &RationalCurve, sigma: &SigmaData, rho: &RhoFamily, diffs: &RationalDivisor) -> Result<Padic> {
    let pts = diffs
        .iter()
        .map(|(pt, k)| Ok((e.iso.map_point(&to_padic_point(pt, e.p, e.prec + GUARD_DIGITS)?)?, *k)))
        .collect::<Result<Vec<_>>>()?;
    sigma.weighted_sum(&rho.branch, &rho.delta, &pts)
}

/// The term at `p` through `u`-parameters, theta and the Mazur–Tate splitting.
pub fn p_term_tate(e: &RationalCurve, rho: &RhoFamily, divisor: &RationalDivisor, cycle: &RationalDivisor) -> Result<Padic> {
    let to_u = |d: &RationalDivisor| d.iter().map(|(pt, k)| Ok((e.u_parameter(pt)?, *k))).collect::<Result<Vec<_>>>();
    let pair = DivisorZeroCyclePair::new(to_u(divisor)?, to_u(cycle)?)?;
    let splitting = LambdaSplitting::mazur_tate(e.tate.clone(), rho.branch.clone());
    local_pairing(&pair, &splitting, &rho.delta)
}

/// Local terms at `p` (theta route) and at the bad primes, plus the aggregated
/// good-prime term.
pub fn local_terms(
    e: &RationalCurve,
    rho: &RhoFamily,
    divisor: &RationalDivisor,
    cycle: &RationalDivisor,
) -> Result<(Vec<PlaceValue>, Padic, RationalDivisor)> {
    let prec = e.prec + GUARD_DIGITS;
    let diffs = differences(e, divisor, cycle)?;
    let mut per_prime = vec![PlaceValue { prime: e.p, value: p_term_tate(e, rho, divisor, cycle)? }];
    for &l in e.bad_primes.iter().filter(|&&l| l != e.p) {
        per_prime.push(PlaceValue { prime: l, value: unramified_term(e, rho, l, &diffs, prec)? });
    }
    let good = good_primes_term(e, rho, &diffs, prec)?;
    Ok((per_prime, good, diffs))
}
