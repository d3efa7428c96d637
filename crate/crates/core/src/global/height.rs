//! The global pairing `h(P, Q) = Σ_v (D_Q, (P) - (O))_v`.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::local::{local_terms, p_term_sigma, RationalDivisor, SigmaData};
use super::rational::{RationalCurve, GUARD_DIGITS};
use super::rho::{PlaceValue, RhoFamily};
use crate::curve::Point;
use crate::error::{Error, Result};
use crate::padic::Padic;

/// Largest multiple tried when moving a point into the formal group at `p`
/// and the identity component at every bad prime.
pub const MULTIPLIER_CAP: i64 = 120;

/// Auxiliary points tried before giving up on disjoint supports.
pub const DIVISOR_ATTEMPTS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub p: u64,
    pub precision: i64,
    pub seed: u64,
    /// `m, n` with `mP`, `nQ` in the good subgroup.
    pub multipliers: [i64; 2],
    /// `R = k1·mP + k2·nQ` for the divisor `(nQ + R) - (R)`.
    pub auxiliary: Option<[i64; 2]>,
    pub per_prime: Vec<PlaceValue>,
    pub good_primes: Padic,
    /// The term at `p` recomputed through the sigma function.
    pub p_term_sigma: Option<Padic>,
    pub total: Padic,
}

fn in_good_subgroup(e: &RationalCurve, pt: &Point<BigRational>) -> bool {
    pt.is_infinity() || (e.in_formal_group(pt) && e.bad_primes.iter().all(|&l| e.in_identity_component(pt, l)))
}

/// Least `m >= 1` with `mP` in the formal group at `p` and in the identity
/// component at each bad prime (possibly `mP = O`).
pub fn good_multiplier(e: &RationalCurve, pt: &Point<BigRational>) -> Result<(i64, Point<BigRational>)> {
    let mut acc = pt.clone();
    for m in 1..=MULTIPLIER_CAP {
        if in_good_subgroup(e, &acc) {
            return Ok((m, acc));
        }
        acc = e.curve.add(&acc, pt)?;
    }
    Err(Error::SearchBoundExceeded(format!("no multiple up to {MULTIPLIER_CAP} lands in the good subgroup")))
}

/// Pairing of `D` with the cycle, scaled by `1/scale`, as a report body.
pub fn divisor_pairing(
    e: &RationalCurve,
    rho: &RhoFamily,
    divisor: &RationalDivisor,
    cycle: &RationalDivisor,
    scale: i64,
    with_sigma: bool,
) -> Result<(Vec<PlaceValue>, Padic, Option<Padic>, Padic)> {
    let (mut per_prime, good, diffs) = local_terms(e, rho, divisor, cycle)?;
    let sigma = if with_sigma {
        let data = SigmaData::new(&e.tate, e.formal.clone())?;
        Some(p_term_sigma(e, &data, rho, &diffs)?.div_int(scale)?)
    } else {
        None
    };
    for pv in &mut per_prime {
        pv.value = pv.value.div_int(scale)?;
    }
    let good = good.div_int(scale)?;
    let total = per_prime.iter().fold(good.clone(), |acc, pv| acc.add(&pv.value));
    Ok((per_prime, good, sigma, total))
}

/// `h(P, Q)` for the Iwasawa branch, with `D = (nQ + R) - (R)` paired against
/// `(mP) - (O)` and divided by `mn`. `R` is drawn from `seed`.
pub fn global_height(
    e: &RationalCurve,
    p1: &Point<BigRational>,
    p2: &Point<BigRational>,
    rho: &RhoFamily,
    seed: u64,
) -> Result<HeightReport> {
    if !rho.branch.is_iwasawa() {
        return Err(Error::InvalidInput("the global pairing needs λ(p) = 0 for Σ_v ρ_v = 0".into()));
    }
    if rho.p != e.p {
        return Err(Error::PrimeMismatch(rho.p, e.p));
    }
    for pt in [p1, p2] {
        if !e.contains(pt) {
            return Err(Error::InvalidInput("point is not on the curve".into()));
        }
    }
    let prec = e.prec + GUARD_DIGITS;
    let (m, a) = good_multiplier(e, p1)?;
    let (n, b) = good_multiplier(e, p2)?;
    let mut report = HeightReport {
        p: e.p,
        precision: e.prec,
        seed,
        multipliers: [m, n],
        auxiliary: None,
        per_prime: Vec::new(),
        good_primes: Padic::zero(e.p, prec),
        p_term_sigma: None,
        total: Padic::zero(e.p, prec),
    };
    if a.is_infinity() || b.is_infinity() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cycle = vec![(a.clone(), 1), (Point::Infinity, -1)];
    for _ in 0..DIVISOR_ATTEMPTS {
        let k = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let r = e.curve.add(&e.curve.mul(k[0], &a)?, &e.curve.mul(k[1], &b)?)?;
        let divisor = vec![(e.curve.add(&b, &r)?, 1), (r, -1)];
        match divisor_pairing(e, rho, &divisor, &cycle, m * n, true) {
            Err(Error::SupportsIntersect) => continue,
            Err(err) => return Err(err),
            Ok((per_prime, good, sigma, total)) => {
                report.auxiliary = Some(k);
                report.per_prime = per_prime;
                report.good_primes = good;
                report.p_term_sigma = sigma;
                report.total = total;
                return Ok(report);
            }
        }
    }
    Err(Error::DivisorChoiceUnavailable)
}
