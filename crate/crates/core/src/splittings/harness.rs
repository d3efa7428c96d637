use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::padic::{LogBranch, Padic, COMPARISON_BUFFER};
use crate::tate::{BiextPoint, TateCurve};

use super::{LambdaSplitting, UnitRootConstraint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub c: Padic,
    pub u: Padic,
    pub v: Padic,
    pub tau_mt: Padic,
    pub tau_ur: Padic,
    pub diff_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub p: u64,
    pub q: Padic,
    pub branch: Padic,
    pub delta: Padic,
    pub seed: u64,
    pub precision: i64,
    pub constraint: UnitRootConstraint,
    pub target: i64,
    pub min_diff_valuation: i64,
    pub samples: Vec<SampleRecord>,
    pub pass: bool,
}

fn random_unit(rng: &mut ChaCha8Rng, p: u64, val: i64, rel: i64) -> Padic {
    let mut digits: Vec<u64> = (0..rel).map(|_| rng.gen_range(0..p)).collect();
    digits[0] = rng.gen_range(1..p);
    Padic::from_unit_digits(p, val, &digits, val + rel).expect("well-formed digits")
}

fn random_principal(rng: &mut ChaCha8Rng, p: u64, rel: i64) -> Padic {
    let mut digits: Vec<u64> = (0..rel).map(|_| rng.gen_range(0..p)).collect();
    digits[0] = 1;
    Padic::from_unit_digits(p, 0, &digits, rel).expect("well-formed digits")
}

/// Sample point of one of four shapes, cycling with `index`: generic, formal,
/// off the identity component, and high valuation.
pub fn random_biext_point(rng: &mut ChaCha8Rng, curve: &TateCurve, index: usize) -> BiextPoint {
    let p = curve.p();
    let n = curve.prec();
    let q = curve.ord_q();
    let mut draw = |lo: i64, hi: i64| {
        let val = rng.gen_range(lo..=hi);
        random_unit(rng, p, val, n)
    };
    let c = draw(-2, 2);
    let (u, v) = match index % 4 {
        0 => (draw(-q, 2 * q), draw(-q, 2 * q)),
        1 => (random_principal(rng, p, n), random_principal(rng, p, n)),
        2 => {
            let lo = (q > 1) as i64;
            (draw(lo, q - 1), draw(lo, q - 1))
        }
        _ => (draw(2 * q, 5 * q), draw(2 * q, 5 * q)),
    };
    BiextPoint::new(c, u, v)
}

/// Evaluates the Mazur-Tate and unit-root splittings on seeded samples and
/// passes iff they agree to `N - B` digits everywhere.
pub fn comparison_harness(
    curve: &TateCurve,
    branch: &LogBranch,
    delta: &Padic,
    seed: u64,
    samples: usize,
    constraint: UnitRootConstraint,
) -> Result<SplittingReport> {
    let mt = LambdaSplitting::mazur_tate(curve.clone(), branch.clone());
    let ur = LambdaSplitting::unit_root(curve.clone(), branch.clone(), constraint)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = curve.prec() - COMPARISON_BUFFER;
    let mut records = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = random_biext_point(&mut rng, curve, i);
        let tau_mt = mt.eval(&x)?;
        let tau_ur = ur.eval(&x)?;
        let diff_valuation = tau_mt.sub(&tau_ur).valuation();
        records.push(SampleRecord { c: x.c, u: x.u, v: x.v, tau_mt, tau_ur, diff_valuation });
    }
    let min_diff_valuation = records.iter().map(|r| r.diff_valuation).min().unwrap_or(target);
    Ok(SplittingReport {
        p: curve.p(),
        q: curve.q().clone(),
        branch: branch.value_at_p.truncate(curve.prec()),
        delta: delta.clone(),
        seed,
        precision: curve.prec(),
        constraint,
        target,
        min_diff_valuation,
        samples: records,
        pass: min_diff_valuation >= target,
    })
}
