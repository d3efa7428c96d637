//! One function per subcommand, each producing an [`Outcome`].

use std::path::PathBuf;

use clap::Args;
use num_rational::BigRational;
use padic_heights::curve::Point;
use padic_heights::derham::{reduce_form, LaurentForm};
use padic_heights::global::height::global_height;
use padic_heights::global::rational::RationalCurve;
use padic_heights::global::rho::{product_formula_check, RhoFamily};
use padic_heights::kedlaya::{frobenius_matrix, GoodCurve};
use padic_heights::padic::{Padic, COMPARISON_BUFFER};
use padic_heights::splittings::{closed_form_oracle, mt_splitting, comparison_harness, LambdaSplitting, UnitRootConstraint};
use padic_heights::tate::{BiextPoint, TateCurve};
use padic_heights::{Error, Result};
use serde_json::{json, Value};

use crate::diagram::DiagramInput;
use crate::parse::{int_list, rational_list, rational_point, BranchArg, Number};
use crate::report::{Outcome, Precision};

/// Extra digits requested for inputs beyond the working precision.
const INPUT_GUARD: i64 = 10;

#[derive(Debug, Args)]
pub struct Common {
    /// Working precision N (absolute digits).
    #[arg(long, env = "PADIC_HEIGHTS_PREC", default_value_t = 30)]
    pub prec: i64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TateArgs {
    #[arg(long)]
    pub p: u64,
    /// Tate parameter, ord_p(q) >= 1.
    #[arg(long)]
    pub q: Number,
    /// λ(p): `iwasawa`, `0`, or any rational or p-adic token.
    #[arg(long, default_value = "iwasawa")]
    pub branch: BranchArg,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub tate: TateArgs,
    #[arg(long, default_value = "1")]
    pub delta: Number,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Use the λ-proportional constraint instead of local constancy.
    #[arg(long)]
    pub schneider_constraint: bool,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, default_value = "1")]
    pub c: Number,
    #[arg(long)]
    pub u: Number,
    #[arg(long)]
    pub v: Number,
}

#[derive(Debug, Args)]
pub struct MtArgs {
    #[command(flatten)]
    pub tate: TateArgs,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Debug, Args)]
pub struct UnitRootArgs {
    #[command(flatten)]
    pub tate: TateArgs,
    #[arg(long)]
    pub schneider_constraint: bool,
    #[arg(long)]
    pub c: Option<Number>,
    #[arg(long, requires = "v")]
    pub u: Option<Number>,
    #[arg(long, requires = "u")]
    pub v: Option<Number>,
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    /// `a,b` for y^2 = x^3 + a x + b.
    #[arg(long)]
    pub curve: String,
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Diagram JSON file, or `-` for stdin.
    #[arg(long)]
    pub diagram: PathBuf,
}

#[derive(Debug, Args)]
pub struct DerhamArgs {
    /// Term-list file, or `-` for stdin.
    #[arg(long, conflicts_with = "form", required_unless_present = "form")]
    pub input: Option<PathBuf>,
    /// Terms inline, separated by `;` or newlines.
    #[arg(long)]
    pub form: Option<String>,
    /// Minimum number of torus variables.
    #[arg(long, default_value_t = 1)]
    pub vars: usize,
}

#[derive(Debug, Args)]
pub struct GlobalHeightArgs {
    /// `a1,a2,a3,a4,a6`, integral and minimal.
    #[arg(long)]
    pub curve: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub point: String,
    /// Second point; defaults to the first.
    #[arg(long)]
    pub point2: Option<String>,
    #[arg(long, default_value = "iwasawa")]
    pub branch: BranchArg,
    #[arg(long, default_value = "1")]
    pub delta: Number,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ProductFormulaArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Number,
    #[arg(long, default_value = "iwasawa")]
    pub branch: BranchArg,
    #[arg(long, default_value = "1")]
    pub delta: Number,
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn target(prec: i64) -> i64 {
    prec - COMPARISON_BUFFER
}

fn agreement(a: &Padic, b: &Padic) -> i64 {
    let d = a.sub(b);
    if d.is_zero() {
        d.prec()
    } else {
        d.valuation()
    }
}

fn tate_curve(a: &TateArgs, prec: i64) -> Result<TateCurve> {
    TateCurve::new(a.q.to_padic(a.p, prec + INPUT_GUARD)?, prec)
}

fn constraint(schneider: bool) -> UnitRootConstraint {
    if schneider {
        UnitRootConstraint::LambdaProportional
    } else {
        UnitRootConstraint::LocallyConstant
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(e.to_string()))
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

pub fn compare(a: &CompareArgs, prec: i64) -> Result<Outcome> {
    if a.samples == 0 {
        return Err(Error::InvalidInput("--samples must be at least 1".into()));
    }
    let curve = tate_curve(&a.tate, prec)?;
    let branch = a.tate.branch.branch(a.tate.p, prec + INPUT_GUARD)?;
    let delta = a.delta.to_padic(a.tate.p, prec + INPUT_GUARD)?;
    let report = comparison_harness(&curve, &branch, &delta, a.seed, a.samples, constraint(a.schneider_constraint))?;
    Ok(Outcome {
        pass: report.pass,
        precision: Precision { requested: prec, target: Some(report.target), achieved: Some(report.min_diff_valuation) },
        result: to_json(&report),
    })
}

fn biext_point(pt: &PointArgs, p: u64, prec: i64) -> Result<BiextPoint> {
    let w = prec + INPUT_GUARD;
    Ok(BiextPoint::new(pt.c.to_padic(p, w)?, pt.u.to_padic(p, w)?, pt.v.to_padic(p, w)?))
}

pub fn mt(a: &MtArgs, prec: i64) -> Result<Outcome> {
    let curve = tate_curve(&a.tate, prec)?;
    let branch = a.tate.branch.branch(a.tate.p, prec + INPUT_GUARD)?;
    let x = biext_point(&a.point, a.tate.p, prec)?;
    let tau = mt_splitting(&curve, &x, &branch)?;
    let oracle = closed_form_oracle(&curve, &x, &branch)?;
    let achieved = agreement(&tau, &oracle);
    Ok(Outcome {
        pass: achieved >= target(prec),
        precision: Precision { requested: prec, target: Some(target(prec)), achieved: Some(achieved) },
        result: json!({ "point": to_json(&x), "tau": to_json(&tau), "closed_form": to_json(&oracle) }),
    })
}

pub fn unitroot(a: &UnitRootArgs, prec: i64) -> Result<Outcome> {
    let curve = tate_curve(&a.tate, prec)?;
    let p = a.tate.p;
    let branch = a.tate.branch.branch(p, prec + INPUT_GUARD)?;
    let ur = LambdaSplitting::unit_root(curve.clone(), branch.clone(), constraint(a.schneider_constraint))?;
    let mut result = json!({ "constants": to_json(&ur.constants()) });
    let mut achieved = ur.constants().map(|k| k.alpha.iter().chain(&k.beta).map(Padic::prec).min().unwrap_or(prec));
    if let (Some(u), Some(v)) = (&a.u, &a.v) {
        let one = Number::Rational(BigRational::from_integer(1.into()));
        let pt = PointArgs { c: a.c.clone().unwrap_or(one), u: u.clone(), v: v.clone() };
        let x = biext_point(&pt, p, prec)?;
        let tau = ur.eval(&x)?;
        let tau_mt = mt_splitting(&curve, &x, &branch)?;
        achieved = Some(agreement(&tau, &tau_mt));
        result["point"] = to_json(&x);
        result["tau"] = to_json(&tau);
        result["tau_mazur_tate"] = to_json(&tau_mt);
    }
    let achieved = achieved.unwrap_or(prec);
    Ok(Outcome {
        pass: achieved >= target(prec),
        precision: Precision { requested: prec, target: Some(target(prec)), achieved: Some(achieved) },
        result,
    })
}

pub fn frobenius(a: &FrobeniusArgs, prec: i64) -> Result<Outcome> {
    let ab = int_list(&a.curve, 2)?;
    let curve = GoodCurve::short(a.p, ab[0], ab[1])?;
    let fr = frobenius_matrix(&curve, prec)?;
    let trace = agreement(&fr.matrix.trace(), &Padic::from_int(a.p, fr.a_p, prec));
    let det = agreement(&fr.matrix.det(), &Padic::from_int(a.p, a.p as i64, prec));
    let achieved = trace.min(det);
    Ok(Outcome {
        pass: achieved >= target(prec),
        precision: Precision { requested: prec, target: Some(target(prec)), achieved: Some(achieved) },
        result: to_json(&fr),
    })
}

pub fn lift(a: &LiftArgs) -> Result<Outcome> {
    let text = read_input(&a.diagram)?;
    let input: DiagramInput = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let d = input.build()?;
    let report = padic_heights::frobenius::verify_lift_against_unit_root(&d)?;
    Ok(Outcome {
        pass: report.pass,
        precision: Precision { requested: input.precision, target: Some(report.target), achieved: Some(report.residual_valuation) },
        result: to_json(&report),
    })
}

pub fn derham_reduce(a: &DerhamArgs, prec: i64) -> Result<Outcome> {
    let text = match (&a.form, &a.input) {
        (Some(f), _) => f.replace(';', "\n"),
        (None, Some(path)) => read_input(path)?,
        (None, None) => return Err(Error::InvalidInput("give --form or --input".into())),
    };
    let form = LaurentForm::parse(&text, a.vars)?;
    let red = reduce_form(&form)?;
    Ok(Outcome {
        pass: true,
        precision: Precision { requested: prec, target: None, achieved: None },
        result: to_json(&red.to_json(form.t)),
    })
}

fn rho_family(p: u64, branch: &BranchArg, delta: &Number, prec: i64) -> Result<RhoFamily> {
    RhoFamily::new(branch.branch(p, prec + INPUT_GUARD)?, delta.to_padic(p, prec + INPUT_GUARD)?)
}

pub fn global(a: &GlobalHeightArgs, prec: i64) -> Result<Outcome> {
    let coeffs: [BigRational; 5] = rational_list(&a.curve, 5)?.try_into().expect("five coefficients");
    let e = RationalCurve::new(coeffs, a.p, prec)?;
    let p1: Point<BigRational> = rational_point(&a.point)?;
    let p2 = match &a.point2 {
        Some(s) => rational_point(s)?,
        None => p1.clone(),
    };
    let rho = rho_family(a.p, &a.branch, &a.delta, prec)?;
    let report = global_height(&e, &p1, &p2, &rho, a.seed)?;
    let achieved = match (&report.p_term_sigma, report.per_prime.first()) {
        (Some(s), Some(t)) => agreement(s, &t.value).min(report.total.prec()),
        _ => report.total.prec(),
    };
    Ok(Outcome {
        pass: achieved >= target(prec),
        precision: Precision { requested: prec, target: Some(target(prec)), achieved: Some(achieved) },
        result: to_json(&report),
    })
}

pub fn product_formula(a: &ProductFormulaArgs, prec: i64) -> Result<Outcome> {
    let alpha = a.alpha.rational()?;
    let rho = rho_family(a.p, &a.branch, &a.delta, prec)?;
    let places = rho.places(alpha, prec)?;
    let sum = product_formula_check(alpha, &rho, prec)?;
    let achieved = if sum.is_zero() { sum.prec() } else { sum.valuation() };
    Ok(Outcome {
        pass: achieved >= target(prec),
        precision: Precision { requested: prec, target: Some(target(prec)), achieved: Some(achieved) },
        result: json!({ "alpha": alpha.to_string(), "places": to_json(&places), "sum": to_json(&sum) }),
    })
}
