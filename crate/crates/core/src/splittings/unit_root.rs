use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{rank_one_torus_diagram, same_span, unit_root_subspace, verify_lift_against_unit_root};
use crate::padic::{LogBranch, Padic, PadicMatrix, COMPARISON_BUFFER};
use crate::tate::{BiextPoint, TateCurve};

/// The condition singling out one solution of the descent equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitRootConstraint {
    /// `a(v)` is locally constant: the rigidification kills the unit-root
    /// direction.
    LocallyConstant,
    /// `a(v) = λ(v) / λ(q)`. Only used as a negative control.
    LambdaProportional,
}

/// Coefficients of `a(v) = α0 ord v + α1 L(v)` and `b(v) = β0 ord v + β1 L(v)`,
/// with `L` the Iwasawa logarithm, in the ansatz
/// `τ(c; u, v) = λ(c) + a(v) λ(u) + b(v) ord u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitRootConstants {
    pub alpha: [Padic; 2],
    pub beta: [Padic; 2],
    pub constraint: UnitRootConstraint,
}

impl UnitRootConstants {
    pub fn eval(&self, curve: &TateCurve, branch: &LogBranch, x: &BiextPoint) -> Result<Padic> {
        let iwasawa = LogBranch::iwasawa(curve.p());
        let ov = x.v.valuation();
        let lv = iwasawa.log(&x.v)?;
        let a = self.alpha[0].mul_int(ov).add(&self.alpha[1].mul(&lv));
        let b = self.beta[0].mul_int(ov).add(&self.beta[1].mul(&lv));
        Ok(branch
            .log(&x.c)?
            .add(&a.mul(&branch.log(&x.u)?))
            .add(&b.mul_int(x.u.valuation())))
    }
}

/// Checks, on the Frobenius module of the Tate curve, that the unit-root
/// subspace of `H^1_dR(A)` is the kernel of `π*` and that the lifted splitting
/// has image in it.
pub fn check_tate_diagram(curve: &TateCurve) -> Result<()> {
    let p = curve.p();
    let prec = curve.prec();
    let mix = LogBranch::iwasawa(p).log(curve.q())?.truncate(prec);
    let d = rank_one_torus_diagram(&mix, &Padic::zero(p, prec))?;
    let tol = d.working_prec() - COMPARISON_BUFFER;
    let w = unit_root_subspace(&d.a)?;
    if !same_span(&w, &d.pi_star.kernel(tol), tol) {
        return Err(Error::DiagramInconsistent("unit-root subspace differs from ker pi*".into()));
    }
    let report = verify_lift_against_unit_root(&d)?;
    if !report.pass {
        return Err(Error::DiagramInconsistent(format!("lifted splitting misses W_A: {report:?}")));
    }
    Ok(())
}

/// Solves the descent equations plus the chosen extra constraint for
/// `(α0, α1, β0, β1)`; fails if the system is inconsistent or underdetermined.
pub fn solve_unit_root_constants(
    curve: &TateCurve,
    branch: &LogBranch,
    constraint: UnitRootConstraint,
) -> Result<UnitRootConstants> {
    let p = curve.p();
    let prec = curve.prec();
    let c = |n: i64| Padic::from_int(p, n, prec);
    let lam_q = branch.log(curve.q())?.truncate(prec);
    let log_q = LogBranch::iwasawa(p).log(curve.q())?.truncate(prec);
    let lam_p = branch.value_at_p.truncate(prec);
    let ord_q = c(curve.ord_q());
    let z = c(0);

    let mut rows: Vec<[Padic; 5]> = vec![
        // Γ-invariance, ord v and L(v) parts
        [lam_q.clone(), z.clone(), ord_q.clone(), z.clone(), lam_p.clone()],
        [z.clone(), lam_q.clone(), z.clone(), ord_q.clone(), c(1)],
        // Γ'-invariance: a(qv) = a(v) + 1, b(qv) = b(v)
        [ord_q.clone(), log_q.clone(), z.clone(), z.clone(), c(1)],
        [z.clone(), z.clone(), ord_q.clone(), log_q.clone(), z.clone()],
    ];
    match constraint {
        UnitRootConstraint::LocallyConstant => {
            rows.push([z.clone(), c(1), z.clone(), z.clone(), z.clone()]);
        }
        UnitRootConstraint::LambdaProportional => {
            rows.push([lam_q.clone(), z.clone(), z.clone(), z.clone(), lam_p]);
            rows.push([z.clone(), lam_q, z.clone(), z.clone(), c(1)]);
        }
    }
    let n = rows.len();
    let m = PadicMatrix::new(p, n, 5, rows.into_iter().flatten().collect());
    let (r, pivots) = m.rref(prec - COMPARISON_BUFFER);
    if pivots.contains(&4) {
        return Err(Error::ConstraintInconsistent(format!("{constraint:?} system has no solution")));
    }
    if pivots != [0, 1, 2, 3] {
        return Err(Error::ConstraintInconsistent(format!("{constraint:?} system is underdetermined")));
    }
    let sol = |i: usize| r.get(i, 4).clone();
    Ok(UnitRootConstants {
        alpha: [sol(0), sol(1)],
        beta: [sol(2), sol(3)],
        constraint,
    })
}

/// One-shot evaluation; prefer `LambdaSplitting::unit_root` for many points.
pub fn unit_root_splitting_tate(curve: &TateCurve, x: &BiextPoint, branch: &LogBranch) -> Result<Padic> {
    check_tate_diagram(curve)?;
    solve_unit_root_constants(curve, branch, UnitRootConstraint::LocallyConstant)?.eval(curve, branch, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, n: i64, d: i64) -> Padic {
        Padic::from_i64_ratio(p, n, d, 30).unwrap()
    }

    #[test]
    fn worked_example_one_third() {
        let t = TateCurve::new(Padic::from_int(5, 125, 40), 30).unwrap();
        let x = BiextPoint::new(r(5, 1, 1), r(5, 5, 1), r(5, 5, 1));
        let tau = unit_root_splitting_tate(&t, &x, &LogBranch::with_int(5, 1, 30)).unwrap();
        assert!(tau.agrees_mod(&r(5, 1, 3), 25));
    }

    #[test]
    fn formal_input_reads_off_log() {
        let t = TateCurve::new(Padic::from_int(7, 7 * 3, 40), 30).unwrap();
        let br = LogBranch::with_int(7, 3, 30);
        let x = BiextPoint::new(r(7, 5, 7), r(7, 8, 1), r(7, 15, 1));
        let tau = unit_root_splitting_tate(&t, &x, &br).unwrap();
        assert!(tau.agrees_mod(&br.log(&x.c).unwrap(), 25));
    }

    #[test]
    fn solution_shape() {
        let t = TateCurve::new(Padic::from_int(5, 25 * 2, 40), 30).unwrap();
        let k = solve_unit_root_constants(&t, &LogBranch::iwasawa(5), UnitRootConstraint::LocallyConstant).unwrap();
        assert!(k.alpha[0].agrees_mod(&r(5, 1, 2), 25));
        assert!(k.alpha[1].valuation() >= 25);
        assert!(k.beta[1].agrees_mod(&r(5, 1, 2), 25));
    }

    #[test]
    fn proportional_constraint_fails_when_log_q_vanishes() {
        let t = TateCurve::new(Padic::from_int(5, 125, 40), 30).unwrap();
        let res = solve_unit_root_constants(&t, &LogBranch::iwasawa(5), UnitRootConstraint::LambdaProportional);
        assert!(matches!(res, Err(Error::ConstraintInconsistent(_))));
    }

    #[test]
    fn proportional_constraint_has_no_b_term() {
        let t = TateCurve::new(Padic::from_int(5, 125 * 2, 40), 30).unwrap();
        let k = solve_unit_root_constants(&t, &LogBranch::with_int(5, 1, 30), UnitRootConstraint::LambdaProportional)
            .unwrap();
        assert!(k.beta[0].valuation() >= 20 && k.beta[1].valuation() >= 20);
    }
}
