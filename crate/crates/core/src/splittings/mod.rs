//! λ-splittings of the Poincaré biextension of a Tate curve: the Mazur-Tate
//! splitting, the unit-root splitting, and the local pairings they induce.

mod harness;
mod mazur_tate;
mod pairing;
mod unit_root;

pub use harness::{random_biext_point, comparison_harness, SampleRecord, SplittingReport};
pub use mazur_tate::{closed_form_oracle, formal_multiplier, mt_splitting, sigma_tilde, SEARCH_CAP};
pub use pairing::{local_pairing, DivisorZeroCyclePair};
pub use unit_root::{
    check_tate_diagram, solve_unit_root_constants, unit_root_splitting_tate, UnitRootConstants,
    UnitRootConstraint,
};

use serde::Serialize;

use crate::error::Result;
use crate::padic::{LogBranch, Padic};
use crate::tate::{BiextPoint, TateCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingKind {
    MazurTate,
    UnitRoot,
    ClosedFormOracle,
}

/// A λ-valued splitting of `P(K)` ready for evaluation.
#[derive(Debug, Clone)]
pub struct LambdaSplitting {
    pub kind: SplittingKind,
    pub curve: TateCurve,
    pub branch: LogBranch,
    constants: Option<UnitRootConstants>,
}

impl LambdaSplitting {
    pub fn mazur_tate(curve: TateCurve, branch: LogBranch) -> LambdaSplitting {
        LambdaSplitting { kind: SplittingKind::MazurTate, curve, branch, constants: None }
    }

    pub fn closed_form(curve: TateCurve, branch: LogBranch) -> LambdaSplitting {
        LambdaSplitting { kind: SplittingKind::ClosedFormOracle, curve, branch, constants: None }
    }

    /// Solves the constraint system once; evaluation is then cheap.
    pub fn unit_root(curve: TateCurve, branch: LogBranch, constraint: UnitRootConstraint) -> Result<LambdaSplitting> {
        if constraint == UnitRootConstraint::LocallyConstant {
            check_tate_diagram(&curve)?;
        }
        let k = solve_unit_root_constants(&curve, &branch, constraint)?;
        Ok(LambdaSplitting { kind: SplittingKind::UnitRoot, curve, branch, constants: Some(k) })
    }

    pub fn constants(&self) -> Option<&UnitRootConstants> {
        self.constants.as_ref()
    }

    pub fn eval(&self, x: &BiextPoint) -> Result<Padic> {
        match self.kind {
            SplittingKind::MazurTate => mt_splitting(&self.curve, x, &self.branch),
            SplittingKind::ClosedFormOracle => closed_form_oracle(&self.curve, x, &self.branch),
            SplittingKind::UnitRoot => {
                self.constants.as_ref().expect("solved at construction").eval(&self.curve, &self.branch, x)
            }
        }
    }
}
