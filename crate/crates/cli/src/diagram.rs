//! JSON input for the `lift` command.

use padic_heights::frobenius::{rank_one_torus_diagram, synthetic_diagram, FrobeniusModule, ModuleLabel, SemiabelianDiagram, SyntheticBlocks};
use padic_heights::kedlaya::{frobenius_matrix, GoodCurve};
use padic_heights::padic::PadicMatrix;
use padic_heights::{Error, Result};
use serde::Deserialize;

use crate::parse::Number;

pub const DIAGRAM_SCHEMA_VERSION: u32 = 1;

/// Rows of entries in the command-line number syntax.
type Rows = Vec<Vec<String>>;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AbelianPart {
    /// `y^2 = x^3 + a x + b` with good ordinary reduction; Frobenius by Kedlaya.
    Curve { curve: [i64; 2] },
    Explicit { phi: Rows, hodge: Rows },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramInput {
    pub schema_version: u32,
    pub p: u64,
    pub precision: i64,
    pub torus_rank: usize,
    /// Absent for a trivial abelian part (rank-one torus only).
    pub abelian: Option<AbelianPart>,
    pub mix_g: Option<Rows>,
    pub hodge_lift_g: Option<Rows>,
    pub mix_a: Rows,
    pub hodge_lift_a: Rows,
}

fn matrix(p: u64, prec: i64, rows: &Rows, shape: (usize, usize), name: &str) -> Result<PadicMatrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Parse(format!("`{name}` must be {} x {}", shape.0, shape.1)));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for r in rows {
        for s in r {
            data.push(s.parse::<Number>().map_err(Error::Parse)?.to_padic(p, prec)?);
        }
    }
    Ok(PadicMatrix::new(p, shape.0, shape.1, data))
}

impl DiagramInput {
    pub fn build(&self) -> Result<SemiabelianDiagram> {
        if self.schema_version != DIAGRAM_SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported diagram schema version {}", self.schema_version)));
        }
        let (p, prec, t) = (self.p, self.precision, self.torus_rank);
        let b = match &self.abelian {
            None => {
                if t != 1 {
                    return Err(Error::InvalidInput("a trivial abelian part needs torus_rank 1".into()));
                }
                let mix = matrix(p, prec, &self.mix_a, (1, 1), "mix_a")?;
                let lift = matrix(p, prec, &self.hodge_lift_a, (1, 1), "hodge_lift_a")?;
                return rank_one_torus_diagram(mix.get(0, 0), lift.get(0, 0));
            }
            Some(AbelianPart::Curve { curve }) => frobenius_matrix(&GoodCurve::short(p, curve[0], curve[1])?, prec)?.module()?,
            Some(AbelianPart::Explicit { phi, hodge }) => {
                let n = phi.len();
                let h = hodge.first().map_or(0, Vec::len);
                FrobeniusModule::new(
                    ModuleLabel::B,
                    matrix(p, prec, phi, (n, n), "phi")?,
                    matrix(p, prec, hodge, (n, h), "hodge")?,
                )?
            }
        };
        let (nb, hb) = (b.dim(), b.hodge_dim());
        let missing = |name: &str| Error::Parse(format!("`{name}` is required with an abelian part"));
        let blocks = SyntheticBlocks {
            mix_g: matrix(p, prec, self.mix_g.as_ref().ok_or_else(|| missing("mix_g"))?, (nb, t), "mix_g")?,
            hodge_lift_g: matrix(p, prec, self.hodge_lift_g.as_ref().ok_or_else(|| missing("hodge_lift_g"))?, (nb, t), "hodge_lift_g")?,
            mix_a: matrix(p, prec, &self.mix_a, (t, nb + t), "mix_a")?,
            hodge_lift_a: matrix(p, prec, &self.hodge_lift_a, (t, hb + t), "hodge_lift_a")?,
        };
        synthetic_diagram(&b, t, &blocks)
    }
}
