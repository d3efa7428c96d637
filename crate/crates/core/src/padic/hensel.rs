use super::element::Padic;
use super::poly::PadicPoly;
use crate::error::{Error, Result};

/// Newton-lifts a simple root of `f` mod `p` to the precision of `f`'s coefficients.
pub fn hensel_root(f: &PadicPoly, seed: u64) -> Result<Padic> {
    let p = f.p();
    let prec = f.min_prec();
    if f.coeffs().iter().any(|c| !c.is_integral()) {
        return Err(Error::InvalidInput("polynomial must have integral coefficients".into()));
    }
    let df = f.derivative();
    let mut x = Padic::from_int(p, (seed % p) as i64, prec);
    if f.eval(&x).valuation() < 1 {
        return Err(Error::InvalidInput(format!("{seed} is not a root mod {p}")));
    }
    if df.eval(&x).valuation() >= 1 {
        return Err(Error::NonSimpleRoot);
    }
    for _ in 0..(2 * prec.max(1).ilog2() as usize + 4) {
        let fx = f.eval(&x);
        if fx.valuation() >= prec {
            break;
        }
        let step = fx.div(&df.eval(&x))?;
        x = x.sub(&step).lift_to(prec);
    }
    Ok(x.truncate(prec))
}
