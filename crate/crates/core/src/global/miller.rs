//! Miller functions `f_{m,P}` with divisor `m(P) - (mP) - (m-1)(O)`.

use crate::curve::{Curve, Field, Point};
use crate::error::{Error, Result};

fn nonzero<F: Field>(v: F) -> Result<F> {
    if v.f_is_zero() {
        return Err(Error::SupportHit);
    }
    Ok(v)
}

/// `l_{A,B}(z) / v_{A+B}(z)`: the line through `a` and `b` over the vertical
/// through their sum, with divisor `(A) + (B) - (A+B) - (O)`.
pub fn line_ratio<F: Field>(e: &Curve<F>, a: &Point<F>, b: &Point<F>, z: &Point<F>) -> Result<F> {
    let (zx, zy) = z.coords().ok_or(Error::SupportHit)?;
    let one = zx.one_like();
    if a.is_infinity() || b.is_infinity() {
        return Ok(one);
    }
    let sum = e.add(a, b)?;
    match e.line(a, b)? {
        None => {
            let (ax, _) = a.coords().expect("affine");
            nonzero(zx.f_sub(ax))
        }
        Some((lambda, nu)) => {
            let l = nonzero(zy.f_sub(&lambda.f_mul(zx)).f_sub(&nu))?;
            let (sx, _) = sum.coords().expect("non-vertical line meets a third affine point");
            l.f_div(&nonzero(zx.f_sub(sx))?)
        }
    }
}

/// `f_{m,P}(z)` for `m >= 1`, by double-and-add.
pub fn miller_eval<F: Field>(e: &Curve<F>, m: i64, pt: &Point<F>, z: &Point<F>) -> Result<F> {
    if m < 1 {
        return Err(Error::InvalidInput("Miller functions need m >= 1".into()));
    }
    let (zx, _) = z.coords().ok_or(Error::SupportHit)?;
    let mut f = zx.one_like();
    let mut t = pt.clone();
    let bits = 63 - m.leading_zeros();
    for i in (0..bits).rev() {
        f = f.f_mul(&f).f_mul(&line_ratio(e, &t, &t, z)?);
        t = e.add(&t, &t)?;
        if (m >> i) & 1 == 1 {
            f = f.f_mul(&line_ratio(e, &t, pt, z)?);
            t = e.add(&t, pt)?;
        }
    }
    Ok(f)
}
