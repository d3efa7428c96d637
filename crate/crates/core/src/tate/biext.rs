use serde::{Deserialize, Serialize};

use super::TateCurve;
use crate::error::{Error, Result};
use crate::padic::Padic;

/// A point `(c; u, v)` of the trivial cover. Two points describe the same
/// biextension element when they differ by the descent action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiextPoint {
    pub c: Padic,
    pub u: Padic,
    pub v: Padic,
}

impl BiextPoint {
    pub fn new(c: Padic, u: Padic, v: Padic) -> BiextPoint {
        BiextPoint { c, u, v }
    }

    /// Action of the fiber torus `G_m`.
    pub fn scalar(&self, a: &Padic) -> BiextPoint {
        BiextPoint::new(self.c.mul(a), self.u.clone(), self.v.clone())
    }
}

impl TateCurve {
    /// `(c; u, v) -> (c v^{-1}; q u, v)`, iterated `k` times (any sign).
    pub fn gamma(&self, x: &BiextPoint, k: i64) -> Result<BiextPoint> {
        Ok(BiextPoint::new(
            x.c.mul(&x.v.pow(-k)?),
            x.u.mul(&self.q.pow(k)?),
            x.v.clone(),
        ))
    }

    /// `(c; u, v) -> (c u^{-1}; u, q v)`, iterated `k` times (any sign).
    pub fn gamma_prime(&self, x: &BiextPoint, k: i64) -> Result<BiextPoint> {
        Ok(BiextPoint::new(
            x.c.mul(&x.u.pow(-k)?),
            x.u.clone(),
            x.v.mul(&self.q.pow(k)?),
        ))
    }

    /// Representative with `0 <= ord u, ord v < ord q`.
    pub fn gamma_normalize(&self, x: &BiextPoint) -> Result<BiextPoint> {
        let (k, _) = self.normalize(&x.u)?;
        let y = self.gamma(x, -k)?;
        let (l, _) = self.normalize(&y.v)?;
        self.gamma_prime(&y, -l)
    }

    fn same_class(&self, a: &Padic, b: &Padic) -> Result<i64> {
        let (ka, a0) = self.normalize(a)?;
        let (kb, b0) = self.normalize(b)?;
        if !a0.sub(&b0).is_zero() {
            return Err(Error::IncompatibleFibers);
        }
        Ok(ka - kb)
    }

    /// Group law in the fiber over a fixed `v` (adds the `u` coordinates).
    pub fn mul_first(&self, x1: &BiextPoint, x2: &BiextPoint) -> Result<BiextPoint> {
        let shift = self.same_class(&x1.v, &x2.v)?;
        let x2 = self.gamma_prime(x2, shift)?;
        Ok(BiextPoint::new(x1.c.mul(&x2.c), x1.u.mul(&x2.u), x1.v.clone()))
    }

    /// Group law in the fiber over a fixed `u` (adds the `v` coordinates).
    pub fn mul_second(&self, x1: &BiextPoint, x2: &BiextPoint) -> Result<BiextPoint> {
        let shift = self.same_class(&x1.u, &x2.u)?;
        let x2 = self.gamma(x2, shift)?;
        Ok(BiextPoint::new(x1.c.mul(&x2.c), x1.u.clone(), x1.v.mul(&x2.v)))
    }

    /// `m` times in the first law, then `n` times in the second:
    /// `(c^{mn}; u^m, v^n)`.
    pub fn int_mul(&self, x: &BiextPoint, m: i64, n: i64) -> Result<BiextPoint> {
        Ok(BiextPoint::new(x.c.pow(m * n)?, x.u.pow(m)?, x.v.pow(n)?))
    }
}
