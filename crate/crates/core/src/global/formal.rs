//! Formal group of a Weierstrass curve over `Q_p` in the parameter
//! `t = -x/y`, and the two series that connect it to the Tate uniformization.

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::padic::{LogBranch, Padic, PadicSeries};

/// Series expansions at the origin, truncated at `O(t^len)`.
#[derive(Debug, Clone)]
pub struct FormalGroup {
    p: u64,
    /// `w(t) / t^3`, where the point is `(t / w, -1 / w)`.
    pub w_scaled: PadicSeries,
    /// `t^2 x(t)`.
    pub x_scaled: PadicSeries,
    /// Invariant differential `omega(t) dt`.
    pub omega: PadicSeries,
    /// Formal logarithm, `log(t) = t + O(t^2)`.
    pub log: PadicSeries,
}

fn shift_up(s: &PadicSeries, k: usize, len: usize) -> PadicSeries {
    let p = s.coeffs().first().map(Padic::p).unwrap_or(0);
    let prec = s.coeffs().first().map(Padic::prec).unwrap_or(0);
    let mut c = vec![Padic::zero(p, prec); k];
    c.extend(s.coeffs().iter().cloned());
    c.truncate(len);
    PadicSeries::new(p, c)
}

fn constant(p: u64, c: &Padic, len: usize, prec: i64) -> PadicSeries {
    let mut v = vec![Padic::zero(p, prec); len];
    v[0] = c.clone();
    PadicSeries::new(p, v)
}

impl FormalGroup {
    pub fn new(e: &Curve<Padic>, len: usize) -> Result<FormalGroup> {
        if len < 4 {
            return Err(Error::InvalidInput("formal group needs at least 4 terms".into()));
        }
        let p = e.a1.p();
        let prec = e.coeffs().iter().map(|a| a.prec()).min().unwrap_or(0);
        let one = constant(p, &Padic::one(p, prec), len, prec);
        let a = |c: &Padic| constant(p, c, len, prec);
        // v = 1 + a1 t v + a2 t^2 v + a3 t^3 v^2 + a4 t^4 v^2 + a6 t^6 v^3
        let mut v = one.clone();
        for _ in 0..len {
            let v2 = v.mul(&v);
            let v3 = v2.mul(&v);
            v = one
                .add(&shift_up(&v.mul(&a(&e.a1)), 1, len))
                .add(&shift_up(&v.mul(&a(&e.a2)), 2, len))
                .add(&shift_up(&v2.mul(&a(&e.a3)), 3, len))
                .add(&shift_up(&v2.mul(&a(&e.a4)), 4, len))
                .add(&shift_up(&v3.mul(&a(&e.a6)), 6, len));
        }
        let x_scaled = v.inverse()?;
        // t^3 dx/dt = -2 X + t X', t^3 (2y + a1 x + a3) = -2 X + a1 t X + a3 t^3
        let two = Padic::from_int(p, 2, prec);
        let x_deriv = x_scaled.derivative();
        let num = shift_up(&x_deriv, 1, len).sub(&x_scaled.scale(&two));
        let den = x_scaled
            .scale(&two.neg())
            .add(&shift_up(&x_scaled.scale(&e.a1), 1, len))
            .add(&shift_up(&a(&e.a3), 3, len));
        let omega = num.mul(&den.inverse()?);
        let log = omega.integral()?.truncate_len(len);
        Ok(FormalGroup { p, w_scaled: v, x_scaled, omega, log })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// `t = -x/y` of a point in the formal group.
    pub fn parameter(&self, pt: &Point<Padic>) -> Result<Padic> {
        let (x, y) = pt.coords().ok_or(Error::IdentityPoint)?;
        let t = x.div(y)?.neg();
        if t.valuation() < 1 {
            return Err(Error::NotInFormalPart);
        }
        Ok(t)
    }

    /// The point with parameter `t`.
    pub fn point_at(&self, t: &Padic) -> Result<Point<Padic>> {
        let w = t.pow(3)?.mul(&self.w_scaled.eval(t));
        Ok(Point::Affine(t.div(&w)?, w.inv()?.neg()))
    }

    pub fn log_at(&self, t: &Padic) -> Padic {
        self.log.eval(t)
    }
}

/// `U(t) = exp(log(t))`: for a model whose invariant differential is `du/u`,
/// the `u`-parameter of the formal point with parameter `t`.
pub fn formal_iso_series(fg: &FormalGroup) -> Result<PadicSeries> {
    let len = fg.len();
    let w = fg.omega.coeffs();
    let prec = w[0].prec();
    let mut u = vec![Padic::one(fg.p, prec)];
    for n in 0..len - 1 {
        let mut acc = Padic::zero(fg.p, prec);
        for k in 0..=n {
            acc = acc.add(&w[k].mul(&u[n - k]));
        }
        u.push(acc.div_int(n as i64 + 1)?);
    }
    Ok(PadicSeries::new(fg.p, u))
}

/// `h(t)` with `log sigma = log z + h`, `z` the formal logarithm, for the
/// sigma function solving `-(d/dz)^2 log sigma = x + c`.
pub fn sigma_correction(fg: &FormalGroup, c: &Padic) -> Result<PadicSeries> {
    let len = fg.len();
    let p = fg.p;
    let prec = fg.omega.coeffs()[0].prec();
    let z_over_t = fg.log.shift_down(1, prec)?;
    let inv_sq = z_over_t.mul(&z_over_t).inverse()?;
    let c_t2 = shift_up(&constant(p, c, len, prec), 2, len);
    let t2_f = inv_sq.truncate_len(len - 1).sub(&fg.x_scaled.truncate_len(len - 1)).sub(&c_t2.truncate_len(len - 1));
    let tol = t2_f.coeffs().iter().skip(2).map(Padic::prec).min().unwrap_or(prec) - 4;
    let f = t2_f.shift_down(2, tol)?;
    let g1 = f.mul(&fg.omega.truncate_len(f.len())).integral()?;
    g1.mul(&fg.omega.truncate_len(g1.len())).integral()
}

/// `λ(sigma(t)) = λ(z) + h(t)`.
pub fn log_sigma(fg: &FormalGroup, h: &PadicSeries, branch: &LogBranch, t: &Padic) -> Result<Padic> {
    Ok(branch.log(&fg.log_at(t))?.add(&h.eval(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::log_unit;
    use crate::tate::{sigma_sum, TateCurve};

    fn tate() -> (TateCurve, Curve<Padic>, FormalGroup) {
        let t = TateCurve::new(Padic::from_int(5, 25 * 3, 60), 40).unwrap();
        let e = t.weierstrass_curve().unwrap();
        let fg = FormalGroup::new(&e, 40).unwrap();
        (t, e, fg)
    }

    #[test]
    fn omega_leading_terms() {
        // 1 + a1 t + (a1^2 + a2) t^2 + ...
        let (_, _, fg) = tate();
        assert!(fg.omega.coeff(0).agrees_mod(&Padic::one(5, 30), 30));
        assert!(fg.omega.coeff(1).agrees_mod(&Padic::one(5, 30), 30));
        assert!(fg.omega.coeff(2).agrees_mod(&Padic::one(5, 30), 30));
    }

    #[test]
    fn parameter_roundtrip() {
        let (_, e, fg) = tate();
        let t = Padic::from_int(5, 5 * 7, 40);
        let pt = fg.point_at(&t).unwrap();
        let (x, y) = pt.coords().unwrap();
        assert!(e.residual(x, y).valuation() >= 25);
        assert!(fg.parameter(&pt).unwrap().agrees_mod(&t, 30));
    }

    #[test]
    fn iso_recovers_tate_parameter() {
        let (t, _, fg) = tate();
        let big_u = formal_iso_series(&fg).unwrap();
        assert!(big_u.coeff(0).agrees_mod(&Padic::one(5, 30), 30));
        assert!(big_u.coeff(1).agrees_mod(&Padic::one(5, 30), 30));
        for n in [6, 11, 1 + 25 * 3] {
            let u = Padic::from_int(5, n, 40);
            let pt = t.to_weierstrass(&u).unwrap();
            let par = fg.parameter(&pt).unwrap();
            assert!(big_u.eval(&par).agrees_mod(&u, 30), "u = {n}");
            assert!(fg.log_at(&par).agrees_mod(&log_unit(&u).unwrap(), 30));
        }
    }

    #[test]
    fn iso_is_a_homomorphism() {
        let (_, e, fg) = tate();
        let big_u = formal_iso_series(&fg).unwrap();
        let p1 = fg.point_at(&Padic::from_int(5, 5 * 2, 40)).unwrap();
        let p2 = fg.point_at(&Padic::from_int(5, 25 * 3 + 5, 40)).unwrap();
        let sum = e.add(&p1, &p2).unwrap();
        let u = |pt: &Point<Padic>| big_u.eval(&fg.parameter(pt).unwrap());
        assert!(u(&sum).agrees_mod(&u(&p1).mul(&u(&p2)), 28));
    }

    #[test]
    fn sigma_matches_theta() {
        // λ(sigma(u)) = λ(Θ(u)) - λ(u)/2 - 2 λ(prod (1 - q^n))
        let (t, _, fg) = tate();
        let c = sigma_sum(t.q(), 1, t.terms()).mul_int(2);
        let h = sigma_correction(&fg, &c).unwrap();
        let br = LogBranch::with_int(5, 1, 40);
        let mut eta = Padic::one(5, 40);
        let mut qn = Padic::one(5, 40);
        for _ in 0..t.terms() {
            qn = qn.mul(t.q());
            eta = eta.mul(&Padic::one(5, 40).sub(&qn));
        }
        let shift = br.log(&eta).unwrap().mul_int(2);
        for n in [6, 31, 1 + 25 * 3] {
            let u = Padic::from_int(5, n, 40);
            let par = fg.parameter(&t.to_weierstrass(&u).unwrap()).unwrap();
            let lhs = log_sigma(&fg, &h, &br, &par).unwrap();
            let rhs = br
                .log(&t.theta(&u).unwrap())
                .unwrap()
                .sub(&br.log(&u).unwrap().div_int(2).unwrap())
                .sub(&shift);
            assert!(lhs.agrees_mod(&rhs, 25), "u = {n}: {lhs} vs {rhs}");
        }
    }
}
