use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::TateCurve;
use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::padic::Padic;

fn divisor_sum(n: u64, k: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `sum_{n=1}^{terms} sigma_k(n) q^n`.
pub fn sigma_sum(q: &Padic, k: u32, terms: i64) -> Padic {
    let mut acc = Padic::zero(q.p(), q.prec() + q.valuation() * terms);
    let mut qn = Padic::one(q.p(), q.prec());
    for n in 1..=terms {
        qn = qn.mul(q);
        acc = acc.add(&qn.mul_bigint(&divisor_sum(n as u64, k)));
    }
    acc
}

fn mul_series(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer coefficients of `q j(q) = E4^3 / prod (1 - q^n)^24`, first `len`.
pub fn j_series(len: usize) -> Vec<BigInt> {
    let mut e4: Vec<BigInt> = (0..len).map(|n| divisor_sum(n as u64, 3) * 240).collect();
    e4[0] = BigInt::one();
    let e4_cubed = mul_series(&mul_series(&e4, &e4, len), &e4, len);
    let mut eta24 = vec![BigInt::zero(); len];
    eta24[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                let t = eta24[i - n].clone();
                eta24[i] -= t;
            }
        }
    }
    // invert prod (1 - q^n)^24 as a power series
    let mut inv = vec![BigInt::zero(); len];
    inv[0] = BigInt::one();
    for i in 1..len {
        let s: BigInt = (1..=i).map(|k| &eta24[k] * &inv[i - k]).sum();
        inv[i] = -s;
    }
    mul_series(&e4_cubed, &inv, len)
}

impl TateCurve {
    /// `(a4, a6)` with the curve `Y^2 + XY = X^3 + a4 X + a6`.
    pub fn coefficients(&self) -> Result<(Padic, Padic)> {
        let m = self.terms();
        let s3 = sigma_sum(&self.q, 3, m);
        let s5 = sigma_sum(&self.q, 5, m);
        let a4 = s3.mul_int(-5);
        let a6 = s3.mul_int(5).add(&s5.mul_int(7)).div_int(-12)?;
        Ok((a4, a6))
    }

    pub fn weierstrass_curve(&self) -> Result<Curve<Padic>> {
        let (a4, a6) = self.coefficients()?;
        let p = self.p();
        let z = Padic::zero(p, a4.prec());
        Ok(Curve::new([Padic::one(p, a4.prec()), z.clone(), z, a4, a6]))
    }

    /// Image of `u` in `E(Q_p)`; `q^Z` maps to the point at infinity.
    pub fn to_weierstrass(&self, u: &Padic) -> Result<Point<Padic>> {
        if self.is_identity(u)? {
            return Ok(Point::Infinity);
        }
        let (_, u) = self.normalize(u)?;
        let p = self.p();
        let m = self.terms();
        let one = Padic::one(p, self.prec + 4 * self.ord_q);
        let u_inv = u.inv()?;
        let mut x = Padic::zero(p, one.prec());
        let mut y = Padic::zero(p, one.prec());
        // n >= 0 with z = q^n u
        let mut z = u.clone();
        for _ in 0..=m {
            let d = one.sub(&z);
            let d2 = d.mul(&d);
            x = x.add(&z.div(&d2)?);
            y = y.add(&z.mul(&z).div(&d2.mul(&d))?);
            z = z.mul(&self.q);
        }
        // n < 0 with w = q^{-n} / u
        let mut w = self.q.mul(&u_inv);
        for _ in 1..=m {
            let d = one.sub(&w);
            let d2 = d.mul(&d);
            x = x.add(&w.div(&d2)?);
            y = y.sub(&w.div(&d2.mul(&d))?);
            w = w.mul(&self.q);
        }
        let s1 = sigma_sum(&self.q, 1, m);
        x = x.sub(&s1.mul_int(2));
        y = y.add(&s1);
        if x.is_zero() && y.is_zero() {
            return Err(Error::PrecisionExhausted("weierstrass image".into()));
        }
        Ok(Point::Affine(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u64, q: i64) -> TateCurve {
        TateCurve::new(Padic::from_int(p, q, 50), 30).unwrap()
    }

    #[test]
    fn j_series_leading_terms() {
        let j = j_series(4);
        assert_eq!(j, vec![BigInt::from(1), BigInt::from(744), BigInt::from(196884), BigInt::from(21493760)]);
    }

    #[test]
    fn j_invariant_matches_q_expansion() {
        for (p, q) in [(5, 5 * 3), (7, 49 * 2), (3, 27 * 2)] {
            let t = curve(p, q);
            let j = t.weierstrass_curve().unwrap().j_invariant().unwrap();
            let coeffs = j_series(40);
            let qp = t.q().clone();
            let mut acc = Padic::zero(p, 40);
            let mut qn = qp.inv().unwrap();
            for c in &coeffs {
                acc = acc.add(&qn.mul_bigint(c));
                qn = qn.mul(&qp);
            }
            assert!(j.agrees_mod(&acc, 20), "p = {p}");
        }
    }

    #[test]
    fn images_lie_on_curve() {
        let t = curve(5, 25 * 2);
        let e = t.weierstrass_curve().unwrap();
        for (n, d) in [(2, 1), (6, 1), (10, 1), (3, 5)] {
            let u = Padic::from_i64_ratio(5, n, d, 30).unwrap();
            let Point::Affine(x, y) = t.to_weierstrass(&u).unwrap() else {
                panic!("unexpected identity");
            };
            let r = e.residual(&x, &y);
            let scale = 3 * x.valuation().min(0);
            assert!(r.valuation() >= scale + 20, "u = {n}/{d}: {r:?}");
        }
    }

    #[test]
    fn parametrization_is_a_homomorphism() {
        let t = curve(7, 49 * 3);
        let e = t.weierstrass_curve().unwrap();
        let u1 = Padic::from_int(7, 3, 30);
        let u2 = Padic::from_int(7, 7 * 2, 30);
        let lhs = t.to_weierstrass(&u1.mul(&u2)).unwrap();
        let rhs = e.add(&t.to_weierstrass(&u1).unwrap(), &t.to_weierstrass(&u2).unwrap()).unwrap();
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (lhs, rhs) else {
            panic!("unexpected identity");
        };
        assert!(x1.agrees_mod(&x2, 18));
        assert!(y1.agrees_mod(&y2, 18));
    }

    #[test]
    fn period_maps_to_infinity() {
        let t = curve(5, 5 * 3);
        assert!(t.to_weierstrass(t.q()).unwrap().is_infinity());
    }
}
