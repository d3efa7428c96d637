//! Weierstrass curves over an abstract field, used both over `Q` (exact) and
//! over `Q_p` (capped precision).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::Padic;

pub trait Field: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_div(&self, o: &Self) -> Result<Self>;
    /// Zero, or indistinguishable from zero at the known precision.
    fn f_is_zero(&self) -> bool;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        Ok(self / o)
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

fn const_prec(x: &Padic) -> i64 {
    x.prec().clamp(0, 1 << 16) + 64
}

impl Field for Padic {
    fn zero_like(&self) -> Self {
        Padic::zero(self.p(), const_prec(self))
    }
    fn one_like(&self) -> Self {
        Padic::one(self.p(), const_prec(self))
    }
    fn int_like(&self, n: i64) -> Self {
        Padic::from_int(self.p(), n, const_prec(self))
    }
    fn f_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn f_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn f_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn f_neg(&self) -> Self {
        self.neg()
    }
    fn f_div(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> Curve<F> {
    pub fn new(a: [F; 5]) -> Curve<F> {
        let [a1, a2, a3, a4, a6] = a;
        Curve { a1, a2, a3, a4, a6 }
    }

    pub fn coeffs(&self) -> [&F; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `lhs - rhs` of the equation at `(x, y)`.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let lhs = y.f_mul(y).f_add(&self.a1.f_mul(x).f_mul(y)).f_add(&self.a3.f_mul(y));
        let x2 = x.f_mul(x);
        let rhs = x2
            .f_mul(x)
            .f_add(&self.a2.f_mul(&x2))
            .f_add(&self.a4.f_mul(x))
            .f_add(&self.a6);
        lhs.f_sub(&rhs)
    }

    pub fn contains(&self, pt: &Point<F>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.residual(x, y).f_is_zero(),
        }
    }

    pub fn neg(&self, pt: &Point<F>) -> Point<F> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), y.f_neg().f_sub(&self.a1.f_mul(x)).f_sub(&self.a3)),
        }
    }

    /// Slope and intercept of the line through `p1`, `p2` (tangent if equal),
    /// or `None` when the line is vertical.
    pub fn line(&self, p1: &Point<F>, p2: &Point<F>) -> Result<Option<(F, F)>> {
        let (Some((x1, y1)), Some((x2, y2))) = (p1.coords(), p2.coords()) else {
            return Ok(None);
        };
        let lambda = if !x1.f_sub(x2).f_is_zero() {
            y2.f_sub(y1).f_div(&x2.f_sub(x1))?
        } else {
            let (_, ny1) = self.neg(p1).coords().map(|(a, b)| (a.clone(), b.clone())).expect("affine");
            if y2.f_sub(&ny1).f_is_zero() {
                return Ok(None);
            }
            let num = x1
                .f_mul(x1)
                .f_mul(&x1.int_like(3))
                .f_add(&self.a2.f_mul(x1).f_mul(&x1.int_like(2)))
                .f_add(&self.a4)
                .f_sub(&self.a1.f_mul(y1));
            let den = y1.f_mul(&y1.int_like(2)).f_add(&self.a1.f_mul(x1)).f_add(&self.a3);
            num.f_div(&den)?
        };
        let nu = y1.f_sub(&lambda.f_mul(x1));
        Ok(Some((lambda, nu)))
    }

    pub fn add(&self, p1: &Point<F>, p2: &Point<F>) -> Result<Point<F>> {
        let (Some((x1, _)), Some((x2, _))) = (p1.coords(), p2.coords()) else {
            return Ok(if p1.is_infinity() { p2.clone() } else { p1.clone() });
        };
        match self.line(p1, p2)? {
            None => Ok(Point::Infinity),
            Some((lambda, nu)) => {
                let x3 = lambda
                    .f_mul(&lambda)
                    .f_add(&self.a1.f_mul(&lambda))
                    .f_sub(&self.a2)
                    .f_sub(x1)
                    .f_sub(x2);
                let y3 = lambda.f_add(&self.a1).f_mul(&x3).f_neg().f_sub(&nu).f_sub(&self.a3);
                Ok(Point::Affine(x3, y3))
            }
        }
    }

    pub fn sub(&self, p1: &Point<F>, p2: &Point<F>) -> Result<Point<F>> {
        self.add(p1, &self.neg(p2))
    }

    pub fn mul(&self, n: i64, pt: &Point<F>) -> Result<Point<F>> {
        let mut base = if n < 0 { self.neg(pt) } else { pt.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `[b2, b4, b6, b8]`.
    pub fn b_invariants(&self) -> [F; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.f_mul(a1).f_add(&a2.f_mul(&a2.int_like(4)));
        let b4 = a4.f_mul(&a4.int_like(2)).f_add(&a1.f_mul(a3));
        let b6 = a3.f_mul(a3).f_add(&a6.f_mul(&a6.int_like(4)));
        let b8 = a1
            .f_mul(a1)
            .f_mul(a6)
            .f_add(&a2.f_mul(a6).f_mul(&a2.int_like(4)))
            .f_sub(&a1.f_mul(a3).f_mul(a4))
            .f_add(&a2.f_mul(a3).f_mul(a3))
            .f_sub(&a4.f_mul(a4));
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> F {
        let [b2, b4, _, _] = self.b_invariants();
        b2.f_mul(&b2).f_sub(&b4.f_mul(&b4.int_like(24)))
    }

    pub fn c6(&self) -> F {
        let [b2, b4, b6, _] = self.b_invariants();
        b2.f_mul(&b2)
            .f_mul(&b2)
            .f_neg()
            .f_add(&b2.f_mul(&b4).f_mul(&b2.int_like(36)))
            .f_sub(&b6.f_mul(&b6.int_like(216)))
    }

    pub fn discriminant(&self) -> F {
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = b2.f_mul(&b2).f_mul(&b8).f_neg();
        let t2 = b4.f_mul(&b4).f_mul(&b4).f_mul(&b4.int_like(8));
        let t3 = b6.f_mul(&b6).f_mul(&b6.int_like(27));
        let t4 = b2.f_mul(&b4).f_mul(&b6).f_mul(&b2.int_like(9));
        t1.f_sub(&t2).f_sub(&t3).f_add(&t4)
    }

    pub fn j_invariant(&self) -> Result<F> {
        let c4 = self.c4();
        c4.f_mul(&c4).f_mul(&c4).f_div(&self.discriminant())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_11a3() -> Curve<BigRational> {
        // y^2 + y = x^3 - x^2
        Curve::new([rat(0), rat(-1), rat(1), rat(0), rat(0)])
    }

    #[test]
    fn torsion_point_has_order_five() {
        let e = curve_11a3();
        let p = Point::Affine(rat(0), rat(0));
        assert!(e.contains(&p));
        assert!(!e.mul(4, &p).unwrap().is_infinity());
        assert!(e.mul(5, &p).unwrap().is_infinity());
    }

    #[test]
    fn invariants_of_11a3() {
        let e = curve_11a3();
        assert_eq!(e.discriminant(), rat(-11));
        assert_eq!(e.c4(), rat(16));
        assert_eq!(e.j_invariant().unwrap(), BigRational::new(BigInt::from(-4096), BigInt::from(11)));
    }

    #[test]
    fn associativity_sample() {
        // 37a1: y^2 + y = x^3 - x
        let e = Curve::new([rat(0), rat(0), rat(1), rat(-1), rat(0)]);
        let p = Point::Affine(rat(0), rat(0));
        let p2 = e.add(&p, &p).unwrap();
        let p3a = e.add(&p2, &p).unwrap();
        let p3b = e.mul(3, &p).unwrap();
        assert_eq!(p3a, p3b);
        let p5 = e.add(&p2, &p3a).unwrap();
        assert_eq!(p5, e.mul(5, &p).unwrap());
        assert!(e.contains(&p5));
    }
}
