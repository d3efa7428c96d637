use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::formal::{formal_iso_series, FormalGroup};
use crate::curve::{Curve, Field, Point};
use crate::error::{Error, Result};
use crate::padic::element::rational_valuation;
use crate::padic::{hensel_root, Padic, PadicPoly, PadicSeries, COMPARISON_BUFFER};
use crate::tate::{j_series, TateCurve};

/// Extra digits carried internally beyond the requested precision.
pub const GUARD_DIGITS: i64 = 10;

/// Largest trial divisor used when factoring discriminants and test rationals.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// `r` as a `p`-adic number with `rel` digits of relative precision.
pub fn to_padic(r: &BigRational, p: u64, rel: i64) -> Result<Padic> {
    match rational_valuation(p, r) {
        None => Ok(Padic::zero(p, rel)),
        Some(v) => Padic::from_rational(p, r, v + rel),
    }
}

pub fn to_padic_point(pt: &Point<BigRational>, p: u64, rel: i64) -> Result<Point<Padic>> {
    Ok(match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(to_padic(x, p, rel)?, to_padic(y, p, rel)?),
    })
}

/// Tate parameter with `j(q) = j`, by Lagrange inversion of
/// `1/j = q / (q j(q))`: `q = sum_n (1/n) [s^{n-1}] (q j)(s)^n s^n`, `s = 1/j`.
pub fn q_parameter(j: &Padic, prec: i64) -> Result<Padic> {
    if j.is_zero() || j.valuation() >= 0 {
        return Err(Error::NotMultiplicative(format!("ord j = {} is not negative", j.valuation())));
    }
    let p = j.p();
    let s = j.inv()?;
    let k = s.valuation();
    let len = ((prec + k - 1) / k + 2) as usize;
    let qj = j_series(len);
    let mut power = vec![BigInt::zero(); len];
    power[0] = BigInt::one();
    let mut q = Padic::zero(p, s.prec());
    let mut s_pow = Padic::one(p, s.prec());
    for n in 1..len {
        let mut next = vec![BigInt::zero(); len];
        for (a, x) in power.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in qj.iter().enumerate().take(len - a) {
                next[a + b] += x * y;
            }
        }
        power = next;
        s_pow = s_pow.mul(&s);
        let (coef, rem) = power[n - 1].div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        q = q.add(&s_pow.mul_bigint(&coef));
    }
    Ok(q)
}

/// Whether multiplicative reduction at `p` is split: `-c6` is a square mod `p`.
pub fn is_split(c6: &Padic) -> bool {
    let p = c6.p();
    if c6.valuation() != 0 {
        return false;
    }
    let r = BigInt::from(c6.neg().residue());
    r.modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p)).is_one()
}

/// `(x, y) = (u^2 X + r, u^3 Y + s u^2 X + t)` from a model onto the Tate model.
#[derive(Debug, Clone)]
pub struct TateIsomorphism {
    pub u: Padic,
    pub r: Padic,
    pub s: Padic,
    pub t: Padic,
}

impl TateIsomorphism {
    pub fn new(e: &Curve<Padic>, tate: &Curve<Padic>) -> Result<TateIsomorphism> {
        let p = e.a1.p();
        let u2 = e.c6().mul(&tate.c4()).div(&e.c4().mul(&tate.c6()))?;
        if u2.valuation() != 0 {
            return Err(Error::NotMultiplicative("models are not isomorphic by a unit scaling".into()));
        }
        let prec = u2.prec();
        let poly = PadicPoly::new(p, vec![u2.neg(), Padic::zero(p, prec), Padic::one(p, prec)]);
        let seed = (1..p)
            .find(|&x| (x * x) % p == u2.residue())
            .ok_or_else(|| Error::NotMultiplicative("reduction is not split".into()))?;
        let u = hensel_root(&poly, seed)?;
        let two = Padic::from_int(p, 2, prec);
        let three = Padic::from_int(p, 3, prec);
        let s = u.mul(&tate.a1).sub(&e.a1).div(&two)?;
        let r = s.mul(&s).add(&s.mul(&e.a1)).sub(&e.a2).div(&three)?;
        let t = e.a3.add(&r.mul(&e.a1)).neg().div(&two)?;
        let iso = TateIsomorphism { u, r, s, t };
        let image = iso.transform(e)?;
        let tol = prec.min(tate.a6.prec()) - COMPARISON_BUFFER;
        for (a, b) in image.coeffs().iter().zip(tate.coeffs()) {
            if !a.agrees_mod(b, tol) {
                return Err(Error::PrecisionExhausted("isomorphism onto the Tate model".into()));
            }
        }
        Ok(iso)
    }

    /// Coefficients of the transformed model.
    pub fn transform(&self, e: &Curve<Padic>) -> Result<Curve<Padic>> {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let (a1, a2, a3, a4, a6) = (&e.a1, &e.a2, &e.a3, &e.a4, &e.a6);
        let n = |k: i64, x: Padic| x.div(&u.pow(k)?);
        let b1 = a1.add(&s.mul_int(2));
        let b2 = a2.sub(&s.mul(a1)).add(&r.mul_int(3)).sub(&s.mul(s));
        let b3 = a3.add(&r.mul(a1)).add(&t.mul_int(2));
        let b4 = a4
            .sub(&s.mul(a3))
            .add(&r.mul(a2).mul_int(2))
            .sub(&t.add(&r.mul(s)).mul(a1))
            .add(&r.mul(r).mul_int(3))
            .sub(&s.mul(t).mul_int(2));
        let b6 = a6
            .add(&r.mul(a4))
            .add(&r.mul(r).mul(a2))
            .add(&r.pow(3)?)
            .sub(&t.mul(a3))
            .sub(&t.mul(t))
            .sub(&r.mul(t).mul(a1));
        Ok(Curve::new([n(1, b1)?, n(2, b2)?, n(3, b3)?, n(4, b4)?, n(6, b6)?]))
    }

    pub fn map_point(&self, pt: &Point<Padic>) -> Result<Point<Padic>> {
        let Some((x, y)) = pt.coords() else {
            return Ok(Point::Infinity);
        };
        let xr = x.sub(&self.r);
        let big_x = xr.div(&self.u.pow(2)?)?;
        let big_y = y.sub(&self.s.mul(&xr)).sub(&self.t).div(&self.u.pow(3)?)?;
        Ok(Point::Affine(big_x, big_y))
    }
}

fn trial_factor(n: &BigInt) -> Result<Vec<u64>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        if d > TRIAL_DIVISION_BOUND {
            return Err(Error::SearchBoundExceeded(format!("cofactor {n} has no factor below {TRIAL_DIVISION_BOUND}")));
        }
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().ok_or_else(|| Error::SearchBoundExceeded(format!("prime factor {n} too large")))?);
    }
    Ok(out)
}

/// Distinct prime factors of a nonzero rational (numerator and denominator).
pub fn prime_support(r: &BigRational) -> Result<Vec<u64>> {
    let mut ps = trial_factor(r.numer())?;
    ps.extend(trial_factor(r.denom())?);
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

/// An elliptic curve over `Q`, integral and minimal at its bad primes, with
/// split multiplicative reduction at `p`.
#[derive(Debug, Clone)]
pub struct RationalCurve {
    pub curve: Curve<BigRational>,
    pub p: u64,
    pub prec: i64,
    pub bad_primes: Vec<u64>,
    pub tate: TateCurve,
    pub iso: TateIsomorphism,
    pub formal: FormalGroup,
    pub iso_series: PadicSeries,
}

impl RationalCurve {
    pub fn new(coeffs: [BigRational; 5], p: u64, prec: i64) -> Result<RationalCurve> {
        if p < 5 {
            return Err(Error::EvenPrimeUnsupported);
        }
        if coeffs.iter().any(|a| !a.is_integer()) {
            return Err(Error::InvalidInput("curve coefficients must be integers".into()));
        }
        let curve = Curve::new(coeffs);
        let disc = curve.discriminant();
        if disc.is_zero() {
            return Err(Error::InvalidInput("singular curve".into()));
        }
        let bad_primes = prime_support(&disc)?;
        let c4 = curve.c4();
        for &l in &bad_primes {
            let vd = rational_valuation(l, &disc).unwrap_or(0);
            let vc = rational_valuation(l, &c4).unwrap_or(i64::MAX);
            if vd >= 12 && vc >= 4 {
                return Err(Error::InvalidInput(format!("model may not be minimal at {l}")));
            }
        }
        let work = prec + GUARD_DIGITS;
        let j = to_padic(&curve.j_invariant()?, p, work)?;
        let a_p: Vec<Padic> = curve.coeffs().iter().map(|a| to_padic(a, p, work)).collect::<Result<_>>()?;
        let e_p = Curve::new(a_p.try_into().expect("five coefficients"));
        if !is_split(&e_p.c6()) {
            return Err(Error::NotMultiplicative(format!("reduction at {p} is not split multiplicative")));
        }
        let q = q_parameter(&j, work)?;
        let tate = TateCurve::new(q, work)?;
        let model = tate.weierstrass_curve()?;
        let iso = TateIsomorphism::new(&e_p, &model)?;
        let len = (work + 2 * (work.max(2) as f64).log(p as f64).ceil() as i64 + 6) as usize;
        let formal = FormalGroup::new(&model, len)?;
        let iso_series = formal_iso_series(&formal)?;
        Ok(RationalCurve { curve, p, prec, bad_primes, tate, iso, formal, iso_series })
    }

    pub fn contains(&self, pt: &Point<BigRational>) -> bool {
        self.curve.contains(pt)
    }

    /// The point on the Tate model over `Q_p`.
    pub fn tate_point(&self, pt: &Point<BigRational>) -> Result<Point<Padic>> {
        self.iso.map_point(&to_padic_point(pt, self.p, self.prec + GUARD_DIGITS)?)
    }

    /// `u`-parameter of a point in the formal group at `p`.
    pub fn u_parameter(&self, pt: &Point<BigRational>) -> Result<Padic> {
        if pt.is_infinity() {
            return Ok(Padic::one(self.p, self.prec + GUARD_DIGITS));
        }
        let t = self.formal.parameter(&self.tate_point(pt)?)?;
        Ok(self.iso_series.eval(&t))
    }

    /// Whether the point reduces to a nonsingular point modulo `l`.
    pub fn in_identity_component(&self, pt: &Point<BigRational>, l: u64) -> bool {
        let Some((x, y)) = pt.coords() else {
            return true;
        };
        let vx = rational_valuation(l, x).unwrap_or(i64::MAX);
        if vx < 0 {
            return true;
        }
        let e = &self.curve;
        // partial derivatives of the Weierstrass equation
        let fx = e.a1.f_mul(y).f_sub(&x.f_mul(x).f_mul(&x.int_like(3))).f_sub(&e.a2.f_mul(x).f_mul(&x.int_like(2))).f_sub(&e.a4);
        let fy = y.f_mul(&y.int_like(2)).f_add(&e.a1.f_mul(x)).f_add(&e.a3);
        let nonzero_mod_l = |r: &BigRational| rational_valuation(l, r).is_some_and(|v| v <= 0);
        nonzero_mod_l(&fx) || nonzero_mod_l(&fy)
    }

    /// In the formal group at `p`: reduces to the identity.
    pub fn in_formal_group(&self, pt: &Point<BigRational>) -> bool {
        match pt.coords() {
            None => true,
            Some((x, _)) => rational_valuation(self.p, x).is_some_and(|v| v < 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::rat;

    #[test]
    fn q_parameter_roundtrip() {
        for (p, q0) in [(5u64, 25 * 3), (7, 7 * 2), (11, 121 * 5)] {
            let t = TateCurve::new(Padic::from_int(p, q0, 50), 40).unwrap();
            let j = t.weierstrass_curve().unwrap().j_invariant().unwrap();
            let q = q_parameter(&j, 40).unwrap();
            assert_eq!(q.valuation(), -j.valuation());
            assert!(q.agrees_mod(t.q(), 30), "p = {p}");
        }
    }

    #[test]
    fn split_curve_at_five() {
        let e = RationalCurve::new([rat(0), rat(-1), rat(1), rat(0), rat(-2)], 5, 20).unwrap();
        let j = to_padic(&e.curve.j_invariant().unwrap(), 5, 30).unwrap();
        let jq = e.tate.weierstrass_curve().unwrap().j_invariant().unwrap();
        assert!(jq.agrees_mod(&j, 20 + j.valuation()));
        assert_eq!(e.tate.ord_q(), -j.valuation());
    }

    #[test]
    fn eleven_a1_is_split() {
        let e = RationalCurve::new([rat(0), rat(-1), rat(1), rat(-10), rat(-20)], 11, 20).unwrap();
        assert_eq!(e.bad_primes, vec![11]);
        assert_eq!(e.tate.ord_q(), 5);
    }

    #[test]
    fn non_split_and_good_rejected() {
        // 11a1 at 5 has good reduction
        let good = RationalCurve::new([rat(0), rat(-1), rat(1), rat(-10), rat(-20)], 5, 20);
        assert!(matches!(good, Err(Error::NotMultiplicative(_))));
    }

    #[test]
    fn u_parameter_is_multiplicative() {
        let e = RationalCurve::new([rat(0), rat(-1), rat(1), rat(0), rat(-2)], 5, 20).unwrap();
        let p = Point::Affine(rat(2), rat(-2));
        let mut m = 1;
        while !e.in_formal_group(&e.curve.mul(m, &p).unwrap()) {
            m += 1;
        }
        let a = e.curve.mul(m, &p).unwrap();
        let b = e.curve.mul(2 * m, &p).unwrap();
        let ua = e.u_parameter(&a).unwrap();
        assert!(e.u_parameter(&b).unwrap().agrees_mod(&ua.mul(&ua), 18));
    }
}
