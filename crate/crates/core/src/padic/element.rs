//! Capped absolute-precision elements of `Q_p`.
//!
//! An element is stored as `p^val * unit + O(p^prec)` where `unit` is a residue
//! modulo `p^(prec - val)` coprime to `p`. A zero element carries no unit digits
//! and has `val == prec`: it is only known to be divisible by `p^prec`.
//!
//! Every operation returns the interval-arithmetic precision bound, so digits
//! below `p^prec` of a result are always correct.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `p^k` as a big integer.
pub fn ppow(p: u64, k: i64) -> BigUint {
    debug_assert!(k >= 0);
    BigUint::from(p).pow(k as u32)
}

/// Splits `n != 0` as `p^v * rest` with `p ∤ rest`.
pub fn strip_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m`, `a` coprime to `m`.
pub fn inv_mod(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from(a.clone());
    let mi = BigInt::from(m.clone());
    let eg = a.extended_gcd(&mi);
    if !eg.gcd.is_one() {
        return None;
    }
    eg.x.mod_floor(&mi).to_biguint()
}

fn mod_signed(n: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from(m.clone());
    n.mod_floor(&mi).to_biguint().expect("non-negative after mod_floor")
}

/// Guard against materializing an "exact" constant digit by digit.
const MAX_DIGITS: i64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigUint,
    prec: i64,
}

impl Padic {
    /// Builds `p^val * x + O(p^prec)` from an arbitrary integer `x`, stripping
    /// any factors of `p` out of `x`.
    pub fn from_parts(p: u64, val: i64, x: &BigInt, prec: i64) -> Padic {
        if val >= prec || x.is_zero() {
            return Padic::zero(p, prec);
        }
        let (extra, rest) = strip_p(p, x);
        let val = val + extra;
        if val >= prec {
            return Padic::zero(p, prec);
        }
        assert!(prec - val < MAX_DIGITS, "refusing to materialize {} digits", prec - val);
        let unit = mod_signed(&rest, &ppow(p, prec - val));
        Padic { p, val, unit, prec }
    }

    pub fn zero(p: u64, prec: i64) -> Padic {
        Padic {
            p,
            val: prec,
            unit: BigUint::zero(),
            prec,
        }
    }

    pub fn one(p: u64, prec: i64) -> Padic {
        Padic::from_int(p, 1, prec)
    }

    pub fn from_int(p: u64, n: i64, prec: i64) -> Padic {
        Padic::from_parts(p, 0, &BigInt::from(n), prec)
    }

    pub fn from_bigint(p: u64, n: &BigInt, prec: i64) -> Padic {
        Padic::from_parts(p, 0, n, prec)
    }

    /// `num/den` to absolute precision `prec`.
    pub fn from_ratio(p: u64, num: &BigInt, den: &BigInt, prec: i64) -> Result<Padic> {
        if den.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        if num.is_zero() {
            return Ok(Padic::zero(p, prec));
        }
        let (vn, un) = strip_p(p, num);
        let (vd, ud) = strip_p(p, den);
        let val = vn - vd;
        if val >= prec {
            return Ok(Padic::zero(p, prec));
        }
        let m = ppow(p, prec - val);
        let ud = mod_signed(&ud, &m);
        let inv = inv_mod(&ud, &m).ok_or(Error::NotAUnit)?;
        let unit = (mod_signed(&un, &m) * inv) % &m;
        Ok(Padic { p, val, unit, prec })
    }

    pub fn from_rational(p: u64, r: &BigRational, prec: i64) -> Result<Padic> {
        Padic::from_ratio(p, r.numer(), r.denom(), prec)
    }

    pub fn from_i64_ratio(p: u64, num: i64, den: i64, prec: i64) -> Result<Padic> {
        Padic::from_ratio(p, &BigInt::from(num), &BigInt::from(den), prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Valuation; for a zero element this is its absolute precision.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn rel_prec(&self) -> i64 {
        self.prec - self.val
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    fn check_prime(&self, other: &Padic) {
        assert_eq!(self.p, other.p, "mixing elements of Q_{} and Q_{}", self.p, other.p);
    }

    /// Drops digits at or above `p^prec`; no-op if already coarser.
    pub fn truncate(&self, prec: i64) -> Padic {
        if prec >= self.prec {
            return self.clone();
        }
        if self.is_zero() || self.val >= prec {
            return Padic::zero(self.p, prec);
        }
        let unit = &self.unit % ppow(self.p, prec - self.val);
        Padic {
            p: self.p,
            val: self.val,
            unit,
            prec,
        }
    }

    /// Reinterprets the known digits as exact and pads with zeros up to
    /// `prec`. Only meaningful for values that are exact by construction.
    pub fn lift_to(&self, prec: i64) -> Padic {
        if prec <= self.prec {
            return self.truncate(prec);
        }
        if self.is_zero() {
            return Padic::zero(self.p, prec);
        }
        Padic {
            p: self.p,
            val: self.val,
            unit: self.unit.clone(),
            prec,
        }
    }

    /// Integer representative of an integral element, in `[0, p^prec)`.
    pub fn to_integer(&self) -> Option<BigUint> {
        if self.val < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(BigUint::zero());
        }
        Some(&self.unit * ppow(self.p, self.val))
    }

    /// Signed representative in `(-p^prec/2, p^prec/2]` for integral elements.
    pub fn to_signed_integer(&self) -> Option<BigInt> {
        let n = BigInt::from(self.to_integer()?);
        let m = BigInt::from(ppow(self.p, max(self.prec, 0)));
        if &n * 2 > m {
            Some(n - m)
        } else {
            Some(n)
        }
    }

    /// Residue modulo `p` of an integral element.
    pub fn residue(&self) -> u64 {
        if self.val > 0 || self.is_zero() {
            return 0;
        }
        (&self.unit % self.p).to_u64().unwrap_or(0)
    }

    pub fn neg(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.rel_prec());
        Padic {
            p: self.p,
            val: self.val,
            unit: (&m - &self.unit) % &m,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Padic) -> Padic {
        self.check_prime(o);
        let prec = min(self.prec, o.prec);
        if self.is_zero() {
            return o.truncate(prec);
        }
        if o.is_zero() {
            return self.truncate(prec);
        }
        let v = min(self.val, o.val);
        if v >= prec {
            return Padic::zero(self.p, prec);
        }
        let m = ppow(self.p, prec - v);
        let a = &self.unit * ppow(self.p, self.val - v);
        let b = &o.unit * ppow(self.p, o.val - v);
        let s = (a + b) % &m;
        Padic::from_parts(self.p, v, &BigInt::from(s), prec)
    }

    pub fn sub(&self, o: &Padic) -> Padic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Padic) -> Padic {
        self.check_prime(o);
        let prec = min(self.val + o.prec, o.val + self.prec);
        if self.is_zero() || o.is_zero() {
            return Padic::zero(self.p, prec);
        }
        let val = self.val + o.val;
        let m = ppow(self.p, prec - val);
        Padic {
            p: self.p,
            val,
            unit: (&self.unit * &o.unit) % m,
            prec,
        }
    }

    pub fn div(&self, o: &Padic) -> Result<Padic> {
        self.check_prime(o);
        if o.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        if self.is_zero() {
            return Ok(Padic::zero(self.p, self.prec - o.val));
        }
        let val = self.val - o.val;
        let rel = min(self.rel_prec(), o.rel_prec());
        let m = ppow(self.p, rel);
        let inv = inv_mod(&(&o.unit % &m), &m).ok_or(Error::NotAUnit)?;
        Ok(Padic {
            p: self.p,
            val,
            unit: ((&self.unit % &m) * inv) % m,
            prec: val + rel,
        })
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let m = ppow(self.p, self.rel_prec());
        let unit = inv_mod(&self.unit, &m).ok_or(Error::NotAUnit)?;
        Ok(Padic {
            p: self.p,
            val: -self.val,
            unit,
            prec: self.rel_prec() - self.val,
        })
    }

    /// Product with an exact integer.
    pub fn mul_int(&self, n: i64) -> Padic {
        self.mul_bigint(&BigInt::from(n))
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Padic {
        if n.is_zero() {
            return Padic::zero(self.p, max(self.prec, self.val));
        }
        let (v, rest) = strip_p(self.p, n);
        if self.is_zero() {
            return Padic::zero(self.p, self.prec + v);
        }
        Padic::from_parts(self.p, self.val + v, &(BigInt::from(self.unit.clone()) * rest), self.prec + v)
    }

    /// Quotient by an exact nonzero integer.
    pub fn div_int(&self, n: i64) -> Result<Padic> {
        self.div_bigint(&BigInt::from(n))
    }

    pub fn div_bigint(&self, n: &BigInt) -> Result<Padic> {
        if n.is_zero() {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        let (v, rest) = strip_p(self.p, n);
        if self.is_zero() {
            return Ok(Padic::zero(self.p, self.prec - v));
        }
        let m = ppow(self.p, self.rel_prec());
        let inv = inv_mod(&mod_signed(&rest, &m), &m).ok_or(Error::NotAUnit)?;
        Ok(Padic {
            p: self.p,
            val: self.val - v,
            unit: (&self.unit * inv) % m,
            prec: self.prec - v,
        })
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Result<Padic> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(Padic::one(self.p, max(self.rel_prec(), 1)));
        }
        let mut base = self.clone();
        let mut acc: Option<Padic> = None;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("positive exponent"))
    }

    /// Whether `self ≡ o (mod p^k)` at the known digits of both.
    pub fn agrees_mod(&self, o: &Padic, k: i64) -> bool {
        self.sub(o).valuation() >= k
    }

    /// Base-`p` little-endian digits of the unit, exactly `rel_prec` of them.
    pub fn unit_digits(&self) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.rel_prec() as usize);
        let mut n = self.unit.clone();
        let pb = BigUint::from(self.p);
        for _ in 0..self.rel_prec() {
            let (q, r) = n.div_rem(&pb);
            out.push(r.to_u64().unwrap_or(0));
            n = q;
        }
        out
    }

    pub fn from_unit_digits(p: u64, valuation: i64, digits: &[u64], abs_precision: i64) -> Result<Padic> {
        if digits.is_empty() {
            if valuation != abs_precision {
                return Err(Error::Parse("zero element must have valuation == abs_precision".into()));
            }
            return Ok(Padic::zero(p, abs_precision));
        }
        if abs_precision - valuation != digits.len() as i64 {
            return Err(Error::Parse("digit count must equal abs_precision - valuation".into()));
        }
        if digits[0].is_multiple_of(p) {
            return Err(Error::Parse("leading unit digit divisible by p".into()));
        }
        let mut n = BigUint::zero();
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::Parse(format!("digit {d} out of range for p = {p}")));
            }
            n = n * p + d;
        }
        Ok(Padic {
            p,
            val: valuation,
            unit: n,
            prec: abs_precision,
        })
    }

    /// Text token `p^v * u mod p^N`.
    pub fn to_token(&self) -> String {
        format!("{}^{} * {} mod {}^{}", self.p, self.val, self.unit, self.p, self.prec)
    }

    pub fn parse_token(s: &str) -> Result<Padic> {
        let bad = || Error::Parse(format!("malformed p-adic token `{s}`"));
        let (lhs, rhs) = s.split_once(" mod ").ok_or_else(bad)?;
        let (pv, u) = lhs.split_once('*').ok_or_else(bad)?;
        let (p, v) = pv.trim().split_once('^').ok_or_else(bad)?;
        let (p2, n) = rhs.trim().split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let p2: u64 = p2.trim().parse().map_err(|_| bad())?;
        if p != p2 {
            return Err(bad());
        }
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let u: BigUint = u.trim().parse().map_err(|_| bad())?;
        if u.is_zero() {
            if v != n {
                return Err(bad());
            }
            return Ok(Padic::zero(p, n));
        }
        if n <= v || (&u % p).is_zero() || u >= ppow(p, n - v) {
            return Err(bad());
        }
        Ok(Padic { p, val: v, unit: u, prec: n })
    }

    /// Exact rational value of the known digits (the representative with
    /// unit in `[0, p^rel)`).
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let u = BigInt::from(self.unit.clone());
        if self.val >= 0 {
            BigRational::from_integer(u * BigInt::from(ppow(self.p, self.val)))
        } else {
            BigRational::new(u, BigInt::from(ppow(self.p, -self.val)))
        }
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Padic({})", self.to_token())
    }
}

/// JSON shape of a [`Padic`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub valuation: i64,
    pub unit_digits: Vec<u64>,
    pub abs_precision: i64,
}

impl From<&Padic> for PadicJson {
    fn from(x: &Padic) -> Self {
        PadicJson {
            p: x.p,
            valuation: x.val,
            unit_digits: x.unit_digits(),
            abs_precision: x.prec,
        }
    }
}

impl TryFrom<PadicJson> for Padic {
    type Error = Error;

    fn try_from(j: PadicJson) -> Result<Padic> {
        Padic::from_unit_digits(j.p, j.valuation, &j.unit_digits, j.abs_precision)
    }
}

impl Serialize for Padic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Padic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PadicJson::deserialize(d)?;
        Padic::try_from(j).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $m(self, o: &Padic) -> Padic {
                Padic::$m(self, o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        Padic::neg(self)
    }
}

/// `ord_p` of a nonzero rational.
pub fn rational_valuation(p: u64, r: &BigRational) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(strip_p(p, r.numer()).0 - strip_p(p, r.denom()).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modinv_oracle(a: u64, m: u64) -> u64 {
        (1..m).find(|x| a * x % m == 1).unwrap()
    }

    #[test]
    fn half_in_q5() {
        let h = Padic::from_i64_ratio(5, 1, 2, 4).unwrap();
        assert_eq!(h.unit(), &BigUint::from(313u32));
        assert_eq!(modinv_oracle(2, 625), 313);
        assert_eq!(h.valuation(), 0);
        assert_eq!(h.prec(), 4);
    }

    #[test]
    fn add_zero_keeps_precision() {
        let a = Padic::from_i64_ratio(7, 3, 11, 20).unwrap();
        let z = Padic::zero(7, 40);
        let s = &a + &z;
        assert_eq!(s, a);
    }

    #[test]
    fn valuation_of_quotient() {
        let a = Padic::from_int(5, 25 * 3, 20);
        let b = Padic::from_int(5, 25 * 7, 20);
        let q = a.div(&b).unwrap();
        assert_eq!(q.valuation(), 0);
        assert_eq!(q.prec(), 18);
    }

    #[test]
    fn division_by_zero_like() {
        let a = Padic::one(5, 10);
        let z = Padic::zero(5, 10);
        assert_eq!(a.div(&z), Err(Error::DivisionByIndistinguishableZero));
        // 125 at precision 3 has no known nonzero digit either
        let z2 = Padic::from_int(5, 125, 3);
        assert!(z2.is_zero());
    }

    #[test]
    fn multiplication_precision() {
        let a = Padic::from_parts(5, 2, &BigInt::from(3), 10);
        let b = Padic::from_parts(5, -1, &BigInt::from(2), 7);
        let c = &a * &b;
        assert_eq!(c.valuation(), 1);
        assert_eq!(c.prec(), 1 + min(8, 8));
    }

    #[test]
    fn token_roundtrip() {
        let a = Padic::from_i64_ratio(7, -22, 49, 15).unwrap();
        let t = a.to_token();
        assert_eq!(Padic::parse_token(&t).unwrap(), a);
        let z = Padic::zero(3, 12);
        assert_eq!(Padic::parse_token(&z.to_token()).unwrap(), z);
        assert!(Padic::parse_token("5^0 * 5 mod 5^3").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = Padic::from_i64_ratio(5, 17, 250, 12).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        let b: Padic = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&b).unwrap(), s);
    }

    #[test]
    fn neg_and_sub() {
        let a = Padic::from_int(3, 10, 8);
        let b = Padic::from_int(3, -10, 8);
        assert!((&a + &b).is_zero());
        assert_eq!(a.neg(), b);
    }

    #[test]
    fn pow_negative() {
        let a = Padic::from_int(5, 10, 20);
        let b = a.pow(-2).unwrap();
        let c = b.mul(&a.pow(2).unwrap());
        assert!(c.agrees_mod(&Padic::one(5, 20), c.prec()));
        assert_eq!(b.valuation(), -2);
    }
}
