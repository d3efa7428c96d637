//! Closed Laurent 1-forms on the split torus `(G_m)^t` and their reduction to
//! `sum c_n dz_n/z_n + d(g)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

/// `sum c * z^m` over exponent vectors `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    pub t: usize,
    pub terms: BTreeMap<Exponent, BigRational>,
}

/// `sum c * z^m dz_n`, keyed by `(m, n)` with `n` zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentForm {
    pub t: usize,
    pub terms: BTreeMap<(Exponent, usize), BigRational>,
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigRational>, k: K, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        // drop cancelled entries so equality is structural
        map.retain(|_, v| !v.is_zero());
    }
}

impl LaurentPoly {
    pub fn zero(t: usize) -> LaurentPoly {
        LaurentPoly { t, terms: BTreeMap::new() }
    }

    pub fn add_monomial(&mut self, m: Exponent, c: BigRational) {
        assert_eq!(m.len(), self.t);
        add_term(&mut self.terms, m, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `dg = sum_k (dg/dz_k) dz_k`.
    pub fn differential(&self) -> LaurentForm {
        let mut out = LaurentForm::zero(self.t);
        for (m, c) in &self.terms {
            for k in 0..self.t {
                if m[k] == 0 {
                    continue;
                }
                let mut e = m.clone();
                e[k] -= 1;
                out.add_term(e, k, c * BigRational::from_integer(BigInt::from(m[k])));
            }
        }
        out
    }
}

impl LaurentForm {
    pub fn zero(t: usize) -> LaurentForm {
        LaurentForm { t, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, m: Exponent, n: usize, c: BigRational) {
        assert_eq!(m.len(), self.t);
        assert!(n < self.t);
        add_term(&mut self.terms, (m, n), c);
    }

    /// `c dz_n / z_n`.
    pub fn log_basis(t: usize, n: usize) -> LaurentForm {
        let mut m = vec![0; t];
        m[n] = -1;
        let mut f = LaurentForm::zero(t);
        f.add_term(m, n, BigRational::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LaurentForm) -> LaurentForm {
        let mut out = self.clone();
        for ((m, n), c) in &o.terms {
            out.add_term(m.clone(), *n, c.clone());
        }
        out
    }

    pub fn scale(&self, a: &BigRational) -> LaurentForm {
        let mut out = LaurentForm::zero(self.t);
        for ((m, n), c) in &self.terms {
            out.add_term(m.clone(), *n, c * a);
        }
        out
    }

    pub fn sub(&self, o: &LaurentForm) -> LaurentForm {
        self.add(&o.scale(&-BigRational::one()))
    }

    /// Coefficients of `dz_k ^ dz_n` (`k < n`) in `d(omega)`.
    pub fn exterior_derivative(&self) -> BTreeMap<(Exponent, usize, usize), BigRational> {
        let mut out = BTreeMap::new();
        for ((m, n), c) in &self.terms {
            for k in 0..self.t {
                if k == *n || m[k] == 0 {
                    continue;
                }
                let mut e = m.clone();
                e[k] -= 1;
                let v = c * BigRational::from_integer(BigInt::from(m[k]));
                // d(c z^m) ^ dz_n contributes c m_k z^(m-e_k) dz_k ^ dz_n
                if k < *n {
                    add_term(&mut out, (e, k, *n), v);
                } else {
                    add_term(&mut out, (e, *n, k), -v);
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_derivative().is_empty()
    }

    /// Log poles along `z_n = 0`: no `dz_n` term has `z_n`-exponent `<= -2`.
    pub fn log_poles_at_zero(&self) -> std::result::Result<(), String> {
        for (m, n) in self.terms.keys() {
            if m[*n] <= -2 {
                return Err(format!("z{}^{} dz_{} has a pole of order {} along z{} = 0", n + 1, m[*n], n + 1, -m[*n], n + 1));
            }
        }
        Ok(())
    }

    /// Log poles along the whole boundary of `(P^1)^t`, including infinity.
    ///
    /// At `w = 1/z_n`, `z_n^m dz_n = -w^(-m-2) dw`, so only `m_n = -1` is
    /// allowed, and regularity in the other variables at 0 and infinity forces
    /// every coefficient function to be constant.
    pub fn log_poles_on_compactification(&self) -> bool {
        self.terms.keys().all(|(m, n)| m.iter().enumerate().all(|(k, &e)| e == if k == *n { -1 } else { 0 }))
    }
}

/// Output of [`reduce_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub coeffs: Vec<BigRational>,
    pub primitive: LaurentPoly,
}

/// Writes a closed form as `sum coeffs_n dz_n/z_n + d(primitive)`, exactly.
pub fn reduce_form(omega: &LaurentForm) -> Result<Reduction> {
    if !omega.is_closed() {
        return Err(Error::NotClosed);
    }
    omega.log_poles_at_zero().map_err(Error::NotLogarithmic)?;
    let t = omega.t;
    let mut coeffs = vec![BigRational::zero(); t];
    // group by weight w = m + e_n: the term is c z^w dz_n/z_n
    let mut by_weight: BTreeMap<Exponent, Vec<BigRational>> = BTreeMap::new();
    for ((m, n), c) in &omega.terms {
        let mut w = m.clone();
        w[*n] += 1;
        by_weight.entry(w).or_insert_with(|| vec![BigRational::zero(); t])[*n] += c;
    }
    let mut primitive = LaurentPoly::zero(t);
    for (w, a) in by_weight {
        match w.iter().position(|&x| x != 0) {
            None => {
                for (n, c) in a.into_iter().enumerate() {
                    coeffs[n] += c;
                }
            }
            Some(k) => {
                // closedness gives a = (a_k / w_k) w, so this part is d((a_k/w_k) z^w)
                let g = &a[k] / BigRational::from_integer(BigInt::from(w[k]));
                primitive.add_monomial(w, g);
            }
        }
    }
    let mut rebuilt = primitive.differential();
    for (n, c) in coeffs.iter().enumerate() {
        rebuilt = rebuilt.add(&LaurentForm::log_basis(t, n).scale(c));
    }
    if !omega.sub(&rebuilt).is_zero() {
        return Err(Error::NotClosed);
    }
    Ok(Reduction { coeffs, primitive })
}

/// Dimension of the span of the reductions of the `t` basis forms.
pub fn h1_dim(t: usize) -> usize {
    let mut seen = 0;
    for n in 0..t {
        let r = reduce_form(&LaurentForm::log_basis(t, n)).expect("basis forms are closed and logarithmic");
        let unit = r.coeffs.iter().enumerate().all(|(k, c)| *c == BigRational::from_integer(BigInt::from((k == n) as i64)));
        if unit && r.primitive.is_zero() {
            seen += 1;
        }
    }
    seen
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentForm {
    /// One term per line: `coef * z1^a1 z2^a2 d z_n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((m, n), c) in &self.terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, e)| format!("z{}^{}", k + 1, e))
                .collect();
            if mono.is_empty() {
                writeln!(f, "{} * d z_{}", fmt_rational(c), n + 1)?;
            } else {
                writeln!(f, "{} * {} d z_{}", fmt_rational(c), mono.join(" "), n + 1)?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// `(variable powers, differential index, coefficient)` as read from text.
type RawTerm = (Vec<(usize, i64)>, usize, BigRational);

impl LaurentForm {
    /// Parses the term-list format; `t` is the largest variable index seen
    /// unless `min_t` is larger.
    pub fn parse(text: &str, min_t: usize) -> Result<LaurentForm> {
        let mut raw: Vec<RawTerm> = Vec::new();
        let mut t = min_t;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("bad term `{line}`"));
            let (lhs, var) = line.rsplit_once("d z_").ok_or_else(bad)?;
            let n: usize = var.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let (coef, mono) = match lhs.split_once('*') {
                Some((c, m)) => (c, m),
                None => (lhs, ""),
            };
            let c = parse_rational(coef)?;
            let mut exps = Vec::new();
            for tok in mono.split_whitespace() {
                let tok = tok.strip_prefix('z').ok_or_else(bad)?;
                let (k, e) = match tok.split_once('^') {
                    Some((k, e)) => (k, e.parse::<i64>().map_err(|_| bad())?),
                    None => (tok, 1),
                };
                let k: usize = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                t = t.max(k);
                exps.push((k - 1, e));
            }
            t = t.max(n);
            raw.push((exps, n - 1, c));
        }
        let mut form = LaurentForm::zero(t);
        for (exps, n, c) in raw {
            let mut m = vec![0; t];
            for (k, e) in exps {
                m[k] += e;
            }
            form.add_term(m, n, c);
        }
        Ok(form)
    }
}

impl FromStr for LaurentForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<LaurentForm> {
        LaurentForm::parse(s, 1)
    }
}

/// JSON shape of a reduction.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionJson {
    pub t: usize,
    pub coeffs: Vec<String>,
    pub primitive: Vec<(Exponent, String)>,
}

impl Reduction {
    pub fn to_json(&self, t: usize) -> ReductionJson {
        ReductionJson {
            t,
            coeffs: self.coeffs.iter().map(fmt_rational).collect(),
            primitive: self.primitive.terms.iter().map(|(m, c)| (m.clone(), fmt_rational(c))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn closedness() {
        assert!(LaurentForm::log_basis(1, 0).is_closed());
        let mut f = LaurentForm::zero(2);
        f.add_term(vec![0, 1], 0, q(1, 1));
        assert!(!f.is_closed());
        assert_eq!(reduce_form(&f), Err(Error::NotClosed));
    }

    #[test]
    fn exact_monomial() {
        for k in [0i64, 1, 2, 5] {
            let mut f = LaurentForm::zero(1);
            f.add_term(vec![k], 0, q(1, 1));
            let r = reduce_form(&f).unwrap_or_else(|e| panic!("k={k}: {e}"));
            assert_eq!(r.coeffs, vec![q(0, 1)]);
            let mut g = LaurentPoly::zero(1);
            g.add_monomial(vec![k + 1], q(1, k + 1));
            assert_eq!(r.primitive, g);
        }
    }

    #[test]
    fn exact_but_not_logarithmic() {
        let mut f = LaurentForm::zero(1);
        f.add_term(vec![-3], 0, q(1, 1));
        assert!(matches!(reduce_form(&f), Err(Error::NotLogarithmic(_))));
    }

    #[test]
    fn mixed_example() {
        let f: LaurentForm = "3 * z1^2 d z_1\n2 * z1^-1 d z_1".parse().unwrap();
        let r = reduce_form(&f).unwrap();
        assert_eq!(r.coeffs, vec![q(2, 1)]);
        let mut g = LaurentPoly::zero(1);
        g.add_monomial(vec![3], q(1, 1));
        assert_eq!(r.primitive, g);
    }

    #[test]
    fn deep_pole_rejected() {
        let f: LaurentForm = "1 * z1^-2 z2 d z_1".parse().unwrap();
        assert!(matches!(reduce_form(&f), Err(Error::NotClosed) | Err(Error::NotLogarithmic(_))));
        let g: LaurentForm = "1 * z1^-2 d z_1".parse().unwrap();
        assert!(matches!(reduce_form(&g), Err(Error::NotLogarithmic(_))));
    }

    #[test]
    fn dims() {
        assert_eq!(h1_dim(1), 1);
        assert_eq!(h1_dim(3), 3);
    }

    #[test]
    fn text_roundtrip() {
        let f: LaurentForm = "1/2 * z1^-1 z2^3 d z_2\n-4 * d z_1".parse().unwrap();
        assert_eq!(f.t, 2);
        let g: LaurentForm = f.to_string().parse().unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn compactification_condition() {
        assert!(LaurentForm::log_basis(2, 1).log_poles_on_compactification());
        let f: LaurentForm = "1 * z1 d z_1".parse().unwrap();
        assert!(!f.log_poles_on_compactification());
    }
}
