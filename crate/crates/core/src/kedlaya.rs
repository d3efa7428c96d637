//! Frobenius on the first Monsky-Washnitzer cohomology of `y^2 = f(x)`, `f` a
//! monic cubic with good reduction at `p >= 5`, in the basis `{dx/y, x dx/y}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusModule, ModuleLabel};
use crate::padic::{Padic, PadicMatrix, PadicPoly, COMPARISON_BUFFER};

/// `y^2 = x^3 + c2 x^2 + c1 x + c0` over `Z`, good reduction at `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodCurve {
    pub p: u64,
    /// `[c0, c1, c2]`
    pub coeffs: [i64; 3],
}

impl GoodCurve {
    pub fn new(p: u64, coeffs: [i64; 3]) -> Result<GoodCurve> {
        if p < 5 {
            return Err(Error::EvenPrimeUnsupported);
        }
        let c = GoodCurve { p, coeffs };
        if c.discriminant().mod_floor(&BigInt::from(p)).is_zero() {
            return Err(Error::BadReduction);
        }
        Ok(c)
    }

    /// Short form `y^2 = x^3 + a x + b`.
    pub fn short(p: u64, a: i64, b: i64) -> Result<GoodCurve> {
        GoodCurve::new(p, [b, a, 0])
    }

    /// Discriminant of the cubic.
    pub fn discriminant(&self) -> BigInt {
        let [c, b, a] = self.coeffs.map(BigInt::from);
        // x^3 + a x^2 + b x + c
        &a * &a * &b * &b - 4 * &b * &b * &b - 4 * &a * &a * &a * &c - 27 * &c * &c + 18 * &a * &b * &c
    }

    fn cubic(&self) -> Vec<BigInt> {
        vec![
            BigInt::from(self.coeffs[0]),
            BigInt::from(self.coeffs[1]),
            BigInt::from(self.coeffs[2]),
            BigInt::one(),
        ]
    }
}

/// `a_p = p + 1 - #E(F_p)` by enumerating all affine points.
pub fn count_points_naive(c: &GoodCurve) -> i64 {
    let p = c.p as i64;
    let f = |x: i64| {
        let [c0, c1, c2] = c.coeffs;
        (((x * x % p) * x + c2 * (x * x % p) + c1 * x + c0) % p + p) % p
    };
    let mut squares = vec![0i64; p as usize];
    for y in 0..p {
        squares[(y * y % p) as usize] += 1;
    }
    let affine: i64 = (0..p).map(|x| squares[f(x) as usize]).sum();
    p + 1 - (affine + 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobResult {
    pub p: u64,
    pub coeffs: [i64; 3],
    /// Column `i` holds the coordinates of the image of `x^i dx/y`.
    pub matrix: PadicMatrix,
    pub charpoly: PadicPoly,
    pub a_p: i64,
    pub precision: i64,
}

type Poly = Vec<Padic>;

struct Reducer {
    p: u64,
    work: i64,
    q: Poly,
    dq: Poly,
    /// `t` with `s q + t q' = 1`.
    t: Poly,
}

fn trim(a: &mut Poly) {
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn poly_add_into(acc: &mut Poly, b: &[Padic], zero: &Padic) {
    if acc.len() < b.len() {
        acc.resize(b.len(), zero.clone());
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x = x.add(y);
    }
}

fn poly_mul(a: &[Padic], b: &[Padic], zero: &Padic) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn derivative(a: &[Padic]) -> Poly {
    a.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect()
}

/// Solves `s q + t q' = 1` over `Q` and returns `t`.
fn bezout_t(q: &[BigInt]) -> Result<Vec<BigRational>> {
    // unknowns s0, s1, t0, t1, t2: coefficients of degree 0..4
    let dq: Vec<BigInt> = q.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 6]; 5];
    for (si, row_shift) in [(0usize, 0usize), (1, 1)] {
        for (k, c) in q.iter().enumerate() {
            m[k + row_shift][si] = BigRational::from_integer(c.clone());
        }
    }
    for ti in 0..3 {
        for (k, c) in dq.iter().enumerate() {
            m[k + ti][2 + ti] = BigRational::from_integer(c.clone());
        }
    }
    m[0][5] = BigRational::one();
    // Gauss-Jordan over Q
    for col in 0..5 {
        let piv = (col..5).find(|&r| !m[r][col].is_zero()).ok_or(Error::BadReduction)?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..5 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (dst, src) in m[r].iter_mut().zip(&pivot) {
                    *dst -= src * &f;
                }
            }
        }
    }
    Ok((2..5).map(|i| m[i][5].clone()).collect())
}

impl Reducer {
    fn new(c: &GoodCurve, work: i64) -> Result<Reducer> {
        let p = c.p;
        let qz = c.cubic();
        let q: Poly = qz.iter().map(|x| Padic::from_bigint(p, x, work)).collect();
        let dq = derivative(&q);
        let t = bezout_t(&qz)?
            .iter()
            .map(|r| Padic::from_rational(p, r, work))
            .collect::<Result<Poly>>()?;
        Ok(Reducer { p, work, q, dq, t })
    }

    fn zero(&self) -> Padic {
        Padic::zero(self.p, self.work)
    }

    fn reset(&self, a: &mut Poly) {
        for c in a.iter_mut() {
            *c = c.lift_to(self.work);
        }
    }

    /// Quotient and remainder by the monic cubic.
    fn divmod_q(&self, a: &[Padic]) -> (Poly, Poly) {
        let mut r: Poly = a.to_vec();
        if r.len() < 4 {
            r.resize(3, self.zero());
            return (vec![self.zero()], r);
        }
        let mut quo = vec![self.zero(); r.len() - 3];
        for k in (3..r.len()).rev() {
            let lead = r[k].clone();
            quo[k - 3] = lead.clone();
            if lead.is_zero() {
                continue;
            }
            for (i, qi) in self.q.iter().enumerate().take(3) {
                r[k - 3 + i] = r[k - 3 + i].sub(&lead.mul(qi));
            }
            r[k] = self.zero();
        }
        r.truncate(3);
        (quo, r)
    }

    /// Rewrites `A dx / y^(2j+1)` as `B dx / y^(2j-1)` modulo exact forms.
    fn step_down(&self, a: &[Padic], j: i64) -> Result<Poly> {
        let (_, rem) = self.divmod_q(a);
        let (_, v) = self.divmod_q(&poly_mul(&rem, &self.t, &self.zero()));
        let vdq = poly_mul(&v, &self.dq, &self.zero());
        let mut diff = a.to_vec();
        let neg: Poly = vdq.iter().map(Padic::neg).collect();
        poly_add_into(&mut diff, &neg, &self.zero());
        let (u, _) = self.divmod_q(&diff);
        let mut out = u;
        let dv: Poly = derivative(&v)
            .iter()
            .map(|c| c.mul_int(2).div_int(2 * j - 1))
            .collect::<Result<Poly>>()?;
        poly_add_into(&mut out, &dv, &self.zero());
        self.reset(&mut out);
        trim(&mut out);
        Ok(out)
    }

    /// Reduces `P dx / y` to the coordinates on `{dx/y, x dx/y}`.
    fn final_reduce(&self, a: &[Padic]) -> Result<[Padic; 2]> {
        let mut r = a.to_vec();
        if r.len() < 2 {
            r.resize(2, self.zero());
        }
        // d(x^m y) = (2m x^(m-1) q + x^m q') / 2 dx/y, leading coefficient (2m+3)/2
        for d in (2..r.len()).rev() {
            let m = d as i64 - 2;
            let lead = r[d].clone();
            if lead.is_zero() {
                continue;
            }
            let scale = lead.mul_int(2).div_int(2 * m + 3)?;
            let mut exact = vec![self.zero(); d + 1];
            if m > 0 {
                for (i, qi) in self.q.iter().enumerate() {
                    let k = (m - 1) as usize + i;
                    exact[k] = exact[k].add(&qi.mul_int(2 * m));
                }
            }
            for (i, dqi) in self.dq.iter().enumerate() {
                let k = m as usize + i;
                exact[k] = exact[k].add(dqi);
            }
            for (k, e) in exact.iter().enumerate() {
                r[k] = r[k].sub(&e.mul(&scale).div_int(2)?);
            }
            for c in r.iter_mut() {
                *c = c.lift_to(self.work);
            }
        }
        Ok([r[0].clone(), r[1].clone()])
    }

    /// Reduces `sum_j A_j dx / y^(2j+1)` (indexed by `j`) to basis coordinates.
    fn reduce(&self, mut forms: Vec<Poly>) -> Result<[Padic; 2]> {
        for j in (1..forms.len()).rev() {
            let a = std::mem::take(&mut forms[j]);
            if a.is_empty() {
                continue;
            }
            let down = self.step_down(&a, j as i64)?;
            poly_add_into(&mut forms[j - 1], &down, &self.zero());
        }
        let base = forms.into_iter().next().unwrap_or_default();
        self.final_reduce(&base)
    }
}

/// Digits lost to the denominators `2j - 1` and `2m + 3` met while reducing
/// forms with pole order up to `2 j_max + 1`, counted twice for safety.
fn loss_bound(p: u64, j_max: i64) -> i64 {
    let mut l = 0;
    let mut pk = p as i64;
    while pk <= 2 * j_max + 3 {
        l += 1;
        pk *= p as i64;
    }
    2 * l + 2
}

/// Reduces `sum_j A_j dx / y^(2j+1)` with integer polynomial coefficients to the
/// basis `{dx/y, x dx/y}`; used to check that exact forms reduce to zero.
pub fn reduce_to_basis(c: &GoodCurve, forms: &[Vec<BigRational>], prec: i64) -> Result<[Padic; 2]> {
    let red = Reducer::new(c, prec)?;
    let polys = forms
        .iter()
        .map(|f| f.iter().map(|x| Padic::from_rational(c.p, x, prec)).collect::<Result<Poly>>())
        .collect::<Result<Vec<Poly>>>()?;
    red.reduce(polys)
}

pub fn frobenius_matrix(c: &GoodCurve, n: i64) -> Result<FrobResult> {
    let p = c.p;
    let pi = p as i64;
    if n < 1 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    // number of series terms so that dropped terms vanish mod p^n after reduction
    let mut terms = n;
    loop {
        let j_max = pi * (terms + 1);
        let needed = n + loss_bound(p, j_max) + 2;
        if terms >= needed {
            break;
        }
        terms = needed;
    }
    let j_max = pi * terms + (pi - 1) / 2;
    let work = n + loss_bound(p, j_max) + COMPARISON_BUFFER;
    let red = Reducer::new(c, work)?;
    let modulus = BigInt::from(p).pow(work as u32);
    let zero = red.zero();

    // E = f(x^p) - f(x)^p as an integer polynomial
    let fz = c.cubic();
    let mut fp = vec![BigInt::one()];
    for _ in 0..p {
        let mut next = vec![BigInt::zero(); fp.len() + 3];
        for (i, a) in fp.iter().enumerate() {
            for (j, b) in fz.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        fp = next;
    }
    let mut e: Vec<BigInt> = fp.iter().map(|x| -x).collect();
    for (i, a) in fz.iter().enumerate() {
        e[i * p as usize] += a;
    }
    let e: Vec<BigInt> = e.iter().map(|x| x.mod_floor(&modulus)).collect();

    let inv4 = Padic::from_int(p, 4, work).inv()?;
    let mut cols = Vec::new();
    for i in 0..2i64 {
        let mut forms: Vec<Poly> = vec![Vec::new(); (j_max + 1) as usize];
        let shift = (pi * (i + 1) - 1) as usize;
        let mut ek = vec![BigInt::one()];
        let mut binom = BigInt::one();
        for k in 0..=terms {
            // p * binom(-1/2, k) = p (-1)^k C(2k, k) / 4^k
            if k > 0 {
                binom = binom * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k);
                let mut next = vec![BigInt::zero(); ek.len() + e.len() - 1];
                for (a_i, a) in ek.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (b_i, b) in e.iter().enumerate() {
                        next[a_i + b_i] += a * b;
                    }
                }
                ek = next.iter().map(|x| x.mod_floor(&modulus)).collect();
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let coef = Padic::from_bigint(p, &(&binom * sign * BigInt::from(p)), work).mul(&inv4.pow(k)?);
            let j = ((pi * (2 * k + 1) - 1) / 2) as usize;
            let mut poly = vec![zero.clone(); shift + ek.len()];
            for (d, a) in ek.iter().enumerate() {
                poly[shift + d] = Padic::from_bigint(p, a, work).mul(&coef);
            }
            poly_add_into(&mut forms[j], &poly, &zero);
        }
        let [c0, c1] = red.reduce(forms)?;
        cols.push(vec![c0.truncate(n), c1.truncate(n)]);
    }
    let matrix = PadicMatrix::from_columns(p, 2, &cols);
    let charpoly = matrix.charpoly().truncate(n);
    let trace = matrix.trace();
    let a_p = trace
        .to_signed_integer()
        .and_then(|x| x.to_i64())
        .filter(|x| x.abs() as f64 <= 2.0 * (p as f64).sqrt())
        .ok_or_else(|| Error::PrecisionExhausted("trace is not a Hasse-bounded integer".into()))?;
    let precision = matrix.min_prec();
    Ok(FrobResult {
        p,
        coeffs: c.coeffs,
        matrix,
        charpoly,
        a_p,
        precision,
    })
}

impl FrobResult {
    /// The B-module with Hodge subspace spanned by `dx/y`.
    pub fn module(&self) -> Result<FrobeniusModule> {
        let p = self.p;
        let prec = self.precision;
        let hodge = PadicMatrix::from_columns(p, 2, &[vec![Padic::one(p, prec), Padic::zero(p, prec)]]);
        FrobeniusModule::new(ModuleLabel::B, self.matrix.clone(), hodge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(count_points_naive(&GoodCurve::short(5, 1, 1).unwrap()), -3);
        assert_eq!(count_points_naive(&GoodCurve::short(5, 1, 0).unwrap()), 2);
        assert_eq!(count_points_naive(&GoodCurve::short(5, 0, 1).unwrap()), 0);
    }

    #[test]
    fn bad_reduction_and_small_primes() {
        assert_eq!(GoodCurve::short(5, 0, 0), Err(Error::BadReduction));
        assert_eq!(GoodCurve::short(3, 1, 1), Err(Error::EvenPrimeUnsupported));
        // x^3 - x has discriminant 4
        assert_eq!(GoodCurve::short(7, -1, 0).unwrap().discriminant(), BigInt::from(4));
    }

    #[test]
    fn frobenius_of_x3_x_1() {
        let c = GoodCurve::short(5, 1, 1).unwrap();
        let r = frobenius_matrix(&c, 10).unwrap();
        assert_eq!(r.a_p, -3);
        let expected = PadicPoly::new(5, [5, 3, 1].iter().map(|&a| Padic::from_int(5, a, 10)).collect());
        assert!(r.charpoly.agrees_mod(&expected, 10 - COMPARISON_BUFFER), "{:?}", r.charpoly);
    }

    #[test]
    fn frobenius_of_x3_x() {
        let c = GoodCurve::short(5, 1, 0).unwrap();
        let r = frobenius_matrix(&c, 25).unwrap();
        assert_eq!(r.a_p, 2);
        assert!(r.matrix.det().agrees_mod(&Padic::from_int(5, 5, 25), 25 - COMPARISON_BUFFER));
    }

    #[test]
    fn exact_forms_reduce_to_zero() {
        let c = GoodCurve::short(7, 2, 3).unwrap();
        let q = [3i64, 2, 0, 1];
        let dq = [2i64, 0, 3];
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        // d(x^m / y^(2j-1)) = m x^(m-1) dx/y^(2j-1) - (2j-1)/2 x^m q' dx/y^(2j+1)
        for (m, j) in [(0usize, 1usize), (2, 1), (3, 2), (5, 3)] {
            let mut forms = vec![vec![r(0); m + 3]; j + 1];
            if m > 0 {
                forms[j - 1][m - 1] = r(m as i64);
            }
            for (k, d) in dq.iter().enumerate() {
                forms[j][m + k] -= r(*d) * BigRational::new(BigInt::from(2 * j as i64 - 1), BigInt::from(2));
            }
            let red = reduce_to_basis(&c, &forms, 20).unwrap();
            assert!(red[0].valuation() >= 15 && red[1].valuation() >= 15, "m={m} j={j}");
        }
        // d(x^m y) = (2m x^(m-1) q + x^m q') / 2 dx/y
        for m in 0..4usize {
            let mut f = vec![r(0); m + 4];
            for (k, a) in q.iter().enumerate() {
                if m > 0 {
                    f[m - 1 + k] += r(*a) * r(m as i64);
                }
            }
            for (k, d) in dq.iter().enumerate() {
                f[m + k] += BigRational::new(BigInt::from(*d), BigInt::from(2));
            }
            let red = reduce_to_basis(&c, &[f], 20).unwrap();
            assert!(red[0].valuation() >= 15 && red[1].valuation() >= 15, "m={m}");
        }
    }
}
