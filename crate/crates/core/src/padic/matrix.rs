use std::fmt;

use serde::Serialize;

use super::element::Padic;
use super::poly::PadicPoly;
use crate::error::{Error, Result};

/// Extra digits given to constants (identity entries, unit pivots) so they
/// never limit the precision of a result.
const CONST_MARGIN: i64 = 64;

/// Dense matrix over `Q_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<Padic>,
}

impl PadicMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<Padic>) -> PadicMatrix {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        PadicMatrix { p, rows, cols, data }
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Padic) -> PadicMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PadicMatrix { p, rows, cols, data }
    }

    pub fn from_ints(p: u64, rows: usize, cols: usize, entries: &[i64], prec: i64) -> PadicMatrix {
        assert_eq!(entries.len(), rows * cols);
        PadicMatrix::from_fn(p, rows, cols, |i, j| Padic::from_int(p, entries[i * cols + j], prec))
    }

    pub fn zeros(p: u64, rows: usize, cols: usize, prec: i64) -> PadicMatrix {
        PadicMatrix::from_fn(p, rows, cols, |_, _| Padic::zero(p, prec))
    }

    pub fn identity(p: u64, n: usize, prec: i64) -> PadicMatrix {
        PadicMatrix::from_fn(p, n, n, |i, j| Padic::from_int(p, (i == j) as i64, prec))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Padic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Padic) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Padic] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Padic> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(p: u64, rows: usize, cols: &[Vec<Padic>]) -> PadicMatrix {
        PadicMatrix::from_fn(p, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn min_prec(&self) -> i64 {
        self.data.iter().map(Padic::prec).min().unwrap_or(i64::MAX / 8)
    }

    pub fn max_prec(&self) -> i64 {
        self.data.iter().map(Padic::prec).max().unwrap_or(0)
    }

    /// Smallest valuation of a nonzero entry (`None` if all entries vanish).
    pub fn min_valuation(&self) -> Option<i64> {
        self.data.iter().filter(|x| !x.is_zero()).map(Padic::valuation).min()
    }

    fn const_prec(&self) -> i64 {
        self.max_prec().max(1) + CONST_MARGIN
    }

    pub fn transpose(&self) -> PadicMatrix {
        PadicMatrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&Padic) -> Padic) -> PadicMatrix {
        PadicMatrix::new(self.p, self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn truncate(&self, prec: i64) -> PadicMatrix {
        self.map(|x| x.truncate(prec))
    }

    pub fn add(&self, o: &PadicMatrix) -> PadicMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        PadicMatrix::new(self.p, self.rows, self.cols, data)
    }

    pub fn sub(&self, o: &PadicMatrix) -> PadicMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        PadicMatrix::new(self.p, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Padic) -> PadicMatrix {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, o: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let prec = self.min_prec().min(o.min_prec()).max(0);
        PadicMatrix::from_fn(self.p, self.rows, o.cols, |i, j| {
            if self.cols == 0 {
                return Padic::zero(self.p, prec);
            }
            let mut acc = self.get(i, 0).mul(o.get(0, j));
            for k in 1..self.cols {
                acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Padic]) -> Vec<Padic> {
        let m = PadicMatrix::from_columns(self.p, v.len(), &[v.to_vec()]);
        self.mul(&m).column(0)
    }

    pub fn pow(&self, e: u64) -> PadicMatrix {
        assert!(self.is_square());
        let mut acc = PadicMatrix::identity(self.p, self.rows, self.const_prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn hstack(&self, o: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.rows, o.rows);
        PadicMatrix::from_fn(self.p, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.cols, o.cols);
        PadicMatrix::from_fn(self.p, self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                o.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PadicMatrix {
        PadicMatrix::from_fn(self.p, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// True when every entry is divisible by `p^k` at its known precision.
    pub fn vanishes_mod(&self, k: i64) -> bool {
        self.data.iter().all(|x| x.valuation() >= k)
    }

    pub fn agrees_mod(&self, o: &PadicMatrix, k: i64) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.sub(o).vanishes_mod(k)
    }

    /// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free recursion.
    pub fn charpoly(&self) -> PadicPoly {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let one = Padic::one(self.p, self.const_prec());
        // coefficients highest degree first
        let mut v = vec![one.clone()];
        for i in (0..n).rev() {
            let k = n - i;
            let a = self.get(i, i);
            let r: Vec<Padic> = ((i + 1)..n).map(|j| self.get(i, j).clone()).collect();
            let sub = self.block(i + 1, n, i + 1, n);
            let mut c: Vec<Padic> = ((i + 1)..n).map(|j| self.get(j, i).clone()).collect();
            let mut col = vec![one.clone(), a.neg()];
            for _ in 0..k.saturating_sub(1) {
                let dot = r
                    .iter()
                    .zip(&c)
                    .map(|(x, y)| x.mul(y))
                    .reduce(|s, t| s.add(&t))
                    .expect("nonempty");
                col.push(dot.neg());
                c = sub.mul_vec(&c);
            }
            let mut next = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let mut acc: Option<Padic> = None;
                for l in 0..v.len().min(j + 1) {
                    let t = col[j - l].mul(&v[l]);
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s.add(&t),
                    });
                }
                next.push(acc.expect("at least one term"));
            }
            v = next;
        }
        v.reverse();
        PadicPoly::new(self.p, v)
    }

    pub fn trace(&self) -> Padic {
        assert!(self.is_square());
        (1..self.rows).fold(self.get(0, 0).clone(), |acc, i| acc.add(self.get(i, i)))
    }

    fn pivot_row(&self, col: usize, from: usize, tol: i64) -> Option<usize> {
        (from..self.rows)
            .filter(|&r| !self.get(r, col).is_zero() && self.get(r, col).valuation() < tol)
            .min_by_key(|&r| self.get(r, col).valuation())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn det(&self) -> Padic {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Padic::one(self.p, CONST_MARGIN);
        }
        let mut m = self.clone();
        let mut det = Padic::one(self.p, self.const_prec());
        for k in 0..n {
            let Some(r) = m.pivot_row(k, k, i64::MAX) else {
                let prec = (k..n).map(|i| m.get(i, k).prec()).min().unwrap_or(0);
                return det.mul(&Padic::zero(self.p, prec));
            };
            if r != k {
                m.swap_rows(r, k);
                det = det.neg();
            }
            let piv = m.get(k, k).clone();
            det = det.mul(&piv);
            for i in (k + 1)..n {
                let f = m.get(i, k).div(&piv).expect("pivot is nonzero");
                for j in (k + 1)..n {
                    let x = m.get(i, j).sub(&f.mul(m.get(k, j)));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    /// Reduced row echelon form, treating entries of valuation `>= tol` as zero.
    /// Returns the reduced matrix and the pivot columns.
    pub fn rref(&self, tol: i64) -> (PadicMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(r) = m.pivot_row(col, row, tol) else {
                continue;
            };
            m.swap_rows(r, row);
            let piv = m.get(row, col).clone();
            for j in 0..m.cols {
                let x = m.get(row, j).div(&piv).expect("pivot is nonzero");
                m.set(row, j, x);
            }
            m.set(row, col, Padic::one(m.p, m.const_prec()));
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let x = m.get(i, j).sub(&f.mul(m.get(row, j)));
                    m.set(i, j, x);
                }
                m.set(i, col, Padic::zero(m.p, f.prec().min(m.get(row, col).prec())));
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: i64) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of the right kernel as columns of the returned matrix.
    pub fn kernel(&self, tol: i64) -> PadicMatrix {
        let (r, pivots) = self.rref(tol);
        let prec = r.min_prec().max(1);
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let cols: Vec<Vec<Padic>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Padic::zero(self.p, prec); self.cols];
                v[f] = Padic::one(self.p, prec);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(i, f).neg();
                }
                v
            })
            .collect();
        PadicMatrix::from_columns(self.p, self.cols, &cols)
    }

    pub fn inverse(&self) -> Result<PadicMatrix> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&PadicMatrix::identity(self.p, n, self.const_prec()));
        let (r, pivots) = aug.rref(i64::MAX);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByIndistinguishableZero);
        }
        Ok(r.block(0, n, n, 2 * n))
    }

    /// Solves `self * X = b` for square invertible `self`.
    pub fn solve(&self, b: &PadicMatrix) -> Result<PadicMatrix> {
        Ok(self.inverse()?.mul(b))
    }
}

/// Serialized as a list of rows.
impl Serialize for PadicMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Padic>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Debug for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PadicMatrix {}x{} over Q_{} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_token()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, n: usize, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_ints(p, n, n, e, 20)
    }

    fn ints(p: u64, c: &[i64]) -> PadicPoly {
        PadicPoly::new(p, c.iter().map(|&a| Padic::from_int(p, a, 20)).collect())
    }

    #[test]
    fn charpoly_diagonal() {
        let d = m(5, 2, &[1, 0, 0, 5]);
        assert!(d.charpoly().agrees_mod(&ints(5, &[5, -6, 1]), 20));
    }

    #[test]
    #[allow(clippy::erasing_op, clippy::identity_op, clippy::neg_multiply)]
    fn charpoly_3x3_against_cofactor_oracle() {
        let a = [2i64, -1, 3, 4, 0, 7, -5, 6, 1];
        // x^3 - tr x^2 + (sum of principal 2-minors) x - det
        let tr = 2 + 0 + 1;
        let minors = (2 * 0 - (-1) * 4) + (2 * 1 - 3 * (-5)) + (0 * 1 - 7 * 6);
        let det = 2 * (0 * 1 - 7 * 6) - (-1) * (4 * 1 - 7 * (-5)) + 3 * (4 * 6 - 0 * (-5));
        let cp = m(7, 3, &a).charpoly();
        assert!(cp.agrees_mod(&ints(7, &[-det, minors, -tr, 1]), 20));
        assert!(m(7, 3, &a).det().agrees_mod(&Padic::from_int(7, det, 20), 20));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(5, 3, &[1, 5, 2, 0, 25, 3, 7, 1, 1]);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        assert!(prod.agrees_mod(&PadicMatrix::identity(5, 3, 20), prod.min_prec()));
        assert!(prod.min_prec() >= 15);
    }

    #[test]
    fn singular_inverse_fails() {
        let a = m(5, 2, &[1, 2, 2, 4]);
        assert!(a.inverse().is_err());
    }

    #[test]
    fn kernel_and_rank() {
        let a = PadicMatrix::from_ints(3, 2, 3, &[1, 2, 3, 2, 4, 6], 20);
        assert_eq!(a.rank(20), 1);
        let k = a.kernel(20);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).vanishes_mod(18));
    }
}
