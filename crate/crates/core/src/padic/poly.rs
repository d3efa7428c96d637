use std::fmt;

use serde::Serialize;

use super::element::Padic;

/// Polynomial over `Q_p`, coefficients stored from the constant term up.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicPoly {
    p: u64,
    coeffs: Vec<Padic>,
}

impl PadicPoly {
    pub fn new(p: u64, coeffs: Vec<Padic>) -> PadicPoly {
        PadicPoly { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&Padic> {
        self.coeffs.get(i)
    }

    pub fn min_prec(&self) -> i64 {
        self.coeffs.iter().map(Padic::prec).min().unwrap_or(0)
    }

    pub fn eval(&self, x: &Padic) -> Padic {
        let mut acc = match self.coeffs.last() {
            Some(c) => c.clone(),
            None => return Padic::zero(self.p, x.prec()),
        };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> PadicPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_int(i as i64))
            .collect();
        PadicPoly::new(self.p, coeffs)
    }

    pub fn truncate(&self, prec: i64) -> PadicPoly {
        PadicPoly::new(self.p, self.coeffs.iter().map(|c| c.truncate(prec)).collect())
    }

    /// Coefficient-wise agreement modulo `p^k`, padding the shorter with zeros.
    pub fn agrees_mod(&self, o: &PadicPoly, k: i64) -> bool {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Padic::zero(self.p, k);
        (0..n).all(|i| {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = o.coeffs.get(i).unwrap_or(&z);
            a.agrees_mod(b, k)
        })
    }
}

impl Serialize for PadicPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Debug for PadicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
