use crate::error::{Error, Result};
use crate::padic::Padic;
use crate::tate::{BiextPoint, TateCurve};

use super::LambdaSplitting;

/// A degree-zero divisor `sum m_j (w_j)` and a degree-zero cycle
/// `sum n_i (a_i)` on the Tate curve, points given by `u`-parameters.
#[derive(Debug, Clone)]
pub struct DivisorZeroCyclePair {
    pub divisor: Vec<(Padic, i64)>,
    pub cycle: Vec<(Padic, i64)>,
}

impl DivisorZeroCyclePair {
    pub fn new(divisor: Vec<(Padic, i64)>, cycle: Vec<(Padic, i64)>) -> Result<DivisorZeroCyclePair> {
        if divisor.iter().map(|d| d.1).sum::<i64>() != 0 || cycle.iter().map(|d| d.1).sum::<i64>() != 0 {
            return Err(Error::InvalidInput("divisor and cycle must have degree zero".into()));
        }
        Ok(DivisorZeroCyclePair { divisor, cycle })
    }

    pub fn is_disjoint(&self, curve: &TateCurve) -> Result<bool> {
        for (w, _) in &self.divisor {
            for (a, _) in &self.cycle {
                if curve.is_identity(&w.div(a)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Point of the dual curve attached to the divisor: `prod w_j^{m_j}`.
    pub fn divisor_point(&self, curve: &TateCurve) -> Result<Padic> {
        let mut d = Padic::one(curve.p(), curve.prec() + 2 * curve.ord_q());
        for (w, m) in &self.divisor {
            d = d.mul(&curve.normalize(w)?.1.pow(*m)?);
        }
        Ok(d)
    }

    /// The rational section `x -> (prod Θ(w_j / x)^{m_j}; x, d^{-1})`.
    pub fn section(&self, curve: &TateCurve, x: &Padic) -> Result<BiextPoint> {
        let (_, x0) = curve.normalize(x)?;
        let mut g = Padic::one(curve.p(), curve.prec() + 2 * curve.ord_q());
        for (w, m) in &self.divisor {
            let (_, w0) = curve.normalize(w)?;
            g = g.mul(&curve.theta(&w0.div(&x0)?)?.pow(*m)?);
        }
        Ok(BiextPoint::new(g, x0, self.divisor_point(curve)?.inv()?))
    }
}

/// `δ · sum n_i τ(s_D(a_i))`.
pub fn local_pairing(pair: &DivisorZeroCyclePair, s: &LambdaSplitting, delta: &Padic) -> Result<Padic> {
    let curve = &s.curve;
    if !pair.is_disjoint(curve)? {
        return Err(Error::SupportsIntersect);
    }
    let mut acc = Padic::zero(curve.p(), curve.prec());
    for (a, n) in &pair.cycle {
        acc = acc.add(&s.eval(&pair.section(curve, a)?)?.mul_int(*n));
    }
    Ok(delta.mul(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::LogBranch;

    fn r(n: i64, d: i64) -> Padic {
        Padic::from_i64_ratio(5, n, d, 30).unwrap()
    }

    fn setup() -> LambdaSplitting {
        let t = TateCurve::new(Padic::from_int(5, 25 * 3, 40), 30).unwrap();
        LambdaSplitting::mazur_tate(t, LogBranch::with_int(5, 1, 30))
    }

    #[test]
    fn principal_divisor_gives_log_of_function() {
        let s = setup();
        let t = &s.curve;
        // D = (w1) + (w2) - (w3) - (1) with w1 w2 = w3
        let (w1, w2) = (r(2, 1), r(5 * 3, 1));
        let w3 = w1.mul(&w2);
        let one = Padic::one(5, 30);
        let div = vec![(w1.clone(), 1), (w2.clone(), 1), (w3.clone(), -1), (one.clone(), -1)];
        let cyc = vec![(r(7, 1), 1), (r(5 * 4, 1), 1), (r(3, 25), -2)];
        let pair = DivisorZeroCyclePair::new(div.clone(), cyc.clone()).unwrap();
        let got = local_pairing(&pair, &s, &one).unwrap();
        let f = |x: &Padic| -> Padic {
            let mut acc = one.clone();
            for (w, m) in &div {
                acc = acc.mul(&t.theta(&w.div(x).unwrap()).unwrap().pow(*m).unwrap());
            }
            acc
        };
        let mut expected = Padic::zero(5, 30);
        for (a, n) in &cyc {
            let (_, a0) = t.normalize(a).unwrap();
            expected = expected.add(&s.branch.log(&f(&a0)).unwrap().mul_int(*n));
        }
        assert!(got.agrees_mod(&expected, 20), "{got} vs {expected}");
    }

    #[test]
    fn intersecting_supports_rejected() {
        let s = setup();
        let q = s.curve.q().clone();
        let pair = DivisorZeroCyclePair::new(vec![(r(2, 1), 1), (r(3, 1), -1)], vec![(r(2, 1).mul(&q), 1), (r(7, 1), -1)])
            .unwrap();
        assert_eq!(local_pairing(&pair, &s, &Padic::one(5, 30)), Err(Error::SupportsIntersect));
    }
}
