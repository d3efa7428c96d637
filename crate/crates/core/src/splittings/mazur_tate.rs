use num_integer::Integer;

use crate::error::{Error, Result};
use crate::padic::{LogBranch, Padic};
use crate::tate::{BiextPoint, Membership, TateCurve};

/// How many extra factors of `p` the multiplier search may try.
pub const SEARCH_CAP: u32 = 8;

/// Reads off the formal trivialization: the `c` coordinate of the normalized
/// representative, provided both projections are formal.
pub fn sigma_tilde(curve: &TateCurve, x: &BiextPoint) -> Result<Padic> {
    let y = curve.gamma_normalize(x)?;
    if curve.membership(&y.u)? != Membership::Formal || curve.membership(&y.v)? != Membership::Formal {
        return Err(Error::NotInFormalPart);
    }
    Ok(y.c)
}

fn residue_order(p: u64, r: u64) -> u64 {
    let mut k = 1;
    let mut acc = r % p;
    while acc != 1 {
        acc = acc * r % p;
        k += 1;
    }
    k
}

/// Smallest `m` of the form `component order * (order of the residue) * p^k`
/// with `u^m` formal.
pub fn formal_multiplier(curve: &TateCurve, u: &Padic) -> Result<i64> {
    if u.is_zero() {
        return Err(Error::DivisionByIndistinguishableZero);
    }
    let q = curve.ord_q();
    let o = u.valuation().rem_euclid(q);
    let m0 = q / o.gcd(&q);
    let (_, w) = curve.normalize(&u.pow(m0)?)?;
    let mut m = m0 * residue_order(curve.p(), w.residue()) as i64;
    for _ in 0..=SEARCH_CAP {
        if curve.membership(&u.pow(m)?)? == Membership::Formal {
            return Ok(m);
        }
        m *= curve.p() as i64;
    }
    Err(Error::SearchBoundExceeded(format!("no formal multiple of {u} up to {m}")))
}

/// Mazur-Tate splitting by reduction to the formal part.
pub fn mt_splitting(curve: &TateCurve, x: &BiextPoint, branch: &LogBranch) -> Result<Padic> {
    let m = formal_multiplier(curve, &x.u)?;
    let n = formal_multiplier(curve, &x.v)?;
    let y = curve.gamma_normalize(&curve.int_mul(x, m, n)?)?;
    let c = sigma_tilde(curve, &y)?;
    branch.log(&c)?.div_int(m * n)
}

/// `λ(c) + (ord u λ(v) + ord v λ(u)) / ord q - ord u ord v λ(q) / ord q^2`.
pub fn closed_form_oracle(curve: &TateCurve, x: &BiextPoint, branch: &LogBranch) -> Result<Padic> {
    let q = curve.ord_q();
    let (ou, ov) = (x.u.valuation(), x.v.valuation());
    let cross = branch.log(&x.v)?.mul_int(ou).add(&branch.log(&x.u)?.mul_int(ov));
    let corr = branch.log(curve.q())?.mul_int(ou * ov).div_int(q * q)?;
    Ok(branch.log(&x.c)?.add(&cross.div_int(q)?).sub(&corr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, n: i64, d: i64) -> Padic {
        Padic::from_i64_ratio(p, n, d, 30).unwrap()
    }

    fn tate125() -> TateCurve {
        TateCurve::new(Padic::from_int(5, 125, 40), 30).unwrap()
    }

    #[test]
    fn formal_input_reads_off_log() {
        let t = tate125();
        let br = LogBranch::with_int(5, 1, 30);
        let x = BiextPoint::new(r(5, 7, 1), r(5, 6, 1), r(5, 11, 1));
        assert_eq!(sigma_tilde(&t, &x).unwrap(), x.c);
        let tau = mt_splitting(&t, &x, &br).unwrap();
        assert!(tau.agrees_mod(&br.log(&x.c).unwrap(), 25));
    }

    #[test]
    fn sigma_tilde_rejects_nonformal() {
        let t = tate125();
        let x = BiextPoint::new(r(5, 1, 1), r(5, 2, 1), r(5, 11, 1));
        assert_eq!(sigma_tilde(&t, &x), Err(Error::NotInFormalPart));
    }

    #[test]
    fn worked_example_one_third() {
        let t = tate125();
        let x = BiextPoint::new(r(5, 1, 1), r(5, 5, 1), r(5, 5, 1));
        let br = LogBranch::with_int(5, 1, 30);
        let third = r(5, 1, 3);
        assert!(mt_splitting(&t, &x, &br).unwrap().agrees_mod(&third, 25));
        assert!(closed_form_oracle(&t, &x, &br).unwrap().agrees_mod(&third, 25));
        let iw = LogBranch::iwasawa(5);
        assert!(mt_splitting(&t, &x, &iw).unwrap().valuation() >= 25);
    }

    #[test]
    fn multiplier_divisible_by_p() {
        let t = TateCurve::new(Padic::from_int(3, 27 * 2, 40), 30).unwrap();
        assert_eq!(formal_multiplier(&t, &r(3, 3, 1)).unwrap(), 6);
        assert_eq!(formal_multiplier(&t, &r(3, 6, 1)).unwrap(), 3);
        assert_eq!(formal_multiplier(&t, &r(3, 4, 1)).unwrap(), 1);
    }

    #[test]
    fn closed_form_is_descent_invariant() {
        let t = TateCurve::new(Padic::from_int(7, 49 * 3, 40), 30).unwrap();
        let br = LogBranch::with_int(7, 2, 30);
        let x = BiextPoint::new(r(7, 3, 1), r(7, 14, 1), r(7, 5, 49));
        let base = closed_form_oracle(&t, &x, &br).unwrap();
        let g = closed_form_oracle(&t, &t.gamma(&x, 1).unwrap(), &br).unwrap();
        let gp = closed_form_oracle(&t, &t.gamma_prime(&x, -2).unwrap(), &br).unwrap();
        assert!(g.agrees_mod(&base, 25));
        assert!(gp.agrees_mod(&base, 25));
    }
}
