use num_bigint::BigInt;

use super::element::{ppow, Padic};
use crate::error::{Error, Result};

/// The root of unity `w` with `w^(p-1) = 1` and `w = x mod p`.
pub fn teichmuller(x: &Padic) -> Result<Padic> {
    if x.is_zero() || x.valuation() != 0 {
        return Err(Error::NotAUnit);
    }
    let p = x.p();
    let r = x.rel_prec();
    let m = ppow(p, r);
    let w = x.unit().modpow(&ppow(p, r - 1), &m);
    Ok(Padic::from_parts(p, 0, &BigInt::from(w), r))
}

/// Splits `x = p^v * w * u` with `w` a root of unity and `u = 1 mod p`.
pub fn decompose(x: &Padic) -> Result<(i64, Padic, Padic)> {
    if x.is_zero() {
        return Err(Error::DivisionByIndistinguishableZero);
    }
    let v = x.valuation();
    let unit = Padic::from_parts(x.p(), 0, &BigInt::from(x.unit().clone()), x.rel_prec());
    let w = teichmuller(&unit)?;
    let u = unit.div(&w)?;
    Ok((v, w, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        let one = Padic::one(5, 10);
        assert_eq!(teichmuller(&one).unwrap(), one);
        let m1 = Padic::from_int(5, -1, 10);
        assert_eq!(teichmuller(&m1).unwrap(), m1);
    }

    #[test]
    fn two_in_q5() {
        let w = teichmuller(&Padic::from_int(5, 2, 12)).unwrap();
        assert!(w.agrees_mod(&Padic::from_int(5, 7, 12), 2));
        // oracle: x^4 = 1, x = 2 mod 5 by brute force mod 25
        let r = (0..25u64).find(|x| x % 5 == 2 && x.pow(4) % 25 == 1).unwrap();
        assert_eq!(r, 7);
        assert!(w.pow(4).unwrap().agrees_mod(&Padic::one(5, 12), 12));
    }

    #[test]
    fn decomposition_reassembles() {
        let x = Padic::from_i64_ratio(7, 3 * 49, 10, 20).unwrap();
        let (v, w, u) = decompose(&x).unwrap();
        assert_eq!(v, 2);
        assert_eq!(u.residue(), 1);
        let back = Padic::from_int(7, 49, 40).mul(&w).mul(&u);
        assert!(back.agrees_mod(&x, x.prec()));
    }

    #[test]
    fn non_unit_rejected() {
        assert_eq!(teichmuller(&Padic::from_int(5, 10, 10)), Err(Error::NotAUnit));
    }
}
