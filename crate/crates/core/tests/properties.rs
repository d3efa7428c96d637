use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_heights::curve::{rat, Curve, Point};
use padic_heights::derham::{reduce_form, LaurentForm, LaurentPoly};
use padic_heights::global::miller::{line_ratio, miller_eval};
use padic_heights::padic::{log_unit, LogBranch, Padic};
use padic_heights::splittings::LambdaSplitting;
use padic_heights::tate::{BiextPoint, TateCurve};

const PREC: i64 = 20;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn elt(p: u64, n: i64, shift: i64) -> Padic {
    let x = Padic::from_int(p, n, PREC + 10);
    if shift == 0 {
        x
    } else {
        x.mul(&Padic::from_int(p, p as i64, PREC + 10).pow(shift).unwrap())
    }
}

fn coprime(p: u64, n: i64) -> i64 {
    if n.rem_euclid(p as i64) == 0 {
        n + 1
    } else {
        n
    }
}

fn unit(p: u64, n: i64) -> Padic {
    Padic::from_int(p, coprime(p, n), PREC + 10)
}

fn agree(a: &Padic, b: &Padic, k: i64) -> bool {
    a.agrees_mod(b, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in prime(), a in -10_000i64..10_000, b in -10_000i64..10_000, c in 1i64..10_000, s in -3i64..4) {
        let (x, y, z) = (elt(p, a, s), elt(p, b, 0), unit(p, c));
        prop_assert!(agree(&x.add(&y).add(&z), &x.add(&y.add(&z)), PREC));
        prop_assert!(agree(&x.mul(&y.add(&z)), &x.mul(&y).add(&x.mul(&z)), PREC));
        prop_assert!(agree(&z.mul(&z.inv().unwrap()), &Padic::one(p, PREC), PREC));
        prop_assert!(agree(&x.sub(&x), &Padic::zero(p, PREC), PREC));
    }

    #[test]
    fn token_roundtrip(p in prime(), a in -100_000i64..100_000, s in -4i64..4) {
        let x = elt(p, a, s);
        prop_assert_eq!(Padic::parse_token(&x.to_token()).unwrap(), x);
    }

    #[test]
    fn log_is_a_homomorphism(p in prime(), a in 1i64..100_000, b in 1i64..100_000, k in -3i64..4, value in -5i64..5) {
        let (u, v) = (unit(p, a), unit(p, b));
        prop_assert!(agree(&log_unit(&u.mul(&v)).unwrap(), &log_unit(&u).unwrap().add(&log_unit(&v).unwrap()), PREC));
        let br = LogBranch::with_int(p, value, PREC + 10);
        let x = elt(p, 1, k).mul(&u);
        prop_assert!(agree(&br.log(&x).unwrap(), &br.log(&elt(p, 1, k)).unwrap().add(&log_unit(&u).unwrap()), PREC));
    }

    #[test]
    fn theta_functional_equation(p in prime(), ord_q in 1i64..3, a in 2i64..10_000, qu in 1i64..50) {
        let q = elt(p, coprime(p, qu), ord_q);
        let curve = TateCurve::new(q.clone(), PREC).unwrap();
        let u = unit(p, a);
        if curve.is_identity(&u).unwrap() {
            return Ok(());
        }
        let th = curve.theta(&u).unwrap();
        // Θ(qu) = Θ(1/u) = -Θ(u)/u
        let expected = th.div(&u).unwrap().neg();
        prop_assert!(agree(&curve.theta(&q.mul(&u)).unwrap(), &expected, PREC - 5));
        prop_assert!(agree(&curve.theta(&u.inv().unwrap()).unwrap(), &expected, PREC - 5));
    }

    #[test]
    fn mazur_tate_respects_descent(p in prime(), a in 1i64..10_000, b in 1i64..10_000, c in 1i64..10_000, k in -2i64..3, l in -2i64..3) {
        let curve = TateCurve::new(elt(p, 3, 2), PREC).unwrap();
        let br = LogBranch::with_int(p, 1, PREC + 10);
        let s = LambdaSplitting::mazur_tate(curve.clone(), br.clone());
        let x = BiextPoint::new(unit(p, c), unit(p, a).mul(&elt(p, 1, 1)), unit(p, b));
        let base = s.eval(&x).unwrap();
        let moved = curve.gamma_prime(&curve.gamma(&x, k).unwrap(), l).unwrap();
        prop_assert!(agree(&s.eval(&moved).unwrap(), &base, PREC - 5));
        let t = elt(p, 2, 1);
        prop_assert!(agree(&s.eval(&x.scalar(&t)).unwrap(), &base.add(&br.log(&t).unwrap()), PREC - 5));
    }

    #[test]
    fn reduction_is_linear_and_kills_exact_forms(
        e1 in prop::collection::vec(0i64..4, 2),
        e2 in prop::collection::vec(0i64..4, 2),
        c1 in -20i64..20,
        c2 in 1i64..20,
        l0 in -5i64..5,
        l1 in -5i64..5,
    ) {
        let mut f = LaurentPoly::zero(2);
        f.add_monomial(e1, rat(c1));
        f.add_monomial(e2, rat(c2));
        let exact = f.differential();
        let log_part = LaurentForm::log_basis(2, 0).scale(&rat(l0)).add(&LaurentForm::log_basis(2, 1).scale(&rat(l1)));
        let r = reduce_form(&exact.add(&log_part)).unwrap();
        prop_assert_eq!(r.coeffs, vec![rat(l0), rat(l1)]);
        let r_exact = reduce_form(&exact).unwrap();
        prop_assert!(r_exact.coeffs.iter().all(|c| *c == rat(0)));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let scaled = reduce_form(&log_part.scale(&half)).unwrap();
        prop_assert_eq!(scaled.coeffs, vec![rat(l0) * &half, rat(l1) * &half]);
    }

    #[test]
    fn miller_functions_compose(m in 1i64..6, n in 1i64..6, zx in 3i64..40) {
        // 37a1, generated by (0, 0); probe points are multiples of it
        let e = Curve::new([rat(0), rat(0), rat(1), rat(-1), rat(0)]);
        let base = Point::Affine(rat(0), rat(0));
        let z = e.mul(zx, &base).unwrap();
        let lhs = miller_eval(&e, m + n, &base, &z);
        let rhs = (|| {
            let fm = miller_eval(&e, m, &base, &z)?;
            let fn_ = miller_eval(&e, n, &base, &z)?;
            let l = line_ratio(&e, &e.mul(m, &base)?, &e.mul(n, &base)?, &z)?;
            Ok::<_, padic_heights::Error>(fm * fn_ * l)
        })();
        if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
            prop_assert_eq!(lhs, rhs);
        }
    }
}
