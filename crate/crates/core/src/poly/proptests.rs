use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

const VARS: [&str; 4] = ["a", "b", "c", "d"];

fn ring(nvars: usize) -> Ring {
    Ring::laurent(&VARS[..nvars])
}

fn coeff() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly_in(r: Ring) -> impl Strategy<Value = Poly> {
    let n = r.nvars();
    prop::collection::vec((prop::collection::vec(-5i64..=5, n), coeff()), 0..6).prop_map(move |ts| {
        Poly::from_terms(r.clone(), ts.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap()
    })
}

fn three_polys() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (1usize..=4).prop_flat_map(|n| {
        let r = ring(n);
        (poly_in(r.clone()), poly_in(r.clone()), poly_in(r))
    })
}

fn unit_in(r: Ring) -> impl Strategy<Value = Poly> {
    let n = r.nvars();
    (prop::collection::vec(-5i64..=5, n), coeff().prop_filter("nonzero", |c| *c != BigRational::from_integer(0.into())))
        .prop_map(move |(e, c)| r.monomial(&e, c).unwrap())
}

fn point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(
        (prop_oneof![-7i64..=-1, 1i64..=7], 1i64..=5).prop_map(|(a, b)| BigRational::new(a.into(), b.into())),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws((p, q, r) in three_polys()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn parse_inverts_format((p, _, _) in three_polys()) {
        let text = p.to_string();
        prop_assert_eq!(p.ring().parse(&text).unwrap(), p);
    }

    #[test]
    fn normalization_is_idempotent_and_unit_invariant(
        (p, u) in (1usize..=4).prop_flat_map(|n| (poly_in(ring(n)), unit_in(ring(n))))
    ) {
        let np = p.normalize_up_to_unit();
        prop_assert_eq!(np.normalize_up_to_unit(), np.clone());
        prop_assert_eq!((&u * &p).normalize_up_to_unit(), np);
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (p, q, pt) in (1usize..=4).prop_flat_map(|n| (poly_in(ring(n)), poly_in(ring(n)), point(n)))
    ) {
        let exact: Vec<Scalar> = pt.iter().cloned().map(Scalar::Exact).collect();
        let ev = |x: &Poly| x.eval_slice(&exact).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), &ev(&p) * &ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), &ev(&p) + &ev(&q));

        let float: Vec<Scalar> = exact.iter().map(|s| Scalar::Complex(s.to_complex())).collect();
        let fv = |x: &Poly| x.eval_slice(&float).unwrap().to_complex();
        let lhs = fv(&(&p * &q));
        let rhs = fv(&p) * fv(&q);
        let scale = (p.eval_magnitude(&float).unwrap() * q.eval_magnitude(&float).unwrap()).max(1e-300);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale.max(lhs.norm()));
        let lhs = fv(&(&p + &q));
        let rhs = fv(&p) + fv(&q);
        let scale = p.eval_magnitude(&float).unwrap() + q.eval_magnitude(&float).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn exact_division_recovers_factor((p, q, _) in three_polys()) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.div_exact(&q).unwrap(), p);
    }
}
