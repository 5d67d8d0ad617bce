use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::constructions::{diagonal, matrix_algebra, monogenic, pure_root};
use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::poly::{Poly, Ring};
use crate::samples;

fn elem(r: &Ring, coords: &[&str]) -> AlgebraElement {
    AlgebraElement { coords: coords.iter().map(|s| r.parse(s).unwrap()).collect() }
}

/// `Q[t] -> x^2 = t -> y^2 = x`.
fn worked_tower() -> (Ring, Tower) {
    let a = Ring::polynomial(&["t"]);
    let b = pure_root(&a, 2, &a.var("t").unwrap()).unwrap();
    let tower = Tower::monogenic(b, &[elem(&a, &["0", "-1"]), elem(&a, &["0", "0"])]).unwrap();
    (a, tower)
}

#[test]
fn worked_tower_discriminants() {
    let (a, t) = worked_tower();
    assert_eq!(t.c_over_a().rank(), 4);
    let (direct, composed) = discriminant_sides(&t).unwrap();
    let expected = a.parse("-256*t^3").unwrap();
    assert_eq!(direct, expected);
    assert_eq!(composed, expected);
    // The same algebra presented as Q[t][y]/(y^4 - t).
    let quartic = pure_root(&a, 4, &a.var("t").unwrap()).unwrap();
    assert_eq!(quartic.raw_discriminant().unwrap(), &expected);
    assert!(check_discriminant_tower(&t).unwrap());
    assert_eq!(t.discriminant_c_over_b(), elem(&a, &["0", "4"]));
}

#[test]
fn worked_tower_norms() {
    let (a, t) = worked_tower();
    let c = t.c_over_a();
    // Basis order b_i c_j at index j * 2 + i: 1, x, y, xy.
    let y = c.basis_element(2);
    assert_eq!(c.norm(&y).unwrap(), a.parse("-t").unwrap());
    assert_eq!(t.norm_c_over_b(&y), elem(&a, &["0", "-1"]));
    assert!(check_norm_transitivity(&t, &y).unwrap());
    assert!(c.norm(&c.unit()).unwrap().is_one());
    assert!(check_norm_transitivity(&t, &c.unit()).unwrap());
    // b in B embedded in C has norm N_{B/A}(b)^2.
    let b = elem(&a, &["t", "1"]);
    let nb = t.b().norm(&b).unwrap();
    assert_eq!(c.norm(&t.embed_b(&b)).unwrap(), nb.pow(2).unwrap());
}

#[test]
fn trivial_levels() {
    let a = Ring::polynomial(&["t"]);
    let t_poly = a.var("t").unwrap();
    // B = A.
    let b = diagonal(&a, 1).unwrap();
    let trivial_mid = Tower::monogenic(b, &[AlgebraElement { coords: vec![-t_poly.clone()] }, elem(&a, &["0"])]).unwrap();
    let (direct, composed) = discriminant_sides(&trivial_mid).unwrap();
    assert_eq!(direct, composed);
    assert!(direct.equal_up_to_unit(&t_poly).unwrap());
    // C = B.
    let b = pure_root(&a, 2, &t_poly).unwrap();
    let trivial_top = Tower::monogenic(b.clone(), &[elem(&a, &["0", "0"])]).unwrap();
    let (direct, composed) = discriminant_sides(&trivial_top).unwrap();
    assert_eq!(direct, *b.raw_discriminant().unwrap());
    assert!(direct.equal_up_to_unit(&composed).unwrap());
}

#[test]
fn tower_identity_on_random_towers() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let t = random_quadratic_tower(&mut rng);
        assert!(check_discriminant_tower(&t).unwrap(), "{:?}", t.to_spec());
        for _ in 0..10 {
            let u = samples::random_element(&mut rng, t.c_over_a());
            assert!(check_norm_transitivity(&t, &u).unwrap());
        }
    }
}

#[test]
fn tower_spec_round_trip() {
    let (_, t) = worked_tower();
    let json = serde_json::to_string(&t.to_spec()).unwrap();
    let back: TowerSpec = serde_json::from_str(&json).unwrap();
    let rebuilt = back.build().unwrap();
    assert_eq!(rebuilt.c_over_a().table(), t.c_over_a().table());
}

#[test]
fn tower_spec_errors_name_the_field() {
    let (_, t) = worked_tower();
    let mut spec = t.to_spec();
    spec.c_over_b.mul[1][1][0] = vec!["0".into(), "x +".into()];
    let err = spec.build().unwrap_err().to_string();
    assert!(err.contains("C_over_B.mul[1][1][0][1]"), "{err}");
    let mut spec = t.to_spec();
    spec.b.base = Some(Ring::laurent(&["t"]).descriptor().clone());
    assert!(spec.build().unwrap_err().to_string().contains("B.base"));
}

#[test]
fn tower_rejects_noncommutative_b() {
    let a = Ring::polynomial(&["t"]);
    let m2 = matrix_algebra(&a, 2).unwrap();
    let unit = vec![m2.unit()];
    let table = vec![vec![vec![m2.unit()]]];
    assert!(matches!(Tower::new(m2, vec!["1".into()], unit, table), Err(TowerError::NotCommutative(_))));
}

fn nctrans_instances(seed: u64, count: usize) -> Vec<(FiniteAlgebra, AlgebraElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = if rand::Rng::gen_bool(&mut rng, 0.5) { Ring::laurent(&["t"]) } else { Ring::polynomial(&["s", "t"]) };
            let alg = samples::random_commutative_algebra(&mut rng, &base, 4);
            let p = samples::random_element(&mut rng, &alg);
            (alg, p)
        })
        .collect()
}

#[test]
fn nctrans_identity() {
    for (alg, p) in nctrans_instances(32, 100) {
        assert!(check_nctrans(&alg, &p).unwrap());
    }
    let a = Ring::polynomial(&["t"]);
    let alg = monogenic(&a, &[a.parse("t").unwrap(), a.parse("1 - t").unwrap(), a.zero()]).unwrap();
    assert!(check_nctrans(&alg, &alg.unit()).unwrap());
    assert!(check_nctrans(&alg, &alg.scalar(&a.parse("t + 2").unwrap())).unwrap());
    let m2 = matrix_algebra(&a, 2).unwrap();
    assert!(matches!(check_nctrans(&m2, &m2.unit()), Err(TowerError::NotCommutative(_))));
}

fn laurent_x() -> Ring {
    Rank1RootDatum::pgl2().ring().clone()
}

#[test]
fn e_and_d_factors() {
    let rd = Rank1RootDatum::pgl2();
    let r = laurent_x();
    assert_eq!(rd.e_factor(1).unwrap(), r.parse("1 - q^-1*x^2").unwrap());
    assert_eq!(rd.e_factor(-1).unwrap(), r.parse("1 - q^-1*x^-2").unwrap());
    assert_eq!(rd.d_factor(1).unwrap(), r.parse("1 - x^2").unwrap());
    for rd in [Rank1RootDatum::gl2(), Rank1RootDatum::pgl2(), Rank1RootDatum::sl2()] {
        assert!(rd.d_factor(1).unwrap().equal_up_to_unit(&rd.d_factor(-1).unwrap()).unwrap());
    }
}

#[test]
fn gindikin_karpelevich_products() {
    let rd = Rank1RootDatum::pgl2();
    let (num, den) = rd.gk_product(true).unwrap();
    assert_eq!(num, rd.e_factor(1).unwrap() * rd.e_factor(-1).unwrap());
    assert_eq!(den, rd.d_factor(1).unwrap() * rd.d_factor(-1).unwrap());
    let (num, den) = rd.gk_product(false).unwrap();
    assert!(num.is_one() && den.is_one());
}

/// `R = Q[theta^{+-1}]` over `R^W` on `{1, theta}`: `theta^2 = (theta + theta^-1) theta - 1`.
fn r_over_rw(r: &Ring, theta: &str, inverse: &str) -> FiniteAlgebra {
    let sum = r.parse(&format!("{theta} + {inverse}")).unwrap();
    monogenic(r, &[r.one(), -sum]).unwrap()
}

#[test]
fn steinberg_matches_gram_route() {
    let r = laurent_x();
    let pgl2 = Rank1RootDatum::pgl2();
    let steinberg = pgl2.steinberg_discriminant().unwrap();
    assert_eq!(steinberg, r.parse("1 - 2*x^2 + x^4").unwrap().normalize_up_to_unit());
    assert!(r_over_rw(&r, "x", "x^-1").discriminant().unwrap().equal_up_to_unit(&steinberg).unwrap());

    let sl2 = Rank1RootDatum::sl2().steinberg_discriminant().unwrap();
    let target = r.parse("1 - 2*x^-4 + x^-8").unwrap();
    assert!(sl2.equal_up_to_unit(&target).unwrap());
    assert!(r_over_rw(&r, "x^2", "x^-2").discriminant().unwrap().equal_up_to_unit(&target).unwrap());
}

#[test]
fn adjoint_and_gendisc_formulas() {
    let r = laurent_x();
    let p = |s: &str| r.parse(s).unwrap();
    let ee = (p("1 - q^-1*x^2") * p("1 - q^-1*x^-2")).pow(2).unwrap();
    let pgl2 = Rank1RootDatum::pgl2();
    let adjoint = pgl2.adjoint_discriminant_formula().unwrap();
    assert!(adjoint.equal_up_to_unit(&ee).unwrap());
    // d_i = 1 kills the weight factor.
    assert_eq!(pgl2.gendisc_formula(1, 1).unwrap(), adjoint);

    let sl2 = Rank1RootDatum::sl2();
    let g = sl2.gendisc_formula(1, 2).unwrap();
    let expected = ee.clone() * p("x + x^-1").pow(2).unwrap();
    assert!(g.equal_up_to_unit(&expected).unwrap());
    assert!(matches!(sl2.gendisc_formula(1, 3), Err(TowerError::NonIntegralExponent { n: 2, r: 3 })));

    let bare = Rank1RootDatum::new("bare", &["x"], vec![2], 1, WeylAction::Invert, None).unwrap();
    assert!(matches!(bare.gendisc_formula(1, 1), Err(TowerError::MissingWeights)));
}

#[test]
fn root_datum_validation() {
    assert!(Rank1RootDatum::new("z", &["x"], vec![0], 1, WeylAction::Invert, None).is_err());
    assert!(Rank1RootDatum::new("s", &["x1", "x2"], vec![1, 1], 1, WeylAction::Swap, None).is_err());
    let not_invariant = Rank1RootDatum::new("w", &["x"], vec![2], 1, WeylAction::Invert, Some(vec![("x", 1)]));
    assert!(matches!(not_invariant, Err(TowerError::Invalid(_))));
    let r = Rank1RootDatum::gl2();
    let p: Poly = r.ring().parse("x1^2*x2^-1*q").unwrap();
    assert_eq!(r.weyl(&p).unwrap(), r.ring().parse("x2^2*x1^-1*q").unwrap());
}
