use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::constructions::{diagonal, matrix_algebra, monogenic, pure_root, quaternion};
use crate::poly::{Ring, Scalar};
use crate::samples;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn sqrt_t() -> FiniteAlgebra {
    let r = Ring::polynomial(&["t"]);
    pure_root(&r, 2, &r.var("t").unwrap()).unwrap()
}

fn exact_at(alg: &FiniteAlgebra, chi: &Character) -> SpecializedAlgebra<BigRational> {
    specialize(alg, chi).unwrap()
}

#[test]
fn specialize_square_root_algebra() {
    let alg = sqrt_t();
    let at0 = exact_at(&alg, &Character::ints(&[("t", 0)]));
    // y * y = 0
    assert_eq!(at0.table()[1][1], vec![q(0), q(0)]);
    let at1 = exact_at(&alg, &Character::ints(&[("t", 1)]));
    assert_eq!(at1.table()[1][1], vec![q(1), q(0)]);
    assert_eq!(at1.unit(), &[q(1), q(0)]);
}

#[test]
fn specialize_rejects_zero_on_laurent_base() {
    let r = Ring::laurent(&["t"]);
    let alg = pure_root(&r, 2, &r.var("t").unwrap()).unwrap();
    let err = specialize::<BigRational>(&alg, &Character::ints(&[("t", 0)])).unwrap_err();
    assert!(matches!(err, FiberError::Poly(PolyError::ZeroLaurentValue(_))), "{err}");
}

#[test]
fn specialize_rejects_missing_and_foreign_values() {
    let alg = sqrt_t();
    let missing = Character::ints(&[]);
    assert!(specialize::<BigRational>(&alg, &missing).is_err());
    let extra = Character::ints(&[("t", 1), ("u", 2)]);
    assert!(matches!(specialize::<BigRational>(&alg, &extra), Err(FiberError::InvalidCharacter(_))));
    let complex = Character::exact([("t", Scalar::complex(1.0, 1.0))]);
    assert!(matches!(specialize::<BigRational>(&alg, &complex), Err(FiberError::ModeMismatch)));
}

#[test]
fn radical_examples() {
    let alg = sqrt_t();
    let nil = exact_at(&alg, &Character::ints(&[("t", 0)]));
    let rad = radical(&nil);
    assert_eq!(rad.basis, vec![vec![q(0), q(1)]]);
    assert_eq!(radical(&exact_at(&alg, &Character::ints(&[("t", 1)]))).dim(), 0);
    let r = Ring::polynomial(&["t"]);
    let m2 = matrix_algebra(&r, 2).unwrap();
    assert_eq!(radical(&exact_at(&m2, &Character::ints(&[("t", 5)]))).dim(), 0);
}

#[test]
fn semisimple_quotient_examples() {
    let alg = sqrt_t();
    let nil = exact_at(&alg, &Character::ints(&[("t", 0)]));
    let quo = semisimple_quotient(&nil, &radical(&nil));
    assert_eq!(quo.algebra.rank(), 1);
    assert_eq!(quo.algebra.unit(), &[q(1)]);
    assert_eq!(quo.algebra.table(), vec![vec![vec![q(1)]]]);

    let split = exact_at(&alg, &Character::ints(&[("t", 1)]));
    let quo = semisimple_quotient(&split, &radical(&split));
    assert_eq!(quo.algebra.rank(), 2);
    assert_eq!(radical(&quo.algebra).dim(), 0);
    assert_eq!(quo.algebra.gram(), split.gram());
}

#[test]
fn wedderburn_examples() {
    let r = Ring::polynomial(&["t"]);
    let one = Character::ints(&[("t", 1)]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m2 = exact_at(&matrix_algebra(&r, 2).unwrap(), &one);
    assert_eq!(wedderburn_blocks(&m2, &mut rng).unwrap().sorted_sizes(), vec![2]);
    let kk = exact_at(&diagonal(&r, 2).unwrap(), &one);
    assert_eq!(wedderburn_blocks(&kk, &mut rng).unwrap().sorted_sizes(), vec![1, 1]);
    // Hamilton quaternions stay one block after complexification.
    let h = quaternion(&r, &r.int(-1), &r.int(-1)).unwrap();
    assert_eq!(wedderburn_blocks(&exact_at(&h, &one), &mut rng).unwrap().sorted_sizes(), vec![2]);
    // Q(sqrt 2) is a field over Q but splits over C.
    let field = exact_at(&pure_root(&r, 2, &r.int(2)).unwrap(), &one);
    assert_eq!(wedderburn_blocks(&field, &mut rng).unwrap().sorted_sizes(), vec![1, 1]);
}

#[test]
fn trace_vector_examples() {
    let r = Ring::polynomial(&["t"]);
    let one = Character::ints(&[("t", 1)]);
    let report = fiber(&diagonal(&r, 2).unwrap(), &one, 3).unwrap();
    let expect = |v: &[f64]| v.iter().map(|&x| Scalar::complex(x, 0.0)).collect::<Vec<_>>();
    assert_eq!(report.trace_vectors, vec![expect(&[0.0, 1.0]), expect(&[1.0, 0.0])]);

    let report = fiber(&matrix_algebra(&r, 2).unwrap(), &one, 3).unwrap();
    assert_eq!(report.trace_vectors.len(), 1);
    // Basis order e11, e12, e21, e22.
    assert_eq!(report.trace_vectors[0], expect(&[1.0, 0.0, 0.0, 1.0]));
}

#[test]
fn fiber_of_split_square_root() {
    let report = fiber(&sqrt_t(), &Character::ints(&[("t", 1)]), 0).unwrap();
    assert_eq!(report.blocks, vec![1, 1]);
    assert_eq!(report.num_simples, 2);
    assert!(report.in_x0 && report.consistent);
    assert_eq!(report.radical_dim, 0);

    let report = fiber(&sqrt_t(), &Character::ints(&[("t", 0)]), 0).unwrap();
    assert_eq!((report.radical_dim, report.blocks.clone(), report.in_x0), (1, vec![1], false));
}

#[test]
fn stratum_scan_square_root() {
    let chars: Vec<Character> = (0..3).map(|t| Character::ints(&[("t", t)])).collect();
    let scan = stratum_scan(&sqrt_t(), &chars);
    let got: Vec<(String, Option<usize>)> = scan.iter().map(|e| (e.character.to_string(), e.stratum_index)).collect();
    assert_eq!(
        got,
        vec![("t=1".to_string(), Some(0)), ("t=2".to_string(), Some(0)), ("t=0".to_string(), Some(1))]
    );
}

#[test]
fn stratum_scan_keeps_failures() {
    let r = Ring::laurent(&["t"]);
    let alg = pure_root(&r, 2, &r.var("t").unwrap()).unwrap();
    let scan = stratum_scan(&alg, &[Character::ints(&[("t", 0)]), Character::ints(&[("t", 4)])]);
    assert_eq!(scan[0].stratum_index, Some(0));
    assert!(scan[1].error.as_deref().unwrap().contains("zero"));
}

#[test]
fn character_json_round_trip() {
    let spec: CharacterSpec =
        serde_json::from_str(r#"{"mode":"float","tolerance":1e-8,"values":{"x":"1.5-2i","q":"3"}}"#).unwrap();
    let chi = Character::from_spec(&spec).unwrap();
    assert_eq!(chi.values["x"], Scalar::complex(1.5, -2.0));
    assert_eq!(chi.tolerance, 1e-8);
    let back: Character = serde_json::from_str(&serde_json::to_string(&chi).unwrap()).unwrap();
    assert_eq!(back, chi);

    let exact: Character = serde_json::from_str(r#"{"mode":"exact","values":{"t":"-3/4"}}"#).unwrap();
    assert_eq!(exact.values["t"], Scalar::Exact(BigRational::new((-3).into(), 4.into())));
    assert_eq!(exact.tolerance, DEFAULT_TOLERANCE);
    assert!(serde_json::from_str::<Character>(r#"{"mode":"exact","values":{"t":"1.5i"}}"#).is_err());
    assert!(serde_json::from_str::<Character>(r#"{"mode":"float","tolerance":-1,"values":{}}"#).is_err());
}

fn random_character<R: Rng>(rng: &mut R, ring: &Ring, mode: Mode) -> Character {
    match mode {
        Mode::Exact => Character::exact(ring.vars.iter().map(|v| {
            let x = if ring.is_laurent() { rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 } } else { rng.gen_range(-2..=2) };
            (v.clone(), Scalar::int(x))
        })),
        Mode::Float => Character::float(
            ring.vars.iter().map(|v| (v.clone(), Scalar::complex(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0)))),
            1e-9,
        ),
    }
}

fn random_base<R: Rng>(rng: &mut R) -> Ring {
    if rng.gen_bool(0.5) {
        Ring::laurent(&["s", "t"])
    } else {
        Ring::polynomial(&["t"])
    }
}

#[test]
fn discriminant_nonvanishing_matches_zero_radical_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut degenerate = 0;
    for _ in 0..12 {
        let base = random_base(&mut rng);
        let alg = samples::random_algebra(&mut rng, &base);
        for _ in 0..100 {
            let chi = random_character(&mut rng, &base, Mode::Exact);
            let report = fiber(&alg, &chi, rng.gen()).unwrap();
            assert!(report.consistent);
            assert_eq!(report.in_x0, report.radical_dim == 0, "{chi}");
            degenerate += usize::from(!report.in_x0);
        }
    }
    assert!(degenerate > 0, "sample never met the discriminant locus");
}

#[test]
fn discriminant_nonvanishing_matches_zero_radical_float() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..8 {
        let base = random_base(&mut rng);
        let alg = samples::random_algebra(&mut rng, &base);
        let disc = alg.discriminant().unwrap();
        for _ in 0..100 {
            let chi = random_character(&mut rng, &base, Mode::Float);
            let values = chi.values_for(&base).unwrap();
            let v = disc.eval_slice(&values).unwrap().abs();
            if v <= 10.0 * chi.tolerance * disc.eval_magnitude(&values).unwrap() {
                continue;
            }
            let report = fiber(&alg, &chi, rng.gen()).unwrap();
            assert!(report.in_x0 && report.radical_dim == 0, "{chi}");
        }
    }
}

fn nilpotent_check<F: Field>(s: &SpecializedAlgebra<F>, threshold: f64) {
    for v in radical(s).basis {
        let p = s.pow(&v, s.rank());
        let size = p.iter().map(F::magnitude).fold(0.0, f64::max);
        assert!(size <= threshold, "radical vector not nilpotent: {size}");
    }
}

#[test]
fn radical_vectors_are_nilpotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let r = Ring::polynomial(&["t"]);
    let t = r.var("t").unwrap();
    let mut families = vec![
        monogenic(&r, &[r.zero(), t.clone(), r.zero()]).unwrap(),
        pure_root(&r, 4, &t).unwrap(),
        crate::algebra::constructions::upper_triangular(&r).unwrap(),
    ];
    for _ in 0..20 {
        families.push(samples::random_algebra(&mut rng, &r));
    }
    for alg in &families {
        for t in -2..=2 {
            let chi = Character::ints(&[("t", t)]);
            nilpotent_check(&exact_at(alg, &chi), 0.0);
            let chi = Character::float([("t", Scalar::int(t))], 1e-9);
            nilpotent_check(&specialize::<Complex64>(alg, &chi).unwrap(), 1e3 * 1e-9);
        }
    }
}

#[test]
fn blocks_do_not_depend_on_the_central_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut seen = 0;
    while seen < 50 {
        let base = random_base(&mut rng);
        let alg = samples::random_algebra(&mut rng, &base);
        let chi = random_character(&mut rng, &base, Mode::Exact);
        let a = fiber(&alg, &chi, rng.gen()).unwrap();
        let b = fiber(&alg, &chi, rng.gen()).unwrap();
        assert_eq!(a.blocks, b.blocks);
        for (u, v) in a.trace_vectors.iter().zip(&b.trace_vectors) {
            let u: Vec<Complex64> = u.iter().map(Scalar::to_complex).collect();
            let v: Vec<Complex64> = v.iter().map(Scalar::to_complex).collect();
            assert!(distance(&u, &v) < 1e-6);
        }
        seen += 1;
    }
}

#[test]
fn stratum_index_is_upper_semicontinuous() {
    // y^3 - t y has a double root at t = 0 only.
    let r = Ring::polynomial(&["t"]);
    let t = r.var("t").unwrap();
    let alg = monogenic(&r, &[r.zero(), -t, r.zero()]).unwrap();
    let at0 = stratum_index(&alg, &Character::ints(&[("t", 0)])).unwrap();
    assert_eq!(at0, 2);
    for k in 1..20 {
        let near = Character::exact([("t", Scalar::Exact(BigRational::new(1.into(), (k * k).into())))]);
        assert!(stratum_index(&alg, &near).unwrap() <= at0);
    }
}

#[test]
fn clustering_groups_within_radius() {
    let c = |x: f64| Complex64::new(x, 0.0);
    let groups = cluster(&[c(0.0), c(5.0), c(1e-7), c(5.0 + 2e-7), c(2e-7)], 1e-6);
    assert_eq!(groups, vec![vec![0, 2, 4], vec![1, 3]]);
}
