use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fiber::Character;
use crate::poly::{Poly, Scalar};
use crate::towers::WeylAction;

fn gl2() -> Rank1Datum {
    Rank1Datum::new(Preset::Gl2)
}

fn qpoly(rd: &Rank1Datum, s: &str) -> Poly {
    rd.q_ring().parse(s).unwrap()
}

fn mono(rd: &Rank1Datum, lambda: &[i64], w: bool, c: &str) -> HeckeElement {
    HeckeElement::monomial(rd, lambda.to_vec(), w, qpoly(rd, c)).unwrap()
}

fn mul(rd: &Rank1Datum, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    hecke_mul(rd, a, b).unwrap()
}

#[test]
fn quadratic_relation() {
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let t = HeckeElement::t(&rd);
        let zero = vec![0; rd.torus_rank()];
        let expected = mono(&rd, &zero, true, "q - 1").add(&mono(&rd, &zero, false, "q"));
        assert_eq!(mul(&rd, &t, &t), expected);
    }
}

#[test]
fn bernstein_relation_examples() {
    let rd = gl2();
    let t = HeckeElement::t(&rd);
    // s(1,1) = (1,1): no correction.
    let th = HeckeElement::theta(&rd, &[1, 1]);
    assert_eq!(mul(&rd, &t, &th), mono(&rd, &[1, 1], true, "1"));
    let th = HeckeElement::theta(&rd, &[1, 0]);
    let expected = mono(&rd, &[0, 1], true, "1").add(&mono(&rd, &[1, 0], false, "q - 1"));
    assert_eq!(mul(&rd, &t, &th), expected);
}

#[test]
fn geometric_sum_times_denominator() {
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let t = HeckeElement::t(&rd);
        let step = rd.lattice_step;
        let lambdas: Vec<Vec<i64>> = match rd.torus_rank() {
            1 => (-4..=4).map(|e| vec![e * step]).collect(),
            _ => (-2..=2).flat_map(|a| (-2..=2).map(move |b| vec![a, b])).collect(),
        };
        for lambda in lambdas {
            let product = mul(&rd, &t, &HeckeElement::theta(&rd, &lambda));
            let correction = product.component(&rd, false).unwrap();
            let r = rd.ring();
            let neg_coroot: Vec<i64> = rd.root.coroot.iter().map(|c| -c).collect();
            let lhs = correction * (r.one() - rd.theta(&neg_coroot));
            let rhs = (r.parse("q").unwrap() - r.one()) * (rd.theta(&lambda) - rd.theta(&rd.reflect(&lambda)));
            assert_eq!(lhs, rhs, "{preset} {lambda:?}");
        }
    }
}

fn random_monomial<R: Rng>(rng: &mut R, rd: &Rank1Datum) -> HeckeElement {
    let lambda: Vec<i64> = (0..rd.torus_rank()).map(|_| rng.gen_range(-3..=3) * rd.lattice_step).collect();
    let lambda = if rd.lattice_step > 1 {
        lambda.iter().map(|e| e.clamp(&-4, &4) / 2 * 2).collect()
    } else {
        lambda
    };
    let c = ["1", "q", "q^-1", "2*q - 1", "-3"][rng.gen_range(0..5)];
    mono(rd, &lambda, rng.gen_bool(0.5), c)
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        for _ in 0..500 {
            let (a, b, c) = (random_monomial(&mut rng, &rd), random_monomial(&mut rng, &rd), random_monomial(&mut rng, &rd));
            let left = mul(&rd, &mul(&rd, &a, &b), &c);
            let right = mul(&rd, &a, &mul(&rd, &b, &c));
            assert_eq!(left, right, "{preset}: ({a})({b})({c})");
        }
    }
}

#[test]
fn symmetric_functions_are_central() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let t = HeckeElement::t(&rd);
        for _ in 0..30 {
            let mu: Vec<i64> = (0..rd.torus_rank()).map(|_| rng.gen_range(-3..=3) * rd.lattice_step).collect();
            let smu = rd.reflect(&mu);
            let sum = HeckeElement::theta(&rd, &mu).add(&HeckeElement::theta(&rd, &smu));
            let prod = mul(&rd, &HeckeElement::theta(&rd, &mu), &HeckeElement::theta(&rd, &smu));
            for z in [sum, prod] {
                assert!(mul(&rd, &z, &t).sub(&mul(&rd, &t, &z)).is_zero());
            }
        }
    }
}

#[test]
fn lattice_is_enforced() {
    let rd = Rank1Datum::new(Preset::Sl2);
    assert!(matches!(
        HeckeElement::monomial(&rd, vec![1], false, rd.q_ring().one()),
        Err(HeckeError::Lattice { .. })
    ));
    assert!("gl3".parse::<Preset>().is_err());
}

#[test]
fn reduction_examples() {
    let rd = gl2();
    let r = rd.ring();
    let p = |s: &str| r.parse(s).unwrap();
    assert_eq!(reduce_to_center(&rd, &p("x2")).unwrap(), vec![p("x1 + x2"), p("-1")]);
    assert_eq!(reduce_to_center(&rd, &p("x1^2")).unwrap(), vec![p("-x1*x2"), p("x1 + x2")]);
    let inv = p("x1*x2 + q*x1^-1*x2^-1 + 3");
    assert_eq!(reduce_to_center(&rd, &inv).unwrap(), vec![inv.clone(), r.zero()]);
}

#[test]
fn left_multiplication_examples() {
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let id = left_mult_over_center(&rd, &HeckeElement::one(&rd)).unwrap();
        assert_eq!(id, crate::algebra::BaseMatrix::identity(rd.ring().clone(), 4));
    }
    let rd = gl2();
    let th = HeckeElement::theta(&rd, &[1, 1]);
    let scalar = crate::algebra::BaseMatrix::identity(rd.ring().clone(), 4).scale(&rd.theta(&[1, 1]));
    assert_eq!(left_mult_over_center(&rd, &th).unwrap(), scalar);
}

fn reflect_values(rd: &Rank1Datum, t: &[Complex64]) -> Vec<Complex64> {
    match rd.root.weyl_action {
        WeylAction::Swap => vec![t[1], t[0]],
        WeylAction::Invert => t.iter().map(|x| x.inv()).collect(),
    }
}

/// `h b_j` reduced over the center numerically: with `r = z_1 + z_2 rho_2`
/// and `z_i` invariant, evaluating at `t` and `s t` gives a 2x2 system.
fn numeric_left_mult(rd: &Rank1Datum, h: &HeckeElement, t: &[Complex64], q: Complex64) -> Vec<Vec<Complex64>> {
    let st = reflect_values(rd, t);
    let point = |v: &[Complex64]| -> Vec<Scalar> {
        v.iter().chain(std::iter::once(&q)).map(|c| Scalar::Complex(*c)).collect()
    };
    let (pt, pst) = (point(t), point(&st));
    let rho2 = rd.theta(&rd.center_basis[1]);
    let (r2t, r2st) = (rho2.eval_slice(&pt).unwrap().to_complex(), rho2.eval_slice(&pst).unwrap().to_complex());
    let basis = hecke_basis(rd);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); 4]; 4];
    for (j, b) in basis.iter().enumerate() {
        let prod = mul(rd, h, b);
        for (wi, w) in [false, true].into_iter().enumerate() {
            let comp = prod.component(rd, w).unwrap();
            let (vt, vst) = (comp.eval_slice(&pt).unwrap().to_complex(), comp.eval_slice(&pst).unwrap().to_complex());
            let z2 = (vt - vst) / (r2t - r2st);
            let z1 = vt - z2 * r2t;
            m[2 * wi][j] = z1;
            m[2 * wi + 1][j] = z2;
        }
    }
    m
}

#[test]
fn left_multiplication_specializes_correctly() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let h = mono(&rd, &vec![rd.lattice_step; rd.torus_rank()], true, "1")
            .add(&HeckeElement::t(&rd))
            .add(&mono(&rd, &rd.center_basis[1].clone(), false, "q + 2"));
        let symbolic = left_mult_over_center(&rd, &h).unwrap();
        for _ in 0..5 {
            let t: Vec<Complex64> =
                (0..rd.torus_rank()).map(|_| Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0))).collect();
            let q = Complex64::new(rng.gen_range(1.5..3.0), rng.gen_range(-0.5..0.5));
            let numeric = numeric_left_mult(&rd, &h, &t, q);
            let point: Vec<Scalar> = t.iter().chain(std::iter::once(&q)).map(|c| Scalar::Complex(*c)).collect();
            for i in 0..4 {
                for j in 0..4 {
                    let s = symbolic.get(i, j).eval_slice(&point).unwrap().to_complex();
                    let err = (s - numeric[i][j]).norm() / s.norm().max(1.0);
                    assert!(err <= 1e-9, "{preset} ({i},{j}): {s} vs {}", numeric[i][j]);
                }
            }
        }
    }
}

#[test]
fn gl2_and_pgl2_discriminants_match_closed_forms() {
    for preset in [Preset::Gl2, Preset::Pgl2] {
        let cmp = compare_closed_form(&Rank1Datum::new(preset)).unwrap();
        assert!(cmp.equal, "{cmp:?}");
    }
    let rd = gl2();
    let r = rd.ring();
    let expected = (r.parse("x2 - q*x1").unwrap() * r.parse("x1 - q*x2").unwrap()).pow(2).unwrap();
    assert!(hecke_discriminant(&rd).unwrap().equal_up_to_unit(&expected).unwrap());
}

#[test]
fn sl2_discriminant_lacks_the_published_d_factor() {
    let rd = Rank1Datum::new(Preset::Sl2);
    let r = rd.ring();
    let p = |s: &str| r.parse(s).unwrap();
    let computed = hecke_discriminant(&rd).unwrap();
    // From the GK decomposition: (e e' / d d')^2 * d_{R/A}^2 with d_{R/A} = (1 - x^-4)^2.
    let ee = (p("1 - q^-1*x^2") * p("1 - q^-1*x^-2")).pow(2).unwrap();
    let dd = (p("1 - x^2") * p("1 - x^-2")).pow(2).unwrap();
    let dra = p("1 - 2*x^-4 + x^-8").pow(2).unwrap();
    let from_proof = (ee * dra).div_exact(&dd).unwrap();
    assert!(computed.equal_up_to_unit(&from_proof).unwrap());

    let cmp = compare_closed_form(&rd).unwrap();
    assert!(!cmp.equal);
    let missing = p("1 - x^2").pow(4).unwrap().normalize_up_to_unit();
    assert_eq!(cmp.missing_factor, Some(missing.to_string()));
}

#[test]
fn r_over_rw_discriminants() {
    let pgl2 = Rank1Datum::new(Preset::Pgl2);
    let d = restricted_algebra_r_over_rw(&pgl2).unwrap().discriminant().unwrap();
    assert!(d.equal_up_to_unit(&pgl2.root.steinberg_discriminant().unwrap()).unwrap());
    assert!(d.equal_up_to_unit(&pgl2.ring().parse("1 - 2*x^2 + x^4").unwrap()).unwrap());

    let sl2 = Rank1Datum::new(Preset::Sl2);
    let d = restricted_algebra_r_over_rw(&sl2).unwrap().discriminant().unwrap();
    assert!(d.equal_up_to_unit(&sl2.ring().parse("1 - 2*x^-4 + x^-8").unwrap()).unwrap());

    let gl2 = gl2();
    let d = restricted_algebra_r_over_rw(&gl2).unwrap().discriminant().unwrap();
    assert!(d.equal_up_to_unit(&gl2.ring().parse("x1^2 - 2*x1*x2 + x2^2").unwrap()).unwrap());
}

fn gl2_char(x1: BigRational, x2: BigRational, q: BigRational) -> Character {
    Character::exact([("x1", Scalar::Exact(x1)), ("x2", Scalar::Exact(x2)), ("q", Scalar::Exact(q))])
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn gl2_principal_series_examples() {
    let rd = gl2();
    let v = principal_series_irreducible(&rd, &gl2_char(int(1), int(3), int(2)), 0).unwrap();
    assert_eq!(v.verdict, Irreducibility::Irreducible);
    assert_eq!(v.discriminant_value, Scalar::int(25));
    assert_eq!(v.fiber.blocks, vec![2]);

    let v = principal_series_irreducible(&rd, &gl2_char(int(1), int(2), int(2)), 0).unwrap();
    assert_eq!(v.verdict, Irreducibility::Reducible);
    assert_eq!((v.fiber.radical_dim, v.fiber.blocks.clone()), (2, vec![1, 1]));

    let v = principal_series_irreducible(&rd, &gl2_char(int(1), int(1), int(2)), 0).unwrap();
    assert_eq!(v.verdict, Irreducibility::Irreducible);
}

fn grid_values() -> Vec<BigRational> {
    [(-3, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (2, 1), (4, 1)].iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect()
}

fn q_values() -> Vec<BigRational> {
    vec![int(2), int(3), BigRational::new(1.into(), 4.into())]
}

#[test]
fn discriminant_zero_locus_matches_fiber_on_grids() {
    for preset in Preset::ALL {
        let rd = Rank1Datum::new(preset);
        let alg = hecke_algebra(&rd).unwrap();
        let mut chars = Vec::new();
        for q in q_values() {
            match preset {
                Preset::Gl2 => {
                    for a in grid_values() {
                        for b in grid_values() {
                            chars.push(gl2_char(a.clone(), b, q.clone()));
                        }
                    }
                }
                _ => {
                    for a in grid_values() {
                        for b in grid_values() {
                            let x = a.clone() * b;
                            chars.push(Character::exact([("x", Scalar::Exact(x)), ("q", Scalar::Exact(q.clone()))]));
                        }
                    }
                }
            }
        }
        assert!(chars.len() >= 147);
        for chi in &chars {
            let v = verdict_for(&alg, chi, 5).unwrap();
            assert_ne!(v.verdict, Irreducibility::SingularIndeterminate, "{preset} at {chi}: {:?}", v.diagnostics);
        }
    }
}

#[test]
fn engineered_reducible_loci() {
    let rd = gl2();
    let alg = hecke_algebra(&rd).unwrap();
    for x1 in grid_values() {
        for q in q_values() {
            for (a, b) in [(x1.clone(), x1.clone() * q.clone()), (x1.clone() * q.clone(), x1.clone())] {
                let v = verdict_for(&alg, &gl2_char(a, b, q.clone()), 1).unwrap();
                assert_eq!(v.verdict, Irreducibility::Reducible);
                assert_eq!((v.fiber.radical_dim, v.fiber.blocks.clone()), (2, vec![1, 1]));
            }
        }
    }
    for preset in [Preset::Pgl2, Preset::Sl2] {
        let rd = Rank1Datum::new(preset);
        let alg = hecke_algebra(&rd).unwrap();
        // pi^{a^vee} = x^2 = q^{+-1}
        for (x, q) in [(int(2), int(4)), (BigRational::new(1.into(), 2.into()), int(4)), (int(-3), int(9))] {
            let chi = Character::exact([("x", Scalar::Exact(x)), ("q", Scalar::Exact(q))]);
            let v = verdict_for(&alg, &chi, 1).unwrap();
            assert_eq!(v.verdict, Irreducibility::Reducible, "{preset} at {chi}");
        }
    }
}

#[test]
fn sl2_behaviour_at_pi_equal_plus_minus_one() {
    let rd = Rank1Datum::new(Preset::Sl2);
    let alg = hecke_algebra(&rd).unwrap();
    // x^2 = 1: the trace form stays nondegenerate.
    let chi = Character::exact([("x", Scalar::int(1)), ("q", Scalar::int(3))]);
    let v = verdict_for(&alg, &chi, 1).unwrap();
    assert_eq!((v.verdict, v.fiber.radical_dim), (Irreducibility::Irreducible, 0));
    // x^2 = -1: the (1 + x^2) factor vanishes.
    let chi = Character::float([("x", Scalar::complex(0.0, 1.0)), ("q", Scalar::int(3))], 1e-9);
    let v = verdict_for(&alg, &chi, 1).unwrap();
    assert_eq!(v.verdict, Irreducibility::Reducible);
    assert!(v.fiber.radical_dim > 0);
}
