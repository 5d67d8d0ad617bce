use serde::Serialize;

use super::{hecke_mul, HeckeElement, HeckeError, Preset, Rank1Datum};
use crate::algebra::{BaseMatrix, FiniteAlgebra};
use crate::fiber::{self, Character, FiberReport};
use crate::poly::{Poly, Scalar};

/// Writes `r = sum z_i rho_i` with `z_i` Weyl invariant, by divided
/// differences: `z_2 = (r - s r) / (rho_2 - s rho_2)`, `z_1 = r - z_2 rho_2`.
pub fn reduce_to_center(rd: &Rank1Datum, r: &Poly) -> Result<Vec<Poly>, HeckeError> {
    if r.ring() != rd.ring() {
        return Err(HeckeError::Coefficient(r.ring().to_string()));
    }
    let rho2 = rd.theta(&rd.center_basis[1]);
    let denom = &rho2 - &rd.weyl(&rho2);
    let z2 = (r - &rd.weyl(r)).div_exact(&denom).map_err(|_| HeckeError::Reduction(r.to_string()))?;
    let z1 = r - &(&z2 * &rho2);
    let coords = vec![z1, z2];
    if coords.iter().any(|z| !rd.is_invariant(z)) || &coords[0] + &(&coords[1] * &rho2) != *r {
        return Err(HeckeError::Reduction(r.to_string()));
    }
    Ok(coords)
}

/// `rho_i T_w` at index `w * d + i`.
pub fn hecke_basis(rd: &Rank1Datum) -> Vec<HeckeElement> {
    [false, true]
        .iter()
        .flat_map(|&w| {
            rd.center_basis.iter().map(move |rho| {
                HeckeElement::monomial(rd, rho.clone(), w, rd.q_ring().one()).expect("rho lies in the lattice")
            })
        })
        .collect()
}

/// Coordinates of `h` over the center in the basis `rho_i T_w`.
pub fn coordinates_over_center(rd: &Rank1Datum, h: &HeckeElement) -> Result<Vec<Poly>, HeckeError> {
    let mut out = Vec::with_capacity(rd.hecke_rank());
    for w in [false, true] {
        out.extend(reduce_to_center(rd, &h.component(rd, w)?)?);
    }
    Ok(out)
}

/// Matrix of left multiplication by `h` on `H` over its center; column `j`
/// holds the coordinates of `h b_j`. Every entry is checked to be invariant.
pub fn left_mult_over_center(rd: &Rank1Datum, h: &HeckeElement) -> Result<BaseMatrix, HeckeError> {
    let basis = hecke_basis(rd);
    let m = basis.len();
    let mut cols = Vec::with_capacity(m);
    for b in &basis {
        cols.push(coordinates_over_center(rd, &hecke_mul(rd, h, b)?)?);
    }
    let mat = BaseMatrix::from_fn(rd.ring().clone(), m, m, |i, j| cols[j][i].clone());
    for i in 0..m {
        for j in 0..m {
            if !rd.is_invariant(mat.get(i, j)) {
                return Err(HeckeError::NotInvariant { row: i, col: j });
            }
        }
    }
    Ok(mat)
}

/// `H` as a rank-`m` algebra over its center, with invariant structure
/// constants written in the torus ring.
pub fn hecke_algebra(rd: &Rank1Datum) -> Result<FiniteAlgebra, HeckeError> {
    let basis = hecke_basis(rd);
    let m = basis.len();
    let mut table = Vec::with_capacity(m);
    for bi in &basis {
        let mut row = Vec::with_capacity(m);
        for bj in &basis {
            row.push(coordinates_over_center(rd, &hecke_mul(rd, bi, bj)?)?);
        }
        table.push(row);
    }
    let unit = coordinates_over_center(rd, &HeckeElement::one(rd))?;
    let names = basis_names(rd);
    let alg = FiniteAlgebra::new(rd.ring().clone(), names, unit, table, false)?;
    alg.validate()?;
    Ok(alg)
}

fn basis_names(rd: &Rank1Datum) -> Vec<String> {
    let vars = &rd.root.torus_vars;
    let rho_name = |rho: &[i64]| {
        let parts: Vec<String> = rho
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e != 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    [false, true]
        .iter()
        .flat_map(|&w| rd.center_basis.iter().map(move |rho| format!("{}{}", rho_name(rho), if w { "*T" } else { "" })))
        .collect()
}

/// `R` over `R^W` on the basis `rho_i`.
pub fn restricted_algebra_r_over_rw(rd: &Rank1Datum) -> Result<FiniteAlgebra, HeckeError> {
    let rhos: Vec<Poly> = rd.center_basis.iter().map(|l| rd.theta(l)).collect();
    let mut table = Vec::with_capacity(rhos.len());
    for a in &rhos {
        let mut row = Vec::with_capacity(rhos.len());
        for b in &rhos {
            row.push(reduce_to_center(rd, &(a * b))?);
        }
        table.push(row);
    }
    let unit = reduce_to_center(rd, &rd.ring().one())?;
    let names = basis_names(rd).into_iter().take(rhos.len()).collect();
    let alg = FiniteAlgebra::new(rd.ring().clone(), names, unit, table, true)?;
    alg.validate()?;
    Ok(alg)
}

/// Normalized discriminant of `H` over its center, via the trace form.
pub fn hecke_discriminant(rd: &Rank1Datum) -> Result<Poly, HeckeError> {
    Ok(hecke_algebra(rd)?.discriminant()?)
}

/// The published closed form for each preset, normalized.
pub fn closed_form(rd: &Rank1Datum) -> Result<Poly, HeckeError> {
    let r = rd.ring();
    let p = match rd.preset {
        Preset::Gl2 => (r.parse("x2 - q*x1")? * r.parse("x1 - q*x2")?).pow(2)?,
        Preset::Pgl2 => rd.root.adjoint_discriminant_formula()?,
        Preset::Sl2 => {
            let pi = rd.root.coroot_monomial()?;
            let ee = rd.root.gk_product(true)?.0.pow(2)?;
            ee * (r.one() - pi.clone()).pow(4)? * (r.one() + pi).pow(4)?
        }
    };
    Ok(p.normalize_up_to_unit())
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub preset: Preset,
    pub computed: String,
    pub expected: String,
    pub equal: bool,
    /// `expected / computed` (or the inverse) when one divides the other.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_factor: Option<String>,
}

/// Compares the trace-form discriminant with [`closed_form`] up to unit.
pub fn compare_closed_form(rd: &Rank1Datum) -> Result<Comparison, HeckeError> {
    let computed = hecke_discriminant(rd)?;
    let expected = closed_form(rd)?;
    let equal = computed.equal_up_to_unit(&expected)?;
    let (mut missing, mut extra) = (None, None);
    if !equal {
        missing = expected.div_exact(&computed).ok().map(|p| p.normalize_up_to_unit().to_string());
        extra = computed.div_exact(&expected).ok().map(|p| p.normalize_up_to_unit().to_string());
    }
    Ok(Comparison {
        preset: rd.preset,
        computed: computed.to_string(),
        expected: expected.to_string(),
        equal,
        missing_factor: missing,
        extra_factor: extra,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    SingularIndeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub verdict: Irreducibility,
    pub discriminant_value: Scalar,
    pub discriminant_nonzero: bool,
    pub fiber: FiberReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Irreducible iff the discriminant is nonzero at `chi` and the fiber is a
/// single block; reducible iff both say otherwise.
pub fn principal_series_irreducible(rd: &Rank1Datum, chi: &Character, seed: u64) -> Result<Verdict, HeckeError> {
    let alg = hecke_algebra(rd)?;
    verdict_for(&alg, chi, seed)
}

/// [`principal_series_irreducible`] with a prebuilt [`hecke_algebra`].
pub fn verdict_for(alg: &FiniteAlgebra, chi: &Character, seed: u64) -> Result<Verdict, HeckeError> {
    let (value, nonzero) = fiber::discriminant_at(alg, chi)?;
    let report = fiber::fiber(alg, chi, seed)?;
    let single = report.radical_dim == 0 && report.num_simples == 1;
    let (verdict, diagnostics) = match (nonzero, single) {
        (true, true) => (Irreducibility::Irreducible, None),
        (false, false) => (Irreducibility::Reducible, None),
        (nonzero, _) => (
            Irreducibility::SingularIndeterminate,
            Some(format!(
                "discriminant {} but fiber has radical {} and blocks {:?}",
                if nonzero { "nonzero" } else { "zero" },
                report.radical_dim,
                report.blocks
            )),
        ),
    };
    Ok(Verdict { verdict, discriminant_value: value, discriminant_nonzero: nonzero, fiber: report, diagnostics })
}
