//! Fibers of a finite algebra at characters of its base: radical as the kernel
//! of the trace form, Wedderburn block sizes, simple-module count and trace
//! vectors.

mod character;
mod field;
mod linalg;
mod specialized;
mod structure;

use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use character::{Character, CharacterSpec, Mode, DEFAULT_TOLERANCE};
pub use field::Field;
pub use linalg::Dense;
pub use specialized::{specialize, SpecializedAlgebra};
pub use structure::{
    center, cluster, distance, radical, semisimple_quotient, trace_vectors, wedderburn_blocks, Blocks, Quotient,
    Radical, MAX_CLUSTER_ATTEMPTS,
};

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::poly::{PolyError, Scalar};

#[derive(Debug, Clone, Error)]
pub enum FiberError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("complex value in an exact-mode character")]
    ModeMismatch,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("eigenvalue clustering failed after {attempts} attempts: {}", .diagnostics.join("; "))]
    Clustering { attempts: usize, diagnostics: Vec<String> },
    #[error("block accounting failed: sum of n_i^2 = {blocks} plus radical {radical} != rank {rank}")]
    Accounting { blocks: usize, radical: usize, rank: usize },
    #[error("trace vectors do not separate simple modules: {0}")]
    IndistinctTraceVectors(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub character: Character,
    pub rank: usize,
    pub radical_dim: usize,
    pub radical_basis: Vec<Vec<Scalar>>,
    pub blocks: Vec<usize>,
    pub num_simples: usize,
    /// Rounded to 1e-9, which hides most of the noise from the central element drawn.
    pub trace_vectors: Vec<Vec<Scalar>>,
    pub stratum_index: usize,
    #[serde(rename = "in_X0")]
    pub in_x0: bool,
    pub discriminant_value: Scalar,
    /// Whether discriminant nonvanishing agrees with a zero radical.
    pub consistent: bool,
    pub seed: u64,
    pub attempts: usize,
}

fn round9(x: f64) -> f64 {
    let y = (x * 1e9).round() / 1e9;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn cmp_vectors(a: &[Complex64], b: &[Complex64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| round9(x.re).total_cmp(&round9(y.re)).then(round9(x.im).total_cmp(&round9(y.im))))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Value of the normalized discriminant at `chi` and whether it is nonzero
/// (relative to the term magnitudes in float mode).
pub fn discriminant_at(alg: &FiniteAlgebra, chi: &Character) -> Result<(Scalar, bool), FiberError> {
    let values = chi.values_for(alg.base())?;
    let disc = alg.discriminant()?;
    let v = disc.eval_slice(&values)?;
    let nonzero = match chi.mode {
        Mode::Exact => !v.is_zero(),
        Mode::Float => v.abs() > chi.tolerance * disc.eval_magnitude(&values)?,
    };
    Ok((v, nonzero))
}

/// Runs the whole pipeline at `chi`; `seed` drives the random central elements.
pub fn fiber(alg: &FiniteAlgebra, chi: &Character, seed: u64) -> Result<FiberReport, FiberError> {
    match chi.mode {
        Mode::Exact => analyze::<BigRational>(alg, chi, seed),
        Mode::Float => analyze::<Complex64>(alg, chi, seed),
    }
}

fn analyze<F: Field>(alg: &FiniteAlgebra, chi: &Character, seed: u64) -> Result<FiberReport, FiberError> {
    let s = specialize::<F>(alg, chi)?;
    let (discriminant_value, nonzero) = discriminant_at(alg, chi)?;
    let rad = radical(&s);
    let quotient = semisimple_quotient(&s, &rad);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = wedderburn_blocks(&quotient.algebra, &mut rng)?;
    let covered: usize = blocks.sizes.iter().map(|n| n * n).sum();
    if covered + rad.dim() != s.rank() {
        return Err(FiberError::Accounting { blocks: covered, radical: rad.dim(), rank: s.rank() });
    }
    let vectors = trace_vectors(&quotient, &blocks)?;

    let mut order: Vec<usize> = (0..blocks.sizes.len()).collect();
    order.sort_by(|&a, &b| blocks.sizes[a].cmp(&blocks.sizes[b]).then_with(|| cmp_vectors(&vectors[a], &vectors[b])));

    let consistent = nonzero == (rad.dim() == 0);
    if !consistent && F::EXACT {
        return Err(FiberError::Inconsistent(format!(
            "discriminant value {discriminant_value} but radical dimension {}",
            rad.dim()
        )));
    }
    Ok(FiberReport {
        character: chi.clone(),
        rank: s.rank(),
        radical_dim: rad.dim(),
        radical_basis: rad.basis.iter().map(|v| v.iter().map(F::to_scalar).collect()).collect(),
        blocks: order.iter().map(|&i| blocks.sizes[i]).collect(),
        num_simples: blocks.sizes.len(),
        trace_vectors: order
            .iter()
            .map(|&i| vectors[i].iter().map(|c| Scalar::complex(round9(c.re), round9(c.im))).collect())
            .collect(),
        stratum_index: rad.dim(),
        in_x0: nonzero,
        discriminant_value,
        consistent,
        seed,
        attempts: blocks.attempts,
    })
}

/// Radical dimension only, without the block decomposition.
pub fn stratum_index(alg: &FiniteAlgebra, chi: &Character) -> Result<usize, FiberError> {
    Ok(match chi.mode {
        Mode::Exact => radical(&specialize::<BigRational>(alg, chi)?).dim(),
        Mode::Float => radical(&specialize::<Complex64>(alg, chi)?).dim(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumEntry {
    pub character: Character,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Stratum index per character, sorted by index; failures are kept as
/// entries with an error message and sorted last.
pub fn stratum_scan(alg: &FiniteAlgebra, chars: &[Character]) -> Vec<StratumEntry> {
    let mut out: Vec<(usize, StratumEntry)> = chars
        .par_iter()
        .enumerate()
        .map(|(pos, chi)| {
            let result = stratum_index(alg, chi);
            let entry = StratumEntry {
                character: chi.clone(),
                stratum_index: result.as_ref().ok().copied(),
                error: result.err().map(|e| e.to_string()),
            };
            (pos, entry)
        })
        .collect();
    out.sort_by_key(|(pos, e)| (e.stratum_index.map_or(usize::MAX, |i| i), *pos));
    out.into_iter().map(|(_, e)| e).collect()
}

#[cfg(test)]
mod tests;
