//! Radical, semisimple quotient, Wedderburn block sizes and trace vectors of a
//! specialized algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use super::{Dense, FiberError, Field, SpecializedAlgebra};

pub const MAX_CLUSTER_ATTEMPTS: usize = 5;

/// Kernel of the Gram matrix. `basis[f]` has a 1 at free column `free[f]`.
#[derive(Clone, Debug)]
pub struct Radical<F> {
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<F>>,
}

impl<F> Radical<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn radical<F: Field>(s: &SpecializedAlgebra<F>) -> Radical<F> {
    let (pivots, basis) = s.gram().kernel(s.tolerance());
    let free = (0..s.rank()).filter(|c| !pivots.contains(c)).collect();
    Radical { pivots, free, basis }
}

/// `R/J` on the basis of pivot columns, with the projection from `R`.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub algebra: SpecializedAlgebra<F>,
    /// `rank(R/J) x rank(R)`; column `j` is the image of `e_j`.
    pub projection: Dense<F>,
}

pub fn semisimple_quotient<F: Field>(s: &SpecializedAlgebra<F>, rad: &Radical<F>) -> Quotient<F> {
    let n = s.rank();
    let m = rad.pivots.len();
    // e_f = v_f - sum_p v_f[p] e_p with v_f in J, so e_f maps to -sum_p v_f[p] e_p.
    let mut projection = Dense::zeros(m, n);
    for (pi, &p) in rad.pivots.iter().enumerate() {
        projection[(pi, p)] = F::one();
        for (f, v) in rad.free.iter().zip(&rad.basis) {
            projection[(pi, *f)] = -v[p].clone();
        }
    }
    let project = |v: &[F]| -> Vec<F> {
        (0..m)
            .map(|pi| (0..n).fold(F::zero(), |acc, j| acc + projection[(pi, j)].clone() * v[j].clone()))
            .collect()
    };
    let mut table = Vec::with_capacity(m * m * m);
    for &a in &rad.pivots {
        for &b in &rad.pivots {
            let prod: Vec<F> = (0..n).map(|k| s.constant(a, b, k).clone()).collect();
            table.extend(project(&prod));
        }
    }
    let unit = project(s.unit());
    let algebra = SpecializedAlgebra::from_table(m, table, unit, s.tolerance());
    Quotient { algebra, projection }
}

/// Basis of the center, from `z e_i - e_i z = 0` for all `i`.
pub fn center<F: Field>(s: &SpecializedAlgebra<F>) -> Vec<Vec<F>> {
    let n = s.rank();
    let sys = Dense::from_fn(n * n, n, |row, k| {
        let (i, m) = (row / n, row % n);
        s.constant(k, i, m).clone() - s.constant(i, k, m).clone()
    });
    sys.kernel(s.tolerance()).1
}

/// Block sizes of a semisimple algebra with the data that produced them.
#[derive(Clone, Debug)]
pub struct Blocks {
    /// `n_i`, aligned with `eigenvalues`.
    pub sizes: Vec<usize>,
    /// Cluster centers of the spectrum of `L_z`.
    pub eigenvalues: Vec<Complex64>,
    pub center_dim: usize,
    pub attempts: usize,
    pub(crate) lz: DMatrix<Complex64>,
}

impl Blocks {
    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut v = self.sizes.clone();
        v.sort_unstable();
        v
    }
}

fn random_coefficient<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(-99i64..=99).into(), rng.gen_range(1i64..=9).into())
}

/// Groups eigenvalues whose distance is within `radius`, transitively.
pub fn cluster(values: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..values.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            if (values[a] - values[b]).norm() <= radius {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; values.len()];
    for i in 0..values.len() {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn eigenvalues(m: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    m.clone().schur().eigenvalues().map(|v| v.iter().copied().collect())
}

/// Block sizes of a semisimple algebra from the spectrum of a random central
/// element; the eigenspace of each eigenvalue has dimension `n_i^2`.
pub fn wedderburn_blocks<F: Field, R: Rng>(s: &SpecializedAlgebra<F>, rng: &mut R) -> Result<Blocks, FiberError> {
    let center = center(s);
    let r = center.len();
    let tol = s.tolerance();
    let mut diagnostics = Vec::new();
    for attempt in 1..=MAX_CLUSTER_ATTEMPTS {
        let coeffs: Vec<F> = (0..r).map(|_| F::from_rational(&random_coefficient(rng))).collect();
        let z: Vec<F> = (0..s.rank())
            .map(|k| coeffs.iter().zip(&center).fold(F::zero(), |acc, (c, b)| acc + c.clone() * b[k].clone()))
            .collect();
        let lz = s.left_mult(&z).to_nalgebra();
        let Some(spectrum) = eigenvalues(&lz) else {
            diagnostics.push(format!("attempt {attempt}: eigenvalue iteration did not converge"));
            continue;
        };
        let scale = spectrum.iter().map(|l| l.norm()).fold(1.0, f64::max);
        let groups = cluster(&spectrum, 1e3 * tol * scale);
        let dims: Vec<usize> = groups.iter().map(Vec::len).collect();
        let sizes: Vec<Option<usize>> = dims.iter().map(|&d| exact_sqrt(d)).collect();
        if groups.len() == r && sizes.iter().all(Option::is_some) {
            let eigenvalues = groups
                .iter()
                .map(|g| g.iter().map(|&i| spectrum[i]).sum::<Complex64>() / g.len() as f64)
                .collect();
            return Ok(Blocks {
                sizes: sizes.into_iter().map(Option::unwrap).collect(),
                eigenvalues,
                center_dim: r,
                attempts: attempt,
                lz,
            });
        }
        diagnostics.push(format!(
            "attempt {attempt}: center dimension {r}, {} clusters with eigenspace dimensions {dims:?}",
            groups.len()
        ));
    }
    Err(FiberError::Clustering { attempts: MAX_CLUSTER_ATTEMPTS, diagnostics })
}

fn exact_sqrt(d: usize) -> Option<usize> {
    let s = (d as f64).sqrt().round() as usize;
    (s * s == d && s > 0).then_some(s)
}

/// For each block, `(tr_{V_i}(e_1), ..., tr_{V_i}(e_n))` over the original
/// basis, from the spectral projector of `L_z` on the quotient.
pub fn trace_vectors<F: Field>(q: &Quotient<F>, blocks: &Blocks) -> Result<Vec<Vec<Complex64>>, FiberError> {
    let s = &q.algebra;
    let m = s.rank();
    let id = DMatrix::<Complex64>::identity(m, m);
    let projectors: Vec<DMatrix<Complex64>> = (0..blocks.sizes.len())
        .map(|i| {
            let mut p = id.clone();
            for (j, lj) in blocks.eigenvalues.iter().enumerate() {
                if j != i {
                    p = p * (&blocks.lz - &id * *lj) / (blocks.eigenvalues[i] - lj);
                }
            }
            p
        })
        .collect();
    let left: Vec<DMatrix<Complex64>> = (0..m).map(|k| s.left_mult(&s.basis_vector(k)).to_nalgebra()).collect();
    let n = q.projection.cols;
    let mut out = Vec::with_capacity(projectors.len());
    for (p, &ni) in projectors.iter().zip(&blocks.sizes) {
        let per_basis: Vec<Complex64> = left.iter().map(|l| (l * p).trace() / ni as f64).collect();
        let vector: Vec<Complex64> = (0..n)
            .map(|j| (0..m).map(|k| q.projection[(k, j)].to_complex() * per_basis[k]).sum())
            .collect();
        out.push(vector);
    }
    let scale = out.iter().flatten().map(|c| c.norm()).fold(1.0, f64::max);
    let threshold = 1e3 * s.tolerance() * scale;
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            let d = distance(&out[a], &out[b]);
            if d <= threshold {
                return Err(FiberError::IndistinctTraceVectors(format!(
                    "blocks {a} and {b} have trace vectors at distance {d:e}"
                )));
            }
        }
    }
    Ok(out)
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}
