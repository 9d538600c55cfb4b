//! Information matrices, symmetric eigen-decomposition and canonical
//! efficiency factors.
//!
//! For a contraction with incidence `N` the scaled information matrix is
//! `A* = I - N N' / k^2`; for an augmented design it is
//! `A* = r^(-1/2) A r^(-1/2)` with
//! `A = diag(r) - (N_R N_R' + N_C N_C') / v + r r' / v^2`,
//! where `N_R`/`N_C` are the treatment-by-row/column incidences and `r`
//! the replication vector. A connected design has exactly one zero
//! eigenvalue; the remaining eigenvalues are the canonical efficiency
//! factors (cefs) and their harmonic mean is the average efficiency
//! factor.

use crate::designs::{AugmentedDesign, Contraction, EfficiencyReport};
use crate::{Error, Result};

/// Absolute threshold below which an eigenvalue counts as zero. The
/// matrices here have unit-scale entries.
pub const ZERO_EIG_TOL: f64 = 1e-8;

/// Dense symmetric matrix, validated to within a relative skew of 1e-12.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Wraps a row-major `n x n` array, rejecting asymmetric input:
    /// `|a_ij - a_ji| <= 1e-12 * max(1, |a_ij|)` must hold for all pairs.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidParams(format!(
                "expected {} entries for order {n}, found {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = data[i * n + j];
                let b = data[j * n + i];
                if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                    return Err(Error::InvalidParams(format!(
                        "not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a symmetric matrix from `f`, evaluated once per unordered
    /// index pair and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().values
    }

    /// Full spectral decomposition by cyclic Jacobi rotations.
    pub fn eigen(&self) -> Eigen {
        jacobi(self)
    }
}

/// Spectral decomposition `A = V diag(values) V'`. `values` ascend and
/// column `i` of `vectors` (row-major `n x n`) is the eigenvector of
/// `values[i]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

/// All eigenvalues of a symmetric matrix, ascending. Deterministic for
/// identical input.
pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    m.eigenvalues()
}

/// Cyclic-by-row Jacobi. Matrices here are at most a few hundred rows, so
/// the cubic sweep cost is irrelevant next to its unconditional
/// convergence for symmetric input.
fn jacobi(m: &SymmetricMatrix) -> Eigen {
    let n = m.n;
    let mut a = m.data.clone();
    let mut vecs = vec![0.0; n * n];
    for i in 0..n {
        vecs[i * n + i] = 1.0;
    }
    if n > 1 {
        let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        let tol = 1e-14 * scale;
        const MAX_SWEEPS: usize = 64;
        for _ in 0..MAX_SWEEPS {
            let mut off_sq = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off_sq += a[p * n + q] * a[p * n + q];
                }
            }
            if off_sq.sqrt() <= tol {
                break;
            }
            for p in 0..(n - 1) {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let arp = a[r * n + p];
                        let arq = a[r * n + q];
                        let new_rp = c * arp - s * arq;
                        let new_rq = s * arp + c * arq;
                        a[r * n + p] = new_rp;
                        a[p * n + r] = new_rp;
                        a[r * n + q] = new_rq;
                        a[q * n + r] = new_rq;
                    }
                    for r in 0..n {
                        let vrp = vecs[r * n + p];
                        let vrq = vecs[r * n + q];
                        vecs[r * n + p] = c * vrp - s * vrq;
                        vecs[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .partial_cmp(&a[j * n + j])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new_col] = vecs[r * n + old_col];
        }
    }
    Eigen { values, vectors }
}

/// Harmonic mean `n / sum(1/x_i)` of positive values.
pub fn harmonic_mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() || values.iter().any(|&x| x <= 0.0) {
        return Err(Error::NonPositiveValue);
    }
    Ok(values.len() as f64 / values.iter().map(|x| 1.0 / x).sum::<f64>())
}

/// Splits a spectrum into near-zero eigenvalues and the rest.
fn split_zero_eigs(eigs: Vec<f64>) -> (usize, Vec<f64>) {
    let zeros = eigs.iter().filter(|x| x.abs() <= ZERO_EIG_TOL).count();
    let rest = eigs.into_iter().filter(|x| x.abs() > ZERO_EIG_TOL).collect();
    (zeros, rest)
}

/// Canonical efficiency factors of a contraction, treating its columns as
/// incomplete blocks (the row-column design has the same average
/// efficiency factor because the rows are complete replicates).
///
/// Forms `A* = I - N N' / k^2`, drops the single trivial zero eigenvalue
/// and returns the remaining `v - 1` cefs with their harmonic mean. The
/// trivial upper bound is `v(k-1) / ((v-1)k)`, the arithmetic mean of the
/// cefs of a binary equireplicate design.
pub fn contraction_cefs(c: &Contraction) -> Result<EfficiencyReport> {
    let v = c.v();
    let k = c.k() as f64;
    // Concurrence counts N N' accumulated column by column.
    let mut nnt = vec![0.0; v * v];
    for j in 0..v {
        let col: Vec<usize> = c.rows().iter().map(|row| row[j] - 1).collect();
        for &s in &col {
            for &t in &col {
                nnt[s * v + t] += 1.0;
            }
        }
    }
    let a_star = SymmetricMatrix::from_fn(v, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - nnt[i * v + j] / (k * k)
    });
    let (zeros, cefs) = split_zero_eigs(a_star.eigenvalues());
    match zeros {
        0 => panic!("information matrix of a valid contraction lost its zero eigenvalue"),
        1 => {}
        _ => return Err(Error::Disconnected),
    }
    let vf = v as f64;
    let ub = vf * (k - 1.0) / ((vf - 1.0) * k);
    EfficiencyReport::new(cefs, ub)
}

/// Canonical efficiency factors of a complete augmented design, by direct
/// eigen-decomposition of its scaled information matrix (order `v_star`).
///
/// Drops the single trivial zero eigenvalue and returns the remaining
/// `v_star - 1` cefs; the trivial upper bound is their arithmetic mean.
pub fn augmented_cefs(d: &AugmentedDesign) -> Result<EfficiencyReport> {
    if !d.is_complete() {
        return Err(Error::InvalidParams(
            "augmented design has unfilled cells".into(),
        ));
    }
    let v = d.v() as f64;
    let vs = d.v_star();
    let r = d.replication();
    let n_r = d.row_incidence();
    let n_c = d.col_incidence();
    let a_star = SymmetricMatrix::from_fn(vs, |s, t| {
        let mut x = 0.0;
        for i in 0..d.v() {
            x += (n_r[s][i] * n_r[t][i] + n_c[s][i] * n_c[t][i]) as f64;
        }
        let rs = r[s] as f64;
        let rt = r[t] as f64;
        let mut a = rs * rt / (v * v) - x / v;
        if s == t {
            a += rs;
        }
        a / (rs * rt).sqrt()
    });
    let (zeros, cefs) = split_zero_eigs(a_star.eigenvalues());
    match zeros {
        0 => panic!("information matrix of an augmented design lost its zero eigenvalue"),
        1 => {}
        // A valid augmented design from a connected contraction is
        // connected; reaching this indicates a construction bug upstream.
        _ => return Err(Error::Disconnected),
    }
    let ub = cefs.iter().sum::<f64>() / cefs.len() as f64;
    EfficiencyReport::new(cefs, ub)
}
