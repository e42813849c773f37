//! Lowest eigenvalue of a sparse symmetric Hamiltonian.
//!
//! Small sectors go through a dense symmetric eigensolve. Larger ones use
//! Lanczos with full re-orthogonalization: every new Krylov vector is
//! Gram-Schmidt projected twice against all previous ones, so no ghost
//! eigenvalues appear and the tridiagonal Ritz values are trustworthy.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::SparseHamiltonian;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Dense at or below `dense_threshold`, Lanczos above.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub method: Method,
    pub dense_threshold: usize,
    /// Ritz residual tolerance, relative to `max(1, |E|)`.
    pub tol: f64,
    pub max_iterations: usize,
    /// Seed of the deterministic start vector.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            method: Method::Auto,
            dense_threshold: 2000,
            tol: 1e-10,
            max_iterations: 400,
            seed: 0x4a43_484d,
        }
    }
}

pub fn ground_energy(h: &SparseHamiltonian, opts: &SolverOptions) -> Result<f64> {
    if h.dimension == 0 {
        return Err(invalid("empty sector has no ground state"));
    }
    match opts.method {
        Method::Dense => Ok(dense_ground_energy(h)),
        Method::Lanczos => lanczos_ground_energy(h, opts),
        Method::Auto if h.dimension <= opts.dense_threshold => Ok(dense_ground_energy(h)),
        Method::Auto => lanczos_ground_energy(h, opts),
    }
}

pub fn dense_ground_energy(h: &SparseHamiltonian) -> f64 {
    lowest(h.to_dense().symmetric_eigenvalues().iter().copied())
}

fn lowest(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::INFINITY, f64::min)
}

/// Unit start vector with entries drawn from a fixed-seed generator.
pub fn start_vector(dimension: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..dimension).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut v);
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Lowest Ritz value of the `k × k` tridiagonal matrix, and the last
/// component of its eigenvector.
fn lowest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, f64) {
    let k = alpha.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (idx, value) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    (value, eig.eigenvectors[(k - 1, idx)])
}

pub fn lanczos_ground_energy(h: &SparseHamiltonian, opts: &SolverOptions) -> Result<f64> {
    let n = h.dimension;
    if n == 0 {
        return Err(invalid("empty sector has no ground state"));
    }
    let max_iter = opts.max_iterations.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = vec![start_vector(n, opts.seed)];
    let mut alpha = Vec::with_capacity(max_iter);
    let mut beta: Vec<f64> = Vec::with_capacity(max_iter);
    let mut w = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for k in 0..max_iter {
        h.apply(&basis[k], &mut w);
        let a = dot(&w, &basis[k]);
        alpha.push(a);
        for _ in 0..2 {
            for q in &basis {
                let proj = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let b = dot(&w, &w).sqrt();
        let steps = k + 1;
        let exhausted = steps == n || b <= 1e-13 * a.abs().max(1.0);
        if exhausted || steps % 10 == 0 || steps == max_iter {
            let (theta, last) = lowest_ritz(&alpha, &beta);
            residual = (b * last).abs();
            if exhausted || residual <= opts.tol * theta.abs().max(1.0) {
                return Ok(theta);
            }
        }
        if steps == max_iter {
            break;
        }
        beta.push(b);
        let mut next = std::mem::take(&mut w);
        next.iter_mut().for_each(|x| *x /= b);
        basis.push(next);
        w = vec![0.0; n];
    }
    Err(Error::Solver { iterations: max_iter, residual })
}
