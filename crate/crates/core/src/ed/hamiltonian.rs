//! Sparse assembly of the chain Hamiltonian
//!
//! `H = ω_c Σ n_j + ω_z Σ (σ^z_j + 1)/2 + g Σ (a†_j σ⁻_j + σ⁺_j a_j) - J Σ (a†_j a_{j+1} + a†_{j+1} a_j)`
//!
//! inside one excitation sector.

use nalgebra::DMatrix;

use super::basis::{BasisState, SectorBasis};
use super::ChainSpec;
use crate::error::{invalid, Error, Result};

/// Real symmetric matrix stored as merged `(row, col, value)` triplets.
///
/// Both triangles are stored; `symmetric_storage` is kept `false` for that
/// layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHamiltonian {
    pub dimension: usize,
    pub entries: Vec<(usize, usize, f64)>,
    pub symmetric_storage: bool,
}

impl SparseHamiltonian {
    /// Sorts triplets by `(row, col)`, sums duplicates and drops exact zeros.
    pub fn from_triplets(dimension: usize, mut entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = entries.iter().find(|&&(r, c, _)| r >= dimension || c >= dimension) {
            return Err(invalid(format!("entry ({r}, {c}) outside dimension {dimension}")));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != 0.0);
        Ok(Self { dimension, entries: merged, symmetric_storage: false })
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dimension);
        assert_eq!(y.len(), self.dimension);
        y.iter_mut().for_each(|v| *v = 0.0);
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dimension, self.dimension);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    /// `max |H_rc - H_cr|`, zero for an exactly symmetric matrix.
    pub fn max_asymmetry(&self) -> f64 {
        let lookup = |r: usize, c: usize| {
            self.entries
                .binary_search_by_key(&(r, c), |&(r, c, _)| (r, c))
                .map(|i| self.entries[i].2)
                .unwrap_or(0.0)
        };
        self.entries
            .iter()
            .map(|&(r, c, v)| (v - lookup(c, r)).abs())
            .fold(0.0, f64::max)
    }
}

/// Directed bonds `(j, j+1)` of the chain; `L = 1` has none.
///
/// On a periodic ring of two sites both `0 → 1` and `1 → 0` are bonds, so
/// the single physical link carries hopping `2J`.
pub fn bonds(spec: &ChainSpec) -> Vec<(usize, usize)> {
    let l = spec.sites;
    let mut out: Vec<(usize, usize)> = (0..l.saturating_sub(1)).map(|j| (j, j + 1)).collect();
    if spec.boundary == super::Boundary::Periodic && l >= 2 {
        out.push((l - 1, 0));
    }
    out
}

/// Assembles the sector block of the chain Hamiltonian.
///
/// Photon-raising terms that would exceed `n_max` are dropped.
pub fn build_hamiltonian(spec: &ChainSpec, basis: &SectorBasis) -> Result<SparseHamiltonian> {
    if basis.sites() != spec.sites || basis.n_max() != spec.n_max {
        return Err(invalid("basis was built for a different chain"));
    }
    let p = &spec.params;
    let (omega_c, omega_z, g, hop) = (p.omega_c(), p.omega_z(), p.g(), spec.hopping);
    let n_max = spec.n_max;
    let bonds = bonds(spec);
    let mut triplets = Vec::with_capacity(basis.len() * (1 + 2 * spec.sites + 2 * bonds.len()));

    for (row, state) in basis.states().iter().enumerate() {
        let photons: usize = state.bosons.iter().map(|&n| n as usize).sum();
        triplets.push((row, row, omega_c * photons as f64 + omega_z * state.qubits_up() as f64));

        let mut target = state.clone();
        let mut emit = |target: &BasisState, amplitude: f64| -> Result<()> {
            let col = basis.index_of(target).ok_or(Error::SectorLeak { row })?;
            triplets.push((col, row, amplitude));
            Ok(())
        };

        for j in 0..spec.sites {
            let n = state.bosons[j];
            // a†_j σ⁻_j : (n, up) -> (n+1, down)
            if state.qubits[j] && n < n_max {
                target.bosons[j] = n + 1;
                target.qubits[j] = false;
                emit(&target, g * f64::from(u32::from(n) + 1).sqrt())?;
            }
            // σ⁺_j a_j : (n, down) -> (n-1, up)
            if !state.qubits[j] && n > 0 {
                target.bosons[j] = n - 1;
                target.qubits[j] = true;
                emit(&target, g * f64::from(n).sqrt())?;
            }
            target.bosons[j] = n;
            target.qubits[j] = state.qubits[j];
        }

        if hop != 0.0 {
            for &(a, b) in &bonds {
                for (to, from) in [(a, b), (b, a)] {
                    let (n_to, n_from) = (state.bosons[to], state.bosons[from]);
                    // a†_to a_from
                    if n_from > 0 && n_to < n_max {
                        target.bosons[to] = n_to + 1;
                        target.bosons[from] = n_from - 1;
                        let weight = (u32::from(n_to) + 1) * u32::from(n_from);
                        emit(&target, -hop * f64::from(weight).sqrt())?;
                        target.bosons[to] = n_to;
                        target.bosons[from] = n_from;
                    }
                }
            }
        }
    }
    SparseHamiltonian::from_triplets(basis.len(), triplets)
}
