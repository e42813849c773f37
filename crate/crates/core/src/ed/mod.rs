//! Exact diagonalization of finite Jaynes-Cummings-Hubbard chains.
//!
//! The total excitation number `Σ_j (n_j + σ⁺_j σ⁻_j)` commutes with the
//! Hamiltonian, so each sector is assembled and solved on its own. Particle
//! and hole chemical potentials at filling `n` come from the sector ground
//! energies: `μ^P = E_0(Ln + 1) - E_0(Ln)`, `μ^H = E_0(Ln) - E_0(Ln - 1)`.

pub mod basis;
pub mod hamiltonian;
pub mod solver;

use serde::Serialize;

pub use basis::{enumerate_sector, sector_dimension, BasisState, SectorBasis};
pub use hamiltonian::{build_hamiltonian, SparseHamiltonian};
pub use solver::{ground_energy, Method, SolverOptions};

use crate::error::{invalid, Error, Result};
use crate::spectrum::SystemParams;

/// Environment variable overriding the ED memory ceiling, in bytes.
pub const MEMORY_CEILING_ENV: &str = "JCHM_ED_MEMORY_BYTES";
pub const DEFAULT_MEMORY_CEILING: u128 = 2 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// A finite chain: site count, photon cutoff, boundary, hopping and site parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainSpec {
    pub sites: usize,
    pub n_max: u8,
    pub boundary: Boundary,
    /// Hopping `J`, same units as `params.g()`.
    pub hopping: f64,
    pub params: SystemParams,
}

impl ChainSpec {
    pub fn new(sites: usize, n_max: u8, boundary: Boundary, hopping: f64, params: SystemParams) -> Result<Self> {
        if sites == 0 {
            return Err(invalid("chain needs at least one site"));
        }
        if n_max == 0 {
            return Err(invalid("boson cutoff must be at least 1"));
        }
        if !(hopping >= 0.0) || !hopping.is_finite() {
            return Err(invalid(format!("hopping must be finite and non-negative, got {hopping}")));
        }
        Ok(Self { sites, n_max, boundary, hopping, params })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdOptions {
    pub solver: SolverOptions,
    pub memory_ceiling: u128,
}

impl Default for EdOptions {
    fn default() -> Self {
        Self { solver: SolverOptions::default(), memory_ceiling: DEFAULT_MEMORY_CEILING }
    }
}

impl EdOptions {
    /// Defaults, with the memory ceiling read from [`MEMORY_CEILING_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(MEMORY_CEILING_ENV) {
            opts.memory_ceiling = raw
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{MEMORY_CEILING_ENV} must be a byte count, got {raw:?}")))?;
        }
        Ok(opts)
    }
}

/// Rough peak memory for solving one sector of dimension `dim`.
pub fn estimated_bytes(spec: &ChainSpec, dim: u128, opts: &SolverOptions) -> u128 {
    let state_bytes = 2 * spec.sites as u128 + 48;
    // basis, index map and triplets (diagonal + coupling + hopping, 24 bytes each)
    let per_row = 3 * state_bytes + 24 * (1 + 2 * spec.sites as u128 + 2 * spec.sites as u128);
    let structure = dim.saturating_mul(per_row);
    let dense = opts.method == Method::Dense
        || (opts.method == Method::Auto && dim <= opts.dense_threshold as u128);
    let solve = if dense {
        // matrix plus eigenvector workspace
        dim.saturating_mul(dim).saturating_mul(16)
    } else {
        dim.saturating_mul(8 * (opts.max_iterations as u128 + 2))
    };
    structure.saturating_add(solve)
}

/// Ground energy of one sector of `spec`.
pub fn sector_ground_energy(spec: &ChainSpec, excitations: usize, opts: &EdOptions) -> Result<f64> {
    let dim = sector_dimension(spec.sites, excitations, spec.n_max);
    let required = estimated_bytes(spec, dim, &opts.solver);
    if required > opts.memory_ceiling {
        return Err(Error::Resource { dimension: dim, required_bytes: required, ceiling_bytes: opts.memory_ceiling });
    }
    let basis = enumerate_sector(spec.sites, excitations, spec.n_max)?;
    if basis.is_empty() {
        return Err(invalid(format!("sector {excitations} is empty")));
    }
    let h = build_hamiltonian(spec, &basis)?;
    ground_energy(&h, &opts.solver)
}

/// Sector ground energies and chemical potentials around filling `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdResult {
    pub spec: ChainSpec,
    pub filling: usize,
    /// `(N, E_0(N))` for `N = Ln - 1, Ln, Ln + 1`.
    pub sector_energies: Vec<(usize, f64)>,
    /// `(μ^P - ω_c)/g`.
    pub mu_particle: f64,
    /// `(μ^H - ω_c)/g`.
    pub mu_hole: f64,
    pub warnings: Vec<String>,
}

impl EdResult {
    pub fn gap(&self) -> f64 {
        self.mu_particle - self.mu_hole
    }
}

pub fn chemical_potentials_ed(spec: &ChainSpec, filling: usize, opts: &EdOptions) -> Result<EdResult> {
    if filling == 0 {
        return Err(invalid("filling must be at least 1"));
    }
    let mut warnings = Vec::new();
    if (spec.n_max as usize) < filling + 2 {
        warnings.push(format!(
            "boson cutoff {} is below filling + 2 = {}; the particle sector is truncated",
            spec.n_max,
            filling + 2
        ));
    }
    let centre = spec.sites * filling;
    let sectors = [centre - 1, centre, centre + 1];
    let energies = sectors
        .iter()
        .map(|&n| sector_ground_energy(spec, n, opts))
        .collect::<Result<Vec<_>>>()?;
    let (p, g) = (&spec.params, spec.params.g());
    let mu_particle = (energies[2] - energies[1] - p.omega_c()) / g;
    let mu_hole = (energies[1] - energies[0] - p.omega_c()) / g;
    Ok(EdResult {
        spec: *spec,
        filling,
        sector_energies: sectors.into_iter().zip(energies).collect(),
        mu_particle,
        mu_hole,
        warnings,
    })
}
