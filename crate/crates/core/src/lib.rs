//! Mott-lobe phase diagram of the one-dimensional Jaynes-Cummings-Hubbard chain.
//!
//! The hopping term is collapsed onto the total boson number by a linear
//! recurrence between neighbouring cavity amplitudes ([`ansatz`]), which turns
//! the lattice problem into a single Jaynes-Cummings site with a shifted
//! cavity frequency ([`spectrum`]). Particle and hole chemical potentials,
//! lobe boundaries and the critical hopping follow in [`phase`]. The [`ed`]
//! module diagonalizes the full chain Hamiltonian on small rings as an
//! independent reference, and [`cli`] holds the table emitters behind the
//! `jchm` binary.

pub mod ansatz;
pub mod cli;
pub mod ed;
pub mod error;
pub mod phase;
pub mod spectrum;

pub use error::{Error, Result};
pub use spectrum::{Branch, DressedLevel, ExcitationKind, SystemParams};

/// `√3 + 1`, the particle recurrence coefficient and cavity-frequency shift per unit hopping.
pub const PARTICLE_SHIFT: f64 = 2.732_050_807_568_877;
/// `√3 − 1`, the magnitude of the hole recurrence coefficient.
pub const HOLE_SHIFT: f64 = 0.732_050_807_568_877_2;
