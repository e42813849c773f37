//! Dressed-state spectrum of a single Jaynes-Cummings site and its
//! particle/hole variants with a hopping-shifted cavity frequency.

use std::fmt;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::{HOLE_SHIFT, PARTICLE_SHIFT};

/// Default upper bound on the excitation number printed by spectrum tables.
pub const DEFAULT_N_MAX_LEVEL: u32 = 64;

/// Cavity frequency, qubit splitting and qubit-photon coupling of one site.
///
/// The detuning is always derived as `omega_c - omega_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    omega_c: f64,
    omega_z: f64,
    g: f64,
}

impl SystemParams {
    pub fn new(omega_c: f64, omega_z: f64, g: f64) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(invalid(format!("coupling g must be positive and finite, got {g}")));
        }
        if !omega_c.is_finite() || !omega_z.is_finite() {
            return Err(invalid("frequencies must be finite"));
        }
        Ok(Self { omega_c, omega_z, g })
    }

    /// Parameters in units of `g` with the cavity frequency as the energy
    /// reference: `g = 1`, `omega_c = 0`, `omega_z = -delta_over_g`.
    pub fn from_detuning(delta_over_g: f64) -> Result<Self> {
        Self::new(0.0, -delta_over_g, 1.0)
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn delta(&self) -> f64 {
        self.omega_c - self.omega_z
    }

    /// Multiplies every frequency and the coupling by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(invalid(format!("scale factor must be positive, got {s}")));
        }
        Self::new(self.omega_c * s, self.omega_z * s, self.g * s)
    }

    fn with_omega_c(&self, omega_c: f64) -> Self {
        Self { omega_c, ..*self }
    }
}

/// Upper (`+`) or lower (`-`) member of a polariton doublet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

/// Which reduced Hamiltonian a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExcitationKind {
    Particle,
    Hole,
    /// Plain Jaynes-Cummings site, no hopping shift.
    Bare,
}

impl ExcitationKind {
    pub fn name(self) -> &'static str {
        match self {
            ExcitationKind::Particle => "particle",
            ExcitationKind::Hole => "hole",
            ExcitationKind::Bare => "bare",
        }
    }

    /// Shift of the cavity frequency per unit hopping.
    pub fn cavity_shift(self) -> f64 {
        match self {
            ExcitationKind::Particle => -PARTICLE_SHIFT,
            ExcitationKind::Hole => HOLE_SHIFT,
            ExcitationKind::Bare => 0.0,
        }
    }
}

impl fmt::Display for ExcitationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One dressed eigenstate `|n, ±>` with its energy and mixing coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DressedLevel {
    pub n: u32,
    pub branch: Branch,
    pub energy: f64,
    pub sin_half_theta: f64,
    pub cos_half_theta: f64,
}

/// Rabi splitting `sqrt(delta_eff^2 + 4 g^2 n)` of the `n`-excitation doublet.
pub fn chi(n: u32, delta_eff: f64, g: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("excitation number must be at least 1"));
    }
    if !(g > 0.0) {
        return Err(invalid(format!("coupling g must be positive, got {g}")));
    }
    Ok(chi_unchecked(n, delta_eff, g))
}

fn chi_unchecked(n: u32, delta_eff: f64, g: f64) -> f64 {
    (delta_eff * delta_eff + 4.0 * g * g * f64::from(n)).sqrt()
}

fn check_hopping(j: f64) -> Result<()> {
    if j >= 0.0 && j.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("hopping J must be finite and non-negative, got {j}")))
    }
}

/// Site parameters seen by the reduced Hamiltonian of `kind` at hopping `j`.
///
/// Particles see `omega_c - (√3+1) J`, holes `omega_c + (√3-1) J`; the qubit
/// splitting and coupling are untouched.
pub fn effective_params(kind: ExcitationKind, j: f64, params: &SystemParams) -> Result<SystemParams> {
    check_hopping(j)?;
    Ok(match kind {
        ExcitationKind::Bare => *params,
        _ => params.with_omega_c(params.omega_c + kind.cavity_shift() * j),
    })
}

/// Energy and mixing angle of `|n, branch>` for the reduced Hamiltonian of `kind`.
pub fn dressed_level(
    n: u32,
    branch: Branch,
    kind: ExcitationKind,
    j: f64,
    params: &SystemParams,
) -> Result<DressedLevel> {
    if n == 0 {
        return Err(invalid("dressed levels start at n = 1; use ground_energy for n = 0"));
    }
    let p = effective_params(kind, j, params)?;
    Ok(level_of(n, branch, &p))
}

fn level_of(n: u32, branch: Branch, p: &SystemParams) -> DressedLevel {
    let delta = p.delta();
    let chi = chi_unchecked(n, delta, p.g);
    let energy = (f64::from(n) - 0.5) * p.omega_c + 0.5 * p.omega_z + branch.sign() * 0.5 * chi;
    let ratio = delta / chi;
    DressedLevel {
        n,
        branch,
        energy,
        sin_half_theta: (0.5 * (1.0 - ratio)).max(0.0).sqrt(),
        cos_half_theta: (0.5 * (1.0 + ratio)).max(0.0).sqrt(),
    }
}

/// Energy of `|0, down>`, zero for every kind: no boson, no qubit excitation.
pub fn ground_energy(_kind: ExcitationKind, _j: f64, _params: &SystemParams) -> f64 {
    0.0
}

/// Energy of the lowest state with `n` excitations (0 for `n = 0`).
pub fn lower_energy(n: u32, kind: ExcitationKind, j: f64, params: &SystemParams) -> Result<f64> {
    if n == 0 {
        check_hopping(j)?;
        return Ok(ground_energy(kind, j, params));
    }
    Ok(dressed_level(n, Branch::Lower, kind, j, params)?.energy)
}

/// Largest deviation between a numerical eigensolve of the `{|n,down>, |n-1,up>}`
/// block and the closed-form doublet energies.
pub fn jc_numeric_check(n: u32, params: &SystemParams) -> Result<f64> {
    if n == 0 {
        return Err(invalid("excitation number must be at least 1"));
    }
    let nf = f64::from(n);
    let coupling = params.g * nf.sqrt();
    let block = Matrix2::new(
        nf * params.omega_c,
        coupling,
        coupling,
        (nf - 1.0) * params.omega_c + params.omega_z,
    );
    let eig = block.symmetric_eigen();
    let (lo, hi) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (eig.eigenvalues[0], eig.eigenvalues[1])
    } else {
        (eig.eigenvalues[1], eig.eigenvalues[0])
    };
    let lower = level_of(n, Branch::Lower, params).energy;
    let upper = level_of(n, Branch::Upper, params).energy;
    Ok((lo - lower).abs().max((hi - upper).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resonant(omega: f64, g: f64) -> SystemParams {
        SystemParams::new(omega, omega, g).unwrap()
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(1, 0.0, 1.0).unwrap(), 2.0);
        assert_eq!(chi(2, 1.0, 1.0).unwrap(), 3.0);
        // sqrt(7), 40-digit reference
        assert!((chi(3, 2.0, 0.5).unwrap() - 2.645_751_311_064_590_6).abs() < 1e-15);
    }

    #[test]
    fn chi_rejects_bad_input() {
        assert!(chi(0, 0.0, 1.0).is_err());
        assert!(chi(1, 0.0, 0.0).is_err());
        assert!(chi(1, 0.0, -1.0).is_err());
    }

    #[test]
    fn zero_coupling_rejected() {
        assert!(SystemParams::new(1.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn effective_params_shifts() {
        let p = SystemParams::new(10.0, 10.0, 1.0).unwrap();
        assert_eq!(effective_params(ExcitationKind::Bare, 0.5, &p).unwrap(), p);
        assert_eq!(effective_params(ExcitationKind::Particle, 0.0, &p).unwrap(), p);
        let h = effective_params(ExcitationKind::Hole, 1.0, &p).unwrap();
        assert!((h.omega_c() - 10.732_050_807_568_877).abs() < 1e-14);
        assert_eq!(h.omega_z(), 10.0);
        assert!((h.delta() - HOLE_SHIFT).abs() < 1e-14);
        let pp = effective_params(ExcitationKind::Particle, 1.0, &p).unwrap();
        assert!((pp.delta() + PARTICLE_SHIFT).abs() < 1e-14);
        assert!(effective_params(ExcitationKind::Hole, -0.1, &p).is_err());
    }

    #[test]
    fn resonant_single_excitation() {
        let p = resonant(5.0, 0.7);
        let lo = dressed_level(1, Branch::Lower, ExcitationKind::Bare, 0.0, &p).unwrap();
        let hi = dressed_level(1, Branch::Upper, ExcitationKind::Bare, 0.0, &p).unwrap();
        assert!((lo.energy - 4.3).abs() < 1e-14);
        assert!((hi.energy - 5.7).abs() < 1e-14);
        assert!((lo.sin_half_theta - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixing_angle_detuned() {
        let p = SystemParams::new(3.0, 0.0, 1.0).unwrap();
        let lvl = dressed_level(4, Branch::Lower, ExcitationKind::Bare, 0.0, &p).unwrap();
        assert!((lvl.sin_half_theta - 0.447_213_595_499_957_94).abs() < 1e-15);
        assert!(jc_numeric_check(4, &p).unwrap() < 1e-12 * lvl.energy.abs().max(1.0));
    }

    #[test]
    fn n_zero_rejected() {
        let p = resonant(1.0, 1.0);
        assert!(dressed_level(0, Branch::Lower, ExcitationKind::Bare, 0.0, &p).is_err());
        assert!(jc_numeric_check(0, &p).is_err());
    }

    #[test]
    fn ground_energy_is_zero() {
        let p = resonant(1.0, 1.0);
        assert_eq!(ground_energy(ExcitationKind::Bare, 0.0, &p), 0.0);
        assert_eq!(ground_energy(ExcitationKind::Particle, 0.3, &p), 0.0);
        assert_eq!(ground_energy(ExcitationKind::Hole, 0.193, &p), 0.0);
        assert_eq!(lower_energy(0, ExcitationKind::Hole, 0.193, &p).unwrap(), 0.0);
    }

    #[test]
    fn numeric_block_agrees() {
        let cases = [
            (1, resonant(1.0, 1.0)),
            (1, resonant(12.5, 0.2)),
            (2, SystemParams::new(1.0, 0.0, 1.0).unwrap()),
            (7, SystemParams::new(-4.0, 0.0, 0.3).unwrap()),
        ];
        for (n, p) in cases {
            let e = dressed_level(n, Branch::Upper, ExcitationKind::Bare, 0.0, &p).unwrap().energy;
            let r = jc_numeric_check(n, &p).unwrap();
            assert!(r <= 1e-12 * e.abs().max(1.0), "n={n} residual {r}");
        }
    }
}
