//! Particle and hole chemical potentials, Mott-lobe boundaries and the
//! critical hopping at which they meet.
//!
//! All chemical potentials are energy differences of the reduced spectra:
//! `μ^P_n = E^P_{n+1,-} - E^P_{n,-}` and `μ^H_n = E^H_{n,-} - E^H_{n-1,-}`,
//! with `E_{0} = 0`. Values are reported as `(μ - ω_c)/g`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::spectrum::{lower_energy, ExcitationKind, SystemParams};

/// One point of the `(Δ/g, n, J/g)` phase-diagram plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LobeQuery {
    pub delta_over_g: f64,
    pub lobe: u32,
    pub j_over_g: f64,
}

impl LobeQuery {
    pub fn new(delta_over_g: f64, lobe: u32, j_over_g: f64) -> Result<Self> {
        if lobe == 0 {
            return Err(invalid("lobe index must be at least 1"));
        }
        if !(j_over_g >= 0.0) || !j_over_g.is_finite() {
            return Err(invalid(format!("J/g must be finite and non-negative, got {j_over_g}")));
        }
        if !delta_over_g.is_finite() {
            return Err(invalid("Δ/g must be finite"));
        }
        Ok(Self { delta_over_g, lobe, j_over_g })
    }

    fn params(&self) -> SystemParams {
        SystemParams::from_detuning(self.delta_over_g).expect("finite detuning, unit coupling")
    }
}

/// `(μ^P - ω_c)/g` for absolute parameters and absolute hopping `j`.
pub fn mu_particle_at(params: &SystemParams, lobe: u32, j: f64) -> Result<f64> {
    if lobe == 0 {
        return Err(invalid("lobe index must be at least 1"));
    }
    let kind = ExcitationKind::Particle;
    let upper = lower_energy(lobe + 1, kind, j, params)?;
    let lower = lower_energy(lobe, kind, j, params)?;
    Ok((upper - lower - params.omega_c()) / params.g())
}

/// `(μ^H - ω_c)/g` for absolute parameters and absolute hopping `j`.
pub fn mu_hole_at(params: &SystemParams, lobe: u32, j: f64) -> Result<f64> {
    if lobe == 0 {
        return Err(invalid("lobe index must be at least 1"));
    }
    let kind = ExcitationKind::Hole;
    let upper = lower_energy(lobe, kind, j, params)?;
    let lower = lower_energy(lobe - 1, kind, j, params)?;
    Ok((upper - lower - params.omega_c()) / params.g())
}

/// Lobe width `(μ^P - μ^H)/g`; positive inside the Mott lobe.
pub fn gap_at(params: &SystemParams, lobe: u32, j: f64) -> Result<f64> {
    Ok(mu_particle_at(params, lobe, j)? - mu_hole_at(params, lobe, j)?)
}

pub fn mu_particle(q: &LobeQuery) -> f64 {
    mu_particle_at(&q.params(), q.lobe, q.j_over_g).expect("validated query")
}

pub fn mu_hole(q: &LobeQuery) -> f64 {
    mu_hole_at(&q.params(), q.lobe, q.j_over_g).expect("validated query")
}

pub fn gap(q: &LobeQuery) -> f64 {
    mu_particle(q) - mu_hole(q)
}

/// Upper and lower lobe boundary at one hopping value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub j_over_g: f64,
    pub mu_upper: f64,
    pub mu_lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCurve {
    pub delta_over_g: f64,
    pub lobe: u32,
    pub samples: Vec<BoundarySample>,
}

/// Samples both boundaries on a strictly ascending, non-negative J/g grid.
pub fn boundary_curve(delta_over_g: f64, lobe: u32, j_grid: &[f64]) -> Result<BoundaryCurve> {
    if j_grid.is_empty() {
        return Err(invalid("J/g grid is empty"));
    }
    if j_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("J/g grid must be strictly ascending"));
    }
    let samples = j_grid
        .iter()
        .map(|&j| {
            let q = LobeQuery::new(delta_over_g, lobe, j)?;
            Ok(BoundarySample {
                j_over_g: j,
                mu_upper: mu_particle(&q),
                mu_lower: mu_hole(&q),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve { delta_over_g, lobe, samples })
}

/// Search bracket for the critical hopping, in units of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalSearch {
    pub j_lo: f64,
    pub j_hi: f64,
    /// Grid cells scanned for the first sign change before bisecting.
    pub scan_points: usize,
}

impl Default for CriticalSearch {
    fn default() -> Self {
        Self { j_lo: 0.0, j_hi: 2.0, scan_points: 64 }
    }
}

/// The lobe tip, where the particle and hole boundaries meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub delta_over_g: f64,
    pub lobe: u32,
    pub jc_over_g: f64,
    /// Critical hopping in the same units as `g`.
    pub jc: f64,
    pub mu_at_crossing: f64,
    pub solver_residual: f64,
}

/// Largest accepted `|gap(J_c)|`.
pub const CRITICAL_RESIDUAL_TOL: f64 = 1e-10;

/// Critical hopping in units of `g` for the default bracket `[0, 2]`.
pub fn critical_hopping(delta_over_g: f64, lobe: u32) -> Result<CriticalPoint> {
    critical_hopping_with(&SystemParams::from_detuning(delta_over_g)?, lobe, &CriticalSearch::default())
}

/// Smallest root of the lobe width inside `search` (given in units of `g`).
///
/// The bracket is scanned on a uniform grid for the first sign change from
/// positive to non-positive, and that cell is bisected down to floating-point
/// resolution.
pub fn critical_hopping_with(
    params: &SystemParams,
    lobe: u32,
    search: &CriticalSearch,
) -> Result<CriticalPoint> {
    if lobe == 0 {
        return Err(invalid("lobe index must be at least 1"));
    }
    let CriticalSearch { j_lo, j_hi, scan_points } = *search;
    if !(j_lo >= 0.0) || !(j_hi > j_lo) || !j_hi.is_finite() {
        return Err(invalid(format!("bad J/g bracket [{j_lo}, {j_hi}]")));
    }
    if scan_points == 0 {
        return Err(invalid("scan needs at least one cell"));
    }
    let g = params.g();
    let width = |j: f64| gap_at(params, lobe, j);
    let no_crossing = |reason: String| Error::NoCrossing { lo: j_lo, hi: j_hi, reason };

    let at_zero = width(0.0)?;
    if !(at_zero > 0.0) {
        return Err(no_crossing(format!("lobe is degenerate, width at J = 0 is {at_zero:e}")));
    }

    let node = |i: usize| g * (j_lo + (j_hi - j_lo) * i as f64 / scan_points as f64);
    let mut a = node(0);
    let mut fa = width(a)?;
    if !(fa > 0.0) {
        return Err(no_crossing(format!("width at the lower bracket end is {fa:e}")));
    }
    let mut cell = None;
    for i in 1..=scan_points {
        let b = node(i);
        let fb = width(b)?;
        if fb <= 0.0 {
            cell = Some((a, b, fb));
            break;
        }
        a = b;
        fa = fb;
    }
    let (mut a, mut b, mut fb) = cell.ok_or_else(|| no_crossing("width stays positive".into()))?;

    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = width(mid)?;
        if fm > 0.0 {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (jc, residual) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    let mu = 0.5 * (mu_particle_at(params, lobe, jc)? + mu_hole_at(params, lobe, jc)?);

    Ok(CriticalPoint {
        delta_over_g: params.delta() / g,
        lobe,
        jc_over_g: jc / g,
        jc,
        mu_at_crossing: mu,
        solver_residual: residual.abs(),
    })
}

/// Critical hopping for each detuning; failures are kept per point.
pub fn jc_vs_detuning(delta_grid: &[f64], lobe: u32) -> Vec<Result<CriticalPoint>> {
    delta_grid
        .par_iter()
        .map(|&d| critical_hopping(d, lobe))
        .collect()
}
