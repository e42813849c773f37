//! Recurrence-ansatz reduction of distance-k hopping sums.
//!
//! Both ansätze are written in the two-term form `a_{j+1} = c a_j - a_{j-1}`.
//! Summing over an infinite chain turns the distance-k hopping sum
//! `S_k = Σ_j (a†_{j+k} a_j + a†_j a_{j+k})` into `λ_k N̂` with
//! `λ_0 = 2`, `λ_1 = c` and `λ_{k+1} = c λ_k - λ_{k-1}`.
//!
//! Particles use `c = √3 + 1`; holes use `c = -(√3 - 1)`, the sign that
//! makes the hole sum recurrence, its closed values and the reduced hole
//! Hamiltonian agree with each other.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::spectrum::ExcitationKind;
use crate::{HOLE_SHIFT, PARTICLE_SHIFT};

/// Largest window accepted by [`window_identity_check`].
pub const MAX_WINDOW: usize = 4096;
/// Particle amplitudes grow like `2.33^j`; longer windows are refused.
pub const MAX_PARTICLE_WINDOW: usize = 200;

/// Recurrence coefficient `c` for a particle or hole ansatz.
pub fn recurrence_coefficient(kind: ExcitationKind) -> Result<f64> {
    match kind {
        ExcitationKind::Particle => Ok(PARTICLE_SHIFT),
        ExcitationKind::Hole => Ok(-HOLE_SHIFT),
        ExcitationKind::Bare => Err(invalid("the bare kind has no recurrence ansatz")),
    }
}

/// Reduction coefficients `λ_0..=λ_K` of the distance-k hopping sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnsatzTable {
    pub kind: ExcitationKind,
    pub c: f64,
    pub lambda: Vec<f64>,
}

impl AnsatzTable {
    /// Largest distance `K` held by the table.
    pub fn max_distance(&self) -> usize {
        self.lambda.len() - 1
    }

    /// Worst violation of `λ_{k+1} - c λ_k + λ_{k-1} = 0` over the table.
    pub fn recurrence_defect(&self) -> f64 {
        self.lambda
            .windows(3)
            .map(|w| (w[2] - self.c * w[1] + w[0]).abs())
            .fold(0.0, f64::max)
    }
}

pub fn build_table(kind: ExcitationKind, max_distance: usize) -> Result<AnsatzTable> {
    if max_distance < 2 {
        return Err(invalid(format!("table needs K >= 2, got {max_distance}")));
    }
    let c = recurrence_coefficient(kind)?;
    let mut lambda = Vec::with_capacity(max_distance + 1);
    lambda.push(2.0);
    lambda.push(c);
    for k in 1..max_distance {
        let next = c * lambda[k] - lambda[k - 1];
        lambda.push(next);
    }
    Ok(AnsatzTable { kind, c, lambda })
}

/// `|-λ_1 + λ_2 / 2|`: what is left of the hopping term after adding a
/// second-neighbour hopping of strength `+J/2`.
pub fn cancellation_residual_of(table: &AnsatzTable) -> f64 {
    (-table.lambda[1] + 0.5 * table.lambda[2]).abs()
}

pub fn cancellation_residual(kind: ExcitationKind) -> Result<f64> {
    Ok(cancellation_residual_of(&build_table(kind, 2)?))
}

/// Outcome of checking the nearest-neighbour sum identity on a finite window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowCheckReport {
    pub kind: ExcitationKind,
    pub len: usize,
    pub seeds: [(f64, f64); 2],
    /// `|T - c Σ_interior |α_j|² - boundary|`.
    pub residual: f64,
    /// `max_j |α_j|²`.
    pub scale: f64,
}

impl WindowCheckReport {
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.scale.max(1.0)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residual.is_finite() && self.scale.is_finite() && self.relative_residual() <= tol
    }
}

/// Amplitudes `α_0..α_{len-1}` generated by `α_{j+1} = c α_j - α_{j-1}`.
pub fn amplitudes(c: f64, len: usize, seeds: [Complex64; 2]) -> Vec<Complex64> {
    let mut alpha = Vec::with_capacity(len.max(2));
    alpha.extend_from_slice(&seeds);
    for j in 1..len.saturating_sub(1) {
        let next = alpha[j] * c - alpha[j - 1];
        alpha.push(next);
    }
    alpha.truncate(len);
    alpha
}

/// Checks the finite-window form of the nearest-neighbour reduction.
///
/// With `T = Σ_{j=0}^{L-2} (α_j* α_{j+1} + α_{j+1}* α_j)`, multiplying the
/// recurrence by `α_j*` and summing over the interior `1..=L-2` gives
///
/// `T = c Σ_{j=1}^{L-2} |α_j|² + α_0* α_1 + α_{L-1}* α_{L-2}`.
///
/// The two edge products are the only remnant of the infinite-chain index
/// shift.
pub fn window_identity_check(
    kind: ExcitationKind,
    len: usize,
    seeds: [Complex64; 2],
) -> Result<WindowCheckReport> {
    let c = recurrence_coefficient(kind)?;
    if !(3..=MAX_WINDOW).contains(&len) {
        return Err(invalid(format!("window length must lie in [3, {MAX_WINDOW}], got {len}")));
    }
    if kind == ExcitationKind::Particle && len > MAX_PARTICLE_WINDOW {
        return Err(Error::OverflowGuard {
            kind: kind.name(),
            len,
            limit: MAX_PARTICLE_WINDOW,
        });
    }
    if seeds.iter().all(|s| s.norm_sqr() == 0.0) {
        return Err(invalid("seed amplitudes must not both be zero"));
    }
    if seeds.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
        return Err(invalid("seed amplitudes must be finite"));
    }

    let alpha = amplitudes(c, len, seeds);
    let bilinear: f64 = alpha
        .windows(2)
        .map(|w| 2.0 * (w[0].conj() * w[1]).re)
        .sum();
    let interior: f64 = alpha[1..len - 1].iter().map(|a| a.norm_sqr()).sum();
    let boundary = alpha[0].conj() * alpha[1] + alpha[len - 1].conj() * alpha[len - 2];
    let residual = (Complex64::new(bilinear - c * interior, 0.0) - boundary).norm();
    let scale = alpha.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);

    Ok(WindowCheckReport {
        kind,
        len,
        seeds: [(seeds[0].re, seeds[0].im), (seeds[1].re, seeds[1].im)],
        residual,
        scale,
    })
}
