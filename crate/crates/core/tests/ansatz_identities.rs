use jchm_core::ansatz::{amplitudes, build_table, recurrence_coefficient, window_identity_check, MAX_WINDOW};
use jchm_core::{Error, ExcitationKind};
use num_complex::Complex64;
use proptest::prelude::*;

/// Both sides of the finite-window identity, evaluated from explicit index loops.
fn window_sides(c: f64, alpha: &[Complex64]) -> (Complex64, Complex64) {
    let l = alpha.len();
    let mut hopping = Complex64::new(0.0, 0.0);
    for i in 0..l {
        for j in 0..l {
            if i.abs_diff(j) == 1 {
                hopping += alpha[i].conj() * alpha[j];
            }
        }
    }
    let mut rhs = Complex64::new(0.0, 0.0);
    for a in alpha.iter().take(l - 1).skip(1) {
        rhs += c * a.conj() * a;
    }
    rhs += alpha[0].conj() * alpha[1] + alpha[l - 1].conj() * alpha[l - 2];
    (hopping, rhs)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn recurrence_holds_over_long_tables() {
    for kind in [ExcitationKind::Particle, ExcitationKind::Hole] {
        let t = build_table(kind, 64).unwrap();
        assert_eq!(t.max_distance(), 64);
        assert_eq!(t.lambda[0], 2.0);
        assert_eq!(t.lambda[1], t.c);
        for k in 1..64 {
            let defect = t.lambda[k + 1] - t.c * t.lambda[k] + t.lambda[k - 1];
            assert!(defect.abs() <= 1e-12 * t.lambda[k + 1].abs().max(1.0), "{kind} k={k}");
        }
        assert!((t.lambda[2] - 2.0 * t.lambda[1]).abs() < 1e-14);
    }
}

#[test]
fn hole_coefficients_stay_bounded_particle_coefficients_grow() {
    let hole = build_table(ExcitationKind::Hole, 64).unwrap();
    assert!(hole.lambda.iter().all(|l| l.abs() <= 2.0 + 1e-12));
    // λ_k = 2 cos(kθ) with 2 cos θ = c
    let theta = (0.5 * hole.c).acos();
    for (k, l) in hole.lambda.iter().enumerate() {
        assert!((l - 2.0 * (k as f64 * theta).cos()).abs() < 1e-12, "k={k}");
    }
    let particle = build_table(ExcitationKind::Particle, 40).unwrap();
    assert!(particle.lambda[1..].windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn named_windows_pass() {
    let cases = [
        (ExcitationKind::Hole, 3, [c(1.0, 0.0), c(1.0, 0.0)]),
        (ExcitationKind::Hole, 64, [c(1.0, 0.0), c(0.0, 1.0)]),
        (ExcitationKind::Particle, 32, [c(1.0, 0.0), c(0.5, 0.0)]),
        (ExcitationKind::Hole, MAX_WINDOW, [c(0.3, -0.2), c(-1.1, 0.7)]),
    ];
    for (kind, len, seeds) in cases {
        let report = window_identity_check(kind, len, seeds).unwrap();
        let alpha = amplitudes(recurrence_coefficient(kind).unwrap(), len, seeds);
        let (lhs, rhs) = window_sides(recurrence_coefficient(kind).unwrap(), &alpha);
        let scale = alpha.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
        assert!((lhs - rhs).norm() / scale.max(1.0) <= 1e-10, "oracle {kind} L={len}");
        assert!(report.passes(1e-10), "{report:?}");
        assert!((report.scale - scale).abs() <= 1e-15 * scale);
    }
}

#[test]
fn long_particle_windows_are_refused() {
    let r = window_identity_check(ExcitationKind::Particle, 512, [c(1.0, 0.0), c(0.5, 0.0)]);
    assert!(matches!(r, Err(Error::OverflowGuard { .. })));
}

#[test]
fn wrong_coefficient_breaks_the_identity() {
    // amplitudes from the printed hole sign, checked against the adopted coefficient
    let alpha = amplitudes(0.732_050_807_568_877_2, 64, [c(1.0, 0.0), c(0.0, 1.0)]);
    let (lhs, rhs) = window_sides(recurrence_coefficient(ExcitationKind::Hole).unwrap(), &alpha);
    assert!((lhs - rhs).norm() > 1e-3);
}

proptest! {
    #[test]
    fn hole_windows_hold_for_any_seed(
        len in 3usize..1024,
        a in (-2.0..2.0f64, -2.0..2.0f64),
        b in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        prop_assume!(a.0.abs() + a.1.abs() + b.0.abs() + b.1.abs() > 1e-3);
        let r = window_identity_check(ExcitationKind::Hole, len, [c(a.0, a.1), c(b.0, b.1)]).unwrap();
        prop_assert!(r.passes(1e-10), "{:?}", r);
    }

    #[test]
    fn particle_windows_hold_for_any_seed(
        len in 3usize..=32,
        a in (-2.0..2.0f64, -2.0..2.0f64),
        b in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        prop_assume!(a.0.abs() + a.1.abs() + b.0.abs() + b.1.abs() > 1e-3);
        let r = window_identity_check(ExcitationKind::Particle, len, [c(a.0, a.1), c(b.0, b.1)]).unwrap();
        prop_assert!(r.passes(1e-10), "{:?}", r);
    }
}
