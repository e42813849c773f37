use jchm_core::ed::solver::{dense_ground_energy, lanczos_ground_energy};
use jchm_core::ed::{
    build_hamiltonian, chemical_potentials_ed, enumerate_sector, sector_dimension, sector_ground_energy, BasisState,
    Boundary, ChainSpec, EdOptions, Method, SectorBasis, SolverOptions,
};
use jchm_core::{Error, SystemParams};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chain(sites: usize, n_max: u8, hopping: f64, delta_over_g: f64) -> ChainSpec {
    ChainSpec::new(sites, n_max, Boundary::Periodic, hopping, SystemParams::from_detuning(delta_over_g).unwrap()).unwrap()
}

/// Every `(bosons, qubits)` configuration, filtered by excitation number.
fn brute_force_states(sites: usize, excitations: usize, n_max: u8) -> Vec<BasisState> {
    let per_site = 2 * (n_max as usize + 1);
    let total = per_site.pow(sites as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut bosons = Vec::with_capacity(sites);
        let mut qubits = Vec::with_capacity(sites);
        for _ in 0..sites {
            let local = rest % per_site;
            rest /= per_site;
            bosons.push((local / 2) as u8);
            qubits.push(local % 2 == 1);
        }
        let s = BasisState { bosons, qubits };
        if s.excitations() == excitations {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Lowest energy of one isolated site holding `m` excitations under cutoff `n_max`.
fn site_energy(m: usize, n_max: usize, p: &SystemParams) -> f64 {
    let (wc, wz, g) = (p.omega_c(), p.omega_z(), p.g());
    if m == 0 {
        return 0.0;
    }
    if m == n_max + 1 {
        return n_max as f64 * wc + wz;
    }
    let a = m as f64 * wc;
    let d = (m as f64 - 1.0) * wc + wz;
    let off = g * (m as f64).sqrt();
    let mean = 0.5 * (a + d);
    mean - (0.25 * (a - d) * (a - d) + off * off).sqrt()
}

/// Best split of `excitations` over `sites` decoupled sites.
fn atomic_limit(sites: usize, excitations: usize, n_max: usize, p: &SystemParams) -> f64 {
    let mut best = vec![f64::INFINITY; excitations + 1];
    best[0] = 0.0;
    for _ in 0..sites {
        let mut next = vec![f64::INFINITY; excitations + 1];
        for (used, &e) in best.iter().enumerate() {
            if !e.is_finite() {
                continue;
            }
            for m in 0..=(n_max + 1).min(excitations - used) {
                next[used + m] = next[used + m].min(e + site_energy(m, n_max, p));
            }
        }
        best = next;
    }
    best[excitations]
}

#[test]
fn enumeration_matches_brute_force() {
    for (sites, n_max) in [(1, 1), (1, 3), (2, 2), (3, 2), (4, 3)] {
        for n in 0..=sites * (n_max as usize + 1) {
            let basis = enumerate_sector(sites, n, n_max).unwrap();
            let expected = brute_force_states(sites, n, n_max);
            assert_eq!(basis.states(), expected.as_slice(), "L={sites} N={n} cutoff={n_max}");
            assert_eq!(sector_dimension(sites, n, n_max), expected.len() as u128);
            assert!(basis.is_canonical());
        }
    }
}

#[test]
fn named_sector_sizes() {
    assert_eq!(enumerate_sector(1, 1, 1).unwrap().len(), 2);
    assert_eq!(enumerate_sector(2, 1, 1).unwrap().len(), 4);
    let b = enumerate_sector(2, 2, 2).unwrap();
    let by_up: Vec<usize> = (0..=2).map(|k| b.states().iter().filter(|s| s.qubits_up() == k).count()).collect();
    assert_eq!(by_up, vec![3, 4, 1]);
}

#[test]
fn hamiltonians_are_exactly_symmetric() {
    for boundary in [Boundary::Periodic, Boundary::Open] {
        for (sites, n_max, n) in [(1, 2, 1), (2, 2, 2), (3, 3, 4), (4, 3, 4), (4, 3, 5)] {
            let spec = ChainSpec::new(sites, n_max, boundary, 0.137, SystemParams::new(1.1, 0.8, 0.6).unwrap()).unwrap();
            let h = build_hamiltonian(&spec, &enumerate_sector(sites, n, n_max).unwrap()).unwrap();
            assert_eq!(h.max_asymmetry(), 0.0);
            let d = h.to_dense();
            assert_eq!(d.clone(), d.transpose());
        }
    }
}

#[test]
fn truncated_basis_leaks_out_of_sector() {
    let spec = chain(2, 2, 0.1, 0.0);
    let mut states = enumerate_sector(2, 1, 2).unwrap().states().to_vec();
    states.retain(|s| s.bosons != vec![0, 1]);
    let partial = SectorBasis::from_states(2, 2, 1, states).unwrap();
    assert!(matches!(build_hamiltonian(&spec, &partial), Err(Error::SectorLeak { .. })));
}

#[test]
fn atomic_limit_is_exact() {
    for delta in [0.0, -1.5, 2.0] {
        for (sites, n_max) in [(1, 2), (2, 2), (3, 3), (4, 3)] {
            let spec = chain(sites, n_max, 0.0, delta);
            for n in 1..=sites * 2 {
                let e = sector_ground_energy(&spec, n, &EdOptions::default()).unwrap();
                let oracle = atomic_limit(sites, n, n_max as usize, &spec.params);
                assert!((e - oracle).abs() < 1e-10, "Δ={delta} L={sites} N={n}: {e} vs {oracle}");
            }
        }
    }
}

#[test]
fn two_site_resonant_ground_energy() {
    let spec = chain(2, 2, 0.0, 0.0);
    let e = sector_ground_energy(&spec, 2, &EdOptions::default()).unwrap();
    assert!((e - 2.0 * (spec.params.omega_c() - 1.0)).abs() < 1e-12);
    let one = ChainSpec::new(1, 1, Boundary::Periodic, 0.0, SystemParams::new(1.0, 1.0, 1.0).unwrap()).unwrap();
    assert!(sector_ground_energy(&one, 1, &EdOptions::default()).unwrap().abs() < 1e-14);
}

#[test]
fn atomic_limit_chemical_potentials() {
    for sites in [2, 4] {
        let r = chemical_potentials_ed(&chain(sites, 3, 0.0, 0.0), 1, &EdOptions::default()).unwrap();
        assert!((r.mu_hole + 1.0).abs() < 1e-10);
        assert!((r.mu_particle - (1.0 - 2f64.sqrt())).abs() < 1e-10);
    }
}

#[test]
fn dense_and_lanczos_agree() {
    let spec = chain(4, 3, 0.1, 0.0);
    let h = build_hamiltonian(&spec, &enumerate_sector(4, 4, 3).unwrap()).unwrap();
    let dense = dense_ground_energy(&h);
    let lanczos = lanczos_ground_energy(&h, &SolverOptions { method: Method::Lanczos, ..Default::default() }).unwrap();
    assert!((dense - lanczos).abs() < 1e-8, "{dense} vs {lanczos}");
}

#[test]
fn lanczos_is_bit_stable() {
    let spec = chain(4, 3, 0.12, -0.5);
    let h = build_hamiltonian(&spec, &enumerate_sector(4, 5, 3).unwrap()).unwrap();
    let opts = SolverOptions { method: Method::Lanczos, ..Default::default() };
    let a = lanczos_ground_energy(&h, &opts).unwrap();
    let b = lanczos_ground_energy(&h, &opts).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn basis_order_does_not_change_the_spectrum() {
    let spec = chain(3, 3, 0.2, 0.4);
    let canonical = enumerate_sector(3, 3, 3).unwrap();
    let mut shuffled = canonical.states().to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    let permuted = SectorBasis::from_states(3, 3, 3, shuffled).unwrap();
    let mut a: Vec<f64> = build_hamiltonian(&spec, &canonical).unwrap().to_dense().symmetric_eigenvalues().iter().copied().collect();
    let mut b: Vec<f64> = build_hamiltonian(&spec, &permuted).unwrap().to_dense().symmetric_eigenvalues().iter().copied().collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn ground_energy_decreases_with_cutoff() {
    for n in [3, 4, 5] {
        let energies: Vec<f64> = (1..=4)
            .map(|n_max| sector_ground_energy(&chain(3, n_max, 0.2, 0.0), n, &EdOptions::default()).unwrap())
            .collect();
        assert!(energies.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{energies:?}");
    }
}

#[test]
fn matches_independent_kronecker_reference() {
    // Sector ground energies of the L = 4 resonant ring at J/g = 0.15 from a
    // separate Kronecker-product construction of the full Hilbert space.
    let reference = [
        (3u8, [-3.314_592_566_911_834_6, -4.273_148_147_836_149_5, -5.086_452_001_176_275]),
        (4u8, [-3.314_592_566_911_834_6, -4.273_379_737_538_622, -5.090_327_626_425_971]),
    ];
    for (n_max, energies) in reference {
        let r = chemical_potentials_ed(&chain(4, n_max, 0.15, 0.0), 1, &EdOptions::default()).unwrap();
        for ((_, e), want) in r.sector_energies.iter().zip(energies) {
            assert!((e - want).abs() < 1e-10, "cutoff {n_max}: {e} vs {want}");
        }
    }
}

#[test]
fn cutoff_convergence_at_four_sites() {
    let mu = |n_max| chemical_potentials_ed(&chain(4, n_max, 0.15, 0.0), 1, &EdOptions::default()).unwrap();
    let (c3, c4, c5) = (mu(3), mu(4), mu(5));
    assert!(c3.warnings.is_empty());
    // 3 -> 4 moves the particle branch by 3.6e-3 g; the hole branch is already converged
    assert!((c3.mu_particle - c4.mu_particle).abs() < 5e-3);
    assert!((c3.mu_hole - c4.mu_hole).abs() < 1e-3);
    // 4 -> 5 is inside the 1e-3 g band
    assert!((c4.mu_particle - c5.mu_particle).abs() < 1e-3);
    assert!((c4.mu_hole - c5.mu_hole).abs() < 1e-3);
    // successive corrections shrink
    assert!((c4.mu_particle - c5.mu_particle).abs() < (c3.mu_particle - c4.mu_particle).abs());
}

#[test]
fn ed_gap_closes_with_hopping() {
    let gaps: Vec<f64> = [0.0, 0.05, 0.10, 0.15]
        .iter()
        .map(|&j| chemical_potentials_ed(&chain(4, 3, j, 0.0), 1, &EdOptions::default()).unwrap().gap())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn memory_ceiling_is_enforced() {
    let opts = EdOptions { memory_ceiling: 1024, ..Default::default() };
    match chemical_potentials_ed(&chain(4, 3, 0.1, 0.0), 1, &opts) {
        Err(Error::Resource { dimension, .. }) => assert_eq!(dimension, 88),
        other => panic!("expected resource error, got {other:?}"),
    }
}
