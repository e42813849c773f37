//! Occupation bases of fixed total excitation number.

use std::collections::HashMap;

use crate::error::{invalid, Result};

/// Photon occupations and qubit flags (`true` = excited) of every site.
///
/// Ordering is lexicographic on `(bosons, qubits)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub bosons: Vec<u8>,
    pub qubits: Vec<bool>,
}

impl BasisState {
    pub fn sites(&self) -> usize {
        self.bosons.len()
    }

    /// Total excitation number `Σ n_j + #up`.
    pub fn excitations(&self) -> usize {
        self.bosons.iter().map(|&n| n as usize).sum::<usize>()
            + self.qubits.iter().filter(|&&up| up).count()
    }

    pub fn qubits_up(&self) -> usize {
        self.qubits.iter().filter(|&&up| up).count()
    }
}

/// All states of one excitation sector with a state-to-index map.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    excitations: usize,
    sites: usize,
    n_max: u8,
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

impl SectorBasis {
    /// Builds a basis from an explicit state list in any order.
    pub fn from_states(sites: usize, n_max: u8, excitations: usize, states: Vec<BasisState>) -> Result<Self> {
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if s.sites() != sites || s.qubits.len() != sites {
                return Err(invalid(format!("state {i} does not have {sites} sites")));
            }
            if s.bosons.iter().any(|&n| n > n_max) {
                return Err(invalid(format!("state {i} exceeds the boson cutoff {n_max}")));
            }
            if s.excitations() != excitations {
                return Err(invalid(format!("state {i} lies outside sector {excitations}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(invalid(format!("state {i} is a duplicate")));
            }
        }
        Ok(Self { excitations, sites, n_max, states, index })
    }

    pub fn excitations(&self) -> usize {
        self.excitations
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn n_max(&self) -> u8 {
        self.n_max
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn is_canonical(&self) -> bool {
        self.states.windows(2).all(|w| w[0] < w[1])
    }
}

/// Number of ways to put `bosons` photons on `sites` sites with at most `n_max` each.
fn boson_placements(sites: usize, bosons: usize, n_max: usize) -> u128 {
    // ways[b] for the sites processed so far
    let mut ways = vec![0u128; bosons + 1];
    ways[0] = 1;
    for _ in 0..sites {
        let mut next = vec![0u128; bosons + 1];
        for (b, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for extra in 0..=n_max.min(bosons - b) {
                next[b + extra] = next[b + extra].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[bosons]
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Sector dimension `Σ_k C(L, k) · placements(L, N - k, n_max)`, saturating.
pub fn sector_dimension(sites: usize, excitations: usize, n_max: u8) -> u128 {
    (0..=sites.min(excitations))
        .map(|up| binomial(sites, up).saturating_mul(boson_placements(sites, excitations - up, n_max as usize)))
        .fold(0u128, u128::saturating_add)
}

/// Canonically ordered basis of the `excitations` sector.
pub fn enumerate_sector(sites: usize, excitations: usize, n_max: u8) -> Result<SectorBasis> {
    if sites == 0 {
        return Err(invalid("chain needs at least one site"));
    }
    if n_max == 0 {
        return Err(invalid("boson cutoff must be at least 1"));
    }
    if excitations > sites * (n_max as usize + 1) {
        return Err(invalid(format!(
            "sector {excitations} exceeds the maximum {} for {sites} sites with cutoff {n_max}",
            sites * (n_max as usize + 1)
        )));
    }
    let mut states = Vec::new();
    let mut bosons = vec![0u8; sites];
    push_occupations(0, excitations, n_max, &mut bosons, &mut states);
    debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
    SectorBasis::from_states(sites, n_max, excitations, states)
}

fn push_occupations(site: usize, budget: usize, n_max: u8, bosons: &mut Vec<u8>, out: &mut Vec<BasisState>) {
    let sites = bosons.len();
    if site == sites {
        if budget <= sites {
            let mut qubits = vec![false; sites];
            push_flags(0, budget, &mut qubits, bosons, out);
        }
        return;
    }
    for n in 0..=(n_max as usize).min(budget) {
        bosons[site] = n as u8;
        push_occupations(site + 1, budget - n, n_max, bosons, out);
    }
    bosons[site] = 0;
}

fn push_flags(site: usize, up: usize, qubits: &mut Vec<bool>, bosons: &[u8], out: &mut Vec<BasisState>) {
    let remaining = qubits.len() - site;
    if up > remaining {
        return;
    }
    if site == qubits.len() {
        out.push(BasisState { bosons: bosons.to_vec(), qubits: qubits.clone() });
        return;
    }
    qubits[site] = false;
    push_flags(site + 1, up, qubits, bosons, out);
    if up > 0 {
        qubits[site] = true;
        push_flags(site + 1, up - 1, qubits, bosons, out);
        qubits[site] = false;
    }
}
