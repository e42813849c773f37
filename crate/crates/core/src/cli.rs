//! Table builders and emitters behind the `jchm` binary.
//!
//! Every command produces a [`Table`]: a manifest, column names and rows.
//! CSV output writes the manifest as `#` comment lines followed by a header
//! and the rows; JSON output is one object `{manifest, columns, rows}`.
//! Numbers are rendered with 12 significant digits, and the JSON payload is
//! parsed back from the same strings so both formats carry identical values.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::ansatz::{build_table, cancellation_residual_of, window_identity_check};
use crate::ed::{chemical_potentials_ed, Boundary, ChainSpec, EdOptions};
use crate::error::{invalid, Error, Result};
use crate::phase::{self, boundary_curve, critical_hopping_with, jc_vs_detuning, CriticalSearch, LobeQuery};
use crate::spectrum::{dressed_level, Branch, ExcitationKind, SystemParams, DEFAULT_N_MAX_LEVEL};

pub const SIGNIFICANT_DIGITS: usize = 12;
/// Tolerance on algebraic coefficient identities.
pub const COEFFICIENT_TOL: f64 = 1e-14;
/// Relative tolerance on the finite-window identity.
pub const WINDOW_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(invalid(format!("unknown output format {other:?}"))),
        }
    }
}

/// Renders `x` with 12 significant digits, fixed notation for moderate
/// magnitudes and scientific notation outside `[1e-5, 1e12)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exponent: i32 = sci[sci.find('e').expect("exponent marker") + 1..].parse().expect("integer exponent");
    if (-5..12).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_number(*x),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) if x.is_finite() => {
                let rounded: f64 = format_number(*x).parse().expect("formatted number parses");
                json!(rounded)
            }
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Text(t) => json!(t),
        }
    }
}

/// Command name, parameters, toolkit version and notes of one run.
///
/// Wall-clock duration is only recorded when requested, so default output
/// is byte-for-byte reproducible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Map<String, Value>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, params: Value) -> Self {
        let params = match params {
            Value::Object(map) => map,
            other => {
                let mut map = Map::new();
                map.insert("value".into(), other);
                map
            }
        };
        Self {
            command: command.to_string(),
            params,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_ms: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub manifest: RunManifest,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(manifest: RunManifest, columns: &[&str]) -> Self {
        Self { manifest, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let m = &self.manifest;
        let mut out = String::new();
        let _ = writeln!(out, "# command: {}", m.command);
        let _ = writeln!(out, "# version: {}", m.version);
        let _ = writeln!(out, "# params: {}", Value::Object(m.params.clone()));
        if let Some(ms) = m.duration_ms {
            let _ = writeln!(out, "# duration_ms: {}", format_number(ms));
        }
        for note in &m.notes {
            let _ = writeln!(out, "# note: {note}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({
            "manifest": self.manifest,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(invalid(format!("need at least 2 steps, got {steps}")));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(invalid(format!("range [{lo}, {hi}] must be finite and increasing")));
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| if i == last { hi } else { lo + (hi - lo) * i as f64 / last as f64 })
        .collect())
}

/// Dressed-level table for `n = 1..=levels`, energies in absolute units.
///
/// `delta_over_g` and `j_over_g` are in units of `g`; `omega_c` and `g` are absolute.
pub fn spectrum_table(
    omega_c: f64,
    g: f64,
    delta_over_g: f64,
    levels: u32,
    kind: ExcitationKind,
    j_over_g: f64,
) -> Result<Table> {
    if levels == 0 || levels > DEFAULT_N_MAX_LEVEL {
        return Err(invalid(format!("levels must lie in [1, {DEFAULT_N_MAX_LEVEL}], got {levels}")));
    }
    let params = SystemParams::new(omega_c, omega_c - delta_over_g * g, g)?;
    let j = j_over_g * g;
    let manifest = RunManifest::new(
        "spectrum",
        json!({"omega_c": omega_c, "g": g, "delta_over_g": delta_over_g, "levels": levels,
               "kind": kind.name(), "j_over_g": j_over_g}),
    );
    let mut table = Table::new(manifest, &["n", "E_lower", "E_upper", "sin_half_theta"]);
    for n in 1..=levels {
        let lo = dressed_level(n, Branch::Lower, kind, j, &params)?;
        let hi = dressed_level(n, Branch::Upper, kind, j, &params)?;
        table.rows.push(vec![
            Cell::Int(i64::from(n)),
            Cell::Num(lo.energy),
            Cell::Num(hi.energy),
            Cell::Num(lo.sin_half_theta),
        ]);
    }
    Ok(table)
}

fn lobe_note(lobe: u32) -> Option<String> {
    (lobe >= 2).then(|| format!("extension: lobe {lobe} uses the same energy-difference definitions as lobe 1"))
}

pub fn boundary_table(delta_over_g: f64, lobe: u32, j_min: f64, j_max: f64, steps: usize) -> Result<Table> {
    let grid = linspace(j_min, j_max, steps)?;
    let curve = boundary_curve(delta_over_g, lobe, &grid)?;
    let mut manifest = RunManifest::new(
        "boundary",
        json!({"delta_over_g": delta_over_g, "lobe": lobe, "j_min": j_min, "j_max": j_max, "steps": steps}),
    );
    manifest.notes.extend(lobe_note(lobe));
    let mut table = Table::new(manifest, &["J_over_g", "mu_upper_minus_wc_over_g", "mu_lower_minus_wc_over_g"]);
    for s in &curve.samples {
        table.rows.push(vec![Cell::Num(s.j_over_g), Cell::Num(s.mu_upper), Cell::Num(s.mu_lower)]);
    }
    Ok(table)
}

pub fn critical_table(delta_over_g: f64, lobe: u32, search: &CriticalSearch) -> Result<Table> {
    let params = SystemParams::from_detuning(delta_over_g)?;
    let cp = critical_hopping_with(&params, lobe, search)?;
    let mut manifest = RunManifest::new(
        "critical",
        json!({"delta_over_g": delta_over_g, "lobe": lobe, "j_lo": search.j_lo, "j_hi": search.j_hi,
               "scan_points": search.scan_points}),
    );
    manifest.notes.extend(lobe_note(lobe));
    let mut table = Table::new(
        manifest,
        &["delta_over_g", "lobe", "jc_over_g", "mu_minus_wc_over_g", "solver_residual"],
    );
    table.rows.push(vec![
        Cell::Num(cp.delta_over_g),
        Cell::Int(i64::from(cp.lobe)),
        Cell::Num(cp.jc_over_g),
        Cell::Num(cp.mu_at_crossing),
        Cell::Num(cp.solver_residual),
    ]);
    Ok(table)
}

pub fn sweep_table(delta_min: f64, delta_max: f64, steps: usize, lobe: u32) -> Result<Table> {
    let grid = linspace(delta_min, delta_max, steps)?;
    if lobe == 0 {
        return Err(invalid("lobe index must be at least 1"));
    }
    let results = jc_vs_detuning(&grid, lobe);
    let mut manifest = RunManifest::new(
        "sweep",
        json!({"delta_min": delta_min, "delta_max": delta_max, "steps": steps, "lobe": lobe}),
    );
    manifest.notes.extend(lobe_note(lobe));
    let mut rows = Vec::with_capacity(grid.len());
    for (delta, result) in grid.iter().zip(results) {
        match result {
            Ok(cp) => rows.push(vec![Cell::Num(*delta), Cell::Num(cp.jc_over_g)]),
            Err(e) => {
                manifest.notes.push(format!("delta_over_g={}: {e}", format_number(*delta)));
                rows.push(vec![Cell::Num(*delta), Cell::Empty]);
            }
        }
    }
    let mut table = Table::new(manifest, &["delta_over_g", "jc_over_g"]);
    table.rows = rows;
    Ok(table)
}

/// Coefficient table, cancellation residual and window residual, plus
/// whether every tolerance held.
pub fn ansatz_table(
    kind: ExcitationKind,
    max_distance: usize,
    window: usize,
    seeds: [Complex64; 2],
) -> Result<(Table, bool)> {
    let t = build_table(kind, max_distance)?;
    let cancel = cancellation_residual_of(&t);
    let report = window_identity_check(kind, window, seeds)?;
    let defect = t.recurrence_defect();
    let pass_cancel = cancel <= COEFFICIENT_TOL;
    let pass_window = report.passes(WINDOW_TOL);

    let mut manifest = RunManifest::new(
        "ansatz-check",
        json!({"kind": kind.name(), "max_distance": max_distance, "window": window,
               "seeds": [[seeds[0].re, seeds[0].im], [seeds[1].re, seeds[1].im]]}),
    );
    manifest.notes.push(format!("recurrence coefficient c = {}", format_number(t.c)));
    manifest.notes.push(format!("cancellation {}", if pass_cancel { "pass" } else { "FAIL" }));
    manifest.notes.push(format!("window identity {}", if pass_window { "pass" } else { "FAIL" }));

    let mut table = Table::new(manifest, &["quantity", "k", "value"]);
    for (k, l) in t.lambda.iter().enumerate() {
        table.rows.push(vec![Cell::Text("lambda".into()), Cell::Int(k as i64), Cell::Num(*l)]);
    }
    table.rows.push(vec![Cell::Text("recurrence_defect".into()), Cell::Empty, Cell::Num(defect)]);
    table.rows.push(vec![Cell::Text("cancellation_residual".into()), Cell::Empty, Cell::Num(cancel)]);
    table.rows.push(vec![
        Cell::Text("window_relative_residual".into()),
        Cell::Int(window as i64),
        Cell::Num(report.relative_residual()),
    ]);
    Ok((table, pass_cancel && pass_window))
}

/// Finite chain in units of `g` with the cavity frequency as energy reference.
pub fn chain_in_units_of_g(
    sites: usize,
    n_max: u8,
    boundary: Boundary,
    j_over_g: f64,
    delta_over_g: f64,
) -> Result<ChainSpec> {
    ChainSpec::new(sites, n_max, boundary, j_over_g, SystemParams::from_detuning(delta_over_g)?)
}

pub fn ed_table(spec: &ChainSpec, filling: usize, opts: &EdOptions) -> Result<Table> {
    let r = chemical_potentials_ed(spec, filling, opts)?;
    let g = spec.params.g();
    let mut manifest = RunManifest::new(
        "ed",
        json!({"sites": spec.sites, "n_max": spec.n_max, "boundary": spec.boundary,
               "j_over_g": spec.hopping / g, "delta_over_g": spec.params.delta() / g, "filling": filling}),
    );
    manifest.notes.extend(r.warnings.iter().cloned());
    let mut table = Table::new(
        manifest,
        &["J_over_g", "mu_particle_minus_wc_over_g", "mu_hole_minus_wc_over_g", "gap_over_g",
          "E0_minus_over_g", "E0_over_g", "E0_plus_over_g"],
    );
    let mut row = vec![Cell::Num(spec.hopping / g), Cell::Num(r.mu_particle), Cell::Num(r.mu_hole), Cell::Num(r.gap())];
    row.extend(r.sector_energies.iter().map(|&(_, e)| Cell::Num(e / g)));
    table.rows.push(row);
    Ok(table)
}

/// Ansatz and ED chemical potentials side by side on a J/g grid.
pub fn ed_compare_table(
    sites: usize,
    n_max: u8,
    boundary: Boundary,
    delta_over_g: f64,
    filling: usize,
    j_grid: &[f64],
    opts: &EdOptions,
) -> Result<Table> {
    if j_grid.is_empty() || j_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("J/g grid must be nonempty and strictly ascending"));
    }
    let lobe = u32::try_from(filling).map_err(|_| invalid("filling too large"))?;
    let mut manifest = RunManifest::new(
        "ed-compare",
        json!({"sites": sites, "n_max": n_max, "boundary": boundary, "delta_over_g": delta_over_g,
               "filling": filling, "j_grid": j_grid}),
    );
    let mut table = Table::new(
        manifest.clone(),
        &["J_over_g", "mu_p_ansatz", "mu_p_ed", "mu_h_ansatz", "mu_h_ed", "gap_ed"],
    );
    let mut gaps = Vec::with_capacity(j_grid.len());
    for &j in j_grid {
        let spec = chain_in_units_of_g(sites, n_max, boundary, j, delta_over_g)?;
        let r = chemical_potentials_ed(&spec, filling, opts)?;
        for w in &r.warnings {
            if !manifest.notes.contains(w) {
                manifest.notes.push(w.clone());
            }
        }
        let q = LobeQuery::new(delta_over_g, lobe, j)?;
        gaps.push(r.gap());
        table.rows.push(vec![
            Cell::Num(j),
            Cell::Num(phase::mu_particle(&q)),
            Cell::Num(r.mu_particle),
            Cell::Num(phase::mu_hole(&q)),
            Cell::Num(r.mu_hole),
            Cell::Num(r.gap()),
        ]);
    }
    let closing = gaps.windows(2).all(|w| w[1] < w[0]);
    manifest.notes.push(format!(
        "ed gap strictly decreasing in J: {}",
        if closing { "yes" } else { "no" }
    ));
    table.manifest = manifest;
    Ok(table)
}

/// Parses `"re,im"` or `"re"` into a complex amplitude.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| invalid(format!("bad number {t:?} in {s:?}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(invalid(format!("expected \"re,im\", got {s:?}"))),
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| invalid(format!("bad grid value {t:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1.00000000000");
        assert_eq!(format_number(-0.41421356237309503), "-0.414213562373");
        assert_eq!(format_number(0.193052136216196), "0.193052136216");
        assert_eq!(format_number(5.497e-4), "0.000549700000000");
        assert_eq!(format_number(1.5e-7), "1.50000000000e-7");
        assert_eq!(format_number(123456.0), "123456.000000");
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 0.25, 6).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[5], 0.25);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(linspace(0.0, 0.0, 2).is_err());
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(1.0, 0.0, 4).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_complex("1, -2").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert_eq!(parse_grid("0,0.05, 0.1").unwrap(), vec![0.0, 0.05, 0.1]);
        assert!(parse_grid("0,x").is_err());
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn sweep_records_failures_as_empty_cells() {
        let t = sweep_table(0.0, 10.0, 2, 1).unwrap();
        assert_eq!(t.rows[1][1], Cell::Empty);
        assert!(t.manifest.notes.iter().any(|n| n.contains("no crossing")));
        assert!(t.to_csv().lines().last().unwrap().ends_with(','));
        assert!(t.to_json().contains("null"));
    }

    #[test]
    fn spectrum_level_bounds() {
        assert!(spectrum_table(0.0, 1.0, 0.0, 0, ExcitationKind::Bare, 0.0).is_err());
        assert!(spectrum_table(0.0, 1.0, 0.0, 65, ExcitationKind::Bare, 0.0).is_err());
    }
}
