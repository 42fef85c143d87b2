use serde::Serialize;

use dirac_pauli::oracle::{
    canonical_residual, compare_spectrum, first_order_residual, log_grid, standard_grid, FirstOrderReport,
    ResidualReport, SpectrumComparison,
};
use dirac_pauli::spectrum::{normalization_integral, normalization_numeric, NormalizationData};
use dirac_pauli::{
    angular_exponent, classify_state, energy_level, BoundState, Branch, Convention, Error, FieldConfig,
    PartnerMode, QuantumNumbers,
};

use crate::manifest::{Command, Format, RunManifest, SweepParam};
use crate::output::{to_csv, to_json, Cell};

pub const CANONICAL_THRESHOLD: f64 = 1e-9;
pub const SPECTRUM_THRESHOLD: f64 = 1e-6;
pub const INTEGRAL_THRESHOLD: f64 = 1e-10;
pub const PARTNER_RELATION_THRESHOLD: f64 = 1e-12;
pub const CLOSURE_THRESHOLD: f64 = 1e-9;
pub const CLOSED_NORMALIZATION_THRESHOLD: f64 = 1e-10;

/// Rendered output plus whether every hard check passed.
pub struct Rendered {
    pub bytes: Vec<u8>,
    pub passed: bool,
}

pub fn execute(m: &RunManifest) -> Result<Rendered, Error> {
    let bytes = match m.command {
        Command::Spectrum => spectrum(m)?,
        Command::Wavefunction => wavefunction(m)?,
        Command::Figures => figures(m)?,
        Command::Sweep => sweep(m)?,
        Command::Verify => return verify(m),
    };
    Ok(Rendered { bytes, passed: true })
}

fn pairs(m: &RunManifest) -> impl Iterator<Item = QuantumNumbers> + '_ {
    (m.n_range.0..=m.n_range.1).flat_map(|n| (m.ell_range.0..=m.ell_range.1).map(move |ell| QuantumNumbers::new(n, ell)))
}

fn sweep_values(m: &RunManifest) -> Vec<f64> {
    (0..m.steps)
        .map(|i| {
            if i + 1 == m.steps {
                m.max
            } else {
                m.min + (m.max - m.min) * i as f64 / (m.steps - 1) as f64
            }
        })
        .collect()
}

fn with_param(cfg: &FieldConfig, param: SweepParam, v: f64) -> Result<FieldConfig, Error> {
    match param {
        SweepParam::A => FieldConfig::new(v, cfg.b, cfg.mu),
        SweepParam::B => FieldConfig::new(cfg.a, v, cfg.mu),
        SweepParam::Mu => FieldConfig::new(cfg.a, cfg.b, v),
    }
}

#[derive(Serialize)]
struct LevelRow {
    branch: Branch,
    n: u32,
    ell: u32,
    a: f64,
    b: f64,
    mu: f64,
    convention: Convention,
    #[serde(rename = "L")]
    l: f64,
    energy: f64,
    classification: &'static str,
}

impl LevelRow {
    fn new(cfg: &FieldConfig, qn: QuantumNumbers, branch: Branch, conv: Convention) -> Result<Self, Error> {
        let l = angular_exponent(cfg, qn.ell, branch, conv)?;
        let energy = energy_level(cfg, qn, branch, conv)?;
        Ok(Self {
            branch,
            n: qn.n,
            ell: qn.ell,
            a: cfg.a,
            b: cfg.b,
            mu: cfg.mu,
            convention: conv,
            l,
            energy,
            classification: classify_state(energy).as_str(),
        })
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.branch.as_str().into(),
            self.n.into(),
            self.ell.into(),
            self.a.into(),
            self.b.into(),
            self.mu.into(),
            self.convention.as_str().into(),
            self.l.into(),
            self.energy.into(),
            self.classification.into(),
        ]
    }
}

const LEVEL_HEADER: [&str; 10] = ["branch", "n", "ell", "a", "b", "mu", "convention", "L", "energy", "classification"];

fn spectrum(m: &RunManifest) -> Result<Vec<u8>, Error> {
    let rows = pairs(m)
        .map(|qn| LevelRow::new(&m.cfg, qn, m.branch, m.convention))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match m.format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&LEVEL_HEADER, &rows.iter().map(LevelRow::cells).collect::<Vec<_>>()),
    })
}

#[derive(Serialize)]
struct WaveRow {
    r: f64,
    upper: f64,
    partner: f64,
    density: f64,
}

#[derive(Serialize)]
struct WaveReport<'a> {
    branch: Branch,
    convention: Convention,
    n: u32,
    ell: u32,
    energy: f64,
    normalization: f64,
    partner: PartnerMode,
    rows: &'a [WaveRow],
}

fn wavefunction(m: &RunManifest) -> Result<Vec<u8>, Error> {
    let qn = QuantumNumbers::new(m.n_range.0, m.ell_range.0);
    let state = BoundState::new(&m.cfg, qn, m.branch, m.convention)?;
    let hi = if m.max.is_nan() { 40.0 / state.ode().c2 } else { m.max };
    let grid = log_grid(m.min, hi, m.steps)?;
    let rows = grid
        .iter()
        .map(|&r| {
            let upper = state.upper(r)?;
            let partner = state.partner(r, m.partner)?;
            Ok(WaveRow { r, upper, partner, density: (upper * upper + partner * partner) * r * r })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(match m.format {
        Format::Json => to_json(&WaveReport {
            branch: m.branch,
            convention: m.convention,
            n: qn.n,
            ell: qn.ell,
            energy: state.energy(),
            normalization: state.normalization(),
            partner: m.partner,
            rows: &rows,
        }),
        Format::Csv => to_csv(
            &["r", "upper", "partner", "density"],
            &rows
                .iter()
                .map(|w| vec![w.r.into(), w.upper.into(), w.partner.into(), w.density.into()])
                .collect::<Vec<_>>(),
        ),
    })
}

#[derive(Serialize)]
struct FigureRow {
    figure: u8,
    n: u32,
    ell: u32,
    a: f64,
    b: f64,
    mu: f64,
    energy: f64,
}

/// The `(n, ell)` pairs plotted in both figures.
pub const FIGURE_SERIES: [(u32, u32); 3] = [(0, 0), (1, 0), (1, 1)];

fn figures(m: &RunManifest) -> Result<Vec<u8>, Error> {
    let param = if m.which == 1 { SweepParam::A } else { SweepParam::B };
    let values = sweep_values(m);
    let mut rows = Vec::with_capacity(FIGURE_SERIES.len() * values.len());
    for (n, ell) in FIGURE_SERIES {
        let qn = QuantumNumbers::new(n, ell);
        for &v in &values {
            let cfg = with_param(&m.cfg, param, v)?;
            let energy = energy_level(&cfg, qn, m.branch, m.convention)?;
            rows.push(FigureRow { figure: m.which, n, ell, a: cfg.a, b: cfg.b, mu: cfg.mu, energy });
        }
    }
    Ok(match m.format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(
            &["figure", "n", "ell", "a", "b", "mu", "energy"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        (r.figure as u32).into(),
                        r.n.into(),
                        r.ell.into(),
                        r.a.into(),
                        r.b.into(),
                        r.mu.into(),
                        r.energy.into(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

#[derive(Serialize)]
struct SweepRow {
    param: &'static str,
    value: f64,
    #[serde(flatten)]
    level: LevelRow,
}

fn sweep(m: &RunManifest) -> Result<Vec<u8>, Error> {
    let mut rows = Vec::new();
    for qn in pairs(m) {
        for v in sweep_values(m) {
            let cfg = with_param(&m.cfg, m.param, v)?;
            rows.push(SweepRow { param: m.param.as_str(), value: v, level: LevelRow::new(&cfg, qn, m.branch, m.convention)? });
        }
    }
    Ok(match m.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut header = vec!["param", "value"];
            header.extend_from_slice(&LEVEL_HEADER);
            let cells = rows
                .iter()
                .map(|r| {
                    let mut c: Vec<Cell> = vec![r.param.into(), r.value.into()];
                    c.extend(r.level.cells());
                    c
                })
                .collect::<Vec<_>>();
            to_csv(&header, &cells)
        }
    })
}

#[derive(Serialize)]
struct Thresholds {
    canonical_residual: f64,
    spectrum_rel_diff: f64,
    normalization_integral: f64,
    partner_relation: f64,
    closure_relation: f64,
    closed_normalization: f64,
}

#[derive(Serialize)]
struct NormalizationReport {
    closed: NormalizationData,
    numeric_relation_derived: f64,
    numeric_paper_literal: f64,
    /// `∫ (upper^2 + partner^2) r^2 dr - 1` with the numeric constant.
    integral_minus_one: f64,
    closed_vs_relation_derived: f64,
    closed_vs_paper_literal: f64,
    /// Whether `closed_vs_relation_derived` is a hard check (plus branch only).
    closed_asserted: bool,
}

#[derive(Serialize)]
struct StateReport {
    n: u32,
    ell: u32,
    energy: f64,
    #[serde(rename = "L")]
    l: f64,
    canonical_residual: ResidualReport,
    first_order: FirstOrderReport,
    /// The minus-branch first-order closure is a diagnostic only.
    first_order_asserted: bool,
    normalization: NormalizationReport,
}

#[derive(Serialize)]
struct VerifyReport {
    branch: Branch,
    convention: Convention,
    a: f64,
    b: f64,
    mu: f64,
    n_max: u32,
    ell_max: u32,
    thresholds: Thresholds,
    states: Vec<StateReport>,
    compare_spectrum: Vec<SpectrumComparison>,
    failures: Vec<String>,
    pass: bool,
}

fn verify_state(state: &BoundState, failures: &mut Vec<String>) -> Result<StateReport, Error> {
    let qn = state.quantum_numbers();
    let tag = format!("n={} ell={}", qn.n, qn.ell);
    let plus = state.branch() == Branch::Plus;
    let grid = standard_grid(state.ode())?;

    let canonical = canonical_residual(state.ode(), state, &grid)?;
    if !(canonical.max_rel <= CANONICAL_THRESHOLD) {
        failures.push(format!("{tag}: canonical residual {:e}", canonical.max_rel));
    }

    let first_order = first_order_residual(state, PartnerMode::RelationDerived, &grid)?;
    if plus {
        if !(first_order.partner_relation.max_rel <= PARTNER_RELATION_THRESHOLD) {
            failures.push(format!("{tag}: partner relation {:e}", first_order.partner_relation.max_rel));
        }
        if !(first_order.closure_relation.max_rel <= CLOSURE_THRESHOLD) {
            failures.push(format!("{tag}: closure relation {:e}", first_order.closure_relation.max_rel));
        }
    }

    let closed = *state.closed_normalization();
    let relation = normalization_numeric(state, PartnerMode::RelationDerived)?;
    let literal = normalization_numeric(state, PartnerMode::PaperLiteral)?;
    let m = (qn.n as usize + 3).max(64);
    let unit = normalization_integral(state, Some(PartnerMode::RelationDerived), m)?;
    let integral_minus_one = (2.0 * state.ln_normalization() + unit.ln()).exp_m1();
    if !(integral_minus_one.abs() <= INTEGRAL_THRESHOLD) {
        failures.push(format!("{tag}: normalization integral off by {integral_minus_one:e}"));
    }
    let closed_vs_relation = (closed.ln_constant - relation.ln()).exp_m1();
    if plus && !(closed_vs_relation.abs() <= CLOSED_NORMALIZATION_THRESHOLD) {
        failures.push(format!("{tag}: closed normalization off by {closed_vs_relation:e}"));
    }

    Ok(StateReport {
        n: qn.n,
        ell: qn.ell,
        energy: state.energy(),
        l: state.ode().l,
        canonical_residual: canonical,
        first_order,
        first_order_asserted: plus,
        normalization: NormalizationReport {
            closed,
            numeric_relation_derived: relation,
            numeric_paper_literal: literal,
            integral_minus_one,
            closed_vs_relation_derived: closed_vs_relation,
            closed_vs_paper_literal: (closed.ln_constant - literal.ln()).exp_m1(),
            closed_asserted: plus,
        },
    })
}

fn verify(m: &RunManifest) -> Result<Rendered, Error> {
    let mut failures = Vec::new();
    let mut states = Vec::new();
    for qn in pairs(m) {
        let state = BoundState::new(&m.cfg, qn, m.branch, m.convention)?;
        states.push(verify_state(&state, &mut failures)?);
    }

    let table = compare_spectrum(&m.cfg, m.branch, m.convention, m.n_range.1, m.ell_range.1)?;
    let table: Vec<_> = table
        .into_iter()
        .filter(|r| r.n >= m.n_range.0 && r.ell >= m.ell_range.0)
        .collect();
    for row in &table {
        let nodes_ok = row.shooting.is_some_and(|s| s.node_count == row.n);
        if !row.passes(SPECTRUM_THRESHOLD) || !nodes_ok {
            let why = row.error.clone().unwrap_or_else(|| format!("rel_diff {:?}", row.rel_diff));
            failures.push(format!("n={} ell={}: shooting {why}", row.n, row.ell));
        }
    }

    let pass = failures.is_empty();
    let report = VerifyReport {
        branch: m.branch,
        convention: m.convention,
        a: m.cfg.a,
        b: m.cfg.b,
        mu: m.cfg.mu,
        n_max: m.n_range.1,
        ell_max: m.ell_range.1,
        thresholds: Thresholds {
            canonical_residual: CANONICAL_THRESHOLD,
            spectrum_rel_diff: SPECTRUM_THRESHOLD,
            normalization_integral: INTEGRAL_THRESHOLD,
            partner_relation: PARTNER_RELATION_THRESHOLD,
            closure_relation: CLOSURE_THRESHOLD,
            closed_normalization: CLOSED_NORMALIZATION_THRESHOLD,
        },
        states,
        compare_spectrum: table,
        failures,
        pass,
    };
    Ok(Rendered { bytes: to_json(&report), passed: pass })
}
