use rayon::prelude::*;
use serde::Serialize;

use super::state::BoundState;
use crate::error::{Error, Result};
use crate::model::{Branch, Convention, FieldConfig, QuantumNumbers};

/// Upper bound on `n` and `ell` accepted by scans and the CLI.
pub const MAX_QUANTUM_NUMBER: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelEntry {
    pub n: u32,
    pub ell: u32,
    pub energy: f64,
}

/// A pair whose state could not be built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanFailure {
    pub n: u32,
    pub ell: u32,
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyReport {
    /// Constructible states in `(n, ell)` order.
    pub levels: Vec<LevelEntry>,
    pub failures: Vec<ScanFailure>,
    /// Groups of levels (indices into `levels`) sorted by energy; consecutive
    /// energies within `tol` share a group.
    pub groups: Vec<Vec<usize>>,
    pub max_multiplicity: usize,
}

pub(crate) fn check_bounds(n_max: u32, ell_max: u32) -> Result<()> {
    for (what, v) in [("n_max", n_max), ("ell_max", ell_max)] {
        if v > MAX_QUANTUM_NUMBER {
            return Err(Error::Domain { what, value: v as f64 });
        }
    }
    Ok(())
}

/// Builds every state with `n <= n_max`, `ell <= ell_max` and groups equal energies.
pub fn degeneracy_scan(
    cfg: &FieldConfig,
    branch: Branch,
    conv: Convention,
    n_max: u32,
    ell_max: u32,
    tol: f64,
) -> Result<DegeneracyReport> {
    check_bounds(n_max, ell_max)?;
    if !(tol >= 0.0) {
        return Err(Error::Domain { what: "tol", value: tol });
    }
    let pairs: Vec<QuantumNumbers> = (0..=n_max)
        .flat_map(|n| (0..=ell_max).map(move |ell| QuantumNumbers::new(n, ell)))
        .collect();
    let built: Vec<(QuantumNumbers, Result<BoundState>)> = pairs
        .par_iter()
        .map(|&qn| (qn, BoundState::new(cfg, qn, branch, conv)))
        .collect();

    let mut levels = Vec::new();
    let mut failures = Vec::new();
    for (qn, res) in built {
        match res {
            Ok(s) => levels.push(LevelEntry { n: qn.n, ell: qn.ell, energy: s.energy() }),
            Err(e) => failures.push(ScanFailure {
                n: qn.n,
                ell: qn.ell,
                kind: e.kind(),
                message: e.to_string(),
            }),
        }
    }

    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by(|&i, &j| levels[i].energy.total_cmp(&levels[j].energy).then(i.cmp(&j)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if (levels[i].energy - levels[*g.last().unwrap()].energy).abs() <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let max_multiplicity = groups.iter().map(Vec::len).max().unwrap_or(0);
    Ok(DegeneracyReport { levels, failures, groups, max_multiplicity })
}
