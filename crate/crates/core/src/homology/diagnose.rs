use log::info;

use crate::action::is_modular;
use crate::groebner::{hilbert_series, krull_dimension, GroebnerBasis};
use crate::homology::ext::{cm_defect_locus_dim, ext_table_of, lc_verdicts, serre_condition, ExtTable, LcEntry};
use crate::homology::grade::{depth_oracle_of_quotient, transfer_ideal_height, TransferHeight};
use crate::homology::resolution::{resolve_quotient, FreeResolution};
use crate::invariants::Presentation;
use crate::{par, Error, Limits, Result};

/// Minimal graded free resolution of `R = S'/I`; refuses presentations
/// whose Hilbert certificate failed.
pub fn free_resolution(p: &Presentation, limits: &Limits) -> Result<FreeResolution> {
    p.require_certified()?;
    resolve_quotient(p.relations(), None, limits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthDim {
    pub dim: usize,
    pub depth: usize,
    pub pd: usize,
    pub cmdef: usize,
}

/// `dim`, and `depth = m - pd` by Auslander-Buchsbaum.
pub fn depth_dim_of(ideal: &GroebnerBasis, res: &FreeResolution) -> Result<DepthDim> {
    if !res.is_minimal() {
        return Err(Error::Inconsistent("resolution is not minimal".into()));
    }
    let dim = krull_dimension(ideal).ok_or(Error::UnitIdeal)?;
    let pd = res.length();
    let depth = ideal.ring().nvars() - pd;
    if depth > dim {
        return Err(Error::Inconsistent(format!("depth {depth} exceeds dimension {dim}")));
    }
    Ok(DepthDim {
        dim,
        depth,
        pd,
        cmdef: dim - depth,
    })
}

pub fn depth_dim(p: &Presentation, res: &FreeResolution) -> Result<DepthDim> {
    depth_dim_of(p.relations(), res)
}

pub fn ext_table(p: &Presentation, res: &FreeResolution, limits: &Limits) -> Result<ExtTable> {
    let dim = krull_dimension(p.relations()).ok_or(Error::UnitIdeal)?;
    ext_table_of(res, dim, limits)
}

/// `dim loc(cmdef > t)` and, when `cmdef(R) > t`, whether it lies strictly
/// between `0` and `dim V - t - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocusEntry {
    pub t: usize,
    pub dim: i64,
    pub within_kemper_bounds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosisReport {
    pub m: usize,
    pub betti: Vec<usize>,
    pub dim: usize,
    pub depth: usize,
    pub pd: usize,
    pub cmdef: usize,
    pub depth_oracle: usize,
    pub is_cm: bool,
    pub is_generalized_cm: bool,
    pub is_quasi_buchsbaum: bool,
    pub buchsbaum_criterion: bool,
    pub cm_on_punctured_spectrum: bool,
    pub almost_cm: bool,
    /// `(k, S(k))` for `k = 1..=dim`.
    pub serre: Vec<(usize, bool)>,
    /// `H^i_m(R)` for `i = 0..=dim`.
    pub lc_table: Vec<LcEntry>,
    /// Krull dimension of `E_j` for `j = 0..=m`, `-1` for zero.
    pub ext_dims: Vec<i64>,
    pub locus: Vec<LocusEntry>,
    pub f_irrelevant: usize,
    pub chain: [usize; 5],
    pub transfer: Option<TransferHeight>,
    pub checks: Vec<Check>,
}

impl DiagnosisReport {
    pub fn serre(&self, k: usize) -> Option<bool> {
        self.serre.iter().find(|(j, _)| *j == k).map(|(_, v)| *v)
    }

    pub fn locus_dim(&self, t: usize) -> Option<i64> {
        self.locus.iter().find(|l| l.t == t).map(|l| l.dim)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Options for [`diagnose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagnoseOptions {
    /// Compute the height of the transfer ideal (modular groups only).
    pub transfer: bool,
}

impl Default for DiagnoseOptions {
    fn default() -> Self {
        DiagnoseOptions { transfer: true }
    }
}

/// The full homological scorecard of `R`. Consistency checks that fail
/// are reported in `checks`, not corrected.
pub fn diagnose(p: &Presentation, options: DiagnoseOptions, limits: &Limits) -> Result<DiagnosisReport> {
    let res = free_resolution(p, limits)?;
    let dd = depth_dim(p, &res)?;
    info!("resolution betti numbers {:?}", res.betti_numbers());
    let (table, oracle) = par::join(
        || ext_table(p, &res, limits),
        || depth_oracle_of_quotient(p.relations(), limits),
    );
    let (table, oracle) = (table?, oracle?);
    let transfer = if options.transfer && is_modular(p.source_group()) {
        Some(transfer_ideal_height(p, p.bound(), limits)?)
    } else {
        None
    };
    Ok(assemble(p, &res, dd, &table, oracle, transfer))
}

fn assemble(
    p: &Presentation,
    res: &FreeResolution,
    dd: DepthDim,
    table: &ExtTable,
    oracle: usize,
    transfer: Option<TransferHeight>,
) -> DiagnosisReport {
    let m = p.m();
    let n = p.source_group().n();
    let verdicts = lc_verdicts(table);
    let locus: Vec<LocusEntry> = (0..dd.dim.max(1))
        .map(|t| {
            let dim = cm_defect_locus_dim(table, t);
            let within = (dd.cmdef > t).then(|| 0 < dim && dim < n as i64 - t as i64 - 1);
            LocusEntry {
                t,
                dim,
                within_kemper_bounds: within,
            }
        })
        .collect();
    let is_cm = dd.cmdef == 0;
    let cm_on_punctured_spectrum = cm_defect_locus_dim(table, 0) <= 0;
    let ext_dims: Vec<i64> = table.entries().iter().map(|e| e.dimension_or_neg()).collect();
    let c = m - dd.dim;
    let ext_vanishing = (0..=m).all(|j| (j >= c && j <= dd.pd) || ext_dims[j] < 0) && ext_dims[c] >= 0;
    let collapse = [
        verdicts.is_generalized_cm,
        verdicts.is_quasi_buchsbaum,
        verdicts.buchsbaum_criterion,
        cm_on_punctured_spectrum,
    ]
    .iter()
    .all(|&v| v == is_cm);
    let mut checks = vec![
        Check { name: "hilbert_certificate", passed: p.is_certified() },
        Check { name: "resolution_is_complex", passed: res.is_complex() },
        Check { name: "resolution_is_minimal", passed: res.is_minimal() },
        Check { name: "euler_characteristic", passed: res.euler_series() == hilbert_series(p.relations()) },
        Check { name: "depth_matches_oracle", passed: dd.depth == oracle },
        Check { name: "ext_vanishing", passed: ext_vanishing },
        Check { name: "chain_nondecreasing", passed: verdicts.chain.windows(2).all(|w| w[0] <= w[1]) },
        Check { name: "punctured_spectrum_collapse", passed: collapse },
        Check { name: "depth_lower_bound", passed: dd.depth >= dd.dim.min(3) },
        Check { name: "dim4_almost_cm", passed: dd.dim != 4 || dd.cmdef <= 1 },
    ];
    if let Some(t) = &transfer {
        checks.push(Check { name: "transfer_height_bound", passed: t.strict_bound_holds });
    }
    DiagnosisReport {
        m,
        betti: res.betti_numbers(),
        dim: dd.dim,
        depth: dd.depth,
        pd: dd.pd,
        cmdef: dd.cmdef,
        depth_oracle: oracle,
        is_cm,
        is_generalized_cm: verdicts.is_generalized_cm,
        is_quasi_buchsbaum: verdicts.is_quasi_buchsbaum,
        buchsbaum_criterion: verdicts.buchsbaum_criterion,
        cm_on_punctured_spectrum,
        almost_cm: dd.cmdef <= 1,
        serre: (1..=dd.dim).map(|k| (k, serre_condition(table, k))).collect(),
        lc_table: table.lc_table(),
        ext_dims,
        locus,
        f_irrelevant: verdicts.f_irrelevant,
        chain: verdicts.chain,
        transfer,
        checks,
    }
}
