//! JSON reports. Keys are emitted in insertion order, which is the order
//! documented in the README; numbers are integers, `-1` stands for an empty
//! locus or a zero module, and citations are plain strings.

use modinv::action::MatrixGroup;
use modinv::homology::{DiagnosisReport, GradeReport, Inference, TransferHeight};
use modinv::invariants::{FundamentalSet, Presentation};
use serde_json::{json, Value};

use crate::config::{Command, RunConfig};

pub const SCHEMA_VERSION: &str = "1";

pub fn config_echo(config: &RunConfig) -> Value {
    json!({
        "p": config.p,
        "n": config.n,
        "generators": config.generators.iter().map(|g| g.to_rows()).collect::<Vec<_>>(),
        "degree_bound": config.degree_bound,
        "ideal": config.ideal.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "caps": {
            "max_degree": config.caps.max_degree,
            "max_basis": config.caps.max_basis,
            "max_group": config.caps.max_group,
        },
    })
}

pub fn envelope(command: Command, config: &RunConfig, result: Value, provenance: Vec<String>) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "config": config_echo(config),
        "result": result,
        "provenance": provenance,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn group_payload(g: &MatrixGroup) -> Value {
    json!({
        "order": g.order(),
        "characteristic": g.characteristic(),
        "n": g.n(),
        "modular": g.is_modular(),
        "generators": g.generators().map(|m| m.to_rows()).collect::<Vec<_>>(),
    })
}

pub fn invariants_payload(fs: &FundamentalSet) -> Value {
    json!({
        "bound": fs.bound(),
        "complete": fs.complete(),
        "count": fs.generators().len(),
        "degrees": fs.degrees(),
        "generators": fs.generators().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "invariant_dims": fs.invariant_dims(),
    })
}

pub fn presentation_payload(p: &Presentation) -> Value {
    let relations = p.relations().elements();
    json!({
        "m": p.m(),
        "weights": p.weights(),
        "bound": p.bound(),
        "certified": p.is_certified(),
        "relation_count": relations.len(),
        "relations": relations.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn diagnosis_payload(r: &DiagnosisReport) -> Value {
    json!({
        "m": r.m,
        "betti": r.betti,
        "dim": r.dim,
        "depth": r.depth,
        "pd": r.pd,
        "cmdef": r.cmdef,
        "depth_oracle": r.depth_oracle,
        "is_cm": r.is_cm,
        "is_generalized_cm": r.is_generalized_cm,
        "is_quasi_buchsbaum": r.is_quasi_buchsbaum,
        "buchsbaum_criterion": r.buchsbaum_criterion,
        "cm_on_punctured_spectrum": r.cm_on_punctured_spectrum,
        "almost_cm": r.almost_cm,
        "serre": r.serre.iter().map(|(k, v)| json!({"k": k, "holds": v})).collect::<Vec<_>>(),
        "local_cohomology": r.lc_table.iter().enumerate().map(|(i, e)| json!({
            "i": i,
            "zero": e.zero,
            "finite_length": e.finite_length,
            "annihilated_by_m": e.irrelevant_annihilated,
        })).collect::<Vec<_>>(),
        "ext_dims": r.ext_dims,
        "cmdef_locus": r.locus.iter().map(|l| json!({
            "t": l.t,
            "dim": l.dim,
            "within_bounds": l.within_kemper_bounds,
        })).collect::<Vec<_>>(),
        "f_m": r.f_irrelevant,
        "chain": r.chain,
        "transfer": r.transfer.as_ref().map(transfer_payload),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
        "consistent": r.is_consistent(),
    })
}

/// Cited statements backing the flags of a diagnosis.
pub fn diagnosis_provenance(r: &DiagnosisReport, n: usize) -> Vec<String> {
    let mut out = vec![
        format!("depth(R) ≥ min{{3, dim R}} = {} (Cor 3.5)", r.dim.min(3)),
        "R Cohen-Macaulay ⇔ R generalized Cohen-Macaulay ⇔ R quasi-Buchsbaum ⇔ R Cohen-Macaulay over the punctured spectrum (Prop 3.2)"
            .to_string(),
    ];
    for l in r.locus.iter().filter(|l| l.within_kemper_bounds.is_some()) {
        out.push(format!(
            "0 < dim loc(cmdef > {}) < {} (Discussion 3.1)",
            l.t,
            n as i64 - l.t as i64 - 1
        ));
    }
    if r.dim == 4 {
        out.push("R is almost Cohen-Macaulay and depth(R) ≥ 3 (Cor 3.5)".to_string());
        if r.depth < r.dim {
            out.push(format!("ℓ(H{}_𝔪(R)) = ∞ (Example 3.9)", modinv::homology::superscript(r.depth)));
        }
    }
    if r.transfer.is_some() {
        out.push("Ht(im tr) < dim R for modular representations (Feshbach)".to_string());
    }
    out
}

fn inference_payload(i: &Inference) -> Value {
    json!({"statement": i.statement, "citation": i.citation})
}

pub fn grade_payload(r: &GradeReport) -> Value {
    json!({
        "generators": r.generators.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "grade": r.grade,
        "height": r.height,
        "dim": r.dim,
        "depth": r.depth,
        "cd_lower": r.cd_bounds.0,
        "cd_upper": r.cd_bounds.1,
        "inferences": r.inferences.iter().map(inference_payload).collect::<Vec<_>>(),
    })
}

pub fn grade_provenance(r: &GradeReport) -> Vec<String> {
    r.inferences.iter().map(|i| i.to_string()).collect()
}

pub fn transfer_payload(t: &TransferHeight) -> Value {
    json!({
        "generators": t.generators.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "height": t.height,
        "dim": t.dim,
        "strict_bound_holds": t.strict_bound_holds,
    })
}
