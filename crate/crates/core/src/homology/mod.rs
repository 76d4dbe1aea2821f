//! Free resolutions over the presentation ring `S'`, Ext modules against
//! `S'`, and the depth-type invariants of `R = S'/I` read off from them.

mod diagnose;
mod ext;
mod grade;
mod resolution;
mod schreyer;

pub use diagnose::{
    depth_dim, depth_dim_of, diagnose, ext_table, free_resolution, Check, DepthDim, DiagnoseOptions, DiagnosisReport,
    LocusEntry,
};
pub use ext::{cm_defect_locus_dim, ext_table_of, lc_verdicts, serre_condition, ExtModule, ExtTable, LcEntry, LcVerdicts};
pub use grade::{
    depth_oracle, depth_oracle_of_quotient, grade_from_resolution, grade_of_ideal, grade_of_ideal_in, grade_report,
    height_of_ideal, height_of_ideal_in, ideal_in_generators, lc_inference, superscript, transfer_ideal_height,
    GradeReport, Inference, TransferHeight,
};
pub use resolution::{
    kernel, koszul_complex, koszul_complex_on, minimal_generators, module_groebner, resolve_quotient, syzygies, FreeResolution,
    GradedFreeModule, GradedMap, ModuleBasis,
};
