use log::info;
use modinv::action::MatrixGroup;
use modinv::homology::{
    depth_dim, diagnose, free_resolution, grade_report, ideal_in_generators, transfer_ideal_height, DiagnoseOptions,
    DiagnosisReport, GradeReport,
};
use modinv::invariants::{default_bound, fundamental_invariants, presentation, FundamentalSet, Presentation};
use modinv::Limits;
use serde_json::Value;

use crate::config::{Command, RunConfig};
use crate::report::{self, envelope};
use crate::{verify, CliError};

/// Resource caps with `MODINV_MAX_DEGREE` and `MODINV_MAX_BASIS` applied.
pub fn limits_from_env(base: Limits) -> Result<Limits, CliError> {
    let mut limits = base;
    for (var, slot) in [("MODINV_MAX_DEGREE", 0), ("MODINV_MAX_BASIS", 1)] {
        if let Ok(v) = std::env::var(var) {
            let value: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("{var} must be a positive integer, got {v:?}")))?;
            match slot {
                0 => limits.max_degree = value as u32,
                _ => limits.max_basis = value as usize,
            }
        }
    }
    Ok(limits)
}

/// The invariant ring of a configuration, built in stages.
pub struct Pipeline<'a> {
    pub config: &'a RunConfig,
    group: MatrixGroup,
}

impl<'a> Pipeline<'a> {
    pub fn new(config: &'a RunConfig) -> Result<Self, CliError> {
        let group = MatrixGroup::closure(config.field(), config.n, &config.generators, config.caps.max_group)?;
        info!("group of order {}", group.order());
        Ok(Pipeline { config, group })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn bound(&self) -> u32 {
        self.config.degree_bound.unwrap_or_else(|| default_bound(&self.group))
    }

    pub fn fundamental(&self) -> Result<FundamentalSet, CliError> {
        let fs = fundamental_invariants(&self.group, self.bound())?;
        info!("{} fundamental invariants of degrees {:?}", fs.generators().len(), fs.degrees());
        Ok(fs)
    }

    pub fn presentation(&self) -> Result<Presentation, CliError> {
        let p = presentation(&self.fundamental()?, &self.config.caps)?;
        info!("presentation with {} relations", p.relations().elements().len());
        Ok(p)
    }

    pub fn diagnose(&self, p: &Presentation) -> Result<DiagnosisReport, CliError> {
        Ok(diagnose(p, DiagnoseOptions::default(), &self.config.caps)?)
    }

    pub fn grade(&self, p: &Presentation) -> Result<GradeReport, CliError> {
        let res = free_resolution(p, &self.config.caps)?;
        let depth = depth_dim(p, &res)?.depth;
        self.grade_with_depth(p, depth)
    }

    /// Grade report of the configured ideal when `depth R` is already known.
    pub fn grade_with_depth(&self, p: &Presentation, depth: usize) -> Result<GradeReport, CliError> {
        if self.config.ideal.is_empty() {
            return Err(CliError::Validation("grade needs at least one ideal_element".into()));
        }
        if let Some(f) = self.config.ideal.iter().find(|f| !self.group.fixes(f)) {
            return Err(CliError::Validation(format!("ideal element {f} is not invariant")));
        }
        let a = ideal_in_generators(&self.config.ideal, p)?;
        Ok(grade_report(&a, p, depth, &self.config.caps)?)
    }
}

/// Runs one command and returns its report.
pub fn run(config: &RunConfig, command: Command) -> Result<Value, CliError> {
    if command == Command::Verify {
        return Ok(verify::verify_report(&verify::verify(None, true)?));
    }
    let pipeline = Pipeline::new(config)?;
    let (result, provenance) = match command {
        Command::Group => (report::group_payload(pipeline.group()), Vec::new()),
        Command::Invariants => (report::invariants_payload(&pipeline.fundamental()?), Vec::new()),
        Command::Present => (report::presentation_payload(&pipeline.presentation()?), Vec::new()),
        Command::Diagnose => {
            let r = pipeline.diagnose(&pipeline.presentation()?)?;
            let prov = report::diagnosis_provenance(&r, config.n);
            (report::diagnosis_payload(&r), prov)
        }
        Command::Grade => {
            let r = pipeline.grade(&pipeline.presentation()?)?;
            (report::grade_payload(&r), report::grade_provenance(&r))
        }
        Command::Transfer => {
            let p = pipeline.presentation()?;
            let t = transfer_ideal_height(&p, p.bound(), &config.caps)?;
            (
                report::transfer_payload(&t),
                vec!["Ht(im tr) < dim R for modular representations (Feshbach)".to_string()],
            )
        }
        Command::Verify => unreachable!(),
    };
    Ok(envelope(command, config, result, provenance))
}
