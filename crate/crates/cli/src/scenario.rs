//! Scenario files: the single JSON document that configures every command.
//!
//! A scenario names the operation kinds, one or more classical chip specs,
//! exactly one quantum machine spec, the wall-clock budget, the speedup
//! exponents of interest, optional application profiles, and optional
//! named parameter sweeps. Every field has a default drawn from the
//! reference design point, so `{}` (or the `--defaults` flag) runs the
//! built-in scenario.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qpract_core::{
    build_classical_machine, build_quantum_machine, default_asic_spec, default_datasheet_spec,
    default_depth_limited_spec, default_quantum_spec, ApplicationProfile, ClassicalChipSpec,
    ClassicalMachine, Error, OperationKind, QuantumMachine, QuantumMachineSpec,
};

/// CLI-level error, carrying its process exit code.
///
/// Exit codes: 2 usage, 3 parse, 4 validation/domain, 5 I/O.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Model(#[from] Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Model(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// One named parameter sweep: vary `parameter` from `from` to `to` over
/// `points` samples (log-spaced unless disabled) and re-derive `quantity`
/// at every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDef {
    pub name: String,
    /// Dotted path into the scenario document, e.g.
    /// `quantum.cycle_time_s` or `machines.asic.transistor_budget`.
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    /// Log-spaced samples (the default); set false for linear spacing.
    #[serde(default = "default_true")]
    pub log_spacing: bool,
    /// What to derive at each point, e.g. `m_max:fp16:2`,
    /// `throughput:quantum:binary`, `units:binary`, `n_star:fp16:2`,
    /// `io:quantum`.
    pub quantity: String,
}

fn default_true() -> bool {
    true
}

impl SweepDef {
    pub fn validate(&self) -> Result<(), Error> {
        let field = |name: &str| format!("sweeps.{}.{name}", self.name);
        if self.name.is_empty() {
            return Err(Error::config(
                "sweeps.name",
                "sweep names must not be empty",
            ));
        }
        if self.parameter.is_empty() {
            return Err(Error::config(field("parameter"), "must not be empty"));
        }
        if self.quantity.is_empty() {
            return Err(Error::config(field("quantity"), "must not be empty"));
        }
        if self.points == 0 {
            return Err(Error::config(field("points"), "must be at least 1"));
        }
        for (name, v) in [("from", self.from), ("to", self.to)] {
            if !v.is_finite() {
                return Err(Error::config(field(name), "must be finite"));
            }
            if self.log_spacing && v <= 0.0 {
                return Err(Error::config(
                    field(name),
                    "must be positive for a log-spaced sweep",
                ));
            }
        }
        Ok(())
    }
}

/// Everything a command needs, in one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub operation_kinds: Vec<OperationKind>,
    /// Classical machines by label (one or more).
    pub machines: BTreeMap<String, ClassicalChipSpec>,
    /// Exactly one quantum machine.
    pub quantum: QuantumMachineSpec,
    /// Wall-clock limit in seconds for feasibility questions.
    pub time_budget_s: f64,
    /// Polynomial speedup exponents the budget table covers.
    pub speedup_exponents: Vec<f64>,
    pub applications: Vec<ApplicationProfile>,
    pub sweeps: Vec<SweepDef>,
}

impl Default for Scenario {
    fn default() -> Self {
        let mut machines = BTreeMap::new();
        machines.insert(
            "gpu".to_string(),
            ClassicalChipSpec::Datasheet(default_datasheet_spec()),
        );
        machines.insert(
            "asic".to_string(),
            ClassicalChipSpec::Asic(default_asic_spec()),
        );
        machines.insert(
            "serial".to_string(),
            ClassicalChipSpec::DepthLimited(default_depth_limited_spec()),
        );
        Scenario {
            operation_kinds: qpract_core::canonical_kinds(),
            machines,
            quantum: default_quantum_spec(),
            time_budget_s: 1e6,
            speedup_exponents: vec![2.0, 3.0, 4.0],
            applications: Vec::new(),
            sweeps: Vec::new(),
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<(), Error> {
        if self.operation_kinds.is_empty() {
            return Err(Error::config(
                "operation_kinds",
                "must list at least one kind",
            ));
        }
        let mut kind_names = Vec::new();
        for kind in &self.operation_kinds {
            kind.validate()?;
            if kind_names.contains(&kind.name) {
                return Err(Error::config(
                    format!("operation_kinds.{}", kind.name),
                    "kind names must be unique",
                ));
            }
            kind_names.push(kind.name.clone());
        }
        if self.machines.is_empty() {
            return Err(Error::config(
                "machines",
                "must define at least one classical machine",
            ));
        }
        for (label, spec) in &self.machines {
            if label.is_empty() {
                return Err(Error::config(
                    "machines",
                    "machine labels must not be empty",
                ));
            }
            spec.validate(&format!("machines.{label}"))?;
        }
        self.quantum.validate("quantum.")?;
        if self.time_budget_s <= 0.0 || !self.time_budget_s.is_finite() {
            return Err(Error::config(
                "time_budget_s",
                "must be positive and finite",
            ));
        }
        if self.speedup_exponents.is_empty() {
            return Err(Error::config(
                "speedup_exponents",
                "must list at least one exponent",
            ));
        }
        for k in &self.speedup_exponents {
            if !k.is_finite() || *k <= 1.0 {
                return Err(Error::config(
                    "speedup_exponents",
                    format!("exponents must be finite and exceed 1, got {k}"),
                ));
            }
        }
        for app in &self.applications {
            app.validate()?;
            for kind in app.oracle_ops.keys() {
                if !kind_names.contains(kind) {
                    return Err(Error::config(
                        format!("applications.{}.oracle_ops.{kind}", app.name),
                        "references a kind not listed in operation_kinds",
                    ));
                }
            }
        }
        let mut sweep_names = Vec::new();
        for sweep in &self.sweeps {
            sweep.validate()?;
            if sweep_names.contains(&sweep.name) {
                return Err(Error::config(
                    format!("sweeps.{}", sweep.name),
                    "sweep names must be unique",
                ));
            }
            sweep_names.push(sweep.name.clone());
        }
        Ok(())
    }
}

/// Load a scenario: no path means the built-in defaults; an empty file is
/// accepted with the `--defaults` flag (and a parse error without it).
pub fn load_scenario(path: Option<&Path>, use_defaults: bool) -> CliResult<Scenario> {
    let scenario = match path {
        None => Scenario::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            if text.trim().is_empty() {
                if use_defaults {
                    Scenario::default()
                } else {
                    return Err(CliError::Parse(format!(
                        "{} is empty; pass --defaults to run the built-in scenario",
                        path.display()
                    )));
                }
            } else {
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
            }
        }
    };
    scenario.validate()?;
    Ok(scenario)
}

/// A scenario with all of its machines built.
#[derive(Debug, Clone)]
pub struct Lab {
    pub scenario: Scenario,
    pub machines: BTreeMap<String, ClassicalMachine>,
    pub quantum: QuantumMachine,
}

pub fn build_lab(scenario: &Scenario) -> CliResult<Lab> {
    let mut machines = BTreeMap::new();
    for (label, spec) in &scenario.machines {
        machines.insert(
            label.clone(),
            build_classical_machine(label.clone(), spec, &scenario.operation_kinds)?,
        );
    }
    let quantum = build_quantum_machine("quantum", &scenario.quantum, &scenario.operation_kinds)?;
    Ok(Lab {
        scenario: scenario.clone(),
        machines,
        quantum,
    })
}

impl Lab {
    /// The classical machine oracle budgets are judged against: the one
    /// labeled `asic`, or the only asic-model machine in the scenario.
    pub fn budget_machine(&self) -> CliResult<&ClassicalMachine> {
        if let Some(machine) = self.machines.get("asic") {
            if machine.model == "asic" {
                return Ok(machine);
            }
        }
        let mut asics = self.machines.values().filter(|m| m.model == "asic");
        match (asics.next(), asics.next()) {
            (Some(machine), None) => Ok(machine),
            (None, _) => Err(CliError::Model(Error::config(
                "machines",
                "oracle budgeting needs a machine with the asic model",
            ))),
            (Some(_), Some(_)) => Err(CliError::Model(Error::config(
                "machines",
                "several asic-model machines; label the budgeting one \"asic\"",
            ))),
        }
    }
}
