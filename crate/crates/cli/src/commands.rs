//! The five commands: throughput, budget, crossover, classify, sweep.
//!
//! Every command builds its answer as a serializable report first, then
//! renders it as text (aligned tables), JSON (full precision), or CSV
//! (plot-ready, full precision). Reports are pure functions of the
//! scenario, so identical invocations produce byte-identical output.

use serde::Serialize;
use serde_json::Value;

use qpract_core::{
    classify, evaluate_crossover, log_grid, preset_profiles, runtime_curve, CrossoverQuery,
    CrossoverResult, CurvePoint, Error, SpeedupExponent, Verdict,
};

use crate::report::{display_value, format_full, render_table, row, ReportRow};
use crate::scenario::{build_lab, CliError, CliResult, Lab, Scenario, SweepDef};

fn fmt_k(k: f64) -> String {
    if k.fract() == 0.0 {
        format!("{}", k as i64)
    } else {
        format!("{k}")
    }
}

fn to_pretty_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports are serializable");
    text.push('\n');
    text
}

/// Crossover economics for one kind at one exponent, on the budgeting
/// classical machine vs the quantum machine.
pub fn crossover_for(lab: &Lab, kind: &str, k: f64, oracle_ops: f64) -> CliResult<CrossoverResult> {
    let classical = lab.budget_machine()?;
    let classical_op_time_s = classical.op_time_s(kind)?;
    let rate = lab.quantum.throughput(kind).ok_or_else(|| {
        Error::config(
            format!("quantum.{kind}"),
            "kind has no derived throughput on the quantum machine",
        )
    })?;
    if rate == 0.0 {
        return Err(CliError::Model(Error::config(
            format!("quantum.{kind}"),
            format!(
                "the kind does not fit the logical-qubit budget of {} (zero units), \
                 so no crossover exists",
                lab.quantum.spec.logical_qubits
            ),
        )));
    }
    let query = CrossoverQuery {
        exponent: SpeedupExponent::Polynomial(k),
        classical_op_time_s,
        quantum_op_time_s: 1.0 / rate,
        oracle_ops,
        time_limit_s: lab.scenario.time_budget_s,
    };
    Ok(evaluate_crossover(&query)?)
}

// ----- throughput ----------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ThroughputReport {
    pub rows: Vec<ReportRow>,
}

/// Per-kind operation throughput and I/O bandwidth for every machine:
/// classical columns in Top/s, the quantum column in kop/s, I/O in Gbit/s.
pub fn cmd_throughput(lab: &Lab) -> CliResult<ThroughputReport> {
    let mut rows = Vec::new();
    for kind in &lab.scenario.operation_kinds {
        for machine in lab.machines.values() {
            rows.push(row(
                &machine.label,
                &kind.name,
                "Top/s",
                machine.throughput(&kind.name)? / 1e12,
            ));
        }
        let rate = lab.quantum.throughput(&kind.name).ok_or_else(|| {
            Error::config(
                format!("quantum.{}", kind.name),
                "kind has no derived throughput on the quantum machine",
            )
        })?;
        let mut quantum_row = row("quantum", &kind.name, "kop/s", rate / 1e3);
        if rate == 0.0 {
            quantum_row.note = Some(format!(
                "does not fit: one {} unit needs {:.1} logical qubits but the budget is {}",
                kind.name,
                lab.quantum.layouts[&kind.name].qubits_per_unit,
                lab.quantum.spec.logical_qubits
            ));
        } else if kind.quantum_mult_width == 1 {
            quantum_row.note = Some(match lab.scenario.quantum.binary_throughput_override_op_s {
                Some(_) => "configured override; the unit-packing derivation is replaced \
                            for this single-bit kind"
                    .to_string(),
                None => "derived from unit packing; some published comparisons list 235 kop/s \
                         for the reference configuration — set \
                         quantum.binary_throughput_override_op_s to reproduce them"
                    .to_string(),
            });
        }
        rows.push(quantum_row);
    }
    for machine in lab.machines.values() {
        rows.push(row(
            &machine.label,
            "io",
            "Gbit/s",
            machine.io_bandwidth_bit_s / 1e9,
        ));
    }
    rows.push(row(
        "quantum",
        "io",
        "Gbit/s",
        lab.quantum.io_bandwidth_bit_s / 1e9,
    ));
    Ok(ThroughputReport { rows })
}

impl ThroughputReport {
    pub fn to_text(&self) -> String {
        let mut labels: Vec<String> = Vec::new();
        for r in &self.rows {
            if !labels.contains(&r.label) {
                labels.push(r.label.clone());
            }
        }
        let mut quantities: Vec<String> = Vec::new();
        for r in &self.rows {
            if !quantities.contains(&r.quantity) {
                quantities.push(r.quantity.clone());
            }
        }
        let mut notes: Vec<String> = Vec::new();
        let mut headers = vec!["quantity".to_string()];
        headers.extend(labels.iter().cloned());
        let mut body = Vec::new();
        for quantity in &quantities {
            let mut cells = vec![quantity.clone()];
            for label in &labels {
                let r = self
                    .rows
                    .iter()
                    .find(|r| &r.label == label && &r.quantity == quantity)
                    .expect("the row grid is complete");
                let mut cell = format!("{} {}", r.display, r.unit);
                if let Some(note) = &r.note {
                    let marker = match notes.iter().position(|n| n == note) {
                        Some(i) => i + 1,
                        None => {
                            notes.push(note.clone());
                            notes.len()
                        }
                    };
                    cell.push_str(&format!(" [{marker}]"));
                }
                cells.push(cell);
            }
            body.push(cells);
        }
        let mut out = String::from("operation throughput and I/O bandwidth\n\n");
        out.push_str(&render_table(&headers, &body));
        for (i, note) in notes.iter().enumerate() {
            out.push_str(&format!("\n[{}] {note}\n", i + 1));
        }
        out
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,quantity,unit,value\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.label,
                r.quantity,
                r.unit,
                format_full(r.value)
            ));
        }
        out
    }
}

// ----- budget --------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BudgetReport {
    pub classical_machine: String,
    pub time_budget_s: f64,
    pub exponents: Vec<f64>,
    pub rows: Vec<ReportRow>,
}

/// Largest affordable oracle size `m_max` for every kind × exponent, on
/// the budgeting classical machine vs the quantum machine. Values are
/// unrounded; each row's note carries the whole-operation floor.
pub fn cmd_budget(lab: &Lab) -> CliResult<BudgetReport> {
    let classical_machine = lab.budget_machine()?.label.clone();
    let mut rows = Vec::new();
    for kind in &lab.scenario.operation_kinds {
        for &k in &lab.scenario.speedup_exponents {
            let result = crossover_for(lab, &kind.name, k, 1.0)?;
            let mut r = row(
                &kind.name,
                format!("m_max k={}", fmt_k(k)),
                "ops",
                result.m_max,
            );
            r.note = Some(format!("floor {:.0}", result.m_max.floor()));
            rows.push(r);
        }
    }
    Ok(BudgetReport {
        classical_machine,
        time_budget_s: lab.scenario.time_budget_s,
        exponents: lab.scenario.speedup_exponents.clone(),
        rows,
    })
}

impl BudgetReport {
    pub fn to_text(&self) -> String {
        let mut headers = vec!["kind".to_string()];
        headers.extend(self.exponents.iter().map(|k| format!("k={}", fmt_k(*k))));
        let mut kinds: Vec<String> = Vec::new();
        for r in &self.rows {
            if !kinds.contains(&r.label) {
                kinds.push(r.label.clone());
            }
        }
        let body: Vec<Vec<String>> = kinds
            .iter()
            .map(|kind| {
                let mut cells = vec![kind.clone()];
                for k in &self.exponents {
                    let quantity = format!("m_max k={}", fmt_k(*k));
                    let r = self
                        .rows
                        .iter()
                        .find(|r| &r.label == kind && r.quantity == quantity)
                        .expect("the budget grid is complete");
                    cells.push(r.display.clone());
                }
                cells
            })
            .collect();
        let mut out = format!(
            "largest affordable oracle size m_max [ops] — {} vs quantum, T = {} s\n\n",
            self.classical_machine,
            display_value(self.time_budget_s)
        );
        out.push_str(&render_table(&headers, &body));
        out
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,k,m_max_ops,m_max_floor\n");
        for r in &self.rows {
            let k = r
                .quantity
                .strip_prefix("m_max k=")
                .expect("budget quantities are m_max entries");
            out.push_str(&format!(
                "{},{},{},{:.0}\n",
                r.label,
                k,
                format_full(r.value),
                r.value.floor()
            ));
        }
        out
    }
}

// ----- crossover -----------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CrossoverReport {
    pub kind: String,
    pub k: f64,
    pub oracle_ops: f64,
    pub time_budget_s: f64,
    pub classical_machine: String,
    pub result: CrossoverResult,
    /// The crossover runtime itself overruns the time budget.
    pub exceeds_time_budget: bool,
    pub curve: Vec<CurvePoint>,
}

/// Runtime curves around the crossover for one kind and exponent. The
/// default grid spans four decades to either side of the crossover size.
pub fn cmd_crossover(
    lab: &Lab,
    kind: &str,
    k: f64,
    oracle_ops: f64,
    grid_from: Option<f64>,
    grid_to: Option<f64>,
    grid_points: usize,
) -> CliResult<CrossoverReport> {
    let classical = lab.budget_machine()?;
    let classical_machine = classical.label.clone();
    let classical_op_time_s = classical.op_time_s(kind)?;
    let result = crossover_for(lab, kind, k, oracle_ops)?;
    let quantum_rate = lab
        .quantum
        .throughput(kind)
        .expect("crossover_for already checked the kind");
    let query = CrossoverQuery {
        exponent: SpeedupExponent::Polynomial(k),
        classical_op_time_s,
        quantum_op_time_s: 1.0 / quantum_rate,
        oracle_ops,
        time_limit_s: lab.scenario.time_budget_s,
    };
    let from = grid_from.unwrap_or(result.n_star * 1e-4);
    let to = grid_to.unwrap_or(result.n_star * 1e4);
    let grid = log_grid(from, to, grid_points)?;
    let curve = runtime_curve(&query, &grid)?;
    Ok(CrossoverReport {
        kind: kind.to_string(),
        k,
        oracle_ops,
        time_budget_s: lab.scenario.time_budget_s,
        classical_machine,
        result,
        exceeds_time_budget: result.t_star_s > lab.scenario.time_budget_s,
        curve,
    })
}

impl CrossoverReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let r = &self.result;
        let mut lines = vec![format!(
            "crossover — kind {}, k = {}, oracle_ops {}, {} vs quantum, T = {} s",
            self.kind,
            fmt_k(self.k),
            display_value(self.oracle_ops),
            self.classical_machine,
            display_value(self.time_budget_s)
        )];
        let mut star = format!(
            "n_star {} calls; t_star {} s",
            display_value(r.n_star),
            display_value(r.t_star_s)
        );
        if self.exceeds_time_budget {
            star.push_str(" [exceeds the time budget]");
        }
        lines.push(star);
        lines.push(format!(
            "m_max {} ops (floor {:.0})",
            display_value(r.m_max),
            r.m_max.floor()
        ));
        lines.push(if r.feasible {
            format!(
                "advantage window: N in [{}, {}] at this oracle size",
                display_value(r.n_min),
                display_value(r.n_max)
            )
        } else {
            format!(
                "no advantage window at this oracle size: n_min {} exceeds n_max {}",
                display_value(r.n_min),
                display_value(r.n_max)
            )
        });
        lines
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary_lines().join("\n");
        out.push_str("\n\n");
        let headers = vec![
            "N".to_string(),
            "T_classical_s".to_string(),
            "T_quantum_s".to_string(),
            "crossover".to_string(),
        ];
        let body: Vec<Vec<String>> = self
            .curve
            .iter()
            .map(|p| {
                vec![
                    display_value(p.n),
                    display_value(p.t_classical_s),
                    display_value(p.t_quantum_s),
                    if p.is_crossover { "yes" } else { "" }.to_string(),
                ]
            })
            .collect();
        out.push_str(&render_table(&headers, &body));
        out
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,T_classical_s,T_quantum_s,is_crossover\n");
        for p in &self.curve {
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_full(p.n),
                format_full(p.t_classical_s),
                format_full(p.t_quantum_s),
                p.is_crossover
            ));
        }
        out
    }
}

// ----- classify ------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub classical_machine: String,
    pub time_budget_s: f64,
    pub verdicts: Vec<Verdict>,
}

/// Classify the scenario's application profiles (plus the built-in survey
/// when requested), in stable name order.
pub fn cmd_classify(lab: &Lab, use_presets: bool) -> CliResult<ClassifyReport> {
    let mut profiles = lab.scenario.applications.clone();
    if use_presets {
        profiles.extend(preset_profiles());
    }
    if profiles.is_empty() {
        return Err(CliError::Usage(
            "the scenario defines no application profiles; pass --presets to classify the \
             built-in survey"
                .to_string(),
        ));
    }
    profiles.sort_by(|a, b| a.name.cmp(&b.name));
    let classical = lab.budget_machine()?;
    let mut verdicts = Vec::new();
    for profile in &profiles {
        verdicts.push(classify(
            profile,
            classical,
            &lab.quantum,
            lab.scenario.time_budget_s,
        )?);
    }
    Ok(ClassifyReport {
        classical_machine: classical.label.clone(),
        time_budget_s: lab.scenario.time_budget_s,
        verdicts,
    })
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "application triage — {} vs quantum, T = {} s\n",
            self.classical_machine,
            display_value(self.time_budget_s)
        );
        for v in &self.verdicts {
            out.push_str(&format!("\n{}: {}\n", v.application, v.category));
            for finding in &v.rationale {
                out.push_str(&format!("  [{}] {}\n", finding.rule, finding.message));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "application,category,effective_k,oracle_ops_total,binding_kind,m_max_ops\n",
        );
        for v in &self.verdicts {
            let k = match v.effective_speedup {
                SpeedupExponent::Polynomial(k) => format_full(k),
                SpeedupExponent::Exponential => "exponential".to_string(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&v.application),
                v.category,
                k,
                format_full(v.oracle_ops_total),
                v.binding_kind.as_deref().unwrap_or(""),
                v.op_budget_ops.map(format_full).unwrap_or_default()
            ));
        }
        out
    }
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

// ----- sweep ---------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub result: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub parameter: String,
    pub quantity: String,
    pub rows: Vec<SweepPoint>,
}

/// Vary one numeric scenario parameter and re-derive a quantity at every
/// sample, rebuilding all machines each time.
pub fn cmd_sweep(base: &Scenario, def: &SweepDef) -> CliResult<SweepReport> {
    def.validate()?;
    let values = sweep_values(def.from, def.to, def.points, def.log_spacing)?;
    let mut rows = Vec::with_capacity(values.len());
    for value in values {
        let swept = set_parameter(base, &def.parameter, value)?;
        swept.validate()?;
        let lab = build_lab(&swept)?;
        rows.push(SweepPoint {
            value,
            result: eval_quantity(&lab, &def.quantity)?,
        });
    }
    Ok(SweepReport {
        parameter: def.parameter.clone(),
        quantity: def.quantity.clone(),
        rows,
    })
}

/// Sample points from `from` to `to` inclusive, in either direction.
fn sweep_values(from: f64, to: f64, points: usize, log_spacing: bool) -> CliResult<Vec<f64>> {
    if points == 0 {
        return Err(CliError::Usage(
            "a sweep needs at least one point".to_string(),
        ));
    }
    if points == 1 || from == to {
        return Ok(vec![from]);
    }
    if log_spacing {
        let (lo, hi, descending) = if from <= to {
            (from, to, false)
        } else {
            (to, from, true)
        };
        let mut values = log_grid(lo, hi, points)?;
        if descending {
            values.reverse();
        }
        Ok(values)
    } else {
        let step = (to - from) / (points - 1) as f64;
        Ok((0..points)
            .map(|i| {
                if i + 1 == points {
                    to
                } else {
                    from + step * i as f64
                }
            })
            .collect())
    }
}

/// Replace one numeric field in the scenario document by dotted path.
fn set_parameter(scenario: &Scenario, path: &str, value: f64) -> CliResult<Scenario> {
    let mut doc = serde_json::to_value(scenario)
        .map_err(|e| CliError::Io(format!("cannot serialize the scenario: {e}")))?;
    let pointer: String = path.split('.').fold(String::new(), |mut acc, segment| {
        acc.push('/');
        acc.push_str(&segment.replace('~', "~0").replace('/', "~1"));
        acc
    });
    let child = doc.pointer_mut(&pointer).ok_or_else(|| {
        CliError::Usage(format!(
            "parameter path `{path}` does not exist in the scenario document"
        ))
    })?;
    if !child.is_number() {
        return Err(CliError::Usage(format!(
            "parameter path `{path}` does not name a numeric field"
        )));
    }
    // Integer-typed fields (qubit budgets, code distances) take the nearest
    // whole number; everything else takes the exact float.
    *child = if child.is_f64() {
        Value::from(value)
    } else {
        Value::from(value.round() as i64)
    };
    serde_json::from_value(doc).map_err(|e| {
        CliError::Model(Error::config(
            path,
            format!("the swept value {value} does not fit this field: {e}"),
        ))
    })
}

/// Evaluate one quantity spec against a built lab.
pub fn eval_quantity(lab: &Lab, spec: &str) -> CliResult<f64> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse_k = |text: &str| -> CliResult<f64> {
        text.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("quantity `{spec}`: `{text}` is not a number")))
    };
    match parts.as_slice() {
        ["throughput", machine, kind] => {
            if *machine == "quantum" {
                lab.quantum.throughput(kind).ok_or_else(|| {
                    CliError::Model(Error::config(
                        format!("quantum.{kind}"),
                        "kind has no derived throughput on the quantum machine",
                    ))
                })
            } else {
                let m = lab.machines.get(*machine).ok_or_else(|| {
                    CliError::Model(Error::config(
                        format!("machines.{machine}"),
                        "no classical machine with this label",
                    ))
                })?;
                Ok(m.throughput(kind)?)
            }
        }
        ["io", machine] => {
            if *machine == "quantum" {
                Ok(lab.quantum.io_bandwidth_bit_s)
            } else {
                let m = lab.machines.get(*machine).ok_or_else(|| {
                    CliError::Model(Error::config(
                        format!("machines.{machine}"),
                        "no classical machine with this label",
                    ))
                })?;
                Ok(m.io_bandwidth_bit_s)
            }
        }
        ["units", kind] => {
            let layout = lab.quantum.layouts.get(*kind).ok_or_else(|| {
                CliError::Model(Error::config(
                    format!("quantum.{kind}"),
                    "kind has no unit layout on the quantum machine",
                ))
            })?;
            Ok(layout.units as f64)
        }
        ["m_max", kind, k] => Ok(crossover_for(lab, kind, parse_k(k)?, 1.0)?.m_max),
        ["n_star", kind, k] => Ok(crossover_for(lab, kind, parse_k(k)?, 1.0)?.n_star),
        _ => Err(CliError::Usage(format!(
            "unknown quantity `{spec}`; expected throughput:<machine>:<kind>, io:<machine>, \
             units:<kind>, m_max:<kind>:<k>, or n_star:<kind>:<k>"
        ))),
    }
}

impl SweepReport {
    pub fn to_text(&self) -> String {
        let headers = vec![self.parameter.clone(), self.quantity.clone()];
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|p| vec![display_value(p.value), display_value(p.result)])
            .collect();
        let mut out = format!("sweep {} — {}\n\n", self.parameter, self.quantity);
        out.push_str(&render_table(&headers, &body));
        out
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.parameter, self.quantity);
        for p in &self.rows {
            out.push_str(&format!(
                "{},{}\n",
                format_full(p.value),
                format_full(p.result)
            ));
        }
        out
    }
}
