//! Classical chip models and their derived throughput tables.
//!
//! Three models are supported:
//!
//! - **Datasheet**: raw vendor rates per kind, halved where the vendor
//!   assumes a 50/50 add/multiply mix.
//! - **ASIC**: a hypothetical special-purpose chip with the same transistor
//!   budget, filled with execution units sized in gate equivalents. Half the
//!   area is reserved for control, and a transistor-to-gate ratio converts
//!   gate equivalents to transistors.
//! - **Depth-limited**: the worst-case serial scenario where the oracle
//!   admits no parallelism, so the chip retires one operation per cycle
//!   regardless of kind.
//!
//! All derivations are deterministic, side-effect-free functions of the
//! specs; the resulting [`ClassicalMachine`] is immutable and safe to share
//! across sweep workers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::OperationKind;

/// Raw datasheet rates for one chip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasheetChipSpec {
    /// Peak rate per kind as listed on the datasheet, in op/s. For kinds
    /// with several pipelines the entry is their sum.
    pub raw_throughput_op_s: BTreeMap<String, f64>,
    /// Chip I/O bandwidth in bit/s.
    pub io_bandwidth_bit_s: f64,
}

/// Parameters of the gate-equivalent area model for a special-purpose chip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsicChipSpec {
    /// Transistors available on the die.
    pub transistor_budget: f64,
    /// Cycle time in seconds.
    pub cycle_time_s: f64,
    /// Transistors per gate equivalent.
    pub transistors_per_gate: f64,
    /// Multiplier on unit area covering control logic and buffering
    /// (2 means half the chip is control).
    pub control_overhead_factor: f64,
    /// Chip I/O bandwidth in bit/s.
    pub io_bandwidth_bit_s: f64,
}

/// The serial worst case: one operation per cycle, any kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthLimitedSpec {
    /// Operations retired per cycle.
    pub ops_per_cycle: u64,
    /// Clock frequency in Hz.
    pub clock_frequency_hz: f64,
    /// Chip I/O bandwidth in bit/s. The serial scenario keeps the host
    /// chip's I/O interface.
    pub io_bandwidth_bit_s: f64,
}

/// A classical chip spec tagged by model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ClassicalChipSpec {
    Datasheet(DatasheetChipSpec),
    Asic(AsicChipSpec),
    DepthLimited(DepthLimitedSpec),
}

impl ClassicalChipSpec {
    pub fn model_name(&self) -> &'static str {
        match self {
            ClassicalChipSpec::Datasheet(_) => "datasheet",
            ClassicalChipSpec::Asic(_) => "asic",
            ClassicalChipSpec::DepthLimited(_) => "depth_limited",
        }
    }

    pub fn io_bandwidth_bit_s(&self) -> f64 {
        match self {
            ClassicalChipSpec::Datasheet(s) => s.io_bandwidth_bit_s,
            ClassicalChipSpec::Asic(s) => s.io_bandwidth_bit_s,
            ClassicalChipSpec::DepthLimited(s) => s.io_bandwidth_bit_s,
        }
    }

    pub fn validate(&self, field_prefix: &str) -> Result<()> {
        let positive = |v: f64, field: &str| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(
                    format!("{field_prefix}.{field}"),
                    "must be positive and finite",
                ))
            }
        };
        match self {
            ClassicalChipSpec::Datasheet(s) => {
                if s.raw_throughput_op_s.is_empty() {
                    return Err(Error::config(
                        format!("{field_prefix}.raw_throughput_op_s"),
                        "must list at least one kind",
                    ));
                }
                for (kind, rate) in &s.raw_throughput_op_s {
                    positive(*rate, &format!("raw_throughput_op_s.{kind}"))?;
                }
                positive(s.io_bandwidth_bit_s, "io_bandwidth_bit_s")
            }
            ClassicalChipSpec::Asic(s) => {
                positive(s.transistor_budget, "transistor_budget")?;
                positive(s.cycle_time_s, "cycle_time_s")?;
                positive(s.transistors_per_gate, "transistors_per_gate")?;
                positive(s.control_overhead_factor, "control_overhead_factor")?;
                positive(s.io_bandwidth_bit_s, "io_bandwidth_bit_s")
            }
            ClassicalChipSpec::DepthLimited(s) => {
                if s.ops_per_cycle == 0 {
                    return Err(Error::config(
                        format!("{field_prefix}.ops_per_cycle"),
                        "must be at least 1",
                    ));
                }
                positive(s.clock_frequency_hz, "clock_frequency_hz")?;
                positive(s.io_bandwidth_bit_s, "io_bandwidth_bit_s")
            }
        }
    }
}

/// Derived per-kind throughput table for one classical chip.
///
/// `t_c(kind)` — the per-operation time used by the crossover algebra — is
/// the reciprocal of the table entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalMachine {
    pub label: String,
    pub model: String,
    /// op/s per kind name.
    pub throughput_op_s: BTreeMap<String, f64>,
    /// bit/s.
    pub io_bandwidth_bit_s: f64,
}

impl ClassicalMachine {
    /// Throughput for `kind`, or a configuration error naming it.
    pub fn throughput(&self, kind: &str) -> Result<f64> {
        self.throughput_op_s.get(kind).copied().ok_or_else(|| {
            Error::config(
                format!("machines.{}.throughput.{kind}", self.label),
                "kind has no derived throughput on this machine",
            )
        })
    }

    /// Seconds per operation of `kind`.
    pub fn op_time_s(&self, kind: &str) -> Result<f64> {
        Ok(1.0 / self.throughput(kind)?)
    }
}

/// Effective datasheet rate for one kind: the raw rate, halved when the
/// vendor number assumes a 50/50 add/multiply mix.
pub fn datasheet_throughput(spec: &DatasheetChipSpec, kind: &OperationKind) -> Result<f64> {
    let raw = spec
        .raw_throughput_op_s
        .get(&kind.name)
        .copied()
        .ok_or_else(|| {
            Error::config(
                format!("raw_throughput_op_s.{}", kind.name),
                "datasheet lists no raw rate for this kind",
            )
        })?;
    Ok(if kind.datasheet_mix_halving {
        raw / 2.0
    } else {
        raw
    })
}

/// Number of execution units of `kind` that fit on the ASIC.
///
/// Unit counts are floored: fractional execution units are physically
/// meaningless.
pub fn asic_unit_count(spec: &AsicChipSpec, kind: &OperationKind) -> Result<u64> {
    let per_unit = kind.gate_equivalents * spec.transistors_per_gate * spec.control_overhead_factor;
    if per_unit <= 0.0 || !per_unit.is_finite() {
        return Err(Error::config(
            format!("operation_kinds.{}.gate_equivalents", kind.name),
            "per-unit transistor cost must be positive",
        ));
    }
    Ok((spec.transistor_budget / per_unit).floor() as u64)
}

/// Total ASIC rate for one kind: every unit retires one operation per cycle.
pub fn asic_throughput(spec: &AsicChipSpec, kind: &OperationKind) -> Result<f64> {
    let units = asic_unit_count(spec, kind)?;
    Ok(units as f64 / spec.cycle_time_s)
}

/// Throughput of the depth-limited serial scenario (kind-independent).
pub fn depth_limited_throughput(spec: &DepthLimitedSpec) -> f64 {
    spec.ops_per_cycle as f64 * spec.clock_frequency_hz
}

/// Assemble the per-kind throughput table for one chip spec.
pub fn build_classical_machine(
    label: impl Into<String>,
    spec: &ClassicalChipSpec,
    kinds: &[OperationKind],
) -> Result<ClassicalMachine> {
    let label = label.into();
    spec.validate(&format!("machines.{label}"))?;
    let mut throughput_op_s = BTreeMap::new();
    for kind in kinds {
        kind.validate()?;
        let rate = match spec {
            ClassicalChipSpec::Datasheet(s) => datasheet_throughput(s, kind)?,
            ClassicalChipSpec::Asic(s) => asic_throughput(s, kind)?,
            ClassicalChipSpec::DepthLimited(s) => depth_limited_throughput(s),
        };
        if rate <= 0.0 || !rate.is_finite() {
            return Err(Error::config(
                format!("machines.{label}.throughput.{}", kind.name),
                "derived throughput must be positive and finite",
            ));
        }
        throughput_op_s.insert(kind.name.clone(), rate);
    }
    Ok(ClassicalMachine {
        label,
        model: spec.model_name().to_string(),
        throughput_op_s,
        io_bandwidth_bit_s: spec.io_bandwidth_bit_s(),
    })
}

/// Default datasheet spec: a contemporary 54.2B-transistor accelerator.
/// fp16 combines the 312 Top/s tensor-core and 78 Top/s pipeline rates.
pub fn default_datasheet_spec() -> DatasheetChipSpec {
    let mut raw = BTreeMap::new();
    raw.insert("fp16".to_string(), 390e12);
    raw.insert("int32".to_string(), 19.5e12);
    raw.insert("binary".to_string(), 4_992e12);
    DatasheetChipSpec {
        raw_throughput_op_s: raw,
        io_bandwidth_bit_s: 1e13,
    }
}

/// Default ASIC spec: same transistor budget and process as the datasheet
/// chip, filled with dedicated execution units.
pub fn default_asic_spec() -> AsicChipSpec {
    AsicChipSpec {
        transistor_budget: 5.42e10,
        cycle_time_s: 0.7e-9,
        transistors_per_gate: 10.0,
        control_overhead_factor: 2.0,
        io_bandwidth_bit_s: 1e13,
    }
}

/// Default depth-limited spec: 2 GHz, one operation per cycle.
pub fn default_depth_limited_spec() -> DepthLimitedSpec {
    DepthLimitedSpec {
        ops_per_cycle: 1,
        clock_frequency_hz: 2e9,
        io_bandwidth_bit_s: 1e13,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::canonical_kinds;
    use approx::assert_relative_eq;

    fn kinds() -> Vec<OperationKind> {
        canonical_kinds()
    }

    #[test]
    fn datasheet_rates_match_published_column() {
        let spec = default_datasheet_spec();
        let fp16 = datasheet_throughput(&spec, &OperationKind::fp16()).unwrap();
        let int32 = datasheet_throughput(&spec, &OperationKind::int32()).unwrap();
        let binary = datasheet_throughput(&spec, &OperationKind::binary()).unwrap();
        // (312 + 78) / 2 = 195 Top/s; 19.5 / 2 = 9.75 Top/s; binary as listed.
        assert_eq!(fp16, 195e12);
        assert_eq!(int32, 9.75e12);
        assert_eq!(binary, 4_992e12);
    }

    #[test]
    fn datasheet_unknown_kind_names_the_kind() {
        let spec = default_datasheet_spec();
        let bf16 = OperationKind::new("bf16", 6_500.0, 8, true).unwrap();
        let err = datasheet_throughput(&spec, &bf16).unwrap_err();
        assert!(err.to_string().contains("bf16"), "error was: {err}");
    }

    #[test]
    fn asic_unit_counts_floor() {
        let spec = default_asic_spec();
        assert_eq!(
            asic_unit_count(&spec, &OperationKind::fp16()).unwrap(),
            387_142
        );
        assert_eq!(
            asic_unit_count(&spec, &OperationKind::int32()).unwrap(),
            150_555
        );
        assert_eq!(
            asic_unit_count(&spec, &OperationKind::binary()).unwrap(),
            54_200_000
        );
    }

    #[test]
    fn asic_throughput_matches_published_rates() {
        let spec = default_asic_spec();
        let fp16 = asic_throughput(&spec, &OperationKind::fp16()).unwrap();
        let int32 = asic_throughput(&spec, &OperationKind::int32()).unwrap();
        let binary = asic_throughput(&spec, &OperationKind::binary()).unwrap();
        // 387,142 / 0.7 ns and friends.
        assert_relative_eq!(fp16, 5.5306e14, max_relative = 1e-12);
        assert_relative_eq!(int32, 2.1507857142857144e14, max_relative = 1e-12);
        assert_relative_eq!(binary, 7.742857142857143e16, max_relative = 1e-12);
    }

    #[test]
    fn depth_limited_is_kind_independent() {
        let spec = default_depth_limited_spec();
        assert_eq!(depth_limited_throughput(&spec), 2e9);
        let machine =
            build_classical_machine("serial", &ClassicalChipSpec::DepthLimited(spec), &kinds())
                .unwrap();
        for kind in kinds() {
            assert_eq!(machine.throughput(&kind.name).unwrap(), 2e9);
        }
    }

    #[test]
    fn depth_limited_slowdown_vs_datasheet_fp16() {
        let gpu = build_classical_machine(
            "gpu",
            &ClassicalChipSpec::Datasheet(default_datasheet_spec()),
            &kinds(),
        )
        .unwrap();
        let serial = depth_limited_throughput(&default_depth_limited_spec());
        let slowdown = gpu.throughput("fp16").unwrap() / serial;
        assert_eq!(slowdown, 97_500.0);
    }

    #[test]
    fn depth_limited_at_full_chip_width_equals_asic() {
        // A serial machine as wide as the whole ASIC retires the same rate.
        let asic = default_asic_spec();
        let fp16 = OperationKind::fp16();
        let units = asic_unit_count(&asic, &fp16).unwrap();
        let wide = DepthLimitedSpec {
            ops_per_cycle: units,
            clock_frequency_hz: 1.0 / asic.cycle_time_s,
            io_bandwidth_bit_s: asic.io_bandwidth_bit_s,
        };
        assert_relative_eq!(
            depth_limited_throughput(&wide),
            asic_throughput(&asic, &fp16).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn build_assembles_full_tables() {
        let asic = build_classical_machine(
            "asic",
            &ClassicalChipSpec::Asic(default_asic_spec()),
            &kinds(),
        )
        .unwrap();
        assert_eq!(asic.model, "asic");
        assert_eq!(asic.throughput_op_s.len(), 3);
        assert_eq!(asic.io_bandwidth_bit_s, 1e13);
        assert_relative_eq!(
            asic.op_time_s("fp16").unwrap(),
            1.0 / 5.5306e14,
            max_relative = 1e-12
        );

        let gpu = build_classical_machine(
            "gpu",
            &ClassicalChipSpec::Datasheet(default_datasheet_spec()),
            &kinds(),
        )
        .unwrap();
        assert_eq!(gpu.throughput("binary").unwrap(), 4_992e12);
        assert_eq!(gpu.io_bandwidth_bit_s, 1e13);
    }

    #[test]
    fn build_rejects_invalid_specs() {
        let mut spec = default_asic_spec();
        spec.cycle_time_s = -1.0;
        let err =
            build_classical_machine("asic", &ClassicalChipSpec::Asic(spec), &kinds()).unwrap_err();
        assert!(err.to_string().contains("cycle_time_s"), "error was: {err}");
    }
}
