//! Analytical performance models for comparing classical chips against
//! fault-tolerant quantum machines.
//!
//! The crate answers one question: for an algorithm with a polynomial (or
//! exponential) speedup, when does a quantum computer actually finish
//! first — and does the answer survive the realities of operation
//! throughput and input bandwidth?
//!
//! It is organized as a pipeline:
//!
//! - [`ops`] names the operation kinds (fp16, int32, binary) and their
//!   per-kind parameters;
//! - [`machines`] derives classical throughput tables from datasheet,
//!   gate-equivalent ASIC, or serial depth-limited chip models;
//! - [`qarith`] derives quantum throughput from magic-state factories and
//!   multiplier circuits packed into a logical-qubit budget;
//! - [`crossover`] solves the runtime algebra: crossover sizes, feasible
//!   windows, and oracle operation budgets;
//! - [`verdict`] screens whole applications through I/O, black-box-cap,
//!   and budget gates.
//!
//! Everything is a pure function of explicit specs: no globals, no
//! randomness, no I/O. Two identical inputs always produce bit-identical
//! outputs, which the serialization layer upstream relies on.

pub mod crossover;
pub mod error;
pub mod machines;
pub mod ops;
pub mod qarith;
pub mod verdict;

pub use crossover::{
    classical_runtime, crossover_point, evaluate_crossover, feasible_call_range, log_grid,
    op_budget, quantum_runtime, runtime_curve, CrossoverPoint, CrossoverQuery, CrossoverResult,
    CurvePoint, FeasibleRange, OpBudget, SpeedupExponent,
};
pub use error::{Error, Result};
pub use machines::{
    asic_throughput, asic_unit_count, build_classical_machine, datasheet_throughput,
    default_asic_spec, default_datasheet_spec, default_depth_limited_spec,
    depth_limited_throughput, AsicChipSpec, ClassicalChipSpec, ClassicalMachine, DatasheetChipSpec,
    DepthLimitedSpec,
};
pub use ops::{canonical_kinds, OperationKind};
pub use qarith::{
    build_quantum_machine, default_quantum_spec, factory_logical_equiv, multiplier_resources,
    quantum_io_bandwidth, quantum_throughput, unit_layout, FactorySpec, MultiplierSpec,
    QuantumMachine, QuantumMachineSpec, QuantumUnitLayout, REFERENCE_FACTORIES_PER_UNIT,
};
pub use verdict::{
    blackbox_cap, classify, io_bound_check, preset_profiles, ApplicationProfile, Finding, Verdict,
    VerdictCategory, BLACK_BOX_MAX_EXPONENT,
};
