//! Operation kinds: the datatypes whose throughput the machine models derive.
//!
//! A kind carries everything the classical and quantum cost models need to
//! know about one operation class: its silicon footprint in gate equivalents,
//! the bit width the quantum multiplier model uses, and whether a vendor
//! datasheet rate for it assumes a 50/50 add/multiply mix.
//!
//! Kinds are configuration data, not a closed enum, so additional datatypes
//! can be modeled without touching the machine code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One class of operation (e.g. a 16-bit float multiply-add).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationKind {
    /// Identifier used in throughput tables and scenario files.
    pub name: String,
    /// Silicon area of one execution unit, in gate equivalents.
    pub gate_equivalents: f64,
    /// Bit width N fed to the quantum multiplier model.
    pub quantum_mult_width: u32,
    /// Whether the raw datasheet rate assumes a 50/50 add/multiply mix and
    /// must be halved to count multiply-adds.
    pub datasheet_mix_halving: bool,
}

impl OperationKind {
    pub fn new(
        name: impl Into<String>,
        gate_equivalents: f64,
        quantum_mult_width: u32,
        datasheet_mix_halving: bool,
    ) -> Result<Self> {
        let kind = OperationKind {
            name: name.into(),
            gate_equivalents,
            quantum_mult_width,
            datasheet_mix_halving,
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gate_equivalents <= 0.0 || !self.gate_equivalents.is_finite() {
            return Err(Error::config(
                format!("operation_kinds.{}.gate_equivalents", self.name),
                "must be positive and finite",
            ));
        }
        if self.quantum_mult_width < 1 {
            return Err(Error::config(
                format!("operation_kinds.{}.quantum_mult_width", self.name),
                "must be at least 1",
            ));
        }
        Ok(())
    }

    /// 16-bit floating point multiply-add: 7 kGE unit, 10-bit mantissa.
    pub fn fp16() -> Self {
        OperationKind {
            name: "fp16".to_string(),
            gate_equivalents: 7_000.0,
            quantum_mult_width: 10,
            datasheet_mix_halving: true,
        }
    }

    /// 32-bit integer multiply-add: 18 kGE unit, full 32-bit width.
    pub fn int32() -> Self {
        OperationKind {
            name: "int32".to_string(),
            gate_equivalents: 18_000.0,
            quantum_mult_width: 32,
            datasheet_mix_halving: true,
        }
    }

    /// Binary logical operation: 50 GE unit, single-bit Toffoli on the
    /// quantum side. Datasheet binary rates are used as listed.
    pub fn binary() -> Self {
        OperationKind {
            name: "binary".to_string(),
            gate_equivalents: 50.0,
            quantum_mult_width: 1,
            datasheet_mix_halving: false,
        }
    }
}

/// The three kinds the default comparison tables cover.
pub fn canonical_kinds() -> Vec<OperationKind> {
    vec![
        OperationKind::fp16(),
        OperationKind::int32(),
        OperationKind::binary(),
    ]
}
