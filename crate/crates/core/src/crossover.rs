//! Crossover algebra for polynomially accelerated oracle algorithms.
//!
//! The model compares a classical solver doing `N^k · M` operations against
//! a quantum solver doing `N · M` operations, where `N` is the problem size
//! in oracle calls, `k > 1` the speedup exponent, and `M` the operation
//! count of one oracle call. With per-operation times `t_c` and `t_q` the
//! runtimes are
//!
//! ```text
//! T_classical(N) = N^k · M · t_c        T_quantum(N) = N · M · t_q
//! ```
//!
//! Quantum wins beyond the crossover size `N* = (t_q / t_c)^(1/(k−1))`, and
//! a wall-clock limit `T` caps the useful sizes at `N ≤ T / (M · t_q)`.
//! Requiring a non-empty window between the two yields the oracle budget
//! `M_max = T · (t_c / t_q^k)^(1/(k−1))`: the largest oracle that can show
//! an advantage within the time limit. At exactly that budget the window
//! collapses to a single point.
//!
//! All powers are evaluated in log space so exponents close to 1 (where
//! `1/(k−1)` explodes) stay well-conditioned instead of overflowing in
//! intermediate terms.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Algorithmic speedup: quantum does `N` oracle calls where classical does
/// `N^k`, or exponentially fewer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedupExponent {
    /// Polynomial advantage with classical exponent `k > 1` (quadratic
    /// speedup means `k = 2`).
    Polynomial(f64),
    /// Super-polynomial advantage; the crossover algebra does not apply.
    Exponential,
}

impl SpeedupExponent {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpeedupExponent::Polynomial(k) if k.is_finite() && *k > 1.0 => Ok(()),
            SpeedupExponent::Polynomial(k) => Err(Error::domain(format!(
                "polynomial speedup exponent must be finite and exceed 1, got {k}"
            ))),
            SpeedupExponent::Exponential => Ok(()),
        }
    }

    /// The polynomial exponent, or an error for exponential speedups.
    pub fn polynomial_k(&self) -> Result<f64> {
        match self {
            SpeedupExponent::Polynomial(k) => Ok(*k),
            SpeedupExponent::Exponential => Err(Error::ExponentialUnsupported(
                "the polynomial crossover algebra does not apply to exponential speedups"
                    .to_string(),
            )),
        }
    }
}

impl Serialize for SpeedupExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpeedupExponent::Polynomial(k) => serializer.serialize_f64(*k),
            SpeedupExponent::Exponential => serializer.serialize_str("exponential"),
        }
    }
}

impl<'de> Deserialize<'de> for SpeedupExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExponentVisitor;

        impl<'de> Visitor<'de> for ExponentVisitor {
            type Value = SpeedupExponent;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number (polynomial exponent) or the string \"exponential\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                Ok(SpeedupExponent::Polynomial(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(SpeedupExponent::Polynomial(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(SpeedupExponent::Polynomial(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v.eq_ignore_ascii_case("exponential") {
                    Ok(SpeedupExponent::Exponential)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ExponentVisitor)
    }
}

/// One crossover question: an algorithm with a given speedup and oracle
/// cost on a given machine pairing, under a wall-clock limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverQuery {
    pub exponent: SpeedupExponent,
    /// Seconds per classical oracle operation (`t_c`).
    pub classical_op_time_s: f64,
    /// Seconds per quantum oracle operation (`t_q`).
    pub quantum_op_time_s: f64,
    /// Operations per oracle call (`M`). Fractional values are accepted so
    /// the budget itself (often below one operation) can be fed back in.
    pub oracle_ops: f64,
    /// Wall-clock limit in seconds (`T`).
    pub time_limit_s: f64,
}

impl CrossoverQuery {
    pub fn validate(&self) -> Result<()> {
        self.exponent.validate()?;
        let positive = |v: f64, field: &str| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, "must be positive and finite"))
            }
        };
        positive(self.classical_op_time_s, "classical_op_time_s")?;
        positive(self.quantum_op_time_s, "quantum_op_time_s")?;
        positive(self.oracle_ops, "oracle_ops")?;
        positive(self.time_limit_s, "time_limit_s")
    }
}

/// Largest oracle operation count that still admits an advantage window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum OpBudget {
    /// Polynomial speedups bound the oracle size to this many operations
    /// (possibly below one, signaling that not even a single operation
    /// fits).
    Bounded(f64),
    /// Exponential speedups leave the oracle size unconstrained by the
    /// crossover algebra (other limits may still apply).
    UnboundedWithinModel,
}

impl OpBudget {
    pub fn bounded(&self) -> Option<f64> {
        match self {
            OpBudget::Bounded(m) => Some(*m),
            OpBudget::UnboundedWithinModel => None,
        }
    }
}

/// Problem sizes with a quantum advantage inside the time limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleRange {
    /// Smallest size where quantum wins: the crossover size.
    pub n_min: f64,
    /// Largest size finishing within the time limit.
    pub n_max: f64,
    /// Whether the window is non-empty (`n_min ≤ n_max`).
    pub feasible: bool,
}

/// Where the runtime curves intersect, at the query's oracle size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverPoint {
    /// Problem size at which both machines take equally long.
    pub n_star: f64,
    /// Common runtime at that size, in seconds.
    pub t_star_s: f64,
}

/// Full answer to one [`CrossoverQuery`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    /// Crossover size: quantum wins for larger problems.
    pub n_star: f64,
    /// Runtime both machines share at the crossover size, in seconds.
    pub t_star_s: f64,
    /// Largest oracle operation count with a non-empty window.
    pub m_max: f64,
    /// Smallest size with an advantage (equals `n_star`).
    pub n_min: f64,
    /// Largest size finishing within the time limit at this oracle size.
    pub n_max: f64,
    /// Whether the window is non-empty at this oracle size.
    pub feasible: bool,
}

/// One sample of the two runtime curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: f64,
    pub t_classical_s: f64,
    pub t_quantum_s: f64,
    /// True on the inserted row marking the crossover size.
    pub is_crossover: bool,
}

fn ln_n_star(query: &CrossoverQuery) -> Result<f64> {
    let k = query.exponent.polynomial_k()?;
    Ok((query.quantum_op_time_s.ln() - query.classical_op_time_s.ln()) / (k - 1.0))
}

fn check_size(n: f64) -> Result<()> {
    if n >= 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "problem size must be non-negative and finite, got {n}"
        )))
    }
}

/// Classical runtime `N^k · M · t_c` at problem size `n` (0 gives 0).
pub fn classical_runtime(query: &CrossoverQuery, n: f64) -> Result<f64> {
    let k = query.exponent.polynomial_k()?;
    check_size(n)?;
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok((k * n.ln() + query.oracle_ops.ln() + query.classical_op_time_s.ln()).exp())
}

/// Quantum runtime `N · M · t_q` at problem size `n` (0 gives 0).
pub fn quantum_runtime(query: &CrossoverQuery, n: f64) -> Result<f64> {
    check_size(n)?;
    Ok(n * query.oracle_ops * query.quantum_op_time_s)
}

/// The crossover size `N* = (t_q/t_c)^(1/(k−1))` and the runtime both
/// machines share there, at the query's oracle size.
pub fn crossover_point(query: &CrossoverQuery) -> Result<CrossoverPoint> {
    query.validate()?;
    let ln_n = ln_n_star(query)?;
    let t_star_s = (ln_n + query.oracle_ops.ln() + query.quantum_op_time_s.ln()).exp();
    Ok(CrossoverPoint {
        n_star: ln_n.exp(),
        t_star_s,
    })
}

/// Largest oracle operation count with a non-empty advantage window:
/// `M_max = T · (t_c / t_q^k)^(1/(k−1)) = T / (t_q · N*)`. The result may
/// be below one, meaning not even a single operation fits. Exponential
/// speedups are unconstrained here.
pub fn op_budget(query: &CrossoverQuery) -> Result<OpBudget> {
    query.validate()?;
    if query.exponent == SpeedupExponent::Exponential {
        return Ok(OpBudget::UnboundedWithinModel);
    }
    let ln_m = query.time_limit_s.ln() - query.quantum_op_time_s.ln() - ln_n_star(query)?;
    Ok(OpBudget::Bounded(ln_m.exp()))
}

/// Sizes where quantum both wins and finishes in time:
/// `n_min = (t_q/t_c)^(1/(k−1))`, `n_max = T / (M · t_q)`, feasible iff
/// `n_min ≤ n_max`. When the quantum op is the faster one (`t_q ≤ t_c`)
/// the lower bound drops to 1 or below: every real size has an advantage.
pub fn feasible_call_range(query: &CrossoverQuery) -> Result<FeasibleRange> {
    query.validate()?;
    let n_min = ln_n_star(query)?.exp();
    let n_max =
        (query.time_limit_s.ln() - query.oracle_ops.ln() - query.quantum_op_time_s.ln()).exp();
    Ok(FeasibleRange {
        n_min,
        n_max,
        feasible: n_min <= n_max,
    })
}

/// Evaluate everything a query asks for in one call.
pub fn evaluate_crossover(query: &CrossoverQuery) -> Result<CrossoverResult> {
    let point = crossover_point(query)?;
    let m_max = match op_budget(query)? {
        OpBudget::Bounded(m) => m,
        // Unreachable: crossover_point has already rejected Exponential.
        OpBudget::UnboundedWithinModel => f64::INFINITY,
    };
    let range = feasible_call_range(query)?;
    Ok(CrossoverResult {
        n_star: point.n_star,
        t_star_s: point.t_star_s,
        m_max,
        n_min: range.n_min,
        n_max: range.n_max,
        feasible: range.feasible,
    })
}

/// A log-spaced size grid from `n_lo` to `n_hi` (inclusive), suitable for
/// [`runtime_curve`]. A single-point grid is just `[n_lo]`.
pub fn log_grid(n_lo: f64, n_hi: f64, points: usize) -> Result<Vec<f64>> {
    if n_lo <= 0.0 || !n_lo.is_finite() || n_hi < n_lo || !n_hi.is_finite() {
        return Err(Error::Input(format!(
            "need finite grid bounds with 0 < lo <= hi, got {n_lo}..{n_hi}"
        )));
    }
    if points == 0 {
        return Err(Error::Input("grid needs at least one point".to_string()));
    }
    if points == 1 || n_lo == n_hi {
        return Ok(vec![n_lo]);
    }
    let (ln_lo, ln_hi) = (n_lo.ln(), n_hi.ln());
    let step = (ln_hi - ln_lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                n_lo
            } else if i + 1 == points {
                n_hi
            } else {
                (ln_lo + step * i as f64).exp()
            }
        })
        .collect())
}

/// Sample both runtime curves on an explicit ascending grid of sizes, plus
/// one inserted row marking the crossover size (also when it lies outside
/// the grid, so the marker is never silently lost). Rows come back sorted
/// by size; the result always holds `n_grid.len() + 1` rows.
pub fn runtime_curve(query: &CrossoverQuery, n_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    query.validate()?;
    if n_grid.is_empty() {
        return Err(Error::Input("size grid must not be empty".to_string()));
    }
    for n in n_grid {
        if *n <= 0.0 || !n.is_finite() {
            return Err(Error::Input(format!(
                "size grid entries must be positive and finite, got {n}"
            )));
        }
    }
    if n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Input(
            "size grid must be strictly ascending".to_string(),
        ));
    }
    let point = crossover_point(query)?;
    let sample = |n: f64, is_crossover: bool| -> Result<CurvePoint> {
        Ok(CurvePoint {
            n,
            t_classical_s: classical_runtime(query, n)?,
            t_quantum_s: quantum_runtime(query, n)?,
            is_crossover,
        })
    };
    let mut rows = Vec::with_capacity(n_grid.len() + 1);
    for &n in n_grid {
        rows.push(sample(n, false)?);
    }
    let marker = sample(point.n_star, true)?;
    let at = rows.partition_point(|row| row.n < marker.n);
    rows.insert(at, marker);
    Ok(rows)
}
