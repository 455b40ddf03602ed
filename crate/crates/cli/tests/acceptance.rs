//! Acceptance suite: eleven numbered criteria covering the reference
//! figures, the crossover algebra, the application survey, and output
//! determinism. Each test prints one `criterion NN PASS/FAIL` line
//! (visible with `--nocapture`) and fails loudly with every unmet check.
//!
//! Run ordered and verbose with:
//! `cargo test -p qpract --test acceptance -- --test-threads 1 --nocapture`

use std::io::Write;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpract_core::{
    build_classical_machine, build_quantum_machine, canonical_kinds, classical_runtime,
    default_asic_spec, default_datasheet_spec, default_depth_limited_spec, default_quantum_spec,
    evaluate_crossover, feasible_call_range, log_grid, op_budget, quantum_runtime, runtime_curve,
    ClassicalChipSpec, CrossoverQuery, OpBudget, SpeedupExponent,
};

// ----- plumbing -------------------------------------------------------------

struct Criterion {
    number: u8,
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u8, name: &'static str) -> Self {
        Criterion {
            number,
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("criterion {:02} PASS — {}", self.number, self.name);
        } else {
            println!("criterion {:02} FAIL — {}", self.number, self.name);
            for failure in &self.failures {
                println!("    {failure}");
            }
            panic!(
                "criterion {:02} failed — {}: {}",
                self.number,
                self.name,
                self.failures.join("; ")
            );
        }
    }
}

fn within_rel(actual: f64, expected: f64, rel: f64) -> bool {
    (actual - expected).abs() <= rel * expected.abs()
}

fn qpract(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_qpract"))
        .args(args)
        .output()
        .expect("the binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    )
}

fn throughput_rows(extra_args: &[&str]) -> Vec<serde_json::Value> {
    let mut args = vec!["throughput", "--format", "json"];
    args.extend_from_slice(extra_args);
    let (code, stdout, stderr) = qpract(&args);
    assert_eq!(code, 0, "throughput failed: {stderr}");
    serde_json::from_str::<serde_json::Value>(&stdout).expect("valid JSON")["rows"]
        .as_array()
        .expect("a rows array")
        .clone()
}

fn find_row<'a>(
    rows: &'a [serde_json::Value],
    label: &str,
    quantity: &str,
) -> &'a serde_json::Value {
    rows.iter()
        .find(|r| r["label"] == label && r["quantity"] == quantity)
        .unwrap_or_else(|| panic!("no row for {label}/{quantity}"))
}

fn reference_query(kind: &str, k: f64, oracle_ops: f64) -> CrossoverQuery {
    let kinds = canonical_kinds();
    let asic = build_classical_machine(
        "asic".to_string(),
        &ClassicalChipSpec::Asic(default_asic_spec()),
        &kinds,
    )
    .expect("the reference asic builds");
    let quantum = build_quantum_machine("quantum", &default_quantum_spec(), &kinds)
        .expect("the reference quantum machine builds");
    CrossoverQuery {
        exponent: SpeedupExponent::Polynomial(k),
        classical_op_time_s: asic.op_time_s(kind).expect("a known kind"),
        quantum_op_time_s: quantum.op_time_s(kind).expect("a known kind"),
        oracle_ops,
        time_limit_s: 1e6,
    }
}

fn budget_of(query: &CrossoverQuery) -> f64 {
    match op_budget(query).expect("a polynomial budget") {
        OpBudget::Bounded(m) => m,
        OpBudget::UnboundedWithinModel => f64::INFINITY,
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

/// A random query in the regime the model targets: the quantum operation
/// slower than the classical one, with the crossover kept representable.
fn random_query(rng: &mut ChaCha8Rng) -> CrossoverQuery {
    let k = rng.gen_range(1.001f64..=6.0);
    let max_ln_ratio = (600.0 * (k - 1.0)).min(40.0);
    let ln_ratio = rng.gen_range(0.5..=max_ln_ratio);
    let classical_op_time_s = log_uniform(rng, 1e-15, 1e-6);
    CrossoverQuery {
        exponent: SpeedupExponent::Polynomial(k),
        classical_op_time_s,
        quantum_op_time_s: classical_op_time_s * ln_ratio.exp(),
        oracle_ops: 1.0,
        time_limit_s: log_uniform(rng, 1.0, 1e9),
    }
}

// ----- criteria -------------------------------------------------------------

#[test]
fn criterion_01_datasheet_chip_rates_render_exactly() {
    let mut c = Criterion::new(1, "datasheet chip rates and I/O render exactly");
    let rows = throughput_rows(&[]);
    for (quantity, display) in [("fp16", "195"), ("int32", "9.75"), ("binary", "4,992")] {
        let row = find_row(&rows, "gpu", quantity);
        c.check(row["display"] == display && row["unit"] == "Top/s", || {
            format!(
                "gpu {quantity}: wanted display {display:?} Top/s, got {:?} {:?}",
                row["display"], row["unit"]
            )
        });
    }
    let io = find_row(&rows, "gpu", "io");
    c.check(io["display"] == "10,000" && io["unit"] == "Gbit/s", || {
        format!("gpu io: wanted \"10,000\" Gbit/s, got {:?}", io["display"])
    });
    c.finish();
}

#[test]
fn criterion_02_gate_equivalent_rates_match_the_reference() {
    let mut c = Criterion::new(2, "gate-equivalent chip rates match the reference");
    let kinds = canonical_kinds();
    let asic = build_classical_machine(
        "asic".to_string(),
        &ClassicalChipSpec::Asic(default_asic_spec()),
        &kinds,
    )
    .unwrap();
    // Headline figures (3 significant digits) within ±2%, and the
    // full-precision derivation within its printed precision.
    let cases = [
        ("fp16", 550e12, 5.5306e14),
        ("int32", 215e12, 2.1508e14),
        ("binary", 77_000e12, 7.7429e16),
    ];
    for (kind, headline, derived) in cases {
        let rate = asic.throughput(kind).unwrap();
        c.check(within_rel(rate, headline, 0.02), || {
            format!("asic {kind}: {rate:e} not within 2% of {headline:e}")
        });
        c.check(within_rel(rate, derived, 1e-4), || {
            format!("asic {kind}: {rate:e} does not refine to {derived:e}")
        });
    }
    c.finish();
}

#[test]
fn criterion_03_quantum_rates_and_io_match_the_reference() {
    let mut c = Criterion::new(
        3,
        "quantum multiplication rates and I/O match the reference",
    );
    let quantum =
        build_quantum_machine("quantum", &default_quantum_spec(), &canonical_kinds()).unwrap();
    let fp16 = quantum.throughput("fp16").unwrap();
    c.check(within_rel(fp16, 10_500.0, 1e-12), || {
        format!("quantum fp16 rate {fp16:e} is not 10,500 op/s")
    });
    let int32 = quantum.throughput("int32").unwrap();
    c.check(within_rel(int32, 830.078125, 1e-12), || {
        format!("quantum int32 rate {int32:e} is not 830.078125 op/s")
    });
    c.check(within_rel(quantum.io_bandwidth_bit_s, 1e9, 1e-12), || {
        format!(
            "quantum io {:e} is not 1e9 bit/s",
            quantum.io_bandwidth_bit_s
        )
    });
    let rows = throughput_rows(&[]);
    for (quantity, display, unit) in [
        ("fp16", "10.5", "kop/s"),
        ("int32", "0.83", "kop/s"),
        ("io", "1", "Gbit/s"),
    ] {
        let row = find_row(&rows, "quantum", quantity);
        c.check(row["display"] == display && row["unit"] == unit, || {
            format!(
                "quantum {quantity}: wanted {display:?} {unit}, got {:?} {:?}",
                row["display"], row["unit"]
            )
        });
    }
    c.finish();
}

#[test]
fn criterion_04_binary_rate_is_derived_annotated_and_overridable() {
    let mut c = Criterion::new(4, "single-bit rate is derived, annotated, and overridable");
    let quantum =
        build_quantum_machine("quantum", &default_quantum_spec(), &canonical_kinds()).unwrap();
    let derived = quantum.throughput("binary").unwrap();
    c.check(within_rel(derived, 2.3e6, 1e-12), || {
        format!("derived binary rate {derived:e} is not 2.3e6 op/s")
    });
    let rows = throughput_rows(&[]);
    let note = find_row(&rows, "quantum", "binary")["note"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    c.check(note.contains("235 kop/s"), || {
        format!("binary annotation does not mention the published 235 kop/s figure: {note:?}")
    });
    let mut spec = default_quantum_spec();
    spec.binary_throughput_override_op_s = Some(235_000.0);
    let overridden = build_quantum_machine("quantum", &spec, &canonical_kinds()).unwrap();
    let rate = overridden.throughput("binary").unwrap();
    c.check(rate == 235_000.0, || {
        format!("override produced {rate:e}, not 235,000 op/s")
    });
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(
        br#"{"quantum": {
            "logical_qubits": 10000,
            "cycle_time_s": 1e-5,
            "gates_per_io_bit": 1.0,
            "factory": {
                "physical_qubits_per_factory": 147904.0,
                "cycles_per_ccz": 5.5,
                "code_distance": 31
            },
            "binary_throughput_override_op_s": 235000.0
        }}"#,
    )
    .unwrap();
    let rows = throughput_rows(&["--scenario", file.path().to_str().unwrap()]);
    let row = find_row(&rows, "quantum", "binary");
    c.check(
        row["value"] == 235.0
            && row["note"]
                .as_str()
                .unwrap_or_default()
                .contains("override"),
        || format!("scenario override row is wrong: {row}"),
    );
    c.finish();
}

#[test]
fn criterion_05_oracle_budgets_match_the_reference_table() {
    let mut c = Criterion::new(5, "oracle budgets match the reference table");
    let cases = [
        ("fp16", 2.0, 0.2),
        ("fp16", 3.0, 45_800.0),
        ("fp16", 4.0, 2_800_000.0),
        ("binary", 2.0, 68.0),
        ("binary", 3.0, 12_500_000.0),
        ("binary", 4.0, 712_000_000.0),
        ("int32", 3.0, 1_630.0),
        ("int32", 4.0, 130_000.0),
    ];
    for (kind, k, expected) in cases {
        let m = budget_of(&reference_query(kind, k, 1.0));
        c.check(within_rel(m, expected, 0.05), || {
            format!("{kind} k={k}: m_max {m:e} not within 5% of {expected:e}")
        });
    }
    // The int32 quadratic budget only carries one printed digit, so it is
    // held to the band that digit implies.
    let m = budget_of(&reference_query("int32", 2.0, 1.0));
    c.check((0.0025..=0.0035).contains(&m), || {
        format!("int32 k=2: m_max {m:e} outside [0.0025, 0.0035]")
    });
    c.finish();
}

#[test]
fn criterion_06_quadratic_crossover_size_exceeds_ten_billion() {
    let mut c = Criterion::new(6, "quadratic crossover size exceeds ten billion calls");
    let result = evaluate_crossover(&reference_query("fp16", 2.0, 1.0)).unwrap();
    c.check(within_rel(result.n_min, 5.3e10, 0.02), || {
        format!("n_min {:e} is not within 2% of 5.3e10", result.n_min)
    });
    c.check(result.n_min > 1e10, || {
        format!("n_min {:e} does not exceed 1e10", result.n_min)
    });
    c.check(result.n_min == result.n_star, || {
        format!(
            "n_min {:e} differs from n_star {:e}",
            result.n_min, result.n_star
        )
    });
    c.finish();
}

#[test]
fn criterion_07_budget_duality_holds_across_random_queries() {
    let mut c = Criterion::new(7, "budget duality holds across 1,000 random queries");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut duality_failures = 0usize;
    let mut equality_failures = 0usize;
    let mut sign_failures = 0usize;
    for _ in 0..1_000 {
        let base = random_query(&mut rng);
        let result = evaluate_crossover(&base).unwrap();

        // The two runtimes agree at the crossover size.
        let t_c = classical_runtime(&base, result.n_star).unwrap();
        let t_q = quantum_runtime(&base, result.n_star).unwrap();
        if !within_rel(t_c, t_q, 1e-9) {
            equality_failures += 1;
        }

        // At exactly the budget, the advantage window collapses to a point.
        let at_budget = CrossoverQuery {
            oracle_ops: result.m_max,
            ..base
        };
        let range = feasible_call_range(&at_budget).unwrap();
        if !within_rel(range.n_min, range.n_max, 1e-9) {
            duality_failures += 1;
        }

        // The runtime curves cross exactly once on a bracketing grid.
        let grid = log_grid(
            result.n_star * 1e-3 * 0.7311,
            result.n_star * 1e3 * 1.3117,
            41,
        )
        .unwrap();
        let curve = runtime_curve(&base, &grid).unwrap();
        let signs: Vec<i8> = curve
            .iter()
            .filter(|p| !p.is_crossover)
            .map(|p| {
                if p.t_classical_s < p.t_quantum_s {
                    -1
                } else {
                    1
                }
            })
            .collect();
        if signs.windows(2).filter(|w| w[0] != w[1]).count() != 1 {
            sign_failures += 1;
        }
    }
    c.check(equality_failures == 0, || {
        format!("{equality_failures}/1000 samples broke runtime equality at the crossover")
    });
    c.check(duality_failures == 0, || {
        format!("{duality_failures}/1000 samples broke window collapse at the budget")
    });
    c.check(sign_failures == 0, || {
        format!("{sign_failures}/1000 samples did not cross exactly once")
    });
    c.finish();
}

#[test]
fn criterion_08_budgets_move_monotonically() {
    let mut c = Criterion::new(8, "budgets move monotonically with their drivers");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures: Vec<String> = Vec::new();
    for sample in 0..400 {
        let base = random_query(&mut rng);
        let m = budget_of(&base);
        let factor = log_uniform(&mut rng, 1.1, 100.0);
        let delta = rng.gen_range(0.1f64..=2.0);
        let k = match base.exponent {
            SpeedupExponent::Polynomial(k) => k,
            SpeedupExponent::Exponential => unreachable!(),
        };
        let checks = [
            (
                "more time",
                budget_of(&CrossoverQuery {
                    time_limit_s: base.time_limit_s * factor,
                    ..base
                }),
            ),
            (
                "slower classical op",
                budget_of(&CrossoverQuery {
                    classical_op_time_s: base.classical_op_time_s * factor,
                    ..base
                }),
            ),
            (
                "faster quantum op",
                budget_of(&CrossoverQuery {
                    quantum_op_time_s: base.quantum_op_time_s / factor,
                    ..base
                }),
            ),
            (
                "stronger speedup",
                budget_of(&CrossoverQuery {
                    exponent: SpeedupExponent::Polynomial(k + delta),
                    ..base
                }),
            ),
        ];
        for (driver, improved) in checks {
            if improved.partial_cmp(&m) != Some(std::cmp::Ordering::Greater) {
                failures.push(format!("sample {sample}: {driver} did not grow the budget"));
            }
        }
    }
    c.check(failures.is_empty(), || {
        format!(
            "{} monotonicity violations: {}",
            failures.len(),
            failures.join("; ")
        )
    });
    c.finish();
}

#[test]
fn criterion_09_the_survey_splits_three_seven_one() {
    let mut c = Criterion::new(9, "the application survey splits 3/7/1");
    let (code, stdout, stderr) = qpract(&["classify", "--presets", "--format", "json"]);
    assert_eq!(code, 0, "classify failed: {stderr}");
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let verdicts = doc["verdicts"].as_array().unwrap();
    let category = |name: &str| -> String {
        verdicts
            .iter()
            .find(|v| v["application"] == name)
            .unwrap_or_else(|| panic!("no verdict for {name}"))["category"]
            .as_str()
            .unwrap()
            .to_string()
    };
    let expected = [
        ("Shor cryptanalysis", "promising"),
        ("quantum-system simulation", "promising"),
        ("structured linear systems", "promising"),
        ("Grover search", "impractical"),
        ("ML training", "impractical"),
        ("Monte Carlo via quantum walks", "impractical"),
        ("drug design", "impractical"),
        ("protein folding", "impractical"),
        ("turbulent CFD", "impractical"),
        ("weather/climate", "impractical"),
        ("database search", "io-bound"),
    ];
    for (name, want) in expected {
        let got = category(name);
        c.check(got == want, || format!("{name}: wanted {want}, got {got}"));
    }
    let count = |want: &str| verdicts.iter().filter(|v| v["category"] == want).count();
    c.check(
        count("promising") == 3 && count("impractical") == 7 && count("io-bound") == 1,
        || {
            format!(
                "split is {}/{}/{}, wanted 3/7/1",
                count("promising"),
                count("impractical"),
                count("io-bound")
            )
        },
    );
    c.finish();
}

#[test]
fn criterion_10_serial_execution_slowdown_is_exact() {
    let mut c = Criterion::new(10, "depth-limited serial slowdown is exactly 97,500×");
    let kinds = canonical_kinds();
    let gpu = build_classical_machine(
        "gpu".to_string(),
        &ClassicalChipSpec::Datasheet(default_datasheet_spec()),
        &kinds,
    )
    .unwrap();
    let serial = build_classical_machine(
        "serial".to_string(),
        &ClassicalChipSpec::DepthLimited(default_depth_limited_spec()),
        &kinds,
    )
    .unwrap();
    let slowdown = gpu.throughput("fp16").unwrap() / serial.throughput("fp16").unwrap();
    c.check(slowdown == 97_500.0, || {
        format!("slowdown is {slowdown:e}, not exactly 97,500")
    });
    c.finish();
}

#[test]
fn criterion_11_reruns_are_byte_identical() {
    let mut c = Criterion::new(11, "repeated runs are byte-identical");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["throughput"],
        vec!["throughput", "--format", "json"],
        vec!["throughput", "--format", "csv"],
        vec!["budget", "--format", "json"],
        vec!["crossover", "--format", "json", "--grid-points", "11"],
        vec!["classify", "--presets", "--format", "json"],
        vec![
            "sweep",
            "--parameter",
            "quantum.cycle_time_s",
            "--from",
            "1e-5",
            "--to",
            "1e-6",
            "--points",
            "3",
            "--quantity",
            "m_max:fp16:2",
            "--format",
            "csv",
        ],
    ];
    for args in &invocations {
        let (code_a, out_a, _) = qpract(args);
        let (code_b, out_b, _) = qpract(args);
        c.check(code_a == 0 && code_b == 0, || {
            format!("`{}` exited {code_a}/{code_b}", args.join(" "))
        });
        c.check(!out_a.is_empty() && out_a == out_b, || {
            format!("`{}` produced differing bytes across runs", args.join(" "))
        });
    }
    c.finish();
}
