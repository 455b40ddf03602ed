//! Report rows and number formatting.
//!
//! Every human-readable number is a pure formatting of a full-precision
//! value that the JSON output carries verbatim, so nothing is lost to
//! display rounding. Display values are rounded to three significant
//! figures with thousands separators; values that are exact integers below
//! 100,000 print in full (a datasheet figure like 4,992 survives as
//! printed), and magnitudes beyond 10⁹ (or below 10⁻⁷) switch to
//! scientific notation. CSV output never uses the display form: values are
//! written in scientific notation at full round-trip precision.

use serde::Serialize;

/// One labeled quantity: full-precision `value` plus its display form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    /// What the quantity belongs to (a machine label or an operation kind).
    pub label: String,
    /// What is being reported (an operation kind, `io`, `m_max k=2`, ...).
    pub quantity: String,
    pub unit: String,
    pub value: f64,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn row(
    label: impl Into<String>,
    quantity: impl Into<String>,
    unit: impl Into<String>,
    value: f64,
) -> ReportRow {
    ReportRow {
        label: label.into(),
        quantity: quantity.into(),
        unit: unit.into(),
        value,
        display: display_value(value),
        note: None,
    }
}

/// Three-significant-figure display with thousands separators; exact
/// integers below 100,000 print in full, and extreme magnitudes use
/// scientific notation.
pub fn display_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sign = if v < 0.0 { "-" } else { "" };
    let a = v.abs();
    if a.fract() == 0.0 && a < 1e5 {
        return format!("{sign}{}", group_thousands(&format!("{a:.0}")));
    }
    // Round to three significant digits, then re-derive the exponent in
    // case rounding carried into the next decade (999.6 → 1,000).
    let exponent = a.log10().floor() as i32;
    let scale = 10f64.powi(exponent - 2);
    let rounded = (a / scale).round() * scale;
    let exponent = rounded.log10().floor() as i32;
    if !(-7..9).contains(&exponent) {
        let mantissa = rounded / 10f64.powi(exponent);
        return format!(
            "{sign}{}e{exponent}",
            trim_fraction(&format!("{mantissa:.2}"))
        );
    }
    let decimals = (2 - exponent).max(0) as usize;
    let text = trim_fraction(&format!("{rounded:.decimals$}"));
    match text.split_once('.') {
        Some((int, frac)) => format!("{sign}{}.{frac}", group_thousands(int)),
        None => format!("{sign}{}", group_thousands(&text)),
    }
}

/// Full-precision scientific form for CSV: round-trips exactly through a
/// float parser and never exceeds 17 significant digits.
pub fn format_full(v: f64) -> String {
    format!("{v:e}")
}

fn group_thousands(digits: &str) -> String {
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    let offset = digits.len() % 3;
    for (i, c) in digits.chars().enumerate() {
        if i != 0 && (i + 3 - offset).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn trim_fraction(text: &str) -> String {
    if !text.contains('.') {
        return text.to_string();
    }
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Render rows as a left-aligned monospace table: one header row, two
/// spaces between columns, every line newline-terminated.
pub fn render_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let columns = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, cell) in r.iter().enumerate().take(columns) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut push_line = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate().take(columns) {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < columns {
                for _ in cell.chars().count()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_line(headers);
    for r in rows {
        push_line(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datasheet_figures_survive_display_rounding() {
        assert_eq!(display_value(195.0), "195");
        assert_eq!(display_value(9.75), "9.75");
        assert_eq!(display_value(4_992.0), "4,992");
        assert_eq!(display_value(10_000.0), "10,000");
    }

    #[test]
    fn three_significant_figures_with_separators() {
        assert_eq!(display_value(553.06), "553");
        assert_eq!(display_value(77_428.571_428), "77,400");
        assert_eq!(display_value(45_750.7), "45,800");
        assert_eq!(display_value(2.8011e6), "2,800,000");
        assert_eq!(display_value(1.253_55e7), "12,500,000");
        assert_eq!(display_value(7.123_12e8), "712,000,000");
        assert_eq!(display_value(1_630.72), "1,630");
        assert_eq!(display_value(130_205.0), "130,000");
    }

    #[test]
    fn fractions_trim_trailing_zeros() {
        assert_eq!(display_value(0.830_078_125), "0.83");
        assert_eq!(display_value(0.199_345), "0.199");
        assert_eq!(display_value(0.003_203_6), "0.0032");
        assert_eq!(display_value(68.321), "68.3");
        assert_eq!(display_value(10.5), "10.5");
        assert_eq!(display_value(0.002), "0.002");
        assert_eq!(display_value(0.999_999_999_999_9), "1");
    }

    #[test]
    fn extreme_magnitudes_use_scientific_notation() {
        assert_eq!(display_value(5.267_238e10), "5.27e10");
        assert_eq!(display_value(1e10), "1e10");
        assert_eq!(display_value(1.81e-15), "1.81e-15");
        assert_eq!(display_value(999_999_999.0), "1e9");
    }

    #[test]
    fn edge_cases_and_signs() {
        assert_eq!(display_value(0.0), "0");
        assert_eq!(display_value(-4_992.0), "-4,992");
        assert_eq!(display_value(-45_750.7), "-45,800");
        assert_eq!(display_value(f64::INFINITY), "inf");
        assert_eq!(display_value(999.6), "1,000");
    }

    #[test]
    fn full_precision_round_trips() {
        for v in [830.078_125, 5.267_238_095_238_095e10, 1e-5, 2.3e6] {
            let text = format_full(v);
            assert_eq!(text.parse::<f64>().unwrap(), v, "{text}");
            let digits = text.chars().filter(|c| c.is_ascii_digit()).count();
            assert!(digits <= 19, "{text}"); // mantissa ≤ 17 + exponent
        }
    }

    #[test]
    fn tables_align_and_terminate_lines() {
        let table = render_table(
            &["kind".to_string(), "rate".to_string()],
            &[
                vec!["fp16".to_string(), "195".to_string()],
                vec!["binary".to_string(), "4,992".to_string()],
            ],
        );
        assert_eq!(table, "kind    rate\nfp16    195\nbinary  4,992\n");
    }
}
