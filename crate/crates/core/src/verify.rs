//! The full reproduction check: every published value recomputed and
//! compared against the bundled fixtures.
//!
//! Failures are records, not errors. A pipeline step that errors out (for
//! example on a corrupted table) produces a failing record carrying the error
//! text.

use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::analytic::{self, AnalyticConfig, Estimator};
use crate::decimal::{
    decimal_exponent, positional, pow10_rational, scientific, within_units, DecimalLiteral,
};
use crate::error::Result;
use crate::golden;
use crate::pipeline::{self, DeltaSeries, OffsetForm};
use crate::poly;
use crate::table::{self, PrimeCountTable, MAX_EXPONENT};

/// Check groups in run order.
pub const GROUPS: [&str; 10] = [
    "table",
    "polynomials",
    "reconstruction",
    "phi25",
    "delta_prime",
    "psi",
    "extrapolation",
    "conjecture",
    "estimates",
    "range",
];

/// Allowed distance, in units of the last compared digit, for the printed
/// 50-digit coefficient listings.
pub const DIGIT_UNITS: u32 = 2;

/// Significant digit at which the ψ coefficients are compared.
pub const PSI_DIGIT: u32 = 45;

/// Largest exponent cross-checked against the sieve.
pub const SIEVE_MAX_N: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub group: &'static str,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn first_failing_group(&self) -> Option<&'static str> {
        self.failures().next().map(|r| r.group)
    }

    /// (group, passed, total) in run order.
    pub fn summary(&self) -> Vec<(&'static str, usize, usize)> {
        GROUPS
            .iter()
            .map(|&g| {
                let in_group = self.records.iter().filter(|r| r.group == g);
                let total = in_group.clone().count();
                let passed = in_group.filter(|r| r.pass).count();
                (g, passed, total)
            })
            .collect()
    }

    pub fn group(&self, group: &str) -> impl Iterator<Item = &CheckRecord> {
        let group = group.to_string();
        self.records.iter().filter(move |r| r.group == group)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (group, passed, total) in self.summary() {
            let status = if passed == total { "ok" } else { "FAIL" };
            writeln!(f, "{group:<15} {passed:>3}/{total:<3} {status}")?;
        }
        for r in self.failures() {
            writeln!(
                f,
                "  {}/{}: expected {}, got {}",
                r.group, r.name, r.expected, r.actual
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub oracle_limit: u64,
    pub analytic: AnalyticConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            oracle_limit: table::DEFAULT_ORACLE_LIMIT,
            analytic: AnalyticConfig::default(),
        }
    }
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn push(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) {
        self.records.push(CheckRecord {
            group,
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    fn eq<T: PartialEq + ToString>(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        expected: &T,
        actual: &T,
    ) {
        self.push(
            group,
            name,
            expected.to_string(),
            actual.to_string(),
            expected == actual,
        );
    }

    fn error(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        expected: impl ToString,
        err: impl fmt::Display,
    ) {
        self.push(group, name, expected, format!("error: {err}"), false);
    }

    /// Records a computed value, or the error that replaced it.
    fn compare<T: PartialEq + ToString>(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        expected: &T,
        actual: Result<T>,
    ) {
        match actual {
            Ok(v) => self.eq(group, name, expected, &v),
            Err(e) => self.error(group, name, expected.to_string(), e),
        }
    }
}

/// `actual` rounded to the printed significant digits matches the literal.
pub fn matches_printed(actual: &Rational, printed: &DecimalLiteral) -> bool {
    scientific(actual, printed.significant) == scientific(&printed.value, printed.significant)
}

/// |actual − printed| ≤ units · (place value of the last printed digit).
pub fn within_last_digit(actual: &Rational, printed: &DecimalLiteral, units: u32) -> bool {
    within_units(actual, &printed.value, &printed.last_place, units)
}

/// |actual − printed| ≤ units · 10^(e − digit + 1), e the decimal exponent
/// of the printed value.
pub fn within_significant_digit(
    actual: &Rational,
    printed: &DecimalLiteral,
    digit: u32,
    units: u32,
) -> bool {
    let unit = pow10_rational(decimal_exponent(&printed.value) - i64::from(digit) + 1);
    within_units(actual, &printed.value, &unit, units)
}

/// Runs all ten check groups in order.
pub fn run(table: &PrimeCountTable, config: VerifyConfig) -> VerifyReport {
    let mut rec = Recorder {
        records: Vec::new(),
    };
    check_table(&mut rec, table, config.oracle_limit);
    check_polynomials(&mut rec, table);
    check_reconstruction(&mut rec, table);
    check_phi25(&mut rec, table);
    let series = DeltaSeries::compute(table);
    check_delta_prime(&mut rec, &series);
    check_psi(&mut rec, &series);
    check_extrapolation(&mut rec, table);
    check_conjecture(&mut rec, table);
    let range = check_estimates(&mut rec, table, config.analytic);
    check_range(&mut rec, range);
    VerifyReport {
        records: rec.records,
    }
}

fn check_table(rec: &mut Recorder, table: &PrimeCountTable, oracle_limit: u64) {
    let mut max_n = 0;
    while max_n < SIEVE_MAX_N && 10u64.pow(max_n + 1) <= oracle_limit {
        max_n += 1;
    }
    match table::verify_table(table, max_n, oracle_limit) {
        Ok(report) => {
            for c in report.checks {
                let pass = c.passed();
                rec.push(
                    "table",
                    format!("pi(10^{})", c.n),
                    c.sieve_value,
                    c.table_value,
                    pass,
                );
            }
        }
        Err(e) => rec.error("table", "sieve", "sieve counts", e),
    }
}

fn check_polynomials(rec: &mut Recorder, table: &PrimeCountTable) {
    for (n, expected) in golden::polynomials() {
        let name = format!("P_{n}");
        match poly::fit_polynomial(table, n) {
            Ok(p) => {
                let pass = p.coeffs() == expected.as_slice();
                let mismatches = expected
                    .iter()
                    .zip(p.coeffs())
                    .filter(|(a, b)| a != b)
                    .count()
                    + expected.len().abs_diff(p.coeffs().len());
                rec.push(
                    "polynomials",
                    name,
                    format!("{} printed coefficients", expected.len()),
                    format!("{mismatches} mismatching"),
                    pass,
                );
            }
            Err(e) => rec.error("polynomials", name, "fit", e),
        }
    }
}

fn check_reconstruction(rec: &mut Recorder, table: &PrimeCountTable) {
    let sweep = match pipeline::reconstruction_sweep(table) {
        Ok(s) => s,
        Err(e) => return rec.error("reconstruction", "sweep", "identity for all pairs", e),
    };
    for n in 1..MAX_EXPONENT {
        let failing: Vec<String> = sweep
            .iter()
            .filter(|r| r.n == n && !r.holds())
            .map(|r| format!("x={} gives {} not {}", r.x, r.rounded, r.actual))
            .collect();
        let actual = if failing.is_empty() {
            "all hold".to_string()
        } else {
            failing.join("; ")
        };
        rec.push(
            "reconstruction",
            format!("n={n}"),
            format!("identity for x=1..={n}"),
            actual,
            failing.is_empty(),
        );
    }
}

fn check_phi25(rec: &mut Recorder, table: &PrimeCountTable) {
    let folded = pipeline::corrective_phi(table, MAX_EXPONENT).and_then(|phi| phi.folded());
    let folded = match folded {
        Ok(f) => f,
        Err(e) => return rec.error("phi25", "fit", "23 coefficients", e),
    };
    let ours: Vec<&Rational> = folded
        .heads
        .iter()
        .chain(std::iter::once(&folded.slope))
        .collect();
    for ((name, printed), actual) in golden::phi25().iter().zip(ours) {
        let digits = printed.significant;
        let shown = positional(actual, digits);
        if name == "c1" {
            let exact = Rational::from((61, 84));
            rec.push("phi25", "c1 = 61/84", &exact, actual, *actual == exact);
        }
        let pass = within_last_digit(actual, printed, DIGIT_UNITS);
        rec.push(
            "phi25",
            name.clone(),
            positional(&printed.value, digits),
            shown,
            pass,
        );
    }
}

fn check_delta_prime(rec: &mut Recorder, series: &Result<DeltaSeries>) {
    let series = match series {
        Ok(s) => s,
        Err(e) => return rec.error("delta_prime", "series", "21 values", e),
    };
    for (m, printed) in golden::delta_prime() {
        let expected = scientific(&printed.value, printed.significant);
        match series.delta_prime().get(&m) {
            Some(v) => {
                let actual = scientific(v, printed.significant);
                let pass = actual == expected;
                rec.push("delta_prime", format!("m={m}"), expected, actual, pass);
            }
            None => rec.push("delta_prime", format!("m={m}"), expected, "missing", false),
        }
    }
}

fn check_psi(rec: &mut Recorder, series: &Result<DeltaSeries>) {
    let fitted = match series {
        Ok(s) => pipeline::fit_psi(s).and_then(|psi| {
            let folded = psi.folded()?;
            let magnitude = pipeline::psi_magnitude(&psi, MAX_EXPONENT)?;
            Ok((folded, magnitude))
        }),
        Err(e) => Err(e.clone()),
    };
    let (folded, magnitude) = match fitted {
        Ok(v) => v,
        Err(e) => return rec.error("psi", "fit", "5 coefficients", e),
    };
    let ours: Vec<&Rational> = folded
        .heads
        .iter()
        .chain(std::iter::once(&folded.slope))
        .collect();
    let printed = golden::psi();
    let (coeffs, rest) = printed.split_at(printed.len() - 1);
    for ((name, lit), actual) in coeffs.iter().zip(ours) {
        let pass = within_significant_digit(actual, lit, PSI_DIGIT, DIGIT_UNITS);
        rec.push(
            "psi",
            name.clone(),
            scientific(&lit.value, PSI_DIGIT),
            scientific(actual, PSI_DIGIT),
            pass,
        );
    }
    let (name, lit) = &rest[0];
    rec.push(
        "psi",
        name.clone(),
        scientific(&lit.value, lit.significant),
        scientific(&magnitude, lit.significant),
        matches_printed(&magnitude, lit),
    );
}

fn check_extrapolation(rec: &mut Recorder, table: &PrimeCountTable) {
    let golden = golden::conjecture();
    rec.compare(
        "extrapolation",
        "corrected P_25(26)",
        &golden["center"],
        pipeline::extrapolate_corrected(table, MAX_EXPONENT),
    );
    rec.compare(
        "extrapolation",
        "corrected P_24(25)",
        &golden["corrected_25"],
        pipeline::extrapolate_corrected(table, MAX_EXPONENT - 1),
    );
}

fn check_conjecture(rec: &mut Recorder, table: &PrimeCountTable) {
    let golden = golden::conjecture();
    let result = pipeline::extrapolate_corrected(table, MAX_EXPONENT).and_then(|center| {
        pipeline::conjecture_range(
            &center,
            &pipeline::default_psi_low(),
            &pipeline::default_psi_high(),
            OffsetForm::FirstOrder,
        )
    });
    let result = match result {
        Ok(r) => r,
        Err(e) => return rec.error("conjecture", "range", "offsets and bounds", e),
    };
    let fields: [(&str, &Integer); 6] = [
        ("offset_high", &result.offset_high),
        ("offset_low", &result.offset_low),
        ("symmetric_low", &result.symmetric_low),
        ("symmetric_high", &result.symmetric_high),
        ("onesided_low", &result.onesided_low),
        ("onesided_high", &result.onesided_high),
    ];
    for (name, actual) in fields {
        rec.eq("conjecture", name, &golden[name], actual);
    }
}

/// Rounded Li and R at 10^26, for the membership check.
type RangeInputs = Vec<(Estimator, Result<Integer>)>;

fn check_estimates(
    rec: &mut Recorder,
    table: &PrimeCountTable,
    config: AnalyticConfig,
) -> RangeInputs {
    let mut at_26 = Vec::new();
    for row in golden::estimates() {
        let rounded = analytic::rounded_estimate(row.estimator, row.n, config);
        if row.n == 26 && row.estimator != Estimator::Pnt {
            at_26.push((row.estimator, rounded.clone()));
        }
        rec.compare(
            "estimates",
            format!("Round({}(10^{}))", row.estimator, row.n),
            &row.rounded,
            rounded,
        );
        if let Some(printed) = row.delta {
            let name = format!("delta''({}, {})", row.estimator, row.n);
            let expected = scientific(&printed.value, printed.significant);
            match analytic::delta_double_prime(table, row.n, row.estimator, config) {
                Ok(v) => {
                    let actual = scientific(&v, printed.significant);
                    let pass = actual == expected;
                    rec.push("estimates", name, expected, actual, pass);
                }
                Err(e) => rec.error("estimates", name, expected, e),
            }
        }
    }
    for n in 24..=26 {
        let r = analytic::rounded_estimate(Estimator::R, n, config);
        let refined = analytic::rounded_estimate(Estimator::Refined, n, config);
        let name = format!("Round(refined(10^{n})) = Round(R)");
        match (r, refined) {
            (Ok(r), Ok(refined)) => rec.eq("estimates", name, &r, &refined),
            (Err(e), _) | (_, Err(e)) => rec.error("estimates", name, "equal roundings", e),
        }
    }
    at_26
}

fn check_range(rec: &mut Recorder, inputs: RangeInputs) {
    let golden = golden::conjecture();
    let (low, high) = (&golden["onesided_low"], &golden["onesided_high"]);
    let expected = format!("[{low}, {high}]");
    for (estimator, value) in inputs {
        let name = format!("Round({estimator}(10^26)) in range");
        match value {
            Ok(v) => {
                let pass = low <= &v && &v <= high;
                rec.push("range", name, &expected, &v, pass);
            }
            Err(e) => rec.error("range", name, &expected, e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::parse_decimal;

    #[test]
    fn digit_tolerances() {
        let printed = parse_decimal("1.2345").unwrap();
        assert!(within_last_digit(
            &Rational::from((12347, 10000)),
            &printed,
            2
        ));
        assert!(!within_last_digit(
            &Rational::from((12348, 10000)),
            &printed,
            2
        ));
        // 3rd significant digit of 1.2345 has place value 0.01
        assert!(within_significant_digit(
            &Rational::from((125, 100)),
            &printed,
            3,
            2
        ));
        assert!(!within_significant_digit(
            &Rational::from((127, 100)),
            &printed,
            3,
            2
        ));
        assert!(matches_printed(&Rational::from((123449, 100000)), &printed));
    }

    #[test]
    fn summary_lists_every_group() {
        let report = VerifyReport {
            records: Vec::new(),
        };
        assert_eq!(report.summary().len(), GROUPS.len());
        assert!(report.passed());
        assert_eq!(report.first_failing_group(), None);
    }
}
