//! Reference values shipped with the crate as tab-separated fixture files.
//!
//! Lines starting with `#` and blank lines are ignored. Parsing failures
//! panic: the fixtures are compiled in and are not user input.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::analytic::Estimator;
use crate::decimal::{parse_decimal, DecimalLiteral};

const POLYNOMIALS: &str = include_str!("../data/golden/polynomials.tsv");
const PHI25: &str = include_str!("../data/golden/phi25.tsv");
const PSI: &str = include_str!("../data/golden/psi.tsv");
const DELTA_PRIME: &str = include_str!("../data/golden/delta_prime.tsv");
const ESTIMATES: &str = include_str!("../data/golden/estimates.tsv");
const CONJECTURE: &str = include_str!("../data/golden/conjecture.tsv");

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
}

fn decimal(s: &str) -> DecimalLiteral {
    parse_decimal(s).unwrap_or_else(|| panic!("bad decimal fixture {s:?}"))
}

fn integer(s: &str) -> Integer {
    s.parse()
        .unwrap_or_else(|_| panic!("bad integer fixture {s:?}"))
}

/// Monomial coefficients of P_n keyed by n, lowest power first.
pub fn polynomials() -> BTreeMap<u32, Vec<Rational>> {
    let mut out: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
    for row in rows(POLYNOMIALS) {
        let n: u32 = row[0].parse().expect("n");
        let power: usize = row[1].parse().expect("power");
        let coeff: Rational = row[2].parse().expect("coefficient");
        let coeffs = out.entry(n).or_default();
        assert_eq!(coeffs.len(), power, "powers out of order for n = {n}");
        coeffs.push(coeff);
    }
    out
}

fn named_decimals(text: &str) -> Vec<(String, DecimalLiteral)> {
    rows(text)
        .map(|r| (r[0].to_string(), decimal(r[1])))
        .collect()
}

/// Folded coefficients c1..c22 and K of Φ_25 as printed.
pub fn phi25() -> Vec<(String, DecimalLiteral)> {
    named_decimals(PHI25)
}

/// Folded coefficients d1..d4 and M of ψ, then `psi26_abs`.
pub fn psi() -> Vec<(String, DecimalLiteral)> {
    named_decimals(PSI)
}

/// δ′_m keyed by m.
pub fn delta_prime() -> BTreeMap<u32, DecimalLiteral> {
    rows(DELTA_PRIME)
        .map(|r| (r[0].parse().expect("m"), decimal(r[1])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateRow {
    pub n: u32,
    pub estimator: Estimator,
    pub rounded: Integer,
    /// δ″_n, absent where π(10^n) is unknown.
    pub delta: Option<DecimalLiteral>,
}

pub fn estimates() -> Vec<EstimateRow> {
    rows(ESTIMATES)
        .map(|r| EstimateRow {
            n: r[0].parse().expect("n"),
            estimator: Estimator::from_name(r[1]).expect("estimator"),
            rounded: integer(r[2]),
            delta: (r[3] != "-").then(|| decimal(r[3])),
        })
        .collect()
}

/// Named integers of the extrapolation and conjectured range.
pub fn conjecture() -> BTreeMap<String, Integer> {
    rows(CONJECTURE)
        .map(|r| (r[0].to_string(), integer(r[1])))
        .collect()
}
