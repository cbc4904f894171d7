//! Known values of π(10^n) for n = 1..25, and a sieve oracle for the small ones.
//!
//! The bundled table is a plain text file, one `n<TAB>value` per line with `#`
//! comments. Loading checks that every exponent 1..25 is present in order,
//! that the values strictly increase, and that the two largest entries equal
//! their pinned values. Entries up to 10^8 can additionally be recomputed by
//! [`sieve_pi`] through [`verify_table`].

use std::fmt;
use std::path::Path;

use rug::Integer;

use crate::error::{Error, Result};

/// Largest exponent held by the table.
pub const MAX_EXPONENT: u32 = 25;

/// Default bound for [`sieve_pi`]; `verify` at this limit takes seconds.
pub const DEFAULT_ORACLE_LIMIT: u64 = 100_000_000;

const BUILTIN: &str = include_str!("../data/pi_powers_of_ten.tsv");

const ANCHORS: [(u32, &str); 2] = [
    (24, "18435599767349200867866"),
    (25, "176846309399143769411680"),
];

/// One row of the table together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub n: u32,
    pub value: Integer,
    pub source: String,
}

/// Immutable, validated table of π(10^n), n = 1..25.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCountTable {
    entries: Vec<Entry>,
}

impl PrimeCountTable {
    /// The table bundled with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, "builtin").expect("bundled table is valid")
    }

    /// Loads a table file, or the bundled table when `path` is `None`.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::builtin()),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                Self::parse(&text, &path.display().to_string())
            }
        }
    }

    /// Parses the `n<TAB>value` text format. `origin` names the source in
    /// each entry's provenance string.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries: Vec<Entry> = Vec::with_capacity(MAX_EXPONENT as usize);
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split('\t');
            let (Some(n_field), Some(value_field), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(load_err(line, "expected `n<TAB>value`"));
            };
            let n: u32 = n_field
                .trim()
                .parse()
                .map_err(|_| load_err(line, format!("bad exponent {n_field:?}")))?;
            let value = parse_natural(value_field.trim())
                .ok_or_else(|| load_err(line, format!("bad value {value_field:?}")))?;

            if n == 0 || n > MAX_EXPONENT {
                return Err(load_err(
                    line,
                    format!("exponent {n} outside 1..={MAX_EXPONENT}"),
                ));
            }
            let expected = entries.len() as u32 + 1;
            if n < expected {
                return Err(load_err(line, format!("exponent {n} out of order")));
            }
            if n > expected {
                return Err(Error::MissingExponent { line, n: expected });
            }
            if let Some(prev) = entries.last() {
                if value <= prev.value {
                    return Err(load_err(
                        line,
                        format!(
                            "value for n = {n} does not exceed the value for n = {}",
                            prev.n
                        ),
                    ));
                }
            }
            entries.push(Entry {
                n,
                value,
                source: format!("{origin}:{line}"),
            });
        }
        if entries.len() < MAX_EXPONENT as usize {
            return Err(Error::MissingExponent {
                line: last_line + 1,
                n: entries.len() as u32 + 1,
            });
        }
        for (n, expected) in ANCHORS {
            let found = &entries[n as usize - 1].value;
            if found.to_string() != *expected {
                return Err(Error::AnchorMismatch {
                    n,
                    found: found.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(Self { entries })
    }

    /// π(10^n). Panics unless `1 <= n <= 25`.
    pub fn pi(&self, n: u32) -> &Integer {
        &self.entry(n).value
    }

    pub fn entry(&self, n: u32) -> &Entry {
        assert!(
            (1..=MAX_EXPONENT).contains(&n),
            "exponent {n} outside 1..={MAX_EXPONENT}"
        );
        &self.entries[n as usize - 1]
    }

    pub fn get(&self, n: u32) -> Option<&Integer> {
        n.checked_sub(1)
            .and_then(|i| self.entries.get(i as usize))
            .map(|e| &e.value)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Renders back to the file format (without provenance).
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{}\t{}\n", e.n, e.value));
        }
        out
    }
}

fn load_err(line: usize, message: impl Into<String>) -> Error {
    Error::Load {
        line,
        message: message.into(),
    }
}

fn parse_natural(s: &str) -> Option<Integer> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Integer::from_str_radix(s, 10).ok()
}

const SEGMENT_BYTES: usize = 1 << 16;

/// Counts primes `<= x` with a segmented, odd-only sieve of Eratosthenes.
/// Refuses anything above `oracle_limit` rather than approximating.
pub fn sieve_pi(x: u64, oracle_limit: u64) -> Result<u64> {
    if x > oracle_limit {
        return Err(Error::OracleLimit {
            x,
            limit: oracle_limit,
        });
    }
    Ok(count_primes(x))
}

fn count_primes(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    if x < 3 {
        return 1;
    }
    // Odd numbers 2i+1 for i in 0..=half_max; index 0 (the number 1) is not prime.
    let half_max = (x - 1) / 2;
    let root = isqrt(x);
    let base = small_odd_primes(root);

    let mut count = 1; // the prime 2
    let mut segment = vec![true; SEGMENT_BYTES];
    let mut low = 0u64;
    while low <= half_max {
        let high = (low + SEGMENT_BYTES as u64 - 1).min(half_max);
        let len = (high - low + 1) as usize;
        segment[..len].fill(true);
        for &p in &base {
            let square = p * p;
            if square > 2 * high + 1 {
                break;
            }
            // first odd multiple of p that is >= max(p^2, 2*low+1)
            let start_num = square.max((2 * low + 1).div_ceil(p) * p);
            let start_num = if start_num % 2 == 0 {
                start_num + p
            } else {
                start_num
            };
            let mut i = ((start_num - 1) / 2 - low) as usize;
            while i < len {
                segment[i] = false;
                i += p as usize;
            }
        }
        if low == 0 {
            segment[0] = false;
        }
        count += segment[..len].iter().filter(|&&b| b).count() as u64;
        low = high + 1;
    }
    count
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        if i > 2 {
            primes.push(i as u64);
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCheck {
    pub n: u32,
    pub table_value: Integer,
    pub sieve_value: u64,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.table_value == self.sieve_value
    }
}

/// Outcome of comparing table entries against the sieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub checks: Vec<TableCheck>,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(TableCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&TableCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "n={:<2} table={:<12} sieve={:<12} {status}",
                c.n, c.table_value, c.sieve_value
            )?;
        }
        Ok(())
    }
}

/// Recomputes π(10^n) for n = 1..=max_n and compares with the table.
/// Mismatches are report content, not errors; the only error is a `max_n`
/// whose power of ten exceeds `oracle_limit`.
pub fn verify_table(table: &PrimeCountTable, max_n: u32, oracle_limit: u64) -> Result<TableReport> {
    let top = 10u64
        .checked_pow(max_n)
        .filter(|_| max_n <= MAX_EXPONENT)
        .ok_or(Error::OutOfRange {
            what: "max_n",
            value: max_n.to_string(),
            range: "exponents whose power of ten fits the oracle",
        })?;
    if top > oracle_limit {
        return Err(Error::OracleLimit {
            x: top,
            limit: oracle_limit,
        });
    }
    let mut checks = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let sieve_value = count_primes(10u64.pow(n));
        checks.push(TableCheck {
            n,
            table_value: table.pi(n).clone(),
            sieve_value,
        });
    }
    Ok(TableReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(x: u64) -> u64 {
        (2..=x)
            .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
            .count() as u64
    }

    fn builtin_with(n: u32, value: &str) -> String {
        BUILTIN
            .lines()
            .map(|l| {
                if l.split('\t').next() == Some(&n.to_string()) {
                    format!("{n}\t{value}")
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn builtin_entries() {
        let t = PrimeCountTable::builtin();
        assert_eq!(*t.pi(1), 4);
        assert_eq!(t.pi(25).to_string(), "176846309399143769411680");
        assert_eq!(t.pi(24).to_string(), "18435599767349200867866");
        assert_eq!(t.entries().len(), 25);
        assert!(t.entry(6).source.starts_with("builtin:"));
        assert!(t.entries().windows(2).all(|w| w[1].value > w[0].value));
    }

    #[test]
    fn sieve_matches_brute_force_for_small_x() {
        for x in 0..2000 {
            assert_eq!(
                sieve_pi(x, DEFAULT_ORACLE_LIMIT).unwrap(),
                brute_force(x),
                "x = {x}"
            );
        }
    }

    #[test]
    fn sieve_crosses_segment_boundaries() {
        // 2 * SEGMENT_BYTES straddles the first segment edge.
        let x = 2 * SEGMENT_BYTES as u64 + 17;
        assert_eq!(count_primes(x), brute_force(x));
    }

    #[test]
    fn sieve_known_values() {
        assert_eq!(sieve_pi(10, 100).unwrap(), 4);
        assert_eq!(sieve_pi(100, 100).unwrap(), 25);
        assert_eq!(sieve_pi(1_000_000, DEFAULT_ORACLE_LIMIT).unwrap(), 78498);
    }

    #[test]
    fn sieve_refuses_above_limit() {
        assert_eq!(
            sieve_pi(1001, 1000),
            Err(Error::OracleLimit {
                x: 1001,
                limit: 1000
            })
        );
    }

    #[test]
    fn missing_exponent_is_named() {
        let text: String = BUILTIN
            .lines()
            .filter(|l| !l.starts_with("13\t"))
            .collect::<Vec<_>>()
            .join("\n");
        let err = PrimeCountTable::parse(&text, "t").unwrap_err();
        assert!(matches!(err, Error::MissingExponent { n: 13, .. }));
        assert!(err.to_string().contains("missing exponent 13"));
    }

    #[test]
    fn truncated_file_reports_missing_tail() {
        let text: String = BUILTIN
            .lines()
            .filter(|l| !l.starts_with("25\t"))
            .collect::<Vec<_>>()
            .join("\n");
        let err = PrimeCountTable::parse(&text, "t").unwrap_err();
        assert!(matches!(err, Error::MissingExponent { n: 25, .. }));
    }

    #[test]
    fn non_monotone_value_rejected() {
        let err = PrimeCountTable::parse(&builtin_with(5, "1000"), "t").unwrap_err();
        assert!(matches!(err, Error::Load { .. }), "{err}");
    }

    #[test]
    fn malformed_line_rejected() {
        let err = PrimeCountTable::parse(&builtin_with(7, "66x4579"), "t").unwrap_err();
        let Error::Load { line, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!(BUILTIN.lines().nth(line - 1).unwrap(), "7\t664579");
        let err = PrimeCountTable::parse("1 4\n", "t").unwrap_err();
        assert_eq!(
            err,
            Error::Load {
                line: 1,
                message: "expected `n<TAB>value`".into()
            }
        );
    }

    #[test]
    fn anchor_mismatch_is_fatal() {
        let err =
            PrimeCountTable::parse(&builtin_with(25, "176846309399143769411681"), "t").unwrap_err();
        assert!(matches!(err, Error::AnchorMismatch { n: 25, .. }));
    }

    #[test]
    fn tsv_round_trip() {
        let t = PrimeCountTable::builtin();
        assert_eq!(
            PrimeCountTable::parse(&t.to_tsv(), "again").unwrap().pi(17),
            t.pi(17)
        );
    }

    #[test]
    fn verify_small_prefix() {
        let report = verify_table(&PrimeCountTable::builtin(), 4, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(report.checks.len(), 4);
        assert!(report.all_passed());
    }

    #[test]
    fn verify_detects_corruption() {
        let t = PrimeCountTable::parse(&builtin_with(3, "169"), "t").unwrap();
        let report = verify_table(&t, 3, DEFAULT_ORACLE_LIMIT).unwrap();
        assert!(!report.all_passed());
        assert_eq!(report.first_failure().unwrap().n, 3);
    }

    #[test]
    fn verify_respects_oracle_limit() {
        let err = verify_table(&PrimeCountTable::builtin(), 5, 10_000).unwrap_err();
        assert!(matches!(err, Error::OracleLimit { .. }));
    }
}
