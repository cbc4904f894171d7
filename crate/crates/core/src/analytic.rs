//! High-precision analytic approximations of π(x): x/log x, li, Li, Riemann R
//! and the arctan-refined R, each with a certified absolute error bound.
//!
//! All values are MPFR floats at a working precision derived from a decimal
//! digit count. Error bounds are deliberately loose (a few ulps per operation
//! summed over every term) but rigorous enough for the one thing they police:
//! an integer rounding is refused when the value sits within its bound of a
//! half-integer.

use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::{AddAssignRound, Pow};
use rug::{Float, Integer, Rational};

use crate::decimal::round_half_away;
use crate::error::{Error, Result};
use crate::table::PrimeCountTable;

pub const DEFAULT_DIGITS: u32 = 60;
pub const MIN_DIGITS: u32 = 30;
pub const DEFAULT_JMAX: u32 = 1000;

/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 24;

/// Working precision in bits for `digits` significant decimal digits.
pub fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// A float value with the decimal precision it was computed at and a
/// certified bound on its absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct HighPrecisionReal {
    value: Float,
    digits: u32,
    error_bound: Float,
}

impl HighPrecisionReal {
    fn new(value: Float, digits: u32, error_bound: Float) -> Self {
        Self {
            value,
            digits,
            error_bound,
        }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn error_bound(&self) -> &Float {
        &self.error_bound
    }

    /// Exact rational equal to the stored float.
    pub fn to_rational(&self) -> Rational {
        self.value.to_rational().expect("finite value")
    }

    /// Nearest integer, refused when the error bound reaches 1/2 or the value
    /// is within its bound of a half-integer.
    pub fn round(&self) -> Result<Integer> {
        let exact = self.to_rational();
        let bound = self.error_bound.to_rational().expect("finite bound");
        let refuse = || Error::Precision {
            value: self.to_string(),
            bound: self.error_bound.to_string_radix(10, Some(3)),
        };
        if bound >= Rational::from((1, 2)) {
            return Err(refuse());
        }
        let frac = &exact - Rational::from(exact.floor_ref());
        let gap = (frac - Rational::from((1, 2))).abs();
        if gap <= bound {
            return Err(refuse());
        }
        Ok(round_half_away(&exact))
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.to_string_radix(10, Some(self.digits as usize)))
    }
}

fn check_digits(digits: u32) -> Result<u32> {
    if digits < MIN_DIGITS {
        return Err(Error::InsufficientDigits(digits));
    }
    Ok(bits_for(digits))
}

/// |v|·2^(k − prec), rounded up: k ulps relative to |v|.
fn ulps(v: &Float, k: u32, prec: u32) -> Float {
    let mut out = Float::with_val(prec, v.abs_ref());
    out *= Float::with_val(prec, k);
    out >> prec as i32
}

fn add_up(a: &Float, b: &Float) -> Float {
    let mut s = a.clone();
    s.add_assign_round(b, Round::Up);
    s
}

/// li evaluated at e^L for L > 0, given L with absolute error `log_error`:
/// γ + ln L + Σ_{k≥1} L^k / (k·k!). Every series term is positive.
fn li_from_log(
    log_x: &Float,
    log_error: &Float,
    digits: u32,
    prec: u32,
) -> Result<HighPrecisionReal> {
    const MAX_TERMS: usize = 100_000;
    let gamma = Float::with_val(prec, Constant::Euler);
    let ln_l = Float::with_val(prec, log_x.ln_ref());

    let mut power = Float::with_val(prec, 1); // L^k / k!
    let mut sum = Float::with_val(prec, 0);
    let mut k: u32 = 0;
    let tail = loop {
        k += 1;
        if k as usize > MAX_TERMS {
            return Err(Error::Nonconvergence(MAX_TERMS));
        }
        power *= log_x;
        power /= k;
        let term = Float::with_val(prec, &power / k);
        sum += &term;
        // Past k > L the terms shrink geometrically with ratio below
        // L/(k+1), so the remaining tail is at most term·r/(1−r).
        let ratio = Float::with_val(prec, log_x / (k + 1));
        if ratio < 0.5 && term <= ulps(&sum, 1, prec) {
            let mut t = term * &ratio;
            t /= Float::with_val(prec, 1) - ratio;
            break t;
        }
    };
    let value = Float::with_val(prec, &gamma + &ln_l) + &sum;

    // Rounding: each term accumulates at most 2k+2 ulps, the running sum k ulps.
    let mut bound = ulps(&sum, 4 * k + 8, prec);
    bound = add_up(&bound, &ulps(&gamma, 2, prec));
    bound = add_up(&bound, &ulps(&ln_l, 4, prec));
    bound = add_up(&bound, &tail);
    // d li(e^L)/dL = e^L / L
    let mut sensitivity = Float::with_val(prec, log_x.exp_ref());
    sensitivity /= log_x;
    sensitivity *= log_error;
    bound = add_up(&bound, &ulps(&sensitivity, 2, prec));
    bound = add_up(&bound, &ulps(&value, 2, prec));
    Ok(HighPrecisionReal::new(value, digits, bound))
}

/// ln x with a bound on its absolute error.
fn log_with_error(x: &Float, prec: u32) -> (Float, Float) {
    let log = Float::with_val(prec, x.ln_ref());
    let err = ulps(&log, 2, prec);
    (log, err)
}

fn pow10(n: u32, prec: u32) -> Float {
    Float::with_val(prec, Integer::from(10).pow(n))
}

/// Principal-value logarithmic integral for x > 1.
pub fn li(x: &Float, digits: u32) -> Result<HighPrecisionReal> {
    let prec = check_digits(digits)?;
    if *x <= 1 {
        return Err(Error::OutOfRange {
            what: "x",
            value: x.to_string(),
            range: "x > 1",
        });
    }
    let x = Float::with_val(prec, x);
    let (log, err) = log_with_error(&x, prec);
    li_from_log(&log, &err, digits, prec)
}

/// Offset logarithmic integral Li(x) = li(x) − li(2).
pub fn li_offset(x: &Float, digits: u32) -> Result<HighPrecisionReal> {
    let upper = li(x, digits)?;
    let lower = li(&Float::with_val(bits_for(digits), 2), digits)?;
    let prec = bits_for(digits);
    let value = Float::with_val(prec, &upper.value - &lower.value);
    let bound = add_up(
        &add_up(&upper.error_bound, &lower.error_bound),
        &ulps(&value, 1, prec),
    );
    Ok(HighPrecisionReal::new(value, digits, bound))
}

/// Möbius function values up to a fixed bound, from a linear sieve over
/// smallest prime factors.
#[derive(Debug, Clone)]
pub struct MobiusSieve {
    values: Vec<i8>,
}

impl MobiusSieve {
    pub fn new(limit: u32) -> Self {
        let limit = limit as usize;
        let mut values = vec![0i8; limit + 1];
        let mut smallest = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        if limit >= 1 {
            values[1] = 1;
        }
        for i in 2..=limit {
            if smallest[i] == 0 {
                smallest[i] = i as u32;
                values[i] = -1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > smallest[i] || m > limit {
                    break;
                }
                smallest[m] = p;
                values[m] = if p == smallest[i] { 0 } else { -values[i] };
            }
        }
        Self { values }
    }

    pub fn limit(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// μ(j) for 1 ≤ j ≤ limit.
    pub fn get(&self, j: u32) -> Result<i8> {
        if j == 0 || j > self.limit() {
            return Err(Error::OutOfRange {
                what: "j",
                value: j.to_string(),
                range: "1..=sieve limit",
            });
        }
        Ok(self.values[j as usize])
    }

    /// Grows the sieve so that it covers at least `limit`.
    pub fn extend_to(&mut self, limit: u32) {
        if limit > self.limit() {
            *self = Self::new(limit);
        }
    }
}

/// μ(j) for a single j ≥ 1.
pub fn mobius(j: u32) -> Result<i8> {
    MobiusSieve::new(j).get(j)
}

/// Truncated Riemann R(x) = Σ_{j ≤ j_max} μ(j)/j · li(x^{1/j}), summed in
/// ascending j. Each li is taken from ln(x)/j directly.
pub fn riemann_r(x: &Float, j_max: u32, digits: u32) -> Result<HighPrecisionReal> {
    let prec = check_digits(digits)?;
    if *x <= 1 {
        return Err(Error::OutOfRange {
            what: "x",
            value: x.to_string(),
            range: "x > 1",
        });
    }
    let sieve = MobiusSieve::new(j_max.max(1));
    let x = Float::with_val(prec, x);
    let (log, log_err) = log_with_error(&x, prec);
    let mut sum = Float::with_val(prec, 0);
    let mut bound = Float::with_val(prec, 0);
    let mut terms = 0u32;
    for j in 1..=j_max {
        let mu = sieve.get(j)?;
        if mu == 0 {
            continue;
        }
        let log_j = Float::with_val(prec, &log / j);
        let err_j = add_up(&Float::with_val(prec, &log_err / j), &ulps(&log_j, 1, prec));
        let li_j = li_from_log(&log_j, &err_j, digits, prec)?;
        let mut term = Float::with_val(prec, &li_j.value / j);
        if mu < 0 {
            term = -term;
        }
        bound = add_up(&bound, &Float::with_val(prec, &li_j.error_bound / j));
        bound = add_up(&bound, &ulps(&term, 1, prec));
        sum += &term;
        terms += 1;
    }
    bound = add_up(&bound, &ulps(&sum, terms + 1, prec));
    Ok(HighPrecisionReal::new(sum, digits, bound))
}

/// R(x) − 1/ln x + arctan(π/ln x)/π.
pub fn riemann_refined(x: &Float, j_max: u32, digits: u32) -> Result<HighPrecisionReal> {
    let r = riemann_r(x, j_max, digits)?;
    let prec = bits_for(digits);
    let (log, _) = log_with_error(&Float::with_val(prec, x), prec);
    let pi = Float::with_val(prec, Constant::Pi);
    let inv_log = Float::with_val(prec, log.recip_ref());
    let atan = Float::with_val(prec, &pi / &log).atan() / &pi;
    let correction = atan - &inv_log;
    let value = Float::with_val(prec, &r.value + &correction);
    let mut bound = add_up(&r.error_bound, &ulps(&inv_log, 4, prec));
    bound = add_up(&bound, &ulps(&correction, 8, prec));
    bound = add_up(&bound, &ulps(&value, 1, prec));
    Ok(HighPrecisionReal::new(value, digits, bound))
}

/// Round(10^n / (n·ln 10)).
pub fn pnt_estimate(n: u32, digits: u32) -> Result<Integer> {
    pnt_value(n, digits)?.round()
}

fn pnt_value(n: u32, digits: u32) -> Result<HighPrecisionReal> {
    let prec = check_digits(digits)?;
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: "0".into(),
            range: "n >= 1",
        });
    }
    let x = pow10(n, prec);
    let (log, _) = log_with_error(&x, prec);
    let value = Float::with_val(prec, &x / &log);
    let bound = ulps(&value, 4, prec);
    Ok(HighPrecisionReal::new(value, digits, bound))
}

/// Which analytic approximation of π(10^n) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimator {
    /// 10^n / ln 10^n
    Pnt,
    /// li(10^n) − li(2)
    Li,
    /// Riemann R
    R,
    /// R − 1/ln x + arctan(π/ln x)/π
    Refined,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [
        Estimator::Pnt,
        Estimator::Li,
        Estimator::R,
        Estimator::Refined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Pnt => "pnt",
            Estimator::Li => "li",
            Estimator::R => "r",
            Estimator::Refined => "refined",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Working precision and Möbius truncation for the analytic estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyticConfig {
    pub digits: u32,
    pub j_max: u32,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        Self {
            digits: DEFAULT_DIGITS,
            j_max: DEFAULT_JMAX,
        }
    }
}

/// The chosen estimator evaluated at 10^n.
pub fn estimate(estimator: Estimator, n: u32, config: AnalyticConfig) -> Result<HighPrecisionReal> {
    let prec = check_digits(config.digits)?;
    let x = pow10(n, prec);
    match estimator {
        Estimator::Pnt => pnt_value(n, config.digits),
        Estimator::Li => li_offset(&x, config.digits),
        Estimator::R => riemann_r(&x, config.j_max, config.digits),
        Estimator::Refined => riemann_refined(&x, config.j_max, config.digits),
    }
}

/// Round(f(10^n)) for the chosen estimator.
pub fn rounded_estimate(estimator: Estimator, n: u32, config: AnalyticConfig) -> Result<Integer> {
    estimate(estimator, n, config)?.round()
}

/// δ″_n = (π(10^n) − Round(f(10^n))) / π(10^n), exact once the estimate is
/// rounded. Requires a known π(10^n), so 1 ≤ n ≤ 25.
pub fn delta_double_prime(
    table: &PrimeCountTable,
    n: u32,
    estimator: Estimator,
    config: AnalyticConfig,
) -> Result<Rational> {
    let actual = table.get(n).ok_or_else(|| Error::OutOfRange {
        what: "n",
        value: n.to_string(),
        range: "exponents with a known pi(10^n)",
    })?;
    let rounded = rounded_estimate(estimator, n, config)?;
    Ok(Rational::from((
        Integer::from(actual - &rounded),
        actual.clone(),
    )))
}
