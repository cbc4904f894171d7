//! Exact decimal rendering and parsing for rationals.
//!
//! All rounding here is half away from zero and is performed on the exact
//! value, so a rendering at D significant digits is correctly rounded.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

/// Nearest integer; exact ties go away from zero.
pub fn round_half_away(x: &Rational) -> Integer {
    let (mut q, r) = x.numer().clone().div_rem(x.denom().clone());
    let twice = Integer::from(r.abs_ref()) * 2u32;
    if twice >= *x.denom() {
        if *x < 0 {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

fn pow10(e: u32) -> Integer {
    Integer::from(10).pow(e)
}

/// 10^e as an exact rational, for any sign of e.
pub fn pow10_rational(e: i64) -> Rational {
    let mag = pow10(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from(mag)
    } else {
        Rational::from((Integer::from(1), mag))
    }
}

/// floor(log10 |x|) for nonzero x.
pub fn decimal_exponent(x: &Rational) -> i64 {
    assert!(*x != 0, "decimal exponent of zero");
    let abs = Rational::from(x.abs_ref());
    let digits = |i: &Integer| i.to_string_radix(10).len() as i64;
    let mut e = digits(abs.numer()) - digits(abs.denom());
    while abs < pow10_rational(e) {
        e -= 1;
    }
    while abs >= pow10_rational(e + 1) {
        e += 1;
    }
    e
}

/// A value rounded to a fixed number of significant digits:
/// `±d.ddd × 10^exponent` with `digits` holding the mantissa digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Significant {
    pub negative: bool,
    pub digits: String,
    pub exponent: i64,
}

impl Significant {
    pub fn new(x: &Rational, significant: u32) -> Self {
        assert!(significant > 0);
        if *x == 0 {
            return Self {
                negative: false,
                digits: "0".repeat(significant as usize),
                exponent: 0,
            };
        }
        let mut exponent = decimal_exponent(x);
        let scaled =
            Rational::from(x.abs_ref()) * pow10_rational(significant as i64 - 1 - exponent);
        let mut mantissa = round_half_away(&scaled);
        if mantissa == pow10(significant) {
            mantissa /= 10;
            exponent += 1;
        }
        Self {
            negative: *x < 0,
            digits: mantissa.to_string(),
            exponent,
        }
    }

    /// `-3.64154e-7`
    pub fn scientific(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        let (head, tail) = self.digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{}", self.exponent)
        } else {
            format!("{sign}{head}.{tail}e{}", self.exponent)
        }
    }

    /// Positional notation without exponent, e.g. `0.00206293...` or `71.2299...`.
    pub fn positional(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        let n = self.digits.len() as i64;
        let int_len = self.exponent + 1;
        let body = if int_len <= 0 {
            format!("0.{}{}", "0".repeat((-int_len) as usize), self.digits)
        } else if int_len >= n {
            format!("{}{}", self.digits, "0".repeat((int_len - n) as usize))
        } else {
            let (a, b) = self.digits.split_at(int_len as usize);
            format!("{a}.{b}")
        };
        format!("{sign}{body}")
    }
}

/// `x` at `significant` digits in scientific notation.
pub fn scientific(x: &Rational, significant: u32) -> String {
    Significant::new(x, significant).scientific()
}

/// `x` at `significant` digits in positional notation.
pub fn positional(x: &Rational, significant: u32) -> String {
    Significant::new(x, significant).positional()
}

/// A parsed decimal literal together with the place value of its last
/// written digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalLiteral {
    pub value: Rational,
    /// 10^k where k is the position of the final printed digit.
    pub last_place: Rational,
    /// Number of significant digits written (leading zeros excluded).
    pub significant: u32,
}

/// Parses `[-+]digits[.digits][e[-+]digits]`. Returns `None` on anything else.
pub fn parse_decimal(s: &str) -> Option<DecimalLiteral> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    if !all_digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = Integer::from_str_radix(&all_digits, 10).ok()?;
    if negative {
        value = -value;
    }
    let place = exp - frac_part.len() as i64;
    let last_place = pow10_rational(place);
    let significant = all_digits.trim_start_matches('0').len().max(1) as u32;
    Some(DecimalLiteral {
        value: Rational::from(value) * &last_place,
        last_place,
        significant,
    })
}

/// Number of leading significant digits on which `approx` agrees with `exact`,
/// measured as floor(−log10 |approx − exact| / |exact|). Equal values give
/// `u32::MAX`.
pub fn agreeing_digits(exact: &Rational, approx: &Rational) -> u32 {
    let diff = Rational::from(exact - approx);
    if diff == 0 {
        return u32::MAX;
    }
    let rel = diff / exact;
    (-decimal_exponent(&rel) - 1).max(0) as u32
}

/// |a − b| ≤ units · unit
pub fn within_units(a: &Rational, b: &Rational, unit: &Rational, units: u32) -> bool {
    let diff = Rational::from(a - b).abs();
    diff.cmp(&(Rational::from(unit * units))) != Ordering::Greater
}
