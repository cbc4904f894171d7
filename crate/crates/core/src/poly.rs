//! Exact interpolating polynomials through the points (x, π(10^x)), x = 1..n.
//!
//! Fitting goes through Newton divided differences and expands the Newton
//! form into monomial coefficients by repeated multiplication with (x − x_j).
//! Nothing here touches floating point.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::table::{PrimeCountTable, MAX_EXPONENT};

/// Dense monomial-basis polynomial with exact rational coefficients.
///
/// `coeffs[i]` multiplies `x^i`. Coefficients are always in lowest terms with
/// a positive denominator (an invariant of [`Rational`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
    fit_n: u32,
}

impl RationalPolynomial {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of nodes the polynomial was fitted through.
    pub fn fit_n(&self) -> u32 {
        self.fit_n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs
            .last()
            .expect("polynomial has at least one coefficient")
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl fmt::Display for RationalPolynomial {
    /// Highest power first, fractions parenthesised: `(398/3)x^3-735x^2+...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 && !(first && power == 0) {
                continue;
            }
            let negative = *c < 0;
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            first = false;
            let magnitude = Rational::from(c.abs_ref());
            let is_one = magnitude == 1;
            if *magnitude.denom() != 1 {
                write!(f, "({magnitude})")?;
            } else if !is_one || power == 0 {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        Ok(())
    }
}

/// Newton divided-difference coefficients for the given nodes.
fn divided_differences(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let mut table = ys.to_vec();
    let mut out = Vec::with_capacity(xs.len());
    out.push(table[0].clone());
    for order in 1..xs.len() {
        for i in 0..xs.len() - order {
            let num = Rational::from(&table[i + 1] - &table[i]);
            let den = Rational::from(&xs[i + order] - &xs[i]);
            table[i] = num / den;
        }
        out.push(table[0].clone());
    }
    out
}

/// Interpolates arbitrary distinct rational nodes exactly and returns monomial
/// coefficients. Callers guarantee the nodes are distinct.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(xs.len(), ys.len());
    let newton = divided_differences(xs, ys);
    let mut coeffs = vec![Rational::new(); xs.len()];
    // basis = prod_{j<k} (x - x_j), grown one factor per step
    let mut basis = vec![Rational::from(1)];
    for (k, a) in newton.iter().enumerate() {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += Rational::from(a * b);
        }
        if k + 1 < xs.len() {
            let mut next = vec![Rational::new(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= Rational::from(b * &xs[k]);
            }
            basis = next;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == 0) {
        coeffs.pop();
    }
    coeffs
}

fn check_fit_n(n: u32, low: u32, high: u32, what: &'static str, range: &'static str) -> Result<()> {
    if (low..=high).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value: n.to_string(),
            range,
        })
    }
}

/// Unique polynomial of degree n − 1 through (x, π(10^x)), x = 1..n, for
/// 2 ≤ n ≤ 25.
pub fn fit_polynomial(table: &PrimeCountTable, n: u32) -> Result<RationalPolynomial> {
    check_fit_n(n, 2, MAX_EXPONENT, "n", "2..=25")?;
    Ok(fit_unchecked(table, n))
}

/// Same as [`fit_polynomial`] but also admits the constant fit n = 1.
pub(crate) fn fit_unchecked(table: &PrimeCountTable, n: u32) -> RationalPolynomial {
    let xs: Vec<Rational> = (1..=n).map(Rational::from).collect();
    let ys: Vec<Rational> = (1..=n).map(|x| Rational::from(table.pi(x))).collect();
    RationalPolynomial {
        coeffs: interpolate(&xs, &ys),
        fit_n: n,
    }
}

/// All fits P_2..P_25 in order.
pub fn polynomial_family(table: &PrimeCountTable) -> Vec<RationalPolynomial> {
    (2..=MAX_EXPONENT)
        .map(|n| fit_unchecked(table, n))
        .collect()
}

/// P_n(n + 1) as an exact integer, computed from forward differences of the
/// table: Σ_{k<n} C(n, k) Δ^k π(10^1). Accepts 1 ≤ n ≤ 25.
pub fn extrapolate_next(table: &PrimeCountTable, n: u32) -> Result<Integer> {
    check_fit_n(n, 1, MAX_EXPONENT, "n", "1..=25")?;
    let mut diffs: Vec<Integer> = (1..=n).map(|x| table.pi(x).clone()).collect();
    let mut sum = Integer::new();
    for k in 0..n {
        sum += Integer::from(Integer::binomial_u(n, k)) * &diffs[0];
        for i in 0..diffs.len() - 1 {
            let d = Integer::from(&diffs[i + 1] - &diffs[i]);
            diffs[i] = d;
        }
        diffs.pop();
    }
    Ok(sum)
}
