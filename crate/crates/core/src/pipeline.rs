//! The extrapolation method built on the polynomial fits and the Thiele
//! corrective functions.
//!
//! Naming follows the index of the *predicted* exponent:
//!
//! * `δ_m = (π(10^m) − P_{m−1}(m)) / π(10^m)` for m = 3..25;
//! * `Φ_k` is the Thiele fit through (m, δ_m), m = 3..k, in ascending m;
//! * `δ′_m = (π(10^m) − Round(P_{m−1}(m) / (1 − Φ_{m−1}(m)))) / π(10^m)` for
//!   m = 5..25, i.e. the error made when the corrective function stops one
//!   node short;
//! * `ψ` is the Thiele fit through (n, δ′_{n+1}), n = 20..24, using the signed
//!   values.
//!
//! Everything is exact rational arithmetic; only the final predictions are
//! rounded to integers.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};

use crate::decimal::round_half_away;
use crate::error::{Error, Result};
use crate::poly::extrapolate_next;
use crate::table::{PrimeCountTable, MAX_EXPONENT};
use crate::thiele::ThieleInterpolant;

/// First node of every corrective function Φ_k.
pub const PHI_FIRST_NODE: u32 = 3;

/// Nodes n of the second corrective function ψ.
pub const PSI_NODES: std::ops::RangeInclusive<u32> = 20..=24;

fn out_of_range(what: &'static str, value: impl ToString, range: &'static str) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        range,
    }
}

/// δ_{n+1}: relative shortfall of P_n(n+1) against π(10^{n+1}), 2 ≤ n ≤ 24.
pub fn compute_delta(table: &PrimeCountTable, n: u32) -> Result<Rational> {
    if !(2..MAX_EXPONENT).contains(&n) {
        return Err(out_of_range("n", n, "2..=24"));
    }
    Ok(delta_unchecked(table, n))
}

fn delta_unchecked(table: &PrimeCountTable, n: u32) -> Rational {
    let actual = table.pi(n + 1);
    let predicted = extrapolate_next(table, n).expect("n checked by caller");
    Rational::from((Integer::from(actual - &predicted), actual.clone()))
}

/// Φ_k: Thiele fit through (m, δ_m) for m = 3..=k, 4 ≤ k ≤ 25.
pub fn corrective_phi(table: &PrimeCountTable, k: u32) -> Result<ThieleInterpolant> {
    if !(4..=MAX_EXPONENT).contains(&k) {
        return Err(out_of_range("k", k, "4..=25"));
    }
    let points: Vec<(Rational, Rational)> = (PHI_FIRST_NODE..=k)
        .map(|m| (Rational::from(m), delta_unchecked(table, m - 1)))
        .collect();
    ThieleInterpolant::fit(&points)
}

/// Index of the corrective function used to reconstruct from `n` known values:
/// Φ_{n+1}, with Φ_4 standing in for n ≤ 3.
pub fn reconstruction_phi_index(n: u32) -> u32 {
    (n + 1).max(4)
}

/// P_x(x+1) / (1 − Φ(x+1)) before rounding, with Φ = Φ_{max(n+1, 4)}.
/// For x = 1 the polynomial is the constant π(10).
pub fn reconstruct_quotient(table: &PrimeCountTable, x: u32, n: u32) -> Result<Rational> {
    let phi = corrective_phi(table, reconstruction_phi_index(check_pair(x, n)?))?;
    quotient_with(table, &phi, x)
}

fn check_pair(x: u32, n: u32) -> Result<u32> {
    if !(1..MAX_EXPONENT).contains(&n) {
        return Err(out_of_range("n", n, "1..=24"));
    }
    if !(1..=n).contains(&x) {
        return Err(out_of_range("x", x, "1..=n"));
    }
    Ok(n)
}

fn quotient_with(table: &PrimeCountTable, phi: &ThieleInterpolant, x: u32) -> Result<Rational> {
    let predicted = extrapolate_next(table, x)?;
    let correction = phi.eval(&Rational::from(x + 1))?;
    let denominator = Rational::from(1) - correction;
    if denominator == 0 {
        return Err(Error::Pole(format!("1 - Phi({})", x + 1)));
    }
    Ok(Rational::from(predicted) / denominator)
}

/// Round(P_x(x+1) / (1 − Φ_{n+1}(x+1))), the reconstruction of π(10^{x+1})
/// from the first x values. 1 ≤ x ≤ n ≤ 24.
pub fn reconstruct(table: &PrimeCountTable, x: u32, n: u32) -> Result<Integer> {
    reconstruct_quotient(table, x, n).map(|q| round_half_away(&q))
}

/// One cell of the reconstruction sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub x: u32,
    pub n: u32,
    pub quotient: Rational,
    pub rounded: Integer,
    pub actual: Integer,
}

impl Reconstruction {
    pub fn holds(&self) -> bool {
        self.rounded == self.actual
    }

    /// Whether x+1 is a node of the corrective function used.
    pub fn at_node(&self) -> bool {
        self.x + 1 >= PHI_FIRST_NODE
    }
}

/// Every pair 1 ≤ x ≤ n ≤ 24, fitting each corrective function once.
pub fn reconstruction_sweep(table: &PrimeCountTable) -> Result<Vec<Reconstruction>> {
    let mut out = Vec::new();
    for n in 1..MAX_EXPONENT {
        let phi = corrective_phi(table, reconstruction_phi_index(n))?;
        for x in 1..=n {
            let quotient = quotient_with(table, &phi, x)?;
            out.push(Reconstruction {
                x,
                n,
                rounded: round_half_away(&quotient),
                quotient,
                actual: table.pi(x + 1).clone(),
            });
        }
    }
    Ok(out)
}

/// Round(P_n(n+1) / (1 − Φ_n(n+1))): extrapolation one step past the last
/// node of Φ_n. 4 ≤ n ≤ 25; n = 25 predicts π(10^26).
pub fn extrapolate_corrected(table: &PrimeCountTable, n: u32) -> Result<Integer> {
    if !(4..=MAX_EXPONENT).contains(&n) {
        return Err(out_of_range("n", n, "4..=25"));
    }
    let phi = corrective_phi(table, n)?;
    quotient_with(table, &phi, n).map(|q| round_half_away(&q))
}

/// δ′_{n+1} for 4 ≤ n ≤ 24.
pub fn compute_delta_prime(table: &PrimeCountTable, n: u32) -> Result<Rational> {
    if !(4..MAX_EXPONENT).contains(&n) {
        return Err(out_of_range("n", n, "4..=24"));
    }
    let actual = table.pi(n + 1);
    let predicted = extrapolate_corrected(table, n)?;
    Ok(Rational::from((
        Integer::from(actual - &predicted),
        actual.clone(),
    )))
}

/// δ_m for m = 3..=25 and δ′_m for m = 5..=25.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSeries {
    delta: BTreeMap<u32, Rational>,
    delta_prime: BTreeMap<u32, Rational>,
}

impl DeltaSeries {
    pub fn compute(table: &PrimeCountTable) -> Result<Self> {
        let delta = (2..MAX_EXPONENT)
            .map(|n| (n + 1, delta_unchecked(table, n)))
            .collect();
        let delta_prime = (4..MAX_EXPONENT)
            .map(|n| compute_delta_prime(table, n).map(|d| (n + 1, d)))
            .collect::<Result<_>>()?;
        Ok(Self { delta, delta_prime })
    }

    pub fn delta(&self) -> &BTreeMap<u32, Rational> {
        &self.delta
    }

    pub fn delta_prime(&self) -> &BTreeMap<u32, Rational> {
        &self.delta_prime
    }
}

/// ψ: Thiele fit through (n, δ′_{n+1}) for n = 20..=24, signed values.
pub fn fit_psi(series: &DeltaSeries) -> Result<ThieleInterpolant> {
    let points: Vec<(Rational, Rational)> = PSI_NODES
        .map(|n| {
            let value = series
                .delta_prime
                .get(&(n + 1))
                .cloned()
                .ok_or_else(|| out_of_range("psi node", n, "20..=24"))?;
            Ok((Rational::from(n), value))
        })
        .collect::<Result<_>>()?;
    ThieleInterpolant::fit(&points)
}

/// |ψ(n)|
pub fn psi_magnitude(psi: &ThieleInterpolant, n: u32) -> Result<Rational> {
    psi.eval(&Rational::from(n)).map(Rational::abs)
}

/// How the relative bound ψ becomes an integer offset from the center.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OffsetForm {
    /// Round(V·ψ)
    #[default]
    FirstOrder,
    /// Round(V·ψ / (1 − ψ))
    Exact,
}

impl OffsetForm {
    pub fn offset(self, center: &Integer, psi: &Rational) -> Integer {
        let scaled = Rational::from(center) * psi;
        match self {
            OffsetForm::FirstOrder => round_half_away(&scaled),
            OffsetForm::Exact => round_half_away(&(scaled / (Rational::from(1) - psi))),
        }
    }
}

impl fmt::Display for OffsetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OffsetForm::FirstOrder => "first-order",
            OffsetForm::Exact => "exact",
        })
    }
}

/// Default lower bound on ψ_26 for the one-sided range: 7·10⁻⁹.
pub fn default_psi_low() -> Rational {
    Rational::from((7, 1_000_000_000))
}

/// Default upper bound on |ψ_26|: 7.1·10⁻⁹.
pub fn default_psi_high() -> Rational {
    Rational::from((71, 10_000_000_000u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureResult {
    pub center: Integer,
    pub psi_low: Rational,
    pub psi_high: Rational,
    pub form: OffsetForm,
    pub offset_low: Integer,
    pub offset_high: Integer,
    pub symmetric_low: Integer,
    pub symmetric_high: Integer,
    pub onesided_low: Integer,
    pub onesided_high: Integer,
    /// |ψ(25)| from the fitted second corrective function, when computed.
    pub psi_abs: Option<Rational>,
}

/// Symmetric range center ± offset(ψ_high) and one-sided range
/// [center + offset(ψ_low), center + offset(ψ_high)].
pub fn conjecture_range(
    center: &Integer,
    psi_low: &Rational,
    psi_high: &Rational,
    form: OffsetForm,
) -> Result<ConjectureResult> {
    if *psi_low < 0 || psi_low > psi_high || *psi_high >= 1 {
        return Err(out_of_range(
            "psi bounds",
            format!("[{psi_low}, {psi_high}]"),
            "0 <= low <= high < 1",
        ));
    }
    let offset_low = form.offset(center, psi_low);
    let offset_high = form.offset(center, psi_high);
    Ok(ConjectureResult {
        center: center.clone(),
        psi_low: psi_low.clone(),
        psi_high: psi_high.clone(),
        form,
        symmetric_low: Integer::from(center - &offset_high),
        symmetric_high: Integer::from(center + &offset_high),
        onesided_low: Integer::from(center + &offset_low),
        onesided_high: Integer::from(center + &offset_high),
        offset_low,
        offset_high,
        psi_abs: None,
    })
}

/// Full run: the center from Φ_25, |ψ(25)| from the fitted ψ, and the range
/// for the given bounds.
pub fn conjecture(
    table: &PrimeCountTable,
    psi_low: &Rational,
    psi_high: &Rational,
    form: OffsetForm,
) -> Result<ConjectureResult> {
    let center = extrapolate_corrected(table, MAX_EXPONENT)?;
    let series = DeltaSeries::compute(table)?;
    let psi = fit_psi(&series)?;
    let mut result = conjecture_range(&center, psi_low, psi_high, form)?;
    result.psi_abs = Some(psi_magnitude(&psi, MAX_EXPONENT)?);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn table() -> PrimeCountTable {
        PrimeCountTable::builtin()
    }

    #[test]
    fn first_deltas() {
        let t = table();
        assert_eq!(compute_delta(&t, 2).unwrap(), q(61, 84));
        assert_eq!(compute_delta(&t, 3).unwrap(), q(796, 1229));
        assert!(compute_delta(&t, 1).is_err());
        assert!(compute_delta(&t, 25).is_err());
    }

    #[test]
    fn deltas_in_unit_interval_and_decreasing() {
        let s = DeltaSeries::compute(&table()).unwrap();
        let values: Vec<&Rational> = s.delta().values().collect();
        assert_eq!(values.len(), 23);
        assert!(values.iter().all(|d| **d > 0 && **d < 1));
        assert!(values.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(s.delta_prime().len(), 21);
        assert_eq!(s.delta_prime().keys().next(), Some(&5));
    }

    #[test]
    fn phi_first_coefficient_is_first_delta() {
        let phi = corrective_phi(&table(), 25).unwrap();
        assert_eq!(phi.levels()[0], q(61, 84));
        assert_eq!(phi.depth(), 23);
        assert_eq!(phi.eval(&q(3, 1)).unwrap(), q(61, 84));
        assert!(corrective_phi(&table(), 3).is_err());
    }

    #[test]
    fn reconstruction_at_nodes_is_exact() {
        let t = table();
        let quotient = reconstruct_quotient(&t, 3, 24).unwrap();
        assert_eq!(quotient, 1229);
        assert_eq!(reconstruct(&t, 3, 24).unwrap(), 1229);
        assert_eq!(reconstruct(&t, 5, 5).unwrap(), 78498);
        assert_eq!(
            reconstruct(&t, 24, 24).unwrap().to_string(),
            "176846309399143769411680"
        );
    }

    #[test]
    fn small_n_borrows_phi4() {
        let t = table();
        assert_eq!(reconstruction_phi_index(1), 4);
        assert_eq!(reconstruction_phi_index(3), 4);
        assert_eq!(reconstruction_phi_index(4), 5);
        assert_eq!(reconstruct(&t, 2, 2).unwrap(), 168);
        assert_eq!(reconstruct(&t, 3, 3).unwrap(), 1229);
    }

    #[test]
    fn reconstruction_rejects_bad_pairs() {
        let t = table();
        assert!(reconstruct(&t, 0, 3).is_err());
        assert!(reconstruct(&t, 4, 3).is_err());
        assert!(reconstruct(&t, 1, 25).is_err());
    }

    #[test]
    fn corrected_extrapolations() {
        let t = table();
        assert_eq!(
            extrapolate_corrected(&t, 25).unwrap().to_string(),
            "1699246738822618041025224"
        );
        assert_eq!(
            extrapolate_corrected(&t, 24).unwrap().to_string(),
            "176846307027334692763889"
        );
        assert!(extrapolate_corrected(&t, 3).is_err());
    }

    #[test]
    fn psi_first_level_is_signed_delta_prime() {
        let s = DeltaSeries::compute(&table()).unwrap();
        let psi = fit_psi(&s).unwrap();
        assert_eq!(psi.levels()[0], s.delta_prime()[&21]);
        assert!(psi.levels()[0] < 0);
        assert_eq!(psi.depth(), 5);
    }

    #[test]
    fn range_from_default_bounds() {
        let center = Integer::from_str_radix("1699246738822618041025224", 10).unwrap();
        let r = conjecture_range(
            &center,
            &default_psi_low(),
            &default_psi_high(),
            OffsetForm::FirstOrder,
        )
        .unwrap();
        assert_eq!(r.offset_high.to_string(), "12064651845640588");
        assert_eq!(r.offset_low.to_string(), "11894727171758326");
        assert_eq!(r.symmetric_low.to_string(), "1699246726757966195384636");
        assert_eq!(r.symmetric_high.to_string(), "1699246750887269886665812");
        assert_eq!(r.onesided_low.to_string(), "1699246750717345212783550");
        assert!(r.symmetric_low < r.onesided_low && r.onesided_low < r.onesided_high);
        assert_eq!(r.onesided_high, r.symmetric_high);

        let exact = conjecture_range(
            &center,
            &default_psi_low(),
            &default_psi_high(),
            OffsetForm::Exact,
        )
        .unwrap();
        // V·ψ/(1 − ψ) exceeds V·ψ by about V·ψ²
        assert_eq!(exact.offset_high.to_string(), "12064651931299617");
        assert!(exact.offset_low > r.offset_low);
    }

    #[test]
    fn degenerate_and_wide_ranges() {
        let center = Integer::from(1001);
        let zero = Rational::new();
        let r = conjecture_range(&center, &zero, &zero, OffsetForm::FirstOrder).unwrap();
        assert_eq!(
            (r.symmetric_low.clone(), r.symmetric_high.clone()),
            (center.clone(), center.clone())
        );
        assert_eq!(
            (r.onesided_low, r.onesided_high),
            (center.clone(), center.clone())
        );

        let half = q(1, 2);
        let r = conjecture_range(&center, &zero, &half, OffsetForm::FirstOrder).unwrap();
        // Round(1001/2) = 501
        assert_eq!(r.symmetric_low, 500);
        assert_eq!(r.symmetric_high, 1502);
        let r = conjecture_range(&center, &zero, &half, OffsetForm::Exact).unwrap();
        assert_eq!(r.offset_high, 1001);
    }

    #[test]
    fn psi_bounds_validated() {
        let c = Integer::from(10);
        assert!(conjecture_range(&c, &q(-1, 10), &q(1, 10), OffsetForm::FirstOrder).is_err());
        assert!(conjecture_range(&c, &q(2, 10), &q(1, 10), OffsetForm::FirstOrder).is_err());
        assert!(conjecture_range(&c, &q(0, 1), &q(1, 1), OffsetForm::FirstOrder).is_err());
    }
}
