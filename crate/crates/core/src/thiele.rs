//! Thiele continued-fraction interpolation over exact rationals.
//!
//! A fit through nodes x_0..x_{N-1} produces level coefficients b_0..b_{N-1}
//! (inverted differences) such that
//!
//! ```text
//! f(x) = b_0 + (x - x_0) / (b_1 + (x - x_1) / (b_2 + ... + (x - x_{N-2}) / b_{N-1}))
//! ```
//!
//! [`FoldedCoefficients`] rewrites the two innermost levels as an affine tail
//! `c + K·x`, the layout used when the coefficients are published.

use rug::Rational;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThieleInterpolant {
    nodes: Vec<Rational>,
    levels: Vec<Rational>,
}

impl ThieleInterpolant {
    /// Fits through `points` in the given order via the inverted-difference
    /// recurrence.
    ///
    /// A zero denominator at level k means the inverted difference is
    /// infinite. If the fraction truncated to levels 0..k already passes
    /// through every remaining point it simply terminates there (a line fitted
    /// through three collinear points keeps two levels). Otherwise the fit
    /// fails with [`Error::Breakdown`]; the data is never perturbed.
    pub fn fit(points: &[(Rational, Rational)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: points.len(),
            });
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicateNode(xi.to_string()));
            }
        }
        let nodes: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
        let mut phi: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        let mut levels = Vec::with_capacity(nodes.len());
        levels.push(phi[0].clone());
        for k in 1..nodes.len() {
            let pivot = phi[k - 1].clone();
            if let Some(i) = (k..nodes.len()).find(|&i| phi[i] == pivot) {
                let truncated = Self {
                    nodes: nodes[..k].to_vec(),
                    levels: levels.clone(),
                };
                if points[k..]
                    .iter()
                    .all(|(x, y)| truncated.eval(x).is_ok_and(|v| v == *y))
                {
                    break;
                }
                return Err(Error::Breakdown {
                    level: k,
                    node: nodes[i].to_string(),
                    pivot: nodes[k - 1].to_string(),
                });
            }
            for i in k..nodes.len() {
                let den = Rational::from(&phi[i] - &pivot);
                phi[i] = Rational::from(&nodes[i] - &nodes[k - 1]) / den;
            }
            levels.push(phi[k].clone());
        }
        let fitted = Self { nodes, levels };
        for (x, y) in points {
            match fitted.eval(x) {
                Ok(v) if v == *y => {}
                _ => {
                    return Err(Error::Unattainable {
                        node: x.to_string(),
                    })
                }
            }
        }
        Ok(fitted)
    }

    /// Fitted nodes in fit order. A terminated fraction keeps all of them
    /// but has fewer levels.
    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    /// Level coefficients b_0..b_{N-1}.
    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    /// Number of levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Exact evaluation, innermost level first.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let n = self.levels.len();
        let tail = (self.levels[n - 1].clone(), Rational::from(1));
        let heads = self.levels[..n - 1].iter().zip(&self.nodes[..n - 1]);
        fold_outwards(tail, heads, x)
    }

    /// Rewrites b_{N-2} + (x − x_{N-2}) / b_{N-1} as c + K·x. Needs at least
    /// two levels and a nonzero innermost one.
    pub fn folded(&self) -> Result<FoldedCoefficients> {
        let n = self.levels.len();
        let last = &self.levels[n - 1];
        if n < 2 || *last == 0 {
            return Err(Error::Fold);
        }
        let slope = Rational::from(last.recip_ref());
        let mut heads: Vec<Rational> = self.levels[..n - 2].to_vec();
        heads.push(&self.levels[n - 2] - Rational::from(&self.nodes[n - 2] * &slope));
        Ok(FoldedCoefficients {
            heads,
            slope,
            numerator_nodes: self.nodes[..n - 2].to_vec(),
        })
    }
}

/// Evaluates `h_0 + (x − x_0)/(h_1 + ... + (x − x_k)/tail)` keeping the running
/// value as a pair `p/q`, so an intermediate infinity is harmless and only a
/// zero final denominator is a pole.
fn fold_outwards<'a>(
    (mut p, mut q): (Rational, Rational),
    heads: impl DoubleEndedIterator<Item = (&'a Rational, &'a Rational)>,
    x: &Rational,
) -> Result<Rational> {
    for (b, node) in heads.rev() {
        let next_p = Rational::from(b * &p) + Rational::from(x - node) * &q;
        q = p;
        p = next_p;
    }
    if q == 0 {
        return Err(Error::Pole(x.to_string()));
    }
    Ok(p / q)
}

/// Published layout of a Thiele interpolant: c_1..c_{N-1} and K with
///
/// ```text
/// f(x) = c_1 + (x - x_0) / (c_2 + ... + (x - x_{N-3}) / (c_{N-1} + K·x))
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedCoefficients {
    /// c_1..c_{N-1}; the last one absorbs the innermost level.
    pub heads: Vec<Rational>,
    /// K
    pub slope: Rational,
    numerator_nodes: Vec<Rational>,
}

impl FoldedCoefficients {
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let (last, outer) = self.heads.split_last().expect("at least one head");
        let tail = (Rational::from(&self.slope * x) + last, Rational::from(1));
        fold_outwards(tail, outer.iter().zip(&self.numerator_nodes), x)
    }
}
