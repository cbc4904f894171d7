//! Independent test oracles.
#![allow(dead_code)]

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

/// Tanh-sinh quadrature of `f` over [a, b]. Nodes are placed by their
/// distance from the nearer endpoint, so no node lands on an endpoint.
pub fn tanh_sinh(f: &dyn Fn(&Float) -> Float, a: &Float, b: &Float, prec: u32) -> Float {
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let pi_2 = Float::with_val(prec, Constant::Pi) / 2u32;
    let eps = Float::with_val(prec, 1) >> (prec as i32 + 8);
    let tol = Float::with_val(prec, 1) >> (prec as i32 - 16);
    let mut prev: Option<Float> = None;
    for level in 2..=14 {
        let h = Float::with_val(prec, 1) >> level;
        let mut sum = Float::with_val(prec, &pi_2 * f(&mid));
        for k in 1u32.. {
            let t = Float::with_val(prec, &h * k);
            let s = Float::with_val(prec, t.sinh_ref()) * &pi_2;
            let ch = Float::with_val(prec, s.cosh_ref());
            let w = (Float::with_val(prec, t.cosh_ref()) * &pi_2)
                / Float::with_val(prec, ch.square_ref());
            if w < eps {
                break;
            }
            let d = Float::with_val(prec, &half / (Float::with_val(prec, s.exp_ref()) * &ch));
            let left = Float::with_val(prec, a + &d);
            let right = Float::with_val(prec, b - &d);
            sum += w * (f(&left) + f(&right));
        }
        let integral: Float = sum * &h * &half;
        if let Some(p) = &prev {
            let diff = Float::with_val(prec, &integral - p).abs();
            if diff <= Float::with_val(prec, integral.abs_ref()) * &tol {
                return integral;
            }
        }
        prev = Some(integral);
    }
    prev.expect("at least one level")
}

/// li(e^L) by quadrature of the Ei integral ∫ e^u/u du.
///
/// The principal value through u = 0 is removed by subtracting
/// 1/(e^u − 1), whose own principal value over (−∞, ln 2] vanishes:
/// li(2) = ∫_{−∞}^{ln 2} e^u (1/u − 1/(e^u − 1)) du, then
/// li(x) = li(2) + ∫_{ln 2}^{L} e^u/u du.
pub fn li_quadrature(log_x: &Float, prec: u32) -> Float {
    let ln2 = Float::with_val(prec, Constant::Log2);
    let smooth = move |u: &Float| {
        // cancellation near u = 0 costs about -log2|u| bits
        let extra = u.get_exp().map_or(0, |e| (-e).max(0) as u32);
        let p = prec + extra + 32;
        let u = Float::with_val(p, u);
        let eu = Float::with_val(p, u.exp_ref());
        let a = Float::with_val(p, u.recip_ref());
        let b = Float::with_val(p, &eu - 1u32).recip();
        Float::with_val(prec, eu * (a - b))
    };
    let cutoff = Float::with_val(prec, f64::from(prec) * 0.7 + 20.0);
    let mut total = Float::with_val(prec, 0);
    let mut hi = ln2.clone();
    while hi > -Float::with_val(prec, &cutoff) {
        let width = if hi > -8 { 1 } else { 4 };
        let lo = Float::with_val(prec, &hi - width);
        total += tanh_sinh(&smooth, &lo, &hi, prec);
        hi = lo;
    }
    let plain = move |u: &Float| Float::with_val(prec, u.exp_ref()) / u;
    let mut lo = ln2;
    while lo < *log_x {
        let next = Float::with_val(prec, &lo + 1u32);
        let hi = if next < *log_x { next } else { log_x.clone() };
        total += tanh_sinh(&plain, &lo, &hi, prec);
        lo = hi;
    }
    total
}

pub fn pow10(n: u32, prec: u32) -> Float {
    Float::with_val(prec, Integer::from(10).pow(n))
}
