//! Principal-branch Lambert W on `[0, inf)` with certified residuals.
//!
//! The iteration is Halley's method on `w e^w - x`, safeguarded by a bracket
//! that is shrunk by bisection whenever a step would leave it. The contract is
//! the residual certificate carried by every returned value, not the iteration
//! count.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LambertError {
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),
    #[error("bounds check requires arguments >= e, got {0}")]
    BelowE(f64),
}

/// One evaluation of W with its defining-identity residual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambertEval {
    pub x: f64,
    pub w: f64,
    /// `|w e^w - x|`; certified `<= 1e-12 * max(x, 1)`.
    pub residual: f64,
    pub iterations: u32,
}

const STEP_TOL: f64 = 1e-14;
const MAX_ITER: u32 = 50;

fn residual_at(w: f64, x: f64) -> f64 {
    (w * w.exp() - x).abs()
}

/// Principal branch of the inverse of `w e^w`, restricted to `x >= 0`.
pub fn lambert_w(x: f64) -> Result<LambertEval, LambertError> {
    if !(x >= 0.0) {
        return Err(LambertError::NegativeArgument(x));
    }
    if x == 0.0 {
        return Ok(LambertEval { x, w: 0.0, residual: 0.0, iterations: 0 });
    }

    // Initial guess: two-term alternating series near zero, the asymptotic
    // ln x - ln ln x for large x (where ln ln x is defined and positive),
    // and a crude logarithmic guess in between.
    let mut w = if x < 0.5 {
        x - x * x
    } else if x > std::f64::consts::E {
        let lx = x.ln();
        lx - lx.ln()
    } else {
        x.ln_1p()
    };

    // Bracket [lo, hi] with f(lo) <= 0 <= f(hi), f(w) = w e^w - x.
    // w e^w is increasing on [0, inf) and w = max(ln x, x) overshoots.
    let mut lo = 0.0f64;
    let mut hi = x.max(x.ln()).max(1.0);
    w = w.clamp(lo, hi);

    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let ew = w.exp();
        let f = w * ew - x;
        if f > 0.0 {
            hi = hi.min(w);
        } else {
            lo = lo.max(w);
        }
        // Halley step for f(w) = w e^w - x.
        let fp = ew * (w + 1.0);
        let fpp = ew * (w + 2.0);
        let denom = fp - 0.5 * f * fpp / fp;
        let mut next = if denom != 0.0 { w - f / denom } else { 0.5 * (lo + hi) };
        if !next.is_finite() || next < lo || next > hi {
            next = 0.5 * (lo + hi);
        }
        let step = (next - w).abs();
        w = next;
        if step <= STEP_TOL * w.abs().max(1.0) {
            break;
        }
    }

    Ok(LambertEval { x, w, residual: residual_at(w, x), iterations })
}

/// Result of checking the logarithmic bounds and the `W(x ln x) = ln x`
/// identity over a set of points.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    /// `(x, W(x), lower, upper)` per input point, with
    /// `lower = ln x - ln ln x` and `upper = ln x - ln(ln x)/2`.
    pub points: Vec<BoundsPoint>,
    pub all_within: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsPoint {
    pub x: f64,
    pub w: f64,
    pub lower: f64,
    pub upper: f64,
    /// Both bounds coincide with W only at `x = e`.
    pub at_equality: bool,
}

/// Asserts `ln x - ln ln x <= W(x) <= ln x - ln(ln x)/2` at every point
/// (all points must be `>= e`), flagging equality exactly at `x = e`.
pub fn check_lambert_bounds(xs: &[f64]) -> Result<BoundsReport, LambertError> {
    let e = std::f64::consts::E;
    let mut points = Vec::with_capacity(xs.len());
    let mut all_within = true;
    for &x in xs {
        if x < e * (1.0 - 1e-12) {
            return Err(LambertError::BelowE(x));
        }
        let w = lambert_w(x)?.w;
        let lx = x.ln();
        let llx = lx.ln();
        let lower = lx - llx;
        let upper = lx - 0.5 * llx;
        let at_equality = (x - e).abs() <= 1e-12 * e;
        let slack = 1e-12 * lx.max(1.0);
        if w < lower - slack || w > upper + slack {
            all_within = false;
        }
        if !at_equality && !(lower < w && w < upper) {
            all_within = false;
        }
        points.push(BoundsPoint { x, w, lower, upper, at_equality });
    }
    Ok(BoundsReport { points, all_within })
}

/// `W(x ln x) = ln x` for `x > 1`; returns the relative deviation.
pub fn log_identity_deviation(x: f64) -> Result<f64, LambertError> {
    assert!(x > 1.0);
    let eval = lambert_w(x * x.ln())?;
    Ok((eval.w - x.ln()).abs() / x.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn certified(x: f64) -> f64 {
        let eval = lambert_w(x).unwrap();
        assert!(
            eval.residual <= 1e-12 * x.max(1.0),
            "residual {} too large at x = {}",
            eval.residual,
            x
        );
        eval.w
    }

    #[test]
    fn anchor_values() {
        assert_eq!(lambert_w(0.0).unwrap().w, 0.0);
        assert!((certified(E) - 1.0).abs() <= 1e-12);
        // W(2 e^2) = 2.
        assert!((certified(2.0 * E * E) - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn negative_rejected() {
        assert_eq!(
            lambert_w(-1.0).unwrap_err(),
            LambertError::NegativeArgument(-1.0)
        );
    }

    #[test]
    fn residual_certificate_on_log_grid() {
        let mut x = 1e-8;
        certified(0.0);
        while x <= 1e12 {
            certified(x);
            x *= 3.7;
        }
    }

    #[test]
    fn bounds_hold_and_equality_only_at_e() {
        let report = check_lambert_bounds(&[E, 10.0, 1e3, 1e6, 1e12]).unwrap();
        assert!(report.all_within);
        assert!(report.points[0].at_equality);
        assert!((report.points[0].lower - 1.0).abs() <= 1e-12);
        assert!((report.points[0].upper - 1.0).abs() <= 1e-12);
        for p in &report.points[1..] {
            assert!(!p.at_equality);
            assert!(p.lower < p.w && p.w < p.upper);
        }
        assert!(check_lambert_bounds(&[1.0]).is_err());
    }

    #[test]
    fn log_identity_at_named_points() {
        for x in [2.0, 10.0, 1e3] {
            assert!(log_identity_deviation(x).unwrap() <= 1e-10);
        }
        // W(10 ln 10) = ln 10 directly.
        let w = certified(10.0 * 10f64.ln());
        assert!((w - 10f64.ln()).abs() <= 1e-12 * 10f64.ln());
    }

    #[test]
    fn concavity_midpoint_above_chord() {
        let xs: Vec<f64> = (0..40).map(|i| 10f64.powf(i as f64 * 0.3)).collect();
        for t in xs.windows(3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let (wa, wb, wc) = (certified(a), certified(b), certified(c));
            let chord = wa + (wc - wa) * (b - a) / (c - a);
            assert!(wb >= chord - 1e-12, "concavity violated near x = {}", b);
        }
    }

    #[test]
    fn ratio_to_log_grows_towards_one() {
        let mut prev = 0.0;
        let mut x = 1e2;
        while x <= 1e12 {
            let r = certified(x) / x.ln();
            assert!((0.5..=1.0).contains(&r), "ratio {} out of range at {}", r, x);
            assert!(r >= prev, "ratio not increasing at {}", x);
            prev = r;
            x *= 10.0;
        }
    }

    proptest! {
        #[test]
        fn monotone_and_certified(a in 1e-6f64..1e10, b in 1e-6f64..1e10) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let wl = certified(lo);
            let wh = certified(hi);
            prop_assert!(wl <= wh + 1e-12);
        }
    }
}
