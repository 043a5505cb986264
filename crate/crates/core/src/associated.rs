//! The associated function `T(x) = sup_{p >= 0} ln(x^p / M_p)`, its Lambert-type
//! envelope, and numeric spot checks of the weight-matrix conditions used for
//! nuclearity.
//!
//! The supremum defining `T` is over integers, but the maximand
//! `p ln x - tau p^sigma ln p` is concave in real `p >= 1`, so evaluation finds
//! the real stationary point by safeguarded root-finding and compares the two
//! neighboring integers (plus `p` in `{0, 1}`). Brute-force enumeration is kept
//! in the tests as the oracle.

use crate::lambertw::lambert_w;
use crate::weights::{
    absorption_constant_with_exponent, log_weight, IntegerSup, WeightError, WeightParams,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AssociatedError {
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("sandwich grid points must exceed 1, got {0}")]
    GridPointTooSmall(f64),
    #[error("no envelope constant A <= {0} satisfies both bounds (implementation bug)")]
    NoEnvelopeConstant(f64),
    #[error("dimension must be 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Value of the associated function at one point, with the attaining index.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AssociatedValue {
    pub value: f64,
    pub argmax: usize,
    /// Set when the integer search hit the cap; the cap must be raised.
    pub saturated: bool,
}

/// Evaluator for `T(x)` at fixed parameters.
#[derive(Debug, Clone, Copy)]
pub struct AssociatedFunction {
    params: WeightParams,
    pcap: usize,
}

impl AssociatedFunction {
    pub fn new(params: WeightParams) -> Self {
        Self { params, pcap: 100_000 }
    }

    pub fn with_pcap(params: WeightParams, pcap: usize) -> Self {
        Self { params, pcap }
    }

    pub fn params(&self) -> WeightParams {
        self.params
    }

    pub fn value(&self, x: f64) -> Result<AssociatedValue, AssociatedError> {
        if !(x > 0.0) {
            return Err(AssociatedError::NonPositiveArgument(x));
        }
        Ok(self.value_log_arg(x.ln()))
    }

    /// `T(e^u)` without forming `e^u`; the natural domain for large arguments.
    pub fn value_log_arg(&self, u: f64) -> AssociatedValue {
        if u <= 0.0 {
            return AssociatedValue { value: 0.0, argmax: 0, saturated: false };
        }
        let term = |p: usize| p as f64 * u - log_weight(p, self.params);
        let (tau, sigma) = (self.params.tau(), self.params.sigma());
        // d/drho [rho u - tau rho^sigma ln rho] = u - tau rho^(sigma-1) (sigma ln rho + 1),
        // which at rho = 1 equals u - tau. Non-positive there means the maximand
        // decreases on [1, inf) and only p in {0, 1} can win.
        if u <= tau {
            let v1 = term(1);
            return if v1 > 0.0 {
                AssociatedValue { value: v1, argmax: 1, saturated: false }
            } else {
                AssociatedValue { value: 0.0, argmax: 0, saturated: false }
            };
        }
        let slope_gap = |rho: f64| u - tau * rho.powf(sigma - 1.0) * (sigma * rho.ln() + 1.0);
        let mut lo = 1.0f64;
        let mut hi = 2.0f64;
        let mut saturated = false;
        while slope_gap(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi >= self.pcap as f64 {
                hi = self.pcap as f64;
                saturated = true;
                break;
            }
        }
        if !saturated {
            while hi - lo > 0.25 {
                let mid = 0.5 * (lo + hi);
                if slope_gap(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        let mut best = AssociatedValue { value: 0.0, argmax: 0, saturated };
        let mut consider = |p: usize| {
            let v = term(p);
            if v > best.value {
                best.value = v;
                best.argmax = p;
            }
        };
        consider(1);
        let p_lo = (lo.floor() as usize).saturating_sub(1).max(1);
        let p_hi = (hi.ceil() as usize + 1).min(self.pcap);
        for p in p_lo..=p_hi {
            consider(p);
        }
        if best.argmax >= self.pcap {
            best.saturated = true;
        }
        best
    }
}

/// `ln sup_{x > 0} x^p e^{-T(x)}`, recovered by maximizing `p u - T(e^u)` over
/// a grid in `u = ln x` with golden-section refinement. The maximand is
/// concave (affine minus convex), so the refinement is safe, and the sup
/// equals `ln M_p` whenever the table is log-convex.
pub fn komatsu_dual(p: usize, params: WeightParams) -> f64 {
    assert!(p >= 1);
    let assoc = AssociatedFunction::new(params);
    let obj = |u: f64| p as f64 * u - assoc.value_log_arg(u).value;
    // The maximizing plateau for index p ends at ln M_{p+1} - ln M_p; go one
    // ratio step further.
    let upper = (log_weight(p + 2, params) - log_weight(p + 1, params)).max(1.0) + 1.0;
    let n = 4000;
    let mut best = f64::NEG_INFINITY;
    let mut best_u = 0.0;
    for i in 0..=n {
        let u = upper * i as f64 / n as f64;
        let v = obj(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    let du = upper / n as f64;
    let (mut lo, mut hi) = ((best_u - du).max(0.0), best_u + du);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut fc, mut fd) = (obj(c), obj(d));
    for _ in 0..120 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = obj(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = obj(d);
        }
    }
    best.max(fc).max(fd)
}

/// The weight `omega(t) = ln^(s)(1+|t|) / W^(s-1)(ln(1+|t|))` with
/// `s = sigma/(sigma-1)`; its scaled exponentials bracket `e^T`.
#[derive(Debug, Clone, Copy)]
pub struct BmtWeight {
    sigma: f64,
}

impl BmtWeight {
    pub fn new(sigma: f64) -> Result<Self, WeightError> {
        if !(sigma > 1.0) {
            return Err(WeightError::InvalidSigma(sigma));
        }
        Ok(Self { sigma })
    }

    pub fn value(&self, t: f64) -> f64 {
        let r = t.abs();
        if r == 0.0 {
            return 0.0;
        }
        let l = r.ln_1p();
        let w = lambert_w(l).expect("ln(1+|t|) >= 0").w;
        if w == 0.0 {
            return 0.0;
        }
        let e = 1.0 / (self.sigma - 1.0);
        l.powf(self.sigma * e) / w.powf(e)
    }
}

/// Envelope `E(t) = tau^(-1/(sigma-1)) ln^(sigma/(sigma-1))(t) / W^(1/(sigma-1))(ln t)`
/// appearing on both sides of the sandwich estimate; defined for `t > 1`
/// (there `ln t > 0`, hence `W(ln t) > 0`).
pub fn sandwich_envelope(t: f64, params: WeightParams) -> f64 {
    let e = 1.0 / (params.sigma() - 1.0);
    let l = t.ln();
    let w = lambert_w(l).expect("ln t > 1").w;
    params.tau().powf(-e) * l.powf(params.sigma() * e) / w.powf(e)
}

/// Fitted constants `A > 1`, `B > 0` for the two-sided envelope
/// `E(t)/A - B <= T(t) <= A E(t) + B`, validated on the fit grid and on a
/// ten-fold denser grid over the same range.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SandwichFit {
    pub a: f64,
    pub b: f64,
    pub range: (f64, f64),
    /// Point count of the denser validation grid (zero violations).
    pub validated_points: usize,
}

/// Log-spaced grid, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Fits the minimal lattice `A` (factor-1.05 steps) and accompanying `B` such
/// that both envelope inequalities hold at every grid point and re-validate on
/// a 10x denser grid over the same range.
pub fn fit_sandwich(params: WeightParams, t_grid: &[f64]) -> Result<SandwichFit, AssociatedError> {
    for &t in t_grid {
        if t <= 1.0 {
            return Err(AssociatedError::GridPointTooSmall(t));
        }
    }
    let assoc = AssociatedFunction::new(params);
    let eval =
        |t: f64| -> (f64, f64) { (assoc.value_log_arg(t.ln()).value, sandwich_envelope(t, params)) };
    let coarse: Vec<(f64, f64)> = t_grid.iter().map(|&t| eval(t)).collect();

    let lo = t_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = t_grid.iter().copied().fold(0.0f64, f64::max);
    let dense_grid = log_grid(lo, hi, t_grid.len() * 10);
    let dense: Vec<(f64, f64)> = dense_grid.iter().map(|&t| eval(t)).collect();

    // B absorbs the left-edge region where the envelope overshoots T; A then
    // covers the ratio over the rest of the range.
    let edge = (t_grid.len() / 10).max(2).min(t_grid.len());
    let b = coarse[..edge]
        .iter()
        .map(|&(t_val, env)| env - t_val)
        .fold(0.0f64, f64::max)
        + 0.25;

    let holds = |a: f64, pts: &[(f64, f64)]| -> bool {
        pts.iter()
            .all(|&(t_val, env)| env / a - b <= t_val + 1e-12 && t_val <= a * env + b + 1e-12)
    };

    let mut a = 1.01;
    while a <= 1e6 {
        if holds(a, &coarse) && holds(a, &dense) {
            return Ok(SandwichFit { a, b, range: (lo, hi), validated_points: dense.len() });
        }
        a *= 1.05;
    }
    Err(AssociatedError::NoEnvelopeConstant(1e6))
}

/// Fitted constants for `C1 e^(omega/lambda1) <= e^T <= C2 e^(omega/lambda2)`
/// on a validation grid: the bracket between the associated-function weights
/// and the exponential-BMT family.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquivalenceFit {
    pub lambda1: f64,
    pub log_c1: f64,
    pub lambda2: f64,
    pub log_c2: f64,
}

pub fn fit_equivalence(
    params: WeightParams,
    t_grid: &[f64],
) -> Result<EquivalenceFit, AssociatedError> {
    let assoc = AssociatedFunction::new(params);
    let bmt = BmtWeight::new(params.sigma())?;
    let pts: Vec<(f64, f64)> = t_grid
        .iter()
        .map(|&t| (assoc.value_log_arg(t.ln()).value, bmt.value(t)))
        .collect();
    // Lower side: pick lambda1 so omega/lambda1 stays below T + 1, then let
    // ln C1 take up the remaining slack. Upper side: lambda2 from the tail
    // ratio, ln C2 minimal on the grid.
    let lambda1 = pts
        .iter()
        .map(|&(t_val, om)| om / (t_val + 1.0))
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let log_c1 = -pts
        .iter()
        .map(|&(t_val, om)| om / lambda1 - t_val)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_start = pts.len() / 2;
    let lambda2 = pts[tail_start..]
        .iter()
        .map(|&(t_val, om)| om / (2.0 * t_val.max(1.0)))
        .fold(f64::INFINITY, f64::min)
        .max(1e-9);
    let log_c2 = pts
        .iter()
        .map(|&(t_val, om)| t_val - om / lambda2)
        .fold(0.0f64, f64::max);
    Ok(EquivalenceFit { lambda1, log_c1, lambda2, log_c2 })
}

/// Spot-check results for the matrix conditions backing nuclearity.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixConditionReport {
    pub params: WeightParams,
    pub dimension: usize,
    /// Geometric absorption into a tau-doubling, per probe h (exponent 1).
    pub shift_absorption: Vec<ShiftAbsorption>,
    /// Step bound into the doubled sequence: exhibited (ln h, ln C).
    pub step_to_doubled: StepToDoubled,
    /// Submultiplicativity of `e^T` on a radial lattice: minimal lattice ln C.
    pub submultiplicativity: Submultiplicativity,
    /// The bounded-shift bound (sup over |y| <= 1 of w(x+y) against w(x)) is
    /// implied by submultiplicativity with the second argument on the unit
    /// ball; recorded rather than re-checked.
    pub bounded_shift_implied: bool,
    /// Radial integrability of the weight-family ratio.
    pub integrability: Integrability,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ShiftAbsorption {
    pub h: f64,
    pub log_c: f64,
    pub tail_certified: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StepToDoubled {
    pub log_h: f64,
    pub log_c: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Submultiplicativity {
    pub tau0: f64,
    pub lattice_log_c: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Integrability {
    /// Ratio index scale relative to the base parameter.
    pub tau0: f64,
    pub integral_at_1e4: f64,
    pub integral_at_1e6: f64,
    pub relative_change: f64,
    pub stabilized: bool,
}

impl MatrixConditionReport {
    pub fn all_pass(&self) -> bool {
        self.shift_absorption.iter().all(|s| s.tail_certified)
            && self.submultiplicativity.lattice_log_c.is_finite()
            && self.integrability.stabilized
    }
}

/// Runs the four spot checks in dimension `n` (1 or 2).
///
/// The integrability check runs on the exponential-BMT family
/// `omega^lambda = e^(omega/lambda)`: the ratio
/// `omega^(2^sigma tau) / omega^tau = e^(-(1 - 2^-sigma) omega / tau)` decays
/// faster than any power, and its radial integral must move by no more than
/// 1e-6 relatively between the cutoffs 1e4 and 1e6.
pub fn check_matrix_conditions(
    params: WeightParams,
    dimension: usize,
) -> Result<MatrixConditionReport, AssociatedError> {
    if dimension == 0 || dimension > 2 {
        return Err(AssociatedError::UnsupportedDimension(dimension));
    }
    let (tau, sigma) = (params.tau(), params.sigma());

    // Shift absorption: h^p M_p <= C M_p' with tau' = 2 tau, probed at h in {2, 10}.
    let doubled = params.scale_tau(2.0)?;
    let mut shift_absorption = Vec::new();
    for h in [2.0, 10.0] {
        let sup: IntegerSup = absorption_constant_with_exponent(h, 1.0, params, doubled)?;
        shift_absorption.push(ShiftAbsorption {
            h,
            log_c: sup.log_value.max(0.0),
            tail_certified: sup.tail_certified,
        });
    }

    // Step into the doubled sequence: ln M_{p+1} <= ln C + p^sigma ln h + ln M_p'
    // with ln h taken from the step constant of the base sequence.
    let step = crate::weights::check_conditions(params, 200)?;
    let log_h = step.step_constant;
    let mut log_c = 0.0f64;
    for p in 0..=200usize {
        let excess =
            log_weight(p + 1, params) - (p as f64).powf(sigma) * log_h - log_weight(p, doubled);
        log_c = log_c.max(excess);
    }
    let step_to_doubled = StepToDoubled { log_h, log_c };

    // Submultiplicativity on a radial lattice: T_{tau0}(r+s) <= ln C + T(r) + T(s)
    // with tau0 = 4 tau. Colinear arguments are the worst case since T is
    // radial and nondecreasing, so a 1-d lattice in (|x|, |y|) suffices.
    let tau0 = 4.0 * tau;
    let assoc_base = AssociatedFunction::new(params);
    let assoc_big = AssociatedFunction::new(params.scale_tau(4.0)?);
    let mut lattice: Vec<f64> = vec![0.0];
    lattice.extend(log_grid(1e-2, 1e6, 41));
    let mut lattice_log_c = 0.0f64;
    for &r in &lattice {
        for &s in &lattice {
            let lhs = if r + s > 0.0 { assoc_big.value_log_arg((r + s).ln()).value } else { 0.0 };
            let tr = if r > 0.0 { assoc_base.value_log_arg(r.ln()).value } else { 0.0 };
            let ts = if s > 0.0 { assoc_base.value_log_arg(s.ln()).value } else { 0.0 };
            lattice_log_c = lattice_log_c.max(lhs - tr - ts);
        }
    }
    let submultiplicativity = Submultiplicativity { tau0, lattice_log_c };

    // Radial integrability of the family ratio, with the r^(n-1) volume factor,
    // trapezoid on log-spaced nodes plus the analytic [0, r_min] sliver.
    let bmt = BmtWeight::new(sigma)?;
    let decay = (1.0 - (-sigma).exp2()) / tau;
    let integrand =
        |r: f64| -> f64 { r.powi(dimension as i32 - 1) * (-decay * bmt.value(r)).exp() };
    let nodes = log_grid(1e-6, 1e6, 4001);
    let mut integral = 1e-6f64.powi(dimension as i32) / dimension as f64;
    let mut at_1e4 = 0.0;
    for w in nodes.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        integral += 0.5 * (integrand(r0) + integrand(r1)) * (r1 - r0);
        if r0 < 1e4 && r1 >= 1e4 {
            at_1e4 = integral;
        }
    }
    let at_1e6 = integral;
    let relative_change = (at_1e6 - at_1e4).abs() / at_1e6;
    let integrability = Integrability {
        tau0: sigma.exp2() * tau,
        integral_at_1e4: at_1e4,
        integral_at_1e6: at_1e6,
        relative_change,
        stabilized: relative_change <= 1e-6,
    };

    Ok(MatrixConditionReport {
        params,
        dimension,
        shift_absorption,
        step_to_doubled,
        submultiplicativity,
        bounded_shift_implied: true,
        integrability,
    })
}
