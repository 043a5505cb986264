//! Extended Gevrey weight sequences `M_p = p^(tau * p^sigma)` in log domain.
//!
//! Everything here works on `ln M_p = tau * p^sigma * ln p`. The structural
//! inequalities of the sequence family (log-convexity, superadditivity, the
//! step and split bounds, tail summability) are all ratio- or product-shaped,
//! so they transfer to the log domain exactly, and the log domain is the only
//! one where `p` in the hundreds is representable.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("tau must be positive, got {0}")]
    InvalidTau(f64),
    #[error("sigma must exceed 1, got {0}")]
    InvalidSigma(f64),
    #[error("pmax must be at least {min}, got {got}")]
    PmaxTooSmall { min: usize, got: usize },
    #[error("h must be positive, got {0}")]
    InvalidH(f64),
}

/// The pair `(tau, sigma)` selecting one sequence of the weight family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightParams {
    tau: f64,
    sigma: f64,
}

impl WeightParams {
    pub fn new(tau: f64, sigma: f64) -> Result<Self, WeightError> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(WeightError::InvalidTau(tau));
        }
        if !(sigma > 1.0) || !sigma.is_finite() {
            return Err(WeightError::InvalidSigma(sigma));
        }
        Ok(Self { tau, sigma })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Same `sigma`, rescaled `tau`. The family is indexed by `tau`, and most
    /// inequalities relate a sequence to one of its rescalings.
    pub fn scale_tau(&self, factor: f64) -> Result<Self, WeightError> {
        Self::new(self.tau * factor, self.sigma)
    }
}

/// `ln M_p` for a single index: `0` for `p <= 1`, else `tau * p^sigma * ln p`.
pub fn log_weight(p: usize, params: WeightParams) -> f64 {
    if p < 2 {
        return 0.0;
    }
    let pf = p as f64;
    params.tau * pf.powf(params.sigma) * pf.ln()
}

/// Precomputed `ln M_p` values for `p = 0..=pmax`.
#[derive(Debug, Clone)]
pub struct LogWeightTable {
    params: WeightParams,
    log_m: Vec<f64>,
}

impl LogWeightTable {
    pub fn new(params: WeightParams, pmax: usize) -> Result<Self, WeightError> {
        if pmax < 1 {
            return Err(WeightError::PmaxTooSmall { min: 1, got: pmax });
        }
        let log_m = (0..=pmax).map(|p| log_weight(p, params)).collect();
        Ok(Self { params, log_m })
    }

    pub fn params(&self) -> WeightParams {
        self.params
    }

    pub fn pmax(&self) -> usize {
        self.log_m.len() - 1
    }

    pub fn log_m(&self, p: usize) -> f64 {
        self.log_m[p]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.log_m
    }

    /// Log of the step-ratio bound `M_{p-1}/M_p <= (2p)^(-tau (p-1)^(sigma-1))`,
    /// i.e. `-tau * (p-1)^(sigma-1) * ln(2p)`, defined for `p >= 1`.
    pub fn log_step_ratio_bound(&self, p: usize) -> f64 {
        assert!(p >= 1);
        let pf = p as f64;
        -self.params.tau * (pf - 1.0).powf(self.params.sigma - 1.0) * (2.0 * pf).ln()
    }
}

/// Diagnostics for the structural conditions of one sequence, checked for all
/// indices up to `pmax`. Constants are range-restricted: they are the minimal
/// values that work on the checked range, with a tail certificate recording
/// whether the maximand was still non-increasing at the range boundary.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub params: WeightParams,
    pub pmax: usize,
    /// `2 ln M_p <= ln M_{p-1} + ln M_{p+1}` at every interior index.
    pub log_convexity_ok: bool,
    /// `ln M_p + ln M_q <= ln M_{p+q}` for all `p + q <= pmax`.
    pub superadditivity_ok: bool,
    /// Per-term bound `ln(M_{p-1}/M_p) <= -tau (p-1)^(sigma-1) ln(2p)` at every index.
    pub step_ratio_bound_ok: bool,
    /// Partial sum of `M_{p-1}/M_p` up to `pmax` (the series the bound controls).
    pub step_ratio_sum: f64,
    /// `(p+q)^sigma <= 2^(sigma-1) (p^sigma + q^sigma)` for all `1 <= p, q <= pmax`.
    pub power_split_ok: bool,
    /// Minimal `ln C` with `ln M_{p+q} <= (p^sigma + q^sigma) ln C
    /// + ln M_p' + ln M_q'` where the primed sequence has `tau' = 2^(sigma-1) tau`.
    pub split_constant: f64,
    pub split_tail_certified: bool,
    /// Minimal `ln C` with `ln M_{p+1} <= p^sigma ln C + ln M_p`.
    pub step_constant: f64,
    pub step_tail_certified: bool,
    /// Minimal `ln C` making `(M_p/p!)^(1/p)` almost increasing on the range.
    pub almost_increasing_constant: f64,
    /// Minimal `ln C1` with `ln p! <= ln C1 + ln M_p` on the range, and the
    /// maximizing index (certified interior).
    pub factorial_domination_constant: f64,
    pub factorial_domination_argmax: usize,
    pub factorial_domination_interior: bool,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.log_convexity_ok
            && self.superadditivity_ok
            && self.step_ratio_bound_ok
            && self.power_split_ok
            && self.split_tail_certified
            && self.step_tail_certified
            && self.factorial_domination_interior
    }
}

/// Cumulative `ln p!` by direct summation; exact enough for `p` in the hundreds.
fn log_factorials(pmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(pmax + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for p in 1..=pmax {
        acc += (p as f64).ln();
        out.push(acc);
    }
    out
}

/// Checks every structural condition of the sequence on `p, q <= pmax`.
pub fn check_conditions(params: WeightParams, pmax: usize) -> Result<ConditionReport, WeightError> {
    if pmax < 3 {
        return Err(WeightError::PmaxTooSmall { min: 3, got: pmax });
    }
    let sigma = params.sigma();
    let table = LogWeightTable::new(params, pmax + 1)?;
    let split_params = params.scale_tau((sigma - 1.0).exp2())?;
    let split_table = LogWeightTable::new(split_params, pmax)?;

    let log_convexity_ok = (1..pmax)
        .all(|p| 2.0 * table.log_m(p) <= table.log_m(p - 1) + table.log_m(p + 1) + 1e-12);

    let mut superadditivity_ok = true;
    for p in 0..=pmax {
        for q in 0..=(pmax - p) {
            if table.log_m(p) + table.log_m(q) > table.log_m(p + q) + 1e-12 {
                superadditivity_ok = false;
            }
        }
    }

    let mut step_ratio_bound_ok = true;
    let mut step_ratio_sum = 0.0;
    for p in 1..=pmax {
        let log_ratio = table.log_m(p - 1) - table.log_m(p);
        step_ratio_sum += log_ratio.exp();
        if log_ratio > table.log_step_ratio_bound(p) + 1e-12 {
            step_ratio_bound_ok = false;
        }
    }

    let mut power_split_ok = true;
    for p in 1..=pmax {
        for q in 1..=pmax {
            let lhs = ((p + q) as f64).powf(sigma);
            let rhs = (sigma - 1.0).exp2() * ((p as f64).powf(sigma) + (q as f64).powf(sigma));
            // Relative slack: both sides reach ~1e7 at sigma = 3, pmax = 200.
            if lhs > rhs * (1.0 + 1e-12) {
                power_split_ok = false;
            }
        }
    }

    // Minimal split constant: max over p, q >= 0 (not both zero) of
    // [ln M_{p+q} - ln M'_p - ln M'_q] / (p^sigma + q^sigma), clamped at 0.
    // The maximand is constant along the diagonal p = q and decreasing away
    // from it, so a boundary-band monotonicity check certifies the tail.
    let split_ratio = |p: usize, q: usize| -> f64 {
        let denom = (p as f64).powf(sigma) + (q as f64).powf(sigma);
        (log_weight(p + q, params) - split_table.log_m(p) - split_table.log_m(q)) / denom
    };
    let mut split_constant = 0.0f64;
    for p in 0..=pmax {
        for q in 0..=(pmax - p) {
            if p == 0 && q == 0 {
                continue;
            }
            split_constant = split_constant.max(split_ratio(p, q));
        }
    }
    let band = 8.min(pmax - 1);
    let mut split_tail_certified = true;
    for p in (pmax - band)..pmax {
        for q in 0..=(pmax - p - 1) {
            if split_ratio(p + 1, q) > split_ratio(p, q) + 1e-12 {
                split_tail_certified = false;
            }
        }
    }

    // Minimal step constant: max over p >= 1 of [ln M_{p+1} - ln M_p] / p^sigma.
    let step_ratio = |p: usize| -> f64 {
        (table.log_m(p + 1) - table.log_m(p)) / (p as f64).powf(sigma)
    };
    let mut step_constant = 0.0f64;
    let mut step_argmax = 1;
    for p in 1..=pmax {
        let r = step_ratio(p);
        if r > step_constant {
            step_constant = r;
            step_argmax = p;
        }
    }
    let step_tail_certified = step_argmax + band < pmax
        && ((pmax - band)..pmax).all(|p| step_ratio(p + 1) <= step_ratio(p) + 1e-12);

    // Almost-increasing constant for a_p = (ln M_p - ln p!) / p: the minimal
    // ln C with a_p <= ln C + a_q whenever p <= q.
    let log_fact = log_factorials(pmax);
    let a: Vec<f64> = (1..=pmax)
        .map(|p| (table.log_m(p) - log_fact[p]) / p as f64)
        .collect();
    let mut almost_increasing_constant = 0.0f64;
    let mut prefix_max = f64::NEG_INFINITY;
    for &aq in &a {
        prefix_max = prefix_max.max(aq);
        almost_increasing_constant = almost_increasing_constant.max(prefix_max - aq);
    }

    // Factorial domination: ln C1 = max_p [ln p! - ln M_p], with the maximizer
    // certified interior (the difference is eventually strictly decreasing).
    let mut factorial_domination_constant = f64::NEG_INFINITY;
    let mut factorial_domination_argmax = 0;
    for p in 0..=pmax {
        let d = log_fact[p] - table.log_m(p);
        if d > factorial_domination_constant {
            factorial_domination_constant = d;
            factorial_domination_argmax = p;
        }
    }
    let factorial_domination_interior = factorial_domination_argmax + band < pmax
        && ((pmax - band)..pmax)
            .all(|p| log_fact[p + 1] - table.log_m(p + 1) <= log_fact[p] - table.log_m(p));

    Ok(ConditionReport {
        params,
        pmax,
        log_convexity_ok,
        superadditivity_ok,
        step_ratio_bound_ok,
        step_ratio_sum,
        power_split_ok,
        split_constant,
        split_tail_certified,
        step_constant,
        step_tail_certified,
        almost_increasing_constant,
        factorial_domination_constant,
        factorial_domination_argmax,
        factorial_domination_interior,
    })
}

/// Closed form of `sup_{rho > 0} h^(rho^sigma) / rho^(tau rho^sigma)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GeometricSup {
    /// `ln` of the supremum: `(tau / (sigma e)) * h^(sigma / tau)`.
    pub log_value: f64,
    /// The maximizer `rho_0 = h^(1/tau) * e^(-1/sigma)`.
    pub maximizer: f64,
}

/// Supremum of the geometric factor `h^(rho^sigma)` against the weight
/// `rho^(tau rho^sigma)`, in closed form.
pub fn sup_geometric_over_weight(h: f64, params: WeightParams) -> Result<GeometricSup, WeightError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(WeightError::InvalidH(h));
    }
    let (tau, sigma) = (params.tau(), params.sigma());
    Ok(GeometricSup {
        log_value: tau / (sigma * std::f64::consts::E) * h.powf(sigma / tau),
        maximizer: h.powf(1.0 / tau) * (-1.0 / sigma).exp(),
    })
}

/// An enumerated integer supremum with a decreasing-tail certificate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegerSup {
    pub log_value: f64,
    pub argmax: usize,
    /// True when the maximand was strictly past its peak and non-increasing
    /// over the final stretch of the enumeration range.
    pub tail_certified: bool,
}

/// Enumerates `f(p)` for `p <= cap` and certifies the tail is non-increasing.
fn sup_over_integers(f: impl Fn(usize) -> f64, cap: usize) -> IntegerSup {
    let mut best = f64::NEG_INFINITY;
    let mut argmax = 0;
    let mut prev = f64::NEG_INFINITY;
    let band = 16.min(cap);
    let mut tail_ok = true;
    for p in 0..=cap {
        let v = f(p);
        if v > best {
            best = v;
            argmax = p;
        }
        if p + band > cap && v > prev + 1e-12 {
            tail_ok = false;
        }
        prev = v;
    }
    IntegerSup {
        log_value: best,
        argmax,
        tail_certified: tail_ok && argmax + band <= cap,
    }
}

/// `ln C` absorbing a geometric factor into a doubling of `tau`:
/// `sup_{p >= 0} [p^sigma ln h + ln M_p^(tau/2) - ln M_p^(tau)]`.
///
/// Finite because the closed-form supremum over real `rho` with parameters
/// `(tau/2, sigma)` dominates it; the enumeration range is sized from that
/// supremum's maximizer and the result carries a decreasing-tail certificate.
pub fn absorption_constant(h: f64, params: WeightParams) -> Result<IntegerSup, WeightError> {
    absorption_constant_with_exponent(h, params.sigma(), params.scale_tau(0.5)?, params)
}

/// Generalized absorption: `sup_p [p^a ln h + ln M_p(small) - ln M_p(big)]`
/// for `a` either 1 or `sigma`. Requires `small.tau < big.tau`.
pub fn absorption_constant_with_exponent(
    h: f64,
    exponent: f64,
    small: WeightParams,
    big: WeightParams,
) -> Result<IntegerSup, WeightError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(WeightError::InvalidH(h));
    }
    assert!(small.tau() < big.tau() && small.sigma() == big.sigma());
    let ln_h = h.ln();
    // Real-domain maximizer of p^a ln h - (big - small) p^sigma ln p sits near
    // the closed-form maximizer for the gap parameters; size the range off it.
    let gap = big.scale_tau(1.0 - small.tau() / big.tau())?;
    let rho0 = if h > 1.0 && exponent == gap.sigma() {
        sup_geometric_over_weight(h, gap)?.maximizer
    } else if h > 1.0 {
        // exponent 1: stationary point of p ln h - tau_gap p^sigma ln p.
        (ln_h / gap.tau()).powf(1.0 / (gap.sigma() - 1.0)).max(1.0)
    } else {
        1.0
    };
    let cap = 200.max((2.0 * rho0).ceil() as usize + 32);
    let f = |p: usize| -> f64 {
        (p as f64).powf(exponent) * ln_h + log_weight(p, small) - log_weight(p, big)
    };
    Ok(sup_over_integers(f, cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn p12() -> WeightParams {
        WeightParams::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn params_reject_out_of_range() {
        assert!(WeightParams::new(0.0, 2.0).is_err());
        assert!(WeightParams::new(-1.0, 2.0).is_err());
        assert!(WeightParams::new(1.0, 1.0).is_err());
        assert!(WeightParams::new(1.0, 0.5).is_err());
        assert!(WeightParams::new(f64::NAN, 2.0).is_err());
    }

    #[test]
    fn log_weight_base_cases() {
        assert_eq!(log_weight(0, p12()), 0.0);
        assert_eq!(log_weight(1, p12()), 0.0);
        assert_relative_eq!(log_weight(2, p12()), 4.0 * 2f64.ln(), max_relative = 1e-15);
        // M_2 = 2^(1*2^2) = 16 for tau = 1, sigma = 2.
        assert_relative_eq!(log_weight(2, p12()).exp(), 16.0, max_relative = 1e-12);
    }

    #[test]
    fn table_invariants() {
        let t = LogWeightTable::new(p12(), 100).unwrap();
        assert_eq!(t.log_m(0), 0.0);
        assert_eq!(t.log_m(1), 0.0);
        for p in 2..100 {
            assert!(t.log_m(p + 1) > t.log_m(p));
        }
        for p in 1..100 {
            assert!(2.0 * t.log_m(p) <= t.log_m(p - 1) + t.log_m(p + 1));
        }
    }

    #[test]
    fn conditions_hold_on_reference_params() {
        let r = check_conditions(p12(), 100).unwrap();
        assert!(r.log_convexity_ok);
        assert!(r.superadditivity_ok);
        assert!(r.step_ratio_bound_ok);
        assert!(r.power_split_ok);
        assert!(r.split_tail_certified);
        assert!(r.step_tail_certified);
        assert!(r.step_ratio_sum.is_finite());
    }

    #[test]
    fn split_constant_matches_diagonal_value() {
        // Along p = q the split maximand is constant and equal to its global
        // maximum, tau * 2^(sigma-1) * ln 2; checked by the full enumeration.
        for (tau, sigma) in [(1.0, 2.0), (0.5, 1.5), (2.0, 3.0)] {
            let params = WeightParams::new(tau, sigma).unwrap();
            let r = check_conditions(params, 60).unwrap();
            let expected = tau * (sigma - 1.0).exp2() * 2f64.ln();
            assert_relative_eq!(r.split_constant, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn step_constant_attained_at_one() {
        // The step maximand [ln M_{p+1} - ln M_p] / p^sigma peaks at p = 1
        // with value tau * 2^sigma * ln 2.
        for (tau, sigma) in [(1.0, 2.0), (0.5, 1.5), (2.0, 3.0)] {
            let params = WeightParams::new(tau, sigma).unwrap();
            let r = check_conditions(params, 60).unwrap();
            let expected = tau * sigma.exp2() * 2f64.ln();
            assert_relative_eq!(r.step_constant, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn superadditivity_smallest_instance() {
        // M_2 = 16 >= M_1 * M_1 = 1.
        let t = LogWeightTable::new(p12(), 2).unwrap();
        assert!(t.log_m(1) + t.log_m(1) <= t.log_m(2));
    }

    #[test]
    fn factorial_domination_exhibited() {
        for (tau, sigma) in [(0.5, 1.5), (1.0, 2.0), (2.0, 3.0)] {
            let params = WeightParams::new(tau, sigma).unwrap();
            let r = check_conditions(params, 200).unwrap();
            assert!(r.factorial_domination_constant.is_finite());
            assert!(r.factorial_domination_interior);
            let table = LogWeightTable::new(params, 200).unwrap();
            let lf = log_factorials(200);
            for p in 0..=200 {
                assert!(lf[p] <= r.factorial_domination_constant + table.log_m(p) + 1e-12);
            }
        }
    }

    #[test]
    fn almost_increasing_constant_is_a_certificate() {
        let params = WeightParams::new(0.5, 1.5).unwrap();
        let r = check_conditions(params, 120).unwrap();
        let table = LogWeightTable::new(params, 120).unwrap();
        let lf = log_factorials(120);
        let a: Vec<f64> = (1..=120)
            .map(|p| (table.log_m(p) - lf[p]) / p as f64)
            .collect();
        for i in 0..a.len() {
            for j in i..a.len() {
                assert!(a[i] <= r.almost_increasing_constant + a[j] + 1e-12);
            }
        }
    }

    #[test]
    fn rejects_small_pmax() {
        assert_eq!(
            check_conditions(p12(), 2).unwrap_err(),
            WeightError::PmaxTooSmall { min: 3, got: 2 }
        );
    }

    #[test]
    fn geometric_sup_closed_form_unit_h() {
        let s = sup_geometric_over_weight(1.0, p12()).unwrap();
        assert_relative_eq!(s.log_value, 1.0 / (2.0 * std::f64::consts::E), max_relative = 1e-15);
        assert_relative_eq!(s.maximizer, (-0.5f64).exp(), max_relative = 1e-15);
        assert!(sup_geometric_over_weight(0.0, p12()).is_err());
        assert!(sup_geometric_over_weight(-2.0, p12()).is_err());
    }

    /// Independent check of the closed form: dense grid over ln rho followed by
    /// golden-section refinement of ln f(rho) = rho^sigma ln h - tau rho^sigma ln rho.
    fn numeric_sup(h: f64, params: WeightParams) -> f64 {
        let (tau, sigma) = (params.tau(), params.sigma());
        let obj = |rho: f64| rho.powf(sigma) * (h.ln() - tau * rho.ln());
        let (mut lo, mut hi) = (1e-6f64.ln(), 1e6f64.ln());
        let mut best = f64::NEG_INFINITY;
        let mut best_u = lo;
        for i in 0..=20_000 {
            let u = lo + (hi - lo) * i as f64 / 20_000.0;
            let v = obj(u.exp());
            if v > best {
                best = v;
                best_u = u;
            }
        }
        let du = (hi - lo) / 20_000.0;
        lo = best_u - du;
        hi = best_u + du;
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut c, mut d) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        let (mut fc, mut fd) = (obj(c.exp()), obj(d.exp()));
        for _ in 0..200 {
            if fc > fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - phi * (hi - lo);
                fc = obj(c.exp());
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + phi * (hi - lo);
                fd = obj(d.exp());
            }
        }
        fc.max(fd)
    }

    #[test]
    fn geometric_sup_matches_numeric_oracle() {
        for (h, tau, sigma) in [(2.0, 1.0, 2.0), (0.5, 2.0, 1.5), (10.0, 0.5, 3.0)] {
            let params = WeightParams::new(tau, sigma).unwrap();
            let s = sup_geometric_over_weight(h, params).unwrap();
            let oracle = numeric_sup(h, params);
            assert_relative_eq!(s.log_value, oracle, max_relative = 1e-9);
        }
    }

    #[test]
    fn absorption_unit_h_is_zero() {
        let a = absorption_constant(1.0, p12()).unwrap();
        assert_eq!(a.log_value, 0.0);
        assert_eq!(a.argmax, 0);
        assert!(a.tail_certified);
    }

    #[test]
    fn absorption_matches_enumeration_and_closed_form_bound() {
        let a = absorption_constant(2.0, p12()).unwrap();
        // Enumeration oracle over p <= 10^4.
        let half = p12().scale_tau(0.5).unwrap();
        let mut oracle = f64::NEG_INFINITY;
        for p in 0..=10_000usize {
            let v = (p as f64).powf(2.0) * 2f64.ln() + log_weight(p, half) - log_weight(p, p12());
            oracle = oracle.max(v);
        }
        assert_eq!(a.log_value, oracle);
        assert_eq!(a.argmax, 2);
        assert_relative_eq!(a.log_value, 2.0 * 2f64.ln(), max_relative = 1e-14);
        // Dominated by the closed-form supremum at parameters (tau/2, sigma).
        let bound = sup_geometric_over_weight(2.0, half).unwrap().log_value;
        assert!(a.log_value <= bound);
    }

    #[test]
    fn absorption_large_h_tail_certified() {
        let params = WeightParams::new(0.5, 1.5).unwrap();
        let a = absorption_constant(10.0, params).unwrap();
        assert!(a.log_value.is_finite());
        assert!(a.tail_certified);
        assert!(absorption_constant(-1.0, params).is_err());
    }

    proptest! {
        #[test]
        fn log_convexity_random_params(tau in 0.1f64..4.0, sigma in 1.05f64..3.5) {
            let params = WeightParams::new(tau, sigma).unwrap();
            let t = LogWeightTable::new(params, 64).unwrap();
            for p in 1..64 {
                prop_assert!(2.0 * t.log_m(p) <= t.log_m(p - 1) + t.log_m(p + 1) + 1e-9);
            }
        }

        #[test]
        fn superadditivity_random_params(tau in 0.1f64..4.0, sigma in 1.05f64..3.5) {
            let params = WeightParams::new(tau, sigma).unwrap();
            let t = LogWeightTable::new(params, 64).unwrap();
            for p in 0..=64usize {
                for q in 0..=(64 - p) {
                    prop_assert!(t.log_m(p) + t.log_m(q) <= t.log_m(p + q) + 1e-9);
                }
            }
        }

        #[test]
        fn power_split_random(sigma in 1.05f64..4.0, p in 1usize..500, q in 1usize..500) {
            let lhs = ((p + q) as f64).powf(sigma);
            let rhs = (sigma - 1.0).exp2() * ((p as f64).powf(sigma) + (q as f64).powf(sigma));
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }

        #[test]
        fn monotone_in_tau(tau in 0.1f64..2.0, factor in 1.0f64..4.0, sigma in 1.05f64..3.5, p in 0usize..200) {
            let lo = WeightParams::new(tau, sigma).unwrap();
            let hi = lo.scale_tau(factor).unwrap();
            prop_assert!(log_weight(p, lo) <= log_weight(p, hi) + 1e-12);
        }
    }
}
