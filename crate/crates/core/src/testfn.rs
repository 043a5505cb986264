//! Analytic test functions with exact derivative oracles, their seminorm
//! tables, and membership-parameter fitting.
//!
//! Every function is a product over dimensions of atoms of the form
//! `P(x - x0) e^{-a (x - x0)^2} e^{2 pi i w0 x}` with a complex-coefficient
//! polynomial `P`. The family is closed under differentiation, translation,
//! modulation, reflection, and the Fourier transform, which is what makes the
//! oracles exact: a derivative is the recurrence `P -> P' - 2 a y P (+ 2 pi i
//! w0 P)` on coefficients, and the transform maps the family onto itself with
//! width `pi^2 / a`.

use crate::associated::AssociatedFunction;
use crate::weights::{log_weight, WeightParams};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TestFnError {
    #[error("width must be positive, got {0}")]
    InvalidWidth(f64),
    #[error("maximum lives on the scan boundary at |x| = {0}; search radius too small")]
    BoundaryMaximum(f64),
    #[error("quadrature grid of half-width {0} too narrow for the tail budget")]
    GridTooNarrow(f64),
    #[error("fit requires max order >= {min}, got {got}")]
    OrderTooSmall { min: u32, got: u32 },
    #[error("operation requires the {0} family")]
    UnsupportedFamily(&'static str),
    #[error("dimension mismatch: function has {found} factors, index has {given}")]
    DimensionMismatch { found: usize, given: usize },
}

/// One-dimensional atom `P(x - center) e^{-width (x - center)^2} e^{2 pi i modulation x}`.
#[derive(Debug, Clone)]
pub struct GaussAtom {
    coeffs: Vec<Complex64>,
    width: f64,
    center: f64,
    modulation: f64,
}

impl GaussAtom {
    pub fn new(
        coeffs: Vec<Complex64>,
        width: f64,
        center: f64,
        modulation: f64,
    ) -> Result<Self, TestFnError> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(TestFnError::InvalidWidth(width));
        }
        let mut atom = Self { coeffs, width, center, modulation };
        atom.trim();
        Ok(atom)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn modulation(&self) -> f64 {
        self.modulation
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let y = x - self.center;
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            p = p * y + c;
        }
        let gauss = (-self.width * y * y).exp();
        let phase = Complex64::from_polar(1.0, 2.0 * PI * self.modulation * x);
        p * gauss * phase
    }

    /// |value|; skips the unimodular phase.
    fn abs_value(&self, x: f64) -> f64 {
        let y = x - self.center;
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            p = p * y + c;
        }
        p.norm() * (-self.width * y * y).exp()
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k >= 1 {
                out[k - 1] += c * k as f64; // P'
            }
            out[k + 1] -= c * 2.0 * self.width; // -2 a y P
            out[k] += c * Complex64::new(0.0, 2.0 * PI * self.modulation);
        }
        let mut d = Self {
            coeffs: out,
            width: self.width,
            center: self.center,
            modulation: self.modulation,
        };
        d.trim();
        d
    }

    pub fn derivative_n(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derivative();
        }
        out
    }

    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
            .collect();
        Self { coeffs, width: self.width, center: -self.center, modulation: -self.modulation }
    }

    pub fn translate(&self, shift: f64) -> Self {
        let factor = Complex64::from_polar(1.0, -2.0 * PI * self.modulation * shift);
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
            width: self.width,
            center: self.center + shift,
            modulation: self.modulation,
        }
    }

    pub fn modulate(&self, freq: f64) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            width: self.width,
            center: self.center,
            modulation: self.modulation + freq,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
            width: self.width,
            center: self.center,
            modulation: self.modulation,
        }
    }

    /// Closed-form Fourier transform under the convention
    /// `F(xi) = integral f(x) e^{-2 pi i x xi} dx`; another atom of the family.
    pub fn fourier(&self) -> Self {
        let a = self.width;
        let b = PI * PI / a;
        // Monomial rule: y^k contributes (i / 2 pi)^k d^k/dnu^k of the base
        // transform sqrt(pi/a) e^{-b nu^2}.
        let base = Self {
            coeffs: vec![Complex64::new((PI / a).sqrt(), 0.0)],
            width: b,
            center: 0.0,
            modulation: 0.0,
        };
        let mut acc: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
        let mut dk = base;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                dk = dk.derivative();
            }
            let factor = c * Complex64::new(0.0, 1.0 / (2.0 * PI)).powu(k as u32);
            if acc.len() < dk.coeffs.len() {
                acc.resize(dk.coeffs.len(), Complex64::new(0.0, 0.0));
            }
            for (j, &d) in dk.coeffs.iter().enumerate() {
                acc[j] += factor * d;
            }
        }
        // In the variable nu = xi - modulation; the original center becomes a
        // modulation of the transform via e^{-2 pi i center nu}.
        let phase0 = Complex64::from_polar(1.0, 2.0 * PI * self.center * self.modulation);
        let mut out = Self {
            coeffs: acc.iter().map(|&c| c * phase0).collect(),
            width: b,
            center: self.modulation,
            modulation: -self.center,
        };
        out.trim();
        out
    }
}

/// Physicists' Hermite polynomial coefficients via the three-term recurrence.
fn hermite_coeffs(k: u32) -> Vec<f64> {
    let mut h0 = vec![1.0];
    if k == 0 {
        return h0;
    }
    let mut h1 = vec![0.0, 2.0];
    for n in 1..k {
        let mut next = vec![0.0; n as usize + 2];
        for (j, &c) in h1.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, &c) in h0.iter().enumerate() {
            next[j] -= 2.0 * n as f64 * c;
        }
        h0 = h1;
        h1 = next;
    }
    h1
}

fn log_factorial(k: u32) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// A product of one atom per dimension.
#[derive(Debug, Clone)]
pub struct AnalyticFunction {
    factors: Vec<GaussAtom>,
}

impl AnalyticFunction {
    pub fn from_factors(factors: Vec<GaussAtom>) -> Self {
        assert!(!factors.is_empty());
        Self { factors }
    }

    /// `e^{-a x^2}` in one dimension.
    pub fn gaussian(a: f64) -> Result<Self, TestFnError> {
        Ok(Self {
            factors: vec![GaussAtom::new(vec![Complex64::new(1.0, 0.0)], a, 0.0, 0.0)?],
        })
    }

    /// The L2-normalized Gaussian `2^(1/4) e^{-pi x^2}`, fixed by the Fourier
    /// transform.
    pub fn unit_gaussian() -> Self {
        Self {
            factors: vec![GaussAtom::new(
                vec![Complex64::new(2f64.powf(0.25), 0.0)],
                PI,
                0.0,
                0.0,
            )
            .expect("pi > 0")],
        }
    }

    /// Orthonormal Hermite function `h_k(x) = c_k H_k(sqrt(2 pi) x) e^{-pi x^2}`
    /// with `c_k = 2^(1/4) / sqrt(2^k k!)`.
    pub fn hermite(k: u32) -> Self {
        let scale = (2.0 * PI).sqrt();
        let norm = 2f64.powf(0.25) * (-0.5 * (k as f64 * 2f64.ln() + log_factorial(k))).exp();
        let coeffs = hermite_coeffs(k)
            .iter()
            .enumerate()
            .map(|(j, &c)| Complex64::new(norm * c * scale.powi(j as i32), 0.0))
            .collect();
        Self {
            factors: vec![GaussAtom::new(coeffs, PI, 0.0, 0.0).expect("pi > 0")],
        }
    }

    /// `e^{2 pi i w0 x} e^{-a (x - x0)^2}`.
    pub fn modulated_translated_gaussian(a: f64, x0: f64, w0: f64) -> Result<Self, TestFnError> {
        Ok(Self {
            factors: vec![GaussAtom::new(vec![Complex64::new(1.0, 0.0)], a, x0, w0)?],
        })
    }

    /// The zero function (one-dimensional).
    pub fn zero() -> Self {
        Self {
            factors: vec![
                GaussAtom::new(vec![Complex64::new(0.0, 0.0)], PI, 0.0, 0.0).expect("pi > 0"),
            ],
        }
    }

    /// Product with another function in fresh variables.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self { factors }
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[GaussAtom] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().any(|f| f.is_zero())
    }

    pub fn value(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.factors.len());
        self.factors.iter().zip(x).map(|(f, &xi)| f.value(xi)).product()
    }

    pub fn value1(&self, x: f64) -> Complex64 {
        assert_eq!(self.factors.len(), 1);
        self.factors[0].value(x)
    }

    /// Exact partial derivative of the given multi-order.
    pub fn derivative(&self, beta: &[u32]) -> Result<Self, TestFnError> {
        if beta.len() != self.factors.len() {
            return Err(TestFnError::DimensionMismatch {
                found: self.factors.len(),
                given: beta.len(),
            });
        }
        Ok(Self {
            factors: self
                .factors
                .iter()
                .zip(beta)
                .map(|(f, &b)| f.derivative_n(b))
                .collect(),
        })
    }

    pub fn fourier(&self) -> Self {
        Self { factors: self.factors.iter().map(|f| f.fourier()).collect() }
    }

    pub fn reflect(&self) -> Self {
        Self { factors: self.factors.iter().map(|f| f.reflect()).collect() }
    }

    /// One-dimensional translate `f(x - shift)`.
    pub fn translate(&self, shift: f64) -> Self {
        assert_eq!(self.factors.len(), 1);
        Self { factors: vec![self.factors[0].translate(shift)] }
    }

    /// One-dimensional modulation `e^{2 pi i freq x} f(x)`.
    pub fn modulate(&self, freq: f64) -> Self {
        assert_eq!(self.factors.len(), 1);
        Self { factors: vec![self.factors[0].modulate(freq)] }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut factors = self.factors.clone();
        factors[0] = factors[0].scale(factor);
        Self { factors }
    }
}

/// Supremum of `|x|^alpha |psi(x)|` for one atom: coarse scan over a certified
/// radius, then golden-section refinement. Deterministic for a fixed
/// configuration.
fn sup_atom(atom: &GaussAtom, alpha: u32) -> Result<f64, TestFnError> {
    if atom.is_zero() {
        return Ok(0.0);
    }
    let objective = |x: f64| x.abs().powi(alpha as i32) * atom.abs_value(x);
    // Radius past which |x|^(alpha + deg) e^{-a (x-c)^2} has certainly turned
    // around, with headroom; the boundary value is checked against the
    // interior maximum and the radius grows if the check fails.
    let total_degree = (alpha as usize + atom.degree()) as f64;
    let mut radius = atom.center.abs()
        + ((total_degree + 1.0) / (2.0 * atom.width)).sqrt() * 3.0
        + 8.0 / atom.width.sqrt();
    for _attempt in 0..4 {
        let n = 8192;
        let mut best = f64::NEG_INFINITY;
        let mut best_x = 0.0;
        for i in 0..=n {
            let x = -radius + 2.0 * radius * i as f64 / n as f64;
            let v = objective(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        let edge = objective(radius).max(objective(-radius));
        if edge > 1e-3 * best {
            radius *= 1.5;
            continue;
        }
        let dx = 2.0 * radius / n as f64;
        let (mut lo, mut hi) = (best_x - dx, best_x + dx);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut c, mut d) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        let (mut fc, mut fd) = (objective(c), objective(d));
        for _ in 0..100 {
            if fc > fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - phi * (hi - lo);
                fc = objective(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + phi * (hi - lo);
                fd = objective(d);
            }
        }
        return Ok(best.max(fc).max(fd));
    }
    Err(TestFnError::BoundaryMaximum(radius))
}

/// L2 norm of `x^alpha psi(x)` for one atom, by trapezoid quadrature on a grid
/// wide enough for the Gaussian tail to be negligible; flags the grid when the
/// boundary cells still carry relative mass.
fn l2_atom(atom: &GaussAtom, alpha: u32) -> Result<f64, TestFnError> {
    if atom.is_zero() {
        return Ok(0.0);
    }
    let total_degree = (alpha as usize + atom.degree()) as f64;
    let radius = atom.center.abs()
        + ((total_degree + 1.0) / (2.0 * atom.width)).sqrt() * 3.0
        + 10.0 / atom.width.sqrt();
    let n = 4096;
    let dx = 2.0 * radius / n as f64;
    let mut sum = 0.0;
    let mut edge = 0.0f64;
    for i in 0..=n {
        let x = -radius + dx * i as f64;
        let v = x.abs().powi(alpha as i32) * atom.abs_value(x);
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        sum += w * v * v;
        if i == 0 || i == n {
            edge = edge.max(v * v);
        }
    }
    if edge * dx > 1e-13 * sum * dx {
        return Err(TestFnError::GridTooNarrow(radius));
    }
    Ok((sum * dx).sqrt())
}

/// `sup_x |x^alpha d^beta phi(x)|`; factors across dimensions for products.
pub fn seminorm_sup(
    phi: &AnalyticFunction,
    alpha: &[u32],
    beta: &[u32],
) -> Result<f64, TestFnError> {
    if alpha.len() != phi.dimension() {
        return Err(TestFnError::DimensionMismatch {
            found: phi.dimension(),
            given: alpha.len(),
        });
    }
    let psi = phi.derivative(beta)?;
    let mut out = 1.0;
    for (factor, &a) in psi.factors.iter().zip(alpha) {
        out *= sup_atom(factor, a)?;
    }
    Ok(out)
}

/// `||x^alpha d^beta phi||_{L2}`.
pub fn seminorm_l2(
    phi: &AnalyticFunction,
    alpha: &[u32],
    beta: &[u32],
) -> Result<f64, TestFnError> {
    if alpha.len() != phi.dimension() {
        return Err(TestFnError::DimensionMismatch {
            found: phi.dimension(),
            given: alpha.len(),
        });
    }
    let psi = phi.derivative(beta)?;
    let mut out = 1.0;
    for (factor, &a) in psi.factors.iter().zip(alpha) {
        out *= l2_atom(factor, a)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeminormKind {
    Sup,
    L2,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeminormEntry {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub value: f64,
}

/// All seminorms `s_{alpha,beta}` for `|alpha|, |beta| <= max_order`.
#[derive(Debug, Clone, Serialize)]
pub struct SeminormTable {
    pub kind: SeminormKind,
    pub max_order: u32,
    pub dimension: usize,
    pub entries: Vec<SeminormEntry>,
}

/// Multi-indices in `dim` variables with total order `<= max`, lexicographic.
fn multi_indices(dim: usize, max: u32) -> Vec<Vec<u32>> {
    if dim == 1 {
        return (0..=max).map(|k| vec![k]).collect();
    }
    let mut out = Vec::new();
    for head in 0..=max {
        for rest in multi_indices(dim - 1, max - head) {
            let mut idx = vec![head];
            idx.extend(rest);
            out.push(idx);
        }
    }
    out
}

fn order(idx: &[u32]) -> u32 {
    idx.iter().sum()
}

/// Populates the full table; entries are independent and computed in parallel.
pub fn build_table(
    phi: &AnalyticFunction,
    max_order: u32,
    kind: SeminormKind,
) -> Result<SeminormTable, TestFnError> {
    let dim = phi.dimension();
    let indices = multi_indices(dim, max_order);
    let pairs: Vec<(Vec<u32>, Vec<u32>)> = indices
        .iter()
        .flat_map(|a| indices.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let entries: Result<Vec<SeminormEntry>, TestFnError> = pairs
        .par_iter()
        .map(|(alpha, beta)| {
            let value = match kind {
                SeminormKind::Sup => seminorm_sup(phi, alpha, beta)?,
                SeminormKind::L2 => seminorm_l2(phi, alpha, beta)?,
            };
            Ok(SeminormEntry { alpha: alpha.clone(), beta: beta.clone(), value })
        })
        .collect();
    Ok(SeminormTable { kind, max_order, dimension: dim, entries: entries? })
}

/// A fitted membership certificate: the pair `(tau, ln C)` making every table
/// entry satisfy `s <= C M_|alpha| M_|beta|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TauFit {
    pub tau: f64,
    pub log_c: f64,
}

fn ln_plus(p: u32) -> f64 {
    if p < 2 {
        0.0
    } else {
        (p as f64).ln()
    }
}

fn fit_denominator(alpha_order: u32, beta_order: u32, sigma: f64) -> f64 {
    (alpha_order as f64).powf(sigma) * ln_plus(alpha_order)
        + (beta_order as f64).powf(sigma) * ln_plus(beta_order)
}

/// Max-ratio estimate on a set of entries: `C` is fixed from the entries
/// carrying no tau information (orders 0 and 1 vanish in the log weights),
/// then `tau = max [ln s - ln C] / denominator`, clamped at zero. The
/// estimate is the minimal tau for the chosen C and inverts its own model
/// exactly.
fn fit_entries<'a>(
    entries: impl Iterator<Item = &'a SeminormEntry> + Clone,
    sigma: f64,
    extra_log_c: f64,
) -> TauFit {
    let mut log_c = 0.0f64;
    for e in entries.clone() {
        if fit_denominator(order(&e.alpha), order(&e.beta), sigma) == 0.0 && e.value > 0.0 {
            log_c = log_c.max(e.value.ln());
        }
    }
    log_c += extra_log_c;
    let mut tau = 0.0f64;
    for e in entries {
        let d = fit_denominator(order(&e.alpha), order(&e.beta), sigma);
        if d > 0.0 && e.value > 0.0 {
            tau = tau.max((e.value.ln() - log_c) / d);
        }
    }
    TauFit { tau, log_c }
}

/// Joint fit over the whole table.
pub fn fit_tau(table: &SeminormTable, sigma: f64) -> Result<TauFit, TestFnError> {
    fit_tau_with_budget(table, sigma, 0.0)
}

/// Fit with the constant budget enlarged by `extra_log_c`; the estimate is
/// nonincreasing in the allowed constant.
pub fn fit_tau_with_budget(
    table: &SeminormTable,
    sigma: f64,
    extra_log_c: f64,
) -> Result<TauFit, TestFnError> {
    if table.max_order < 4 {
        return Err(TestFnError::OrderTooSmall { min: 4, got: table.max_order });
    }
    Ok(fit_entries(table.entries.iter(), sigma, extra_log_c))
}

/// Decay certificate against the associated weight: the grid supremum of
/// `|phi(x)| e^{T(|x|)}` with its attaining point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeightedDecayCheck {
    pub tau: f64,
    pub sup: f64,
    pub attained_at: f64,
    /// Finite: the supremum sits in the grid interior and the product has
    /// decayed over the last grid decade.
    pub finite: bool,
}

fn weighted_decay(phi1d: &GaussAtom, tau: f64, sigma: f64) -> WeightedDecayCheck {
    let params = WeightParams::new(tau.max(1e-6), sigma).expect("validated");
    let assoc = AssociatedFunction::new(params);
    let mut sup = 0.0f64;
    let mut attained_at = 0.0;
    let n = 2000;
    let radius = phi1d.center.abs() + 30.0 / phi1d.width.sqrt() + 5.0;
    let mut last_decade_max = 0.0f64;
    for i in 0..=n {
        let x = radius * i as f64 / n as f64;
        let t = if x > 1.0 { assoc.value_log_arg(x.ln()).value } else { 0.0 };
        let v = phi1d.abs_value(x).max(phi1d.abs_value(-x)) * t.exp();
        if v > sup {
            sup = v;
            attained_at = x;
        }
        if i >= n - n / 10 {
            last_decade_max = last_decade_max.max(v);
        }
    }
    let finite = attained_at < 0.9 * radius && last_decade_max <= 1e-6 * sup.max(1e-300);
    WeightedDecayCheck { tau, sup, attained_at, finite }
}

/// Full membership report for one function: fitted parameters for the joint,
/// decay-only, derivative-only, and transform-decay conditions, the L2
/// counterpart, weighted-decay certificates, and the same certificates along
/// a decreasing parameter sequence.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub sigma: f64,
    pub max_order: u32,
    pub tau_joint: TauFit,
    pub tau_decay: TauFit,
    pub tau_deriv: TauFit,
    pub tau_fourier: TauFit,
    pub tau_l2_joint: TauFit,
    /// Finite constant making the joint table satisfy the bound at parameter
    /// `2^sigma max(tau_decay, tau_deriv)`: the quantitative content of the
    /// split-conditions-imply-joint direction.
    pub joint_from_split_log_c: f64,
    pub function_decay: WeightedDecayCheck,
    pub transform_decay: WeightedDecayCheck,
    pub shrinking_tau: Vec<(WeightedDecayCheck, WeightedDecayCheck)>,
}

/// Computes seminorm tables for `phi` and its Fourier transform and fits every
/// condition set (one-dimensional functions).
pub fn characterize(
    phi: &AnalyticFunction,
    sigma: f64,
    max_order: u32,
) -> Result<MembershipReport, TestFnError> {
    if phi.dimension() != 1 {
        return Err(TestFnError::UnsupportedFamily("one-dimensional"));
    }
    if max_order < 4 {
        return Err(TestFnError::OrderTooSmall { min: 4, got: max_order });
    }
    let table = build_table(phi, max_order, SeminormKind::Sup)?;
    let table_l2 = build_table(phi, max_order, SeminormKind::L2)?;
    let phi_hat = phi.fourier();
    let hat_table = build_table(&phi_hat, max_order, SeminormKind::Sup)?;

    let tau_joint = fit_entries(table.entries.iter(), sigma, 0.0);
    let tau_l2_joint = fit_entries(table_l2.entries.iter(), sigma, 0.0);
    let beta_zero = |e: &&SeminormEntry| order(&e.beta) == 0;
    let alpha_zero = |e: &&SeminormEntry| order(&e.alpha) == 0;
    let tau_decay = fit_entries(table.entries.iter().filter(beta_zero), sigma, 0.0);
    let tau_deriv = fit_entries(table.entries.iter().filter(alpha_zero), sigma, 0.0);
    // Transform-side decay: sup |xi^beta phi_hat(xi)|, indexed by the power.
    let tau_fourier = fit_entries(hat_table.entries.iter().filter(beta_zero), sigma, 0.0);

    let split_tau = sigma.exp2() * tau_decay.tau.max(tau_deriv.tau);
    let split_params = WeightParams::new(split_tau.max(1e-9), sigma).expect("validated");
    let mut joint_from_split_log_c = 0.0f64;
    for e in &table.entries {
        if e.value > 0.0 {
            let bound = log_weight(order(&e.alpha) as usize, split_params)
                + log_weight(order(&e.beta) as usize, split_params);
            joint_from_split_log_c = joint_from_split_log_c.max(e.value.ln() - bound);
        }
    }

    let tau_star = tau_joint
        .tau
        .max(tau_decay.tau)
        .max(tau_deriv.tau)
        .max(tau_fourier.tau)
        .max(0.25);
    let tau_cor = tau_star / sigma.exp2();
    let function_decay = weighted_decay(&phi.factors[0], tau_cor, sigma);
    let transform_decay = weighted_decay(&phi_hat.factors[0], tau_cor, sigma);
    let shrinking_tau = (1..=5)
        .map(|j| {
            let t = tau_star / 2f64.powi(j);
            (
                weighted_decay(&phi.factors[0], t, sigma),
                weighted_decay(&phi_hat.factors[0], t, sigma),
            )
        })
        .collect();

    Ok(MembershipReport {
        sigma,
        max_order,
        tau_joint,
        tau_decay,
        tau_deriv,
        tau_fourier,
        tau_l2_joint,
        joint_from_split_log_c,
        function_decay,
        transform_decay,
        shrinking_tau,
    })
}

/// Builds a synthetic table with entries exactly `C M_|alpha| M_|beta|`.
pub fn synthetic_table(
    params: WeightParams,
    max_order: u32,
    dimension: usize,
    log_c: f64,
) -> SeminormTable {
    let indices = multi_indices(dimension, max_order);
    let mut entries = Vec::new();
    for a in &indices {
        for b in &indices {
            let value = (log_c
                + log_weight(order(a) as usize, params)
                + log_weight(order(b) as usize, params))
            .exp();
            entries.push(SeminormEntry { alpha: a.clone(), beta: b.clone(), value });
        }
    }
    SeminormTable { kind: SeminormKind::Sup, max_order, dimension, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn derivative_oracle_matches_central_differences() {
        // Fourth-order central differences at 100 probe points per family.
        let families: Vec<AnalyticFunction> = vec![
            AnalyticFunction::unit_gaussian(),
            AnalyticFunction::gaussian(0.7).unwrap(),
            AnalyticFunction::hermite(3),
            AnalyticFunction::modulated_translated_gaussian(1.0, 0.4, 0.8).unwrap(),
        ];
        for phi in &families {
            for db in 1..=3u32 {
                let psi = phi.derivative(&[db]).unwrap();
                let lower = phi.derivative(&[db - 1]).unwrap();
                let h = 1e-3;
                for i in 0..100 {
                    let x = -2.5 + 5.0 * i as f64 / 99.0;
                    let fd = (-lower.value1(x + 2.0 * h) + 8.0 * lower.value1(x + h)
                        - 8.0 * lower.value1(x - h)
                        + lower.value1(x - 2.0 * h))
                        / (12.0 * h);
                    let exact = psi.value1(x);
                    let scale = exact.norm().max(1.0);
                    assert!(
                        (fd - exact).norm() <= 1e-6 * scale,
                        "mismatch at x = {x}, order {db}: fd = {fd}, exact = {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_oracle_matches_quadrature() {
        let phi = AnalyticFunction::modulated_translated_gaussian(0.8, 0.3, -0.5).unwrap();
        let hat = phi.fourier();
        for xi in [-1.5, -0.25, 0.0, 0.4, 2.0] {
            let n = 20_000;
            let r = 14.0;
            let dx = 2.0 * r / n as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=n {
                let x = -r + dx * i as f64;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                acc += w * phi.value1(x) * Complex64::from_polar(1.0, -2.0 * PI * x * xi);
            }
            acc *= dx;
            let exact = hat.value1(xi);
            assert!((acc - exact).norm() <= 1e-9, "xi = {xi}: {acc} vs {exact}");
        }
    }

    #[test]
    fn hermite_functions_are_fourier_eigenfunctions() {
        // h_k^ = (-i)^k h_k under this transform convention.
        for k in 0..=4u32 {
            let h = AnalyticFunction::hermite(k);
            let hat = h.fourier();
            let eig = Complex64::new(0.0, -1.0).powu(k);
            for i in 0..40 {
                let x = -3.0 + 6.0 * i as f64 / 39.0;
                assert!(
                    (hat.value1(x) - eig * h.value1(x)).norm() <= 1e-10,
                    "k = {k}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn sup_seminorm_frozen_values() {
        let unit = AnalyticFunction::unit_gaussian();
        assert_relative_eq!(
            seminorm_sup(&unit, &[0], &[0]).unwrap(),
            2f64.powf(0.25),
            max_relative = 1e-12
        );
        let plain = AnalyticFunction::gaussian(PI).unwrap();
        assert_relative_eq!(seminorm_sup(&plain, &[0], &[0]).unwrap(), 1.0, max_relative = 1e-12);
        // sup |x e^{-x^2}| = (2e)^(-1/2), stationary point x = 1/sqrt(2).
        let g1 = AnalyticFunction::gaussian(1.0).unwrap();
        assert_relative_eq!(
            seminorm_sup(&g1, &[1], &[0]).unwrap(),
            (2.0 * std::f64::consts::E).powf(-0.5),
            max_relative = 1e-10
        );
        // sup |d/dx e^{-pi x^2}| = sup |2 pi x| e^{-pi x^2} = sqrt(2 pi / e).
        assert_relative_eq!(
            seminorm_sup(&plain, &[0], &[1]).unwrap(),
            (2.0 * PI / std::f64::consts::E).sqrt(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn sup_matches_dense_grid_oracle() {
        let h3 = AnalyticFunction::hermite(3);
        for (a, b) in [(2u32, 1u32), (0, 3), (4, 0)] {
            let psi = h3.derivative(&[b]).unwrap();
            let mut oracle = 0.0f64;
            for i in 0..2_000_000 {
                let x = -12.0 + 24.0 * i as f64 / 1_999_999.0;
                oracle = oracle.max(x.abs().powi(a as i32) * psi.value1(x).norm());
            }
            let got = seminorm_sup(&h3, &[a], &[b]).unwrap();
            assert_relative_eq!(got, oracle, max_relative = 1e-8);
        }
    }

    #[test]
    fn l2_seminorm_frozen_values() {
        let unit = AnalyticFunction::unit_gaussian();
        assert_relative_eq!(seminorm_l2(&unit, &[0], &[0]).unwrap(), 1.0, max_relative = 1e-12);
        // ||x 2^(1/4) e^{-pi x^2}|| = 1/(2 sqrt(pi)), a Gaussian moment.
        assert_relative_eq!(
            seminorm_l2(&unit, &[1], &[0]).unwrap(),
            0.5 / PI.sqrt(),
            max_relative = 1e-12
        );
        // ||e^{-x^2}|| = (pi/2)^(1/4).
        let g1 = AnalyticFunction::gaussian(1.0).unwrap();
        assert_relative_eq!(
            seminorm_l2(&g1, &[0], &[0]).unwrap(),
            (PI / 2.0).powf(0.25),
            max_relative = 1e-12
        );
    }

    #[test]
    fn fit_inverts_synthetic_tables() {
        // Orders and parameters kept small enough that the linear-domain
        // entries stay inside f64 range.
        for (tau, sigma, order, log_c) in
            [(0.7, 2.0, 8, 0.0), (1.3, 1.5, 8, 0.4), (2.0, 2.5, 6, 1.0)]
        {
            let params = WeightParams::new(tau, sigma).unwrap();
            let table = synthetic_table(params, order, 1, log_c);
            let fit = fit_tau(&table, sigma).unwrap();
            assert_relative_eq!(fit.tau, tau, max_relative = 1e-12);
        }
    }

    #[test]
    fn fit_nonincreasing_in_constant_budget() {
        let table = build_table(&AnalyticFunction::unit_gaussian(), 8, SeminormKind::Sup).unwrap();
        let f0 = fit_tau(&table, 2.0).unwrap();
        let f1 = fit_tau_with_budget(&table, 2.0, 2f64.ln()).unwrap();
        let f2 = fit_tau_with_budget(&table, 2.0, 10f64.ln()).unwrap();
        assert!(f0.tau >= f1.tau && f1.tau >= f2.tau);
        assert!(f0.tau > 0.0);
    }

    #[test]
    fn fit_rejects_small_order() {
        let table = build_table(&AnalyticFunction::unit_gaussian(), 3, SeminormKind::Sup).unwrap();
        assert!(fit_tau(&table, 2.0).is_err());
    }

    #[test]
    fn gaussian_and_hermite_membership() {
        let rep_g = characterize(&AnalyticFunction::unit_gaussian(), 2.0, 10).unwrap();
        assert!(rep_g.tau_joint.tau.is_finite() && rep_g.tau_joint.tau > 0.0);
        // The transform fixes the unit Gaussian, so both decay fits coincide.
        assert_eq!(rep_g.tau_fourier.tau, rep_g.tau_decay.tau);
        assert!(rep_g.function_decay.finite && rep_g.transform_decay.finite);
        for (a, b) in &rep_g.shrinking_tau {
            assert!(a.finite && b.finite);
        }

        let rep_h = characterize(&AnalyticFunction::hermite(3), 2.0, 10).unwrap();
        assert!(rep_h.tau_joint.tau.is_finite());
        let max_g = build_table(&AnalyticFunction::unit_gaussian(), 6, SeminormKind::Sup)
            .unwrap()
            .entries
            .iter()
            .map(|e| e.value)
            .fold(0.0f64, f64::max);
        let max_h = build_table(&AnalyticFunction::hermite(3), 6, SeminormKind::Sup)
            .unwrap()
            .entries
            .iter()
            .map(|e| e.value)
            .fold(0.0f64, f64::max);
        assert!(max_h > max_g, "degree-3 seminorms should dominate the Gaussian's");
    }

    #[test]
    fn joint_bound_from_split_conditions_is_finite() {
        let rep = characterize(&AnalyticFunction::unit_gaussian(), 2.0, 10).unwrap();
        assert!(rep.joint_from_split_log_c.is_finite());
        // The implied inequality holds with that constant.
        let table =
            build_table(&AnalyticFunction::unit_gaussian(), 10, SeminormKind::Sup).unwrap();
        let split_tau = 2f64.exp2() * rep.tau_decay.tau.max(rep.tau_deriv.tau);
        let params = WeightParams::new(split_tau.max(1e-9), 2.0).unwrap();
        for e in &table.entries {
            let bound = rep.joint_from_split_log_c
                + log_weight(order(&e.alpha) as usize, params)
                + log_weight(order(&e.beta) as usize, params);
            assert!(e.value.ln() <= bound + 1e-9);
        }
    }

    #[test]
    fn sup_and_l2_fits_mutually_certify() {
        // Each fit, inflated by 2^sigma, dominates the other's parameter.
        let sigma = 2.0;
        for phi in [AnalyticFunction::unit_gaussian(), AnalyticFunction::hermite(2)] {
            let rep = characterize(&phi, sigma, 10).unwrap();
            let inflate = sigma.exp2();
            assert!(rep.tau_joint.tau <= inflate * rep.tau_l2_joint.tau.max(1e-9) + 1e-9);
            assert!(rep.tau_l2_joint.tau <= inflate * rep.tau_joint.tau.max(1e-9) + 1e-9);
        }
    }

    #[test]
    fn product_and_sum_indexed_tables_are_linked() {
        // Entrywise: M_|a| M_|b| <= M_|a+b| (superadditivity), and M_|a+b| is
        // controlled by the split constant over the rescaled product.
        let sigma = 2.0;
        let params = WeightParams::new(0.8, sigma).unwrap();
        let report = crate::weights::check_conditions(params, 64).unwrap();
        let split = params.scale_tau((sigma - 1.0).exp2()).unwrap();
        for a in 0..=10u32 {
            for b in 0..=10u32 {
                let prod = log_weight(a as usize, params) + log_weight(b as usize, params);
                let sum = log_weight((a + b) as usize, params);
                assert!(prod <= sum + 1e-12);
                let split_bound = report.split_constant
                    * ((a as f64).powf(sigma) + (b as f64).powf(sigma))
                    + log_weight(a as usize, split)
                    + log_weight(b as usize, split);
                assert!(sum <= split_bound + 1e-9);
            }
        }
    }

    #[test]
    fn wide_gaussian_transform_width_and_fits() {
        // The transform of e^{-a x^2} is a Gaussian of width pi^2 / a; both
        // fitted parameters come out finite.
        let a = 4.0;
        let phi = AnalyticFunction::gaussian(a).unwrap();
        let hat = phi.fourier();
        assert_relative_eq!(hat.factors()[0].width(), PI * PI / a, max_relative = 1e-14);
        let rep = characterize(&phi, 2.0, 8).unwrap();
        assert!(rep.tau_decay.tau.is_finite());
        assert!(rep.tau_fourier.tau.is_finite());
    }

    #[test]
    fn translated_modulated_fit_close_to_plain() {
        // Seminorm tables of the shifted copy differ by polynomial factors the
        // constant absorbs; the fitted parameter moves little.
        let sigma = 2.0;
        let plain = characterize(&AnalyticFunction::gaussian(PI).unwrap(), sigma, 10).unwrap();
        let moved = characterize(
            &AnalyticFunction::modulated_translated_gaussian(PI, 0.7, 0.5).unwrap(),
            sigma,
            10,
        )
        .unwrap();
        let rel = (moved.tau_joint.tau - plain.tau_joint.tau).abs() / plain.tau_joint.tau;
        assert!(rel <= 0.3, "tau drift {rel} too large");
    }

    #[test]
    fn zero_function_fits_zero() {
        let table = build_table(&AnalyticFunction::zero(), 6, SeminormKind::Sup).unwrap();
        assert!(table.entries.iter().all(|e| e.value == 0.0));
        let fit = fit_tau(&table, 2.0).unwrap();
        assert_eq!(fit.tau, 0.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let phi = AnalyticFunction::unit_gaussian();
        assert!(seminorm_sup(&phi, &[0, 0], &[0]).is_err());
        assert!(phi.derivative(&[0, 1]).is_err());
    }

    proptest! {
        #[test]
        fn fit_inversion_random(tau in 0.2f64..2.0, sigma in 1.2f64..2.4, log_c in 0.0f64..2.0) {
            let params = WeightParams::new(tau, sigma).unwrap();
            let table = synthetic_table(params, 5, 1, log_c);
            let fit = fit_tau(&table, sigma).unwrap();
            prop_assert!((fit.tau - tau).abs() <= 1e-9 * tau);
        }
    }
}
