//! Phase-space transforms on sampled and analytic signals.
//!
//! Signals live on centered uniform lattices; the continuous Fourier transform
//! is approximated by a phase-corrected FFT scaled by the step (trapezoid
//! quadrature, which is spectrally accurate for the rapidly decaying smooth
//! signals this module is built for). The four transforms share one driver and
//! differ only through the kernels in [`kernels`].

pub mod kernels;

use crate::testfn::AnalyticFunction;
use kernels::{kernel, TfrKernel, TfrKind};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TfrError {
    #[error("unknown transform kind: {0}")]
    UnknownKind(String),
    #[error("point {0} is off the sample lattice")]
    OffLattice(f64),
    #[error("frequency {0} is not representable on the fast-path lattice")]
    FrequencyOffLattice(f64),
    #[error("sample count must be even and positive, got {0}")]
    BadCount(usize),
    #[error("step must be positive, got {0}")]
    BadStep(f64),
    #[error("value count {values} does not match axis count {axis}")]
    CountMismatch { values: usize, axis: usize },
    #[error("signals live on different lattices")]
    AxisMismatch,
    #[error("windows are near-orthogonal: |<g2, g1>| = {0}")]
    WindowNearOrthogonal(f64),
    #[error("signal tail mass at the grid edge is too large: {0}")]
    TailMass(f64),
    #[error("inversion requires a grossmann-royer result, got {0}")]
    KindMismatch(TfrKind),
    #[error("operation requires the {0} family")]
    UnsupportedFamily(&'static str),
}

/// A centered uniform lattice: points `center + (j - count/2) * step` with the
/// integer offset `count/2`, so odd counts give a grid symmetric about the
/// center. Sampled signals additionally require an even count (the transform
/// pipeline's convention); output grids do not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub center: f64,
    pub step: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(center: f64, step: f64, count: usize) -> Result<Self, TfrError> {
        if count == 0 {
            return Err(TfrError::BadCount(count));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(TfrError::BadStep(step));
        }
        Ok(Self { center, step, count })
    }

    fn offset(&self) -> f64 {
        (self.count / 2) as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.center + (j as f64 - self.offset()) * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.point(j))
    }

    /// Lattice index of `t`, if `t` lies on the lattice (within 1e-9 steps);
    /// `Ok(None)` when on-lattice but outside the range.
    pub fn index_of(&self, t: f64) -> Result<Option<usize>, TfrError> {
        let u = (t - self.center) / self.step + self.offset();
        let k = u.round();
        if (u - k).abs() > 1e-9 * u.abs().max(1.0) {
            return Err(TfrError::OffLattice(t));
        }
        if k < 0.0 || k >= self.count as f64 {
            return Ok(None);
        }
        Ok(Some(k as usize))
    }

    /// The frequency lattice of this axis under the transform pipeline:
    /// centered at zero with step `1/(count * step)`.
    pub fn frequency_axis(&self) -> Axis {
        Axis { center: 0.0, step: 1.0 / (self.count as f64 * self.step), count: self.count }
    }
}

/// Default lattice for analytic sources: `[-8, 8)` at 256 samples. The unit
/// Gaussian's tail mass at `|x| = 8` is below 1e-40, far under every stated
/// tolerance.
pub fn default_axis() -> Axis {
    Axis { center: 0.0, step: 1.0 / 16.0, count: 256 }
}

/// Uniform complex samples `f(center + (j - N/2) step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub axis: Axis,
    pub values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(axis: Axis, values: Vec<Complex64>) -> Result<Self, TfrError> {
        if !axis.count.is_multiple_of(2) {
            return Err(TfrError::BadCount(axis.count));
        }
        if values.len() != axis.count {
            return Err(TfrError::CountMismatch { values: values.len(), axis: axis.count });
        }
        Ok(Self { axis, values })
    }

    pub fn from_fn(axis: Axis, f: impl Fn(f64) -> Complex64) -> Self {
        let values = axis.points().map(f).collect();
        Self { axis, values }
    }

    pub fn sample(axis: Axis, phi: &AnalyticFunction) -> Self {
        Self::from_fn(axis, |t| phi.value1(t))
    }

    /// `L2` norm via the step-weighted sum.
    pub fn norm(&self) -> f64 {
        (self.axis.step * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `<self, other>` with the step weight; both must share the lattice.
    pub fn inner(&self, other: &Self) -> Result<Complex64, TfrError> {
        if self.axis != other.axis {
            return Err(TfrError::AxisMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * self.axis.step)
    }

    /// Samples of `t -> f(-t)`. The leftmost lattice point has no mirror on a
    /// centered even grid; its mirror value is taken as zero, which is exact
    /// for signals that have decayed at the edge.
    pub fn reflect(&self) -> Self {
        let n = self.axis.count;
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        for (j, v) in values.iter_mut().enumerate().skip(1) {
            *v = self.values[n - j];
        }
        Self {
            axis: Axis { center: -self.axis.center, ..self.axis },
            values,
        }
    }

    /// Largest |value| on the outermost `band` samples relative to the peak.
    pub fn edge_mass(&self, band: usize) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        let n = self.values.len();
        let edge = self
            .values
            .iter()
            .take(band)
            .chain(self.values.iter().skip(n.saturating_sub(band)))
            .map(|v| v.norm())
            .fold(0.0f64, f64::max);
        edge / peak
    }
}

/// Continuous-convention Fourier transform of a sampled signal:
/// `F(xi_k) = step * sum_j f(t_j) e^{-2 pi i t_j xi_k}` on the centered
/// frequency lattice with step `1/(count * step)`.
pub fn fourier(signal: &SampledSignal) -> SampledSignal {
    let n = signal.axis.count;
    assert!(n.is_multiple_of(2), "transform pipeline requires an even count");
    let mut buf: Vec<Complex64> = signal
        .values
        .iter()
        .enumerate()
        .map(|(j, &v)| if j % 2 == 0 { v } else { -v })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let out_axis = signal.axis.frequency_axis();
    let half_sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let values = buf
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let sign = if k % 2 == 0 { half_sign } else { -half_sign };
            let xi = out_axis.point(k);
            v * sign
                * signal.axis.step
                * Complex64::from_polar(1.0, -2.0 * PI * signal.axis.center * xi)
        })
        .collect();
    SampledSignal { axis: out_axis, values }
}

/// Inverse of [`fourier`] (opposite sign, frequency-step weight); the output
/// time lattice is centered at zero.
pub fn inverse_fourier(spectrum: &SampledSignal) -> SampledSignal {
    let n = spectrum.axis.count;
    assert!(n.is_multiple_of(2), "transform pipeline requires an even count");
    let out_axis = spectrum.axis.frequency_axis();
    let mut buf: Vec<Complex64> = spectrum
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v } else { -v })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let half_sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let values = buf
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let sign = if j % 2 == 0 { half_sign } else { -half_sign };
            let t = out_axis.point(j);
            v * sign
                * spectrum.axis.step
                * Complex64::from_polar(1.0, 2.0 * PI * spectrum.axis.center * t)
        })
        .collect();
    SampledSignal { axis: out_axis, values }
}

/// A transform input: an exact analytic evaluator or lattice samples.
#[derive(Debug, Clone)]
pub enum Source {
    Analytic(AnalyticFunction),
    Sampled(SampledSignal),
}

impl Source {
    pub fn eval(&self, t: f64) -> Result<Complex64, TfrError> {
        match self {
            Source::Analytic(phi) => Ok(phi.value1(t)),
            Source::Sampled(s) => Ok(match s.axis.index_of(t)? {
                Some(j) => s.values[j],
                None => Complex64::new(0.0, 0.0),
            }),
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, Source::Sampled(_))
    }

    pub fn norm(&self) -> f64 {
        match self {
            Source::Analytic(phi) => {
                SampledSignal::sample(default_axis(), phi).norm()
            }
            Source::Sampled(s) => s.norm(),
        }
    }

    pub fn reflect(&self) -> Source {
        match self {
            Source::Analytic(phi) => Source::Analytic(phi.reflect()),
            Source::Sampled(s) => Source::Sampled(s.reflect()),
        }
    }

    /// Sample lattice shared by the pair: a sampled axis when present,
    /// otherwise the default analytic lattice.
    pub fn base_axis(f: &Source, g: &Source) -> Axis {
        match (f, g) {
            (Source::Sampled(s), _) => s.axis,
            (_, Source::Sampled(s)) => s.axis,
            _ => default_axis(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Reference,
    Fast,
}

/// Output lattice in phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    pub x: Axis,
    pub omega: Axis,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureMeta {
    pub axis: Axis,
    pub mode: Mode,
}

/// A complex matrix over the phase-space grid, `x`-major.
#[derive(Debug, Clone)]
pub struct TfrResult {
    pub kind: TfrKind,
    pub grid: PhaseSpaceGrid,
    pub values: Vec<Complex64>,
    pub quadrature: QuadratureMeta,
}

impl TfrResult {
    pub fn value(&self, ix: usize, iw: usize) -> Complex64 {
        self.values[ix * self.grid.omega.count + iw]
    }

    /// Value at the lattice point nearest to `(x, omega)`; errors off-lattice.
    pub fn value_at(&self, x: f64, omega: f64) -> Result<Complex64, TfrError> {
        let ix = self.grid.x.index_of(x)?.ok_or(TfrError::OffLattice(x))?;
        let iw = self
            .grid
            .omega
            .index_of(omega)?
            .ok_or(TfrError::OffLattice(omega))?;
        Ok(self.value(ix, iw))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Single-point reference evaluation: direct quadrature of the defining
/// integral on the kernel's lattice.
pub fn reference_point(
    kind: TfrKind,
    f: &Source,
    g: &Source,
    x: f64,
    omega: f64,
) -> Result<Complex64, TfrError> {
    let k = kernel(kind);
    let quad = k.quad_axis(f, g);
    reference_point_on(k, f, g, x, omega, &quad)
}

fn reference_point_on(
    k: &dyn TfrKernel,
    f: &Source,
    g: &Source,
    x: f64,
    omega: f64,
    quad: &Axis,
) -> Result<Complex64, TfrError> {
    let c = k.freq_coeff();
    let mut acc = Complex64::new(0.0, 0.0);
    for t in quad.points() {
        let p = k.product(f, g, x, t)?;
        if p.norm_sqr() != 0.0 {
            acc += p * Complex64::from_polar(1.0, 2.0 * PI * c * omega * t);
        }
    }
    Ok(k.phase(x, omega) * acc * quad.step)
}

/// Computes one transform over a phase-space grid.
///
/// Reference mode evaluates the defining integral by quadrature at every grid
/// point. Fast mode computes one product row per `x`, transforms it with
/// [`fourier`], and reads the row at `-c * omega`; both modes agree to FFT
/// roundoff on shared grid points.
pub fn transform(
    kind: TfrKind,
    f: &Source,
    g: &Source,
    grid: &PhaseSpaceGrid,
    mode: Mode,
) -> Result<TfrResult, TfrError> {
    let k = kernel(kind);
    let quad = k.quad_axis(f, g);
    let xs: Vec<f64> = grid.x.points().collect();
    let omegas: Vec<f64> = grid.omega.points().collect();

    let rows: Result<Vec<Vec<Complex64>>, TfrError> = xs
        .par_iter()
        .map(|&x| -> Result<Vec<Complex64>, TfrError> {
            match mode {
                Mode::Reference => omegas
                    .iter()
                    .map(|&w| reference_point_on(k, f, g, x, w, &quad))
                    .collect(),
                Mode::Fast => {
                    let row = SampledSignal {
                        axis: quad,
                        values: quad
                            .points()
                            .map(|t| k.product(f, g, x, t))
                            .collect::<Result<_, _>>()?,
                    };
                    let spectrum = fourier(&row);
                    // The Nyquist edge +half belongs to the lattice: on the
                    // sample lattice the quadrature sums at +half and -half
                    // coincide identically, so the edge read wraps exactly.
                    let half = spectrum.axis.count as f64 * spectrum.axis.step / 2.0;
                    omegas
                        .iter()
                        .map(|&w| {
                            let mut xi = -k.freq_coeff() * w;
                            if xi.abs() > half * (1.0 + 1e-12) {
                                return Err(TfrError::FrequencyOffLattice(w));
                            }
                            if xi >= half {
                                xi -= 2.0 * half;
                            }
                            let idx = spectrum
                                .axis
                                .index_of(xi)
                                .map_err(|_| TfrError::FrequencyOffLattice(w))?
                                .ok_or(TfrError::FrequencyOffLattice(w))?;
                            Ok(k.phase(x, w) * spectrum.values[idx])
                        })
                        .collect()
                }
            }
        })
        .collect();

    let values = rows?.into_iter().flatten().collect();
    Ok(TfrResult {
        kind,
        grid: *grid,
        values,
        quadrature: QuadratureMeta { axis: quad, mode },
    })
}

/// Transform on the kernel's default grid.
pub fn transform_default(
    kind: TfrKind,
    f: &Source,
    g: &Source,
    mode: Mode,
) -> Result<TfrResult, TfrError> {
    let grid = kernel(kind).default_grid(f, g);
    transform(kind, f, g, &grid, mode)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MoyalCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_err: f64,
    pub abs_err: f64,
}

/// Phase-space pairing weight of the reflection-parametrized transform. The
/// transform is `2^{-n}` times the Wigner distribution, whose orthogonality
/// relation is exact, so its quadratic pairing carries the constant `4^n`.
/// (Consistency check: the substitution `(x, w) -> (x/2, w/2)` relating the
/// windowed Fourier transform to this one has Jacobian `4^n` and turns the
/// weighted pairing into the plain one.)
fn pairing_weight(dimension: usize) -> f64 {
    4f64.powi(dimension as i32)
}

/// Orthogonality relation of the transforms:
/// `4^n <R_{g1} f1, R_{g2} f2> = <f1, f2> conj(<g1, g2>)`, the left side by
/// 2-d phase-space quadrature, the right side by 1-d quadratures.
pub fn moyal_check(
    f1: &SampledSignal,
    g1: &SampledSignal,
    f2: &SampledSignal,
    g2: &SampledSignal,
) -> Result<MoyalCheck, TfrError> {
    for s in [f1, g1, f2, g2] {
        let edge = s.edge_mass(4);
        if edge > 1e-12 {
            return Err(TfrError::TailMass(edge));
        }
    }
    let sf1 = Source::Sampled(f1.clone());
    let sg1 = Source::Sampled(g1.clone());
    let sf2 = Source::Sampled(f2.clone());
    let sg2 = Source::Sampled(g2.clone());
    let grid = kernel(TfrKind::GrossmannRoyer).default_grid(&sf1, &sg1);
    let r1 = transform(TfrKind::GrossmannRoyer, &sf1, &sg1, &grid, Mode::Fast)?;
    let r2 = transform(TfrKind::GrossmannRoyer, &sf2, &sg2, &grid, Mode::Fast)?;
    let cell = grid.x.step * grid.omega.step;
    let lhs = r1
        .values
        .iter()
        .zip(&r2.values)
        .map(|(a, b)| a * b.conj())
        .sum::<Complex64>()
        * cell
        * pairing_weight(1);
    let rhs = f1.inner(f2)? * g1.inner(g2)?.conj();
    let abs_err = (lhs - rhs).norm();
    let scale = rhs.norm().max(1e-300);
    Ok(MoyalCheck { lhs, rhs, rel_err: abs_err / scale, abs_err })
}

/// Reconstructs `f` from its transform against window `g1` by pairing with a
/// second window `g2`:
/// `f(t) = 4^n <g2, g1>^{-1} iint R(x, w) e^{4 pi i w (t - x)} g2(2x - t) dx dw`
/// (the same pairing weight as in [`moyal_check`]).
pub fn invert(
    result: &TfrResult,
    g1: &SampledSignal,
    g2: &SampledSignal,
) -> Result<SampledSignal, TfrError> {
    if result.kind != TfrKind::GrossmannRoyer {
        return Err(TfrError::KindMismatch(result.kind));
    }
    let pairing = g2.inner(g1)?;
    if pairing.norm() <= 1e-8 * g1.norm() * g2.norm() {
        return Err(TfrError::WindowNearOrthogonal(pairing.norm()));
    }
    let out_axis = result.quadrature.axis;
    let xs: Vec<f64> = result.grid.x.points().collect();
    let omegas: Vec<f64> = result.grid.omega.points().collect();
    let cell = result.grid.x.step * result.grid.omega.step * pairing_weight(1);
    let g2_axis = g2.axis;

    let values: Result<Vec<Complex64>, TfrError> = out_axis
        .points()
        .collect::<Vec<f64>>()
        .par_iter()
        .map(|&t| -> Result<Complex64, TfrError> {
            let mut acc = Complex64::new(0.0, 0.0);
            for (ix, &x) in xs.iter().enumerate() {
                let arg = 2.0 * x - t;
                let g2v = match g2_axis.index_of(arg)? {
                    Some(j) => g2.values[j],
                    None => continue,
                };
                if g2v.norm_sqr() == 0.0 {
                    continue;
                }
                let mut inner = Complex64::new(0.0, 0.0);
                let s = t - x;
                // Incremental phase e^{4 pi i w s} along the omega row.
                let dphase = Complex64::from_polar(1.0, 4.0 * PI * result.grid.omega.step * s);
                let mut phase = Complex64::from_polar(1.0, 4.0 * PI * omegas[0] * s);
                let row = &result.values[ix * omegas.len()..(ix + 1) * omegas.len()];
                for &r in row {
                    inner += r * phase;
                    phase *= dphase;
                }
                acc += inner * g2v;
            }
            Ok(acc * cell / pairing)
        })
        .collect();

    Ok(SampledSignal { axis: out_axis, values: values? })
}

/// Maximum absolute deviations of the structural identities relating the
/// transforms, evaluated in reference mode with analytic inputs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SymmetryReport {
    /// `R_g f = conj(R_f g)`.
    pub conjugation: f64,
    /// `R_{g^} f^ (x, w) = R_g f (-w, x)`.
    pub fourier_rotation: f64,
    /// Defining integral vs the translation-modulation-reflection composition.
    pub translation_modulation: f64,
}

/// Runs the three identity checks on a shared square grid of half-width
/// `half_width` with `n` points per side (`n` odd keeps zero on the grid).
pub fn symmetry_checks(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
    half_width: f64,
    n: usize,
) -> Result<SymmetryReport, TfrError> {
    let sf = Source::Analytic(f.clone());
    let sg = Source::Analytic(g.clone());
    let sf_hat = Source::Analytic(f.fourier());
    let sg_hat = Source::Analytic(g.fourier());
    let pts: Vec<f64> = (0..n)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
        .collect();

    let mut conjugation = 0.0f64;
    let mut fourier_rotation = 0.0f64;
    let mut translation_modulation = 0.0f64;
    let quad = kernel(TfrKind::GrossmannRoyer).quad_axis(&sf, &sg);
    for &x in &pts {
        for &w in &pts {
            let direct = reference_point(TfrKind::GrossmannRoyer, &sf, &sg, x, w)?;
            let swapped = reference_point(TfrKind::GrossmannRoyer, &sg, &sf, x, w)?;
            conjugation = conjugation.max((direct - swapped.conj()).norm());

            let hat = reference_point(TfrKind::GrossmannRoyer, &sf_hat, &sg_hat, x, w)?;
            let rotated = reference_point(TfrKind::GrossmannRoyer, &sf, &sg, -w, x)?;
            fourier_rotation = fourier_rotation.max((hat - rotated).norm());

            // e^{-4 pi i w x} <M_{2w} T_{2x} (f reflected), g>, all three
            // operators applied through the analytic family.
            let composed = f.reflect().translate(2.0 * x).modulate(2.0 * w);
            let mut ip = Complex64::new(0.0, 0.0);
            for t in quad.points() {
                ip += composed.value1(t) * g.value1(t).conj();
            }
            ip *= quad.step;
            let via_ops = Complex64::from_polar(1.0, -4.0 * PI * w * x) * ip;
            translation_modulation = translation_modulation.max((direct - via_ops).norm());
        }
    }
    Ok(SymmetryReport { conjugation, fourier_rotation, translation_modulation })
}

/// Closed form of the transform of an equal-width centered Gaussian pair
/// `f = A e^{-a x^2}`, `g = B e^{-a x^2}`: the separable two-dimensional
/// Gaussian `A B sqrt(pi/(2a)) e^{-2 a x^2} e^{-(2 pi^2 / a) w^2}`.
pub fn grossmann_royer_gaussian_closed_form(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
) -> Result<AnalyticFunction, TfrError> {
    if f.is_zero() || g.is_zero() {
        return Ok(AnalyticFunction::zero().tensor(&AnalyticFunction::zero()));
    }
    let (fa, ga) = (&f.factors()[0], &g.factors()[0]);
    let plain = |atom: &crate::testfn::GaussAtom| {
        f.dimension() == 1 && atom.degree() == 0 && atom.center() == 0.0 && atom.modulation() == 0.0
    };
    if f.dimension() != 1
        || g.dimension() != 1
        || !plain(fa)
        || !plain(ga)
        || (fa.width() - ga.width()).abs() > 1e-12
    {
        return Err(TfrError::UnsupportedFamily("equal-width centered Gaussian"));
    }
    let a = fa.width();
    let amp = fa.coeff(0) * ga.coeff(0).conj() * (PI / (2.0 * a)).sqrt();
    let x_part = AnalyticFunction::gaussian(2.0 * a).map_err(|_| TfrError::BadStep(a))?;
    let w_part = AnalyticFunction::gaussian(2.0 * PI * PI / a).map_err(|_| TfrError::BadStep(a))?;
    Ok(x_part.scale(amp).tensor(&w_part))
}

/// Phase-space membership certificate: builds the two-dimensional seminorm
/// table of the closed-form transform of an equal-width Gaussian pair and fits
/// the membership parameter in the doubled number of variables.
pub fn tfr_membership(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
    sigma: f64,
    max_order: u32,
) -> Result<crate::testfn::TauFit, TfrError> {
    let closed = grossmann_royer_gaussian_closed_form(f, g)?;
    let table = crate::testfn::build_table(&closed, max_order, crate::testfn::SeminormKind::Sup)
        .map_err(|_| TfrError::UnsupportedFamily("Gaussian"))?;
    crate::testfn::fit_tau(&table, sigma).map_err(|_| TfrError::UnsupportedFamily("Gaussian"))
}
