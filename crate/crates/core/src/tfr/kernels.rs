//! The four phase-space transforms behind a common kernel trait.
//!
//! Every transform here has the shape
//!
//! ```text
//! T(x, w) = phase(x, w) * integral e^{2 pi i c w t} P_x(t) dt
//! ```
//!
//! with a kernel-specific product term `P_x(t)`, frequency coefficient `c`,
//! and outer phase. The shared driver in the parent module evaluates the
//! integral either by direct quadrature (reference mode) or by one FFT per
//! `x`-row read at `-c w` (fast mode). Kernels are registered by name and
//! selected at runtime.

use super::{Axis, PhaseSpaceGrid, Source, TfrError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TfrKind {
    GrossmannRoyer,
    Stft,
    Wigner,
    Ambiguity,
}

impl fmt::Display for TfrKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(kernel(*self).name())
    }
}

impl FromStr for TfrKind {
    type Err = TfrError;

    fn from_str(s: &str) -> Result<Self, TfrError> {
        registry()
            .iter()
            .find(|k| k.name() == s)
            .map(|k| k.kind())
            .ok_or_else(|| TfrError::UnknownKind(s.to_string()))
    }
}

/// One transform variant: the product term, frequency coefficient, and phase
/// of the common integral shape, plus its lattice requirements.
pub trait TfrKernel: Sync {
    fn kind(&self) -> TfrKind;
    fn name(&self) -> &'static str;

    /// Product term `P_x(t)`.
    fn product(&self, f: &Source, g: &Source, x: f64, t: f64) -> Result<Complex64, TfrError>;

    /// Coefficient `c` in `e^{2 pi i c w t}`.
    fn freq_coeff(&self) -> f64;

    /// Outer phase factor.
    fn phase(&self, x: f64, omega: f64) -> Complex64;

    /// Integration lattice. Kernels with half-step substitutions double the
    /// step on sampled input so every argument stays on the sample lattice.
    fn quad_axis(&self, f: &Source, g: &Source) -> Axis;

    /// Output lattice on which the fast path is exactly representable.
    fn default_grid(&self, f: &Source, g: &Source) -> PhaseSpaceGrid {
        let base = Source::base_axis(f, g);
        let quad = self.quad_axis(f, g);
        let dxi = 1.0 / (quad.step * quad.count as f64);
        let omega = Axis {
            center: 0.0,
            step: dxi / self.freq_coeff().abs(),
            count: quad.count,
        };
        PhaseSpaceGrid { x: base, omega }
    }
}

struct GrossmannRoyer;

impl TfrKernel for GrossmannRoyer {
    fn kind(&self) -> TfrKind {
        TfrKind::GrossmannRoyer
    }

    fn name(&self) -> &'static str {
        "grossmann-royer"
    }

    fn product(&self, f: &Source, g: &Source, x: f64, t: f64) -> Result<Complex64, TfrError> {
        Ok(f.eval(2.0 * x - t)? * g.eval(t)?.conj())
    }

    fn freq_coeff(&self) -> f64 {
        2.0
    }

    fn phase(&self, x: f64, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, -4.0 * PI * omega * x)
    }

    fn quad_axis(&self, f: &Source, g: &Source) -> Axis {
        Source::base_axis(f, g)
    }
}

struct Stft;

impl TfrKernel for Stft {
    fn kind(&self) -> TfrKind {
        TfrKind::Stft
    }

    fn name(&self) -> &'static str {
        "stft"
    }

    fn product(&self, f: &Source, g: &Source, x: f64, t: f64) -> Result<Complex64, TfrError> {
        Ok(f.eval(t)? * g.eval(t - x)?.conj())
    }

    fn freq_coeff(&self) -> f64 {
        -1.0
    }

    fn phase(&self, _x: f64, _omega: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn quad_axis(&self, f: &Source, g: &Source) -> Axis {
        Source::base_axis(f, g)
    }
}

/// Half-step integration lattice shared by the Wigner and ambiguity kernels:
/// doubled step on sampled input (so `t/2` lands on the sample lattice),
/// doubled range in analytic mode (the product is twice as wide in `t`).
fn half_step_quad_axis(f: &Source, g: &Source) -> Axis {
    let base = Source::base_axis(f, g);
    if f.is_sampled() || g.is_sampled() {
        Axis { center: 0.0, step: 2.0 * base.step, count: base.count }
    } else {
        Axis { center: 0.0, step: base.step, count: 2 * base.count }
    }
}

struct Wigner;

impl TfrKernel for Wigner {
    fn kind(&self) -> TfrKind {
        TfrKind::Wigner
    }

    fn name(&self) -> &'static str {
        "wigner"
    }

    fn product(&self, f: &Source, g: &Source, x: f64, t: f64) -> Result<Complex64, TfrError> {
        Ok(f.eval(x + 0.5 * t)? * g.eval(x - 0.5 * t)?.conj())
    }

    fn freq_coeff(&self) -> f64 {
        -1.0
    }

    fn phase(&self, _x: f64, _omega: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn quad_axis(&self, f: &Source, g: &Source) -> Axis {
        half_step_quad_axis(f, g)
    }
}

struct Ambiguity;

impl TfrKernel for Ambiguity {
    fn kind(&self) -> TfrKind {
        TfrKind::Ambiguity
    }

    fn name(&self) -> &'static str {
        "ambiguity"
    }

    fn product(&self, f: &Source, g: &Source, x: f64, t: f64) -> Result<Complex64, TfrError> {
        Ok(f.eval(t + 0.5 * x)? * g.eval(t - 0.5 * x)?.conj())
    }

    fn freq_coeff(&self) -> f64 {
        -1.0
    }

    fn phase(&self, _x: f64, _omega: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn quad_axis(&self, f: &Source, g: &Source) -> Axis {
        half_step_quad_axis(f, g)
    }

    /// `x/2` must also stay on the sample lattice, so the default `x`-axis is
    /// the even sublattice on sampled input.
    fn default_grid(&self, f: &Source, g: &Source) -> PhaseSpaceGrid {
        let base = Source::base_axis(f, g);
        let quad = self.quad_axis(f, g);
        let dxi = 1.0 / (quad.step * quad.count as f64);
        let x = if f.is_sampled() || g.is_sampled() {
            Axis { center: base.center, step: 2.0 * base.step, count: base.count / 2 }
        } else {
            base
        };
        let omega = Axis { center: 0.0, step: dxi, count: quad.count };
        PhaseSpaceGrid { x, omega }
    }
}

static GROSSMANN_ROYER: GrossmannRoyer = GrossmannRoyer;
static STFT: Stft = Stft;
static WIGNER: Wigner = Wigner;
static AMBIGUITY: Ambiguity = Ambiguity;

/// All registered kernels, in a fixed order.
pub fn registry() -> [&'static dyn TfrKernel; 4] {
    [&GROSSMANN_ROYER, &STFT, &WIGNER, &AMBIGUITY]
}

pub fn kernel(kind: TfrKind) -> &'static dyn TfrKernel {
    match kind {
        TfrKind::GrossmannRoyer => &GROSSMANN_ROYER,
        TfrKind::Stft => &STFT,
        TfrKind::Wigner => &WIGNER,
        TfrKind::Ambiguity => &AMBIGUITY,
    }
}

pub fn kernel_by_name(name: &str) -> Result<&'static dyn TfrKernel, TfrError> {
    Ok(kernel(TfrKind::from_str(name)?))
}

/// Names accepted by `kernel_by_name`, registry order.
pub fn kernel_names() -> Vec<&'static str> {
    registry().iter().map(|k| k.name()).collect()
}
