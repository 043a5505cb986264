//! Named verification suites: every structural property of the toolkit as a
//! machine-checkable record, grouped into suites selectable by id.
//!
//! Suites are registered behind a trait object table, mirroring the transform
//! kernels: the CLI looks them up by name and runs them against a seeded
//! configuration. Each record is normalized by [`crate::report`].

use crate::associated::{
    check_matrix_conditions, fit_sandwich, komatsu_dual, log_grid, sandwich_envelope,
    AssociatedFunction,
};
use crate::lambertw::{check_lambert_bounds, lambert_w, log_identity_deviation};
use crate::report::{CheckRecord, SuiteReport, VerificationReport};
use crate::testfn::{characterize, fit_tau, synthetic_table, AnalyticFunction};
use crate::tfr::{
    self, default_axis, fourier, inverse_fourier, invert, kernels::TfrKind, moyal_check,
    reference_point, symmetry_checks, transform_default, Mode, SampledSignal, Source,
};
use crate::weights::{
    check_conditions, log_weight, sup_geometric_over_weight, WeightParams,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0x5eed_ec0d }
    }
}

pub trait Suite: Sync {
    fn id(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig) -> SuiteReport;
}

struct WeightsSuite;
struct LambertSuite;
struct AssociatedSuite;
struct MembershipSuite;
struct TfrSuite;

pub fn registry() -> [&'static dyn Suite; 5] {
    [
        &WeightsSuite,
        &LambertSuite,
        &AssociatedSuite,
        &MembershipSuite,
        &TfrSuite,
    ]
}

pub fn suite_by_id(id: &str) -> Option<&'static dyn Suite> {
    registry().into_iter().find(|s| s.id() == id)
}

pub fn suite_ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id()).collect()
}

pub fn run_all(cfg: &VerifyConfig) -> VerificationReport {
    let suites = registry().iter().map(|s| s.run(cfg)).collect();
    VerificationReport::new(cfg.seed, suites)
}

fn params(tau: f64, sigma: f64) -> WeightParams {
    WeightParams::new(tau, sigma).expect("grid parameters are valid")
}

/// Numeric supremum of `h^(rho^sigma) / rho^(tau rho^sigma)` in log domain:
/// dense grid over `ln rho` refined by golden-section search.
fn numeric_geometric_sup(h: f64, p: WeightParams) -> f64 {
    let (tau, sigma) = (p.tau(), p.sigma());
    let obj = |u: f64| {
        let rho = u.exp();
        rho.powf(sigma) * (h.ln() - tau * rho.ln())
    };
    let (lo0, hi0) = ((1e-6f64).ln(), (1e6f64).ln());
    let n = 20_000;
    let mut best = f64::NEG_INFINITY;
    let mut best_u = lo0;
    for i in 0..=n {
        let u = lo0 + (hi0 - lo0) * i as f64 / n as f64;
        let v = obj(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    let du = (hi0 - lo0) / n as f64;
    let (mut lo, mut hi) = (best_u - du, best_u + du);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut fc, mut fd) = (obj(c), obj(d));
    for _ in 0..200 {
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

/// Criterion: the closed-form supremum matches the grid + golden-section
/// oracle to 1e-9 relative, across the parameter grid.
pub fn criterion_closed_form_supremum() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for tau in [0.5, 1.0, 2.0] {
        for sigma in [1.5, 2.0, 3.0] {
            for h in [0.5, 1.0, 2.0, 10.0] {
                let p = params(tau, sigma);
                let closed = sup_geometric_over_weight(h, p).unwrap().log_value;
                let oracle = numeric_geometric_sup(h, p);
                let rel = (closed - oracle).abs() / closed.abs().max(1e-300);
                records.push(CheckRecord::le(
                    "closed form vs numeric supremum",
                    "closed-form-supremum",
                    format!("tau={tau} sigma={sigma} h={h}"),
                    rel,
                    0.0,
                    1e-9,
                ));
            }
        }
    }
    records
}

/// Criterion: all structural sequence conditions hold to index 200 across the
/// parameter grid, with finite constants and certified tails.
pub fn criterion_sequence_conditions() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for tau in [0.5, 1.0, 2.0] {
        for sigma in [1.5, 2.0, 3.0] {
            let p = params(tau, sigma);
            let inputs = format!("tau={tau} sigma={sigma} pmax=200");
            let r = check_conditions(p, 200).unwrap();
            records.push(CheckRecord::flag(
                "log-convexity at every index",
                "sequence-log-convexity",
                inputs.clone(),
                r.log_convexity_ok,
            ));
            records.push(CheckRecord::flag(
                "superadditivity at every index pair",
                "sequence-superadditivity",
                inputs.clone(),
                r.superadditivity_ok,
            ));
            records.push(CheckRecord::flag(
                "per-term step-ratio bound",
                "step-ratio-bound",
                inputs.clone(),
                r.step_ratio_bound_ok,
            ));
            records.push(CheckRecord::flag(
                "power split inequality",
                "power-split-inequality",
                inputs.clone(),
                r.power_split_ok,
            ));
            records.push(CheckRecord::flag(
                "split constant finite with certified tail",
                "split-absorption-constant",
                inputs.clone(),
                r.split_constant.is_finite() && r.split_tail_certified,
            ));
            records.push(CheckRecord::flag(
                "step constant finite with certified tail",
                "step-constant",
                inputs,
                r.step_constant.is_finite() && r.step_tail_certified,
            ));
        }
    }
    records
}

/// Criterion: Lambert W residual certificate, anchor values, logarithmic
/// bounds, and the `W(x ln x) = ln x` identity.
pub fn criterion_lambert() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let mut worst_residual = 0.0f64;
    let mut xs = vec![0.0];
    let mut x = 1e-6;
    while x <= 1e12 {
        xs.push(x);
        x *= 2.9;
    }
    for &x in &xs {
        let eval = lambert_w(x).unwrap();
        worst_residual = worst_residual.max(eval.residual / x.max(1.0));
    }
    records.push(CheckRecord::le(
        "scaled residual on log grid to 1e12",
        "lambert-defining-identity",
        format!("{} points", xs.len()),
        worst_residual,
        0.0,
        1e-12,
    ));
    records.push(CheckRecord::le(
        "value at e",
        "lambert-defining-identity",
        "x=e",
        (lambert_w(std::f64::consts::E).unwrap().w - 1.0).abs(),
        0.0,
        1e-12,
    ));
    let bound_xs: Vec<f64> = vec![std::f64::consts::E, 10.0, 1e3, 1e6, 1e9, 1e12];
    let report = check_lambert_bounds(&bound_xs).unwrap();
    let strict_ok = report.all_within
        && report.points.iter().skip(1).all(|p| p.lower < p.w && p.w < p.upper)
        && report.points[0].at_equality;
    records.push(CheckRecord::flag(
        "logarithmic bounds strict above e, equality at e",
        "lambert-log-bounds",
        "x in {e,10,1e3,1e6,1e9,1e12}",
        strict_ok,
    ));
    for x in [2.0, 10.0, 1e3] {
        records.push(CheckRecord::le(
            "log identity relative deviation",
            "lambert-log-identity",
            format!("x={x}"),
            log_identity_deviation(x).unwrap(),
            0.0,
            1e-10,
        ));
    }
    records
}

/// Criterion: the duality supremum recovers the log weights to 1e-6 for
/// indices up to 40.
pub fn criterion_komatsu_duality() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for tau in [0.5, 1.0, 2.0] {
        for sigma in [1.5, 2.0] {
            let p = params(tau, sigma);
            let mut worst = 0.0f64;
            for idx in 1..=40usize {
                worst = worst.max((komatsu_dual(idx, p) - log_weight(idx, p)).abs());
            }
            records.push(CheckRecord::le(
                "duality supremum vs log weight, p <= 40",
                "associated-duality",
                format!("tau={tau} sigma={sigma}"),
                worst,
                0.0,
                1e-6,
            ));
        }
    }
    records
}

/// Criterion: the two-sided envelope fit re-validates on a 10x denser grid
/// over [2, 1e8] with zero violations.
pub fn criterion_sandwich() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for tau in [0.5, 1.0, 2.0] {
        for sigma in [1.5, 2.0] {
            let p = params(tau, sigma);
            let grid = log_grid(2.0, 1e8, 200);
            let inputs = format!("tau={tau} sigma={sigma} t in [2,1e8]");
            match fit_sandwich(p, &grid) {
                Ok(fit) => {
                    // Independent re-validation on the denser grid.
                    let dense = log_grid(2.0, 1e8, 2000);
                    let assoc = AssociatedFunction::new(p);
                    let mut violations = 0usize;
                    for &t in &dense {
                        let tv = assoc.value_log_arg(t.ln()).value;
                        let env = sandwich_envelope(t, p);
                        if env / fit.a - fit.b > tv + 1e-12 || tv > fit.a * env + fit.b + 1e-12 {
                            violations += 1;
                        }
                    }
                    records.push(CheckRecord::le(
                        format!("envelope violations with A={:.3} B={:.3}", fit.a, fit.b),
                        "associated-sandwich",
                        inputs,
                        violations as f64,
                        0.0,
                        0.0,
                    ));
                }
                Err(e) => {
                    records.push(CheckRecord::flag(
                        format!("fit failed: {e}"),
                        "associated-sandwich",
                        inputs,
                        false,
                    ));
                }
            }
        }
    }
    records
}

/// Criterion: stationary-point evaluation equals brute-force enumeration
/// exactly on 200 log-spaced arguments.
pub fn criterion_associated_oracle() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for (tau, sigma) in [(1.0, 2.0), (0.5, 1.5), (2.0, 2.0)] {
        let p = params(tau, sigma);
        let assoc = AssociatedFunction::new(p);
        let mut mismatches = 0usize;
        for &x in &log_grid(1.01, 1e8, 200) {
            let got = assoc.value_log_arg(x.ln());
            let mut want = 0.0f64;
            for idx in 0..=10_000usize {
                want = want.max(idx as f64 * x.ln() - log_weight(idx, p));
            }
            if got.value != want {
                mismatches += 1;
            }
        }
        records.push(CheckRecord::le(
            "mismatches vs enumeration to 1e4",
            "associated-function-supremum",
            format!("tau={tau} sigma={sigma} 200 log-spaced x"),
            mismatches as f64,
            0.0,
            0.0,
        ));
    }
    records
}

/// Criterion: the weight-family ratio integral stabilizes between the two
/// cutoffs for both dimensions.
pub fn criterion_integrability() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for sigma in [1.5, 2.0] {
        for n in [1usize, 2] {
            let rep = check_matrix_conditions(params(1.0, sigma), n).unwrap();
            records.push(CheckRecord::le(
                "relative change between cutoffs 1e4 and 1e6",
                "weight-ratio-integrability",
                format!("tau=1 sigma={sigma} n={n}"),
                rep.integrability.relative_change,
                0.0,
                1e-6,
            ));
        }
    }
    records
}

/// Seeded signal: a random combination of the first five Hermite functions,
/// sampled on the default lattice.
fn random_hermite_combo(rng: &mut ChaCha8Rng) -> SampledSignal {
    let axis = default_axis();
    let mut values = vec![Complex64::new(0.0, 0.0); axis.count];
    for k in 0..5u32 {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let h = AnalyticFunction::hermite(k);
        for (j, t) in axis.points().enumerate() {
            values[j] += c * h.value1(t);
        }
    }
    SampledSignal { axis, values }
}

/// Criterion: orthogonality relation on seeded quadruples, the structural
/// relations between the four transforms, the sup bound, and the symmetry
/// identities.
pub fn criterion_moyal_and_relations(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst_rel = 0.0f64;
    for _ in 0..10 {
        let (f1, g1, f2, g2) = (
            random_hermite_combo(&mut rng),
            random_hermite_combo(&mut rng),
            random_hermite_combo(&mut rng),
            random_hermite_combo(&mut rng),
        );
        let check = moyal_check(&f1, &g1, &f2, &g2).unwrap();
        worst_rel = worst_rel.max(check.rel_err);
    }
    records.push(CheckRecord::le(
        "orthogonality relation, 10 seeded quadruples",
        "moyal-identity",
        format!("seed={} N=256 half-width=8", cfg.seed),
        worst_rel,
        0.0,
        1e-8,
    ));

    // Structural relations on a 33x33 analytic grid.
    let f = AnalyticFunction::hermite(1);
    let g = AnalyticFunction::modulated_translated_gaussian(std::f64::consts::PI, 0.2, 0.3)
        .unwrap();
    let sf = Source::Analytic(f.clone());
    let sg = Source::Analytic(g.clone());
    let sg_ref = Source::Analytic(g.reflect());
    let pts: Vec<f64> = (0..33).map(|i| -2.0 + 4.0 * i as f64 / 32.0).collect();
    let (mut dev_w, mut dev_v, mut dev_a) = (0.0f64, 0.0f64, 0.0f64);
    for &x in &pts {
        for &w in &pts {
            let gr = reference_point(TfrKind::GrossmannRoyer, &sf, &sg, x, w).unwrap();
            let wd = reference_point(TfrKind::Wigner, &sf, &sg, x, w).unwrap();
            dev_w = dev_w.max((wd - gr * 2.0).norm());
            let half =
                reference_point(TfrKind::GrossmannRoyer, &sf, &sg_ref, 0.5 * x, 0.5 * w).unwrap();
            let stft = reference_point(TfrKind::Stft, &sf, &sg, x, w).unwrap();
            let phase = Complex64::from_polar(1.0, -std::f64::consts::PI * x * w);
            dev_v = dev_v.max((stft - phase * half).norm());
            let amb = reference_point(TfrKind::Ambiguity, &sf, &sg, x, w).unwrap();
            dev_a = dev_a.max((amb - half).norm());
        }
    }
    let grid_inputs = "33x33 analytic grid, half-width 2";
    records.push(CheckRecord::le(
        "doubled transform matches phase-space quadratic form",
        "wigner-relation",
        grid_inputs,
        dev_w,
        0.0,
        1e-8,
    ));
    records.push(CheckRecord::le(
        "windowed transform matches half-lattice composition",
        "stft-relation",
        grid_inputs,
        dev_v,
        0.0,
        1e-8,
    ));
    records.push(CheckRecord::le(
        "correlation form matches half-lattice composition",
        "ambiguity-relation",
        grid_inputs,
        dev_a,
        0.0,
        1e-8,
    ));

    // Sup bound on every computed default grid.
    let mut sup_ok = true;
    let hermite2 = SampledSignal::sample(default_axis(), &AnalyticFunction::hermite(2));
    let gauss = SampledSignal::sample(default_axis(), &AnalyticFunction::unit_gaussian());
    for kind in [TfrKind::GrossmannRoyer, TfrKind::Stft, TfrKind::Wigner, TfrKind::Ambiguity] {
        let r = transform_default(
            kind,
            &Source::Sampled(hermite2.clone()),
            &Source::Sampled(gauss.clone()),
            Mode::Fast,
        )
        .unwrap();
        let bound = hermite2.norm() * gauss.norm();
        let factor = if kind == TfrKind::Wigner { 2.0 } else { 1.0 };
        if r.max_abs() > factor * bound * (1.0 + 1e-10) {
            sup_ok = false;
        }
    }
    records.push(CheckRecord::flag(
        "sup bounded by norm product on every grid",
        "transform-sup-bound",
        "all kinds, default grids",
        sup_ok,
    ));

    let sym = symmetry_checks(&f, &g, 1.5, 9).unwrap();
    records.push(CheckRecord::le(
        "conjugation symmetry",
        "transform-conjugation",
        "hermite-1 vs shifted modulated gaussian",
        sym.conjugation,
        0.0,
        1e-8,
    ));
    records.push(CheckRecord::le(
        "transform-pair rotation by a quarter turn",
        "transform-fourier-rotation",
        "hermite-1 vs shifted modulated gaussian",
        sym.fourier_rotation,
        0.0,
        1e-8,
    ));
    records.push(CheckRecord::le(
        "translation-modulation composition",
        "translation-modulation-form",
        "hermite-1 vs shifted modulated gaussian",
        sym.translation_modulation,
        0.0,
        1e-8,
    ));
    records
}

/// Criterion: reconstruction from the transform reproduces the signal.
pub fn criterion_inversion() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let g1 = SampledSignal::sample(default_axis(), &AnalyticFunction::unit_gaussian());
    let g2 = SampledSignal::sample(
        default_axis(),
        &AnalyticFunction::gaussian(1.5 * std::f64::consts::PI).unwrap(),
    );
    for (name, f) in [
        ("unit gaussian", SampledSignal::sample(default_axis(), &AnalyticFunction::unit_gaussian())),
        ("hermite-2", SampledSignal::sample(default_axis(), &AnalyticFunction::hermite(2))),
    ] {
        let r = transform_default(
            TfrKind::GrossmannRoyer,
            &Source::Sampled(f.clone()),
            &Source::Sampled(g1.clone()),
            Mode::Fast,
        )
        .unwrap();
        let rec = invert(&r, &g1, &g2).unwrap();
        let dev = rec
            .values
            .iter()
            .zip(&f.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        records.push(CheckRecord::le(
            format!("max reconstruction error, {name}"),
            "inversion-formula",
            "gaussian windows, N=256",
            dev,
            0.0,
            1e-6,
        ));
    }
    records
}

/// Criterion: transform pipeline fixes the sampled unit Gaussian and inverts
/// exactly.
pub fn criterion_fourier_fixed_point() -> Vec<CheckRecord> {
    let f = SampledSignal::sample(default_axis(), &AnalyticFunction::unit_gaussian());
    let hat = fourier(&f);
    let fix_dev = f
        .values
        .iter()
        .zip(&hat.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    let back = inverse_fourier(&fourier(&f));
    let rt_dev = f
        .values
        .iter()
        .zip(&back.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    vec![
        CheckRecord::le(
            "unit gaussian fixed point",
            "fourier-self-reciprocal-gaussian",
            "N=256 half-width=8",
            fix_dev,
            0.0,
            1e-10,
        ),
        CheckRecord::le(
            "round trip",
            "fourier-round-trip",
            "N=256 half-width=8",
            rt_dev,
            0.0,
            1e-12,
        ),
    ]
}

/// Criterion: membership certificates are finite and structurally consistent.
pub fn criterion_membership() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let sigma = 2.0;
    let gauss = characterize(&AnalyticFunction::unit_gaussian(), sigma, 12).unwrap();
    let herm = characterize(&AnalyticFunction::hermite(3), sigma, 12).unwrap();
    records.push(CheckRecord::flag(
        "gaussian certificate finite",
        "membership-certificate",
        "unit gaussian, sigma=2, K=12",
        gauss.tau_joint.tau.is_finite() && gauss.tau_joint.tau > 0.0,
    ));
    records.push(CheckRecord::flag(
        "hermite certificate finite",
        "membership-certificate",
        "hermite-3, sigma=2, K=12",
        herm.tau_joint.tau.is_finite(),
    ));

    // Synthetic fit inversion.
    let p = params(0.8, sigma);
    let table = synthetic_table(p, 8, 1, 0.3);
    let fit = fit_tau(&table, sigma).unwrap();
    records.push(CheckRecord::le(
        "synthetic-table fit inversion",
        "fit-model-inversion",
        "tau=0.8 sigma=2 K=8",
        (fit.tau - 0.8).abs(),
        0.0,
        1e-12,
    ));

    // Mutual certification between the two norms at the split inflation.
    let inflate = sigma.exp2();
    for (name, rep) in [("gaussian", &gauss), ("hermite-3", &herm)] {
        let ok = rep.tau_joint.tau <= inflate * rep.tau_l2_joint.tau.max(1e-9) + 1e-9
            && rep.tau_l2_joint.tau <= inflate * rep.tau_joint.tau.max(1e-9) + 1e-9;
        records.push(CheckRecord::flag(
            format!("sup and L2 fits mutually certify, {name}"),
            "sup-l2-equivalence",
            format!("inflation 2^sigma = {inflate}"),
            ok,
        ));
    }

    records.push(CheckRecord::le(
        "transform-side fit equals decay fit for the fixed point",
        "fourier-invariance",
        "unit gaussian",
        (gauss.tau_fourier.tau - gauss.tau_decay.tau).abs(),
        0.0,
        0.0,
    ));

    let unit = AnalyticFunction::unit_gaussian();
    let phase_fit = tfr::tfr_membership(&unit, &unit, sigma, 6).unwrap();
    records.push(CheckRecord::flag(
        "phase-space table certificate finite",
        "phase-space-membership",
        "unit gaussian pair, sigma=2, K=6",
        phase_fit.tau.is_finite(),
    ));
    records
}

impl Suite for WeightsSuite {
    fn id(&self) -> &'static str {
        "weights"
    }

    fn run(&self, _cfg: &VerifyConfig) -> SuiteReport {
        let mut records = criterion_closed_form_supremum();
        records.extend(criterion_sequence_conditions());
        SuiteReport::new(self.id(), records)
    }
}

impl Suite for LambertSuite {
    fn id(&self) -> &'static str {
        "lambert"
    }

    fn run(&self, _cfg: &VerifyConfig) -> SuiteReport {
        SuiteReport::new(self.id(), criterion_lambert())
    }
}

impl Suite for AssociatedSuite {
    fn id(&self) -> &'static str {
        "associated"
    }

    fn run(&self, _cfg: &VerifyConfig) -> SuiteReport {
        let mut records = criterion_komatsu_duality();
        records.extend(criterion_sandwich());
        records.extend(criterion_associated_oracle());
        records.extend(criterion_integrability());
        SuiteReport::new(self.id(), records)
    }
}

impl Suite for MembershipSuite {
    fn id(&self) -> &'static str {
        "membership"
    }

    fn run(&self, _cfg: &VerifyConfig) -> SuiteReport {
        SuiteReport::new(self.id(), criterion_membership())
    }
}

impl Suite for TfrSuite {
    fn id(&self) -> &'static str {
        "tfr"
    }

    fn run(&self, cfg: &VerifyConfig) -> SuiteReport {
        let mut records = criterion_moyal_and_relations(cfg);
        records.extend(criterion_inversion());
        records.extend(criterion_fourier_fixed_point());
        SuiteReport::new(self.id(), records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_stable() {
        assert_eq!(
            suite_ids(),
            vec!["weights", "lambert", "associated", "membership", "tfr"]
        );
        assert!(suite_by_id("lambert").is_some());
        assert!(suite_by_id("nonsense").is_none());
    }

    #[test]
    fn lambert_suite_passes_and_is_anchored() {
        let rep = suite_by_id("lambert").unwrap().run(&VerifyConfig::default());
        assert!(rep.pass, "{rep:?}");
        assert!(rep.records.iter().all(|r| !r.anchor.is_empty()));
    }
}
