//! The end-to-end construction: moduli → curvature profile → generating curve
//! → surface Ψ(s,t) = α(s) + α(t), with a verification report.

use serde::Serialize;

use crate::curvature_ode::{
    curvature_acceleration, equilibria, potential, solve_curvature, CurvatureProfile, DEFAULT_STEP,
    DOUBLE_ROOT_TOL,
};
use crate::curve::{
    construct_generating_curve, helix_with_curvature, mirror, slope_ratio, SpaceCurve, Vec3,
};
use crate::error::{Error, Result};
use crate::geometry::{
    jet_from_curve, minimality_residual, stencil_unit_speed_error, surface_from_curves,
    CurvatureJet, TranslationSurface,
};
use crate::integrate::uniform_steps;
use crate::io::{ReportInputs, VerificationReport};
use crate::moduli::{is_double_root, Moduli};

pub const DEFAULT_SPAN: (f64, f64) = (0.0, 20.0);
pub const DEFAULT_GRID: usize = 101;

/// Base tolerances of the report checks, before `TRANSURF_TOL_SCALE`.
pub mod tolerance {
    pub const UNIT_SPEED: f64 = 1e-9;
    pub const KAPPA_SQ_TAU: f64 = 1e-8;
    pub const SIGMA_RELATION: f64 = 1e-5;
    pub const C3_RELATION: f64 = 1e-5;
    pub const FIRST_INTEGRAL: f64 = 1e-7;
    pub const EIGEN_CONSTANCY: f64 = 1e-6;
    pub const MEAN_CURVATURE: f64 = 1e-5;
    pub const GAUSS_SIGN: f64 = 1e-8;
    pub const BAND_CONFINEMENT: f64 = 1e-6;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstructOptions {
    pub moduli: Moduli,
    pub y0: f64,
    pub span: (f64, f64),
    pub step: f64,
    /// Nodes per side of the surface grid.
    pub grid: usize,
}

impl ConstructOptions {
    pub fn new(moduli: Moduli, y0: f64) -> Self {
        ConstructOptions {
            moduli,
            y0,
            span: DEFAULT_SPAN,
            step: DEFAULT_STEP,
            grid: DEFAULT_GRID,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Distinct λ₁ < λ₂: oscillating curvature, closed-form curve.
    Oscillating,
    /// λ₁ = λ₂: constant curvature and torsion, the helicoid.
    Helix,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub options: ConstructOptions,
    pub route: Route,
    pub profile: CurvatureProfile,
    /// The generating curve at full ODE resolution.
    pub curve: SpaceCurve,
    /// w'/α₃' along the curve (oscillating route only).
    pub slope_ratio: Vec<f64>,
    pub surface: TranslationSurface,
    pub report: VerificationReport,
}

/// Runs the construction and fills the report; tolerances are multiplied by
/// `tol_scale`. Double-root moduli are routed to the helix, where `y0` is
/// ignored.
pub fn construct(opts: &ConstructOptions, tol_scale: f64) -> Result<Construction> {
    let m = opts.moduli;
    m.validate()?;
    if opts.grid < 2 {
        return Err(Error::GridTooCoarse(format!(
            "{} surface nodes per side",
            opts.grid
        )));
    }
    let inputs = ReportInputs {
        moduli: Some(m),
        y0: Some(opts.y0),
        span: Some([opts.span.0, opts.span.1]),
        step: Some(opts.step),
        grid: Some([opts.grid, opts.grid]),
        source: None,
    };
    let mut report = VerificationReport::new(inputs, tol_scale);
    let (route, profile, curve, ratio) = if is_double_root(&m, DOUBLE_ROOT_TOL) {
        let (profile, curve) = helix_route(opts)?;
        report.notice(format!(
            "double root λ1 = λ2 = {}: constant curvature {} and torsion {}; y0 ignored, surface is a helicoid",
            m.roots[0], profile.kappa[0], profile.tau[0]
        ));
        (Route::Helix, profile, curve, Vec::new())
    } else {
        let profile = solve_curvature(&m, opts.y0, opts.span, opts.step)?;
        let g = construct_generating_curve(&profile)?;
        let amp = g.amplitudes;
        report.record("amplitude_a", amp.a);
        report.record("amplitude_b", amp.b);
        report.record("phase_origin", amp.w0);
        let target = slope_ratio(&m);
        report.record("slope_ratio", target);
        let dev = g
            .slope_ratio
            .iter()
            .fold(0.0f64, |a, r| a.max((r - target).abs()));
        report.record("slope_ratio_deviation", dev);
        (Route::Oscillating, profile, g.curve, g.slope_ratio)
    };
    let (low, high) = equilibria(&m);
    report.record("equilibrium_low", low);
    report.record("equilibrium_high", high);

    let grid_curve = curve.subsample(opts.grid);
    let surface = surface_from_curves(&grid_curve, &grid_curve)?;
    certify(&mut report, &m, &profile, &curve, &surface)?;

    Ok(Construction {
        options: *opts,
        route,
        profile,
        curve,
        slope_ratio: ratio,
        surface,
        report,
    })
}

/// κ = √(−λ₁λ₃), τ = −λ₁ on the requested span, as a constant profile and a
/// circular helix (reflected for mirrored moduli).
fn helix_route(opts: &ConstructOptions) -> Result<(CurvatureProfile, SpaceCurve)> {
    let m = opts.moduli;
    if !(opts.step > 0.0) || !(opts.span.1 > opts.span.0) {
        return Err(Error::InvalidArgument(format!(
            "bad span {:?} or step {}",
            opts.span, opts.step
        )));
    }
    let [l1, _, l3] = m.roots;
    let kappa = (-l1 * l3).sqrt();
    let tau = -l1;
    let (steps, h) = uniform_steps(opts.span.0, opts.span.1, opts.step);
    let s: Vec<f64> = (0..=steps).map(|i| opts.span.0 + i as f64 * h).collect();
    let n = s.len();
    let residual = potential(&m, kappa);
    let profile = CurvatureProfile {
        s: s.clone(),
        kappa: vec![kappa; n],
        kappa_prime: vec![0.0; n],
        tau: vec![tau; n],
        first_integral_residual: vec![residual; n],
        moduli: m,
        step: h,
    };
    let mut curve = helix_with_curvature(kappa, tau, &s)?;
    if m.mirrored {
        curve = curve.transformed(&mirror(), &Vec3::zeros());
    }
    Ok((profile, curve))
}

/// Largest deviations of Σ/τ − τ, −(Σ + R² + κ²) and the operator spectrum
/// from (c₂, c₃, roots), over interior samples of `jet`.
pub fn relation_residuals(jet: &CurvatureJet, m: &Moduli) -> Result<[f64; 3]> {
    let (_, c2, c3) = m.given_coefficients();
    let roots = m.given_roots();
    let mut worst = [0.0f64; 3];
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for i in 0..jet.len() {
        if jet.one_sided[i] {
            continue;
        }
        let [_, e2, e3] = jet.invariants(i)?;
        worst[0] = worst[0].max((e2 - c2).abs());
        worst[1] = worst[1].max((e3 - c3).abs());
        let ev = jet.operator(i)?.eigenvalues;
        for k in 0..3 {
            worst[2] = worst[2].max((ev[k] - roots[k]).abs());
            lo[k] = lo[k].min(ev[k]);
            hi[k] = hi[k].max(ev[k]);
        }
    }
    let range = (0..3).fold(0.0f64, |a, k| a.max(hi[k] - lo[k]));
    worst[2] = worst[2].max(range);
    Ok(worst)
}

fn certify(
    report: &mut VerificationReport,
    m: &Moduli,
    profile: &CurvatureProfile,
    curve: &SpaceCurve,
    surface: &TranslationSurface,
) -> Result<()> {
    let (c1, _, _) = m.given_coefficients();

    let speed = stencil_unit_speed_error(curve)?.max(curve.unit_speed_error());
    report.check("unit_speed", speed, tolerance::UNIT_SPEED);

    let ks = (0..curve.len()).fold(0.0f64, |a, i| {
        a.max((curve.kappa[i] * curve.kappa[i] * curve.tau[i] - c1).abs() / c1.abs())
    });
    report.check_with_note(
        "kappa_sq_tau",
        ks,
        tolerance::KAPPA_SQ_TAU,
        "relative to |c1|",
    );

    // Σ and R from the curve's κ and τ, the profile's κ' and κ'' from the
    // second-order equation.
    let jet = pipeline_jet(m, profile, curve);
    let [sigma, c3, eig] = relation_residuals(&jet, m)?;
    report.check("sigma_relation", sigma, tolerance::SIGMA_RELATION);
    report.check("c3_relation", c3, tolerance::C3_RELATION);
    report.check_with_note(
        "eigen_constancy",
        eig,
        tolerance::EIGEN_CONSTANCY,
        "max of the spectrum's range along s and its distance from the roots",
    );
    // The same relations with every derivative taken by stencils on the
    // stored κ and τ columns; informational.
    let [sigma, c3, eig] = relation_residuals(&jet_from_curve(curve)?, m)?;
    report.record("sigma_relation_stencil", sigma);
    report.record("c3_relation_stencil", c3);
    report.record("eigen_constancy_stencil", eig);

    report.check(
        "first_integral",
        profile.max_residual(),
        tolerance::FIRST_INTEGRAL,
    );

    let h = surface.max_abs_mean();
    report.check_with_note(
        "mean_curvature_max",
        h,
        tolerance::MEAN_CURVATURE,
        format!(
            "{} of {} nodes with sin φ < {} excluded",
            surface.degenerate_count(),
            surface.position.len(),
            surface.sin_phi_min
        ),
    );
    report.check(
        "gauss_sign",
        surface.max_gauss().max(0.0),
        tolerance::GAUSS_SIGN,
    );
    report.check(
        "band_confinement",
        profile.band_violation(),
        tolerance::BAND_CONFINEMENT,
    );

    report.record(
        "minimality_residual",
        minimality_residual(&surface.alpha, &surface.beta),
    );
    report.record("mean_curvature_forms_gap", surface.mean_formula_gap());
    report.record("degenerate_nodes", surface.degenerate_count() as f64);
    Ok(())
}

/// κ, τ from the constructed curve; κ' from the profile; κ'' from the
/// curvature equation; τ' = −2c₁κ'/κ³ with the caller's sign of c₁.
fn pipeline_jet(m: &Moduli, profile: &CurvatureProfile, curve: &SpaceCurve) -> CurvatureJet {
    let (c1, _, _) = m.given_coefficients();
    let n = curve.len();
    let kappa_prime = profile.kappa_prime.clone();
    CurvatureJet {
        s: curve.s.clone(),
        kappa: curve.kappa.clone(),
        kappa_second: curve
            .kappa
            .iter()
            .map(|&k| curvature_acceleration(m, k))
            .collect(),
        tau: curve.tau.clone(),
        tau_prime: (0..n)
            .map(|i| -2.0 * c1 * kappa_prime[i] / curve.kappa[i].powi(3))
            .collect(),
        kappa_prime,
        one_sided: vec![false; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::coefficients_from_roots;

    #[test]
    fn example2_report_passes() {
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        let c = construct(&ConstructOptions::new(m, 1.3), 1.0).unwrap();
        assert_eq!(c.route, Route::Oscillating);
        for (name, check) in &c.report.checks {
            eprintln!("{name}: {:e} / {:e}", check.max, check.tolerance);
        }
        assert!(c.report.pass, "{:?}", c.report.failing());
        assert_eq!(c.surface.position.len(), 101 * 101);
    }

    #[test]
    fn double_root_takes_helix_route() {
        let m = coefficients_from_roots(-1.0, -1.0, 1.0).unwrap();
        let c = construct(&ConstructOptions::new(m, 1.0), 1.0).unwrap();
        assert_eq!(c.route, Route::Helix);
        assert!(c.profile.kappa.iter().all(|&k| k == 1.0));
        assert!(c.profile.tau.iter().all(|&t| t == 1.0));
        assert!(c.report.pass, "{:?}", c.report.failing());
        assert!(c.surface.max_abs_mean() <= 1e-10);
        assert_eq!(c.report.notices.len(), 1);
    }

    #[test]
    fn mirrored_moduli_pass() {
        let m = coefficients_from_roots(4.0, 1.0, -1.0).unwrap();
        assert!(m.mirrored);
        let mut opts = ConstructOptions::new(m, 1.3);
        opts.span = (0.0, 5.0);
        opts.grid = 41;
        let c = construct(&opts, 1.0).unwrap();
        assert!(c.report.pass, "{:?}", c.report.failing());
        assert!(c.curve.tau.iter().all(|&t| t < 0.0));
    }

    #[test]
    fn out_of_band_start_is_an_error() {
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        let e = construct(&ConstructOptions::new(m, 2.5), 1.0).unwrap_err();
        assert_eq!(e.exit_code(), 15);
    }
}
