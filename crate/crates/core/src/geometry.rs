//! Translation surfaces Ψ(s,t) = α(s) + β(t) and their curvature.
//!
//! With unit-speed generators E = G = 1, F = cos φ and m = 0; the normal is
//! N = t_α × t_β / sin φ and
//!
//! ```text
//! l = −κ_α⟨b_α, t_β⟩ / sin φ        n = κ_β⟨t_α, b_β⟩ / sin φ
//! K = −κ_ακ_β⟨b_α, t_β⟩⟨t_α, b_β⟩ / sin⁴φ
//! H = (−κ_α⟨b_α, t_β⟩ + κ_β⟨t_α, b_β⟩) / (2 sin³φ)
//! ```
//!
//! Nodes with sin φ below a threshold are flagged degenerate and left out of
//! every maximum.

use nalgebra::Matrix3;
use serde::Serialize;

use crate::curvature_ode::CurvatureProfile;
use crate::curve::{position_derivatives, uniform_spacing, SpaceCurve, Vec3};
use crate::error::{Error, Result};
use crate::stencil::uniform_derivatives;
use crate::sym3::symmetric_eigenvalues;

pub const DEFAULT_SIN_PHI_MIN: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct TranslationSurface {
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub alpha: SpaceCurve,
    pub beta: SpaceCurve,
    /// Row-major in s: node (i, j) is at `i * t.len() + j`.
    pub position: Vec<Vec3>,
    pub normal: Vec<Vec3>,
    pub phi: Vec<f64>,
    pub e: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub l: Vec<f64>,
    pub m: Vec<f64>,
    pub n: Vec<f64>,
    pub gauss: Vec<f64>,
    pub mean: Vec<f64>,
    pub degenerate: Vec<bool>,
    pub sin_phi_min: f64,
}

pub fn surface_from_curves(alpha: &SpaceCurve, beta: &SpaceCurve) -> Result<TranslationSurface> {
    surface_from_curves_with(alpha, beta, DEFAULT_SIN_PHI_MIN)
}

pub fn surface_from_curves_with(
    alpha: &SpaceCurve,
    beta: &SpaceCurve,
    sin_phi_min: f64,
) -> Result<TranslationSurface> {
    if alpha.is_empty() || beta.is_empty() {
        return Err(Error::GridTooCoarse(
            "a generating curve has no samples".into(),
        ));
    }
    let (ns, nt) = (alpha.len(), beta.len());
    let total = ns * nt;
    let mut surf = TranslationSurface {
        s: alpha.s.clone(),
        t: beta.s.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        position: Vec::with_capacity(total),
        normal: Vec::with_capacity(total),
        phi: Vec::with_capacity(total),
        e: Vec::with_capacity(total),
        f: Vec::with_capacity(total),
        g: Vec::with_capacity(total),
        l: Vec::with_capacity(total),
        m: Vec::with_capacity(total),
        n: Vec::with_capacity(total),
        gauss: Vec::with_capacity(total),
        mean: Vec::with_capacity(total),
        degenerate: Vec::with_capacity(total),
        sin_phi_min,
    };
    for i in 0..ns {
        let (ta, ba, ka) = (alpha.tangent[i], alpha.binormal[i], alpha.kappa[i]);
        for j in 0..nt {
            let (tb, bb, kb) = (beta.tangent[j], beta.binormal[j], beta.kappa[j]);
            surf.position.push(alpha.position[i] + beta.position[j]);
            let cross = ta.cross(&tb);
            let sin_phi = cross.norm();
            let cos_phi = ta.dot(&tb);
            surf.phi.push(sin_phi.atan2(cos_phi));
            surf.e.push(ta.norm_squared());
            surf.f.push(cos_phi);
            surf.g.push(tb.norm_squared());
            surf.m.push(0.0);
            let degenerate = !(sin_phi >= sin_phi_min);
            surf.degenerate.push(degenerate);
            if degenerate {
                surf.normal.push(Vec3::zeros());
                for v in [&mut surf.l, &mut surf.n, &mut surf.gauss, &mut surf.mean] {
                    v.push(f64::NAN);
                }
                continue;
            }
            let pa = ba.dot(&tb);
            let pb = ta.dot(&bb);
            surf.normal.push(cross / sin_phi);
            surf.l.push(-ka * pa / sin_phi);
            surf.n.push(kb * pb / sin_phi);
            surf.gauss.push(-ka * kb * pa * pb / sin_phi.powi(4));
            surf.mean
                .push((-ka * pa + kb * pb) / (2.0 * sin_phi.powi(3)));
        }
    }
    Ok(surf)
}

impl TranslationSurface {
    pub fn rows(&self) -> usize {
        self.s.len()
    }

    pub fn cols(&self) -> usize {
        self.t.len()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.t.len() + j
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().filter(|&&d| d).count()
    }

    fn regular<'a>(&'a self, field: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        field
            .iter()
            .zip(&self.degenerate)
            .filter(|(_, &d)| !d)
            .map(|(&v, _)| v)
    }

    /// max |H| over regular nodes.
    pub fn max_abs_mean(&self) -> f64 {
        self.regular(&self.mean).fold(0.0, |a, h| a.max(h.abs()))
    }

    /// max K over regular nodes (−∞ if none).
    pub fn max_gauss(&self) -> f64 {
        self.regular(&self.gauss).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_gauss(&self) -> f64 {
        self.regular(&self.gauss).fold(0.0, |a, k| a.max(k.abs()))
    }

    /// H from the fundamental forms, (lG − 2mF + nE) / (2(EG − F²)).
    pub fn mean_from_forms(&self, k: usize) -> f64 {
        let (e, f, g) = (self.e[k], self.f[k], self.g[k]);
        (self.l[k] * g - 2.0 * self.m[k] * f + self.n[k] * e) / (2.0 * (e * g - f * f))
    }

    /// Largest gap between the closed-form H and the forms-based H.
    pub fn mean_formula_gap(&self) -> f64 {
        (0..self.mean.len())
            .filter(|&k| !self.degenerate[k])
            .fold(0.0, |a, k| {
                a.max((self.mean[k] - self.mean_from_forms(k)).abs())
            })
    }
}

/// max over the grid of |κ_α⟨b_α, t_β⟩ − κ_β⟨t_α, b_β⟩|; zero exactly when
/// the surface is minimal, without dividing by sin³φ.
pub fn minimality_residual(alpha: &SpaceCurve, beta: &SpaceCurve) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..alpha.len() {
        let (ta, ba, ka) = (alpha.tangent[i], alpha.binormal[i], alpha.kappa[i]);
        for j in 0..beta.len() {
            let r = ka * ba.dot(&beta.tangent[j]) - beta.kappa[j] * ta.dot(&beta.binormal[j]);
            worst = worst.max(r.abs());
        }
    }
    worst
}

/// Positions on a uniform, not necessarily arc-length, parameter grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve {
    pub u: Vec<f64>,
    pub points: Vec<Vec3>,
}

impl SampledCurve {
    pub fn from_fn(u: Vec<f64>, f: impl Fn(f64) -> Vec3) -> Self {
        let points = u.iter().map(|&x| f(x)).collect();
        SampledCurve { u, points }
    }
}

impl From<&SpaceCurve> for SampledCurve {
    fn from(c: &SpaceCurve) -> Self {
        SampledCurve {
            u: c.s.clone(),
            points: c.position.clone(),
        }
    }
}

/// First and second derivatives of a sampled curve.
pub(crate) struct CurveJet {
    d1: Vec<Vec3>,
    d2: Vec<Vec3>,
}

impl CurveJet {
    pub(crate) fn new(c: &SampledCurve) -> Result<Self> {
        if c.points.len() < 5 || c.u.len() != c.points.len() {
            return Err(Error::GridTooCoarse(format!(
                "{} samples, need at least 5",
                c.points.len()
            )));
        }
        let h = uniform_spacing(&c.u)?;
        let n = c.points.len();
        let comps: Vec<_> = (0..3)
            .map(|k| {
                let series: Vec<f64> = c.points.iter().map(|p| p[k]).collect();
                uniform_derivatives(&series, h, 2, n.min(7))
            })
            .collect();
        let pick = |order: usize| -> Vec<Vec3> {
            (0..n)
                .map(|i| {
                    Vec3::new(
                        comps[0].values[order][i],
                        comps[1].values[order][i],
                        comps[2].values[order][i],
                    )
                })
                .collect()
        };
        Ok(CurveJet {
            d1: pick(0),
            d2: pick(1),
        })
    }
}

/// max over node pairs of | |β'|²⟨α'×α'', β'⟩ − |α'|²⟨α', β'×β''⟩ | / (|α'|³|β'|³),
/// evaluated on every `stride_a`-th and `stride_b`-th sample.
///
/// The normalization makes the value parameterization-invariant; for unit-speed
/// curves it is exactly the residual of [`minimality_residual`].
pub(crate) fn general_residual(
    a: &CurveJet,
    b: &CurveJet,
    stride_a: usize,
    stride_b: usize,
) -> f64 {
    let mut worst = 0.0f64;
    for i in (0..a.d1.len()).step_by(stride_a.max(1)) {
        let (a1, a2) = (a.d1[i], a.d2[i]);
        let acr = a1.cross(&a2);
        let a1n = a1.norm_squared();
        for j in (0..b.d1.len()).step_by(stride_b.max(1)) {
            let (b1, b2) = (b.d1[j], b.d2[j]);
            let b1n = b1.norm_squared();
            let r = b1n * acr.dot(&b1) - a1n * a1.dot(&b1.cross(&b2));
            worst = worst.max(r.abs() / (a1n * b1n).powf(1.5));
        }
    }
    worst
}

/// Minimality test for generators that are not parameterized by arc length;
/// derivatives come from 5-point stencils.
pub fn minimality_residual_general(alpha: &SampledCurve, beta: &SampledCurve) -> Result<f64> {
    let ja = CurveJet::new(alpha)?;
    let jb = CurveJet::new(beta)?;
    Ok(general_residual(&ja, &jb, 1, 1))
}

/// The operator whose matrix in the Frenet basis (t, n, b) is
///
/// ```text
/// | 0   0    κ   |
/// | 0  −τ   −R   |
/// | κ  −R   Σ/τ  |
/// ```
///
/// with R = κ'/κ + τ'/τ and Σ = (κ'/κ)' + κ² − τ².
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorSample {
    pub s: f64,
    pub matrix: [[f64; 3]; 3],
    pub eigenvalues: [f64; 3],
    pub r: f64,
    pub sigma: f64,
}

pub fn operator_l(
    kappa: f64,
    kappa_prime: f64,
    kappa_second: f64,
    tau: f64,
    tau_prime: f64,
) -> Result<OperatorSample> {
    if !(kappa > 0.0) {
        return Err(Error::NonpositiveKappa {
            s: f64::NAN,
            value: kappa,
        });
    }
    if tau == 0.0 {
        return Err(Error::ZeroTorsion);
    }
    let log_rate = kappa_prime / kappa;
    let r = log_rate + tau_prime / tau;
    let sigma = kappa_second / kappa - log_rate * log_rate + kappa * kappa - tau * tau;
    let matrix = [[0.0, 0.0, kappa], [0.0, -tau, -r], [kappa, -r, sigma / tau]];
    let eigenvalues = symmetric_eigenvalues(&Matrix3::from_fn(|i, j| matrix[i][j]));
    Ok(OperatorSample {
        s: 0.0,
        matrix,
        eigenvalues,
        r,
        sigma,
    })
}

/// Pointwise κ, κ', κ'', τ, τ' along a curve.
#[derive(Clone, Debug)]
pub struct CurvatureJet {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub kappa_prime: Vec<f64>,
    pub kappa_second: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau_prime: Vec<f64>,
    /// Samples whose derivatives came from one-sided stencils.
    pub one_sided: Vec<bool>,
}

impl CurvatureJet {
    /// κ'' from the curvature equation, τ' from τ = c₁/κ².
    pub fn from_profile(p: &CurvatureProfile) -> Self {
        let n = p.len();
        CurvatureJet {
            s: p.s.clone(),
            kappa: p.kappa.clone(),
            kappa_prime: p.kappa_prime.clone(),
            kappa_second: (0..n).map(|i| p.kappa_second(i)).collect(),
            tau: p.tau.clone(),
            tau_prime: (0..n).map(|i| p.tau_prime(i)).collect(),
            one_sided: vec![false; n],
        }
    }

    /// Derivatives of sampled κ and τ by 7-point stencils.
    pub fn from_samples(s: &[f64], kappa: &[f64], tau: &[f64]) -> Result<Self> {
        if s.len() < 7 {
            return Err(Error::GridTooCoarse(format!(
                "{} samples, need at least 7",
                s.len()
            )));
        }
        let h = uniform_spacing(s)?;
        let dk = uniform_derivatives(kappa, h, 2, 7);
        let dt = uniform_derivatives(tau, h, 1, 7);
        let mut dk_values = dk.values.into_iter();
        Ok(CurvatureJet {
            s: s.to_vec(),
            kappa: kappa.to_vec(),
            kappa_prime: dk_values.next().unwrap(),
            kappa_second: dk_values.next().unwrap(),
            tau: tau.to_vec(),
            tau_prime: dt.values.into_iter().next().unwrap(),
            one_sided: dk.one_sided,
        })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn operator(&self, i: usize) -> Result<OperatorSample> {
        let mut op = operator_l(
            self.kappa[i],
            self.kappa_prime[i],
            self.kappa_second[i],
            self.tau[i],
            self.tau_prime[i],
        )?;
        op.s = self.s[i];
        Ok(op)
    }

    /// (κ²τ, Σ/τ − τ, −(Σ + R² + κ²)) at sample i.
    pub fn invariants(&self, i: usize) -> Result<[f64; 3]> {
        let op = self.operator(i)?;
        let (k, t) = (self.kappa[i], self.tau[i]);
        Ok([
            k * k * t,
            op.sigma / t - t,
            -(op.sigma + op.r * op.r + k * k),
        ])
    }
}

/// Mean, standard deviation and largest deviation from the mean.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std: f64,
    pub max_dev: f64,
}

impl Estimate {
    fn of(values: &[f64]) -> Self {
        let n = values.len().max(1) as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let max_dev = values.iter().fold(0.0f64, |a, v| a.max((v - mean).abs()));
        Estimate {
            mean,
            std: var.sqrt(),
            max_dev,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantEstimates {
    pub c1: Estimate,
    pub c2: Estimate,
    pub c3: Estimate,
}

/// Estimates (c₁, c₂, c₃) from the samples that are not `one_sided`.
pub fn extract_invariants_from_jet(jet: &CurvatureJet) -> Result<InvariantEstimates> {
    let mut cols: [Vec<f64>; 3] = Default::default();
    for i in 0..jet.len() {
        if jet.one_sided[i] {
            continue;
        }
        let v = jet.invariants(i)?;
        for k in 0..3 {
            cols[k].push(v[k]);
        }
    }
    if cols[0].is_empty() {
        return Err(Error::GridTooCoarse("no interior samples".into()));
    }
    Ok(InvariantEstimates {
        c1: Estimate::of(&cols[0]),
        c2: Estimate::of(&cols[1]),
        c3: Estimate::of(&cols[2]),
    })
}

/// c₁ = mean κ²τ, c₂ = mean(Σ/τ − τ), c₃ = mean −(Σ + R² + κ²); their spreads
/// measure how far the profile is from a solution.
pub fn extract_invariants(profile: &CurvatureProfile) -> Result<InvariantEstimates> {
    extract_invariants_from_jet(&CurvatureJet::from_profile(profile))
}

/// Largest |λᵢ(s) − target_i| over the curve samples.
pub fn eigenvalue_deviation(jet: &CurvatureJet, target: [f64; 3]) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..jet.len() {
        if jet.one_sided[i] {
            continue;
        }
        let e = jet.operator(i)?.eigenvalues;
        for k in 0..3 {
            worst = worst.max((e[k] - target[k]).abs());
        }
    }
    Ok(worst)
}

/// Largest range max − min of each sorted eigenvalue across the samples.
pub fn eigenvalue_range(jet: &CurvatureJet) -> Result<f64> {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for i in 0..jet.len() {
        if jet.one_sided[i] {
            continue;
        }
        let e = jet.operator(i)?.eigenvalues;
        for k in 0..3 {
            lo[k] = lo[k].min(e[k]);
            hi[k] = hi[k].max(e[k]);
        }
    }
    Ok((0..3).fold(0.0, |a, k| a.max(hi[k] - lo[k])))
}

/// Curvature data recovered from a stored curve: positions are ignored and
/// the stored κ, τ columns are differentiated.
pub fn jet_from_curve(curve: &SpaceCurve) -> Result<CurvatureJet> {
    CurvatureJet::from_samples(&curve.s, &curve.kappa, &curve.tau)
}

/// |α'| − 1 from positions by stencils.
pub fn stencil_unit_speed_error(curve: &SpaceCurve) -> Result<f64> {
    if curve.len() < 7 {
        return Err(Error::GridTooCoarse(format!(
            "{} samples, need at least 7",
            curve.len()
        )));
    }
    let h = uniform_spacing(&curve.s)?;
    let (d, _) = position_derivatives(&curve.position, h, 1);
    Ok(d[0].iter().fold(0.0, |a, v| a.max((v.norm() - 1.0).abs())))
}
