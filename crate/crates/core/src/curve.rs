//! Sampled space curves with Frenet frames.
//!
//! The generating curve of a minimal translation surface is built in closed
//! form from its phase w(s): the unit tangent is
//!
//! ```text
//! α'(s) = (A cos w, B sin w, √(1 − A² cos² w − B² sin² w)),   w' = √(κ² + λ₁λ₂)
//! ```
//!
//! `frenet_reconstruct` rebuilds a curve from (κ, τ) alone and serves as the
//! independent check on that construction.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::arclength::ArcLength;
use crate::curvature_ode::{curvature_acceleration, CurvatureProfile, DOUBLE_ROOT_TOL};
use crate::error::{Error, Result};
use crate::integrate::{rk4_step, uniform_steps};
use crate::moduli::{is_double_root, Moduli};
use crate::stencil::uniform_derivatives;

pub type Vec3 = Vector3<f64>;

/// Positions and Frenet frames sampled on an arc-length grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceCurve {
    pub s: Vec<f64>,
    pub position: Vec<Vec3>,
    pub tangent: Vec<Vec3>,
    pub normal: Vec<Vec3>,
    pub binormal: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

impl SpaceCurve {
    fn with_capacity(n: usize) -> Self {
        SpaceCurve {
            s: Vec::with_capacity(n),
            position: Vec::with_capacity(n),
            tangent: Vec::with_capacity(n),
            normal: Vec::with_capacity(n),
            binormal: Vec::with_capacity(n),
            kappa: Vec::with_capacity(n),
            tau: Vec::with_capacity(n),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, s: f64, p: Vec3, t: Vec3, n: Vec3, b: Vec3, kappa: f64, tau: f64) {
        self.s.push(s);
        self.position.push(p);
        self.tangent.push(t);
        self.normal.push(n);
        self.binormal.push(b);
        self.kappa.push(kappa);
        self.tau.push(tau);
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Frame at sample `i` as a matrix with columns (t, n, b).
    pub fn frame(&self, i: usize) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.tangent[i], self.normal[i], self.binormal[i]])
    }

    /// Keeps only the samples at `indices`.
    pub fn select(&self, indices: &[usize]) -> SpaceCurve {
        let mut out = SpaceCurve::with_capacity(indices.len());
        for &i in indices {
            out.push(
                self.s[i],
                self.position[i],
                self.tangent[i],
                self.normal[i],
                self.binormal[i],
                self.kappa[i],
                self.tau[i],
            );
        }
        out
    }

    /// `count` samples spread evenly over the curve (nearest existing sample).
    pub fn subsample(&self, count: usize) -> SpaceCurve {
        let n = self.len();
        if count >= n || n < 2 {
            return self.clone();
        }
        let idx: Vec<usize> = (0..count)
            .map(|i| ((i as f64) * (n - 1) as f64 / (count - 1).max(1) as f64).round() as usize)
            .collect();
        self.select(&idx)
    }

    /// Image under x ↦ Qx + shift for orthogonal Q. Reflections reverse the
    /// binormal and the sign of the torsion.
    pub fn transformed(&self, q: &Matrix3<f64>, shift: &Vec3) -> SpaceCurve {
        let det = q.determinant().signum();
        let mut out = SpaceCurve::with_capacity(self.len());
        for i in 0..self.len() {
            let t = q * self.tangent[i];
            let n = q * self.normal[i];
            out.push(
                self.s[i],
                q * self.position[i] + shift,
                t,
                n,
                t.cross(&n),
                self.kappa[i],
                det * self.tau[i],
            );
        }
        out
    }

    /// Rigid motion of `self` whose first frame and position match `target`'s.
    pub fn aligned_to(&self, target: &SpaceCurve) -> SpaceCurve {
        let rot = target.frame(0) * self.frame(0).transpose();
        let shift = target.position[0] - rot * self.position[0];
        self.transformed(&rot, &shift)
    }

    /// Largest pointwise distance over common samples with s ≤ `s_max`.
    pub fn max_distance(&self, other: &SpaceCurve, s_max: f64) -> f64 {
        self.s
            .iter()
            .zip(self.position.iter().zip(&other.position))
            .take_while(|(s, _)| **s <= s_max + 1e-12)
            .fold(0.0, |acc, (_, (p, q))| acc.max((p - q).norm()))
    }

    /// max ||t| − 1| over the stored tangents.
    pub fn unit_speed_error(&self) -> f64 {
        self.tangent
            .iter()
            .fold(0.0, |a, t| a.max((t.norm() - 1.0).abs()))
    }

    /// Largest deviation of the stored frames from a right-handed orthonormal triad.
    pub fn frame_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            let (t, n, b) = (self.tangent[i], self.normal[i], self.binormal[i]);
            let errs = [
                (t.norm() - 1.0).abs(),
                (n.norm() - 1.0).abs(),
                (b.norm() - 1.0).abs(),
                t.dot(&n).abs(),
                t.dot(&b).abs(),
                n.dot(&b).abs(),
                (t.cross(&n) - b).norm(),
            ];
            worst = errs.iter().fold(worst, |a, &e| a.max(e));
        }
        worst
    }
}

/// Amplitudes of the closed-form tangent and the phase origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmplitudePair {
    pub a: f64,
    pub b: f64,
    pub w0: f64,
}

/// A = √(λ₃/(λ₃−λ₁)), B = √(λ₃/(λ₃−λ₂)), with w0 = 0.
pub fn amplitude_constants(m: &Moduli) -> AmplitudePair {
    let [l1, l2, l3] = m.roots;
    AmplitudePair {
        a: (l3 / (l3 - l1)).sqrt(),
        b: (l3 / (l3 - l2)).sqrt(),
        w0: 0.0,
    }
}

/// √((λ₃−λ₁)(λ₃−λ₂)): the constant ratio w'/α₃'.
pub fn slope_ratio(m: &Moduli) -> f64 {
    let [l1, l2, l3] = m.roots;
    ((l3 - l1) * (l3 - l2)).sqrt()
}

impl AmplitudePair {
    /// Third tangent component √((1−A²)cos²w + (1−B²)sin²w).
    pub fn vertical(&self, w: f64) -> f64 {
        let (sw, cw) = w.sin_cos();
        ((1.0 - self.a * self.a) * cw * cw + (1.0 - self.b * self.b) * sw * sw).sqrt()
    }

    pub fn tangent(&self, w: f64) -> Vec3 {
        let (sw, cw) = w.sin_cos();
        Vec3::new(self.a * cw, self.b * sw, self.vertical(w))
    }

    /// The phase at which the closed-form curve has curvature `y` and
    /// curvature slope of the sign of `yp`.
    ///
    /// w = 0 is the maximum of κ (y = √(−λ₁λ₃)) and w = ±π/2 the minimum; the
    /// phase is not free once y(0) is fixed.
    pub fn phase_for(m: &Moduli, y: f64, yp: f64) -> f64 {
        let amp = amplitude_constants(m);
        let [l1, l2, _] = m.roots;
        let d2 = slope_ratio(m).powi(2);
        let (a2, b2) = (amp.a * amp.a, amp.b * amp.b);
        let cos2 = (((y * y + l1 * l2) / d2 - 1.0 + b2) / (b2 - a2)).clamp(0.0, 1.0);
        let w = cos2.sqrt().acos();
        if yp >= 0.0 {
            -w
        } else {
            w
        }
    }
}

/// Closed-form generating curve together with its phase data.
#[derive(Clone, Debug)]
pub struct GeneratingCurve {
    pub curve: SpaceCurve,
    pub amplitudes: AmplitudePair,
    /// w(s)
    pub phase: Vec<f64>,
    /// w'(s) = √(κ² + λ₁λ₂)
    pub phase_rate: Vec<f64>,
    /// w'(s)/α₃'(s)
    pub slope_ratio: Vec<f64>,
}

/// Builds α from a curvature profile: w, α and (κ, κ') are advanced in one RK4
/// pass on the profile's grid; frames, κ and τ come from analytic derivatives
/// of the tangent formula. α(s₀) = 0.
pub fn construct_generating_curve(profile: &CurvatureProfile) -> Result<GeneratingCurve> {
    let m = profile.moduli;
    if is_double_root(&m, DOUBLE_ROOT_TOL) {
        return Err(Error::DoubleRoot);
    }
    if profile.is_empty() {
        return Err(Error::GridTooCoarse("empty profile".into()));
    }
    let [l1, l2, _] = m.roots;
    let p12 = l1 * l2;
    let (y0, yp0) = (profile.kappa[0], profile.kappa_prime[0]);
    let mut amp = amplitude_constants(&m);
    amp.w0 = AmplitudePair::phase_for(&m, y0, yp0);
    let (a, b) = (amp.a, amp.b);
    let ab2 = a * a - b * b;

    let rhs = |_s: f64, st: &[f64; 6]| {
        let [y, yp, w, ..] = *st;
        let t = amp.tangent(w);
        [
            yp,
            curvature_acceleration(&m, y),
            (y * y + p12).sqrt(),
            t.x,
            t.y,
            t.z,
        ]
    };

    let n = profile.len();
    let h = profile.step;
    let mut out = GeneratingCurve {
        curve: SpaceCurve::with_capacity(n),
        amplitudes: amp,
        phase: Vec::with_capacity(n),
        phase_rate: Vec::with_capacity(n),
        slope_ratio: Vec::with_capacity(n),
    };
    let mut state = [y0, yp0, amp.w0, 0.0, 0.0, 0.0];
    for i in 0..n {
        let s = profile.s[i];
        let [y, yp, w, x1, x2, x3] = state;
        let rate2 = y * y + p12;
        if !(rate2 > 0.0) {
            return Err(Error::NonmonotonePhase(s));
        }
        let wp = rate2.sqrt();
        let wpp = y * yp / wp;
        let (sw, cw) = w.sin_cos();
        let a3 = amp.vertical(w);
        assert!(
            a3 > 0.0,
            "vertical tangent component must stay positive (w = {w})"
        );
        let t = Vec3::new(a * cw, b * sw, a3);
        let v = Vec3::new(-a * sw, b * cw, ab2 * cw * sw / a3);
        let dv = Vec3::new(
            -a * cw,
            -b * sw,
            ab2 * ((1.0 - a * a * cw * cw) * cw * cw - (1.0 - b * b * sw * sw) * sw * sw)
                / (a3 * a3 * a3),
        );
        let d2 = wp * v;
        let d3 = wpp * v + wp * wp * dv;
        let kappa = d2.norm();
        let normal = d2 / kappa;
        let binormal = t.cross(&normal);
        let tau = t.cross(&d2).dot(&d3) / (kappa * kappa);
        out.curve
            .push(s, Vec3::new(x1, x2, x3), t, normal, binormal, kappa, tau);
        out.phase.push(w);
        out.phase_rate.push(wp);
        out.slope_ratio.push(wp / a3);
        if i + 1 < n {
            state = rk4_step(&rhs, s, &state, h);
        }
    }
    if m.mirrored {
        out.curve = out.curve.transformed(&mirror(), &Vec3::zeros());
    }
    Ok(out)
}

/// Reflection z ↦ −z, applied to curves built from mirrored moduli.
pub fn mirror() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0))
}

fn nearest_orthogonal(m: &Matrix3<f64>) -> Matrix3<f64> {
    let svd = m.svd(true, true);
    let (u, vt) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
    u * vt
}

/// Integrates t' = κn, n' = −κt + τb, b' = −τn, α' = t from the identity frame
/// at the origin, projecting the frame back onto the orthogonal group after
/// every step.
pub fn frenet_reconstruct(
    kappa: impl Fn(f64) -> f64,
    tau: impl Fn(f64) -> f64,
    span: (f64, f64),
    h: f64,
) -> Result<SpaceCurve> {
    if !(h > 0.0) || !(span.1 > span.0) {
        return Err(Error::InvalidArgument(format!(
            "bad span {span:?} or step {h}"
        )));
    }
    let (steps, h) = uniform_steps(span.0, span.1, h);
    let rhs = |s: f64, y: &[f64; 12]| {
        let (k, tr) = (kappa(s), tau(s));
        let mut d = [0.0; 12];
        for c in 0..3 {
            let (t, n, b) = (y[c], y[3 + c], y[6 + c]);
            d[c] = k * n;
            d[3 + c] = -k * t + tr * b;
            d[6 + c] = -tr * n;
            d[9 + c] = t;
        }
        d
    };
    let mut curve = SpaceCurve::with_capacity(steps + 1);
    let mut state = [0.0; 12];
    state[0] = 1.0;
    state[4] = 1.0;
    state[8] = 1.0;
    for i in 0..=steps {
        let s = span.0 + i as f64 * h;
        let k = kappa(s);
        if !(k > 0.0) {
            return Err(Error::NonpositiveKappa { s, value: k });
        }
        let v = |o: usize| Vec3::new(state[o], state[o + 1], state[o + 2]);
        curve.push(s, v(9), v(0), v(3), v(6), k, tau(s));
        if i < steps {
            state = rk4_step(&rhs, s, &state, h);
            // rows of the frame matrix are t, n, b
            let f = Matrix3::new(
                state[0], state[1], state[2], state[3], state[4], state[5], state[6], state[7],
                state[8],
            );
            let q = nearest_orthogonal(&f);
            for r in 0..3 {
                for c in 0..3 {
                    state[3 * r + c] = q[(r, c)];
                }
            }
        }
    }
    Ok(curve)
}

/// Cubic Hermite interpolants of κ and τ = c₁/κ² through a profile's samples.
pub fn profile_interpolants(
    profile: &CurvatureProfile,
) -> (impl Fn(f64) -> f64 + '_, impl Fn(f64) -> f64 + '_) {
    let kappa = move |s: f64| {
        let h = profile.step;
        let n = profile.len();
        let x = ((s - profile.s[0]) / h).max(0.0);
        let i = (x.floor() as usize).min(n - 2);
        let t = x - i as f64;
        let (y0, y1) = (profile.kappa[i], profile.kappa[i + 1]);
        let (d0, d1) = (profile.kappa_prime[i] * h, profile.kappa_prime[i + 1] * h);
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * d1
    };
    let c1 = profile.moduli.c1 * if profile.moduli.mirrored { -1.0 } else { 1.0 };
    let kappa2 = kappa;
    let tau = move |s: f64| {
        let k = kappa2(s);
        c1 / (k * k)
    };
    (kappa, tau)
}

/// Unit-speed circular helix (a cos φ, a sin φ, bφ), φ = s/√(a²+b²).
pub fn circular_helix(a: f64, b: f64, s: &[f64]) -> Result<SpaceCurve> {
    if !(a > 0.0) || b == 0.0 || !b.is_finite() {
        return Err(Error::BadRadius { a, b });
    }
    let r = (a * a + b * b).sqrt();
    let (kappa, tau) = (a / (r * r), b / (r * r));
    let mut curve = SpaceCurve::with_capacity(s.len());
    for &si in s {
        let (sp, cp) = (si / r).sin_cos();
        let phi = si / r;
        curve.push(
            si,
            Vec3::new(a * cp, a * sp, b * phi),
            Vec3::new(-a * sp, a * cp, b) / r,
            Vec3::new(-cp, -sp, 0.0),
            Vec3::new(b * sp, -b * cp, a) / r,
            kappa,
            tau,
        );
    }
    Ok(curve)
}

/// The helix with constant curvature `kappa` and torsion `tau`.
pub fn helix_with_curvature(kappa: f64, tau: f64, s: &[f64]) -> Result<SpaceCurve> {
    let d = kappa * kappa + tau * tau;
    circular_helix(kappa / d, tau / d, s)
}

/// Straight line through the origin with unit direction `dir`; the normal is
/// an arbitrary fixed perpendicular and κ = τ = 0.
pub fn straight_line(dir: &Vec3, s: &[f64]) -> SpaceCurve {
    let t = dir.normalize();
    let helper = if t.x.abs() < 0.9 {
        Vec3::x()
    } else {
        Vec3::y()
    };
    let n = (helper - t * t.dot(&helper)).normalize();
    let b = t.cross(&n);
    let mut curve = SpaceCurve::with_capacity(s.len());
    for &si in s {
        curve.push(si, t * si, t, n, b, 0.0, 0.0);
    }
    curve
}

/// The planar curve (u, 0, −log cos(cu)/c), sampled uniformly in signed arc
/// length from u = 0 over the image of `u_span`. Frames are analytic; τ ≡ 0.
pub fn scherk_curve(c: f64, u_span: (f64, f64), samples: usize) -> Result<SpaceCurve> {
    let limit = std::f64::consts::FRAC_PI_2 / c;
    if !(c > 0.0) || !(u_span.0 > -limit && u_span.1 < limit && u_span.0 < u_span.1) {
        return Err(Error::SpanHitsSingularity(u_span.0, u_span.1));
    }
    if samples < 2 {
        return Err(Error::GridTooCoarse(format!("{samples} samples")));
    }
    let lo = u_span.0.min(0.0);
    let hi = u_span.1.max(0.0);
    let arc = ArcLength::new(|u: f64| 1.0 / (c * u).cos(), lo, hi, 0.0, 2000);
    let (s0, s1) = (arc.length(u_span.0), arc.length(u_span.1));
    let mut curve = SpaceCurve::with_capacity(samples);
    for i in 0..samples {
        let s = if i + 1 == samples {
            s1
        } else {
            s0 + (s1 - s0) * i as f64 / (samples - 1) as f64
        };
        let u = if i == 0 {
            u_span.0
        } else if i + 1 == samples {
            u_span.1
        } else {
            arc.parameter(s)
        };
        let (sn, cs) = (c * u).sin_cos();
        curve.push(
            s,
            Vec3::new(u, 0.0, -cs.ln() / c),
            Vec3::new(cs, 0.0, sn),
            Vec3::new(-sn, 0.0, cs),
            Vec3::new(0.0, -1.0, 0.0),
            c * cs,
            0.0,
        );
    }
    Ok(curve)
}

/// Curvature and torsion recovered from positions alone.
#[derive(Clone, Debug)]
pub struct SampledInvariants {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    /// Samples near the ends, where the stencil is one-sided and less accurate.
    pub one_sided: Vec<bool>,
}

pub(crate) fn uniform_spacing(s: &[f64]) -> Result<f64> {
    let n = s.len();
    if n < 2 {
        return Err(Error::GridTooCoarse(format!("{n} samples")));
    }
    let h = (s[n - 1] - s[0]) / (n - 1) as f64;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("parameter must increase".into()));
    }
    for w in s.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-6 * h {
            return Err(Error::InvalidArgument(format!(
                "grid is not uniform near s = {}",
                w[0]
            )));
        }
    }
    Ok(h)
}

/// Position derivatives α', α'', α''' by 7-point stencils (one-sided at the ends).
pub(crate) fn position_derivatives(
    points: &[Vec3],
    h: f64,
    order: usize,
) -> (Vec<Vec<Vec3>>, Vec<bool>) {
    let comps: Vec<_> = (0..3)
        .map(|c| {
            let series: Vec<f64> = points.iter().map(|p| p[c]).collect();
            uniform_derivatives(&series, h, order, 7)
        })
        .collect();
    let n = points.len();
    let derivs = (0..order)
        .map(|k| {
            (0..n)
                .map(|i| {
                    Vec3::new(
                        comps[0].values[k][i],
                        comps[1].values[k][i],
                        comps[2].values[k][i],
                    )
                })
                .collect()
        })
        .collect();
    (derivs, comps[0].one_sided.clone())
}

/// κ = |α'×α''|/|α'|³ and τ = (α', α'', α''')/|α'×α''|² from sampled positions.
pub fn curvature_torsion_from_samples(curve: &SpaceCurve) -> Result<SampledInvariants> {
    if curve.len() < 7 {
        return Err(Error::GridTooCoarse(format!(
            "{} samples, need at least 7",
            curve.len()
        )));
    }
    let h = uniform_spacing(&curve.s)?;
    let (d, one_sided) = position_derivatives(&curve.position, h, 3);
    let mut kappa = Vec::with_capacity(curve.len());
    let mut tau = Vec::with_capacity(curve.len());
    for (i, ((d1, d2), d3)) in d[0].iter().zip(&d[1]).zip(&d[2]).enumerate() {
        let cross = d1.cross(d2);
        let cn = cross.norm();
        if cn < 1e-12 {
            return Err(Error::DegenerateSecondDerivative(i));
        }
        kappa.push(cn / d1.norm().powi(3));
        tau.push(cross.dot(d3) / (cn * cn));
    }
    Ok(SampledInvariants {
        s: curve.s.clone(),
        kappa,
        tau,
        one_sided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature_ode::solve_curvature;
    use crate::integrate::linspace;
    use crate::moduli::coefficients_from_roots;

    fn example2_profile(end: f64) -> CurvatureProfile {
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        solve_curvature(&m, 1.3, (0.0, end), 1e-3).unwrap()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn amplitudes_of_examples() {
        let a = amplitude_constants(&coefficients_from_roots(-4.0, -1.0, 1.0).unwrap());
        assert!((a.a - 0.4472).abs() < 5e-4 && (a.b - 0.7071).abs() < 5e-4);
        let a = amplitude_constants(&coefficients_from_roots(-1.0, -1.0, 1.0).unwrap());
        assert!((a.a - 0.5f64.sqrt()).abs() < 1e-15 && (a.b - 0.5f64.sqrt()).abs() < 1e-15);
        let a = amplitude_constants(&coefficients_from_roots(-2.0, -1.0, 1.0).unwrap());
        assert!((a.a - 0.5774).abs() < 5e-4 && (a.b - 0.7071).abs() < 5e-4);
        assert!(a.a <= a.b && a.b < 1.0);
    }

    #[test]
    fn phase_origin_matches_extrema() {
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        assert!(AmplitudePair::phase_for(&m, 2.0, 0.0).abs() < 1e-7);
        let w = AmplitudePair::phase_for(&m, 1.0, -1.0);
        assert!((w - std::f64::consts::FRAC_PI_2).abs() < 1e-7);
        assert!(AmplitudePair::phase_for(&m, 1.3, 1.0) < 0.0);
    }

    #[test]
    fn constructed_curve_invariants() {
        let p = example2_profile(20.0);
        let g = construct_generating_curve(&p).unwrap();
        let c = &g.curve;
        assert!(c.unit_speed_error() <= 1e-9);
        assert!(c.frame_error() <= 1e-9, "{}", c.frame_error());
        for i in 0..c.len() {
            assert!((c.kappa[i] * c.kappa[i] * c.tau[i] - 4.0).abs() <= 4e-8);
            assert!((c.kappa[i] - p.kappa[i]).abs() <= 1e-8, "i={i}");
            let r = g.slope_ratio[i];
            assert!((r - 10f64.sqrt()).abs() <= 1e-8);
        }
        // position increments follow the midpoint tangent
        let h = p.step;
        for i in (0..c.len() - 1).step_by(101) {
            let chord = (c.position[i + 1] - c.position[i]) / h;
            let mid = g.amplitudes.tangent(0.5 * (g.phase[i] + g.phase[i + 1]));
            assert!((chord - mid).norm() <= 10.0 * h * h);
        }
    }

    #[test]
    fn phase_rate_from_differentiated_phase() {
        let p = example2_profile(5.0);
        let g = construct_generating_curve(&p).unwrap();
        let d = uniform_derivatives(&g.phase, p.step, 1, 7);
        let lp = -4.0 * -1.0;
        for i in 3..p.len() - 3 {
            let expected = (p.kappa[i] * p.kappa[i] + lp).sqrt();
            assert!((d.values[0][i] - expected).abs() <= 1e-10, "i={i}");
        }
    }

    #[test]
    fn stencil_curvature_matches_profile() {
        let p = example2_profile(10.0);
        let g = construct_generating_curve(&p).unwrap();
        let idx: Vec<usize> = (0..p.len()).step_by(10).collect();
        let coarse = g.curve.select(&idx);
        let inv = curvature_torsion_from_samples(&coarse).unwrap();
        for (j, &i) in idx.iter().enumerate() {
            if !inv.one_sided[j] {
                assert!((inv.kappa[j] - p.kappa[i]).abs() <= 1e-5);
                assert!((inv.tau[j] - p.tau[i]).abs() <= 1e-4);
            }
        }
    }

    #[test]
    fn double_root_profile_rejected() {
        let mut p = example2_profile(1.0);
        p.moduli = coefficients_from_roots(-1.0, -1.0, 1.0).unwrap();
        assert!(matches!(
            construct_generating_curve(&p),
            Err(Error::DoubleRoot)
        ));
    }

    #[test]
    fn mirrored_moduli_flip_torsion() {
        let m = coefficients_from_roots(4.0, 1.0, -1.0).unwrap();
        let p = solve_curvature(&m, 1.3, (0.0, 2.0), 1e-3).unwrap();
        let g = construct_generating_curve(&p).unwrap();
        for i in 0..g.curve.len() {
            let k = g.curve.kappa[i];
            assert!((k * k * g.curve.tau[i] + 4.0).abs() <= 4e-8);
        }
        assert!(g.curve.frame_error() <= 1e-9);
    }

    #[test]
    fn frenet_circle_closes() {
        let tau = std::f64::consts::TAU;
        let c = frenet_reconstruct(|_| 1.0, |_| 0.0, (0.0, tau), 1e-3).unwrap();
        let gap = (c.position[c.len() - 1] - c.position[0]).norm();
        assert!(gap <= 1e-6, "gap {gap}");
        assert!(c.position.iter().all(|p| p.z.abs() < 1e-12));
    }

    #[test]
    fn frenet_helix_matches_closed_form() {
        let rec = frenet_reconstruct(|_| 1.0, |_| 1.0, (0.0, 10.0), 1e-3).unwrap();
        let exact = circular_helix(0.5, 0.5, &rec.s).unwrap();
        let aligned = exact.aligned_to(&rec);
        assert!(aligned.max_distance(&rec, 10.0) <= 1e-6);
    }

    #[test]
    fn frenet_rejects_nonpositive_curvature() {
        let r = frenet_reconstruct(|s| 1.0 - s, |_| 0.0, (0.0, 2.0), 1e-2);
        assert!(matches!(r, Err(Error::NonpositiveKappa { .. })));
    }

    #[test]
    fn frenet_agrees_with_closed_form_on_example2() {
        let p = example2_profile(10.0);
        let g = construct_generating_curve(&p).unwrap();
        let (k, t) = profile_interpolants(&p);
        let rec = frenet_reconstruct(k, t, (0.0, 10.0), p.step).unwrap();
        let aligned = g.curve.aligned_to(&rec);
        let d = aligned.max_distance(&rec, 10.0);
        assert!(d <= 1e-5, "distance {d}");
    }

    #[test]
    fn helix_curvature_and_torsion() {
        let s = linspace(0.0, 5.0, 11);
        let h = circular_helix(0.5, 0.5, &s).unwrap();
        assert!((h.kappa[0] - 1.0).abs() < 1e-15 && (h.tau[0] - 1.0).abs() < 1e-15);
        let h = circular_helix(1.0, 1.0, &s).unwrap();
        assert!((h.kappa[0] - 0.5).abs() < 1e-15 && (h.tau[0] - 0.5).abs() < 1e-15);
        let h = circular_helix(2.0, -1.0, &s).unwrap();
        assert!((h.kappa[0] - 0.4).abs() < 1e-15 && (h.tau[0] + 0.2).abs() < 1e-15);
        assert!(h.frame_error() < 1e-14);
        assert!(matches!(
            circular_helix(0.0, 1.0, &s),
            Err(Error::BadRadius { .. })
        ));
        assert!(matches!(
            circular_helix(1.0, 0.0, &s),
            Err(Error::BadRadius { .. })
        ));
    }

    #[test]
    fn helix_from_samples() {
        let s = linspace(0.0, 10.0, 1001);
        let h = circular_helix(0.5, 0.5, &s).unwrap();
        let inv = curvature_torsion_from_samples(&h).unwrap();
        for i in 0..s.len() {
            if !inv.one_sided[i] {
                assert!((inv.kappa[i] - 1.0).abs() <= 1e-6);
                assert!((inv.tau[i] - 1.0).abs() <= 1e-5);
            }
        }
    }

    #[test]
    fn sampling_errors() {
        let s = linspace(0.0, 1.0, 6);
        let h = circular_helix(0.5, 0.5, &s).unwrap();
        assert!(matches!(
            curvature_torsion_from_samples(&h),
            Err(Error::GridTooCoarse(_))
        ));
        let line = straight_line(&Vec3::new(1.0, 2.0, 0.0), &linspace(0.0, 1.0, 9));
        assert!(matches!(
            curvature_torsion_from_samples(&line),
            Err(Error::DegenerateSecondDerivative(_))
        ));
    }

    #[test]
    fn scherk_curvature_follows_closed_form() {
        let c = scherk_curve(1.0, (-1.4, 1.4), 2001).unwrap();
        assert!(c.unit_speed_error() <= 1e-8);
        assert!(c.tau.iter().all(|t| t.abs() <= 1e-10));
        for i in 0..c.len() {
            let s = c.s[i];
            let expected = 2.0 * s.exp() / (1.0 + (2.0 * s).exp());
            assert!((c.kappa[i] - expected).abs() <= 1e-6, "s={s}");
        }
        let mid = c.s.iter().position(|s| s.abs() < 1e-12);
        if let Some(i) = mid {
            assert!((c.kappa[i] - 1.0).abs() < 1e-12);
        }
        // (κ'/κ)' + κ² = 0, with (κ'/κ)' = (log κ)''
        let logk: Vec<f64> = c.kappa.iter().map(|k| k.ln()).collect();
        let h = c.s[1] - c.s[0];
        let d = uniform_derivatives(&logk, h, 2, 7);
        for i in 0..c.len() {
            if !d.one_sided[i] {
                assert!((d.values[1][i] + c.kappa[i] * c.kappa[i]).abs() <= 1e-6);
            }
        }
        let inv = curvature_torsion_from_samples(&c.subsample(401)).unwrap();
        assert!(inv.tau.iter().all(|t| t.abs() <= 1e-8));
    }

    #[test]
    fn scherk_singular_span_rejected() {
        assert!(matches!(
            scherk_curve(1.0, (-1.6, 1.0), 10),
            Err(Error::SpanHitsSingularity(..))
        ));
        assert!(matches!(
            scherk_curve(2.0, (-0.5, 0.8), 10),
            Err(Error::SpanHitsSingularity(..))
        ));
    }
}
