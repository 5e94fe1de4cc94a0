//! The autonomous curvature equation
//!
//! ```text
//! y'² + F(y) = 0,   F(y) = y⁴ + c₃y² + c₁²/y² + c₁c₂
//! ```
//!
//! integrated in its second-order form y'' = −½F'(y) = −2y³ − c₃y + c₁²/y³,
//! with the first integral y'² + F(y) monitored at every sample.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrate::{rk4_step, uniform_steps};
use crate::moduli::{is_double_root, Moduli};

/// Relative gap between λ₁ and λ₂ below which moduli are treated as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-9;

/// First-integral drift that aborts a solve.
pub const RESIDUAL_ABORT: f64 = 1e-5;

pub const DEFAULT_STEP: f64 = 1e-3;

/// Arc-length samples of a positive non-constant curvature solution.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureProfile {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub kappa_prime: Vec<f64>,
    pub tau: Vec<f64>,
    pub first_integral_residual: Vec<f64>,
    pub moduli: Moduli,
    pub step: f64,
}

/// Stationary curvatures (√(−λ₂λ₃), √(−λ₁λ₃)), ascending.
pub fn equilibria(m: &Moduli) -> (f64, f64) {
    let [l1, l2, l3] = m.roots;
    let a = (-l2 * l3).sqrt();
    let b = (-l1 * l3).sqrt();
    (a.min(b), a.max(b))
}

/// F(y) = y⁴ + c₃y² + c₁²/y² + c₁c₂.
pub fn potential(m: &Moduli, y: f64) -> f64 {
    let y2 = y * y;
    y2 * y2 + m.c3 * y2 + m.c1 * m.c1 / y2 + m.c1 * m.c2
}

/// y'² + F(y); zero along exact solutions.
pub fn first_integral(m: &Moduli, y: f64, yp: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::NonpositiveY(y));
    }
    Ok(yp * yp + potential(m, y))
}

/// y'' = −2y³ − c₃y + c₁²/y³.
pub fn curvature_acceleration(m: &Moduli, y: f64) -> f64 {
    -2.0 * y * y * y - m.c3 * y + m.c1 * m.c1 / (y * y * y)
}

/// Checks the preconditions shared by every solve and returns the initial slope
/// +√(−F(y0)).
pub(crate) fn initial_slope(m: &Moduli, y0: f64) -> Result<f64> {
    if is_double_root(m, DOUBLE_ROOT_TOL) {
        return Err(Error::DoubleRoot);
    }
    let (low, high) = equilibria(m);
    let out_of_band = Error::InitialValueOutOfBand { y0, low, high };
    if !(y0 > 0.0) {
        return Err(out_of_band);
    }
    let f0 = potential(m, y0);
    if !(f0 < 0.0) || y0 <= low || y0 >= high {
        return Err(out_of_band);
    }
    Ok((-f0).sqrt())
}

/// Integrates the curvature equation from `y(span.0) = y0`, `y'(span.0) = +√(−F(y0))`
/// over `span` with classical RK4 at (approximately) step `h`.
pub fn solve_curvature(m: &Moduli, y0: f64, span: (f64, f64), h: f64) -> Result<CurvatureProfile> {
    if !(h > 0.0) || !(span.1 > span.0) {
        return Err(Error::InvalidArgument(format!(
            "bad span {span:?} or step {h}"
        )));
    }
    let yp0 = initial_slope(m, y0)?;
    let (low, high) = equilibria(m);
    let (steps, h) = uniform_steps(span.0, span.1, h);
    let rhs = |_s: f64, st: &[f64; 2]| [st[1], curvature_acceleration(m, st[0])];

    let mut profile = CurvatureProfile {
        s: Vec::with_capacity(steps + 1),
        kappa: Vec::with_capacity(steps + 1),
        kappa_prime: Vec::with_capacity(steps + 1),
        tau: Vec::with_capacity(steps + 1),
        first_integral_residual: Vec::with_capacity(steps + 1),
        moduli: *m,
        step: h,
    };
    let mut state = [y0, yp0];
    for i in 0..=steps {
        let s = span.0 + i as f64 * h;
        let [y, yp] = state;
        if !(y >= 0.5 * low && y <= 2.0 * high) {
            return Err(Error::StepTooLarge {
                step: h,
                reason: format!("curvature {y} left the band guard at s = {s}"),
            });
        }
        let residual = first_integral(m, y, yp)?;
        if residual.abs() > RESIDUAL_ABORT {
            return Err(Error::StepTooLarge {
                step: h,
                reason: format!("first-integral residual {residual:e} at s = {s}"),
            });
        }
        profile.s.push(s);
        profile.kappa.push(y);
        profile.kappa_prime.push(yp);
        profile.tau.push(m.c1 / (y * y));
        profile.first_integral_residual.push(residual);
        if i < steps {
            state = rk4_step(&rhs, s, &state, h);
        }
    }
    Ok(profile)
}

impl CurvatureProfile {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.first_integral_residual
            .iter()
            .fold(0.0, |a, r| a.max(r.abs()))
    }

    /// κ'' from the second-order equation.
    pub fn kappa_second(&self, i: usize) -> f64 {
        curvature_acceleration(&self.moduli, self.kappa[i])
    }

    /// τ' = −2c₁κ'/κ³ since τ = c₁/κ².
    pub fn tau_prime(&self, i: usize) -> f64 {
        let k = self.kappa[i];
        -2.0 * self.moduli.c1 * self.kappa_prime[i] / (k * k * k)
    }

    /// Largest excursion outside [y_low, y_high]; zero when confined.
    pub fn band_violation(&self) -> f64 {
        let (low, high) = equilibria(&self.moduli);
        self.kappa
            .iter()
            .fold(0.0, |a, &k| a.max(low - k).max(k - high))
    }

    /// Arc-length gaps between successive upward crossings of the band midpoint.
    ///
    /// Crossings are located on the cubic Hermite interpolant built from κ and κ'.
    pub fn periods(&self) -> Vec<f64> {
        let (low, high) = equilibria(&self.moduli);
        let mid = 0.5 * (low + high);
        let h = self.step;
        let mut crossings = Vec::new();
        for i in 0..self.len().saturating_sub(1) {
            let (y0, y1) = (self.kappa[i] - mid, self.kappa[i + 1] - mid);
            if y0 < 0.0 && y1 >= 0.0 {
                let (d0, d1) = (self.kappa_prime[i] * h, self.kappa_prime[i + 1] * h);
                let hermite = |t: f64| {
                    let t2 = t * t;
                    let t3 = t2 * t;
                    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
                        + (t3 - 2.0 * t2 + t) * d0
                        + (-2.0 * t3 + 3.0 * t2) * y1
                        + (t3 - t2) * d1
                };
                let (mut a, mut b) = (0.0, 1.0);
                for _ in 0..60 {
                    let c = 0.5 * (a + b);
                    if hermite(c) < 0.0 {
                        a = c;
                    } else {
                        b = c;
                    }
                }
                crossings.push(self.s[i] + 0.5 * (a + b) * h);
            }
        }
        crossings.windows(2).map(|w| w[1] - w[0]).collect()
    }
}
