//! Closed-form reference surfaces: the plane, the Scherk family S_θ and the
//! helicoid.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Rotation3};

use crate::curve::{circular_helix, mirror, scherk_curve, straight_line, SpaceCurve, Vec3};
use crate::error::{Error, Result};
use crate::geometry::{surface_from_curves, TranslationSurface};
use crate::integrate::linspace;

pub const DEFAULT_GRID: usize = 41;

/// Helix-angle extent of the named helicoid fixture.
pub const HELICOID_SPAN: (f64, f64) = (-PI, PI);

/// Fraction of the interval kept clear of the singular lines cx = ±π/2.
pub const SINGULAR_PADDING: f64 = 0.05;

/// S_θ(x, y) = (x + y cos θ, y sin θ, log(cos cy / cos cx) / c).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScherkParams {
    pub c: f64,
    pub theta: f64,
}

impl ScherkParams {
    pub fn new(c: f64, theta: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Scherk scale c = {c} must be positive"
            )));
        }
        if !(0.0..PI).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "Scherk angle θ = {theta} not in [0, π)"
            )));
        }
        Ok(ScherkParams { c, theta })
    }

    /// The padded default interval (−π/2c, π/2c) shrunk by 5% at each end.
    pub fn default_span(&self) -> (f64, f64) {
        let half = FRAC_PI_2 / self.c - SINGULAR_PADDING * PI / self.c;
        (-half, half)
    }

    /// Closed form of S_θ(x, y).
    pub fn point(&self, x: f64, y: f64) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let c = self.c;
        Vec3::new(x + y * ct, y * st, ((c * y).cos() / (c * x).cos()).ln() / c)
    }

    /// The linear map sending the xz-plane generator to the second generator.
    pub fn second_generator_map(&self) -> Matrix3<f64> {
        let rot = Rotation3::from_axis_angle(&Vec3::z_axis(), self.theta);
        rot.matrix() * mirror()
    }
}

/// S_θ as α(s) + β(t): α is the Scherk curve in the xz-plane, β its mirror
/// image rotated by θ about the z-axis.
pub fn scherk_surface(p: ScherkParams, n: usize) -> Result<TranslationSurface> {
    scherk_surface_on(p, p.default_span(), n)
}

/// As [`scherk_surface`] on an explicit x, y interval (same for both).
pub fn scherk_surface_on(
    p: ScherkParams,
    span: (f64, f64),
    n: usize,
) -> Result<TranslationSurface> {
    let (alpha, beta) = scherk_generators(p, span, n)?;
    surface_from_curves(&alpha, &beta)
}

pub fn scherk_generators(
    p: ScherkParams,
    span: (f64, f64),
    n: usize,
) -> Result<(SpaceCurve, SpaceCurve)> {
    let alpha = scherk_curve(p.c, span, n)?;
    let beta = alpha.transformed(&p.second_generator_map(), &Vec3::zeros());
    Ok((alpha, beta))
}

/// X(u, v) = (cos u cos v, sin u cos v, u).
pub fn helicoid_point(u: f64, v: f64) -> Vec3 {
    let (su, cu) = u.sin_cos();
    Vec3::new(cu * v.cos(), su * v.cos(), u)
}

/// α(φ) = (cos φ, sin φ, φ)/2 sampled at the helix angles `phi`; its arc
/// length is φ/√2.
pub fn helicoid_generator(phi: &[f64]) -> SpaceCurve {
    let s: Vec<f64> = phi.iter().map(|p| p / SQRT_2).collect();
    circular_helix(0.5, 0.5, &s).expect("positive radius")
}

/// Ψ(s, t) = α(s) + α(t) over helix angles in `span`, which equals
/// X((s+t)/2, (s−t)/2).
pub fn helicoid_surface(span: (f64, f64), n: usize) -> Result<TranslationSurface> {
    if n < 2 || !(span.1 > span.0) {
        return Err(Error::GridTooCoarse(format!("{n} nodes on {span:?}")));
    }
    let alpha = helicoid_generator(&linspace(span.0, span.1, n));
    surface_from_curves(&alpha, &alpha)
}

/// The sum of two straight lines on [−1, 1]².
pub fn plane_surface(u_dir: &Vec3, v_dir: &Vec3, n: usize) -> Result<TranslationSurface> {
    let (u, v) = (u_dir.normalize(), v_dir.normalize());
    if !(u.cross(&v).norm() > 1e-12) {
        return Err(Error::ParallelDirections);
    }
    if n < 2 {
        return Err(Error::GridTooCoarse(format!("{n} nodes")));
    }
    let s = linspace(-1.0, 1.0, n);
    surface_from_curves(&straight_line(&u, &s), &straight_line(&v, &s))
}

/// Fixtures addressable by name: `plane`, `helicoid`, `scherk:<c>:<theta>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fixture {
    Plane,
    Helicoid,
    Scherk(ScherkParams),
}

impl Fixture {
    /// Builds the fixture on an n×n grid with its default extent.
    pub fn surface(&self, n: usize) -> Result<TranslationSurface> {
        match self {
            Fixture::Plane => plane_surface(&Vec3::x(), &Vec3::y(), n),
            Fixture::Helicoid => helicoid_surface(HELICOID_SPAN, n),
            Fixture::Scherk(p) => scherk_surface(*p, n),
        }
    }

    /// The first generating curve over the same extent, with `n` samples.
    pub fn generator(&self, n: usize) -> Result<SpaceCurve> {
        if n < 2 {
            return Err(Error::GridTooCoarse(format!("{n} samples")));
        }
        match self {
            Fixture::Plane => Ok(straight_line(&Vec3::x(), &linspace(-1.0, 1.0, n))),
            Fixture::Helicoid => Ok(helicoid_generator(&linspace(
                HELICOID_SPAN.0,
                HELICOID_SPAN.1,
                n,
            ))),
            Fixture::Scherk(p) => scherk_curve(p.c, p.default_span(), n),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("fixture {name:?}: {why}"));
        let mut parts = name.split(':');
        match parts.next() {
            Some("plane") if parts.next().is_none() => Ok(Fixture::Plane),
            Some("helicoid") if parts.next().is_none() => Ok(Fixture::Helicoid),
            Some("scherk") => {
                let fields: Vec<&str> = parts.collect();
                let [c, theta] = fields[..] else {
                    return Err(bad("expected scherk:<c>:<theta>"));
                };
                let c: f64 = c.trim().parse().map_err(|_| bad("c is not a number"))?;
                let theta: f64 = theta
                    .trim()
                    .parse()
                    .map_err(|_| bad("theta is not a number"))?;
                Ok(Fixture::Scherk(ScherkParams::new(c, theta)?))
            }
            _ => Err(bad("expected plane, helicoid or scherk:<c>:<theta>")),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Plane => f.write_str("plane"),
            Fixture::Helicoid => f.write_str("helicoid"),
            Fixture::Scherk(p) => write!(f, "scherk:{}:{}", p.c, p.theta),
        }
    }
}
