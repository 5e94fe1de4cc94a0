//! The cubic −λ³ + c₂λ² − c₃λ + c₁ = 0 and its two representations:
//! coefficients (c₁, c₂, c₃) and sorted real roots (λ₁, λ₂, λ₃).
//!
//! Every valid parameter set is stored in canonical form λ₁ ≤ λ₂ < 0 < λ₃.
//! Sets with two positive roots are negated into that form and carry
//! `mirrored = true`; the constructed curve is reflected on output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients and roots of the characteristic cubic, in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModuliRepr")]
pub struct Moduli {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub roots: [f64; 3],
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub mirrored: bool,
}

#[derive(Deserialize)]
struct ModuliRepr {
    c1: f64,
    c2: f64,
    c3: f64,
    roots: [f64; 3],
    #[serde(default)]
    mirrored: bool,
}

impl TryFrom<ModuliRepr> for Moduli {
    type Error = Error;

    fn try_from(r: ModuliRepr) -> Result<Self> {
        let m = Moduli {
            c1: r.c1,
            c2: r.c2,
            c3: r.c3,
            roots: r.roots,
            mirrored: r.mirrored,
        };
        m.validate()?;
        Ok(m)
    }
}

/// Vieta: (c1, c2, c3) = (λ1λ2λ3, λ1+λ2+λ3, λ1λ2+λ1λ3+λ2λ3).
fn vieta(l: [f64; 3]) -> (f64, f64, f64) {
    (
        l[0] * l[1] * l[2],
        l[0] + l[1] + l[2],
        l[0] * l[1] + l[0] * l[2] + l[1] * l[2],
    )
}

fn sorted(mut l: [f64; 3]) -> [f64; 3] {
    l.sort_by(f64::total_cmp);
    l
}

/// Classifies sorted roots: `Ok(false)` canonical, `Ok(true)` needs the mirror.
fn sign_pattern(l: [f64; 3]) -> Result<bool> {
    if let Some(i) = l.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroRoot(i));
    }
    let negatives = l.iter().filter(|&&x| x < 0.0).count();
    match negatives {
        2 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::SameSign(l)),
    }
}

/// Builds the moduli from three roots, in any order and either sign case.
pub fn coefficients_from_roots(l1: f64, l2: f64, l3: f64) -> Result<Moduli> {
    let given = [l1, l2, l3];
    if given.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidModuli(format!(
            "non-finite root in {given:?}"
        )));
    }
    let s = sorted(given);
    let mirrored = sign_pattern(s)?;
    let roots = if mirrored {
        sorted([-s[0], -s[1], -s[2]])
    } else {
        s
    };
    let (c1, c2, c3) = vieta(roots);
    Ok(Moduli {
        c1,
        c2,
        c3,
        roots,
        mirrored,
    })
}

/// Discriminant of λ³ − c₂λ² + c₃λ − c₁; equals ∏_{i<j} (λi − λj)².
pub fn discriminant(c1: f64, c2: f64, c3: f64) -> f64 {
    18.0 * c1 * c2 * c3 - 4.0 * c1 * c2.powi(3) + c2 * c2 * c3 * c3
        - 4.0 * c3.powi(3)
        - 27.0 * c1 * c1
}

/// Value of −λ³ + c₂λ² − c₃λ + c₁ (Horner).
pub fn cubic(c1: f64, c2: f64, c3: f64, x: f64) -> f64 {
    ((-x + c2) * x - c3) * x + c1
}

fn cubic_derivative(c2: f64, c3: f64, x: f64) -> f64 {
    (-3.0 * x + 2.0 * c2) * x - c3
}

/// Homogeneous magnitude of the roots, used to scale tolerances.
fn root_scale(c1: f64, c2: f64, c3: f64) -> f64 {
    c2.abs().max(c3.abs().sqrt()).max(c1.abs().cbrt())
}

/// Three real roots of −λ³ + c₂λ² − c₃λ + c₁, ascending, by the
/// trigonometric method followed by Newton polishing.
pub fn real_roots(c1: f64, c2: f64, c3: f64) -> Result<[f64; 3]> {
    let scale = root_scale(c1, c2, c3);
    let disc = discriminant(c1, c2, c3);
    if disc < -1e-12 * scale.powi(6) {
        return Err(Error::ComplexRoots(disc));
    }
    // monic form λ³ + bλ² + cλ + d, depressed by λ = x − b/3
    let (b, c, d) = (-c2, c3, -c1);
    let shift = -b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b.powi(3) / 27.0 - b * c / 3.0 + d;
    let mut roots = if p >= 0.0 {
        // only reachable with a (near) triple root
        [shift; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = std::f64::consts::TAU;
        [
            shift + r * theta.cos(),
            shift + r * (theta - tau / 3.0).cos(),
            shift + r * (theta - 2.0 * tau / 3.0).cos(),
        ]
    };
    for x in roots.iter_mut() {
        *x = polish(c1, c2, c3, *x);
    }
    Ok(sorted(roots))
}

fn polish(c1: f64, c2: f64, c3: f64, mut x: f64) -> f64 {
    for _ in 0..8 {
        let f = cubic(c1, c2, c3, x);
        let df = cubic_derivative(c2, c3, x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        // near a double root Newton can wander; keep only improvements
        if cubic(c1, c2, c3, next).abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}

/// Recovers the moduli from the coefficients of −λ³ + c₂λ² − c₃λ + c₁.
pub fn roots_from_coefficients(c1: f64, c2: f64, c3: f64) -> Result<Moduli> {
    if !(c1.is_finite() && c2.is_finite() && c3.is_finite()) {
        return Err(Error::InvalidModuli("non-finite coefficient".into()));
    }
    if c1 == 0.0 {
        return Err(Error::ZeroC1);
    }
    let roots = real_roots(c1, c2, c3)?;
    let mirrored = sign_pattern(roots)?;
    Ok(if mirrored {
        Moduli {
            c1: -c1,
            c2: -c2,
            c3,
            roots: sorted([-roots[0], -roots[1], -roots[2]]),
            mirrored,
        }
    } else {
        Moduli {
            c1,
            c2,
            c3,
            roots,
            mirrored,
        }
    })
}

/// True when λ₁ and λ₂ coincide to within `tol` (relative above 1).
pub fn is_double_root(m: &Moduli, tol: f64) -> bool {
    (m.roots[0] - m.roots[1]).abs() <= tol * m.roots[0].abs().max(1.0)
}

impl Moduli {
    pub fn lambda1(&self) -> f64 {
        self.roots[0]
    }

    pub fn lambda2(&self) -> f64 {
        self.roots[1]
    }

    pub fn lambda3(&self) -> f64 {
        self.roots[2]
    }

    /// Coefficients as the caller supplied them, before the mirror rule.
    pub fn given_coefficients(&self) -> (f64, f64, f64) {
        if self.mirrored {
            (-self.c1, -self.c2, self.c3)
        } else {
            (self.c1, self.c2, self.c3)
        }
    }

    /// Roots as the caller supplied them, before the mirror rule.
    pub fn given_roots(&self) -> [f64; 3] {
        if self.mirrored {
            sorted(self.roots.map(|x| -x))
        } else {
            self.roots
        }
    }

    /// Largest |p(λi)| over the stored roots, relative to the largest coefficient.
    pub fn root_residual(&self) -> f64 {
        let scale = 1f64
            .max(self.c1.abs())
            .max(self.c2.abs())
            .max(self.c3.abs());
        self.roots
            .iter()
            .map(|&x| cubic(self.c1, self.c2, self.c3, x).abs())
            .fold(0.0, f64::max)
            / scale
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.c1,
            self.c2,
            self.c3,
            self.roots[0],
            self.roots[1],
            self.roots[2],
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidModuli("non-finite value".into()));
        }
        if self.c1 == 0.0 {
            return Err(Error::ZeroC1);
        }
        let [l1, l2, l3] = self.roots;
        if !(l1 <= l2 && l2 < 0.0 && 0.0 < l3) {
            return Err(Error::InvalidModuli(format!(
                "roots {:?} are not in canonical order λ1 ≤ λ2 < 0 < λ3",
                self.roots
            )));
        }
        let (c1, c2, c3) = vieta(self.roots);
        let scale = root_scale(c1, c2, c3);
        let close = |a: f64, b: f64, deg: i32| (a - b).abs() <= 1e-12 * scale.powi(deg).max(1.0);
        if !(close(c1, self.c1, 3) && close(c2, self.c2, 1) && close(c3, self.c3, 2)) {
            return Err(Error::InvalidModuli(format!(
                "coefficients ({}, {}, {}) do not match the roots {:?}",
                self.c1, self.c2, self.c3, self.roots
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line() as u64,
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("moduli serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_examples_from_roots() {
        let m = coefficients_from_roots(-1.0, -1.0, 1.0).unwrap();
        assert_eq!((m.c1, m.c2, m.c3), (1.0, -1.0, -1.0));
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        assert_eq!((m.c1, m.c2, m.c3), (4.0, -4.0, -1.0));
        let m = coefficients_from_roots(1.0, -2.0, -1.0).unwrap();
        assert_eq!((m.c1, m.c2, m.c3), (2.0, -2.0, -1.0));
        assert_eq!(m.roots, [-2.0, -1.0, 1.0]);
    }

    #[test]
    fn rejects_zero_and_same_sign() {
        assert!(matches!(
            coefficients_from_roots(0.0, -1.0, 1.0),
            Err(Error::ZeroRoot(_))
        ));
        assert!(matches!(
            coefficients_from_roots(1.0, 2.0, 3.0),
            Err(Error::SameSign(_))
        ));
        assert!(matches!(
            coefficients_from_roots(-1.0, -2.0, -3.0),
            Err(Error::SameSign(_))
        ));
    }

    #[test]
    fn mirror_rule_negates_roots() {
        let m = coefficients_from_roots(4.0, 1.0, -1.0).unwrap();
        assert!(m.mirrored);
        assert_eq!(m.roots, [-4.0, -1.0, 1.0]);
        assert_eq!(m.given_coefficients(), (-4.0, 4.0, -1.0));
        assert_eq!(m.given_roots(), [-1.0, 1.0, 4.0]);
        let back = roots_from_coefficients(-4.0, 4.0, -1.0).unwrap();
        assert!(back.mirrored);
        for (a, b) in back.roots.iter().zip(m.roots) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_of_worked_examples() {
        let m = roots_from_coefficients(1.0, -1.0, -1.0).unwrap();
        for (a, b) in m.roots.iter().zip([-1.0, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-7, "{:?}", m.roots);
        }
        assert!(is_double_root(&m, 1e-6));
        let m = roots_from_coefficients(4.0, -4.0, -1.0).unwrap();
        for (a, b) in m.roots.iter().zip([-4.0, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12, "{:?}", m.roots);
        }
    }

    #[test]
    fn complex_roots_detected() {
        // Independent count of real roots: p(λ) = −λ³ − 3λ + 1 has p' = −3λ² − 3,
        // which never changes sign on a dense scan, so p is strictly monotone.
        let derivative_signs: Vec<bool> = (-2000..=2000)
            .map(|i| i as f64 * 0.01)
            .map(|x| -3.0 * x * x - 3.0 < 0.0)
            .collect();
        assert!(derivative_signs.iter().all(|&s| s));
        // Frozen: Δ = −4c₃³ − 27c₁² = −108 − 27.
        assert_eq!(discriminant(1.0, 0.0, 3.0), -135.0);
        assert!(matches!(
            roots_from_coefficients(1.0, 0.0, 3.0),
            Err(Error::ComplexRoots(_))
        ));
        assert!(matches!(
            roots_from_coefficients(0.0, 1.0, 1.0),
            Err(Error::ZeroC1)
        ));
    }

    #[test]
    fn discriminant_matches_factored_form() {
        for l in [[-4.0, -1.0, 1.0], [-2.0, -1.0, 1.0], [-3.5, -0.25, 2.0]] {
            let (c1, c2, c3) = vieta(l);
            let prod = (l[0] - l[1]).powi(2) * (l[0] - l[2]).powi(2) * (l[1] - l[2]).powi(2);
            assert!((discriminant(c1, c2, c3) - prod).abs() < 1e-9 * prod.max(1.0));
        }
    }

    #[test]
    fn double_root_tolerance() {
        let m = coefficients_from_roots(-1.0, -1.0, 1.0).unwrap();
        assert!(is_double_root(&m, 1e-9));
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        assert!(!is_double_root(&m, 1e-9));
        let m = coefficients_from_roots(-1.0 - 5e-10, -1.0, 1.0).unwrap();
        assert!(is_double_root(&m, 1e-9));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = coefficients_from_roots(-4.0, -1.0, 1.0).unwrap();
        let text = m.to_json();
        assert!(!text.contains("mirrored"));
        assert_eq!(Moduli::from_json(&text).unwrap(), m);
        let bad = r#"{"c1": 5.0, "c2": -4.0, "c3": -1.0, "roots": [-4.0, -1.0, 1.0]}"#;
        assert!(Moduli::from_json(bad).is_err());
        let unsorted = r#"{"c1": 4.0, "c2": -4.0, "c3": -1.0, "roots": [-1.0, -4.0, 1.0]}"#;
        assert!(Moduli::from_json(unsorted).is_err());
        assert!(matches!(
            Moduli::from_json("{\"c1\":"),
            Err(Error::Parse { .. })
        ));
    }

    fn mixed_roots() -> impl Strategy<Value = [f64; 3]> {
        // separated roots: the root map is ill-conditioned near a double root
        (0.05f64..5.0, 0.05f64..5.0, 0.05f64..5.0, 0.02f64..1.0).prop_map(|(a, gap, c, rel)| {
            let l2 = -a;
            let l1 = -a - gap.max(rel * a);
            [l1, l2, c]
        })
    }

    proptest! {
        #[test]
        fn round_trip_roots(l in mixed_roots()) {
            let m = coefficients_from_roots(l[2], l[0], l[1]).unwrap();
            prop_assert_eq!(m.roots, l);
            let back = roots_from_coefficients(m.c1, m.c2, m.c3).unwrap();
            for (a, b) in back.roots.iter().zip(l) {
                prop_assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{:?} vs {:?}", back.roots, l);
            }
            prop_assert!(back.root_residual() <= 1e-10);
            prop_assert!(back.validate().is_ok());
        }

        #[test]
        fn canonical_after_construction(l in mixed_roots(), flip in any::<bool>()) {
            let l = if flip { l.map(|x| -x) } else { l };
            let m = coefficients_from_roots(l[0], l[1], l[2]).unwrap();
            prop_assert!(m.roots[0] <= m.roots[1] && m.roots[1] < 0.0 && 0.0 < m.roots[2]);
            prop_assert_eq!(m.mirrored, flip);
            prop_assert!(m.root_residual() <= 1e-10);
        }
    }
}
