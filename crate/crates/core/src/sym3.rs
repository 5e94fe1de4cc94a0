//! Closed-form eigenvalues of a real symmetric 3×3 matrix.

use nalgebra::{Matrix3, Vector3};

/// Sorted eigenvalues (ascending) by the trigonometric method.
///
/// The matrix is read from its upper triangle; no iteration is involved.
pub fn symmetric_eigenvalues(a: &Matrix3<f64>) -> [f64; 3] {
    let (a00, a01, a02) = (a[(0, 0)], a[(0, 1)], a[(0, 2)]);
    let (a11, a12, a22) = (a[(1, 1)], a[(1, 2)], a[(2, 2)]);
    let off = a01 * a01 + a02 * a02 + a12 * a12;
    let q = (a00 + a11 + a22) / 3.0;
    if off == 0.0 {
        let mut d = [a00, a11, a22];
        d.sort_by(f64::total_cmp);
        return d;
    }
    let (b00, b11, b22) = (a00 - q, a11 - q, a22 - q);
    let p2 = b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    // det((A − qI)/p) / 2
    let det = b00 * (b11 * b22 - a12 * a12) - a01 * (a01 * b22 - a12 * a02)
        + a02 * (a01 * a12 - b11 * a02);
    let r = (det / (2.0 * p * p * p)).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + third).cos();
    let middle = 3.0 * q - largest - smallest;
    let mut e = [smallest, middle, largest];
    e.sort_by(f64::total_cmp);
    deflate(a, e).unwrap_or(e)
}

/// Recomputes the close pair of eigenvalues from the 2×2 restriction of `a`
/// to the complement of the isolated eigenvector. The trigonometric formula
/// loses about half the digits when two eigenvalues nearly coincide; the
/// isolated one and its eigenvector stay accurate.
fn deflate(a: &Matrix3<f64>, e: [f64; 3]) -> Option<[f64; 3]> {
    let isolated = if e[1] - e[0] < e[2] - e[1] {
        e[2]
    } else {
        e[0]
    };
    let shifted = a - Matrix3::identity() * isolated;
    let rows = [
        shifted.row(0).transpose(),
        shifted.row(1).transpose(),
        shifted.row(2).transpose(),
    ];
    let v = [
        rows[0].cross(&rows[1]),
        rows[0].cross(&rows[2]),
        rows[1].cross(&rows[2]),
    ]
    .into_iter()
    .max_by(|x, y| x.norm_squared().total_cmp(&y.norm_squared()))?;
    let norm = v.norm();
    if !(norm > 0.0) {
        return None;
    }
    let v = v / norm;
    let helper = if v.x.abs() < 0.6 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let p = (helper - v * v.dot(&helper)).normalize();
    let q = v.cross(&p);
    let (app, aqq, apq) = ((a * p).dot(&p), (a * q).dot(&q), (a * p).dot(&q));
    let mean = 0.5 * (app + aqq);
    let radius = (0.5 * (app - aqq)).hypot(apq);
    let mut out = [isolated, mean - radius, mean + radius];
    out.sort_by(f64::total_cmp);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;
    use proptest::prelude::*;

    #[test]
    fn helix_operator_spectrum() {
        let m = Matrix3::new(0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0);
        let e = symmetric_eigenvalues(&m);
        for (a, b) in e.iter().zip([-1.0, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn diagonal_shortcut() {
        let m = Matrix3::from_diagonal(&nalgebra::Vector3::new(3.0, -1.0, 2.0));
        assert_eq!(symmetric_eigenvalues(&m), [-1.0, 2.0, 3.0]);
    }

    proptest! {
        // Jacobi iteration in nalgebra is the independent oracle.
        #[test]
        fn agrees_with_iterative_solver(v in proptest::array::uniform6(-10.0f64..10.0)) {
            let m = Matrix3::new(v[0], v[1], v[2], v[1], v[3], v[4], v[2], v[4], v[5]);
            let mut oracle: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().cloned().collect();
            oracle.sort_by(f64::total_cmp);
            let e = symmetric_eigenvalues(&m);
            let scale = m.norm().max(1.0);
            for (a, b) in e.iter().zip(oracle) {
                prop_assert!((a - b).abs() <= 1e-9 * scale, "{:?}", e);
            }
        }
    }
}
