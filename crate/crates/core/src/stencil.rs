//! Finite-difference weights on arbitrary nodes and windowed derivatives of
//! uniformly sampled data.

/// Fornberg's recursion: weights for derivatives 0..=order at `z` from `nodes`.
/// `w[k][j]` multiplies `f(nodes[j])` in the k-th derivative.
pub fn fornberg_weights(z: f64, nodes: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut w = vec![vec![0.0; n]; order + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    w[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (k as f64 * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - k as f64 * w[k - 1][j]) / c3;
            }
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    w
}

/// Derivatives 1..=order of uniformly spaced samples.
///
/// Each sample uses a `width`-point window centred on it where possible and
/// shifted inward at the ends. `out[k-1][i]` is the k-th derivative at i;
/// `one_sided[i]` marks samples whose window is not centred.
pub struct Derivatives {
    pub values: Vec<Vec<f64>>,
    pub one_sided: Vec<bool>,
}

pub fn uniform_derivatives(samples: &[f64], h: f64, order: usize, width: usize) -> Derivatives {
    let n = samples.len();
    assert!(width > order && n >= width, "window too small for data");
    let half = width / 2;
    let mut values = vec![vec![0.0; n]; order];
    let mut one_sided = vec![false; n];
    // central weights are shared by every interior sample
    let central: Vec<f64> = (0..width).map(|j| j as f64 - half as f64).collect();
    let central_w = fornberg_weights(0.0, &central, order);
    for i in 0..n {
        let start = i.saturating_sub(half).min(n - width);
        let centred = start + half == i;
        one_sided[i] = !centred;
        let w = if centred {
            central_w.clone()
        } else {
            let nodes: Vec<f64> = (0..width).map(|j| (start + j) as f64 - i as f64).collect();
            fornberg_weights(0.0, &nodes, order)
        };
        for k in 1..=order {
            let acc: f64 = (0..width).map(|j| w[k][j] * samples[start + j]).sum();
            values[k - 1][i] = acc / h.powi(k as i32);
        }
    }
    Derivatives { values, one_sided }
}
