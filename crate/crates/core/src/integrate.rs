//! Fixed-step classical Runge–Kutta on small fixed-size states.

/// One RK4 step of `y' = f(s, y)` from `s` with step `h`.
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let axpy = |base: &[f64; N], k: &[f64; N], a: f64| -> [f64; N] {
        let mut out = *base;
        for i in 0..N {
            out[i] += a * k[i];
        }
        out
    };
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(s + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(s + h, &axpy(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Splits `[start, end]` into the whole number of steps closest to `h`.
/// Returns `(steps, effective_h)`.
pub fn uniform_steps(start: f64, end: f64, h: f64) -> (usize, f64) {
    let len = end - start;
    let steps = ((len / h).round() as usize).max(1);
    (steps, len / steps as f64)
}

/// `n` equally spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + i as f64 * h })
                .collect()
        }
    }
}
