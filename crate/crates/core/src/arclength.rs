//! Arc-length reparameterization of a regular parametric curve from its speed.
//!
//! The cumulative length is tabulated by composite Gauss–Legendre quadrature;
//! the inverse is found by monotone bracketing on the table followed by
//! safeguarded Newton steps.

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

fn gauss_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    half * GL_NODES
        .iter()
        .zip(GL_WEIGHTS)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

pub struct ArcLength<F: Fn(f64) -> f64> {
    speed: F,
    knots: Vec<f64>,
    cumulative: Vec<f64>,
    origin_offset: f64,
}

impl<F: Fn(f64) -> f64> ArcLength<F> {
    /// Tabulates length over `[u0, u1]` in `panels` panels, measured from `origin`.
    pub fn new(speed: F, u0: f64, u1: f64, origin: f64, panels: usize) -> Self {
        let n = panels.max(1);
        let knots: Vec<f64> = (0..=n)
            .map(|i| u0 + (u1 - u0) * i as f64 / n as f64)
            .collect();
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in knots.windows(2) {
            acc += gauss_legendre(&speed, w[0], w[1]);
            cumulative.push(acc);
        }
        let mut table = ArcLength {
            speed,
            knots,
            cumulative,
            origin_offset: 0.0,
        };
        table.origin_offset = table.raw_length(origin);
        table
    }

    fn panel_of(&self, u: f64) -> usize {
        let n = self.knots.len() - 1;
        let pos = self.knots.partition_point(|&k| k <= u);
        pos.saturating_sub(1).min(n - 1)
    }

    fn raw_length(&self, u: f64) -> f64 {
        let i = self.panel_of(u);
        self.cumulative[i] + gauss_legendre(&self.speed, self.knots[i], u)
    }

    /// Signed arc length from the origin to `u`.
    pub fn length(&self, u: f64) -> f64 {
        self.raw_length(u) - self.origin_offset
    }

    /// Parameter whose signed arc length from the origin is `s`.
    pub fn parameter(&self, s: f64) -> f64 {
        let target = s + self.origin_offset;
        let n = self.knots.len() - 1;
        let i = self
            .cumulative
            .partition_point(|&c| c <= target)
            .saturating_sub(1)
            .min(n - 1);
        let (mut lo, mut hi) = (self.knots[i], self.knots[i + 1]);
        let (c0, c1) = (self.cumulative[i], self.cumulative[i + 1]);
        let mut u = if c1 > c0 {
            lo + (hi - lo) * (target - c0) / (c1 - c0)
        } else {
            lo
        };
        for _ in 0..50 {
            let g = self.cumulative[i] + gauss_legendre(&self.speed, self.knots[i], u) - target;
            if g > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let step = g / (self.speed)(u);
            let mut next = u - step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - u).abs() <= 1e-15 * u.abs().max(1.0) {
                return next;
            }
            u = next;
        }
        u
    }
}
