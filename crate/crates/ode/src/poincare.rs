//! The section `q₂ = 0, q₁ > 0, q̇₂ > 0` for states laid out as `(q₁, q₂, …)`.

use crate::Ivp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Cubic Hermite through the bracketing states and their derivatives.
    #[default]
    Hermite,
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub t: f64,
    pub state: Vec<f64>,
}

impl Crossing {
    /// `(q₁, q₃, p₁, p₃)` for the 6-dimensional galactic layout.
    pub fn section_coordinates(&self) -> [f64; 4] {
        [self.state[0], self.state[2], self.state[3], self.state[5]]
    }
}

pub struct PoincareSection<'a> {
    f: &'a dyn Ivp,
    mode: Interpolation,
    keep: bool,
    count: u64,
    points: Vec<Crossing>,
    f0: Vec<f64>,
    f1: Vec<f64>,
}

impl<'a> PoincareSection<'a> {
    pub fn new(f: &'a dyn Ivp, mode: Interpolation, keep_points: bool) -> Self {
        let d = f.dim();
        PoincareSection {
            f,
            mode,
            keep: keep_points,
            count: 0,
            points: Vec::new(),
            f0: vec![0.0; d],
            f1: vec![0.0; d],
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn points(&self) -> &[Crossing] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Crossing> {
        self.points
    }

    fn accept(&mut self, t: f64, state: Vec<f64>) {
        self.f.rhs(&state, &mut self.f0);
        if state[0] > 0.0 && self.f0[1] > 0.0 {
            self.count += 1;
            if self.keep {
                self.points.push(Crossing { t, state });
            }
        }
    }

    /// Counts the initial state if it lies exactly on the section.
    pub fn start(&mut self, t: f64, y: &[f64]) {
        if y[1] == 0.0 {
            self.accept(t, y.to_vec());
        }
    }

    /// Examines the step from `prev` at time `t` to `cur` at `t + h`.
    pub fn observe(&mut self, t: f64, h: f64, prev: &[f64], cur: &[f64]) {
        let (a, b) = (prev[1], cur[1]);
        let crosses = (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0);
        if !crosses {
            return;
        }
        if b == 0.0 {
            self.accept(t + h, cur.to_vec());
            return;
        }
        let (theta, state) = match self.mode {
            Interpolation::Linear => {
                let th = a / (a - b);
                let s = prev.iter().zip(cur).map(|(p, c)| p + th * (c - p)).collect();
                (th, s)
            }
            Interpolation::Hermite => {
                self.f.rhs(prev, &mut self.f0);
                self.f.rhs(cur, &mut self.f1);
                let q2 = |th: f64| hermite(th, h, a, b, self.f0[1], self.f1[1]);
                let (mut lo, mut hi) = (0.0, 1.0);
                let up = q2(1.0) > q2(0.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if (q2(mid) < 0.0) == up {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let th = 0.5 * (lo + hi);
                let s = (0..prev.len())
                    .map(|i| hermite(th, h, prev[i], cur[i], self.f0[i], self.f1[i]))
                    .collect();
                (th, s)
            }
        };
        self.accept(t + theta * h, state);
    }
}

/// Cubic Hermite interpolant on `[0, 1]` with endpoint slopes `h·d₀`, `h·d₁`.
fn hermite(th: f64, h: f64, y0: f64, y1: f64, d0: f64, d1: f64) -> f64 {
    let t2 = th * th;
    let t3 = t2 * th;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + th) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * d1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FnProblem;

    /// `q₁ ≡ 1`, `q₂ = sin t`, encoded as a harmonic oscillator in `(q₂, v)`.
    fn synthetic() -> impl Ivp {
        FnProblem::new("synthetic", 3, |y: &[f64], dy: &mut [f64]| {
            dy[0] = 0.0;
            dy[1] = y[2];
            dy[2] = -y[1];
        })
    }

    #[test]
    fn only_upward_crossings() {
        let f = synthetic();
        let mut sec = PoincareSection::new(&f, Interpolation::Hermite, true);
        let h = 0.01;
        let n = 2000;
        sec.start(0.0, &[1.0, 0.0, 1.0]);
        for i in 0..n {
            let t = i as f64 * h;
            let prev = [1.0, t.sin(), t.cos()];
            let t1 = t + h;
            let cur = [1.0, t1.sin(), t1.cos()];
            sec.observe(t, h, &prev, &cur);
        }
        let ts: Vec<f64> = sec.points().iter().map(|c| c.t).collect();
        assert_eq!(ts.len(), 4);
        for (k, t) in ts.iter().enumerate() {
            let expect = 2.0 * std::f64::consts::PI * k as f64;
            assert!((t - expect).abs() < 1e-7, "{t} vs {expect}");
        }
    }
}
