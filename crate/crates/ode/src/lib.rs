//! Fixed-step Runge–Kutta integration of autonomous systems `y' = f(y)`.

mod poincare;
mod problems;

pub use poincare::{Crossing, Interpolation, PoincareSection};
pub use problems::{galactic_p2, galactic_problem, inverse_square_problem, FnProblem, Galactic, InverseSquare, Linear2};

use bsf_core::rk::ButcherTableau;

/// Update tolerance of the implicit stage iteration (∞-norm).
pub const IMPLICIT_TOLERANCE: f64 = 1e-14;
/// Iteration cap of the implicit stage solver.
pub const IMPLICIT_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("implicit stage iteration did not converge at step {step} (last update {update:e})")]
    ImplicitSolveDiverged { step: u64, update: f64 },
    #[error("state dimension {got} does not match the problem dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid step configuration: {0}")]
    InvalidStep(String),
}

/// An autonomous initial value problem.
pub trait Ivp: Sync {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    fn rhs(&self, y: &[f64], dy: &mut [f64]);

    fn initial_state(&self) -> Option<Vec<f64>> {
        None
    }

    fn exact_solution(&self, _t: f64) -> Option<Vec<f64>> {
        None
    }

    fn hamiltonian(&self, _y: &[f64]) -> Option<f64> {
        None
    }
}

/// Reusable stage storage for one tableau and one dimension.
pub struct Stepper {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    explicit: bool,
    k: Vec<Vec<f64>>,
    k_next: Vec<Vec<f64>>,
    tmp: Vec<f64>,
    /// Iterations used by the last implicit solve.
    pub last_iterations: usize,
}

impl Stepper {
    pub fn new(t: &ButcherTableau<f64>, dim: usize) -> Self {
        let s = t.stages();
        Stepper {
            a: t.a().to_vec(),
            b: t.b().to_vec(),
            explicit: t.is_explicit(),
            k: vec![vec![0.0; dim]; s],
            k_next: vec![vec![0.0; dim]; s],
            tmp: vec![0.0; dim],
            last_iterations: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.tmp.len()
    }

    /// Advances `y` by one step of size `h` in place. `step` only labels
    /// errors.
    pub fn step(&mut self, f: &(impl Ivp + ?Sized), y: &mut [f64], h: f64, step: u64) -> Result<(), OdeError> {
        let s = self.b.len();
        let d = y.len();
        if d != self.tmp.len() {
            return Err(OdeError::Dimension { expected: self.tmp.len(), got: d });
        }
        if self.explicit {
            for i in 0..s {
                self.tmp.copy_from_slice(y);
                for j in 0..i {
                    let c = h * self.a[i][j];
                    if c != 0.0 {
                        for (t, kj) in self.tmp.iter_mut().zip(&self.k[j]) {
                            *t += c * kj;
                        }
                    }
                }
                f.rhs(&self.tmp, &mut self.k[i]);
            }
        } else {
            self.solve_stages(f, y, h, step)?;
        }
        for i in 0..s {
            let c = h * self.b[i];
            if c != 0.0 {
                for (yv, ki) in y.iter_mut().zip(&self.k[i]) {
                    *yv += c * ki;
                }
            }
        }
        Ok(())
    }

    /// Fixed-point iteration `Kᵢ ← f(y + h Σⱼ aᵢⱼ Kⱼ)` from `Kᵢ = f(y)`.
    fn solve_stages(&mut self, f: &(impl Ivp + ?Sized), y: &[f64], h: f64, step: u64) -> Result<(), OdeError> {
        let s = self.b.len();
        f.rhs(y, &mut self.tmp);
        for k in &mut self.k {
            k.copy_from_slice(&self.tmp);
        }
        let mut update = f64::INFINITY;
        for it in 1..=IMPLICIT_MAX_ITERATIONS {
            for i in 0..s {
                self.tmp.copy_from_slice(y);
                for j in 0..s {
                    let c = h * self.a[i][j];
                    if c != 0.0 {
                        for (t, kj) in self.tmp.iter_mut().zip(&self.k[j]) {
                            *t += c * kj;
                        }
                    }
                }
                f.rhs(&self.tmp, &mut self.k_next[i]);
            }
            update = 0.0;
            let mut scale: f64 = 1.0;
            for (k, kn) in self.k.iter().zip(&self.k_next) {
                for (a, b) in k.iter().zip(kn) {
                    update = update.max((a - b).abs());
                    scale = scale.max(b.abs());
                }
            }
            std::mem::swap(&mut self.k, &mut self.k_next);
            // Relative to the stage magnitude so that rounding in large
            // states cannot stall the iteration.
            if update <= IMPLICIT_TOLERANCE * scale {
                self.last_iterations = it;
                return Ok(());
            }
        }
        self.last_iterations = IMPLICIT_MAX_ITERATIONS;
        Err(OdeError::ImplicitSolveDiverged { step, update })
    }
}

/// One step of `t` applied to `y`.
pub fn step(t: &ButcherTableau<f64>, f: &(impl Ivp + ?Sized), y: &[f64], h: f64) -> Result<Vec<f64>, OdeError> {
    let mut out = y.to_vec();
    Stepper::new(t, y.len()).step(f, &mut out, h, 0)?;
    Ok(out)
}

/// Number of steps of size `h` covering `[0, t_end]`.
pub fn step_count(h: f64, t_end: f64) -> Result<u64, OdeError> {
    if !(h.is_finite() && h != 0.0 && t_end.is_finite()) || t_end * h.signum() < 0.0 {
        return Err(OdeError::InvalidStep(format!("h = {h}, t_end = {t_end}")));
    }
    let n = (t_end / h).abs().round();
    if n > i32::MAX as f64 {
        return Err(OdeError::InvalidStep(format!("{n} steps exceed 2^31")));
    }
    Ok(n as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `states[n]` is the state after `n` steps.
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory holds y0")
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Streams `n` steps, calling `observe(n, t, previous, current)` after each.
pub fn integrate_streaming<F>(
    t: &ButcherTableau<f64>,
    f: &(impl Ivp + ?Sized),
    y0: &[f64],
    h: f64,
    n: u64,
    mut observe: F,
) -> Result<Vec<f64>, OdeError>
where
    F: FnMut(u64, f64, &[f64], &[f64]),
{
    if y0.len() != f.dim() {
        return Err(OdeError::Dimension { expected: f.dim(), got: y0.len() });
    }
    let mut stepper = Stepper::new(t, y0.len());
    let mut y = y0.to_vec();
    let mut prev = y0.to_vec();
    for i in 1..=n {
        prev.copy_from_slice(&y);
        stepper.step(f, &mut y, h, i)?;
        observe(i, i as f64 * h, &prev, &y);
    }
    Ok(y)
}

/// Stores every state from `y0` to `t_end`.
pub fn integrate(
    t: &ButcherTableau<f64>,
    f: &(impl Ivp + ?Sized),
    y0: &[f64],
    h: f64,
    t_end: f64,
) -> Result<Trajectory, OdeError> {
    let n = step_count(h, t_end)?;
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![y0.to_vec()],
    };
    integrate_streaming(t, f, y0, h, n, |_, time, _, y| {
        traj.times.push(time);
        traj.states.push(y.to_vec());
    })?;
    Ok(traj)
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// `‖y(t_end) − exact(t_end)‖₂`, `None` without an exact solution.
pub fn final_error(
    t: &ButcherTableau<f64>,
    f: &(impl Ivp + ?Sized),
    y0: &[f64],
    h: f64,
    t_end: f64,
) -> Result<Option<f64>, OdeError> {
    let n = step_count(h, t_end)?;
    let y = integrate_streaming(t, f, y0, h, n, |_, _, _, _| {})?;
    Ok(f.exact_solution(n as f64 * h).map(|e| distance(&y, &e)))
}

/// Forward for `t_end/h` steps, then the same number of steps with `−h`;
/// returns `‖y_final − y0‖₂`.
pub fn reversal_error(
    t: &ButcherTableau<f64>,
    f: &(impl Ivp + ?Sized),
    y0: &[f64],
    h: f64,
    t_end: f64,
) -> Result<f64, OdeError> {
    let n = step_count(h, t_end)?;
    let mid = integrate_streaming(t, f, y0, h, n, |_, _, _, _| {})?;
    let back = integrate_streaming(t, f, &mid, -h, n, |_, _, _, _| {})?;
    Ok(distance(&back, y0))
}

/// Online statistics of `H(yₙ) − H(y₀)` over the accepted steps.
#[derive(Debug, Clone, Default)]
pub struct HamiltonianStats {
    h0: f64,
    count: u64,
    sum_abs: f64,
    max_abs: f64,
    // Sums for a least-squares line through (t, H − H₀).
    st: f64,
    stt: f64,
    se: f64,
    ste: f64,
}

impl HamiltonianStats {
    pub fn new(h0: f64) -> Self {
        HamiltonianStats {
            h0,
            ..Default::default()
        }
    }

    pub fn push(&mut self, t: f64, h: f64) {
        let e = h - self.h0;
        self.count += 1;
        self.sum_abs += e.abs();
        self.max_abs = self.max_abs.max(e.abs());
        self.st += t;
        self.stt += t * t;
        self.se += e;
        self.ste += t * e;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Mean of `|H(yₙ) − H(y₀)|`; zero before any step.
    pub fn mae(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum_abs / self.count as f64
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// Slope of the least-squares drift line, per unit time.
    pub fn drift_slope(&self) -> f64 {
        let n = self.count as f64;
        let den = n * self.stt - self.st * self.st;
        if den == 0.0 {
            0.0
        } else {
            (n * self.ste - self.st * self.se) / den
        }
    }
}

/// Hamiltonian statistics of an `n`-step run.
pub fn hamiltonian_mae(
    t: &ButcherTableau<f64>,
    f: &(impl Ivp + ?Sized),
    y0: &[f64],
    h: f64,
    n: u64,
) -> Result<Option<HamiltonianStats>, OdeError> {
    let Some(h0) = f.hamiltonian(y0) else {
        return Ok(None);
    };
    let mut stats = HamiltonianStats::new(h0);
    integrate_streaming(t, f, y0, h, n, |_, time, _, y| {
        stats.push(time, f.hamiltonian(y).expect("hamiltonian available"));
    })?;
    Ok(Some(stats))
}

/// Hamiltonian statistics and Poincaré section from one streaming run.
pub fn galactic_run(
    t: &ButcherTableau<f64>,
    h: f64,
    n: u64,
    interpolation: Interpolation,
    keep_points: bool,
) -> Result<GalacticSummary, OdeError> {
    let g = galactic_problem();
    let y0 = g.initial_state().expect("galactic initial data");
    let mut stats = HamiltonianStats::new(g.hamiltonian(&y0).expect("hamiltonian"));
    let mut section = PoincareSection::new(&g, interpolation, keep_points);
    section.start(0.0, &y0);
    integrate_streaming(t, &g, &y0, h, n, |_, time, prev, y| {
        stats.push(time, g.hamiltonian(y).expect("hamiltonian"));
        section.observe(time - h, h, prev, y);
    })?;
    Ok(GalacticSummary {
        hamiltonian: stats,
        crossings: section.count(),
        points: section.into_points(),
    })
}

#[derive(Debug, Clone)]
pub struct GalacticSummary {
    pub hamiltonian: HamiltonianStats,
    pub crossings: u64,
    /// Empty unless points were requested.
    pub points: Vec<Crossing>,
}
