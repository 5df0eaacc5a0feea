use crate::Ivp;

/// A problem given by a closure.
pub struct FnProblem<F> {
    name: String,
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64]) + Sync> FnProblem<F> {
    pub fn new(name: impl Into<String>, dim: usize, f: F) -> Self {
        FnProblem {
            name: name.into(),
            dim,
            f,
        }
    }
}

impl<F: Fn(&[f64], &mut [f64]) + Sync> Ivp for FnProblem<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        (self.f)(y, dy)
    }
}

/// `y' = λy` for complex `λ = re + i·im`, written as a real 2-system.
#[derive(Debug, Clone, Copy)]
pub struct Linear2 {
    pub re: f64,
    pub im: f64,
}

impl Ivp for Linear2 {
    fn name(&self) -> &str {
        "linear"
    }

    fn dim(&self) -> usize {
        2
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        dy[0] = self.re * y[0] - self.im * y[1];
        dy[1] = self.im * y[0] + self.re * y[1];
    }
}

/// Planar Kepler motion `y₁' = y₃, y₂' = y₄, (y₃, y₄)' = −(y₁, y₂)/r³`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InverseSquare;

pub fn inverse_square_problem() -> InverseSquare {
    InverseSquare
}

impl Ivp for InverseSquare {
    fn name(&self) -> &str {
        "inverse-square"
    }

    fn dim(&self) -> usize {
        4
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        let r2 = y[0] * y[0] + y[1] * y[1];
        let inv = 1.0 / (r2 * r2.sqrt());
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -y[0] * inv;
        dy[3] = -y[1] * inv;
    }

    fn initial_state(&self) -> Option<Vec<f64>> {
        Some(vec![1.0, 0.0, 0.0, 1.0])
    }

    /// Valid for the initial state `[1, 0, 0, 1]`.
    fn exact_solution(&self, t: f64) -> Option<Vec<f64>> {
        let (s, c) = t.sin_cos();
        Some(vec![c, s, -s, c])
    }

    fn hamiltonian(&self, y: &[f64]) -> Option<f64> {
        Some(0.5 * (y[2] * y[2] + y[3] * y[3]) - 1.0 / (y[0] * y[0] + y[1] * y[1]).sqrt())
    }
}

/// A star in a rotating logarithmic galactic potential,
/// `H = ½|p|² + Ω(p₁q₂ − p₂q₁) + A ln(C + q₁²/a² + q₂²/b² + q₃²/c²)`.
/// The state is `(q₁, q₂, q₃, p₁, p₂, p₃)`.
#[derive(Debug, Clone, Copy)]
pub struct Galactic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub big_a: f64,
    pub big_c: f64,
    pub omega: f64,
}

pub fn galactic_problem() -> Galactic {
    Galactic {
        a: 1.25,
        b: 1.0,
        c: 0.75,
        big_a: 1.0,
        big_c: 1.0,
        omega: 0.25,
    }
}

/// Larger root `p₂` of `H = 2` at `q = (2.5, 0, 0)`, `p₁ = 0`, `p₃ = 0.2`:
/// `½p₂² − Ωq₁p₂ + ½p₃² + A ln(C + q₁²/a²) − 2 = 0`.
pub fn galactic_p2(g: &Galactic) -> f64 {
    let (q1, p3) = (2.5, 0.2);
    let lin = g.omega * q1;
    let c0 = 0.5 * p3 * p3 + g.big_a * (g.big_c + q1 * q1 / (g.a * g.a)).ln() - 2.0;
    lin + (lin * lin - 2.0 * c0).sqrt()
}

impl Galactic {
    fn denom(&self, y: &[f64]) -> f64 {
        self.big_c
            + y[0] * y[0] / (self.a * self.a)
            + y[1] * y[1] / (self.b * self.b)
            + y[2] * y[2] / (self.c * self.c)
    }
}

impl Ivp for Galactic {
    fn name(&self) -> &str {
        "galactic"
    }

    fn dim(&self) -> usize {
        6
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        let w = self.omega;
        let k = 2.0 * self.big_a / self.denom(y);
        dy[0] = y[3] + w * y[1];
        dy[1] = y[4] - w * y[0];
        dy[2] = y[5];
        dy[3] = -k * y[0] / (self.a * self.a) + w * y[4];
        dy[4] = -k * y[1] / (self.b * self.b) - w * y[3];
        dy[5] = -k * y[2] / (self.c * self.c);
    }

    fn initial_state(&self) -> Option<Vec<f64>> {
        Some(vec![2.5, 0.0, 0.0, 0.0, galactic_p2(self), 0.2])
    }

    fn hamiltonian(&self, y: &[f64]) -> Option<f64> {
        let kinetic = 0.5 * (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]);
        let rot = self.omega * (y[3] * y[1] - y[4] * y[0]);
        Some(kinetic + rot + self.big_a * self.denom(y).ln())
    }
}
