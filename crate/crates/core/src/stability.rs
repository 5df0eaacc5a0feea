//! Stability functions, stability domains and order stars.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::character::Character;
use crate::poly::{determinant, Poly};
use crate::rk::ButcherTableau;
use crate::scalar::Field;
use crate::tree::{enumerate_trees, Tree};

/// Real parts must lie below `−A_STABILITY_MARGIN` for a strict verdict.
pub const A_STABILITY_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabilityError {
    #[error("tableau `{0}` is implicit; its stability function is not a polynomial")]
    NotExplicit(String),
    #[error("root finding did not converge: {0}")]
    RootFindingFailure(String),
}

/// `R(z) = P(z)/Q(z)`.
#[derive(Clone, PartialEq)]
pub struct StabilityFunction<S> {
    pub numerator: Poly<S>,
    pub denominator: Poly<S>,
}

impl<S: Field> std::fmt::Debug for StabilityFunction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

impl<S: Field> StabilityFunction<S> {
    /// `P = det(I − zA + z𝟙bᵀ)`, `Q = det(I − zA)`. Explicit tableaux use
    /// `P = 1 + Σₖ bᵀA^{k−1}𝟙 zᵏ` directly, which avoids cancellation in floats.
    pub fn of(t: &ButcherTableau<S>) -> Self {
        let s = t.stages();
        if t.is_explicit() {
            let mut coeffs = vec![S::one()];
            let mut v: Vec<S> = vec![S::one(); s];
            for _ in 0..s {
                coeffs.push(t.b().iter().zip(&v).fold(S::zero(), |acc, (b, x)| acc + b.clone() * x.clone()));
                v = (0..s)
                    .map(|i| (0..i).fold(S::zero(), |acc, j| acc + t.a()[i][j].clone() * v[j].clone()))
                    .collect();
            }
            return StabilityFunction {
                numerator: Poly::new(coeffs),
                denominator: Poly::one(),
            };
        }
        let pencil = |with_b: bool| {
            (0..s)
                .map(|i| {
                    (0..s)
                        .map(|j| {
                            let mut lin = -t.a()[i][j].clone();
                            if with_b {
                                lin = lin + t.b()[j].clone();
                            }
                            let delta = if i == j { S::one() } else { S::zero() };
                            Poly::new(vec![delta, lin])
                        })
                        .collect()
                })
                .collect()
        };
        StabilityFunction {
            numerator: determinant(pencil(true)),
            denominator: determinant(pencil(false)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0) && self.denominator.coeff(0).is_one()
    }

    /// Taylor coefficients of `P/Q` at the origin up to `zⁿ`.
    pub fn series(&self, n: usize) -> Vec<S> {
        let q0 = self.denominator.coeff(0);
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.numerator.coeff(k);
            for (j, r) in out.iter().enumerate() {
                acc -= &(self.denominator.coeff(k - j) * r.clone());
            }
            out.push(acc / q0.clone());
        }
        out
    }

    /// `R(z)/R(−z)`, the stability function of `Ψ ∘ Ψ*`.
    pub fn composed(&self) -> Self {
        StabilityFunction {
            numerator: self.numerator.mul(&self.denominator.reflect()),
            denominator: self.denominator.mul(&self.numerator.reflect()),
        }
    }

    /// `+∞` at a pole.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let q = self.denominator.eval_complex(z);
        if q == Complex64::new(0.0, 0.0) {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        self.numerator.eval_complex(z) / q
    }

    pub fn abs(&self, z: Complex64) -> f64 {
        let v = self.eval(z);
        if v.re.is_infinite() {
            f64::INFINITY
        } else {
            v.norm()
        }
    }

    pub fn to_float(&self) -> StabilityFunction<f64> {
        StabilityFunction {
            numerator: self.numerator.to_float(),
            denominator: self.denominator.to_float(),
        }
    }

    /// Equality of rational functions by cross multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        let lhs = self.numerator.mul(&other.denominator);
        let rhs = other.numerator.mul(&self.denominator);
        let diff = lhs.sub(&rhs);
        diff.coeffs().iter().all(Field::is_negligible)
    }

    /// Supremum of `L` with `|R(−x)| < 1` on `(0, L]`, scanned at `step` up to
    /// `limit`.
    pub fn negative_real_extent(&self, step: f64, limit: f64) -> f64 {
        let mut x = step;
        while x <= limit {
            if self.abs(Complex64::new(-x, 0.0)) >= 1.0 {
                return x - step;
            }
            x += step;
        }
        limit
    }
}

/// `zⁿ` coefficient of the B-series of `ψ` applied to `y' = λy`,
/// `Σ_{|τ|=n} ψ(τ)F(τ)/σ(τ)` with `z = hλ`. On a linear field `F(τ) = λ^{|τ|}`
/// when `τ` is a chain and vanishes otherwise.
pub fn character_series_coefficient<S: Field>(psi: &Character<S>, n: usize) -> S {
    if n == 0 {
        return S::one();
    }
    enumerate_trees(n)
        .iter()
        .filter(|t| linear_differential_is_nonzero(**t))
        .fold(S::zero(), |acc, &t| {
            acc + psi.value(t).clone() / S::from_i64(t.sigma() as i64)
        })
}

/// Whether `F(τ)` is nonzero for a linear vector field, i.e. `τ` is a chain.
pub fn linear_differential_is_nonzero(t: Tree) -> bool {
    match t.children() {
        [] => true,
        [child] => linear_differential_is_nonzero(*child),
        _ => false,
    }
}

/// Compares the `zⁿ` Taylor coefficient of `R` with the character sum.
pub fn char_stability_check<S: Field>(psi: &Character<S>, r: &StabilityFunction<S>, n: usize) -> bool {
    let lhs = r.series(n).pop().expect("n + 1 coefficients");
    (lhs - character_series_coefficient(psi, n)).is_negligible()
}

/// Complex roots via the Schur form of the companion matrix, each checked
/// against `|P(root)| ≤ 10⁻¹⁰·‖P‖`.
pub fn roots<S: Field>(p: &Poly<S>) -> Result<Vec<Complex64>, StabilityError> {
    let p = p.to_float();
    let Some(deg) = p.degree() else {
        return Err(StabilityError::RootFindingFailure("zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p.coeff(deg);
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -p.coeff(i) / lead;
    }
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| StabilityError::RootFindingFailure("Schur iteration cap".into()))?;
    let mut out: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    let pc: Vec<Complex64> = p.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let dp: Vec<Complex64> = (1..pc.len()).map(|i| pc[i] * i as f64).collect();
    let horner = |c: &[Complex64], z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
    for z in &mut out {
        // A few Newton steps tighten the eigenvalue estimates.
        for _ in 0..3 {
            let d = horner(&dp, *z);
            if d.norm() == 0.0 {
                break;
            }
            let next = *z - horner(&pc, *z) / d;
            if horner(&pc, next).norm() >= horner(&pc, *z).norm() {
                break;
            }
            *z = next;
        }
    }
    let tol = 1e-10 * p.norm();
    if let Some(bad) = out.iter().find(|&&z| p.eval_complex(z).norm() > tol) {
        return Err(StabilityError::RootFindingFailure(format!(
            "residual {:e} at {bad}",
            p.eval_complex(*bad).norm()
        )));
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AStability {
    AStable,
    /// Some root lies within the margin of the imaginary axis.
    Marginal,
    NotAStable,
}

impl AStability {
    pub fn is_a_stable(self) -> bool {
        self == AStability::AStable
    }

    pub fn label(self) -> &'static str {
        match self {
            AStability::AStable => "a-stable",
            AStability::Marginal => "marginal",
            AStability::NotAStable => "not a-stable",
        }
    }
}

/// A-stability of the symmetric component of an explicit scheme: decided by
/// the zeros of its stability polynomial.
pub fn a_stable_symmetric_component<S: Field>(
    t: &ButcherTableau<S>,
) -> Result<(AStability, Vec<Complex64>), StabilityError> {
    if !t.is_explicit() {
        return Err(StabilityError::NotExplicit(t.name.clone()));
    }
    let r = StabilityFunction::of(t);
    let zs = roots(&r.numerator)?;
    let worst = zs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let verdict = if worst < -A_STABILITY_MARGIN {
        AStability::AStable
    } else if worst <= A_STABILITY_MARGIN {
        AStability::Marginal
    } else {
        AStability::NotAStable
    };
    Ok((verdict, zs))
}

/// A rectangular window sampled on a regular grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterWindow {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub width: usize,
    pub height: usize,
}

impl Default for RasterWindow {
    fn default() -> Self {
        RasterWindow {
            re: (-6.0, 6.0),
            im: (-6.0, 6.0),
            width: 600,
            height: 600,
        }
    }
}

impl RasterWindow {
    /// Sample point of row `r` (top row is the largest imaginary part) and
    /// column `c`.
    pub fn point(&self, r: usize, c: usize) -> Complex64 {
        let fx = c as f64 / (self.width - 1) as f64;
        let fy = r as f64 / (self.height - 1) as f64;
        Complex64::new(
            self.re.0 + fx * (self.re.1 - self.re.0),
            self.im.1 - fy * (self.im.1 - self.im.0),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterKind {
    /// `|R(z)|`, inside when `< 1`.
    Domain,
    /// `|R(z)| − |eᶻ|`, inside when `> 0`.
    OrderStar,
}

/// Row-major samples; poles hold `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    pub kind: RasterKind,
    pub window: RasterWindow,
    pub values: Vec<f64>,
}

impl RasterGrid {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.window.width + c]
    }

    pub fn inside(&self, r: usize, c: usize) -> bool {
        let v = self.get(r, c);
        match self.kind {
            RasterKind::Domain => v < 1.0,
            RasterKind::OrderStar => v > 0.0,
        }
    }

    /// Fraction of samples inside the region.
    pub fn coverage(&self) -> f64 {
        let w = self.window.width;
        let n = self.values.len();
        (0..n).filter(|&i| self.inside(i / w, i % w)).count() as f64 / n as f64
    }
}

fn raster<S: Field>(r: &StabilityFunction<S>, window: RasterWindow, kind: RasterKind) -> RasterGrid {
    assert!(window.width >= 2 && window.height >= 2, "raster needs at least 2x2 samples");
    let rf = r.to_float();
    let values = (0..window.height)
        .into_par_iter()
        .flat_map_iter(|row| {
            let rf = &rf;
            (0..window.width).map(move |col| {
                let z = window.point(row, col);
                let a = rf.abs(z);
                match kind {
                    RasterKind::Domain => a,
                    RasterKind::OrderStar => a - z.re.exp(),
                }
            })
        })
        .collect();
    RasterGrid {
        kind,
        window,
        values,
    }
}

pub fn raster_domain<S: Field>(r: &StabilityFunction<S>, window: RasterWindow) -> RasterGrid {
    raster(r, window, RasterKind::Domain)
}

pub fn raster_order_star<S: Field>(r: &StabilityFunction<S>, window: RasterWindow) -> RasterGrid {
    raster(r, window, RasterKind::OrderStar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rk::library::*;
    use crate::scalar::{int, ratio, Rational};

    fn poly(c: &[Rational]) -> Poly<Rational> {
        Poly::new(c.to_vec())
    }

    #[test]
    fn euler_and_rk4() {
        let r = StabilityFunction::of(&explicit_euler());
        assert_eq!(r.numerator, poly(&[int(1), int(1)]));
        assert!(r.is_polynomial());
        let r = StabilityFunction::of(&rk4());
        assert_eq!(
            r.numerator,
            poly(&[int(1), int(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)])
        );
    }

    #[test]
    fn midpoint_rational() {
        let r = StabilityFunction::of(&implicit_midpoint());
        assert_eq!(r.numerator, poly(&[int(1), ratio(1, 2)]));
        assert_eq!(r.denominator, poly(&[int(1), ratio(-1, 2)]));
        assert_eq!(r.series(3)[3], ratio(1, 4));
    }

    #[test]
    fn composed_euler() {
        let r = StabilityFunction::of(&explicit_euler()).composed();
        let expect = StabilityFunction {
            numerator: poly(&[int(1), int(1)]),
            denominator: poly(&[int(1), int(-1)]),
        };
        assert!(r.same_function(&expect));
    }

    #[test]
    fn verdicts() {
        assert_eq!(a_stable_symmetric_component(&explicit_euler()).unwrap().0, AStability::AStable);
        assert_eq!(a_stable_symmetric_component(&rk4()).unwrap().0, AStability::AStable);
        let bad = ButcherTableau::new(
            "bad",
            vec![vec![int(0), int(0)], vec![int(1), int(0)]],
            vec![int(2), int(-1)],
        )
        .unwrap();
        assert_eq!(
            StabilityFunction::of(&bad).numerator,
            poly(&[int(1), int(1), int(-1)])
        );
        assert_eq!(a_stable_symmetric_component(&bad).unwrap().0, AStability::NotAStable);
        assert!(a_stable_symmetric_component(&implicit_midpoint()).is_err());
    }

    #[test]
    fn raster_basics() {
        let r = StabilityFunction::of(&explicit_euler());
        let w = RasterWindow {
            re: (-2.0, 0.0),
            im: (-1.0, 1.0),
            width: 3,
            height: 3,
        };
        let g = raster_domain(&r, w);
        assert_eq!(g.get(1, 1), 0.0);
        assert!(g.inside(1, 1));
        assert_eq!(g.get(1, 2), 1.0);
        assert!(!g.inside(1, 2));
    }
}
