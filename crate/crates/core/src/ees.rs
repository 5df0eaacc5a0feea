//! Order-condition sets and the explicit effectively symmetric families.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::character::{Character, CharacterError};
use crate::hopf::{self, AlgebraElement};
use crate::rk::ButcherTableau;
use crate::scalar::{int, ratio, Field, QuadExt, Rational, Sqrt2Field};
use crate::tree::{enumerate_trees, Tree};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EesError {
    #[error("parameter x = {0} is a pole of the family")]
    PoleParameter(String),
    #[error("{family} at x = {x} violates {condition}")]
    FormulaInconsistency {
        family: String,
        x: String,
        condition: String,
    },
    #[error("bracket [{lo}, {hi}] contains the pole {pole}")]
    PoleInBracket { lo: f64, hi: f64, pole: f64 },
    #[error("degree {0} is outside 1..=9")]
    Degree(usize),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionKind {
    /// `ψ(τ) = 1/τ!`
    C,
    /// `ψ(τ⁺) = 0`
    EC,
    /// `ψ(τ̃) = ψψ̄(τ) = 0`
    SC,
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionKind::C => "C",
            ConditionKind::EC => "EC",
            ConditionKind::SC => "SC",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConditionItem {
    pub tree: Tree,
    pub target: Arc<AlgebraElement<Rational>>,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct ConditionSet {
    pub kind: ConditionKind,
    pub degree: usize,
    pub items: Vec<ConditionItem>,
}

impl ConditionSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `w(A, n)`: total reduced weight of the targets.
    pub fn reduced_weight(&self, n: usize) -> usize {
        self.items.iter().map(|it| it.target.reduced_weight(n)).sum()
    }

    pub fn weight(&self) -> usize {
        self.items.iter().map(|it| it.target.weight()).sum()
    }

    /// Per-item `ψ(target) − rhs`.
    pub fn residuals<S: Field>(&self, psi: &Character<S>) -> Result<Vec<S>, CharacterError> {
        self.items
            .iter()
            .map(|it| Ok(psi.eval(&it.target)? - S::from_rational(&it.rhs)))
            .collect()
    }

    pub fn is_satisfied<S: Field>(&self, psi: &Character<S>) -> Result<bool, CharacterError> {
        Ok(self.residuals(psi)?.iter().all(Field::is_negligible))
    }
}

pub const MAX_DEGREE: usize = 9;

/// The condition set of the given kind on trees with `i` vertices. `EC` and
/// `SC` keep only trees whose target is nonzero. Results are memoised.
pub fn condition_set(kind: ConditionKind, i: usize) -> Result<Arc<ConditionSet>, EesError> {
    if !(1..=MAX_DEGREE).contains(&i) {
        return Err(EesError::Degree(i));
    }
    type Cache = Mutex<HashMap<(ConditionKind, usize), Arc<ConditionSet>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&(kind, i)) {
        return Ok(hit.clone());
    }
    let items = enumerate_trees(i)
        .iter()
        .filter_map(|&t| {
            let (target, rhs) = match kind {
                ConditionKind::C => (
                    Arc::new(AlgebraElement::tree(t)),
                    ratio(1, t.factorial() as i64),
                ),
                ConditionKind::EC => (hopf::tau_plus_tree(t), int(0)),
                ConditionKind::SC => (hopf::tau_tilde_tree(t), int(0)),
            };
            (kind == ConditionKind::C || !target.is_zero()).then_some(ConditionItem {
                tree: t,
                target,
                rhs,
            })
        })
        .collect();
    let set = Arc::new(ConditionSet {
        kind,
        degree: i,
        items,
    });
    cache
        .lock()
        .expect("cache poisoned")
        .insert((kind, i), set.clone());
    Ok(set)
}

/// `|{τ : target(τ) ≠ 0, 1 ≤ |τ| ≤ p}|` for `EC` / `SC`.
pub fn cumulative_nonzero(kind: ConditionKind, p: usize) -> Result<usize, EesError> {
    (1..=p).map(|i| Ok(condition_set(kind, i)?.len())).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Upper signs of the `±`/`∓` pairs.
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ees25,
    Ees27(Branch),
}

impl Family {
    /// `(ord, ord⁺)` every member satisfies.
    pub fn orders(self) -> (usize, usize) {
        match self {
            Family::Ees25 => (2, 5),
            Family::Ees27(_) => (2, 7),
        }
    }

    pub fn default_bracket(self) -> (f64, f64) {
        match self {
            Family::Ees25 => (-0.4, 0.45),
            Family::Ees27(Branch::Plus) => (-0.2, 0.29),
            Family::Ees27(Branch::Minus) => (-0.7, 0.29),
        }
    }

    /// Real values of `x` at which some coefficient is undefined.
    pub fn poles(self) -> Vec<f64> {
        match self {
            Family::Ees25 => vec![-0.5, 0.5, 1.0],
            Family::Ees27(branch) => {
                let r = branch.sign() as f64 * std::f64::consts::SQRT_2;
                let h = std::f64::consts::FRAC_1_SQRT_2;
                let mut v = vec![
                    0.5,
                    1.0,
                    -h,
                    h,
                    1.0 - h,
                    1.0 + h,
                    (1.0 - r) / 2.0,
                    (2.0 - r) / 2.0,
                ];
                v.sort_by(f64::total_cmp);
                v
            }
        }
    }

    /// `x ↦ ψₓ` in floating point, without validation.
    pub fn float_tableau(self, x: f64) -> Result<ButcherTableau<f64>, EesError> {
        match self {
            Family::Ees25 => ees25_formulas(&x),
            Family::Ees27(branch) => ees27_formulas(&x, branch),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ees25 => f.write_str("EES(2,5)"),
            Family::Ees27(Branch::Plus) => f.write_str("EES(2,7)"),
            Family::Ees27(Branch::Minus) => f.write_str("EES(2,7)-minus"),
        }
    }
}

fn nonzero<S: Field>(d: S, x: &S) -> Result<S, EesError> {
    if d.is_zero() || d.to_f64().abs() < 1e-12 {
        Err(EesError::PoleParameter(x.to_text()))
    } else {
        Ok(d)
    }
}

fn k<S: Field>(n: i64) -> S {
    S::from_i64(n)
}

fn explicit<S: Field>(name: String, lower: [&[S]; 4], b: Vec<S>) -> ButcherTableau<S> {
    let s = b.len();
    let a = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| if j < i { lower[i][j].clone() } else { S::zero() })
                .collect()
        })
        .collect();
    ButcherTableau::new(name, a, b).expect("square by construction")
}

fn ees25_formulas<S: Field>(x: &S) -> Result<ButcherTableau<S>, EesError> {
    let x = x.clone();
    let one = S::one();
    let two_x = k::<S>(2) * x.clone();
    let d1 = nonzero(one.clone() - x.clone(), &x)?;
    let d2 = nonzero(one.clone() - two_x.clone() * two_x.clone(), &x)?;
    let a21 = (one.clone() + two_x.clone()) / (k::<S>(4) * d1.clone());
    let q = k::<S>(4) * x.clone() - one.clone();
    let a31 = q.clone() * q / (k::<S>(-4) * d1.clone() * d2.clone());
    let a32 = d1 / d2;
    let b = vec![
        x.clone(),
        S::from_ratio(1, 2),
        S::from_ratio(1, 2) - x.clone(),
    ];
    Ok(explicit(
        format!("ees25[{}]", x.to_text()),
        [&[], &[a21], &[a31, a32], &[]],
        b,
    ))
}

fn ees27_formulas<S: Sqrt2Field>(x: &S, branch: Branch) -> Result<ButcherTableau<S>, EesError> {
    let x = x.clone();
    let r = S::from_i64(branch.sign()) * S::sqrt2();
    let one = S::one();
    let two = k::<S>(2);
    let four = k::<S>(4);
    let half = S::from_ratio(1, 2);
    let x2 = x.clone() * x.clone();

    let xm1 = nonzero(x.clone() - one.clone(), &x)?;
    let tx1 = nonzero(two.clone() * x.clone() - one.clone(), &x)?;
    let p1 = nonzero(one.clone() - r.clone() - two.clone() * x.clone(), &x)?;
    let p2 = nonzero(two.clone() - r.clone() - two.clone() * x.clone(), &x)?;
    let q1 = nonzero(two.clone() * x2.clone() - one.clone(), &x)?;
    let q2 = nonzero(
        two.clone() * x2.clone() - four.clone() * x.clone() + one.clone(),
        &x,
    )?;

    let b1 = x.clone();
    let b2 = half.clone() * (two.clone() - r.clone()) - (one.clone() - r.clone()) * x.clone();
    let b3 = (one.clone() - r.clone()) * xm1.clone();
    let b4 = half.clone() * (two.clone() - r.clone()) - x.clone();

    let alpha = (two.clone() * x.clone() + r.clone()) / (tx1.clone() * p1.clone());
    let beta = one.clone() / (tx1.clone() * p1 * p2);

    let a21 = (k::<S>(-2) + r.clone() * (one.clone() - two.clone() * x.clone()))
        / (four.clone() * xm1.clone());
    let a31 = (two.clone() * x.clone() + r.clone() - two.clone())
        * (four.clone() * x.clone() + r.clone() - two.clone())
        / (four.clone() * r.clone() * xm1.clone())
        * alpha.clone();
    let a32 = half.clone() * (r.clone() - one.clone()) * alpha;

    let x3 = x2.clone() * x.clone();
    let x4 = x3.clone() * x.clone();
    let quartic = k::<S>(-40) * x4
        + (k::<S>(80) - k::<S>(40) * r.clone()) * x3
        - (k::<S>(88) - k::<S>(60) * r.clone()) * x2
        + (k::<S>(48) - k::<S>(34) * r.clone()) * x.clone()
        + k::<S>(7) * r.clone()
        - k::<S>(10);
    let a41 = (two.clone() * x.clone() - r.clone()) * quartic
        / (four.clone() * xm1.clone() * q1.clone())
        * beta.clone();
    // The general closed form as usually printed carries an extra factor 1/2
    // here; that version fails C(2) and disagrees with the tabulated member at
    // x = (5−3√2)/14. Without it every condition holds.
    let a42 = (two.clone() - r.clone())
        * x.clone()
        * xm1.clone()
        * (four.clone() * x.clone() + r.clone() - two.clone())
        * beta;
    let a43 = (two.clone() - r.clone())
        * (two.clone() * x.clone() - r.clone())
        * (two.clone() + r.clone() - two.clone() * x.clone())
        * xm1
        * tx1
        / (four * q1 * q2);

    let tag = match branch {
        Branch::Plus => "ees27",
        Branch::Minus => "ees27-minus",
    };
    Ok(explicit(
        format!("{tag}[{}]", x.to_text()),
        [&[], &[a21], &[a31, a32], &[a41, a42, a43]],
        vec![b1, b2, b3, b4],
    ))
}

/// Checks `C(1..=ord)` and `EC(ord+1..=ord⁺)` on a freshly built member.
fn validate<S: Field>(
    family: Family,
    t: &ButcherTableau<S>,
    x: &S,
) -> Result<(), EesError> {
    let (ord, ord_plus) = family.orders();
    let psi = t.elementary_weights(ord_plus);
    let checks = (1..=ord)
        .map(|i| (ConditionKind::C, i))
        .chain((ord + 1..=ord_plus).map(|i| (ConditionKind::EC, i)));
    for (kind, i) in checks {
        if !condition_set(kind, i)?.is_satisfied(&psi)? {
            return Err(EesError::FormulaInconsistency {
                family: family.to_string(),
                x: x.to_text(),
                condition: format!("{kind}({i})"),
            });
        }
    }
    Ok(())
}

/// `EES(2,5;x)`: `b = (x, 1/2, 1/2−x)`, `a₂₁ = (1+2x)/(4(1−x))`,
/// `a₃₁ = (4x−1)²/(4(x−1)(1−4x²))`, `a₃₂ = (1−x)/(1−4x²)`; `x ∉ {1, ±1/2}`.
pub fn ees25_tableau<S: Field>(x: &S) -> Result<ButcherTableau<S>, EesError> {
    let t = ees25_formulas(x)?;
    validate(Family::Ees25, &t, x)?;
    Ok(t)
}

/// The four-stage `EES(2,7;x)` family on the chosen sign branch.
pub fn ees27_tableau<S: Sqrt2Field>(x: &S, branch: Branch) -> Result<ButcherTableau<S>, EesError> {
    let t = ees27_formulas(x, branch)?;
    validate(Family::Ees27(branch), &t, x)?;
    Ok(t)
}

/// `x = (2−√2)/4`, the member with simple entries.
pub fn ees27_simple_x() -> QuadExt<2> {
    QuadExt::new(ratio(1, 2), ratio(-1, 4))
}

/// `x = (5−3√2)/14`, the member selected by the objective.
pub fn ees27_optimal_x() -> QuadExt<2> {
    QuadExt::new(ratio(5, 14), ratio(-3, 14))
}

/// `Σ_{|τ|=3} |ψₓ(τ) − 1/τ!| + Σ_{|τ|=m+2} |ψₓ(τ⁺)|` with `m` the family's
/// antisymmetric order.
pub fn objective(family: Family, x: f64) -> Result<f64, EesError> {
    let t = family.float_tableau(x)?;
    let m = family.orders().1;
    let psi = t.elementary_weights(m + 2);
    let c3: f64 = condition_set(ConditionKind::C, 3)?
        .residuals(&psi)?
        .iter()
        .map(|r| r.abs())
        .sum();
    let ec: f64 = condition_set(ConditionKind::EC, m + 2)?
        .residuals(&psi)?
        .iter()
        .map(|r| r.abs())
        .sum();
    Ok(c3 + ec)
}

/// Samples the objective on `[lo, hi]` with the given step.
pub fn scan_objective(family: Family, lo: f64, hi: f64, step: f64) -> Result<Vec<(f64, f64)>, EesError> {
    check_bracket(family, lo, hi)?;
    let n = ((hi - lo) / step).round() as usize;
    (0..=n)
        .map(|i| {
            let x = if i == n { hi } else { lo + i as f64 * step };
            Ok((x, objective(family, x)?))
        })
        .collect()
}

fn check_bracket(family: Family, lo: f64, hi: f64) -> Result<(), EesError> {
    match family.poles().into_iter().find(|p| *p >= lo && *p <= hi) {
        Some(pole) => Err(EesError::PoleInBracket { lo, hi, pole }),
        None => Ok(()),
    }
}

/// Grid scan at step `10⁻³` followed by golden-section refinement around the
/// best sample until the bracket is narrower than `10⁻⁶`.
pub fn minimize_objective(family: Family, bracket: (f64, f64)) -> Result<f64, EesError> {
    let (lo, hi) = bracket;
    let step = 1e-3;
    let samples = scan_objective(family, lo, hi, step)?;
    let (best, _) = samples
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty scan");
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = objective(family, x1)?;
    let mut f2 = objective(family, x2)?;
    while b - a > 1e-6 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = objective(family, x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = objective(family, x2)?;
        }
    }
    Ok((a + b) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q2;

    #[test]
    fn ees25_quarter_is_printed_table() {
        let t = ees25_tableau(&ratio(1, 4)).unwrap();
        assert_eq!(t.a()[1][0], ratio(1, 2));
        assert_eq!(t.a()[2][0], int(0));
        assert_eq!(t.a()[2][1], int(1));
        assert_eq!(t.b(), &[ratio(1, 4), ratio(1, 2), ratio(1, 4)]);
    }

    #[test]
    fn ees25_tenth() {
        let t = ees25_tableau(&ratio(1, 10)).unwrap();
        assert_eq!(t.a()[2][0], ratio(-5, 48));
        assert_eq!(t.a()[2][1], ratio(15, 16));
        assert_eq!(t.c()[1], ratio(1, 3));
    }

    #[test]
    fn poles_rejected() {
        assert!(matches!(
            ees25_tableau(&ratio(1, 2)),
            Err(EesError::PoleParameter(_))
        ));
        assert!(matches!(
            ees27_tableau(&Q2::from_i64(1), Branch::Plus),
            Err(EesError::PoleParameter(_))
        ));
    }

    #[test]
    fn ees27_simple_entries() {
        let t = ees27_tableau(&ees27_simple_x(), Branch::Plus).unwrap();
        let s = |a: i64, b: i64, c: i64, d: i64| QuadExt::<2>::new(ratio(a, b), ratio(c, d));
        assert_eq!(t.a()[1][0], s(1, 1, -1, 2));
        assert_eq!(t.a()[2][0], s(0, 1, 0, 1));
        assert_eq!(t.a()[2][1], s(0, 1, 1, 2));
        assert_eq!(t.a()[3][0], s(1, 1, -1, 2));
        assert_eq!(t.a()[3][1], s(0, 1, 0, 1));
        assert_eq!(t.a()[3][2], s(0, 1, 1, 2));
        assert_eq!(t.b()[3], s(1, 2, -1, 4));
    }

    #[test]
    fn ec_counts_small() {
        assert!(condition_set(ConditionKind::EC, 3).unwrap().is_empty());
        assert!(condition_set(ConditionKind::EC, 5).unwrap().is_empty());
        assert_eq!(cumulative_nonzero(ConditionKind::EC, 4).unwrap(), 5);
    }
}
