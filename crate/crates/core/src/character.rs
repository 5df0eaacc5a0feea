//! Characters of the tree Hopf algebra truncated at a fixed degree.

use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Zero};

use crate::hopf::{self, AlgebraElement};
use crate::scalar::{Field, Rational};
use crate::tree::{trees_up_to, Forest, Tree};

/// Truncation used when none is given.
pub const DEFAULT_TRUNCATION: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("tree of degree {degree} exceeds truncation {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },
    #[error("characters truncated at {0} and {1} cannot be combined")]
    TruncationMismatch(usize, usize),
    #[error("invalid character JSON: {0}")]
    Json(String),
}

/// `(value, saturated)`: when saturated the true order is at least `value`,
/// the truncation being too low to witness a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Order {
    pub value: usize,
    pub saturated: bool,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.saturated {
            write!(f, "≥{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// A multiplicative functional on `H`, stored on all trees of degree
/// `1..=truncation`. The value at the empty forest is 1.
#[derive(Clone, PartialEq)]
pub struct Character<S> {
    truncation: usize,
    values: IndexMap<Tree, S>,
}

/// The even/odd factorisation `ψ = ζ⁺ ζ⁻`.
#[derive(Clone, PartialEq)]
pub struct OddEven<S> {
    pub even: Character<S>,
    pub odd: Character<S>,
}

impl<S: Field> Character<S> {
    pub fn from_fn(truncation: usize, mut f: impl FnMut(Tree) -> S) -> Self {
        let values = trees_up_to(truncation)
            .into_iter()
            .map(|t| {
                let v = f(t);
                (t, v)
            })
            .collect();
        Character { truncation, values }
    }

    /// The counit `ε`, zero on every tree.
    pub fn counit(truncation: usize) -> Self {
        Self::from_fn(truncation, |_| S::zero())
    }

    /// The exact-flow character `a(τ) = 1/τ!`.
    pub fn exact_flow(truncation: usize) -> Self {
        Self::from_fn(truncation, |t| S::one() / S::from_i64(t.factorial() as i64))
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn iter(&self) -> impl Iterator<Item = (Tree, &S)> {
        self.values.iter().map(|(t, v)| (*t, v))
    }

    pub fn get(&self, t: Tree) -> Result<&S, CharacterError> {
        self.values.get(&t).ok_or(CharacterError::TruncationExceeded {
            degree: t.size(),
            truncation: self.truncation,
        })
    }

    /// Value at a tree; panics beyond the truncation.
    pub fn value(&self, t: Tree) -> &S {
        self.get(t).expect("tree beyond truncation")
    }

    pub fn set(&mut self, t: Tree, v: S) -> Result<(), CharacterError> {
        match self.values.get_mut(&t) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(CharacterError::TruncationExceeded {
                degree: t.size(),
                truncation: self.truncation,
            }),
        }
    }

    pub fn eval_forest(&self, f: &Forest) -> Result<S, CharacterError> {
        let mut trees = f.trees().iter();
        let Some(&first) = trees.next() else {
            return Ok(S::one());
        };
        let mut acc = self.get(first)?.clone();
        for &t in trees {
            acc *= self.get(t)?;
        }
        Ok(acc)
    }

    /// Linear, multiplicative evaluation of an algebra element.
    pub fn eval(&self, x: &AlgebraElement<Rational>) -> Result<S, CharacterError> {
        let mut acc = S::zero();
        for (f, c) in x.iter() {
            let mut term = self.eval_forest(f)?;
            if !c.is_one() {
                term *= &S::from_rational(c);
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Same truncation, values restricted or required to exist.
    pub fn truncate(&self, truncation: usize) -> Result<Self, CharacterError> {
        if truncation > self.truncation {
            return Err(CharacterError::TruncationExceeded {
                degree: truncation,
                truncation: self.truncation,
            });
        }
        Ok(Character {
            truncation,
            values: self
                .values
                .iter()
                .filter(|(t, _)| t.size() <= truncation)
                .map(|(t, v)| (*t, v.clone()))
                .collect(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<(), CharacterError> {
        if self.truncation == other.truncation {
            Ok(())
        } else {
            Err(CharacterError::TruncationMismatch(
                self.truncation,
                other.truncation,
            ))
        }
    }

    /// `(ψ₁ψ₂)(τ) = Σ_Δ ψ₁(P) ψ₂(R)` at a single tree.
    pub fn convolve_at(&self, other: &Self, t: Tree) -> S {
        let mut acc = S::zero();
        for c in hopf::cuts(t).iter() {
            let mut term = match c.trunk {
                Some(r) if c.pruned.is_empty() => other.value(r).clone(),
                Some(r) => {
                    let mut p = self.eval_forest(&c.pruned).expect("pruned part within truncation");
                    p *= other.value(r);
                    p
                }
                None => self.value(t).clone(),
            };
            if c.multiplicity != 1 {
                term *= &S::from_i64(c.multiplicity as i64);
            }
            acc += &term;
        }
        acc
    }

    /// The convolution (Butcher) product; `ψ₁` is applied first.
    pub fn convolve(&self, other: &Self) -> Self {
        self.check_same(other).expect("convolving characters of different truncation");
        Self::from_fn(self.truncation, |t| self.convolve_at(other, t))
    }

    /// The product on trees of degree at most `d`; zero above.
    fn convolve_up_to(&self, other: &Self, d: usize) -> Self {
        Self::from_fn(self.truncation, |t| {
            if t.size() <= d {
                self.convolve_at(other, t)
            } else {
                S::zero()
            }
        })
    }

    pub fn try_convolve(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check_same(other)?;
        Ok(self.convolve(other))
    }

    /// `ψ⁻¹ = ψ∘S`.
    pub fn inverse(&self) -> Self {
        Self::from_fn(self.truncation, |t| {
            self.eval(&hopf::antipode_tree(t)).expect("antipode is graded")
        })
    }

    /// `ψ̄(τ) = (−1)^{|τ|} ψ(τ)`.
    pub fn bar(&self) -> Self {
        Self::from_fn(self.truncation, |t| {
            let v = self.value(t).clone();
            if t.size() % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    /// `ψ*(τ) = (−1)^{|τ|} ψ(Sτ)`, the character of the adjoint method.
    pub fn adjoint(&self) -> Self {
        self.inverse().bar()
    }

    /// Whether the two characters agree on every tree; floats compare with
    /// [`Field::is_negligible`].
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self
                .values
                .iter()
                .all(|(t, v)| (v.clone() - other.value(*t).clone()).is_negligible())
    }

    /// First degree at which the characters differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.values
            .iter()
            .filter(|(t, v)| match other.get(**t) {
                Ok(w) => !((*v).clone() - w.clone()).is_negligible(),
                Err(_) => false,
            })
            .map(|(t, _)| t.size())
            .min()
    }

    /// Largest `n` with `ψ(τ) = 1/τ!` for all `|τ| ≤ n`.
    pub fn ord(&self) -> Order {
        self.order_by(|t| {
            (self.value(t).clone() - S::one() / S::from_i64(t.factorial() as i64)).is_negligible()
        })
    }

    /// Antisymmetric order: largest `n` with `ψ(τ⁺) = 0` for all `|τ| ≤ n`.
    pub fn ord_plus(&self) -> Order {
        self.order_by(|t| {
            self.eval(&hopf::tau_plus_tree(t))
                .expect("τ⁺ is graded")
                .is_negligible()
        })
    }

    fn order_by(&self, mut holds: impl FnMut(Tree) -> bool) -> Order {
        for n in 1..=self.truncation {
            let ok = self
                .values
                .keys()
                .filter(|t| t.size() == n)
                .all(|&t| holds(t));
            if !ok {
                return Order {
                    value: n - 1,
                    saturated: false,
                };
            }
        }
        Order {
            value: self.truncation,
            saturated: true,
        }
    }

    /// `ψ̄ = ψ⁻¹`.
    pub fn is_odd(&self) -> bool {
        self.bar().agrees_with(&self.inverse())
    }

    /// `ψ̄ = ψ`.
    pub fn is_even(&self) -> bool {
        self.bar().agrees_with(self)
    }

    /// The unique factorisation `ψ = ζ⁺ ζ⁻` with `ζ⁺` even and `ζ⁻` odd.
    ///
    /// Degree by degree, `ψ̄ = ζ⁺ ψ⁻¹ ζ⁺` is linear in the unknown top-degree
    /// values of `ζ⁺` with coefficient 2.
    pub fn odd_even_decompose(&self) -> OddEven<S> {
        let inv = self.inverse();
        let bar = self.bar();
        let half = S::one() / S::from_i64(2);
        let mut even = Self::counit(self.truncation);
        for d in 1..=self.truncation {
            let left = even.convolve_up_to(&inv, d);
            let degree_d: Vec<Tree> = self.values.keys().copied().filter(|t| t.size() == d).collect();
            for t in degree_d {
                let rest = left.convolve_at(&even, t);
                let v = (bar.value(t).clone() - rest) * half.clone();
                even.set(t, v).expect("tree within truncation");
            }
        }
        let odd = even.inverse().convolve(self);
        OddEven { even, odd }
    }

    /// The factorisation with the even factor on the right:
    /// `ψ = (ζ⁺ ζ⁻ (ζ⁺)⁻¹) ζ⁺`.
    pub fn right_factorisation(&self) -> (Self, Self) {
        let OddEven { even, odd } = self.odd_even_decompose();
        let conj = even.convolve(&odd).convolve(&even.inverse());
        (conj, even)
    }

    /// `ψ(τ⁻)` on every tree.
    pub fn minus_via_trees(&self) -> Self {
        Self::from_fn(self.truncation, |t| {
            self.eval(&hopf::tau_minus_tree(t)).expect("τ⁻ is graded")
        })
    }

    /// `ψ(τ⁺)` on every tree.
    pub fn plus_via_trees(&self) -> Self {
        Self::from_fn(self.truncation, |t| {
            self.eval(&hopf::tau_plus_tree(t)).expect("τ⁺ is graded")
        })
    }

    /// `ψ^q = ψ∘Id^q`.
    pub fn power(&self, q: &Rational) -> Self {
        Self::from_fn(self.truncation, |t| {
            self.eval(&hopf::id_power_tree(q, t)).expect("Id^q is graded")
        })
    }

    /// Dilated power `ψ_q(τ) = q^{−|τ|} ψ^q(τ)`.
    pub fn scaled(&self, q: &Rational) -> Self {
        assert!(!q.is_zero(), "dilation by zero");
        let p = self.power(q);
        let qs = S::from_rational(q);
        Self::from_fn(self.truncation, |t| {
            p.value(t).clone() * qs.powi(-(t.size() as i32))
        })
    }

    /// Equality of symmetric components up to the truncation degree.
    pub fn s_equivalent(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self.minus_via_trees().agrees_with(&other.minus_via_trees())
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Character<T> {
        Character {
            truncation: self.truncation,
            values: self.values.iter().map(|(t, v)| (*t, f(v))).collect(),
        }
    }

    pub fn to_float(&self) -> Character<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut values = serde_json::Map::new();
        for (t, v) in &self.values {
            values.insert(t.encoding(), serde_json::Value::String(v.to_text()));
        }
        serde_json::json!({ "truncation": self.truncation, "values": values })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, CharacterError> {
        let bad = |m: &str| CharacterError::Json(m.to_string());
        let truncation = value
            .get("truncation")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing integer field `truncation`"))? as usize;
        let values = value
            .get("values")
            .and_then(|v| v.as_object())
            .ok_or_else(|| bad("missing object field `values`"))?;
        let mut out = Self::counit(truncation);
        let mut seen = 0;
        for (k, v) in values {
            let t = Tree::parse(k).map_err(|e| CharacterError::Json(e.to_string()))?;
            let text = v.as_str().ok_or_else(|| bad("values must be scalar strings"))?;
            let s = S::parse_text(text).map_err(|e| CharacterError::Json(e.to_string()))?;
            out.set(t, s)?;
            seen += 1;
        }
        if seen != out.values.len() {
            return Err(bad("values must cover every tree up to the truncation"));
        }
        Ok(out)
    }
}

impl<S: Field> fmt::Debug for OddEven<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OddEven")
            .field("even", &self.even)
            .field("odd", &self.odd)
            .finish()
    }
}

impl<S: Field> fmt::Debug for Character<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, v) in &self.values {
            m.entry(&t.encoding(), &v.to_text());
        }
        m.finish()
    }
}
