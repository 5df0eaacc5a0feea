//! The Butcher–Connes–Kreimer Hopf algebra of rooted forests.
//!
//! All structure maps here are algebra morphisms of `H`, so each is defined on
//! trees and extended multiplicatively. Images of trees and forests are
//! memoised process-wide; computations never hold a cache lock while
//! recursing.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::scalar::{Field, Rational};
use crate::tree::{enumerate_trees, Forest, Tree};

/// A finite linear combination of forests. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<S> {
    terms: HashMap<Forest, S>,
}

impl<S: Field> Default for AlgebraElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Field> AlgebraElement<S> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: HashMap::new(),
        }
    }

    /// The unit, i.e. the empty forest.
    pub fn one() -> Self {
        Self::forest(Forest::empty())
    }

    pub fn forest(f: Forest) -> Self {
        let mut x = Self::zero();
        x.terms.insert(f, S::one());
        x
    }

    pub fn tree(t: Tree) -> Self {
        Self::forest(Forest::single(t))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Forest, S)>) -> Self {
        let mut x = Self::zero();
        for (f, c) in terms {
            x.add_term(f, c);
        }
        x
    }

    pub fn add_term(&mut self, f: Forest, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(f) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (f, v) in &other.terms {
            self.add_term(f.clone(), v.clone() * c.clone());
        }
    }

    /// `self += c · x · y`.
    pub fn add_product(&mut self, x: &Self, y: &Self, c: &S) {
        for (fx, cx) in &x.terms {
            let cxc = cx.clone() * c.clone();
            for (fy, cy) in &y.terms {
                self.add_term(fx.mul(fy), cxc.clone() * cy.clone());
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_product(self, other, &S::one());
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn coefficient(&self, f: &Forest) -> S {
        self.terms.get(f).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Forest, &S)> {
        self.terms.iter()
    }

    /// Terms in canonical forest order.
    pub fn sorted_terms(&self) -> Vec<(&Forest, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// True when every forest has exactly `degree` vertices.
    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|f| f.size() == degree)
    }

    pub fn map_coefficients<T: Field>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        AlgebraElement::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), f(v))))
    }

    /// Total number of vertices over all monomials with nonzero coefficient.
    pub fn weight(&self) -> usize {
        self.terms.keys().map(Forest::size).sum()
    }

    /// Weight after substituting `1/τ!` for every tree with at most `n` vertices.
    pub fn reduced_weight(&self, n: usize) -> usize {
        self.substitute_small_trees(n).weight()
    }

    /// Replaces every tree factor with `|τ| ≤ n` by the scalar `1/τ!`.
    pub fn substitute_small_trees(&self, n: usize) -> Self {
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &t in f.trees() {
                if t.size() <= n {
                    coeff = coeff / S::from_i64(t.factorial() as i64);
                } else {
                    kept.push(t);
                }
            }
            out.add_term(Forest::new(kept), coeff);
        }
        out
    }

    /// Drops factors of • from every monomial, keeping a single • when a
    /// monomial is a pure power of •. Used for compact display only.
    pub fn bullet_reduced(&self) -> Self {
        let leaf = Tree::leaf();
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            let kept: Vec<Tree> = f.trees().iter().copied().filter(|&t| t != leaf).collect();
            let reduced = if kept.is_empty() && !f.is_empty() {
                Forest::single(leaf)
            } else {
                Forest::new(kept)
            };
            out.add_term(reduced, c.clone());
        }
        out
    }

    /// Inverse of [`bullet_reduced`](Self::bullet_reduced) for homogeneous
    /// elements: pads every monomial with • up to `degree` vertices.
    pub fn bullet_reinstated(&self, degree: usize) -> Self {
        let leaf = Tree::leaf();
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            let mut g = f.clone();
            let mut size = g.size();
            if size == 1 && g.trees() == [leaf] && degree > 0 {
                g = Forest::empty();
                size = 0;
            }
            for _ in size..degree {
                g.push(leaf);
            }
            out.add_term(g, c.clone());
        }
        out
    }

    /// One `coeff * forest` line per term, canonical order.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (f, c) in self.sorted_terms() {
            s.push_str(&c.to_text());
            s.push_str(" * ");
            s.push_str(&f.encoding());
            s.push('\n');
        }
        s
    }
}

impl<S: Field> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Field> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (forest, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", c.to_text(), forest.encoding())?;
        }
        Ok(())
    }
}

/// A finite linear combination of `left ⊗ right` forest pairs.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorElement<S> {
    terms: HashMap<(Forest, Forest), S>,
}

impl<S: Field> TensorElement<S> {
    pub fn zero() -> Self {
        TensorElement {
            terms: HashMap::new(),
        }
    }

    pub fn unit() -> Self {
        let mut t = Self::zero();
        t.add_term(Forest::empty(), Forest::empty(), S::one());
        t
    }

    pub fn add_term(&mut self, left: Forest, right: Forest, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let remove = {
            let e = self.terms.entry(key.clone()).or_insert_with(S::zero);
            *e += &c;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term(l1.mul(l2), r1.mul(r2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn coefficient(&self, left: &Forest, right: &Forest) -> S {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Forest, &Forest, &S)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn sorted_terms(&self) -> Vec<(&Forest, &Forest, &S)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        v
    }

    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (l, r, c) in self.sorted_terms() {
            s.push_str(&format!("{} * {} ⊗ {}\n", c.to_text(), l.encoding(), r.encoding()));
        }
        s
    }
}

/// One admissible cut of a tree: the pruned forest, the trunk containing the
/// root (absent for the total cut `τ ⊗ ∅`), and how many cuts produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTerm {
    pub pruned: Forest,
    pub trunk: Option<Tree>,
    pub multiplicity: u64,
}

impl CutTerm {
    pub fn is_trivial(&self) -> bool {
        self.pruned.is_empty() || self.trunk.is_none()
    }

    fn trunk_forest(&self) -> Forest {
        match self.trunk {
            Some(t) => Forest::single(t),
            None => Forest::empty(),
        }
    }
}

type CutCache = RwLock<HashMap<Tree, Arc<[CutTerm]>>>;

fn cut_cache() -> &'static CutCache {
    static CACHE: OnceLock<CutCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All terms of `Δ(τ)`, including `τ ⊗ ∅` and `∅ ⊗ τ`, in canonical order.
///
/// Uses `Δ(B₊(x)) = B₊(x) ⊗ ∅ + (Id ⊗ B₊) Δ(x)`.
pub fn cuts(t: Tree) -> Arc<[CutTerm]> {
    if let Some(c) = cut_cache().read().expect("cut cache poisoned").get(&t) {
        return c.clone();
    }
    let mut acc: HashMap<(Forest, Forest), u64> = HashMap::new();
    acc.insert((Forest::empty(), Forest::empty()), 1);
    for &child in t.children() {
        let child_cuts = cuts(child);
        let mut next: HashMap<(Forest, Forest), u64> = HashMap::with_capacity(acc.len() * child_cuts.len());
        for ((p, r), m) in &acc {
            for term in child_cuts.iter() {
                let key = (p.mul(&term.pruned), r.mul(&term.trunk_forest()));
                let add = m
                    .checked_mul(term.multiplicity)
                    .expect("cut multiplicity overflow");
                *next.entry(key).or_insert(0) += add;
            }
        }
        acc = next;
    }
    let mut out: Vec<CutTerm> = acc
        .into_iter()
        .map(|((pruned, trunk), multiplicity)| CutTerm {
            pruned,
            trunk: Some(Tree::b_plus(&trunk)),
            multiplicity,
        })
        .collect();
    out.push(CutTerm {
        pruned: Forest::single(t),
        trunk: None,
        multiplicity: 1,
    });
    out.sort_by(|a, b| (&a.pruned, a.trunk).cmp(&(&b.pruned, b.trunk)));
    let out: Arc<[CutTerm]> = out.into();
    cut_cache()
        .write()
        .expect("cut cache poisoned")
        .insert(t, out.clone());
    out
}

/// `Δ(τ)` as a tensor.
pub fn coproduct_tree(t: Tree) -> TensorElement<Rational> {
    let mut out = TensorElement::zero();
    for c in cuts(t).iter() {
        out.add_term(c.pruned.clone(), c.trunk_forest(), int(c.multiplicity));
    }
    out
}

/// `Δ(f)`, extended multiplicatively over the trees of `f`.
pub fn coproduct(f: &Forest) -> TensorElement<Rational> {
    f.trees()
        .iter()
        .fold(TensorElement::unit(), |acc, &t| acc.mul(&coproduct_tree(t)))
}

/// `δ(f) = Δ(f) − f ⊗ ∅ − ∅ ⊗ f`.
pub fn reduced_coproduct(f: &Forest) -> TensorElement<Rational> {
    let mut d = coproduct(f);
    if !f.is_empty() {
        d.add_term(f.clone(), Forest::empty(), -Rational::one());
        d.add_term(Forest::empty(), f.clone(), -Rational::one());
    }
    d
}

/// `Δ` applied linearly to an element.
pub fn coproduct_element(x: &AlgebraElement<Rational>) -> TensorElement<Rational> {
    let mut out = TensorElement::zero();
    for (f, c) in x.iter() {
        for (l, r, v) in coproduct(f).iter() {
            out.add_term(l.clone(), r.clone(), c.clone() * v.clone());
        }
    }
    out
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sign(degree: usize) -> Rational {
    if degree.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Target of an `n`-th root computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum RootBase {
    /// Convolution power `Id^m`.
    Id(i64),
    /// `ν = μ∘(S̄ ⊗ Id)∘Δ`, whose square root is `(·)⁻`.
    Nu,
}

/// Memoisation key for the algebra morphisms of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum MapKey {
    Antipode,
    AntipodeBar,
    Nu,
    /// Integer convolution power of the identity.
    IdPow(i64),
    /// `j`-th convolution power of the `n`-th root of `base`.
    Root { base: RootBase, n: u32, j: u32 },
    Plus,
    PlusLiteral,
    Tilde,
}

type MapCache = RwLock<HashMap<(MapKey, Forest), Arc<AlgebraElement<Rational>>>>;

fn map_cache() -> &'static MapCache {
    static CACHE: OnceLock<MapCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(key: MapKey, f: &Forest) -> Option<Arc<AlgebraElement<Rational>>> {
    map_cache()
        .read()
        .expect("hopf cache poisoned")
        .get(&(key, f.clone()))
        .cloned()
}

fn store(key: MapKey, f: Forest, value: AlgebraElement<Rational>) -> Arc<AlgebraElement<Rational>> {
    let value = Arc::new(value);
    map_cache()
        .write()
        .expect("hopf cache poisoned")
        .entry((key, f))
        .or_insert(value)
        .clone()
}

fn on_forest(key: MapKey, f: &Forest) -> Arc<AlgebraElement<Rational>> {
    if let Some(t) = f.as_tree() {
        return on_tree(key, t);
    }
    if f.is_empty() {
        return Arc::new(AlgebraElement::one());
    }
    if let Some(v) = cached(key, f) {
        return v;
    }
    let trees = f.trees();
    let (last, init) = trees.split_last().expect("nonempty forest");
    let head = on_forest(key, &Forest::new(init.to_vec()));
    let value = head.mul(&on_tree(key, *last));
    store(key, f.clone(), value)
}

fn on_element(key: MapKey, x: &AlgebraElement<Rational>) -> AlgebraElement<Rational> {
    let mut out = AlgebraElement::zero();
    for (f, c) in x.iter() {
        out.add_scaled(&on_forest(key, f), c);
    }
    out
}

fn on_tree(key: MapKey, t: Tree) -> Arc<AlgebraElement<Rational>> {
    let single = Forest::single(t);
    if let Some(v) = cached(key, &single) {
        return v;
    }
    if let MapKey::Root { base, n, .. } = key {
        compute_root(base, n, t);
        return cached(key, &single).expect("root powers stored");
    }
    let value = compute_on_tree(key, t);
    store(key, single, value)
}

fn compute_on_tree(key: MapKey, t: Tree) -> AlgebraElement<Rational> {
    let tree = AlgebraElement::tree(t);
    match key {
        MapKey::Antipode => {
            // S(τ) = −τ − Σ_δ S(P)·R
            let mut out = tree.neg();
            let minus_one = -Rational::one();
            for c in cuts(t).iter().filter(|c| !c.is_trivial()) {
                let r = AlgebraElement::tree(c.trunk.expect("nontrivial cut has a trunk"));
                out.add_product(
                    &on_forest(MapKey::Antipode, &c.pruned),
                    &r,
                    &(minus_one.clone() * int(c.multiplicity)),
                );
            }
            out
        }
        MapKey::AntipodeBar => on_tree(MapKey::Antipode, t).scale(&sign(t.size())),
        MapKey::Nu => {
            let mut out = AlgebraElement::zero();
            for c in cuts(t).iter() {
                let r = AlgebraElement::forest(c.trunk_forest());
                out.add_product(
                    &on_forest(MapKey::AntipodeBar, &c.pruned),
                    &r,
                    &int(c.multiplicity),
                );
            }
            out
        }
        MapKey::IdPow(1) => tree,
        MapKey::IdPow(0) => AlgebraElement::zero(),
        MapKey::IdPow(m) if m > 1 => {
            let mut out = AlgebraElement::zero();
            for c in cuts(t).iter() {
                let r = AlgebraElement::forest(c.trunk_forest());
                out.add_product(&on_forest(MapKey::IdPow(m - 1), &c.pruned), &r, &int(c.multiplicity));
            }
            out
        }
        MapKey::IdPow(m) => on_element(MapKey::IdPow(-m), &on_tree(MapKey::Antipode, t)),
        MapKey::Root { .. } => unreachable!("roots are computed jointly"),
        MapKey::Plus => {
            // (S R)⁻ = (−1)^{|R|} R⁻ because every (·)⁻-image character is odd.
            let mut out = AlgebraElement::zero();
            for c in cuts(t).iter() {
                let p = AlgebraElement::forest(c.pruned.clone());
                let (r, deg) = match c.trunk {
                    Some(r) => (on_tree(MINUS, r), r.size()),
                    None => (Arc::new(AlgebraElement::one()), 0),
                };
                out.add_product(&p, &r, &(sign(deg) * int(c.multiplicity)));
            }
            out
        }
        MapKey::PlusLiteral => {
            let mut out = AlgebraElement::zero();
            for c in cuts(t).iter() {
                let p = AlgebraElement::forest(c.pruned.clone());
                let r = match c.trunk {
                    Some(r) => on_element(MINUS, &on_tree(MapKey::Antipode, r)),
                    None => AlgebraElement::one(),
                };
                out.add_product(&p, &r, &int(c.multiplicity));
            }
            out
        }
        MapKey::Tilde => {
            let mut out = AlgebraElement::zero();
            for c in cuts(t).iter() {
                let deg = c.trunk.map_or(0, |r| r.size());
                out.add_term(
                    c.pruned.mul(&c.trunk_forest()),
                    sign(deg) * int(c.multiplicity),
                );
            }
            out
        }
    }
}

const MINUS: MapKey = MapKey::Root {
    base: RootBase::Nu,
    n: 2,
    j: 1,
};

/// Solves `φ^{*n}(τ) = base(τ)` for `φ(τ)`, storing every intermediate power
/// `φ^{*j}(τ)`, `1 ≤ j ≤ n`.
fn compute_root(base: RootBase, n: u32, t: Tree) {
    let key = |j| MapKey::Root { base, n, j };
    let target = match base {
        RootBase::Id(m) => on_tree(MapKey::IdPow(m), t),
        RootBase::Nu => on_tree(MapKey::Nu, t),
    };
    // φ^{*j}(τ) = a_j + j·φ(τ) with a_1 = 0.
    let mut a = vec![AlgebraElement::<Rational>::zero()];
    for j in 2..=n {
        let mut next = a.last().expect("a_1 present").clone();
        for c in cuts(t).iter().filter(|c| !c.is_trivial()) {
            let r = c.trunk.expect("nontrivial cut has a trunk");
            next.add_product(
                &on_forest(key(j - 1), &c.pruned),
                &on_tree(key(1), r),
                &int(c.multiplicity),
            );
        }
        a.push(next);
    }
    let n_rat = int(n as u64);
    let phi = target
        .sub(a.last().expect("a_n present"))
        .scale(&(Rational::one() / n_rat));
    let single = Forest::single(t);
    for (idx, aj) in a.into_iter().enumerate() {
        let j = idx as u32 + 1;
        let value = if j == 1 {
            phi.clone()
        } else {
            let mut v = aj;
            v.add_scaled(&phi, &int(j as u64));
            v
        };
        store(key(j), single.clone(), value);
    }
}

fn power_key(q: &Rational) -> MapKey {
    use num_traits::ToPrimitive;
    let m = q.numer().to_i64().expect("exponent numerator fits in i64");
    let n = q.denom().to_u32().expect("exponent denominator fits in u32");
    if n == 1 {
        MapKey::IdPow(m)
    } else {
        MapKey::Root {
            base: RootBase::Id(m),
            n,
            j: 1,
        }
    }
}

macro_rules! morphism {
    ($(#[$doc:meta])* $tree_fn:ident, $forest_fn:ident, $elem_fn:ident, $key:expr) => {
        $(#[$doc])*
        pub fn $tree_fn(t: Tree) -> Arc<AlgebraElement<Rational>> {
            on_tree($key, t)
        }

        pub fn $forest_fn(f: &Forest) -> Arc<AlgebraElement<Rational>> {
            on_forest($key, f)
        }

        pub fn $elem_fn(x: &AlgebraElement<Rational>) -> AlgebraElement<Rational> {
            on_element($key, x)
        }
    };
}

morphism!(
    /// Antipode `S`, by the recursion `S(τ) = −τ − Σ_δ S(P)·R`.
    antipode_tree, antipode, antipode_element, MapKey::Antipode
);
morphism!(
    /// `S̄(τ) = (−1)^{|τ|} S(τ)`.
    antipode_bar_tree, antipode_bar, antipode_bar_element, MapKey::AntipodeBar
);
morphism!(
    /// Odd part `τ⁻`, the convolution square root of `μ∘(S̄ ⊗ Id)∘Δ`.
    tau_minus_tree, tau_minus, tau_minus_element, MINUS
);
morphism!(
    /// Even part `τ⁺ = μ∘(Id ⊗ (·)⁻∘S)∘Δ(τ)`.
    tau_plus_tree, tau_plus, tau_plus_element, MapKey::Plus
);
morphism!(
    /// `τ̃ = μ∘(Id ⊗ Inv)∘Δ(τ)` with `Inv(τ) = (−1)^{|τ|} τ`.
    tau_tilde_tree, tau_tilde, tau_tilde_element, MapKey::Tilde
);

/// `τ⁺` evaluated literally as `Σ_Δ P · (S R)⁻`. Slower than [`tau_plus_tree`];
/// kept as an independent cross-check.
pub fn tau_plus_literal_tree(t: Tree) -> Arc<AlgebraElement<Rational>> {
    on_tree(MapKey::PlusLiteral, t)
}

/// `μ∘(S̄ ⊗ Id)∘Δ(τ)`; its character image is `ψ*ψ`.
pub fn nu_tree(t: Tree) -> Arc<AlgebraElement<Rational>> {
    on_tree(MapKey::Nu, t)
}

/// `Id^q(τ)` for rational `q`.
pub fn id_power_tree(q: &Rational, t: Tree) -> Arc<AlgebraElement<Rational>> {
    on_tree(power_key(q), t)
}

pub fn id_power(q: &Rational, f: &Forest) -> Arc<AlgebraElement<Rational>> {
    on_forest(power_key(q), f)
}

pub fn id_power_element(q: &Rational, x: &AlgebraElement<Rational>) -> AlgebraElement<Rational> {
    on_element(power_key(q), x)
}

/// `Id^{1/2}(τ)`.
pub fn id_sqrt_tree(t: Tree) -> Arc<AlgebraElement<Rational>> {
    id_power_tree(&Rational::new(1.into(), 2.into()), t)
}

/// Precomputes `τ⁻` and `τ⁺` for every tree up to `degree`, one degree at a
/// time, in parallel across trees of equal size.
pub fn warm_decomposition(degree: usize) {
    for d in 1..=degree {
        enumerate_trees(d).par_iter().for_each(|&t| {
            tau_minus_tree(t);
        });
        enumerate_trees(d).par_iter().for_each(|&t| {
            tau_plus_tree(t);
        });
    }
}

/// Precomputes `τ̃` for every tree up to `degree`.
pub fn warm_tilde(degree: usize) {
    for d in 1..=degree {
        enumerate_trees(d).par_iter().for_each(|&t| {
            tau_tilde_tree(t);
        });
    }
}

/// The antipode summed over all edge subsets:
/// `S(τ) = Σ_{c ⊆ E(τ)} (−1)^{|c|+1} τ^c`, where `τ^c` is the forest left
/// after deleting the edges in `c`. Exponential; for cross-checking only.
pub fn antipode_forest_formula(t: Tree) -> AlgebraElement<Rational> {
    let parents = t.parents();
    let n = parents.len();
    assert!(n <= 24, "forest formula is exponential in the edge count");
    let edges: Vec<usize> = (1..n).collect();
    let mut out = AlgebraElement::zero();
    for mask in 0u32..(1u32 << edges.len()) {
        let cut = |v: usize| v > 0 && mask & (1 << (v - 1)) != 0;
        // Preorder guarantees children follow parents, so build bottom-up.
        let mut kids: Vec<Vec<Tree>> = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in (0..n).rev() {
            let node = Tree::new(std::mem::take(&mut kids[v]));
            match parents[v] {
                Some(p) if !cut(v) => kids[p].push(node),
                _ => roots.push(node),
            }
        }
        let k = mask.count_ones() as usize;
        out.add_term(Forest::new(roots), sign(k + 1));
    }
    out
}

/// Clears every memo table. Intended for benchmarks and tests of cold timings.
pub fn clear_caches() {
    map_cache().write().expect("hopf cache poisoned").clear();
    cut_cache().write().expect("cut cache poisoned").clear();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int as rint, ratio};

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }

    fn elem(terms: &[(Rational, &str)]) -> AlgebraElement<Rational> {
        AlgebraElement::from_terms(terms.iter().map(|(c, s)| (f(s), c.clone())))
    }

    #[test]
    fn coproduct_of_leaf_and_cherry() {
        let d = coproduct_tree(t("()"));
        assert_eq!(d.len(), 2);
        assert_eq!(d.coefficient(&f("()"), &f("1")), rint(1));
        assert_eq!(d.coefficient(&f("1"), &f("()")), rint(1));

        let d = coproduct_tree(t("(()())"));
        assert_eq!(d.len(), 4);
        assert_eq!(d.coefficient(&f("()"), &f("(())")), rint(2));
        assert_eq!(d.coefficient(&f("()()"), &f("()")), rint(1));
    }

    #[test]
    fn reduced_coproduct_of_chain() {
        let d = reduced_coproduct(&f("(())"));
        assert_eq!(d.len(), 1);
        assert_eq!(d.coefficient(&f("()"), &f("()")), rint(1));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(*antipode_tree(t("()")), elem(&[(rint(-1), "()")]));
        assert_eq!(
            *antipode_tree(t("(())")),
            elem(&[(rint(-1), "(())"), (rint(1), "()()")])
        );
        assert_eq!(
            *antipode_tree(t("(()())")),
            elem(&[(rint(-1), "(()())"), (rint(2), "()(())"), (rint(-1), "()()()")])
        );
    }

    #[test]
    fn forest_formula_small() {
        for n in 1..=5 {
            for &tree in enumerate_trees(n).iter() {
                assert_eq!(antipode_forest_formula(tree), *antipode_tree(tree), "{tree}");
            }
        }
    }

    #[test]
    fn square_root_examples() {
        assert_eq!(*id_sqrt_tree(t("()")), elem(&[(ratio(1, 2), "()")]));
        assert_eq!(
            *id_sqrt_tree(t("(())")),
            elem(&[(ratio(1, 2), "(())"), (ratio(-1, 8), "()()")])
        );
    }

    #[test]
    fn minus_plus_examples() {
        assert_eq!(*tau_minus_tree(t("()")), elem(&[(rint(1), "()")]));
        assert!(tau_plus_tree(t("()")).is_zero());
        assert_eq!(*tau_minus_tree(t("(())")), elem(&[(ratio(1, 2), "()()")]));
        assert_eq!(
            *tau_plus_tree(t("(())")),
            elem(&[(rint(1), "(())"), (ratio(-1, 2), "()()")])
        );
        assert!(tau_plus_tree(Tree::chain(3)).is_zero());
    }

    #[test]
    fn tilde_examples() {
        assert!(tau_tilde_tree(t("()")).is_zero());
        assert_eq!(
            *tau_tilde_tree(t("(())")),
            elem(&[(rint(2), "(())"), (rint(-1), "()()")])
        );
    }

    #[test]
    fn weight_examples() {
        let x = elem(&[(rint(1), "(()())()"), (rint(2), "(())"), (rint(-1), "()()")]);
        assert_eq!(x.weight(), 8);
        assert_eq!(x.reduced_weight(1), 5);
        assert_eq!(x.reduced_weight(2), 3);
    }

    #[test]
    fn bullet_reduction_round_trip() {
        let x = id_sqrt_tree(Tree::chain(3));
        let shown = x.bullet_reduced();
        assert_eq!(shown.bullet_reinstated(3), *x);
    }
}
