//! Brute-force oracles that share no code with the library's recursions.

use std::collections::{BTreeSet, HashMap};

use bsf_core::hopf::{antipode_forest_formula, antipode_tree, coproduct_tree, TensorElement};
use bsf_core::scalar::{int, ratio};
use bsf_core::tree::{enumerate_trees, trees_up_to};
use bsf_core::{AlgebraElement, ButcherTableau, Forest, Rational, Tree};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Children lists of a parent array.
fn children_of(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut kids = vec![Vec::new(); parents.len()];
    for (v, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            kids[*p].push(v);
        }
    }
    kids
}

/// The subtree rooted at `v`, skipping any vertex for which `skip` holds.
fn subtree(kids: &[Vec<usize>], v: usize, skip: &dyn Fn(usize) -> bool) -> Tree {
    Tree::new(
        kids[v]
            .iter()
            .filter(|&&w| !skip(w))
            .map(|&w| subtree(kids, w, skip))
            .collect(),
    )
}

fn is_ancestor(parents: &[Option<usize>], a: usize, mut v: usize) -> bool {
    while let Some(p) = parents[v] {
        if p == a {
            return true;
        }
        v = p;
    }
    false
}

/// `Δτ` by enumerating every edge subset and keeping the admissible ones.
/// Edges are named by their lower vertex.
fn brute_coproduct(t: Tree) -> TensorElement<Rational> {
    let parents = t.parents();
    let kids = children_of(&parents);
    let n = parents.len();
    let mut out = TensorElement::zero();
    for mask in 0u32..(1 << (n - 1)) {
        let cut: Vec<usize> = (1..n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let admissible = cut
            .iter()
            .all(|&a| cut.iter().all(|&b| a == b || !is_ancestor(&parents, a, b)));
        if !admissible {
            continue;
        }
        let is_cut = |v: usize| cut.contains(&v);
        let pruned: Forest = cut.iter().map(|&v| subtree(&kids, v, &is_cut)).collect();
        let trunk = Forest::single(subtree(&kids, 0, &is_cut));
        out.add_term(pruned, trunk, int(1));
    }
    out.add_term(Forest::single(t), Forest::empty(), int(1));
    out
}

fn brute_antipode(t: Tree, memo: &mut HashMap<Tree, AlgebraElement<Rational>>) -> AlgebraElement<Rational> {
    if let Some(s) = memo.get(&t) {
        return s.clone();
    }
    let mut s = AlgebraElement::tree(t).neg();
    for (p, r, c) in brute_coproduct(t).iter() {
        if p.is_empty() || r.is_empty() {
            continue;
        }
        let mut sp = AlgebraElement::one();
        for &u in p.trees() {
            sp = sp.mul(&brute_antipode(u, memo));
        }
        s = s.sub(&sp.mul(&AlgebraElement::forest(r.clone())).scale(c));
    }
    memo.insert(t, s.clone());
    s
}

#[test]
fn coproduct_matches_admissible_cut_enumeration() {
    for t in trees_up_to(7) {
        assert_eq!(coproduct_tree(t), brute_coproduct(t), "{t}");
    }
}

#[test]
fn antipode_matches_brute_recursion_and_forest_formula() {
    let mut memo = HashMap::new();
    for t in trees_up_to(7) {
        let s = antipode_tree(t);
        assert_eq!(*s, brute_antipode(t, &mut memo), "{t}");
        assert_eq!(*s, antipode_forest_formula(t), "{t}");
    }
}

/// Canonical string of the subtree at `v`, from a parent array.
fn canon(kids: &[Vec<usize>], v: usize) -> String {
    let mut parts: Vec<String> = kids[v].iter().map(|&w| canon(kids, w)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// All unlabelled rooted trees on `n` vertices, from every labelled
/// recursive tree (`parent[v] < v`), canonicalised and deduplicated.
fn brute_trees(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut parents = vec![0usize; n];
    fn rec(v: usize, n: usize, parents: &mut Vec<usize>, out: &mut BTreeSet<String>) {
        if v == n {
            let mut kids = vec![Vec::new(); n];
            for w in 1..n {
                kids[parents[w]].push(w);
            }
            out.insert(canon(&kids, 0));
            return;
        }
        for p in 0..v {
            parents[v] = p;
            rec(v + 1, n, parents, out);
        }
    }
    rec(1, n, &mut parents, &mut out);
    out
}

#[test]
fn tree_counts_match_labelled_enumeration() {
    let expect = [1, 1, 2, 4, 9, 20, 48, 115, 286];
    for n in 1..=9 {
        let trees = enumerate_trees(n);
        assert_eq!(trees.len(), expect[n - 1], "n = {n}");
        let brute = brute_trees(n);
        assert_eq!(brute.len(), expect[n - 1], "n = {n}");
        let ours: BTreeSet<Tree> = trees.iter().copied().collect();
        let theirs: BTreeSet<Tree> = brute.iter().map(|s| Tree::parse(s).unwrap()).collect();
        assert_eq!(ours, theirs, "n = {n}");
    }
}

#[test]
fn enumeration_is_sorted_and_round_trips() {
    for n in 1..=9 {
        let trees = enumerate_trees(n);
        for w in trees.windows(2) {
            assert!(w[0] < w[1]);
        }
        for &t in trees.iter() {
            assert_eq!(t.size(), n);
            assert_eq!(Tree::parse(&t.encoding()).unwrap(), t);
            assert_eq!(Tree::b_plus(&t.children_forest()), t);
        }
    }
}

#[test]
fn symmetry_and_factorial_identities() {
    for n in 1..=9u64 {
        let n_fact: u64 = (1..=n).product();
        let mut heap_ordered = 0u64;
        let mut labelled = 0u64;
        let mut inv = Rational::zero();
        for &t in enumerate_trees(n as usize).iter() {
            heap_ordered += n_fact / (t.sigma() * t.factorial());
            labelled += n_fact / t.sigma();
            inv += ratio(1, (t.sigma() * t.factorial()) as i64);
        }
        // n!/(σ(τ)τ!) counts the labellings increasing away from the root,
        // and those are the (n−1)! recursive trees.
        assert_eq!(heap_ordered, n_fact / n, "n = {n}");
        assert_eq!(inv, ratio(1, n as i64), "n = {n}");
        // Cayley: n^{n−1} labelled rooted trees.
        assert_eq!(labelled, n.pow(n as u32 - 1), "n = {n}");
    }
}

/// The exact-flow series on `y' = λy` only sees chains: `Σ_{|τ|=n} F(τ)/(σ(τ)τ!)`
/// is `1/n!`, while the unweighted sum over all trees is `1/n`.
#[test]
fn exact_flow_on_linear_field() {
    let mut fact = Rational::one();
    for n in 1..=9 {
        fact *= int(n as i64);
        let chain = Tree::chain(n);
        assert_eq!(chain.sigma(), 1);
        assert_eq!(ratio(1, chain.factorial() as i64), Rational::one() / fact.clone());
    }
}

#[test]
fn sigma_and_factorial_examples() {
    let t = |s: &str| Tree::parse(s).unwrap();
    assert_eq!((t("()").sigma(), t("()").factorial()), (1, 1));
    assert_eq!((t("(()())").sigma(), t("(()())").factorial()), (2, 3));
    assert_eq!(t("(()()())").sigma(), 6);
    assert_eq!(t("((())())"), t("(()(()))"));
    assert!(Tree::parse("(()").is_err());
}

/// `ψ(τ) = Σ_{indices} b_{i_root} Π_{edges u→v} a_{i_u i_v}`.
fn closed_form_weight(tab: &ButcherTableau<Rational>, t: Tree) -> Rational {
    let parents = t.parents();
    let n = parents.len();
    let s = tab.stages();
    let mut idx = vec![0usize; n];
    let mut total = Rational::zero();
    loop {
        let mut term = tab.b()[idx[0]].clone();
        for v in 1..n {
            let p = parents[v].unwrap();
            term *= &tab.a()[idx[p]][idx[v]];
        }
        total += &term;
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            idx[k] += 1;
            if idx[k] < s {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn random_tableau(rng: &mut impl Rng, s: usize) -> ButcherTableau<Rational> {
    let mut r = || ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    let a = (0..s).map(|_| (0..s).map(|_| r()).collect()).collect();
    let b = (0..s).map(|_| r()).collect();
    ButcherTableau::new("random", a, b).unwrap()
}

#[test]
fn elementary_weights_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..40 {
        let tab = random_tableau(&mut rng, 1 + case % 4);
        let psi = tab.elementary_weights(5);
        for t in trees_up_to(5) {
            assert_eq!(*psi.value(t), closed_form_weight(&tab, t), "{t}");
        }
    }
}
