//! Hopf-algebra identities checked exhaustively on small trees and forests.

use std::collections::HashMap;

use bsf_core::hopf::{
    antipode, antipode_bar, coproduct, id_power, id_power_element, id_power_tree, id_sqrt_tree,
    tau_minus, tau_minus_tree, tau_plus, tau_plus_literal_tree, tau_plus_tree, tau_tilde_tree,
};
use bsf_core::scalar::{int, ratio};
use bsf_core::tree::{enumerate_trees, trees_up_to};
use bsf_core::{AlgebraElement, Forest, Rational, Tree};
use num_traits::Zero;

type Triple = HashMap<(Forest, Forest, Forest), Rational>;

fn add(acc: &mut Triple, key: (Forest, Forest, Forest), c: Rational) {
    let slot = acc.entry(key).or_insert_with(Rational::zero);
    *slot += &c;
}

fn nonzero(mut t: Triple) -> Triple {
    t.retain(|_, c| !c.is_zero());
    t
}

/// Every forest with `1 ≤ |f| ≤ n`.
fn forests_up_to(n: usize) -> Vec<Forest> {
    fn rec(budget: usize, min: usize, trees: &[Tree], cur: &mut Vec<Tree>, out: &mut Vec<Forest>) {
        if !cur.is_empty() {
            out.push(Forest::new(cur.clone()));
        }
        for (i, &t) in trees.iter().enumerate().skip(min) {
            if t.size() <= budget {
                cur.push(t);
                rec(budget - t.size(), i, trees, cur, out);
                cur.pop();
            }
        }
    }
    let trees = trees_up_to(n);
    let mut out = Vec::new();
    rec(n, 0, &trees, &mut Vec::new(), &mut out);
    out
}

fn mu_apply(
    x: &bsf_core::hopf::TensorElement<Rational>,
    left: impl Fn(&Forest) -> AlgebraElement<Rational>,
    right: impl Fn(&Forest) -> AlgebraElement<Rational>,
) -> AlgebraElement<Rational> {
    let mut out = AlgebraElement::zero();
    for (p, r, c) in x.iter() {
        out.add_product(&left(p), &right(r), c);
    }
    out
}

#[test]
fn forest_enumeration_counts() {
    // Forests with n vertices biject with trees on n + 1 vertices.
    let forests = forests_up_to(6);
    for n in 1..=6 {
        let count = forests.iter().filter(|f| f.size() == n).count();
        assert_eq!(count, enumerate_trees(n + 1).len());
    }
}

#[test]
fn coassociativity() {
    for f in forests_up_to(6) {
        let d = coproduct(&f);
        let mut lhs = Triple::new();
        let mut rhs = Triple::new();
        for (p, r, c) in d.iter() {
            for (pp, pr, c2) in coproduct(p).iter() {
                add(&mut lhs, (pp.clone(), pr.clone(), r.clone()), c.clone() * c2.clone());
            }
            for (rp, rr, c2) in coproduct(r).iter() {
                add(&mut rhs, (p.clone(), rp.clone(), rr.clone()), c.clone() * c2.clone());
            }
        }
        assert_eq!(nonzero(lhs), nonzero(rhs), "{f}");
    }
}

#[test]
fn counit_property() {
    for f in forests_up_to(6) {
        let d = coproduct(&f);
        assert_eq!(d.coefficient(&f, &Forest::empty()), int(1));
        assert_eq!(d.coefficient(&Forest::empty(), &f), int(1));
    }
}

#[test]
fn antipode_axiom() {
    let id = |f: &Forest| AlgebraElement::forest(f.clone());
    let s = |f: &Forest| (*antipode(f)).clone();
    for t in trees_up_to(7) {
        let d = coproduct(&Forest::single(t));
        assert!(mu_apply(&d, s, id).is_zero(), "{t}");
        assert!(mu_apply(&d, id, s).is_zero(), "{t}");
    }
}

#[test]
fn antipode_is_an_involution() {
    for t in trees_up_to(6) {
        let twice = bsf_core::hopf::antipode_element(&antipode(&Forest::single(t)));
        assert_eq!(twice, AlgebraElement::tree(t), "{t}");
    }
}

#[test]
fn square_root_of_identity_squares_to_identity() {
    let half = |f: &Forest| (*id_power(&ratio(1, 2), f)).clone();
    for t in trees_up_to(7) {
        let d = coproduct(&Forest::single(t));
        assert_eq!(mu_apply(&d, half, half), AlgebraElement::tree(t), "{t}");
    }
}

#[test]
fn dilations_compose() {
    for t in trees_up_to(6) {
        let twice = id_power_element(&ratio(1, 2), &id_sqrt_tree(t));
        assert_eq!(twice, *id_power_tree(&ratio(1, 4), t), "{t}");
        let third = |f: &Forest| (*id_power(&ratio(1, 3), f)).clone();
        let d = coproduct(&Forest::single(t));
        let sq = mu_apply(&d, third, third);
        assert_eq!(sq, *id_power_tree(&ratio(2, 3), t), "{t}");
    }
}

#[test]
fn grading_is_preserved() {
    for t in trees_up_to(7) {
        let n = t.size();
        assert!(antipode(&Forest::single(t)).is_homogeneous(n));
        assert!(id_sqrt_tree(t).is_homogeneous(n));
        assert!(tau_minus_tree(t).is_homogeneous(n));
        assert!(tau_plus_tree(t).is_homogeneous(n));
        assert!(tau_tilde_tree(t).is_homogeneous(n));
        for (p, r, _) in coproduct(&Forest::single(t)).iter() {
            assert_eq!(p.size() + r.size(), n);
        }
    }
}

#[test]
fn odd_part_matches_its_definition() {
    // τ⁻ = μ∘(S̄ ⊗ Id)∘Δ∘Id^{1/2}(τ).
    for t in trees_up_to(6) {
        let half = id_sqrt_tree(t);
        let mut literal = AlgebraElement::zero();
        for (f, c) in half.iter() {
            let d = coproduct(f);
            let term = mu_apply(&d, |p| (*antipode_bar(p)).clone(), |r| AlgebraElement::forest(r.clone()));
            literal.add_scaled(&term, c);
        }
        assert_eq!(literal, *tau_minus_tree(t), "{t}");
    }
}

#[test]
fn even_part_matches_its_definition() {
    for t in trees_up_to(7) {
        assert_eq!(*tau_plus_literal_tree(t), *tau_plus_tree(t), "{t}");
    }
}

#[test]
fn even_part_vanishes_at_odd_degree() {
    for n in (1..=7).step_by(2) {
        for &t in enumerate_trees(n).iter() {
            assert!(tau_plus_tree(t).is_zero(), "{t}");
        }
    }
}

#[test]
fn decomposition_recombines_at_tree_level() {
    // μ∘((·)⁺ ⊗ (·)⁻)∘Δ = Id.
    for t in trees_up_to(6) {
        let d = coproduct(&Forest::single(t));
        let back = mu_apply(&d, |p| (*tau_plus(p)).clone(), |r| (*tau_minus(r)).clone());
        assert_eq!(back, AlgebraElement::tree(t), "{t}");
    }
}
