//! Randomised and exhaustive identity suites. Each returns the number of
//! cases checked, or a description of the first counterexample.

use std::collections::HashMap;

use bsf_core::hopf::{antipode, coproduct, id_power, TensorElement};
use bsf_core::scalar::{int, ratio};
use bsf_core::tree::trees_up_to;
use bsf_core::{AlgebraElement, ButcherTableau, Character, Field, Forest, Rational, Tree};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CHARACTER_DEGREE: usize = 6;
pub const TABLEAU_DEGREE: usize = 5;

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_character(rng: &mut impl Rng, degree: usize) -> Character<Rational> {
    Character::from_fn(degree, |_| small_rational(rng))
}

/// Agrees with the exact flow on trees up to size `k`, random above.
fn with_order(rng: &mut impl Rng, degree: usize, k: usize) -> Character<Rational> {
    Character::from_fn(degree, |t| {
        let exact = ratio(1, t.factorial() as i64);
        if t.size() <= k {
            exact
        } else {
            // Never equal to 1/τ! on the first tree past k, so ord is exactly k.
            let v = small_rational(rng);
            if v == exact {
                v + int(1)
            } else {
                v
            }
        }
    })
}

pub fn random_tableau(rng: &mut impl Rng) -> ButcherTableau<Rational> {
    let s = rng.gen_range(1..=3);
    let a = (0..s).map(|_| (0..s).map(|_| small_rational(rng)).collect()).collect();
    let b = (0..s).map(|_| small_rational(rng)).collect();
    ButcherTableau::new("random", a, b).expect("square tableau")
}

fn fail(case: usize, what: &str, detail: impl std::fmt::Debug) -> String {
    format!("case {case}: {what} fails for {detail:?}")
}

pub fn group_axioms(cases: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 1);
    let d = CHARACTER_DEGREE;
    let e = Character::counit(d);
    for case in 0..cases {
        let (a, b, c) = (random_character(&mut r, d), random_character(&mut r, d), random_character(&mut r, d));
        if a.convolve(&b).convolve(&c) != a.convolve(&b.convolve(&c)) {
            return Err(fail(case, "associativity", (&a, &b, &c)));
        }
        if a.convolve(&e) != a || e.convolve(&a) != a {
            return Err(fail(case, "unit", &a));
        }
        let inv = a.inverse();
        if inv.convolve(&a) != e || a.convolve(&inv) != e {
            return Err(fail(case, "inverse", &a));
        }
    }
    Ok(cases)
}

pub fn decomposition(cases: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 2);
    for case in 0..cases {
        let psi = random_character(&mut r, CHARACTER_DEGREE);
        let split = psi.odd_even_decompose();
        if !split.odd.is_odd() || !split.even.is_even() {
            return Err(fail(case, "parity of the factors", &psi));
        }
        if split.even.convolve(&split.odd) != psi {
            return Err(fail(case, "psi = even * odd", &psi));
        }
        if split.odd.convolve(&split.odd) != psi.adjoint().convolve(&psi) {
            return Err(fail(case, "odd^2 = adjoint * psi", &psi));
        }
    }
    Ok(cases)
}

pub fn adjoint_order(cases: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 3);
    for case in 0..cases {
        let k = r.gen_range(0..CHARACTER_DEGREE);
        let psi = with_order(&mut r, CHARACTER_DEGREE, k);
        let (o, oa) = (psi.ord(), psi.adjoint().ord());
        if o != oa || o.value != k {
            return Err(fail(case, "ord(psi) = ord(adjoint)", (k, o, oa)));
        }
    }
    Ok(cases)
}

fn dilate(psi: &Character<Rational>, theta: &Rational) -> Character<Rational> {
    Character::from_fn(psi.truncation(), |t| psi.value(t).clone() * theta.powi(t.size() as i32))
}

pub fn tableau_functor(cases: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 4);
    let d = TABLEAU_DEGREE;
    for case in 0..cases {
        let (t1, t2) = (random_tableau(&mut r), random_tableau(&mut r));
        let (p1, p2) = (t1.elementary_weights(d), t2.elementary_weights(d));
        let adj = t1.adjoint();
        if adj.elementary_weights(d) != p1.adjoint() {
            return Err(fail(case, "adjoint tableau", &t1));
        }
        if adj.adjoint().elementary_weights(d) != p1 {
            return Err(fail(case, "double adjoint", &t1));
        }
        let theta = if r.gen_bool(0.5) {
            int(1)
        } else {
            ratio(r.gen_range(1..=3), 4)
        };
        let composite = t1.compose(&t2, &theta).map_err(|e| e.to_string())?.elementary_weights(d);
        let expect = if theta == int(1) {
            p1.convolve(&p2)
        } else {
            let rest = int(1) - theta.clone();
            dilate(&p1, &theta).convolve(&dilate(&p2, &rest))
        };
        if composite != expect {
            return Err(fail(case, "composition", (&t1, &t2, &theta)));
        }
    }
    Ok(cases)
}

/// Every forest with `1 ≤ |f| ≤ n`.
pub fn forests_up_to(n: usize) -> Vec<Forest> {
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

type Triple = HashMap<(Forest, Forest, Forest), Rational>;

fn mu_apply(
    x: &TensorElement<Rational>,
    left: impl Fn(&Forest) -> AlgebraElement<Rational>,
    right: impl Fn(&Forest) -> AlgebraElement<Rational>,
) -> AlgebraElement<Rational> {
    let mut out = AlgebraElement::zero();
    for (p, r, c) in x.iter() {
        out.add_product(&left(p), &right(r), c);
    }
    out
}

/// Coassociativity, counit and the antipode axiom on every forest up to
/// `degree`, and `(Id^{1/2})² = Id` on every tree up to `sqrt_degree`.
pub fn hopf_axioms(degree: usize, sqrt_degree: usize) -> Result<usize, String> {
    let forests = forests_up_to(degree);
    let id = |f: &Forest| AlgebraElement::forest(f.clone());
    let s = |f: &Forest| (*antipode(f)).clone();
    for f in &forests {
        let d = coproduct(f);
        let mut lhs = Triple::new();
        let mut rhs = Triple::new();
        for (p, r, c) in d.iter() {
            for (pp, pr, c2) in coproduct(p).iter() {
                *lhs.entry((pp.clone(), pr.clone(), r.clone())).or_insert_with(Rational::zero) += c.clone() * c2;
            }
            for (rp, rr, c2) in coproduct(r).iter() {
                *rhs.entry((p.clone(), rp.clone(), rr.clone())).or_insert_with(Rational::zero) += c.clone() * c2;
            }
        }
        lhs.retain(|_, c| !c.is_zero());
        rhs.retain(|_, c| !c.is_zero());
        if lhs != rhs {
            return Err(format!("coassociativity fails on {f}"));
        }
        if d.coefficient(f, &Forest::empty()) != int(1) || d.coefficient(&Forest::empty(), f) != int(1) {
            return Err(format!("counit fails on {f}"));
        }
        if !mu_apply(&d, s, id).is_zero() || !mu_apply(&d, id, s).is_zero() {
            return Err(format!("antipode axiom fails on {f}"));
        }
    }
    let half = |f: &Forest| (*id_power(&ratio(1, 2), f)).clone();
    let trees = trees_up_to(sqrt_degree);
    for &t in &trees {
        let d = coproduct(&Forest::single(t));
        if mu_apply(&d, half, half) != AlgebraElement::tree(t) {
            return Err(format!("(Id^1/2)^2 = Id fails on {t}"));
        }
    }
    Ok(forests.len() + trees.len())
}
