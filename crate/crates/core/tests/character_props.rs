use bsf_core::rk::library;
use bsf_core::scalar::{int, ratio};
use bsf_core::tree::trees_up_to;
use bsf_core::{Character, Rational};
use proptest::prelude::*;

const DEGREE: usize = 6;
// The acceptance gate reruns these identities at 10⁴ cases.
const CASES: u32 = 256;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn character_at(degree: usize) -> impl Strategy<Value = Character<Rational>> {
    proptest::collection::vec(small_rational(), trees_up_to(degree).len()).prop_map(move |vals| {
        let mut it = vals.into_iter();
        Character::from_fn(degree, |_| it.next().unwrap())
    })
}

fn character() -> impl Strategy<Value = Character<Rational>> {
    character_at(DEGREE)
}

/// A random character that agrees with the exact flow up to degree `k`.
fn order_at_least(k: usize) -> impl Strategy<Value = Character<Rational>> {
    character().prop_map(move |psi| {
        Character::from_fn(DEGREE, |t| {
            if t.size() <= k {
                ratio(1, t.factorial() as i64)
            } else {
                psi.value(t).clone()
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn convolution_group_axioms(a in character(), b in character(), c in character()) {
        let e = Character::counit(DEGREE);
        prop_assert_eq!(a.convolve(&b).convolve(&c), a.convolve(&b.convolve(&c)));
        prop_assert_eq!(a.convolve(&e), a.clone());
        prop_assert_eq!(e.convolve(&a), a.clone());
        let inv = a.inverse();
        prop_assert_eq!(inv.convolve(&a), e.clone());
        prop_assert_eq!(a.convolve(&inv), e);
    }

    #[test]
    fn odd_even_decomposition(psi in character()) {
        let split = psi.odd_even_decompose();
        prop_assert!(split.even.is_even());
        prop_assert!(split.odd.is_odd());
        prop_assert_eq!(split.even.convolve(&split.odd), psi.clone());
        prop_assert_eq!(split.odd.convolve(&split.odd), psi.adjoint().convolve(&psi));
        prop_assert_eq!(&split.odd, &psi.minus_via_trees());
        prop_assert_eq!(&split.even, &psi.plus_via_trees());
        prop_assert_eq!(split.even.convolve(&split.odd).odd_even_decompose(), split.clone());
        // The even factor on the right: ψ = (ζ⁺ζ⁻(ζ⁺)⁻¹)ζ⁺, the first factor odd.
        let (odd, even) = psi.right_factorisation();
        prop_assert!(odd.is_odd());
        prop_assert_eq!(odd.convolve(&even), psi.clone());
    }

    #[test]
    fn order_of_adjoint(k in 1usize..=3, psi in order_at_least(3)) {
        let truncated = Character::from_fn(DEGREE, |t| {
            if t.size() <= k { psi.value(t).clone() } else { psi.value(t).clone() + int(1) }
        });
        prop_assert_eq!(truncated.ord(), truncated.adjoint().ord());
        prop_assert_eq!(psi.ord(), psi.adjoint().ord());
    }

    #[test]
    fn adjoint_is_an_involution(psi in character()) {
        prop_assert_eq!(psi.adjoint().adjoint(), psi.clone());
        prop_assert_eq!(psi.bar().bar(), psi);
    }

    #[test]
    fn odd_part_order_dominates(psi in order_at_least(2)) {
        let odd = psi.odd_even_decompose().odd;
        prop_assert!(odd.ord().value >= psi.ord().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn root_of_product_keeps_order(
        n in 2usize..=3,
        k in proptest::collection::vec(1usize..=3, 3),
        chars in proptest::collection::vec(order_at_least(3), 3),
    ) {
        let factors: Vec<Character<Rational>> = chars
            .iter()
            .zip(&k)
            .take(n)
            .map(|(c, &k)| {
                Character::from_fn(DEGREE, |t| {
                    if t.size() <= k { c.value(t).clone() } else { c.value(t).clone() + ratio(1, 3) }
                })
            })
            .collect();
        let min = factors.iter().map(|c| c.ord().value).min().unwrap();
        let product = factors[1..].iter().fold(factors[0].clone(), |acc, c| acc.convolve(c));
        let root = product.power(&ratio(1, n as i64));
        prop_assert!(root.ord().value >= min);
        let back = (1..n).fold(root.clone(), |acc, _| acc.convolve(&root));
        prop_assert_eq!(back, product);
    }

    #[test]
    fn dilated_powers_keep_order(k in 1usize..=3, q in (1i64..=4, 1i64..=4), psi in order_at_least(3)) {
        let psi = Character::from_fn(DEGREE, |t| {
            if t.size() <= k { psi.value(t).clone() } else { psi.value(t).clone() + ratio(1, 5) }
        });
        prop_assert_eq!(psi.scaled(&ratio(q.0, q.1)).ord(), psi.ord());
    }

    #[test]
    fn rational_powers(psi in character_at(5)) {
        let third = psi.power(&ratio(2, 3));
        let cube = third.convolve(&third).convolve(&third);
        prop_assert_eq!(cube, psi.convolve(&psi));
        prop_assert_eq!(psi.power(&int(1)), psi);
    }
}

#[test]
fn exact_flow_is_self_adjoint_and_dilation_invariant() {
    let a = Character::<Rational>::exact_flow(DEGREE);
    assert_eq!(a.adjoint(), a);
    assert_eq!(a.scaled(&ratio(1, 2)), a);
    assert_eq!(a.scaled(&ratio(1, 3)), a);
    let e = Character::<Rational>::counit(DEGREE);
    assert!(e.is_odd() && e.is_even());
    let split = e.odd_even_decompose();
    assert_eq!((split.even, split.odd), (e.clone(), e));
}

#[test]
fn odd_characters_split_trivially() {
    let psi = library::implicit_midpoint().elementary_weights(DEGREE);
    assert!(psi.is_odd());
    let split = psi.odd_even_decompose();
    assert_eq!(split.even, Character::counit(DEGREE));
    assert_eq!(split.odd, psi);
    assert!(psi.power(&ratio(1, 2)).is_odd());
    assert!(psi.ord_plus().saturated);
}

#[test]
fn euler_decomposition_values() {
    let psi = library::explicit_euler().elementary_weights(DEGREE);
    let split = psi.odd_even_decompose();
    let chain2 = bsf_core::Tree::chain(2);
    assert_eq!(*split.odd.value(chain2), ratio(1, 2));
    assert_eq!(*split.even.value(bsf_core::Tree::leaf()), ratio(0, 1));
    assert_eq!(*psi.adjoint().value(chain2), int(1));
}

#[test]
fn omega_lambda_is_even() {
    let omega = library::omega_lambda(ratio(1, 3)).elementary_weights(DEGREE);
    assert!(omega.is_even());
    let quarter = library::omega_lambda(ratio(1, 4)).elementary_weights(DEGREE);
    assert_eq!(*quarter.value(bsf_core::Tree::leaf()), int(0));
    assert_eq!(*quarter.value(bsf_core::Tree::chain(2)), ratio(1, 4));
    assert_eq!(*quarter.value(bsf_core::Tree::bushy(3)), int(0));
}

#[test]
fn s_equivalence() {
    let rk4 = library::rk4().elementary_weights(DEGREE);
    let omega = library::omega_lambda(ratio(1, 5)).elementary_weights(DEGREE);
    assert!(rk4.s_equivalent(&rk4));
    assert!(rk4.s_equivalent(&omega.convolve(&rk4)));
    let euler = library::explicit_euler().elementary_weights(DEGREE);
    let midpoint = library::implicit_midpoint().elementary_weights(DEGREE);
    assert!(!euler.s_equivalent(&midpoint));
    let (e_minus, m_minus) = (euler.minus_via_trees(), midpoint.minus_via_trees());
    let first = e_minus.first_difference(&m_minus).unwrap();
    assert_eq!(first, 3);
}
