use bsf_core::poly::Poly;
use bsf_core::rk::library;
use bsf_core::scalar::{int, ratio};
use bsf_core::stability::{
    a_stable_symmetric_component, char_stability_check, character_series_coefficient, roots, AStability,
    StabilityFunction,
};
use bsf_core::tree::enumerate_trees;
use bsf_core::{with_tableau, Rational};
use num_complex::Complex64;

fn rational_fn(num: &[Rational], den: &[Rational]) -> StabilityFunction<Rational> {
    StabilityFunction {
        numerator: Poly::new(num.to_vec()),
        denominator: Poly::new(den.to_vec()),
    }
}

#[test]
fn series_coefficients_are_chain_weights() {
    for name in library::names() {
        let t = library::lookup(name).unwrap();
        with_tableau!(&t, t => {
            let psi = t.elementary_weights(8);
            let r = StabilityFunction::of(t);
            for n in 0..=8 {
                assert!(char_stability_check(&psi, &r, n), "{name} n = {n}");
            }
        });
    }
}

#[test]
fn unweighted_tree_sum_is_not_the_coefficient() {
    // Summing ψ(τ)/σ(τ) over every tree of size 3 double counts for RK4.
    let t = library::rk4();
    let psi = t.elementary_weights(3);
    let all: Rational = enumerate_trees(3)
        .iter()
        .map(|&tr| psi.value(tr).clone() / int(tr.sigma() as i64))
        .fold(int(0), |a, b| a + b);
    assert_eq!(all, ratio(1, 3));
    assert_eq!(character_series_coefficient(&psi, 3), ratio(1, 6));
    assert_eq!(StabilityFunction::of(&t).series(3)[3], ratio(1, 6));
}

#[test]
fn explicit_polynomials() {
    let one = int(1);
    let euler = StabilityFunction::of(&library::explicit_euler());
    assert!(euler.same_function(&rational_fn(&[one.clone(), one.clone()], std::slice::from_ref(&one))));
    let rk4 = StabilityFunction::of(&library::rk4());
    let exp4 = [one.clone(), one.clone(), ratio(1, 2), ratio(1, 6), ratio(1, 24)];
    assert!(rk4.same_function(&rational_fn(&exp4, std::slice::from_ref(&one))));
    assert!(rk4.is_polynomial());
    let mid = StabilityFunction::of(&library::implicit_midpoint());
    assert!(mid.same_function(&rational_fn(&[one.clone(), ratio(1, 2)], &[one, ratio(-1, 2)])));
    assert!(!mid.is_polynomial());
}

#[test]
fn composed_euler_is_cayley_transform() {
    let e = library::explicit_euler();
    let composed = StabilityFunction::of(&e).composed();
    let expect = rational_fn(&[int(1), int(1)], &[int(1), int(-1)]);
    assert!(composed.same_function(&expect));
    // The tableau composite with the adjoint has the same function.
    let tab = e.compose(&e.adjoint(), &int(1)).unwrap();
    assert!(StabilityFunction::of(&tab).same_function(&expect));
}

#[test]
fn symmetric_components_are_unimodular() {
    for name in ["euler", "heun2", "heun3", "rk4", "nystrom5", "ees25", "ees27"] {
        let t = library::lookup(name).unwrap();
        let r = t.to_float();
        let rt = StabilityFunction::of(&r).composed();
        let reflected = StabilityFunction {
            numerator: rt.numerator.reflect(),
            denominator: rt.denominator.reflect(),
        };
        for k in 0..40 {
            let z = Complex64::new(-2.0 + 0.1 * k as f64, 0.3 * k as f64 - 4.0);
            let prod = rt.eval(z) * reflected.eval(z);
            if prod.re.is_finite() {
                assert!((prod - Complex64::new(1.0, 0.0)).norm() < 1e-8, "{name} at {z}");
            }
            let y = 0.25 * k as f64 - 5.0;
            let v = rt.abs(Complex64::new(0.0, y));
            if v.is_finite() {
                assert!((v - 1.0).abs() < 1e-9, "{name} at i{y}");
            }
        }
    }
}

#[test]
fn roots_come_in_conjugate_pairs() {
    for name in ["rk4", "nystrom5", "ees27", "heun3"] {
        let t = library::lookup(name).unwrap().to_float();
        let p = StabilityFunction::of(&t).numerator;
        let zs = roots(&p).unwrap();
        assert_eq!(zs.len(), p.degree().unwrap());
        for z in &zs {
            assert!(zs.iter().any(|w| (w - z.conj()).norm() < 1e-8), "{name}: {z}");
            assert!(p.eval_complex(*z).norm() < 1e-9, "{name}: {z}");
        }
    }
}

#[test]
fn a_stability_verdicts() {
    let (v, _) = a_stable_symmetric_component(&library::explicit_euler()).unwrap();
    assert!(v.is_a_stable());
    let (v, zs) = a_stable_symmetric_component(&library::rk4()).unwrap();
    assert!(v.is_a_stable());
    assert!(zs.iter().all(|z| z.re < 0.0));
    let bad = bsf_core::ButcherTableau::new(
        "counterexample",
        vec![vec![int(0), int(0)], vec![int(1), int(0)]],
        vec![int(2), int(-1)],
    )
    .unwrap();
    let r = StabilityFunction::of(&bad);
    assert!(r.same_function(&rational_fn(&[int(1), int(1), int(-1)], &[int(1)])));
    let (v, _) = a_stable_symmetric_component(&bad).unwrap();
    assert_eq!(v, AStability::NotAStable);
    assert!(!v.is_a_stable());
}

#[test]
fn ees27_reaches_further_along_the_negative_axis() {
    let extent = |name: &str| {
        let t = library::lookup(name).unwrap().to_float();
        StabilityFunction::of(&t).negative_real_extent(1e-3, 20.0)
    };
    let (ees, rk4, rk5) = (extent("ees27"), extent("rk4"), extent("nystrom5"));
    assert!((rk4 - 2.785).abs() < 2e-3, "{rk4}");
    assert!(ees > rk4 && ees > rk5, "{ees} {rk4} {rk5}");
}

#[test]
fn float_and_exact_functions_agree() {
    let exact = StabilityFunction::of(&library::nystrom5());
    let float = StabilityFunction::of(&library::nystrom5().to_float());
    for k in 0..10 {
        let z = Complex64::new(-0.3 * k as f64, 0.2 * k as f64);
        let v = exact.eval(z);
        assert!((v - float.eval(z)).norm() < 1e-12 * v.norm().max(1.0), "{z}");
    }
    assert!(exact.to_float().same_function(&float));
}
