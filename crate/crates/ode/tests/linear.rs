use bsf_core::rk::library::{self, lookup};
use bsf_core::stability::StabilityFunction;
use bsf_core::with_tableau;
use bsf_ode::{integrate_streaming, step, Ivp, Linear2};
use num_complex::Complex64;

fn run(name: &str, lambda: Complex64, h: f64, n: u64) -> (Complex64, Complex64) {
    let any = lookup(name).unwrap();
    let t = any.to_float();
    let f = Linear2 { re: lambda.re, im: lambda.im };
    let y = integrate_streaming(&t, &f, &[1.0, 0.0], h, n, |_, _, _, _| {}).unwrap();
    let r = with_tableau!(&any, t => StabilityFunction::of(t).to_float());
    (Complex64::new(y[0], y[1]), r.eval(lambda * h).powu(n as u32))
}

#[test]
fn steps_match_stability_function_powers() {
    for name in library::names() {
        for lambda in [Complex64::new(-0.7, 0.0), Complex64::new(-0.3, 1.1), Complex64::new(0.2, -0.5)] {
            let (got, expect) = run(name, lambda, 0.1, 25);
            let rel = (got - expect).norm() / expect.norm();
            assert!(rel < 1e-12, "{name} λ={lambda}: {rel:e}");
        }
    }
}

#[test]
fn ees25_quarter_single_step() {
    let (got, expect) = run("ees25-quarter", Complex64::new(-1.3, 0.4), 0.2, 1);
    assert!((got - expect).norm() < 1e-13);
}

#[test]
fn symmetric_schemes_step_back() {
    let f = bsf_ode::inverse_square_problem();
    let y0 = f.initial_state().unwrap();
    for name in ["midpoint", "trapezoidal"] {
        let t = lookup(name).unwrap().to_float();
        let y1 = step(&t, &f, &y0, 0.1).unwrap();
        let back = step(&t, &f, &y1, -0.1).unwrap();
        assert!(bsf_ode::distance(&back, &y0) < 1e-13, "{name}");
    }
}
