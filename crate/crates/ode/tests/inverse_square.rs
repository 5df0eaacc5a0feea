use bsf_core::rk::library::lookup;
use bsf_ode::{final_error, inverse_square_problem, reversal_error, step_count, Ivp};

fn scheme(name: &str) -> bsf_core::FloatTableau {
    lookup(name).unwrap().to_float()
}

#[test]
fn reversal_errors() {
    let f = inverse_square_problem();
    let y0 = f.initial_state().unwrap();
    let cases = [
        ("midpoint", 1e-11),
        ("ees25", 1e-5),
        ("ees27-simple", 5e-9),
    ];
    for (name, bound) in cases {
        let e = reversal_error(&scheme(name), &f, &y0, 0.1, 10.0).unwrap();
        assert!(e <= bound, "{name}: {e:e}");
    }
}

#[test]
fn final_errors_order_of_magnitude() {
    let f = inverse_square_problem();
    let y0 = f.initial_state().unwrap();
    let cases = [
        ("midpoint", 1.0063e-1),
        ("ees25-quarter", 4.9232e-2),
        ("ees25", 3.0921e-2),
        ("ees27-simple", 2.3967e-2),
        ("ees27", 1.5041e-2),
    ];
    for (name, reference) in cases {
        let e = final_error(&scheme(name), &f, &y0, 0.1, 10.0).unwrap().unwrap();
        let ratio: f64 = e / reference;
        assert!(ratio.log10().abs() < 1.0, "{name}: {e:e}");
    }
}

#[test]
fn antisymmetric_order_pays_off() {
    let f = inverse_square_problem();
    let y0 = f.initial_state().unwrap();
    let rk4 = reversal_error(&scheme("rk4"), &f, &y0, 0.1, 10.0).unwrap();
    for name in ["ees27", "ees27-simple"] {
        let e = reversal_error(&scheme(name), &f, &y0, 0.1, 10.0).unwrap();
        assert!(e * 1e3 <= rk4, "{name}: {e:e} vs rk4 {rk4:e}");
    }
}

fn slope(name: &str, hs: &[f64]) -> f64 {
    let f = inverse_square_problem();
    let y0 = f.initial_state().unwrap();
    let pts: Vec<(f64, f64)> = hs
        .iter()
        .map(|&h| {
            let e = final_error(&scheme(name), &f, &y0, h, 1.0).unwrap().unwrap();
            (h.ln(), e.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 * p.0, a.1 + p.0 * p.1));
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn convergence_orders() {
    let full: Vec<f64> = [40.0, 80.0, 160.0, 320.0, 640.0].iter().map(|d| 1.0 / d).collect();
    let cases = [
        ("euler", 1.0),
        ("heun2", 2.0),
        ("midpoint", 2.0),
        ("kutta3", 3.0),
        ("rk4", 4.0),
        ("ralston4", 4.0),
        ("ees25", 2.0),
        ("ees27", 2.0),
    ];
    for (name, p) in cases {
        let s = slope(name, &full);
        assert!((s - p).abs() <= 0.1 * p, "{name}: slope {s}");
    }
    // Fifth-order errors reach rounding level below h = 1/160.
    let s = slope("nystrom5", &full[..3]);
    assert!((s - 5.0).abs() <= 0.5, "nystrom5: slope {s}");
}

#[test]
fn step_count_rules() {
    assert_eq!(step_count(0.1, 10.0).unwrap(), 100);
    assert_eq!(step_count(0.1, 0.0).unwrap(), 0);
    assert!(step_count(0.0, 1.0).is_err());
    assert!(step_count(1e-12, 1e4).is_err());
}
