//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use bsf_cli::verify::{find, run_check, Status, VerifyOptions};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    /// Status every check must report.
    status: Status,
    limit: Option<Duration>,
    note: &'static str,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "Hopf kernel: coproducts, antipodes, decomposition table",
        checks: &["hopf.coproduct", "hopf.antipode", "hopf.decomposition"],
        status: Status::Pass,
        limit: secs(1),
        note: "",
    },
    Criterion {
        number: 2,
        title: "adjoints: implicit midpoint table, Gauss-2 value 7/144",
        checks: &["adjoint.midpoint", "adjoint.gauss2"],
        status: Status::Pass,
        limit: secs(1),
        note: "",
    },
    Criterion {
        number: 3,
        title: "cumulative tilde and plus counts to degree 9",
        checks: &["ees.counts"],
        status: Status::Pass,
        limit: secs(60),
        note: "",
    },
    Criterion {
        number: 4,
        title: "reduced weight table, 24 entries",
        checks: &["ees.weights"],
        status: Status::Pass,
        limit: None,
        note: "",
    },
    Criterion {
        number: 5,
        title: "EES families regenerate the printed tableaux with (ord, ord+) = (2,5), (2,7)",
        checks: &["ees.tableaux", "ees.orders"],
        status: Status::Pass,
        limit: None,
        note: "",
    },
    Criterion {
        number: 6,
        title: "objective minimisers within 0.02",
        checks: &["ees.minimisers"],
        status: Status::Pass,
        limit: secs(300),
        note: "",
    },
    Criterion {
        number: 7,
        title: "property suites at 10^4 cases",
        checks: &[
            "properties.hopf",
            "properties.group",
            "properties.decomposition",
            "properties.adjoint-order",
            "properties.tableaux",
        ],
        status: Status::Pass,
        limit: None,
        note: "",
    },
    Criterion {
        number: 8,
        title: "stability functions, A-stability verdicts, series coefficients",
        checks: &["stability.functions", "stability.a-stability", "stability.series"],
        status: Status::Pass,
        limit: None,
        note: "coefficient of z^n compared with psi(chain_n), the sigma-weighted tree sum for a linear field",
    },
    Criterion {
        number: 9,
        title: "inverse-square reversal and solution errors",
        checks: &["ode.inverse-square.reversal", "ode.inverse-square.error"],
        status: Status::Pass,
        limit: secs(10),
        note: "",
    },
    Criterion {
        number: 10,
        title: "galactic desk scale: MAE ratio and Poincare count",
        checks: &["galactic.desk.mae", "galactic.desk.count"],
        status: Status::Pass,
        limit: secs(120),
        note: "",
    },
    Criterion {
        number: 11,
        title: "printed midpoint-square DIRK reported as a documented discrepancy",
        checks: &["rk.printed-dirk"],
        status: Status::DocumentedDiscrepancy,
        limit: None,
        note: "",
    },
];

fn main() {
    let opts = VerifyOptions {
        extended: false,
        cases: 10_000,
        seed: 0,
    };
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let mut problems = Vec::new();
        for id in c.checks {
            let check = find(id).unwrap_or_else(|| panic!("unknown check {id}"));
            let r = run_check(check, &opts);
            if r.status != c.status {
                problems.push(format!("{id}: {} ({})", r.status.label(), r.actual));
            }
        }
        let elapsed = start.elapsed();
        if let Some(limit) = c.limit {
            if elapsed > limit {
                problems.push(format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} [{:.2}s] {}", c.number, elapsed.as_secs_f64(), c.title);
        if !c.note.is_empty() {
            println!("              note: {}", c.note);
        }
        for p in &problems {
            println!("              {p}");
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
