//! Replays every reference table and worked example as a list of named checks.

use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use bsf_core::ees::{self, Branch, ConditionKind, Family};
use bsf_core::hopf::{self, antipode_tree, coproduct_tree, id_sqrt_tree, reduced_coproduct, tau_minus_tree, tau_plus_tree};
use bsf_core::rk::{library, printed_midpoint_square_finding};
use bsf_core::scalar::{int, ratio, Q3};
use bsf_core::stability::{a_stable_symmetric_component, char_stability_check, StabilityFunction};
use bsf_core::{with_tableau, AlgebraElement, ButcherTableau, Field, Forest, Rational, Scalar, Tree, Q2};
use bsf_ode::{galactic_run, Interpolation, Ivp};

use crate::properties;
use crate::tables::{self, Terms};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// The check ran and reproduced a known inconsistency in the reference
    /// material.
    DocumentedDiscrepancy,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::DocumentedDiscrepancy => "documented-discrepancy",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl Outcome {
    fn new(ok: bool, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Outcome {
            expected: expected.into(),
            actual: actual.into(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    /// Pass when `mismatches` is empty, listing them otherwise.
    fn rows(total: usize, what: &str, mismatches: Vec<String>) -> Self {
        let actual = if mismatches.is_empty() {
            format!("{total}/{total} {what} match")
        } else {
            format!("{} mismatching: {}", mismatches.len(), mismatches.join("; "))
        };
        Outcome::new(mismatches.is_empty(), format!("{total} {what}"), actual)
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: String,
    pub actual: String,
    pub status: Status,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub extended: bool,
    /// Randomised cases per property suite.
    pub cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            extended: false,
            cases: 10_000,
            seed: 0,
        }
    }
}

pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    pub extended_only: bool,
    run: fn(&VerifyOptions) -> Outcome,
}

const fn check(id: &'static str, description: &'static str, run: fn(&VerifyOptions) -> Outcome) -> Check {
    Check {
        id,
        description,
        extended_only: false,
        run,
    }
}

const fn extended(id: &'static str, description: &'static str, run: fn(&VerifyOptions) -> Outcome) -> Check {
    Check {
        id,
        description,
        extended_only: true,
        run,
    }
}

/// Every check, in report order.
pub const CHECKS: &[Check] = &[
    check("hopf.coproduct", "coproduct and reduced coproduct of the cherry", hopf_coproduct),
    check("hopf.antipode", "antipode of the trees up to size 3", hopf_antipode),
    check("adjoint.midpoint", "implicit midpoint adjoint table", adjoint_midpoint),
    check("adjoint.gauss2", "Gauss-2 antipode expansion and adjoint value 7/144", adjoint_gauss2),
    check("hopf.decomposition", "Id^1/2, odd and even parts of every tree up to size 4", hopf_decomposition),
    check("ees.counts", "cumulative nonzero tilde and plus counts, p <= 9", ees_counts),
    check("ees.weights", "reduced weights of SC(i) and EC(i)", ees_weights),
    check("ees.tableaux", "printed EES(2,5) and EES(2,7) tableaux from the families", ees_tableaux),
    check("ees.orders", "(ord, ord+) of the printed EES members", ees_orders),
    check("ees.minimisers", "objective minimisers of both families", ees_minimisers),
    check("rk.printed-dirk", "printed midpoint-square DIRK against both compositions", rk_printed_dirk),
    check("stability.functions", "Euler, RK4 and composed Euler stability functions", stability_functions),
    check("stability.a-stability", "A-stability of symmetric components", stability_a),
    check("stability.series", "stability coefficients equal the linear-field B-series", stability_series),
    check("properties.hopf", "Hopf axioms and (Id^1/2)^2 = Id, exhaustive", prop_hopf),
    check("properties.group", "convolution group axioms", prop_group),
    check("properties.decomposition", "odd-even decomposition identities", prop_decomposition),
    check("properties.adjoint-order", "ord of a character equals ord of its adjoint", prop_adjoint_order),
    check("properties.tableaux", "tableau adjoint and composition commute with characters", prop_tableaux),
    check("ode.inverse-square.reversal", "reversal (I.C.) errors, h = 0.1, t <= 10", ode_reversal),
    check("ode.inverse-square.error", "solution errors at t = 10, order of magnitude", ode_error),
    check("galactic.desk.mae", "Hamiltonian MAE ratio EES(2,7;opt)/RK4, t <= 1e4", galactic_desk_mae),
    check("galactic.desk.count", "Poincare points of EES(2,7;opt) against a reference, t <= 1e4", galactic_desk_count),
    extended("galactic.full.count", "Poincare points of EES(2,7;opt), t <= 1e6", galactic_full_count),
    extended("galactic.full.mae", "Hamiltonian MAE of EES(2,7;opt), t <= 1e6", galactic_full_mae),
];

pub fn run_check(c: &Check, opts: &VerifyOptions) -> CheckResult {
    let start = Instant::now();
    let out = if c.extended_only && !opts.extended {
        Outcome {
            expected: String::new(),
            actual: "needs --extended".into(),
            status: Status::Skipped,
        }
    } else {
        (c.run)(opts)
    };
    CheckResult {
        id: c.id,
        description: c.description,
        expected: out.expected,
        actual: out.actual,
        status: out.status,
        elapsed: start.elapsed(),
    }
}

/// Looks up a check by its exact id.
pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self, with_timing: bool) -> String {
        let mut s = String::new();
        for r in &self.results {
            let _ = write!(s, "{:<22} {:<28} {}", r.status.label(), r.id, r.description);
            if with_timing {
                let _ = write!(s, " [{:.2}s]", r.elapsed.as_secs_f64());
            }
            s.push('\n');
            if !r.expected.is_empty() {
                let _ = writeln!(s, "    expected: {}", r.expected);
            }
            let _ = writeln!(s, "    actual:   {}", r.actual);
        }
        let count = |st: Status| self.results.iter().filter(|r| r.status == st).count();
        let _ = writeln!(
            s,
            "{} pass, {} fail, {} skipped, {} documented-discrepancy",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped),
            count(Status::DocumentedDiscrepancy)
        );
        s
    }

    pub fn to_json(&self, with_timing: bool) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .results
            .iter()
            .map(|r| {
                let mut v = serde_json::json!({
                    "id": r.id,
                    "description": r.description,
                    "expected": r.expected,
                    "actual": r.actual,
                    "status": r.status.label(),
                });
                if with_timing {
                    v["elapsed"] = serde_json::json!(r.elapsed.as_secs_f64());
                }
                v
            })
            .collect();
        serde_json::json!({ "checks": checks, "ok": !self.has_failures() })
    }
}

/// Runs every check whose id starts with `filter`.
pub fn run(filter: Option<&str>, opts: &VerifyOptions) -> VerifyReport {
    VerifyReport {
        results: CHECKS
            .iter()
            .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
            .map(|c| run_check(c, opts))
            .collect(),
    }
}

fn tree(s: &str) -> Tree {
    Tree::parse(s).expect("table trees parse")
}

fn forest(s: &str) -> Forest {
    Forest::parse(s).expect("table forests parse")
}

fn element(terms: Terms) -> AlgebraElement<Rational> {
    AlgebraElement::from_terms(terms.iter().map(|&(n, d, f)| (forest(f), ratio(n, d))))
}

fn reinstated(degree: usize, terms: Terms) -> AlgebraElement<Rational> {
    element(terms).bullet_reinstated(degree)
}

fn hopf_coproduct(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let full = coproduct_tree(tree(tables::CHERRY));
    let reduced = reduced_coproduct(&forest(tables::CHERRY));
    for (table, got) in [(tables::CHERRY_COPRODUCT, &full), (tables::CHERRY_REDUCED_COPRODUCT, &reduced)] {
        if got.len() != table.len() {
            bad.push(format!("{} terms, expected {}", got.len(), table.len()));
        }
        for &(n, d, l, r) in table {
            let c = got.coefficient(&forest(l), &forest(r));
            if c != ratio(n, d) {
                bad.push(format!("{l} ⊗ {r}: {c}"));
            }
        }
    }
    Outcome::rows(2, "displays", bad)
}

fn hopf_antipode(_: &VerifyOptions) -> Outcome {
    let bad = tables::ANTIPODES
        .iter()
        .filter(|(t, terms)| *antipode_tree(tree(t)) != element(terms))
        .map(|(t, _)| format!("S{t} = {}", antipode_tree(tree(t))))
        .collect();
    Outcome::rows(tables::ANTIPODES.len(), "antipodes", bad)
}

fn hopf_decomposition(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    for row in tables::DECOMPOSITION {
        let t = tree(row.tree);
        let n = t.size();
        let parts = [
            ("Id^1/2", id_sqrt_tree(t), row.sqrt),
            ("minus", tau_minus_tree(t), row.minus),
            ("plus", tau_plus_tree(t), row.plus),
        ];
        for (name, got, terms) in parts {
            if *got != reinstated(n, terms) {
                bad.push(format!("{name} {t} = {got}"));
            }
        }
    }
    Outcome::rows(tables::DECOMPOSITION.len(), "rows", bad)
}

fn adjoint_midpoint(_: &VerifyOptions) -> Outcome {
    let psi = library::implicit_midpoint().elementary_weights(4);
    let mut bad = Vec::new();
    for row in tables::MIDPOINT_ADJOINT {
        let t = tree(row.tree);
        let signed = hopf::antipode_bar_tree(t);
        let (fa, fb) = row.inv_factorial;
        let (pa, pb) = row.psi;
        let adj = psi.eval(&signed).expect("degree 4");
        if ratio(1, t.factorial() as i64) != ratio(fa, fb)
            || *psi.value(t) != ratio(pa, pb)
            || *signed != reinstated(t.size(), row.signed_antipode)
            || adj != ratio(pa, pb)
        {
            bad.push(format!("{t}: psi {}, adjoint {adj}", psi.value(t)));
        }
    }
    Outcome::rows(tables::MIDPOINT_ADJOINT.len(), "rows", bad)
}

fn adjoint_gauss2(_: &VerifyOptions) -> Outcome {
    let gauss = library::gauss2();
    let psi = gauss.elementary_weights(6);
    let q = |(n, d): (i64, i64)| Q3::from_ratio(n, d);
    let big = tree(tables::GAUSS2_TREE);
    let mut bad = Vec::new();
    for &(t, v) in tables::GAUSS2_SUBTREE_VALUES {
        if *psi.value(tree(t)) != q(v) {
            bad.push(format!("psi{t} = {}", psi.value(tree(t))));
        }
    }
    let expansion = reinstated(6, tables::GAUSS2_ANTIPODE);
    if *antipode_tree(big) != expansion {
        bad.push("antipode expansion differs".into());
    }
    let character = psi.adjoint();
    let via_tableau = gauss.adjoint().elementary_weights(6);
    let signed = psi.eval(&expansion).expect("degree 6");
    for (name, v) in [
        ("psi(S tau)", &signed),
        ("adjoint character", character.value(big)),
        ("adjoint tableau", via_tableau.value(big)),
    ] {
        if *v != q(tables::GAUSS2_VALUE) {
            bad.push(format!("{name} = {v}"));
        }
    }
    let (n, d) = tables::GAUSS2_VALUE;
    let mut out = Outcome::rows(6, "values", bad);
    out.expected = format!("{n}/{d} at {big}");
    out
}

fn ees_counts(_: &VerifyOptions) -> Outcome {
    let collect = |kind| -> Vec<usize> {
        (1..=9).map(|p| ees::cumulative_nonzero(kind, p).expect("p <= 9")).collect()
    };
    let tilde = collect(ConditionKind::SC);
    let plus = collect(ConditionKind::EC);
    Outcome::new(
        tilde == tables::TILDE_COUNTS && plus == tables::PLUS_COUNTS,
        format!("{:?} / {:?}", tables::TILDE_COUNTS, tables::PLUS_COUNTS),
        format!("{tilde:?} / {plus:?}"),
    )
}

fn ees_weights(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    for (i, expect) in tables::REDUCED_WEIGHTS {
        let sc = ees::condition_set(ConditionKind::SC, i).expect("i <= 9");
        let ec = ees::condition_set(ConditionKind::EC, i).expect("i <= 9");
        for n in 1..=3 {
            let got = [sc.reduced_weight(n), ec.reduced_weight(n)];
            let want = [expect[2 * (n - 1)], expect[2 * (n - 1) + 1]];
            for (kind, g, w) in [("SC", got[0], want[0]), ("EC", got[1], want[1])] {
                if g != w {
                    bad.push(format!("w({kind}({i}),{n}) = {g}, expected {w}"));
                }
            }
        }
    }
    Outcome::rows(24, "entries", bad)
}

fn quad(text: &str) -> Q2 {
    match Scalar::parse(text).expect("table scalars parse") {
        Scalar::Rational(r) => Q2::from_rational_part(r),
        Scalar::Quad(q) => q,
        Scalar::Float(_) => unreachable!("tables are exact"),
    }
}

pub fn family_tableau(family: &str, x: &Q2, branch: Branch) -> Result<ButcherTableau<Q2>, ees::EesError> {
    match family {
        "2,5" => ees::ees25_tableau(x),
        _ => ees::ees27_tableau(x, branch),
    }
}

fn ees_tableaux(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    for p in tables::PRINTED_EES {
        let t = match family_tableau(p.family, &quad(p.x), Branch::Plus) {
            Ok(t) => t,
            Err(e) => {
                bad.push(format!("EES({};{}): {e}", p.family, p.x));
                continue;
            }
        };
        let s = t.stages();
        let mut ok = t.b().iter().zip(p.b).all(|(got, want)| *got == quad(want)) && p.b.len() == s;
        for i in 0..s {
            for j in 0..s {
                let want = if j < i { quad(p.lower[i - 1][j]) } else { Q2::from_i64(0) };
                ok &= t.a()[i][j] == want;
            }
        }
        if !ok {
            bad.push(format!("EES({};{}) differs:\n{t}", p.family, p.x));
        }
    }
    Outcome::rows(tables::PRINTED_EES.len(), "tableaux", bad)
}

fn ees_orders(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for p in tables::PRINTED_EES {
        let t = family_tableau(p.family, &quad(p.x), Branch::Plus).expect("printed members are valid");
        let (ord, plus) = if p.family == "2,5" { (2, 5) } else { (2, 7) };
        let psi = t.elementary_weights(plus + 1);
        let got = (psi.ord(), psi.ord_plus());
        seen.push(format!("({},{})", got.0, got.1));
        if got.0.value != ord || got.0.saturated || got.1.value != plus || got.1.saturated {
            bad.push(format!("EES({};{}) has ({}, {})", p.family, p.x, got.0, got.1));
        }
    }
    let mut out = Outcome::rows(tables::PRINTED_EES.len(), "members", bad);
    out.expected = "(2,5) (2,5) (2,7) (2,7)".into();
    if out.status == Status::Pass {
        out.actual = seen.join(" ");
    }
    out
}

fn ees_minimisers(_: &VerifyOptions) -> Outcome {
    let x25 = ees::minimize_objective(Family::Ees25, Family::Ees25.default_bracket());
    let fam = Family::Ees27(Branch::Plus);
    let x27 = ees::minimize_objective(fam, fam.default_bracket());
    let target27 = (5.0 - 3.0 * std::f64::consts::SQRT_2) / 14.0;
    let expected = format!("x25 = 0.1 ± 0.02, x27 = {target27:.6} ± 0.02");
    match (x25, x27) {
        (Ok(a), Ok(b)) => Outcome::new(
            (a - 0.1).abs() <= 0.02 && (b - target27).abs() <= 0.02,
            expected,
            format!("x25 = {a:.6}, x27 = {b:.6}"),
        ),
        (a, b) => Outcome::new(false, expected, format!("{a:?} {b:?}")),
    }
}

fn rk_printed_dirk(_: &VerifyOptions) -> Outcome {
    let f = printed_midpoint_square_finding(5);
    let documented = f.sum_bc == int(1)
        && !f.matches_full_steps
        && !f.matches_half_steps
        && f.stage_matrix_is_full_step
        && f.weights_are_half_step;
    Outcome {
        expected: "sum bc = 1/2 and agreement with a midpoint composition".into(),
        actual: f.to_string(),
        status: if documented {
            Status::DocumentedDiscrepancy
        } else {
            Status::Fail
        },
    }
}

fn poly(c: &[Rational]) -> bsf_core::poly::Poly<Rational> {
    bsf_core::poly::Poly::new(c.to_vec())
}

fn stability_functions(_: &VerifyOptions) -> Outcome {
    let one = || int(1);
    let rf = |num: &[Rational], den: &[Rational]| StabilityFunction {
        numerator: poly(num),
        denominator: poly(den),
    };
    let euler = StabilityFunction::of(&library::explicit_euler());
    let rk4 = StabilityFunction::of(&library::rk4());
    let composed = euler.composed();
    let quartic = [one(), one(), ratio(1, 2), ratio(1, 6), ratio(1, 24)];
    let ok = euler.same_function(&rf(&[one(), one()], &[one()]))
        && rk4.same_function(&rf(&quartic, &[one()]))
        && composed.same_function(&rf(&[one(), one()], &[one(), int(-1)]));
    Outcome::new(
        ok,
        "1 + z; 1 + z + z^2/2 + z^3/6 + z^4/24; (1 + z)/(1 - z)",
        format!("{euler:?}; {rk4:?}; {composed:?}"),
    )
}

fn stability_a(_: &VerifyOptions) -> Outcome {
    let counter = ButcherTableau::new(
        "counterexample",
        vec![vec![int(0), int(0)], vec![int(1), int(0)]],
        vec![int(2), int(-1)],
    )
    .expect("well formed");
    let verdict = |t: &ButcherTableau<Rational>| {
        a_stable_symmetric_component(t).map(|(v, _)| v.is_a_stable())
    };
    let got = [
        verdict(&library::explicit_euler()),
        verdict(&library::rk4()),
        verdict(&counter),
    ];
    let shown: Vec<String> = got
        .iter()
        .map(|v| match v {
            Ok(b) => b.to_string(),
            Err(e) => e.to_string(),
        })
        .collect();
    let ok = matches!(got, [Ok(true), Ok(true), Ok(false)]);
    Outcome::new(ok, "euler true, rk4 true, R = 1+z-z^2 false", shown.join(", "))
}

fn stability_series(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let names = library::names();
    for name in &names {
        let t = library::lookup(name).expect("library names resolve");
        with_tableau!(&t, t => {
            let psi = t.elementary_weights(8);
            let r = StabilityFunction::of(t);
            for n in 0..=8 {
                if !char_stability_check(&psi, &r, n) {
                    bad.push(format!("{name} z^{n}"));
                }
            }
        });
    }
    Outcome::rows(names.len(), "schemes", bad)
}

fn suite(result: Result<usize, String>, what: &str) -> Outcome {
    match result {
        Ok(n) => Outcome::new(true, format!("{what} hold"), format!("{n} cases")),
        Err(e) => Outcome::new(false, format!("{what} hold"), e),
    }
}

fn prop_hopf(_: &VerifyOptions) -> Outcome {
    suite(properties::hopf_axioms(6, 7), "coassociativity, counit, antipode, square root")
}

fn prop_group(o: &VerifyOptions) -> Outcome {
    suite(properties::group_axioms(o.cases, o.seed), "associativity, unit, inverses")
}

fn prop_decomposition(o: &VerifyOptions) -> Outcome {
    suite(properties::decomposition(o.cases, o.seed), "psi = even*odd, parities, odd^2 = adjoint*psi")
}

fn prop_adjoint_order(o: &VerifyOptions) -> Outcome {
    suite(properties::adjoint_order(o.cases, o.seed), "ord(psi) = ord(adjoint)")
}

fn prop_tableaux(o: &VerifyOptions) -> Outcome {
    suite(properties::tableau_functor(o.cases, o.seed), "adjoint and composition identities")
}

fn float_scheme(name: &str) -> ButcherTableau<f64> {
    library::lookup(name).expect("library scheme").to_float()
}

fn ode_reversal(_: &VerifyOptions) -> Outcome {
    let f = bsf_ode::inverse_square_problem();
    let y0 = f.initial_state().expect("initial data");
    let bounds: [(&str, f64); 3] = [("midpoint", 1e-11), ("ees25", 1e-5), ("ees27-simple", 5e-9)];
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for &(name, _, reference) in tables::INVERSE_SQUARE {
        match bsf_ode::reversal_error(&float_scheme(name), &f, &y0, 0.1, 10.0) {
            Ok(e) => {
                shown.push(format!("{name} {e:.3e}"));
                let bound = bounds.iter().find(|b| b.0 == name).map_or(20.0 * reference, |b| b.1.min(20.0 * reference));
                if e > bound {
                    bad.push(format!("{name} {e:.3e} > {bound:.1e}"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let mut out = Outcome::rows(tables::INVERSE_SQUARE.len(), "schemes", bad);
    out.expected = "each <= 20x the reference error; midpoint <= 1e-11, ees25 <= 1e-5, ees27-simple <= 5e-9".into();
    if out.status == Status::Pass {
        out.actual = shown.join(", ");
    }
    out
}

fn ode_error(_: &VerifyOptions) -> Outcome {
    let f = bsf_ode::inverse_square_problem();
    let y0 = f.initial_state().expect("initial data");
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for &(name, reference, _) in tables::INVERSE_SQUARE {
        match bsf_ode::final_error(&float_scheme(name), &f, &y0, 0.1, 10.0) {
            Ok(Some(e)) => {
                shown.push(format!("{name} {e:.4e}"));
                if (e / reference).log10().abs() >= 1.0 {
                    bad.push(format!("{name} {e:.3e} vs {reference:.3e}"));
                }
            }
            other => bad.push(format!("{name}: {other:?}")),
        }
    }
    let mut out = Outcome::rows(tables::INVERSE_SQUARE.len(), "schemes", bad);
    out.expected = "within a factor 10 of the reference errors".into();
    if out.status == Status::Pass {
        out.actual = shown.join(", ");
    }
    out
}

const DESK_STEPS: u64 = 400_000;
const FULL_STEPS: u64 = 40_000_000;

struct Galactic {
    ees_mae: f64,
    rk4_mae: f64,
    ees_points: u64,
    reference_points: u64,
}

fn galactic_desk() -> &'static Result<Galactic, String> {
    static CELL: OnceLock<Result<Galactic, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        let run = |name: &str, h: f64, n: u64| {
            galactic_run(&float_scheme(name), h, n, Interpolation::Hermite, false).map_err(|e| e.to_string())
        };
        let ees = run("ees27", 1.0 / 40.0, DESK_STEPS)?;
        let rk4 = run("rk4", 1.0 / 40.0, DESK_STEPS)?;
        // Fifth order at h/16 is accurate to well below the section tolerance.
        let reference = run("nystrom5", 1.0 / 640.0, 16 * DESK_STEPS)?;
        Ok(Galactic {
            ees_mae: ees.hamiltonian.mae(),
            rk4_mae: rk4.hamiltonian.mae(),
            ees_points: ees.crossings,
            reference_points: reference.crossings,
        })
    })
}

fn galactic_desk_mae(_: &VerifyOptions) -> Outcome {
    match galactic_desk() {
        Ok(g) => {
            let r = g.ees_mae / g.rk4_mae;
            Outcome::new(
                r <= 1e-2,
                "ratio <= 1e-2",
                format!("{r:.3e} (EES {:.3e}, RK4 {:.3e})", g.ees_mae, g.rk4_mae),
            )
        }
        Err(e) => Outcome::new(false, "ratio <= 1e-2", e.clone()),
    }
}

fn galactic_desk_count(_: &VerifyOptions) -> Outcome {
    match galactic_desk() {
        Ok(g) => {
            let rel = (g.ees_points as f64 - g.reference_points as f64).abs() / g.reference_points as f64;
            Outcome::new(
                rel <= 0.03,
                format!("within 3% of the reference's {}", g.reference_points),
                format!("{} ({:.2}%)", g.ees_points, 100.0 * rel),
            )
        }
        Err(e) => Outcome::new(false, "within 3% of the reference", e.clone()),
    }
}

fn galactic_full() -> &'static Result<(u64, f64), String> {
    static CELL: OnceLock<Result<(u64, f64), String>> = OnceLock::new();
    CELL.get_or_init(|| {
        galactic_run(&float_scheme("ees27"), 1.0 / 40.0, FULL_STEPS, Interpolation::Hermite, false)
            .map(|s| (s.crossings, s.hamiltonian.mae()))
            .map_err(|e| e.to_string())
    })
}

fn reference_ees27() -> (u64, f64) {
    let row = tables::GALACTIC.iter().find(|r| r.0 == "ees27").expect("ees27 row");
    (row.1, row.2)
}

fn galactic_full_count(_: &VerifyOptions) -> Outcome {
    let (points, _) = reference_ees27();
    match galactic_full() {
        Ok((n, _)) => {
            let rel = (*n as f64 - points as f64).abs() / points as f64;
            Outcome::new(rel <= 0.03, format!("{points} (3%)"), n.to_string())
        }
        Err(e) => Outcome::new(false, points.to_string(), e.clone()),
    }
}

fn galactic_full_mae(_: &VerifyOptions) -> Outcome {
    let (_, mae) = reference_ees27();
    match galactic_full() {
        Ok((_, m)) => Outcome::new(
            (m / mae).log10().abs() <= 1.0,
            format!("{mae:.2e} within a factor 10"),
            format!("{m:.3e}"),
        ),
        Err(e) => Outcome::new(false, format!("{mae:.2e}"), e.clone()),
    }
}

/// Elementwise comparison used by the `ees derive` report.
pub fn printed_match(family: &str, x: &Q2) -> Option<bool> {
    let p = tables::PRINTED_EES.iter().find(|p| p.family == family && quad(p.x) == *x)?;
    let t = family_tableau(family, x, Branch::Plus).ok()?;
    let lower_ok = (1..t.stages()).all(|i| (0..i).all(|j| t.a()[i][j] == quad(p.lower[i - 1][j])));
    Some(lower_ok && t.b().iter().zip(p.b).all(|(g, w)| *g == quad(w)))
}
