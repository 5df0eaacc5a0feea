use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use bsf_core::ees::{self, Branch, ConditionKind, Family};
use bsf_core::hopf;
use bsf_core::rk::{library, AnyTableau};
use bsf_core::stability::{self, RasterGrid, RasterWindow, StabilityFunction};
use bsf_core::tree::enumerate_trees;
use bsf_core::{with_tableau, ButcherTableau, Character, Field, Scalar, Tree, Q2};
use bsf_ode::{Interpolation, Ivp, OdeError, PoincareSection};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::verify::{self, VerifyOptions};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "bsf", version, about = "B-series, Hopf-algebra characters and effectively symmetric Runge-Kutta schemes")]
pub struct Cli {
    /// Truncation degree for tree and character computations.
    #[arg(long, global = true, default_value_t = 9)]
    pub degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "BSF_THREADS")]
    pub threads: Option<usize>,
    /// Seed for randomised property suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lists every rooted tree up to --degree with |τ|, σ(τ) and τ!.
    Trees,
    /// Applies a Hopf-algebra map to a tree.
    Hopf {
        tree: String,
        #[arg(value_enum)]
        op: HopfOp,
    },
    /// Square root of the identity and the odd and even parts of a tree.
    Decompose { tree: String },
    /// Named schemes and tableau files.
    #[command(subcommand)]
    Scheme(SchemeCommand),
    #[command(subcommand)]
    Ees(EesCommand),
    /// Stability function report and rasters.
    Stability(StabilityArgs),
    /// Fixed-step integration of a benchmark problem.
    Integrate(IntegrateArgs),
    /// Replays the reference tables and worked examples.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HopfOp {
    Coproduct,
    Antipode,
    Idsqrt,
    Minus,
    Plus,
    Tilde,
}

#[derive(Debug, Subcommand)]
pub enum SchemeCommand {
    /// ord, ord⁺ and structural properties of a scheme.
    Check { scheme: String },
    /// Prints the tableau as JSON.
    Show { scheme: String },
    /// Lists the built-in schemes.
    List,
}

#[derive(Debug, Subcommand)]
pub enum EesCommand {
    /// Builds a family member, or scans the selection objective.
    Derive(DeriveArgs),
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// `2,5` or `2,7`.
    #[arg(long)]
    pub family: String,
    /// A scalar such as `1/10` or `(5-3*r2)/14`, or `scan`.
    #[arg(long)]
    pub x: String,
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    /// Scan interval `lo,hi`; defaults to the family's pole-free bracket.
    #[arg(long)]
    pub bracket: Option<String>,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long)]
    pub scheme: String,
    /// Writes a raster: PGM membership image or CSV `z_re,z_im,value`.
    #[arg(long)]
    pub raster: Option<PathBuf>,
    /// Rasterise the order star instead of the stability domain.
    #[arg(long)]
    pub star: bool,
    /// Prints R(z), the A-stability verdict of the symmetric component and
    /// the stability interval on the negative real axis.
    #[arg(long)]
    pub report: bool,
    /// `re_min,re_max,im_min,im_max`.
    #[arg(long)]
    pub window: Option<String>,
    /// `WIDTHxHEIGHT`.
    #[arg(long)]
    pub size: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    InverseSquare,
    Galactic,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    #[arg(long)]
    pub scheme: String,
    #[arg(long)]
    pub h: f64,
    #[arg(long = "t-end")]
    pub t_end: f64,
    /// Integrates back to t = 0 and reports the distance to the initial state.
    #[arg(long)]
    pub reverse: bool,
    /// Writes section points `t,q1,q3,p1,p3` (galactic only).
    #[arg(long)]
    pub poincare: Option<PathBuf>,
    /// Reports the mean absolute Hamiltonian error.
    #[arg(long)]
    pub hamiltonian_mae: bool,
    /// Trajectory CSV destination. Without it the trajectory goes to stdout
    /// unless a summary was requested.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InterpolationArg::Hermite)]
    pub interpolation: InterpolationArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpolationArg {
    Hermite,
    Linear,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Runs only checks whose id starts with this prefix.
    pub filter: Option<String>,
    /// Includes the long-horizon galactic checks.
    #[arg(long)]
    pub extended: bool,
    /// Randomised cases per property suite.
    #[arg(long, default_value_t = 10_000)]
    pub cases: usize,
    /// Omits elapsed times, for byte-identical reports.
    #[arg(long)]
    pub no_timing: bool,
    /// Lists check ids without running them.
    #[arg(long)]
    pub list: bool,
}

/// Exact work above this degree takes minutes to hours.
pub const MAX_DEGREE: usize = 12;

/// Runs a parsed command and returns what it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    if !(1..=MAX_DEGREE).contains(&cli.degree) {
        return Err(CliError::Usage(format!(
            "--degree must lie in 1..={}",
            MAX_DEGREE
        )));
    }
    match &cli.command {
        Command::Trees => trees(cli),
        Command::Hopf { tree, op } => hopf_cmd(cli, tree, *op),
        Command::Decompose { tree } => decompose(cli, tree),
        Command::Scheme(SchemeCommand::Check { scheme }) => scheme_check(cli, scheme),
        Command::Scheme(SchemeCommand::Show { scheme }) => Ok(format!("{:#}\n", load_scheme(scheme)?.to_json())),
        Command::Scheme(SchemeCommand::List) => scheme_list(cli),
        Command::Ees(EesCommand::Derive(args)) => ees_derive(cli, args),
        Command::Stability(args) => stability_cmd(cli, args),
        Command::Integrate(args) => integrate(cli, args),
        Command::Verify(args) => verify_cmd(cli, args),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn no_csv(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.format == Format::Csv {
        return Err(usage(format!("{what} has no CSV form")));
    }
    Ok(())
}

fn parse_tree(s: &str) -> Result<Tree, CliError> {
    Tree::parse(s).map_err(|e| usage(format!("bad tree `{s}`: {e}")))
}

fn trees(cli: &Cli) -> Result<String, CliError> {
    let all: Vec<Tree> = (1..=cli.degree).flat_map(|n| enumerate_trees(n).iter().copied().collect::<Vec<_>>()).collect();
    let mut s = String::new();
    match cli.format {
        Format::Text => {
            for t in &all {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", t.encoding(), t.size(), t.sigma(), t.factorial());
            }
        }
        Format::Csv => {
            s.push_str("encoding,size,sigma,factorial\n");
            for t in &all {
                let _ = writeln!(s, "{},{},{},{}", t.encoding(), t.size(), t.sigma(), t.factorial());
            }
        }
        Format::Json => {
            let rows: Vec<_> = all
                .iter()
                .map(|t| json!({"encoding": t.encoding(), "size": t.size(), "sigma": t.sigma(), "factorial": t.factorial()}))
                .collect();
            let _ = writeln!(s, "{}", serde_json::Value::Array(rows));
        }
    }
    Ok(s)
}

fn element_json(x: &bsf_core::AlgebraElement<bsf_core::Rational>) -> serde_json::Value {
    x.sorted_terms()
        .into_iter()
        .map(|(f, c)| json!({"coeff": c.to_text(), "forest": f.encoding()}))
        .collect()
}

fn hopf_cmd(cli: &Cli, tree: &str, op: HopfOp) -> Result<String, CliError> {
    no_csv(cli, "hopf")?;
    let t = parse_tree(tree)?;
    if op == HopfOp::Coproduct {
        let d = hopf::coproduct_tree(t);
        return Ok(match cli.format {
            Format::Json => {
                let terms: Vec<_> = d
                    .sorted_terms()
                    .into_iter()
                    .map(|(l, r, c)| json!({"coeff": c.to_text(), "left": l.encoding(), "right": r.encoding()}))
                    .collect();
                format!("{}\n", json!({"tree": t.encoding(), "op": "coproduct", "terms": terms}))
            }
            _ => d.to_lines(),
        });
    }
    let x = match op {
        HopfOp::Antipode => hopf::antipode_tree(t),
        HopfOp::Idsqrt => hopf::id_sqrt_tree(t),
        HopfOp::Minus => hopf::tau_minus_tree(t),
        HopfOp::Plus => hopf::tau_plus_tree(t),
        HopfOp::Tilde => hopf::tau_tilde_tree(t),
        HopfOp::Coproduct => unreachable!("handled above"),
    };
    Ok(match cli.format {
        Format::Json => {
            let name = format!("{op:?}").to_lowercase();
            format!("{}\n", json!({"tree": t.encoding(), "op": name, "terms": element_json(&x)}))
        }
        _ if x.is_zero() => "0\n".into(),
        _ => x.to_lines(),
    })
}

fn decompose(cli: &Cli, tree: &str) -> Result<String, CliError> {
    no_csv(cli, "decompose")?;
    let t = parse_tree(tree)?;
    let parts = [
        ("idsqrt", hopf::id_sqrt_tree(t)),
        ("minus", hopf::tau_minus_tree(t)),
        ("plus", hopf::tau_plus_tree(t)),
        ("tilde", hopf::tau_tilde_tree(t)),
    ];
    Ok(match cli.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("tree".into(), json!(t.encoding()));
            for (name, x) in &parts {
                obj.insert((*name).into(), element_json(x));
            }
            format!("{}\n", serde_json::Value::Object(obj))
        }
        _ => {
            let mut s = String::new();
            for (name, x) in &parts {
                let _ = writeln!(s, "{name} = {x}");
            }
            s
        }
    })
}

/// A library name or a tableau JSON file.
pub fn load_scheme(spec: &str) -> Result<AnyTableau, CliError> {
    if let Some(t) = library::lookup(spec) {
        return Ok(t);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(usage(format!(
            "unknown scheme `{spec}`; known: {}",
            library::names().join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{spec}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{spec}: {e}")))?;
    AnyTableau::from_json(&value).map_err(|e| usage(format!("{spec}: {e}")))
}

struct SchemeSummary {
    name: String,
    stages: usize,
    ord: bsf_core::character::Order,
    ord_plus: bsf_core::character::Order,
    symmetric: bool,
    odd: bool,
    consistent: bool,
    explicit: bool,
}

fn summarise<S: Field>(t: &ButcherTableau<S>, degree: usize) -> SchemeSummary {
    let psi: Character<S> = t.elementary_weights(degree);
    SchemeSummary {
        name: t.name.clone(),
        stages: t.stages(),
        ord: psi.ord(),
        ord_plus: psi.ord_plus(),
        symmetric: t.is_symmetric(),
        odd: psi.is_odd(),
        consistent: t.is_consistent(),
        explicit: t.is_explicit(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn scheme_check(cli: &Cli, spec: &str) -> Result<String, CliError> {
    no_csv(cli, "scheme check")?;
    let t = load_scheme(spec)?;
    let s = with_tableau!(&t, t => summarise(t, cli.degree));
    Ok(match cli.format {
        Format::Json => format!(
            "{}\n",
            json!({
                "name": s.name,
                "stages": s.stages,
                "degree": cli.degree,
                "ord": s.ord.value,
                "ord_saturated": s.ord.saturated,
                "ord_plus": s.ord_plus.value,
                "ord_plus_saturated": s.ord_plus.saturated,
                "symmetric": s.symmetric,
                "odd_character": s.odd,
                "consistent": s.consistent,
                "explicit": s.explicit,
            })
        ),
        _ => format!(
            "name: {}\nstages: {}\ndegree: {}\nord: {}\nord+: {}\nsymmetric: {}\nodd character: {}\nconsistent: {}\nexplicit: {}\n",
            s.name,
            s.stages,
            cli.degree,
            s.ord,
            s.ord_plus,
            yes(s.symmetric),
            yes(s.odd),
            yes(s.consistent),
            yes(s.explicit)
        ),
    })
}

fn scheme_list(cli: &Cli) -> Result<String, CliError> {
    let names = library::names();
    Ok(match cli.format {
        Format::Json => format!("{}\n", json!(names)),
        _ => names.iter().map(|n| format!("{n}\n")).collect(),
    })
}

fn parse_family(s: &str, branch: Branch) -> Result<Family, CliError> {
    match s.replace(' ', "").as_str() {
        "2,5" => Ok(Family::Ees25),
        "2,7" => Ok(Family::Ees27(branch)),
        _ => Err(usage(format!("unknown family `{s}`; use 2,5 or 2,7"))),
    }
}

fn ees_derive(cli: &Cli, args: &DeriveArgs) -> Result<String, CliError> {
    let branch = Branch::from(args.branch);
    let family = parse_family(&args.family, branch)?;
    if args.x.trim() == "scan" {
        return ees_scan(cli, family, args);
    }
    no_csv(cli, "ees derive with a fixed x")?;
    let x = match Scalar::parse(&args.x).map_err(|e| usage(format!("bad x `{}`: {e}", args.x)))? {
        Scalar::Rational(r) => Q2::from_rational_part(r),
        Scalar::Quad(q) => q,
        Scalar::Float(_) => return Err(usage("x must be exact; use `scan` for floating-point searches")),
    };
    let fam_name = if family == Family::Ees25 { "2,5" } else { "2,7" };
    let t = verify::family_tableau(fam_name, &x, branch).map_err(|e| CliError::Check(e.to_string()))?;
    let (n, m) = family.orders();
    let psi = t.elementary_weights(cli.degree.max(m + 1));
    let mut report = Vec::new();
    let mut push = |kind: ConditionKind, i: usize| -> Result<(), CliError> {
        let set = ees::condition_set(kind, i).map_err(|e| CliError::Check(e.to_string()))?;
        let res = set.residuals(&psi).map_err(|e| CliError::Check(e.to_string()))?;
        let nonzero = res.iter().filter(|r| !r.is_negligible()).count();
        report.push((format!("{kind}({i})"), set.len(), nonzero));
        Ok(())
    };
    for i in 1..=n + 1 {
        push(ConditionKind::C, i)?;
    }
    for i in n + 1..=m {
        push(ConditionKind::EC, i)?;
    }
    let printed = verify::printed_match(fam_name, &x);
    let (ord, ord_plus) = (psi.ord(), psi.ord_plus());
    Ok(match cli.format {
        Format::Json => {
            let rows: Vec<_> = report
                .iter()
                .map(|(name, len, nz)| json!({"conditions": name, "count": len, "violated": nz}))
                .collect();
            format!(
                "{}\n",
                json!({
                    "tableau": t.to_json(),
                    "ord": ord.value,
                    "ord_plus": ord_plus.value,
                    "residuals": rows,
                    "matches_printed": printed,
                })
            )
        }
        _ => {
            let mut s = format!("{:#}\n", t.to_json());
            for (name, len, nz) in &report {
                let _ = writeln!(s, "{name}: {len} conditions, {nz} violated");
            }
            let _ = writeln!(s, "ord: {ord}\nord+: {ord_plus}");
            if let Some(m) = printed {
                let _ = writeln!(s, "matches printed tableau: {}", yes(m));
            }
            s
        }
    })
}

fn pair(s: &str, what: &str) -> Result<(f64, f64), CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("bad {what} `{s}`: {e}")))?;
    match v[..] {
        [a, b] if a < b => Ok((a, b)),
        _ => Err(usage(format!("{what} must be `lo,hi` with lo < hi"))),
    }
}

fn ees_scan(cli: &Cli, family: Family, args: &DeriveArgs) -> Result<String, CliError> {
    let (lo, hi) = match &args.bracket {
        Some(b) => pair(b, "bracket")?,
        None => family.default_bracket(),
    };
    if args.step.is_nan() || args.step <= 0.0 {
        return Err(usage("--step must be positive"));
    }
    let fail = |e: ees::EesError| match e {
        ees::EesError::PoleInBracket { .. } => usage(e.to_string()),
        other => CliError::Check(other.to_string()),
    };
    let scan = ees::scan_objective(family, lo, hi, args.step).map_err(fail)?;
    let best = ees::minimize_objective(family, (lo, hi)).map_err(fail)?;
    Ok(match cli.format {
        Format::Json => {
            let pts: Vec<_> = scan.iter().map(|(x, f)| json!([x, f])).collect();
            format!("{}\n", json!({"family": family.to_string(), "scan": pts, "minimiser": best}))
        }
        _ => {
            let mut s = String::from("x,objective\n");
            for (x, f) in &scan {
                let _ = writeln!(s, "{x},{f}");
            }
            eprintln!("minimiser: x = {best:.6}");
            s
        }
    })
}

fn window(args: &StabilityArgs) -> Result<RasterWindow, CliError> {
    let mut w = RasterWindow::default();
    if let Some(spec) = &args.window {
        let v: Vec<f64> = spec
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| usage(format!("bad window `{spec}`: {e}")))?;
        match v[..] {
            [a, b, c, d] if a < b && c < d => {
                w.re = (a, b);
                w.im = (c, d);
            }
            _ => return Err(usage("window must be re_min,re_max,im_min,im_max")),
        }
    }
    if let Some(size) = &args.size {
        let (a, b) = size.split_once('x').ok_or_else(|| usage("size must be WIDTHxHEIGHT"))?;
        let parse = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 2);
        match (parse(a), parse(b)) {
            (Some(x), Some(y)) => {
                w.width = x;
                w.height = y;
            }
            _ => return Err(usage("size must be WIDTHxHEIGHT with both at least 2")),
        }
    }
    Ok(w)
}

fn write_raster(grid: &RasterGrid, path: &Path) -> Result<(), CliError> {
    let w = grid.window;
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
        write!(out, "P5\n{} {}\n255\n", w.width, w.height).map_err(io)?;
        let bytes: Vec<u8> = (0..w.height)
            .flat_map(|r| (0..w.width).map(move |c| (r, c)))
            .map(|(r, c)| if grid.inside(r, c) { 255 } else { 0 })
            .collect();
        out.write_all(&bytes).map_err(io)?;
    } else {
        writeln!(out, "z_re,z_im,value").map_err(io)?;
        for r in 0..w.height {
            for c in 0..w.width {
                let z = w.point(r, c);
                writeln!(out, "{},{},{}", z.re, z.im, grid.get(r, c)).map_err(io)?;
            }
        }
    }
    out.flush().map_err(io)
}

fn stability_cmd(cli: &Cli, args: &StabilityArgs) -> Result<String, CliError> {
    no_csv(cli, "stability report")?;
    let t = load_scheme(&args.scheme)?;
    let win = window(args)?;
    let mut s = String::new();
    let mut obj = serde_json::Map::new();
    if let Some(path) = &args.raster {
        let grid = with_tableau!(&t, t => {
            let r = StabilityFunction::of(t);
            if args.star { stability::raster_order_star(&r, win) } else { stability::raster_domain(&r, win) }
        });
        write_raster(&grid, path)?;
        let _ = writeln!(s, "wrote {} ({}x{}, coverage {:.4})", path.display(), win.width, win.height, grid.coverage());
        obj.insert("raster".into(), json!(path.display().to_string()));
        obj.insert("coverage".into(), json!(grid.coverage()));
    }
    if args.report || args.raster.is_none() {
        let report = with_tableau!(&t, t => stability_report(t))?;
        s.push_str(&report.0);
        for (k, v) in report.1 {
            obj.insert(k, v);
        }
    }
    Ok(match cli.format {
        Format::Json => format!("{}\n", serde_json::Value::Object(obj)),
        _ => s,
    })
}

type Report = (String, serde_json::Map<String, serde_json::Value>);

fn stability_report<S: Field>(t: &ButcherTableau<S>) -> Result<Report, CliError> {
    let r = StabilityFunction::of(t);
    let mut s = String::new();
    let mut obj = serde_json::Map::new();
    let _ = writeln!(s, "scheme: {}", t.name);
    let _ = writeln!(s, "R(z) = {r:?}");
    obj.insert("scheme".into(), json!(t.name));
    obj.insert("numerator".into(), json!(r.numerator.coeffs().iter().map(|c| c.to_text()).collect::<Vec<_>>()));
    obj.insert("denominator".into(), json!(r.denominator.coeffs().iter().map(|c| c.to_text()).collect::<Vec<_>>()));
    let extent = r.negative_real_extent(1e-3, 50.0);
    let _ = writeln!(s, "negative real stability interval: {extent:.3}");
    obj.insert("negative_real_extent".into(), json!(extent));
    if t.is_explicit() {
        let (verdict, roots) = stability::a_stable_symmetric_component(t).map_err(|e| CliError::Numerical(e.to_string()))?;
        let _ = writeln!(s, "symmetric component: {}", verdict.label());
        for z in &roots {
            let _ = writeln!(s, "  root {:.12} {:+.12}i", z.re, z.im);
        }
        obj.insert("symmetric_component".into(), json!(verdict.label()));
        obj.insert("roots".into(), json!(roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()));
    }
    Ok((s, obj))
}

fn ode_error(e: OdeError) -> CliError {
    match e {
        OdeError::ImplicitSolveDiverged { .. } => CliError::Numerical(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn integrate(cli: &Cli, args: &IntegrateArgs) -> Result<String, CliError> {
    if cli.format == Format::Json {
        return Err(usage("integrate writes CSV"));
    }
    let scheme = load_scheme(&args.scheme)?.to_float();
    let problem: Box<dyn Ivp> = match args.problem {
        Problem::InverseSquare => Box::new(bsf_ode::inverse_square_problem()),
        Problem::Galactic => Box::new(bsf_ode::galactic_problem()),
    };
    let f = problem.as_ref();
    if args.poincare.is_some() && args.problem != Problem::Galactic {
        return Err(usage("--poincare needs the galactic problem"));
    }
    let y0 = f.initial_state().expect("benchmark problems have initial data");
    let n = bsf_ode::step_count(args.h, args.t_end).map_err(ode_error)?;
    let summaries = args.reverse || args.poincare.is_some() || args.hamiltonian_mae;
    let mut traj: Option<Box<dyn std::io::Write>> = match &args.output {
        Some(p) => Some(Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        ))),
        None if !summaries => Some(Box::new(std::io::BufWriter::new(std::io::stdout()))),
        None => None,
    };
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    if let Some(w) = traj.as_mut() {
        let cols: Vec<String> = (1..=f.dim()).map(|i| format!("y{i}")).collect();
        writeln!(w, "t,{}", cols.join(",")).map_err(io)?;
        writeln!(w, "0,{}", join(&y0)).map_err(io)?;
    }
    let interpolation = match args.interpolation {
        InterpolationArg::Hermite => Interpolation::Hermite,
        InterpolationArg::Linear => Interpolation::Linear,
    };
    let mut section = PoincareSection::new(f, interpolation, true);
    section.start(0.0, &y0);
    let h0 = f.hamiltonian(&y0);
    let mut stats = h0.map(bsf_ode::HamiltonianStats::new);
    let mut write_err = None;
    let y_end = bsf_ode::integrate_streaming(&scheme, f, &y0, args.h, n, |_, t, prev, y| {
        if let Some(w) = traj.as_mut() {
            if let Err(e) = writeln!(w, "{t},{}", join(y)) {
                write_err.get_or_insert(e);
            }
        }
        if args.poincare.is_some() {
            section.observe(t - args.h, args.h, prev, y);
        }
        if let (Some(st), true) = (stats.as_mut(), args.hamiltonian_mae) {
            st.push(t, f.hamiltonian(y).expect("hamiltonian available"));
        }
    })
    .map_err(ode_error)?;
    if let Some(e) = write_err {
        return Err(io(e));
    }
    if let Some(mut w) = traj {
        w.flush().map_err(io)?;
    }
    let mut s = String::new();
    let _ = writeln!(s, "steps: {n}");
    if let Some(exact) = f.exact_solution(n as f64 * args.h) {
        let _ = writeln!(s, "error: {:e}", bsf_ode::distance(&y_end, &exact));
    }
    if args.reverse {
        let back = bsf_ode::integrate_streaming(&scheme, f, &y_end, -args.h, n, |_, _, _, _| {}).map_err(ode_error)?;
        let _ = writeln!(s, "reversal error: {:e}", bsf_ode::distance(&back, &y0));
    }
    if args.hamiltonian_mae {
        match &stats {
            Some(st) => {
                let _ = writeln!(s, "hamiltonian mae: {:e}\nhamiltonian max: {:e}", st.mae(), st.max_abs());
            }
            None => return Err(usage("the problem has no Hamiltonian")),
        }
    }
    if let Some(path) = &args.poincare {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
        writeln!(w, "t,q1,q3,p1,p3").map_err(io)?;
        for c in section.points() {
            writeln!(w, "{},{}", c.t, join(&c.section_coordinates())).map_err(io)?;
        }
        w.flush().map_err(io)?;
        let _ = writeln!(s, "poincare points: {}", section.count());
    }
    if args.output.is_none() && !summaries {
        return Ok(String::new());
    }
    if args.output.is_none() {
        return Ok(s);
    }
    eprint!("{s}");
    Ok(String::new())
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn verify_cmd(cli: &Cli, args: &VerifyArgs) -> Result<String, CliError> {
    no_csv(cli, "verify")?;
    if args.list {
        return Ok(verify::CHECKS
            .iter()
            .map(|c| format!("{}{}\n", c.id, if c.extended_only { " (extended)" } else { "" }))
            .collect());
    }
    let filter = args.filter.as_deref();
    if let Some(f) = filter {
        if !verify::CHECKS.iter().any(|c| c.id.starts_with(f)) {
            return Err(usage(format!("no check id starts with `{f}`")));
        }
    }
    let opts = VerifyOptions {
        extended: args.extended,
        cases: args.cases,
        seed: cli.seed,
    };
    let report = verify::run(filter, &opts);
    let out = match cli.format {
        Format::Json => format!("{:#}\n", report.to_json(!args.no_timing)),
        _ => report.to_text(!args.no_timing),
    };
    if report.has_failures() {
        return Err(CliError::CheckReport(out));
    }
    Ok(out)
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}
