//! Butcher tableaux, their characters, adjoints and compositions.

use std::collections::HashMap;
use std::fmt;

use crate::character::Character;
use crate::scalar::{ratio, Field, QuadExt, Rational, Scalar, ScalarError, ScalarKind};
use crate::tree::{trees_up_to, Tree};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TableauError {
    #[error("tableau dimensions do not match: {0}")]
    Dimension(String),
    #[error("composition weight θ must lie in (0, 1], got {0}")]
    InvalidTheta(String),
    #[error("invalid tableau JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An `s`-stage Runge–Kutta method. The abscissae `c` are always the row sums
/// of `A`.
#[derive(Clone, PartialEq)]
pub struct ButcherTableau<S> {
    pub name: String,
    a: Vec<Vec<S>>,
    b: Vec<S>,
    c: Vec<S>,
}

impl<S: Field> ButcherTableau<S> {
    pub fn new(name: impl Into<String>, a: Vec<Vec<S>>, b: Vec<S>) -> Result<Self, TableauError> {
        let s = b.len();
        if s == 0 {
            return Err(TableauError::Dimension("no stages".into()));
        }
        if a.len() != s || a.iter().any(|row| row.len() != s) {
            return Err(TableauError::Dimension(format!(
                "A must be {s}x{s} to match b"
            )));
        }
        let c = a
            .iter()
            .map(|row| row.iter().fold(S::zero(), |acc, x| acc + x.clone()))
            .collect();
        Ok(ButcherTableau {
            name: name.into(),
            a,
            b,
            c,
        })
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Vec<S>] {
        &self.a
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    pub fn c(&self) -> &[S] {
        &self.c
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `A` strictly lower triangular.
    pub fn is_explicit(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(i, row)| row[i..].iter().all(|x| x.is_zero()))
    }

    /// `Σ bᵢ = 1`.
    pub fn is_consistent(&self) -> bool {
        let sum = self.b.iter().fold(S::zero(), |acc, x| acc + x.clone());
        (sum - S::one()).is_negligible()
    }

    /// `a_{s+1−i, s+1−j} + a_{ij} = b_{s+1−j} = b_j` entrywise.
    pub fn is_symmetric(&self) -> bool {
        let s = self.stages();
        (0..s).all(|j| (self.b[s - 1 - j].clone() - self.b[j].clone()).is_negligible())
            && (0..s).all(|i| {
                (0..s).all(|j| {
                    (self.a[s - 1 - i][s - 1 - j].clone() + self.a[i][j].clone()
                        - self.b[j].clone())
                    .is_negligible()
                })
            })
    }

    /// Elementary weights `ψ(τ) = bᵀ Φ(τ)` with
    /// `Φ([τ₁ … τₖ]) = ∏ₗ A Φ(τₗ)` componentwise and `Φ(•) = 𝟙`.
    pub fn elementary_weights(&self, truncation: usize) -> Character<S> {
        let s = self.stages();
        // Stage vectors A·Φ(τ) for every tree seen so far.
        let mut internal: HashMap<Tree, Vec<S>> = HashMap::new();
        let mut values = Vec::new();
        for t in trees_up_to(truncation) {
            let mut phi = vec![S::one(); s];
            for &child in t.children() {
                let g = &internal[&child];
                for (p, gi) in phi.iter_mut().zip(g) {
                    *p *= gi;
                }
            }
            let weight = dot(&self.b, &phi);
            let g = self.a.iter().map(|row| dot(row, &phi)).collect();
            internal.insert(t, g);
            values.push(weight);
        }
        let mut it = values.into_iter();
        Character::from_fn(truncation, |_| it.next().expect("one weight per tree"))
    }

    /// `a*ᵢⱼ = b_{s+1−j} − a_{s+1−i,s+1−j}`, `b*ⱼ = b_{s+1−j}`.
    pub fn adjoint(&self) -> Self {
        let s = self.stages();
        let a = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| self.b[s - 1 - j].clone() - self.a[s - 1 - i][s - 1 - j].clone())
                    .collect()
            })
            .collect();
        let b = (0..s).map(|j| self.b[s - 1 - j].clone()).collect();
        ButcherTableau::new(format!("{}*", self.name), a, b).expect("square by construction")
    }

    /// `self` over `θh` followed by `next` over `(1−θ)h`. For `θ = 1` both run
    /// over a full step `h` and the composite spans `2h`, so its character is
    /// the convolution of the two characters.
    #[allow(clippy::needless_range_loop)]
    pub fn compose(&self, next: &Self, theta: &S) -> Result<Self, TableauError> {
        let th = theta.to_f64();
        if !(th > 0.0 && th <= 1.0) {
            return Err(TableauError::InvalidTheta(theta.to_text()));
        }
        let (w1, w2) = if theta.is_one() {
            (S::one(), S::one())
        } else {
            (theta.clone(), S::one() - theta.clone())
        };
        let (s1, s2) = (self.stages(), next.stages());
        let mut a = vec![vec![S::zero(); s1 + s2]; s1 + s2];
        for i in 0..s1 {
            for j in 0..s1 {
                a[i][j] = w1.clone() * self.a[i][j].clone();
            }
        }
        for i in 0..s2 {
            for j in 0..s1 {
                a[s1 + i][j] = w1.clone() * self.b[j].clone();
            }
            for j in 0..s2 {
                a[s1 + i][s1 + j] = w2.clone() * next.a[i][j].clone();
            }
        }
        let b = self
            .b
            .iter()
            .map(|x| w1.clone() * x.clone())
            .chain(next.b.iter().map(|x| w2.clone() * x.clone()))
            .collect();
        ButcherTableau::new(format!("{}∘{}", next.name, self.name), a, b)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> ButcherTableau<T> {
        ButcherTableau {
            name: self.name.clone(),
            a: self.a.iter().map(|r| r.iter().map(&f).collect()).collect(),
            b: self.b.iter().map(&f).collect(),
            c: self.c.iter().map(&f).collect(),
        }
    }

    pub fn to_float(&self) -> ButcherTableau<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let text = |v: &[S]| v.iter().map(|x| x.to_text()).collect::<Vec<_>>();
        serde_json::json!({
            "name": self.name,
            "A": self.a.iter().map(|r| text(r)).collect::<Vec<_>>(),
            "b": text(&self.b),
            "c": text(&self.c),
        })
    }

    /// Reads `{name, A, b}`; any `c` present is ignored and recomputed.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, TableauError> {
        let raw = RawTableau::from_json(value)?;
        let parse = |s: &String| S::parse_text(s).map_err(TableauError::from);
        let a = raw
            .a
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let b = raw.b.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        ButcherTableau::new(raw.name, a, b)
    }
}

fn dot<S: Field>(x: &[S], y: &[S]) -> S {
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() {
            acc += &(a.clone() * b.clone());
        }
    }
    acc
}

impl<S: Field> fmt::Debug for ButcherTableau<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Field> fmt::Display for ButcherTableau<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for (ci, row) in self.c.iter().zip(&self.a) {
            let cells: Vec<String> = row.iter().map(|x| x.to_text()).collect();
            writeln!(f, "{} | {}", ci.to_text(), cells.join("  "))?;
        }
        let cells: Vec<String> = self.b.iter().map(|x| x.to_text()).collect();
        write!(f, "  | {}", cells.join("  "))
    }
}

struct RawTableau {
    name: String,
    a: Vec<Vec<String>>,
    b: Vec<String>,
}

impl RawTableau {
    fn from_json(value: &serde_json::Value) -> Result<Self, TableauError> {
        let bad = |m: &str| TableauError::Json(m.to_string());
        let strings = |v: &serde_json::Value| -> Result<Vec<String>, TableauError> {
            v.as_array()
                .ok_or_else(|| bad("expected an array of scalar strings"))?
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    _ => Err(bad("entries must be scalar strings")),
                })
                .collect()
        };
        let name = value
            .get("name")
            .and_then(|v| v.as_str())
            .unwrap_or("tableau")
            .to_string();
        let a = value
            .get("A")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing array field `A`"))?
            .iter()
            .map(strings)
            .collect::<Result<Vec<_>, _>>()?;
        let b = strings(value.get("b").ok_or_else(|| bad("missing array field `b`"))?)?;
        Ok(RawTableau { name, a, b })
    }
}

/// A tableau over whichever field its entries require.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTableau {
    Rational(ButcherTableau<Rational>),
    Quad(ButcherTableau<QuadExt<2>>),
    Quad3(ButcherTableau<QuadExt<3>>),
    Float(ButcherTableau<f64>),
}

/// Applies a generic expression to whichever tableau variant is present.
#[macro_export]
macro_rules! with_tableau {
    ($any:expr, $t:ident => $body:expr) => {
        match $any {
            $crate::rk::AnyTableau::Rational($t) => $body,
            $crate::rk::AnyTableau::Quad($t) => $body,
            $crate::rk::AnyTableau::Quad3($t) => $body,
            $crate::rk::AnyTableau::Float($t) => $body,
        }
    };
}

impl AnyTableau {
    pub fn name(&self) -> &str {
        with_tableau!(self, t => &t.name)
    }

    pub fn to_float(&self) -> ButcherTableau<f64> {
        with_tableau!(self, t => t.to_float())
    }

    pub fn to_json(&self) -> serde_json::Value {
        with_tableau!(self, t => t.to_json())
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AnyTableau::Float(_))
    }

    /// Parses a tableau file, choosing the smallest field that holds every
    /// entry (`Q`, then `Q(√2)`, then floats).
    pub fn from_json(value: &serde_json::Value) -> Result<Self, TableauError> {
        let raw = RawTableau::from_json(value)?;
        let parse = |s: &String| Scalar::parse(s).map_err(TableauError::from);
        let a = raw
            .a
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let b = raw.b.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let kind = Scalar::common_kind(a.iter().flatten().chain(b.iter()));
        let promote = |v: &Scalar| v.promote(kind);
        let a: Vec<Vec<Scalar>> = a
            .iter()
            .map(|r| r.iter().map(promote).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let b: Vec<Scalar> = b.iter().map(promote).collect::<Result<_, _>>()?;
        fn build<S: Field>(
            name: String,
            a: &[Vec<Scalar>],
            b: &[Scalar],
            get: impl Fn(&Scalar) -> S,
        ) -> Result<ButcherTableau<S>, TableauError> {
            ButcherTableau::new(
                name,
                a.iter().map(|r| r.iter().map(&get).collect()).collect(),
                b.iter().map(&get).collect(),
            )
        }
        Ok(match kind {
            ScalarKind::Rational => AnyTableau::Rational(build(raw.name, &a, &b, |s| match s {
                Scalar::Rational(r) => r.clone(),
                _ => unreachable!("promoted"),
            })?),
            ScalarKind::Quad => AnyTableau::Quad(build(raw.name, &a, &b, |s| match s {
                Scalar::Quad(q) => q.clone(),
                _ => unreachable!("promoted"),
            })?),
            ScalarKind::Float => AnyTableau::Float(build(raw.name, &a, &b, Scalar::to_float)?),
        })
    }
}

impl fmt::Display for AnyTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        with_tableau!(self, t => write!(f, "{t}"))
    }
}

/// Named methods.
pub mod library {
    use super::*;

    type QTab = ButcherTableau<Rational>;

    fn q(rows: &[&[(i64, i64)]], b: &[(i64, i64)], name: &str) -> QTab {
        ButcherTableau::new(
            name,
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
                .collect(),
            b.iter().map(|&(n, d)| ratio(n, d)).collect(),
        )
        .expect("library tableaux are well formed")
    }

    pub fn explicit_euler() -> QTab {
        q(&[&[(0, 1)]], &[(1, 1)], "euler")
    }

    pub fn backward_euler() -> QTab {
        q(&[&[(1, 1)]], &[(1, 1)], "backward-euler")
    }

    pub fn implicit_midpoint() -> QTab {
        q(&[&[(1, 2)]], &[(1, 1)], "midpoint")
    }

    pub fn trapezoidal() -> QTab {
        q(&[&[(0, 1), (0, 1)], &[(1, 2), (1, 2)]], &[(1, 2), (1, 2)], "trapezoidal")
    }

    /// Two-stage Gauss collocation, order 4; entries live in `Q(√3)`.
    pub fn gauss2() -> ButcherTableau<QuadExt<3>> {
        let e = |a: (i64, i64), b: (i64, i64)| QuadExt::new(ratio(a.0, a.1), ratio(b.0, b.1));
        ButcherTableau::new(
            "gauss2",
            vec![
                vec![e((1, 4), (0, 1)), e((1, 4), (-1, 6))],
                vec![e((1, 4), (1, 6)), e((1, 4), (0, 1))],
            ],
            vec![e((1, 2), (0, 1)), e((1, 2), (0, 1))],
        )
        .expect("well formed")
    }

    pub fn heun2() -> QTab {
        q(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]], &[(1, 2), (1, 2)], "heun2")
    }

    pub fn heun3() -> QTab {
        q(
            &[
                &[(0, 1), (0, 1), (0, 1)],
                &[(1, 3), (0, 1), (0, 1)],
                &[(0, 1), (2, 3), (0, 1)],
            ],
            &[(1, 4), (0, 1), (3, 4)],
            "heun3",
        )
    }

    pub fn kutta3() -> QTab {
        q(
            &[
                &[(0, 1), (0, 1), (0, 1)],
                &[(1, 2), (0, 1), (0, 1)],
                &[(-1, 1), (2, 1), (0, 1)],
            ],
            &[(1, 6), (2, 3), (1, 6)],
            "kutta3",
        )
    }

    pub fn rk4() -> QTab {
        q(
            &[
                &[(0, 1), (0, 1), (0, 1), (0, 1)],
                &[(1, 2), (0, 1), (0, 1), (0, 1)],
                &[(0, 1), (1, 2), (0, 1), (0, 1)],
                &[(0, 1), (0, 1), (1, 1), (0, 1)],
            ],
            &[(1, 6), (1, 3), (1, 3), (1, 6)],
            "rk4",
        )
    }

    /// Ralston's minimum-error fourth-order method. Its coefficients involve
    /// `√5`, so it is provided in floating point.
    pub fn ralston4() -> ButcherTableau<f64> {
        let r5 = 5f64.sqrt();
        let a = vec![
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.4, 0.0, 0.0, 0.0],
            vec![
                (-2889.0 + 1428.0 * r5) / 1024.0,
                (3785.0 - 1620.0 * r5) / 1024.0,
                0.0,
                0.0,
            ],
            vec![
                (-3365.0 + 2094.0 * r5) / 6040.0,
                (-975.0 - 3046.0 * r5) / 2552.0,
                (467040.0 + 203968.0 * r5) / 240845.0,
                0.0,
            ],
        ];
        let b = vec![
            (263.0 + 24.0 * r5) / 1812.0,
            (125.0 - 1000.0 * r5) / 3828.0,
            (3426304.0 + 1661952.0 * r5) / 5924787.0,
            (30.0 - 4.0 * r5) / 123.0,
        ];
        ButcherTableau::new("ralston4", a, b).expect("well formed")
    }

    /// Nyström's six-stage fifth-order method.
    pub fn nystrom5() -> QTab {
        let z = (0, 1);
        q(
            &[
                &[z, z, z, z, z, z],
                &[(1, 3), z, z, z, z, z],
                &[(4, 25), (6, 25), z, z, z, z],
                &[(1, 4), (-3, 1), (15, 4), z, z, z],
                &[(2, 27), (10, 9), (-50, 81), (8, 81), z, z],
                &[(2, 25), (12, 25), (2, 15), (8, 75), z, z],
            ],
            &[(23, 192), z, (125, 192), z, (-27, 64), (125, 192)],
            "nystrom5",
        )
    }

    /// `Ω_λ`: `c = (2λ, −2λ)`, `A = [[λ, λ], [−λ, −λ]]`, `b = (λ, −λ)`.
    /// Deliberately inconsistent (`Σb = 0`); its character is even.
    pub fn omega_lambda<S: Field>(lambda: S) -> ButcherTableau<S> {
        let m = -lambda.clone();
        ButcherTableau::new(
            format!("omega[{}]", lambda.to_text()),
            vec![vec![lambda.clone(), lambda.clone()], vec![m.clone(), m.clone()]],
            vec![lambda, m],
        )
        .expect("well formed")
    }

    /// The two-stage DIRK printed as the squared symmetric component of the
    /// implicit midpoint rule: `A = [[1/2, 0], [1, 1/2]]`, `b = (1/2, 1/2)`.
    pub fn printed_midpoint_square() -> QTab {
        q(
            &[&[(1, 2), (0, 1)], &[(1, 1), (1, 2)]],
            &[(1, 2), (1, 2)],
            "midpoint-square-printed",
        )
    }

    /// Paper-independent metadata used by test harnesses.
    #[derive(Debug, Clone, Copy)]
    pub struct Entry {
        pub name: &'static str,
        pub order: usize,
        pub symmetric: bool,
    }

    pub const ENTRIES: &[Entry] = &[
        Entry { name: "euler", order: 1, symmetric: false },
        Entry { name: "backward-euler", order: 1, symmetric: false },
        Entry { name: "midpoint", order: 2, symmetric: true },
        Entry { name: "trapezoidal", order: 2, symmetric: true },
        Entry { name: "gauss2", order: 4, symmetric: true },
        Entry { name: "heun2", order: 2, symmetric: false },
        Entry { name: "heun3", order: 3, symmetric: false },
        Entry { name: "kutta3", order: 3, symmetric: false },
        Entry { name: "rk4", order: 4, symmetric: false },
        Entry { name: "ralston4", order: 4, symmetric: false },
        Entry { name: "nystrom5", order: 5, symmetric: false },
        Entry { name: "ees25", order: 2, symmetric: false },
        Entry { name: "ees25-quarter", order: 2, symmetric: false },
        Entry { name: "ees27", order: 2, symmetric: false },
        Entry { name: "ees27-simple", order: 2, symmetric: false },
    ];

    /// Looks up a method by name.
    pub fn lookup(name: &str) -> Option<AnyTableau> {
        use crate::ees;
        Some(match name {
            "euler" => AnyTableau::Rational(explicit_euler()),
            "backward-euler" => AnyTableau::Rational(backward_euler()),
            "midpoint" => AnyTableau::Rational(implicit_midpoint()),
            "trapezoidal" => AnyTableau::Rational(trapezoidal()),
            "gauss2" => AnyTableau::Quad3(gauss2()),
            "heun2" => AnyTableau::Rational(heun2()),
            "heun3" => AnyTableau::Rational(heun3()),
            "kutta3" => AnyTableau::Rational(kutta3()),
            "rk4" => AnyTableau::Rational(rk4()),
            "ralston4" => AnyTableau::Float(ralston4()),
            "nystrom5" => AnyTableau::Rational(nystrom5()),
            "midpoint-square-printed" => AnyTableau::Rational(printed_midpoint_square()),
            "omega" => AnyTableau::Rational(omega_lambda(ratio(1, 3))),
            "ees25" => AnyTableau::Rational(ees::ees25_tableau(&ratio(1, 10)).ok()?.with_name("ees25")),
            "ees25-quarter" => {
                AnyTableau::Rational(ees::ees25_tableau(&ratio(1, 4)).ok()?.with_name("ees25-quarter"))
            }
            "ees27" => AnyTableau::Quad(
                ees::ees27_tableau(&ees::ees27_optimal_x(), ees::Branch::Plus)
                    .ok()?
                    .with_name("ees27"),
            ),
            "ees27-simple" => AnyTableau::Quad(
                ees::ees27_tableau(&ees::ees27_simple_x(), ees::Branch::Plus)
                    .ok()?
                    .with_name("ees27-simple"),
            ),
            _ => return None,
        })
    }

    /// Every name accepted by [`lookup`].
    pub fn names() -> Vec<&'static str> {
        let mut v: Vec<&'static str> = ENTRIES.iter().map(|e| e.name).collect();
        v.extend(["midpoint-square-printed", "omega"]);
        v
    }
}

/// How the printed two-stage DIRK relates to the implicit midpoint rule
/// composed with itself.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionFinding {
    /// `Σ bᵢcᵢ` of the printed tableau.
    pub sum_bc: Rational,
    /// Agreement of characters to `degree` with the `θ = 1` composite.
    pub matches_full_steps: bool,
    /// Agreement of characters to `degree` with the `θ = 1/2` composite.
    pub matches_half_steps: bool,
    /// The printed `A` equals the `θ = 1` stage matrix entrywise.
    pub stage_matrix_is_full_step: bool,
    /// The printed `b` equals the `θ = 1/2` weights.
    pub weights_are_half_step: bool,
    pub order: usize,
    pub degree: usize,
}

impl CompositionFinding {
    pub fn is_consistent_with_a_composition(&self) -> bool {
        self.matches_full_steps || self.matches_half_steps
    }
}

impl fmt::Display for CompositionFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum b_i c_i = {}; matches theta=1: {}; matches theta=1/2: {}; \
             A is the theta=1 stage matrix: {}; b is the theta=1/2 weight vector: {}; order {}",
            self.sum_bc.to_text(),
            self.matches_full_steps,
            self.matches_half_steps,
            self.stage_matrix_is_full_step,
            self.weights_are_half_step,
            self.order,
        )
    }
}

/// Compares the printed DIRK with both compositions of the implicit midpoint
/// rule with itself, through characters up to `degree`.
pub fn printed_midpoint_square_finding(degree: usize) -> CompositionFinding {
    let printed = library::printed_midpoint_square();
    let m = library::implicit_midpoint();
    let full = m.compose(&m, &Rational::from_integer(1.into())).expect("θ = 1 is valid");
    let half = m.compose(&m, &ratio(1, 2)).expect("θ = 1/2 is valid");
    let psi = printed.elementary_weights(degree);
    let sum_bc = printed
        .b()
        .iter()
        .zip(printed.c())
        .fold(Rational::from_integer(0.into()), |acc, (b, c)| acc + b.clone() * c.clone());
    CompositionFinding {
        sum_bc,
        matches_full_steps: psi.agrees_with(&full.elementary_weights(degree)),
        matches_half_steps: psi.agrees_with(&half.elementary_weights(degree)),
        stage_matrix_is_full_step: printed.a() == full.a(),
        weights_are_half_step: printed.b() == half.b(),
        order: psi.ord().value,
        degree,
    }
}
