use std::fmt;

use num_traits::{One, Zero};

use super::{text, Field, QuadExt, Rational, ScalarError};

/// Which concrete field a [`Scalar`] lives in. Ordered by promotion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalarKind {
    Rational,
    Quad,
    Float,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Quad => "Q(√2)",
            ScalarKind::Float => "float",
        })
    }
}

/// A tagged scalar. Arithmetic requires both operands to share a variant;
/// promotion `Rational → Quad → Float` must be requested explicitly.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadExt<2>),
    Float(f64),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Quad(_) => ScalarKind::Quad,
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    /// Least kind that can hold every value.
    pub fn common_kind<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> ScalarKind {
        values
            .into_iter()
            .map(Scalar::kind)
            .max()
            .unwrap_or(ScalarKind::Rational)
    }

    pub fn promote(&self, to: ScalarKind) -> Result<Scalar, ScalarError> {
        use Scalar::*;
        Ok(match (self, to) {
            (Rational(r), ScalarKind::Rational) => Rational(r.clone()),
            (Rational(r), ScalarKind::Quad) => Quad(QuadExt::from_rational_part(r.clone())),
            (Rational(r), ScalarKind::Float) => Float(Field::to_f64(r)),
            (Quad(q), ScalarKind::Quad) => Quad(q.clone()),
            (Quad(q), ScalarKind::Float) => Float(q.to_f64()),
            (Float(x), ScalarKind::Float) => Float(*x),
            (s, to) => {
                return Err(ScalarError::Demotion {
                    from: s.kind(),
                    to,
                })
            }
        })
    }

    fn binary(
        &self,
        rhs: &Scalar,
        rat: impl FnOnce(&Rational, &Rational) -> Result<Rational, ScalarError>,
        quad: impl FnOnce(&QuadExt<2>, &QuadExt<2>) -> Result<QuadExt<2>, ScalarError>,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar, ScalarError> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => rat(a, b).map(Scalar::Rational),
            (Scalar::Quad(a), Scalar::Quad(b)) => quad(a, b).map(Scalar::Quad),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            (a, b) => Err(ScalarError::MixedVariant(a.kind(), b.kind())),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| Ok(a + b), |a, b| Ok(a.clone() + b.clone()), |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| Ok(a - b), |a, b| Ok(a.clone() - b.clone()), |a, b| a - b)
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| Ok(a * b), |a, b| Ok(a.clone() * b.clone()), |a, b| a * b)
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.binary(rhs, |a, b| Ok(a / b), |a, b| a.checked_div(b), |a, b| a / b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Quad(q) => Scalar::Quad(-q.clone()),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        if exp < 0 && self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.powi(exp)),
            Scalar::Quad(q) => Scalar::Quad(q.powi(exp)),
            Scalar::Float(x) => Scalar::Float(x.powi(exp)),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Quad(q) => q.is_one(),
            Scalar::Float(x) => *x == 1.0,
        }
    }

    pub fn to_float(&self) -> f64 {
        match self {
            Scalar::Rational(r) => Field::to_f64(r),
            Scalar::Quad(q) => q.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    /// Parses the scalar grammar. Decimal or exponent notation yields a float;
    /// otherwise the value is exact, and rational whenever no `r2` survives.
    pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
        let t = text.trim();
        let looks_float = t.contains(['.', 'e', 'E']) || t.contains("inf") || t.contains("NaN");
        if looks_float {
            return t.parse::<f64>().map(Scalar::Float).map_err(|e| ScalarError::Parse {
                offset: 0,
                message: e.to_string(),
            });
        }
        let q: QuadExt<2> = text::parse_expr(t)?;
        Ok(if q.is_rational() {
            Scalar::Rational(q.a)
        } else {
            Scalar::Quad(q)
        })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<QuadExt<2>> for Scalar {
    fn from(q: QuadExt<2>) -> Self {
        Scalar::Quad(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}
