//! Scalar fields.
//!
//! All algebra in this crate is generic over [`Field`]. Three concrete fields
//! are provided: arbitrary-precision rationals, quadratic extensions
//! `Q(√d)` (used with `d = 2` for the EES(2,7) family and `d = 3` for the
//! Gauss collocation tableau), and `f64`.
//!
//! [`Scalar`] is the dynamically tagged value used at file and command-line
//! boundaries, where the field of a tableau is only known after parsing.

mod dynamic;
mod quad;
mod text;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use dynamic::{Scalar, ScalarKind};
pub use quad::QuadExt;

/// `Q(√2)`.
pub type Q2 = QuadExt<2>;
/// `Q(√3)`.
pub type Q3 = QuadExt<3>;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Absolute tolerance used by [`Field::is_negligible`] for floating point values.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine {0} and {1} values without explicit promotion")]
    MixedVariant(ScalarKind, ScalarKind),
    #[error("cannot demote a {from} value to {to}")]
    Demotion { from: ScalarKind, to: ScalarKind },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// A field of scalars the algebra can be evaluated over.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn to_text(&self) -> String;

    fn parse_text(text: &str) -> Result<Self, ScalarError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact zero test for exact fields; `|x| <= FLOAT_TOLERANCE` for floats.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Integer power; negative exponents invert. Panics on `0^-n`.
    fn powi(&self, exp: i32) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            let sq = base.clone() * base.clone();
            base = sq;
            e >>= 1;
        }
        acc
    }
}

/// Fields that contain a square root of two.
pub trait Sqrt2Field: Field {
    fn sqrt2() -> Self;
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str) -> Result<Self, ScalarError> {
        let q: QuadExt<2> = text::parse_expr(text)?;
        if q.b.is_zero() {
            Ok(q.a)
        } else {
            Err(ScalarError::Parse {
                offset: 0,
                message: "irrational value where a rational was expected".into(),
            })
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Field::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }

    fn parse_text(text: &str) -> Result<Self, ScalarError> {
        let trimmed = text.trim();
        trimmed.parse::<f64>().or_else(|_| {
            // Accept exact syntax too, e.g. `(5-3*r2)/14`.
            text::parse_expr::<2>(trimmed).map(|q| q.to_f64())
        })
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_TOLERANCE
    }

    fn powi(&self, exp: i32) -> Self {
        f64::powi(*self, exp)
    }
}

impl Field for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Field::to_f64(r) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }

    fn parse_text(text: &str) -> Result<Self, ScalarError> {
        <f64 as Field>::parse_text(text).map(|x| x as f32)
    }

    /// Single precision cannot resolve [`FLOAT_TOLERANCE`]; uses `1e-5`.
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }

    fn powi(&self, exp: i32) -> Self {
        f32::powi(*self, exp)
    }
}

impl Sqrt2Field for f32 {
    fn sqrt2() -> Self {
        std::f32::consts::SQRT_2
    }
}

impl Sqrt2Field for f64 {
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
}

impl Sqrt2Field for QuadExt<2> {
    fn sqrt2() -> Self {
        QuadExt::root()
    }
}

/// Shorthand for a small exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition_is_reduced() {
        assert_eq!(ratio(1, 3) + ratio(1, 6), ratio(1, 2));
        assert_eq!(ratio(2, 4).to_text(), "1/2");
        assert_eq!(ratio(0, 7).to_text(), "0");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(Field::to_f64(&ratio(1, 10)), 0.1);
        assert_eq!(<f64 as Field>::parse_text("0.25").unwrap(), 0.25);
        let x = <f64 as Field>::parse_text("(5-3*r2)/14").unwrap();
        assert!((x - 0.054_097_09).abs() < 1e-8);
    }

    #[test]
    fn integer_powers() {
        assert_eq!(ratio(2, 3).powi(3), ratio(8, 27));
        assert_eq!(ratio(2, 3).powi(-2), ratio(9, 4));
        assert_eq!(ratio(5, 1).powi(0), int(1));
    }

    #[test]
    fn rational_parse_rejects_surds() {
        assert!(Rational::parse_text("1+r2").is_err());
        assert_eq!(Rational::parse_text("-5/48").unwrap(), ratio(-5, 48));
    }
}
