use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{text, Field, Rational, ScalarError};

/// An element `a + b·√D` of the quadratic field `Q(√D)`.
///
/// `D` must be a positive non-square integer; equality is componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt<const D: i64> {
    pub a: Rational,
    pub b: Rational,
}

impl<const D: i64> QuadExt<D> {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rational_part(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero() }
    }

    /// `√D` itself.
    pub fn root() -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// The Galois conjugate `a - b·√D`.
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² - D·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(D.into()) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let n = rhs.norm();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let num = self.clone() * rhs.conj();
        Ok(QuadExt {
            a: num.a / &n,
            b: num.b / n,
        })
    }
}

impl<const D: i64> Zero for QuadExt<D> {
    fn zero() -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadExt<D> {
    fn one() -> Self {
        QuadExt {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }
}

impl<const D: i64> Add for QuadExt<D> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<const D: i64> Sub for QuadExt<D> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<const D: i64> Mul for QuadExt<D> {
    type Output = Self;
    fn mul(mut self, rhs: Self) -> Self {
        self *= &rhs;
        self
    }
}

impl<const D: i64> Div for QuadExt<D> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero in QuadExt")
    }
}

impl<const D: i64> Neg for QuadExt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<'a, const D: i64> AddAssign<&'a Self> for QuadExt<D> {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl<'a, const D: i64> SubAssign<&'a Self> for QuadExt<D> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl<'a, const D: i64> MulAssign<&'a Self> for QuadExt<D> {
    fn mul_assign(&mut self, rhs: &'a Self) {
        let d = Rational::from_integer(D.into());
        let a = &self.a * &rhs.a + d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        self.a = a;
        self.b = b;
    }
}

impl<const D: i64> Field for QuadExt<D> {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        QuadExt::from_rational_part(r.clone())
    }

    fn to_f64(&self) -> f64 {
        let root = (D as f64).sqrt();
        let a = Field::to_f64(&self.a);
        let b = Field::to_f64(&self.b);
        if self.b.is_zero() || self.a.is_zero() || self.a.is_negative() == self.b.is_negative() {
            a + b * root
        } else {
            // Opposite signs: go through the conjugate to avoid cancellation.
            Field::to_f64(&self.norm()) / (a - b * root)
        }
    }

    fn to_text(&self) -> String {
        text::format_quad(self)
    }

    fn parse_text(s: &str) -> Result<Self, ScalarError> {
        text::parse_expr(s)
    }
}

impl<const D: i64> fmt::Display for QuadExt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_quad(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    type Q2 = QuadExt<2>;

    fn q(a: Rational, b: Rational) -> Q2 {
        QuadExt::new(a, b)
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let r = Q2::root();
        assert_eq!(r.clone() * r, q(int(2), int(0)));
    }

    #[test]
    fn tableau_row_sum() {
        // (2-√2)/4 + √2/4 + √2/4 + (2-√2)/4 = 1
        let outer = q(ratio(1, 2), ratio(-1, 4));
        let inner = q(int(0), ratio(1, 4));
        let total = outer.clone() + inner.clone() + inner + outer;
        assert_eq!(total, Q2::one());
    }

    #[test]
    fn division_and_inverse() {
        let x = q(int(3), int(-2));
        let y = q(ratio(1, 2), int(5));
        assert_eq!((x.clone() * y.clone()) / y, x);
        assert!(x.checked_div(&Q2::zero()).is_err());
    }

    #[test]
    fn float_value_without_cancellation() {
        let x = q(ratio(5, 14), ratio(-3, 14));
        let expected = (5.0 - 3.0 * std::f64::consts::SQRT_2) / 14.0;
        assert!((x.to_f64() - expected).abs() < 1e-16);
        assert!((x.to_f64() - 0.054_097_09).abs() < 1e-8);
        assert_eq!(Q2::zero().to_f64(), 0.0);
    }
}
