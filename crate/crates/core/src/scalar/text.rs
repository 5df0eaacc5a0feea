//! Textual scalar grammar shared by every file format.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | primary
//! primary := INT | 'r' INT | '(' expr ')'
//! ```
//!
//! `rD` denotes `√D`; the parser only accepts the root matching the target field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QuadExt, Rational, ScalarError};

pub(crate) fn parse_expr<const D: i64>(text: &str) -> Result<QuadExt<D>, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr::<D>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<const D: i64>(&mut self) -> Result<QuadExt<D>, ScalarError> {
        let mut acc = self.term::<D>()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term::<D>()?;
            if op == b'+' {
                acc += &rhs;
            } else {
                acc -= &rhs;
            }
        }
        Ok(acc)
    }

    fn term<const D: i64>(&mut self) -> Result<QuadExt<D>, ScalarError> {
        let mut acc = self.unary::<D>()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary::<D>()?;
            if op == b'*' {
                acc *= &rhs;
            } else {
                acc = acc.checked_div(&rhs).map_err(|_| ScalarError::Parse {
                    offset: at,
                    message: "division by zero".into(),
                })?;
            }
        }
        Ok(acc)
    }

    fn unary<const D: i64>(&mut self) -> Result<QuadExt<D>, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary::<D>()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary::<D>()
            }
            _ => self.primary::<D>(),
        }
    }

    fn primary<const D: i64>(&mut self) -> Result<QuadExt<D>, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr::<D>()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'r') => {
                self.pos += 1;
                let start = self.pos;
                let n = self.integer()?;
                if n != BigInt::from(D) {
                    return Err(ScalarError::Parse {
                        offset: start,
                        message: format!("only r{D} is available in this field"),
                    });
                }
                Ok(QuadExt::root())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QuadExt::from_rational_part(Rational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }
}

/// Canonical printing: `p`, `p/q`, `(A+B*rD)/L`, `B*rD/L`.
pub(crate) fn format_quad<const D: i64>(x: &QuadExt<D>) -> String {
    if x.b.is_zero() {
        return x.a.to_string();
    }
    let den = x.a.denom().lcm(x.b.denom());
    let scale = Rational::from_integer(den.clone());
    let a_int = (&x.a * &scale).to_integer();
    let b_int = (&x.b * &scale).to_integer();
    let root = format!("r{D}");
    let surd = |b: &BigInt, leading: bool| -> String {
        let mag = b.abs();
        let body = if mag.is_one() {
            root.clone()
        } else {
            format!("{mag}*{root}")
        };
        match (b.is_negative(), leading) {
            (true, _) => format!("-{body}"),
            (false, true) => body,
            (false, false) => format!("+{body}"),
        }
    };
    if a_int.is_zero() {
        let body = surd(&b_int, true);
        return if den.is_one() {
            body
        } else {
            format!("{body}/{den}")
        };
    }
    let inner = format!("{a_int}{}", surd(&b_int, false));
    if den.is_one() {
        format!("({inner})")
    } else {
        format!("({inner})/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    type Q2 = QuadExt<2>;

    #[test]
    fn parses_grammar_examples() {
        let x: Q2 = parse_expr("(5-3*r2)/14").unwrap();
        assert_eq!(x, QuadExt::new(ratio(5, 14), ratio(-3, 14)));
        let y: Q2 = parse_expr("-5/48").unwrap();
        assert_eq!(y, QuadExt::from_rational_part(ratio(-5, 48)));
        let z: Q2 = parse_expr(" 2 * ( r2 + 1 ) ").unwrap();
        assert_eq!(z, QuadExt::new(int(2), int(2)));
    }

    #[test]
    fn reports_offsets() {
        match parse_expr::<2>("(1+2") {
            Err(ScalarError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr::<2>("1/0").is_err());
        assert!(parse_expr::<2>("r3").is_err());
        assert!(parse_expr::<3>("r3").is_ok());
    }

    #[test]
    fn canonical_printing() {
        let cases = [
            (QuadExt::new(ratio(5, 14), ratio(-3, 14)), "(5-3*r2)/14"),
            (QuadExt::new(ratio(1, 2), ratio(-1, 4)), "(2-r2)/4"),
            (QuadExt::new(int(0), ratio(1, 4)), "r2/4"),
            (QuadExt::new(int(0), ratio(-3, 7)), "-3*r2/7"),
            (QuadExt::new(int(1), int(1)), "(1+r2)"),
            (QuadExt::new(ratio(-1, 3), int(0)), "-1/3"),
        ];
        for (value, text) in cases {
            let value: Q2 = value;
            assert_eq!(format_quad(&value), text);
            assert_eq!(parse_expr::<2>(text).unwrap(), value);
        }
    }
}
