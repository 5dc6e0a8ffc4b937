//! Operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := rational | 'x' | 'D' | '(' expr ')'
//! ```
//!
//! Coefficients must be written to the left of `D`: an `x` appearing to the
//! right of a `D` inside one term is rejected. Division is only allowed by
//! `D`-free factors.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::ore::OrePoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    X,
    D,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'x' => Tok::X,
            b'D' => Tok::D,
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character '{}'", src[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// A parsed factor together with where its `x` and `D` occurrences sit.
struct Value {
    op: OrePoly,
    first_d: Option<usize>,
    first_x: Option<usize>,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => true,
                Some(Tok::Minus) => false,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let t = self.term()?;
            acc.op = if sign { &acc.op + &t.op } else { &acc.op - &t.op };
            acc.first_d = min_opt(acc.first_d, t.first_d);
            acc.first_x = min_opt(acc.first_x, t.first_x);
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let at = self.offset();
            let f = self.factor()?;
            if let (Some(_), Some(x)) = (acc.first_d, f.first_x) {
                return Err(Error::Parse {
                    pos: x,
                    msg: "D appears left of x".into(),
                });
            }
            if divide {
                if f.first_d.is_some() {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "division by an expression containing D".into(),
                    });
                }
                let q = f.op.coeff(0);
                if q.is_zero() {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                acc.op = acc.op.left_scale(&q.inverse()?);
            } else {
                acc.op = &acc.op * &f.op;
            }
            acc.first_d = min_opt(acc.first_d, f.first_d);
            acc.first_x = min_opt(acc.first_x, f.first_x);
        }
    }

    fn factor(&mut self) -> Result<Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let mut v = self.factor()?;
            v.op = -&v.op;
            return Ok(v);
        }
        let mut v = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => n.clone(),
                _ => return self.err("expected exponent"),
            };
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            if v.first_d.is_some() && v.first_x.is_some() && e > 1 {
                let pos = v.first_x.unwrap();
                return Err(Error::Parse {
                    pos,
                    msg: "D appears left of x".into(),
                });
            }
            let mut p = OrePoly::one();
            for _ in 0..e {
                p = &p * &v.op;
            }
            v.op = p;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Value> {
        let at = self.offset();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => {
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    if let Some((_, Tok::Int(d))) = self.toks.get(self.pos + 1) {
                        if d.is_zero() {
                            self.pos += 1;
                            return self.err("zero denominator");
                        }
                        q /= Rational::from_integer(d.clone());
                        self.pos += 2;
                    }
                }
                Ok(Value {
                    op: OrePoly::from(Polynomial::constant(q)),
                    first_d: None,
                    first_x: None,
                })
            }
            Tok::X => Ok(Value {
                op: OrePoly::from(Polynomial::x()),
                first_d: None,
                first_x: Some(at),
            }),
            Tok::D => Ok(Value {
                op: OrePoly::d(),
                first_d: Some(at),
                first_x: None,
            }),
            Tok::LParen => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, 'x', 'D' or '('")
            }
        }
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Parses an operator such as `(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48`.
pub fn parse_operator(src: &str) -> Result<OrePoly> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    if v.op.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: "operator is zero".into(),
        });
    }
    Ok(v.op)
}

/// Parses a rational function in `x` (no `D`).
pub fn parse_function(src: &str) -> Result<RationalFunction> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    if let Some(d) = v.first_d {
        return Err(Error::Parse {
            pos: d,
            msg: "unexpected D".into(),
        });
    }
    Ok(if v.op.is_zero() {
        RationalFunction::zero()
    } else {
        v.op.coeff(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};

    #[test]
    fn parses_hypergeometric_example() {
        let l = parse_operator("(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48").unwrap();
        assert_eq!(l.order(), Some(2));
        assert_eq!(l.coeff(2), RationalFunction::from_poly(Polynomial::from_ints(&[0, -1, 1])));
        assert_eq!(
            l.coeff(1),
            RationalFunction::from_poly(Polynomial::new(vec![ratio(-5, 6), ratio(31, 24)]))
        );
        assert_eq!(l.coeff(0), RationalFunction::constant(ratio(1, 48)));
    }

    #[test]
    fn rejects_d_left_of_x() {
        match parse_operator("D*x") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("left of x"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_operator("(x*D)^2").is_err());
        assert!(parse_operator("x*(D + 1)").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_operator("x + * D") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_operator("x +").is_err());
        assert!(parse_operator("y").is_err());
    }

    #[test]
    fn unary_minus_and_division() {
        let l = parse_operator("-x*D + 1/(x - 1)").unwrap();
        assert_eq!(l.coeff(1), RationalFunction::from_poly(Polynomial::from_ints(&[0, -1])));
        assert_eq!(
            l.coeff(0),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[-1, 1])).unwrap()
        );
        assert_eq!(parse_function("3/4").unwrap(), RationalFunction::constant(ratio(3, 4)));
        assert_eq!(parse_function("2").unwrap(), RationalFunction::constant(rat(2)));
    }
}
