//! Parsing of polynomials in `x, y, z` and projective points.
//!
//! Grammar: sums and differences of products of powers; atoms are integers,
//! `i`, the variables, `t` (only with an extension), and parenthesized
//! expressions. Division is allowed only by nonzero constants.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Ctx, Ext, ExtensionContext, GaussianRational as Gq, Ring, TriPoly, UniPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous (found degrees {0} and {1})")]
    NotHomogeneous(u32, u32),
    #[error("the symbol t needs an extension (--ext)")]
    NoExtension,
    #[error("coefficients of a curve must lie in Q(i)")]
    CurveOverExtension,
    #[error("extension modulus must be a nonconstant squarefree polynomial in t")]
    BadModulus,
    #[error("a point needs three coordinates separated by ':'")]
    BadPoint,
    #[error("point coordinates must be constants")]
    PointNotConstant,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push((start, Tok::Num(text.parse().unwrap())));
        } else if "xyzti".contains(c) {
            if k + 1 < chars.len() && chars[k + 1].is_alphanumeric() {
                return Err(ParseError::Syntax {
                    pos: k,
                    msg: "unknown symbol".into(),
                });
            }
            out.push((k, Tok::Ident(c)));
            k += 1;
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: k,
                msg: format!("unknown symbol '{}'", c),
            });
        }
    }
    Ok(out)
}

/// Value type of the expression parser: a polynomial in `x, y, z`
/// with coefficients that may involve `t`.
type Val = TriPoly<Ext>;

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: Option<&'a Ctx>,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.here();
                self.pos += 1;
                let d = self.power()?;
                let c = constant_of(&d).ok_or(ParseError::Syntax {
                    pos: at,
                    msg: "division by a non-constant".into(),
                })?;
                if c.is_zero() {
                    return Err(ParseError::Syntax {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                let inv = c.try_inv().map_err(|_| ParseError::Syntax {
                    pos: at,
                    msg: "divisor is a zero-divisor of the extension".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) if !neg => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("exponent must be a nonnegative integer"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(TriPoly::constant(Ext::from_gq(Gq::from_rational(
                num_rational::BigRational::from_integer(n),
            )))),
            Tok::Ident('i') => Ok(TriPoly::constant(Ext::i())),
            Tok::Ident('t') => match self.ctx {
                Some(c) => Ok(TriPoly::constant(c.gen())),
                None => Err(ParseError::NoExtension),
            },
            Tok::Ident(v) => Ok(TriPoly::var(match v {
                'x' => 0,
                'y' => 1,
                _ => 2,
            })),
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Tok::Op(_) => {
                self.pos -= 1;
                self.err("unexpected operator")
            }
        }
    }
}

fn constant_of(p: &Val) -> Option<Ext> {
    match p.num_terms() {
        0 => Some(Ext::zero()),
        1 => p.terms().next().filter(|(e, _)| **e == [0, 0, 0]).map(|(_, c)| c.clone()),
        _ => None,
    }
}

fn parse_expr(text: &str, ctx: Option<&Ctx>) -> Result<Val, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        len: text.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected token (implicit multiplication is not allowed)");
    }
    Ok(v)
}

fn check_homogeneous(v: &Val) -> Result<(), ParseError> {
    let mut degs = v.terms().map(|(e, _)| e[0] + e[1] + e[2]);
    if let Some(d0) = degs.next() {
        if let Some(d1) = degs.find(|&d| d != d0) {
            return Err(ParseError::NotHomogeneous(d0.min(d1), d0.max(d1)));
        }
    }
    Ok(())
}

/// Parse a homogeneous polynomial; `t` is allowed when a context is given.
pub fn parse_polynomial(text: &str, ctx: Option<&Ctx>) -> Result<TriPoly<Ext>, ParseError> {
    let v = parse_expr(text, ctx)?;
    check_homogeneous(&v)?;
    Ok(v)
}

/// Parse a homogeneous polynomial with coefficients in `Q(i)`.
pub fn parse_curve_polynomial(text: &str) -> Result<TriPoly<Gq>, ParseError> {
    let v = parse_polynomial(text, None)?;
    Ok(v.map(|c| c.as_gq().expect("constant without extension")))
}

/// Parse an extension modulus in `t` (a constant-free expression in `t` only).
pub fn parse_modulus(text: &str) -> Result<UniPoly<Gq>, ParseError> {
    // Reuse the expression parser with `t` mapped to the variable x.
    let replaced: String = text.chars().map(|c| if c == 't' { 'x' } else { c }).collect();
    if text.contains(['x', 'y', 'z']) {
        return Err(ParseError::BadModulus);
    }
    let v = parse_expr(&replaced, None)?;
    let mut coeffs = Vec::new();
    for (e, c) in v.terms() {
        let k = e[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Gq::zero());
        }
        coeffs[k] = c.as_gq().unwrap();
    }
    let p = UniPoly::new(coeffs);
    if p.deg() < 1 || p.gcd_monic(&p.derivative()).deg() != 0 {
        return Err(ParseError::BadModulus);
    }
    Ok(p.monic())
}

/// Context for an extension modulus given as text (not consulting the split registry).
pub fn parse_extension(text: &str) -> Result<Ctx, ParseError> {
    Ok(ExtensionContext::raw(&parse_modulus(text)?))
}

/// Parse `a:b:c` into coordinates over the optional extension.
pub fn parse_point(text: &str, ctx: Option<&Ctx>) -> Result<[Ext; 3], ParseError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(ParseError::BadPoint);
    }
    let mut out = Vec::new();
    for part in parts {
        let v = parse_expr(part, ctx)?;
        out.push(constant_of(&v).ok_or(ParseError::PointNotConstant)?);
    }
    if out.iter().all(|c| c.is_zero()) {
        return Err(ParseError::ZeroPoint);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_curves() {
        let l = parse_curve_polynomial("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap();
        assert_eq!(l.degree(), Some(4));
        let q = parse_curve_polynomial("y^2*z^3 - x^5").unwrap();
        assert_eq!(q.degree(), Some(5));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_curve_polynomial("x^2 + y"),
            Err(ParseError::NotHomogeneous(1, 2))
        ));
        assert!(matches!(parse_curve_polynomial("2x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_curve_polynomial("x*t"), Err(ParseError::NoExtension)));
        assert!(matches!(parse_curve_polynomial("x/y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_curve_polynomial("x + w"), Err(ParseError::Syntax { pos: 4, .. })));
    }

    #[test]
    fn rationals_and_i() {
        let p = parse_curve_polynomial("3/2*x - i*y").unwrap();
        assert_eq!(p.coeff(&[1, 0, 0]), Gq::from_ratio(3, 2));
        assert_eq!(p.coeff(&[0, 1, 0]), Gq::from_ints(0, -1));
    }

    #[test]
    fn round_trip() {
        for s in [
            "(x^2+y^2)^2 - 2*(x^2-y^2)*z^2",
            "2*y*z^3+2*z^2*y^2+2*z*y^3+2*y^4-2*z^3*x+2*z*y*x^2+5*y^2*x^2+3*x^4",
            "(1+2*i)*x^3 - 1/3*y^2*z + i*z^3",
        ] {
            let p = parse_curve_polynomial(s).unwrap();
            let again = parse_curve_polynomial(&p.to_string()).unwrap();
            assert_eq!(p, again, "{}", p);
        }
    }

    #[test]
    fn points_over_extension() {
        let ctx = parse_extension("t^3-20").unwrap();
        let p = parse_point("-3/25*t:0:1", Some(&ctx)).unwrap();
        assert_eq!(p[0].mul(&p[0]).mul(&p[0]), Ext::from_gq(Gq::from_ratio(-27 * 20, 15625)));
        assert!(parse_point("0:0:0", None).is_err());
        assert!(parse_point("1:0", None).is_err());
    }
}
