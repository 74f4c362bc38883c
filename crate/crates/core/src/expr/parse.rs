//! Recursive-descent parser for the ASCII expression grammar:
//!
//! ```text
//! expr   := ('-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' int)?
//! base   := rational | ident | ident '[' int (',' int)* ']'? '(' expr (',' expr)* ')'
//!         | 'lnabs' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `t x y z u v w rho P S` are the reserved coordinate identifiers and
//! `arg1 arg2 ...` the formal function arguments; both parse as plain
//! symbols. The optional `[..]` suffix on a function application encodes a
//! derivative multi-index, so printing canonical forms round-trips.

use super::{Expr, Rat};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operator '{op}' at offset {pos}")]
    UnknownOperator { pos: usize, op: char },
    #[error("function '{name}' expects {expected} argument(s), got {found} (offset {pos})")]
    ArityMismatch {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

/// Declared arities for function symbols appearing in expression text.
#[derive(Debug, Clone)]
pub struct FuncDecls {
    arities: BTreeMap<String, usize>,
}

pub const COORDINATE_IDENTS: [&str; 10] = ["t", "x", "y", "z", "u", "v", "w", "rho", "P", "S"];

impl Default for FuncDecls {
    fn default() -> Self {
        let mut arities = BTreeMap::new();
        arities.insert("Phi".to_string(), 2);
        arities.insert("f".to_string(), 1);
        FuncDecls { arities }
    }
}

impl FuncDecls {
    pub fn empty() -> Self {
        FuncDecls {
            arities: BTreeMap::new(),
        }
    }

    pub fn declare(mut self, name: &str, arity: usize) -> Self {
        self.arities.insert(name.to_string(), arity);
        self
    }

    fn arity_of(&self, name: &str) -> Option<usize> {
        self.arities.get(name).copied()
    }
}

/// Parses with the default declarations (`Phi` binary, `f` unary).
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, &FuncDecls::default())
}

pub fn parse_with(text: &str, decls: &FuncDecls) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        decls,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        let c = p.src[p.pos] as char;
        return Err(if c.is_ascii_punctuation() {
            ParseError::UnknownOperator { pos: p.pos, op: c }
        } else {
            ParseError::Syntax {
                pos: p.pos,
                msg: format!("unexpected '{c}'"),
            }
        });
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    decls: &'a FuncDecls,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(ParseError::Syntax {
                pos: self.pos,
                msg: match got {
                    Some(g) => format!("expected '{c}', found '{g}'"),
                    None => format!("expected '{c}', found end of input"),
                },
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let first = if self.peek() == Some('-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        terms.push(first);
        while let Some(op) = self.peek() {
            match op {
                '+' => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    terms.push(self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(Expr::add(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                '*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                '/' => {
                    self.pos += 1;
                    acc = acc / self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let exp = self.exponent()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let num = self.signed_int()?;
                let r = if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.signed_int()?;
                    if den.is_zero() {
                        return Err(ParseError::Syntax {
                            pos: self.pos,
                            msg: "zero denominator in exponent".into(),
                        });
                    }
                    Rat::new(num, den)
                } else {
                    Rat::from(num)
                };
                self.expect(')')?;
                Ok(r)
            }
            _ => Ok(Rat::from(self.signed_int()?)),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let n: BigInt = digits.parse().expect("digits parse as integer");
        Ok(if neg { -n } else { n })
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "expected digits".into(),
            });
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident_expr(),
            Some(c) => Err(if c.is_ascii_punctuation() {
                ParseError::UnknownOperator {
                    pos: self.pos,
                    op: c,
                }
            } else {
                ParseError::Syntax {
                    pos: self.pos,
                    msg: format!("unexpected '{c}'"),
                }
            }),
            None => Err(ParseError::Syntax {
                pos: self.pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let int_part = self.digits()?;
        let mut value = Rat::from(int_part.parse::<BigInt>().unwrap());
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac = self.digits()?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            value += Rat::new(frac.parse::<BigInt>().unwrap(), scale);
        }
        Ok(Expr::Rational(value))
    }

    fn ident_expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && ((self.src[self.pos] as char).is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();

        if name == "lnabs" {
            self.expect('(')?;
            let arg = self.expr()?;
            self.expect(')')?;
            return Ok(Expr::lnabs(arg));
        }

        let mut index: Option<Vec<u32>> = None;
        if self.peek() == Some('[') {
            self.pos += 1;
            let mut idx = Vec::new();
            loop {
                let d = self.digits()?;
                idx.push(d.parse::<u32>().map_err(|_| ParseError::Syntax {
                    pos: self.pos,
                    msg: "derivative index out of range".into(),
                })?);
                match self.bump() {
                    Some(',') => continue,
                    Some(']') => break,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: self.pos,
                            msg: "expected ',' or ']' in derivative index".into(),
                        })
                    }
                }
            }
            index = Some(idx);
        }

        if self.peek() == Some('(') {
            if COORDINATE_IDENTS.contains(&name.as_str()) {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("reserved identifier '{name}' cannot be applied as a function"),
                });
            }
            self.pos += 1;
            let mut args = vec![self.expr()?];
            while self.peek() == Some(',') {
                self.pos += 1;
                args.push(self.expr()?);
            }
            self.expect(')')?;
            if let Some(expected) = self.decls.arity_of(&name) {
                if expected != args.len() {
                    return Err(ParseError::ArityMismatch {
                        pos: start,
                        name,
                        expected,
                        found: args.len(),
                    });
                }
            }
            let index = index.unwrap_or_else(|| vec![0; args.len()]);
            if index.len() != args.len() {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!(
                        "derivative index length {} does not match arity {}",
                        index.len(),
                        args.len()
                    ),
                });
            }
            return Ok(Expr::func_deriv(&name, index, args));
        }

        if index.is_some() {
            return Err(ParseError::Syntax {
                pos: self.pos,
                msg: "derivative index must be followed by an argument list".into(),
            });
        }
        Ok(Expr::Symbol(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_grammar_reading() {
        // "P - z/a" -> Sum[P, -z/a]
        let e = parse("P - z/a").unwrap();
        let expect = Expr::sym("P") - Expr::sym("z") / Expr::sym("a");
        assert_eq!(e, expect);
    }

    #[test]
    fn subalgebra_invariant_from_text() {
        let e = parse("v - (b/a)*z").unwrap();
        let expect = Expr::sym("v") - Expr::sym("b") / Expr::sym("a") * Expr::sym("z");
        assert_eq!(e, expect);
    }

    #[test]
    fn lnabs_single_node() {
        assert_eq!(parse("lnabs(t)").unwrap(), Expr::lnabs(Expr::sym("t")));
    }

    #[test]
    fn function_application_and_derivatives() {
        let e = parse("Phi(z, y)").unwrap();
        assert_eq!(e, Expr::func("Phi", vec![Expr::sym("z"), Expr::sym("y")]));
        let d = parse("Phi[1,0](z, y)").unwrap();
        assert_eq!(
            d,
            Expr::func_deriv("Phi", vec![1, 0], vec![Expr::sym("z"), Expr::sym("y")])
        );
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse("0.8").unwrap(), Expr::ratio(4, 5));
        assert_eq!(parse("2.25").unwrap(), Expr::ratio(9, 4));
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse("t + ") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_operator_reported() {
        match parse("t % 2") {
            Err(ParseError::UnknownOperator { op, .. }) => assert_eq!(op, '%'),
            other => panic!("expected unknown operator, got {other:?}"),
        }
    }

    #[test]
    fn arity_mismatch_on_declared_functions() {
        match parse("Phi(t)") {
            Err(ParseError::ArityMismatch {
                name,
                expected,
                found,
                ..
            }) => {
                assert_eq!(name, "Phi");
                assert_eq!(expected, 2);
                assert_eq!(found, 1);
            }
            other => panic!("expected arity mismatch, got {other:?}"),
        }
    }

    #[test]
    fn reserved_names_cannot_be_functions() {
        assert!(matches!(parse("rho(t)"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn unary_minus() {
        let e = parse("-t^2/2").unwrap();
        assert_eq!(e, Expr::ratio(-1, 2) * Expr::sym("t").powi(2));
    }
}
