//! Lexer and recursive-descent parser for the constant-expression language.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::canon;
use super::expr::{Constant, Expr, HypFn, TrigFn};
use super::GrammarError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Const(Constant),
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Func {
    Sqrt,
    Exp,
    Ln,
    Trig(TrigFn),
    Arc(TrigFn),
    Hyp(HypFn),
}

fn lookup_ident(name: &str) -> Option<Tok> {
    let f = match name {
        "pi" => return Some(Tok::Const(Constant::Pi)),
        "e" => return Some(Tok::Const(Constant::E)),
        "i" => return Some(Tok::Const(Constant::I)),
        "sqrt" => Func::Sqrt,
        "exp" => Func::Exp,
        "ln" => Func::Ln,
        "sin" => Func::Trig(TrigFn::Sin),
        "cos" => Func::Trig(TrigFn::Cos),
        "tan" => Func::Trig(TrigFn::Tan),
        "sec" => Func::Trig(TrigFn::Sec),
        "csc" => Func::Trig(TrigFn::Csc),
        "cot" => Func::Trig(TrigFn::Cot),
        "asin" | "arcsin" => Func::Arc(TrigFn::Sin),
        "acos" | "arccos" => Func::Arc(TrigFn::Cos),
        "atan" | "arctan" => Func::Arc(TrigFn::Tan),
        "asec" => Func::Arc(TrigFn::Sec),
        "acsc" => Func::Arc(TrigFn::Csc),
        "acot" => Func::Arc(TrigFn::Cot),
        "sinh" => Func::Hyp(HypFn::Sinh),
        "cosh" => Func::Hyp(HypFn::Cosh),
        "tanh" => Func::Hyp(HypFn::Tanh),
        _ => return None,
    };
    Some(Tok::Func(f))
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer {n}"),
        Tok::Const(c) => format!("'{}'", c.name()),
        Tok::Func(_) => "function name".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, GrammarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                match lookup_ident(name) {
                    Some(t) => {
                        out.push((t, start));
                        continue;
                    }
                    None => {
                        return Err(GrammarError::UnknownIdentifier {
                            name: name.to_string(),
                            offset: start,
                        })
                    }
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(GrammarError::Parse {
                    offset: start,
                    expected: vec!["token".into()],
                    found: format!("character {ch:?}"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, GrammarError> {
        Err(GrammarError::Parse {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: describe(self.peek()),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), GrammarError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&[what])
        }
    }

    fn expr(&mut self) -> Result<Expr, GrammarError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(canon::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            canon::add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, GrammarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = canon::mul(vec![acc, rhs]);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = canon::div(acc, rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, GrammarError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(canon::neg(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, GrammarError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.unary()?;
            return canon::pow(base, exponent);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, GrammarError> {
        const ATOM: &[&str] = &["integer", "'pi'", "'e'", "'i'", "function name", "'('"];
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Rational(BigRational::from_integer(n)))
            }
            Tok::Const(c) => {
                self.bump();
                Ok(canon::constant(c))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Func(f) => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                match f {
                    Func::Sqrt => Ok(canon::sqrt(arg)),
                    Func::Exp => Ok(canon::exp(arg)),
                    Func::Ln => canon::ln(arg),
                    Func::Trig(k) => canon::trig(k, arg),
                    Func::Arc(k) => canon::arctrig(k, arg),
                    Func::Hyp(k) => Ok(canon::hyp(k, arg)),
                }
            }
            _ => self.fail(ATOM),
        }
    }
}

/// Parses `text` into a canonical expression.
pub fn parse(text: &str) -> Result<Expr, GrammarError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["operator", "end of input"]);
    }
    Ok(e)
}
