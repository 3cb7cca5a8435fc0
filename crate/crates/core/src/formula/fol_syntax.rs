//! Surface syntax for first-order formulas.
//!
//! ```text
//! fol   := imp
//! imp   := or ("->" imp)?
//! or    := and ("|" and)*
//! and   := unary ("&" unary)*
//! unary := "~" unary | "Ex" var unary | "Ax" var unary
//!        | "R" var var | "P_"name var | var "=" var | "(" fol ")"
//! ```
//!
//! Variables match `[a-z][a-z0-9_']*`.

use super::syntax::{ParseError, MAX_NESTING};
use super::{FolFormula, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Tilde,
    Amp,
    Bar,
    Arrow,
    Eq,
    LParen,
    RParen,
    Exists,
    Forall,
    Rel,
    Pred(String),
    Var(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Eq => "'='".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Exists => "'Ex'".into(),
            Tok::Forall => "'Ax'".into(),
            Tok::Rel => "'R'".into(),
            Tok::Pred(p) => format!("predicate 'P_{p}'"),
            Tok::Var(v) => format!("variable '{v}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'=' => Tok::Eq,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut j = i + 1;
                while j < bytes.len() && matches!(bytes[j], b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_' | b'\'') {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "Ex" => Tok::Exists,
                    "Ax" => Tok::Forall,
                    "R" => Tok::Rel,
                    _ if word.starts_with("P_") && word.len() > 2 => {
                        let name = &word[2..];
                        let valid = name.as_bytes()[0].is_ascii_lowercase()
                            && name.bytes().all(|b| matches!(b, b'a'..=b'z' | b'0'..=b'9' | b'_'));
                        if !valid {
                            return Err(ParseError::UnknownChar { pos: start, ch: 'P' });
                        }
                        Tok::Pred(name.to_string())
                    }
                    _ if c.is_ascii_lowercase() && !word.contains(|ch: char| ch.is_ascii_uppercase()) => {
                        Tok::Var(word.to_string())
                    }
                    _ => {
                        return Err(ParseError::UnknownChar {
                            pos: start,
                            ch: c as char,
                        })
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError::UnknownChar { pos: i, ch });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            pos: self.toks[self.pos].0,
            expected,
            found: self.peek().describe(),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            Err(ParseError::TooDeep {
                pos: self.toks[self.pos].0,
            })
        } else {
            Ok(())
        }
    }

    fn var(&mut self) -> Result<Symbol, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Symbol::from(v))
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn formula(&mut self) -> Result<FolFormula, ParseError> {
        self.enter()?;
        let lhs = self.or()?;
        let f = if *self.peek() == Tok::Arrow {
            self.bump();
            FolFormula::implies(lhs, self.formula()?)
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(f)
    }

    fn or(&mut self) -> Result<FolFormula, ParseError> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            f = FolFormula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<FolFormula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = FolFormula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<FolFormula, ParseError> {
        self.enter()?;
        let f = match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                FolFormula::not(self.unary()?)
            }
            Tok::Exists => {
                self.bump();
                let v = self.var()?;
                FolFormula::exists(v, self.unary()?)
            }
            Tok::Forall => {
                self.bump();
                let v = self.var()?;
                FolFormula::forall(v, self.unary()?)
            }
            Tok::Rel => {
                self.bump();
                let a = self.var()?;
                let b = self.var()?;
                FolFormula::Rel(a, b)
            }
            Tok::Pred(p) => {
                self.bump();
                let v = self.var()?;
                FolFormula::Pred(Symbol::from(p), v)
            }
            Tok::Var(_) => {
                let a = self.var()?;
                if *self.peek() != Tok::Eq {
                    return Err(self.unexpected("'='"));
                }
                self.bump();
                let b = self.var()?;
                FolFormula::Eq(a, b)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                f
            }
            _ => return Err(self.unexpected("a formula")),
        };
        self.depth -= 1;
        Ok(f)
    }
}

/// Parse a first-order formula.
pub fn parse_fol(text: &str) -> Result<FolFormula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

const IMP: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

pub(crate) fn print(f: &FolFormula) -> String {
    let mut out = String::new();
    write_formula(f, IMP, &mut out);
    out
}

fn write_formula(f: &FolFormula, prec: u8, out: &mut String) {
    use FolFormula as F;

    let wrap = |level: u8, out: &mut String, body: &dyn Fn(&mut String)| {
        if prec > level {
            out.push('(');
            body(out);
            out.push(')');
        } else {
            body(out);
        }
    };

    match f {
        F::Pred(p, v) => {
            out.push_str("P_");
            out.push_str(p);
            out.push(' ');
            out.push_str(v);
        }
        F::Rel(a, b) => {
            out.push_str("R ");
            out.push_str(a);
            out.push(' ');
            out.push_str(b);
        }
        F::Eq(a, b) => {
            out.push_str(a);
            out.push_str(" = ");
            out.push_str(b);
        }
        F::And(a, b) => wrap(AND, out, &|out| {
            write_formula(a, AND, out);
            out.push_str(" & ");
            write_formula(b, UNARY, out);
        }),
        F::Exists(v, a) => {
            out.push_str("Ex ");
            out.push_str(v);
            out.push(' ');
            write_formula(a, UNARY, out);
        }
        F::Not(inner) => match &**inner {
            F::Exists(v, b) if matches!(&**b, F::Not(_)) => {
                let F::Not(body) = &**b else { unreachable!() };
                out.push_str("Ax ");
                out.push_str(v);
                out.push(' ');
                write_formula(body, UNARY, out);
            }
            F::And(a, b) => match (&**a, &**b) {
                (F::Not(x), F::Not(y)) => wrap(OR, out, &|out| {
                    write_formula(x, OR, out);
                    out.push_str(" | ");
                    write_formula(y, AND, out);
                }),
                (x, F::Not(y)) => wrap(IMP, out, &|out| {
                    write_formula(x, OR, out);
                    out.push_str(" -> ");
                    write_formula(y, IMP, out);
                }),
                _ => {
                    out.push('~');
                    write_formula(inner, UNARY, out);
                }
            },
            _ => {
                out.push('~');
                write_formula(inner, UNARY, out);
            }
        },
    }
}
