//! Lexer, recursive-descent parser and printer for the modal and hybrid
//! surface syntax.
//!
//! ```text
//! formula := imp ("<->" imp)?
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[]" unary | "<>" unary
//!          | "[-" formula "]" unary | "<-" formula ">" unary
//!          | "@" nom unary | "!" nom unary
//!          | atom | nom | "true" | "false" | "(" formula ")"
//! ```
//!
//! In hybrid mode identifiers of the form `x`, `y`, `z` optionally followed
//! by digits are nominal variables; everything else matching
//! `[a-z][a-z0-9_]*` is an atom.

use std::fmt::Write;

use thiserror::Error;

use super::{HybridFormula, LdFormula, Symbol};

/// Deepest operator nesting the parser accepts.
pub const MAX_NESTING: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown character {ch:?} at byte {pos}")]
    UnknownChar { pos: usize, ch: char },
    #[error("expected {expected} at byte {pos}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("hybrid operator at byte {pos} is not allowed in this language")]
    HybridNotAllowed { pos: usize },
    #[error("formula nesting exceeds {MAX_NESTING} at byte {pos}")]
    TooDeep { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    LBrack,
    RBrack,
    Lt,
    Gt,
    Minus,
    At,
    Bang,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Lt => "'<'".into(),
            Tok::Gt => "'>'".into(),
            Tok::Minus => "'-'".into(),
            Tok::At => "'@'".into(),
            Tok::Bang => "'!'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'<' => {
                if bytes.get(i + 1..i + 3) == Some(b"->".as_slice()) {
                    i += 2;
                    Tok::Iff
                } else {
                    Tok::Lt
                }
            }
            b'>' => Tok::Gt,
            b'@' => Tok::At,
            b'!' => Tok::Bang,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len() && matches!(bytes[j], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
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

/// Whether `name` is a well-formed atom identifier.
pub fn is_atom_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    matches!(bytes.next(), Some(b'a'..=b'z'))
        && bytes.all(|b| matches!(b, b'a'..=b'z' | b'0'..=b'9' | b'_'))
        && name != "true"
        && name != "false"
}

pub(crate) fn is_nominal(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('x' | 'y' | 'z')) && chars.all(|c| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
    hybrid: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
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
            pos: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            Err(ParseError::TooDeep { pos: self.offset() })
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> Result<HybridFormula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            Ok(HybridFormula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn imp(&mut self) -> Result<HybridFormula, ParseError> {
        self.enter()?;
        let lhs = self.or()?;
        let f = if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            HybridFormula::implies(lhs, rhs)
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(f)
    }

    fn or(&mut self) -> Result<HybridFormula, ParseError> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.and()?;
            f = HybridFormula::or(f, rhs);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<HybridFormula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            f = HybridFormula::and(f, rhs);
        }
        Ok(f)
    }

    fn nominal(&mut self) -> Result<Symbol, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if is_nominal(&name) => {
                self.bump();
                Ok(Symbol::from(name))
            }
            _ => Err(self.unexpected("a nominal variable")),
        }
    }

    fn unary(&mut self) -> Result<HybridFormula, ParseError> {
        self.enter()?;
        let at = self.offset();
        let start = self.pos;
        let f = match self.bump() {
            Tok::Tilde => HybridFormula::not(self.unary()?),
            Tok::LBrack => match self.peek() {
                Tok::RBrack => {
                    self.bump();
                    HybridFormula::boxed(self.unary()?)
                }
                Tok::Minus => {
                    self.bump();
                    let guard = self.formula()?;
                    self.expect(Tok::RBrack, "']'")?;
                    HybridFormula::del(guard, self.unary()?)
                }
                _ => return Err(self.unexpected("']' or '-' after '['")),
            },
            Tok::Lt => match self.peek() {
                Tok::Gt => {
                    self.bump();
                    HybridFormula::diamond(self.unary()?)
                }
                Tok::Minus => {
                    self.bump();
                    let guard = self.formula()?;
                    self.expect(Tok::Gt, "'>'")?;
                    let body = self.unary()?;
                    HybridFormula::not(HybridFormula::del(guard, HybridFormula::not(body)))
                }
                _ => return Err(self.unexpected("'>' or '-' after '<'")),
            },
            Tok::At | Tok::Bang if !self.hybrid => {
                return Err(ParseError::HybridNotAllowed { pos: at });
            }
            Tok::At => {
                let x = self.nominal()?;
                HybridFormula::at(x, self.unary()?)
            }
            Tok::Bang => {
                let x = self.nominal()?;
                HybridFormula::down(x, self.unary()?)
            }
            Tok::True => HybridFormula::Top,
            Tok::False => HybridFormula::bot(),
            Tok::Ident(name) => {
                if self.hybrid && is_nominal(&name) {
                    HybridFormula::Nom(Symbol::from(name))
                } else {
                    HybridFormula::Atom(Symbol::from(name))
                }
            }
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                f
            }
            _ => {
                self.pos = start;
                return Err(self.unexpected("a formula"));
            }
        };
        self.depth -= 1;
        Ok(f)
    }
}

fn parse(text: &str, hybrid: bool) -> Result<HybridFormula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        hybrid,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parse a formula of the deletion language.
pub fn parse_ld(text: &str) -> Result<LdFormula, ParseError> {
    let f = parse(text, false)?;
    Ok(f.to_ld().expect("hybrid operators are rejected in plain mode"))
}

/// Parse a formula of the mixed hybrid/deletion language.
pub fn parse_hybrid(text: &str) -> Result<HybridFormula, ParseError> {
    parse(text, true)
}

const IMP: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

pub(crate) fn print(f: &HybridFormula) -> String {
    let mut out = String::new();
    write_formula(f, IMP, &mut out);
    out
}

fn write_formula(f: &HybridFormula, prec: u8, out: &mut String) {
    use HybridFormula as H;

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
        H::Atom(a) => out.push_str(a),
        H::Nom(x) => out.push_str(x),
        H::Top => out.push_str("true"),
        H::And(a, b) => wrap(AND, out, &|out| {
            write_formula(a, AND, out);
            out.push_str(" & ");
            write_formula(b, UNARY, out);
        }),
        H::Box(a) => {
            out.push_str("[]");
            write_formula(a, UNARY, out);
        }
        H::Del(g, b) => {
            out.push_str("[-");
            write_formula(g, IMP, out);
            out.push(']');
            write_formula(b, UNARY, out);
        }
        H::At(x, a) => {
            let _ = write!(out, "@{x} ");
            write_formula(a, UNARY, out);
        }
        H::Down(x, a) => {
            let _ = write!(out, "!{x} ");
            write_formula(a, UNARY, out);
        }
        H::Not(inner) => match &**inner {
            H::Top => out.push_str("false"),
            H::Box(b) if matches!(&**b, H::Not(_)) => {
                let H::Not(body) = &**b else { unreachable!() };
                out.push_str("<>");
                write_formula(body, UNARY, out);
            }
            H::Del(g, b) if matches!(&**b, H::Not(_)) => {
                let H::Not(body) = &**b else { unreachable!() };
                out.push_str("<-");
                write_formula(g, IMP, out);
                out.push('>');
                write_formula(body, UNARY, out);
            }
            H::And(a, b) => match (&**a, &**b) {
                (H::Not(x), H::Not(y)) => wrap(OR, out, &|out| {
                    write_formula(x, OR, out);
                    out.push_str(" | ");
                    write_formula(y, AND, out);
                }),
                (x, H::Not(y)) => wrap(IMP, out, &|out| {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> LdFormula {
        LdFormula::atom("p")
    }
    fn q() -> LdFormula {
        LdFormula::atom("q")
    }

    #[test]
    fn parses_worked_examples() {
        assert_eq!(
            parse_ld("[-p]<>q").unwrap(),
            LdFormula::del(p(), LdFormula::not(LdFormula::boxed(LdFormula::not(q()))))
        );
        assert_eq!(parse_ld("true").unwrap(), LdFormula::Top);
        assert_eq!(
            parse_ld("[-p][] [-q][] false").unwrap(),
            LdFormula::del(
                p(),
                LdFormula::boxed(LdFormula::del(q(), LdFormula::boxed(LdFormula::bot())))
            )
        );
    }

    #[test]
    fn biconditional_is_lowest() {
        assert_eq!(
            parse_ld("p -> q <-> q | p").unwrap(),
            LdFormula::iff(LdFormula::implies(p(), q()), LdFormula::or(q(), p()))
        );
        assert_eq!(
            parse_ld("<-p>q <-> q").unwrap(),
            LdFormula::iff(LdFormula::dual_del(p(), q()), q())
        );
        assert!(parse_ld("p <-> q <-> p").is_err());
    }

    #[test]
    fn prints_worked_examples() {
        let f = LdFormula::del(p(), LdFormula::not(LdFormula::boxed(LdFormula::not(q()))));
        assert_eq!(f.to_string(), "[-p]<>q");
        assert_eq!(LdFormula::Top.to_string(), "true");
        assert_eq!(LdFormula::boxed(LdFormula::bot()).to_string(), "[]false");
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_ld("p & q | r -> s -> t").unwrap();
        let expected = LdFormula::implies(
            LdFormula::or(LdFormula::and(p(), q()), LdFormula::atom("r")),
            LdFormula::implies(LdFormula::atom("s"), LdFormula::atom("t")),
        );
        assert_eq!(f, expected);
        // modalities bind to the smallest following formula
        assert_eq!(parse_ld("[]p & q").unwrap(), LdFormula::and(LdFormula::boxed(p()), q()));
        assert_eq!(
            parse_ld("[-p]q -> r").unwrap(),
            LdFormula::implies(LdFormula::del(p(), q()), LdFormula::atom("r"))
        );
    }

    #[test]
    fn dual_deletion_is_sugar() {
        assert_eq!(parse_ld("<-p>q").unwrap(), parse_ld("~[-p]~q").unwrap());
        assert_eq!(parse_ld("<-p->q>r").unwrap(), parse_ld("~[-(p -> q)]~r").unwrap());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse_ld(" [ - p ] < > q ").unwrap(), parse_ld("[-p]<>q").unwrap());
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_ld("p & "),
            Err(ParseError::Unexpected {
                pos: 4,
                expected: "a formula",
                found: "end of input".into()
            })
        );
        assert_eq!(parse_ld("p # q"), Err(ParseError::UnknownChar { pos: 2, ch: '#' }));
        assert!(matches!(parse_ld("P"), Err(ParseError::UnknownChar { pos: 0, .. })));
        assert!(matches!(parse_ld("p q"), Err(ParseError::Unexpected { pos: 2, .. })));
        assert!(matches!(parse_ld("[-p q"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_ld("[p]q"), Err(ParseError::Unexpected { pos: 1, .. })));
        assert_eq!(parse_ld("@x p"), Err(ParseError::HybridNotAllowed { pos: 0 }));
        assert_eq!(
            parse_ld(""),
            Err(ParseError::Unexpected {
                pos: 0,
                expected: "a formula",
                found: "end of input".into()
            })
        );
    }

    #[test]
    fn nesting_limit() {
        let deep = "~".repeat(MAX_NESTING + 10) + "p";
        assert!(matches!(parse_ld(&deep), Err(ParseError::TooDeep { .. })));
        let ok = "~".repeat(100) + "p";
        assert!(parse_ld(&ok).is_ok());
    }

    #[test]
    fn hybrid_surface() {
        let f = parse_hybrid("!x [] !y (~phi -> @x [-phi] @y psi)").unwrap();
        assert_eq!(f.to_string(), "!x []!y (phi | @x [-phi]@y psi)");
        assert_eq!(parse_hybrid(&f.to_string()).unwrap(), f);
        assert!(matches!(parse_hybrid("@p q"), Err(ParseError::Unexpected { .. })));
        assert_eq!(parse_hybrid("x1").unwrap(), HybridFormula::nom("x1"));
        assert_eq!(parse_hybrid("xa").unwrap(), HybridFormula::atom("xa"));
        // nominal-shaped names are ordinary atoms outside hybrid mode
        assert_eq!(parse_ld("x").unwrap(), LdFormula::atom("x"));
    }

    #[test]
    fn printer_round_trips_sugar() {
        for s in [
            "p | q",
            "p -> q",
            "(p -> q) -> r",
            "p -> q -> r",
            "~(p & q)",
            "(p | q) & r",
            "p | q | r",
            "p | (q | r)",
            "<-<>p>[]q",
            "[-p -> q]false",
            "~~p",
            "~<>p",
        ] {
            let f = parse_ld(s).unwrap();
            assert_eq!(parse_ld(&f.to_string()).unwrap(), f, "{s} printed as {f}");
        }
    }
}
