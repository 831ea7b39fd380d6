//! Tiny grammar for operator identities such as `comm(S+, S-) == -2*Sz`.
//!
//! ```text
//! equation := expr ( "==" expr )?
//! expr     := term ( ("+" | "-") term )*
//! term     := unary ( "*" unary )*
//! unary    := ("-" | "+") unary | atom
//! atom     := number ["i"] | "i" | name | "(" expr ")"
//!           | "adj" "(" expr ")" | "comm" "(" expr "," expr ")"
//! name     := a- | a+ | I | n | H | Sz | S+ | S- | Sx | Sy | x | p
//! ```
//!
//! A bare scalar stands for that multiple of the identity.

use super::expr::{AdjointSign, OperatorExpression as E};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub lhs: E,
    pub rhs: Option<E>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(C64),
    Name(&'static str),
    Adj,
    Comm,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    EqEq,
    End,
}

const NAMES: [&str; 12] = ["a-", "a+", "I", "n", "H", "Sz", "S+", "S-", "Sx", "Sy", "x", "p"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let err = |pos: usize, msg: String| Error::Parse { pos, msg };
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                k += 1;
                continue;
            }
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            ',' => out.push((start, Tok::Comma)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '=' => {
                if chars.get(k + 1) == Some(&'=') {
                    out.push((start, Tok::EqEq));
                    k += 1;
                } else {
                    return Err(err(start, "expected '=='".into()));
                }
            }
            d if d.is_ascii_digit() || d == '.' => {
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                    let mut j = k + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        k = j;
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                    }
                }
                let text: String = chars[start..k].iter().collect();
                let value: f64 = text.parse().map_err(|_| err(start, format!("bad number {text:?}")))?;
                let imaginary = k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|c| c.is_ascii_alphanumeric());
                if imaginary {
                    k += 1;
                    out.push((start, Tok::Num(C64::new(0.0, value))));
                } else {
                    out.push((start, Tok::Num(C64::new(value, 0.0))));
                }
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while k < chars.len() && chars[k].is_ascii_alphabetic() {
                    k += 1;
                }
                let word: String = chars[start..k].iter().collect();
                let tok = match word.as_str() {
                    "adj" => Tok::Adj,
                    "comm" => Tok::Comm,
                    "i" => Tok::Num(C64::new(0.0, 1.0)),
                    "a" | "S" => {
                        let sign = chars.get(k).copied();
                        match sign {
                            Some('+') | Some('-') => {
                                k += 1;
                                let full = format!("{word}{}", sign.unwrap());
                                Tok::Name(NAMES.iter().find(|n| **n == full).copied().unwrap())
                            }
                            _ => return Err(err(start, format!("'{word}' must be followed by '+' or '-'"))),
                        }
                    }
                    other => match NAMES.iter().find(|n| **n == other) {
                        Some(n) => Tok::Name(n),
                        None => return Err(err(start, format!("unknown symbol {other:?}"))),
                    },
                };
                out.push((start, tok));
                continue;
            }
            other => return Err(err(start, format!("unexpected character {other:?}"))),
        }
        k += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    omega: f64,
    sign: AdjointSign,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.expr()?;
        let rhs = if *self.peek() == Tok::EqEq {
            self.bump();
            Some(self.expr()?)
        } else {
            None
        };
        if *self.peek() != Tok::End {
            return Err(Error::Parse {
                pos: self.pos(),
                msg: "unexpected trailing input".into(),
            });
        }
        Ok(Equation { lhs, rhs })
    }

    fn expr(&mut self) -> Result<E> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(self.term()?.negated());
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { E::Sum(terms) })
    }

    fn term(&mut self) -> Result<E> {
        let mut factors = vec![self.unary()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { E::Product(factors) })
    }

    fn unary(&mut self) -> Result<E> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.negated())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<E> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(c) => Ok(E::scalar(c)),
            Tok::Name(name) => self.named(name),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Adj => {
                self.expect(Tok::LParen, "'(' after adj")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e.adjoint(self.sign))
            }
            Tok::Comm => {
                self.expect(Tok::LParen, "'(' after comm")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "',' in comm(A, B)")?;
                let b = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(E::commutator(a, b))
            }
            Tok::End => Err(Error::Parse {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }

    fn named(&self, name: &str) -> Result<E> {
        Ok(match name {
            "a-" => E::lowering(),
            "a+" => E::raising(),
            "I" => E::identity(),
            "n" => E::number(),
            "H" => E::hamiltonian(self.omega)?,
            "Sz" => E::s_z(),
            "S+" => E::s_plus(),
            "S-" => E::s_minus(),
            "Sx" => E::s_x(),
            "Sy" => E::s_y(),
            "x" => E::position(),
            "p" => E::momentum(),
            _ => unreachable!("lexer only emits known names"),
        })
    }
}

/// Parses an expression or `LHS == RHS` identity. `H` uses `omega`; `adj`
/// uses `sign`.
pub fn parse_equation(src: &str, omega: f64, sign: AdjointSign) -> Result<Equation> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, omega, sign };
    p.equation()
}
