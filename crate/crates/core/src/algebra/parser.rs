//! Parser for the canonical text form.
//!
//! Grammar (usual precedence, `^` tightest and right-associative):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := integer | name '\''* | '(' expr ')'
//! ```
//!
//! Names are resolved against a [`DerivationEnv`]; primes bump the
//! derivative order of differential symbols.

use std::sync::Arc;

use crate::algebra::derivation::DerivationEnv;
use crate::algebra::expr::Expr;
use crate::algebra::symbol::IndetKind;
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Name(String, u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v = n
                    .parse()
                    .map_err(|_| CoreError::Parse(format!("integer out of range: {n}")))?;
                out.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let mut primes = 0;
                while chars.peek() == Some(&'\'') {
                    primes += 1;
                    chars.next();
                }
                out.push(Token::Name(name, primes));
            }
            other => {
                return Err(CoreError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    env: &'a Arc<DerivationEnv>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Token::Minus => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.next();
                    acc = acc * self.factor()?;
                }
                Token::Slash => {
                    self.next();
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            let neg = if self.peek() == Some(&Token::Minus) {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Int(e)) => {
                    let e = i32::try_from(e)
                        .map_err(|_| CoreError::Parse("exponent out of range".to_string()))?;
                    return base.pow(if neg { -e } else { e });
                }
                _ => return Err(CoreError::Parse("expected integer exponent".to_string())),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::int(n)),
            Some(Token::Name(name, primes)) => {
                let sym = self
                    .env
                    .lookup(&name)
                    .ok_or_else(|| CoreError::UnboundSymbol(name.clone()))?;
                let sym = if primes == 0 {
                    sym
                } else {
                    match sym.kind() {
                        IndetKind::Differential { order } => {
                            crate::algebra::symbol::Indeterminate::differential_order(
                                &name,
                                order + primes,
                            )
                        }
                        _ => {
                            return Err(CoreError::Parse(format!(
                                "`{name}` cannot carry primes"
                            )))
                        }
                    }
                };
                Ok(Expr::var(&sym))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(CoreError::Parse("expected `)`".to_string())),
                }
            }
            other => Err(CoreError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses the canonical text form, resolving names in the environment.
pub fn parse_expr(input: &str, env: &Arc<DerivationEnv>) -> Result<Expr> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0, env };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CoreError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::printer::expr_to_text;

    fn env() -> Arc<DerivationEnv> {
        let env = DerivationEnv::new();
        let s = env.chart_var("s").unwrap();
        env.chart_var("t").unwrap();
        env.param("a").unwrap();
        env.differential("zeta").unwrap();
        env.set_prime_direction(&s);
        env
    }

    #[test]
    fn round_trip() {
        let env = env();
        for text in [
            "t^2 + 2*zeta*t + a",
            "(t^2 + 1)/(a^2)",
            "-t + 3/2",
            "zeta''*t - a",
        ] {
            let e = parse_expr(text, &env).unwrap();
            let printed = expr_to_text(&e);
            let back = parse_expr(&printed, &env).unwrap();
            assert_eq!(e, back, "{text} -> {printed}");
        }
    }

    #[test]
    fn unbound_name() {
        let env = env();
        assert!(matches!(
            parse_expr("nope + 1", &env),
            Err(CoreError::UnboundSymbol(_))
        ));
    }

    #[test]
    fn precedence() {
        let env = env();
        let e = parse_expr("2*t^2 - 1/2", &env).unwrap();
        let t = env.lookup("t").unwrap();
        let expected = Expr::int(2) * Expr::var(&t).pow(2).unwrap()
            - Expr::scalar(crate::algebra::scalar::ExactScalar::ratio(1, 2));
        assert_eq!(e, expected);
    }
}
