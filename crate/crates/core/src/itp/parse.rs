//! Text form for information expressions and prover inputs.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := term (('+'|'-') term)*
//!   term   := [rational '*'] atom | rational
//!   atom   := 'H' '(' vars ['|' vars] ')'
//!           | 'I' '(' vars ';' vars ['|' vars] ')'
//!   vars   := name (',' name)*
//!   target := expr ('>=' | '<=' | '=') expr
//!
//! A target is normalized to `lhs - rhs >= 0`; constraints use `= 0`.

use num::{BigInt, BigRational, One, Zero};

use crate::measures::InfoExpression;

use super::{ItpError, ProofConstraint};

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ItpError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            other => Err(ItpError::Parse(format!(
                "expected `{}`, found {}",
                c as char,
                other.map_or("end of input".to_string(), |b| format!("`{}`", b as char))
            ))),
        }
    }

    fn name(&mut self) -> Result<String, ItpError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic()) {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .to_string())
        } else {
            Err(ItpError::Parse("expected a variable name".into()))
        }
    }

    fn number(&mut self) -> Result<BigRational, ItpError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ItpError::Parse("expected a number".into()));
        }
        let numer: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return Err(ItpError::Parse("expected a denominator".into()));
            }
            let denom: BigInt = std::str::from_utf8(&self.src[dstart..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            if denom.is_zero() {
                return Err(ItpError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn var_list(&mut self, stop: &[u8]) -> Result<Vec<String>, ItpError> {
        let mut vars = vec![self.name()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            vars.push(self.name()?);
        }
        match self.peek() {
            Some(c) if stop.contains(&c) => Ok(vars),
            _ => Err(ItpError::Parse("malformed variable list".into())),
        }
    }

    fn atom(&mut self) -> Result<InfoExpression, ItpError> {
        let head = self.name()?;
        self.expect(b'(')?;
        fn refs(v: &[String]) -> Vec<&str> {
            v.iter().map(|s| s.as_str()).collect()
        }
        let expr = match head.as_str() {
            "H" => {
                let a = self.var_list(&[b'|', b')'])?;
                if self.peek() == Some(b'|') {
                    self.pos += 1;
                    let given = self.var_list(&[b')'])?;
                    InfoExpression::cond_entropy(&refs(&a), &refs(&given))
                } else {
                    InfoExpression::entropy(&refs(&a))
                }
            }
            "I" => {
                let a = self.var_list(&[b';'])?;
                self.expect(b';')?;
                let b = self.var_list(&[b'|', b')'])?;
                let given = if self.peek() == Some(b'|') {
                    self.pos += 1;
                    self.var_list(&[b')'])?
                } else {
                    Vec::new()
                };
                InfoExpression::mutual(&refs(&a), &refs(&b), &refs(&given))
            }
            other => {
                return Err(ItpError::Parse(format!(
                    "expected H(...) or I(...), found `{other}`"
                )))
            }
        };
        self.expect(b')')?;
        Ok(expr)
    }

    fn expr(&mut self) -> Result<InfoExpression, ItpError> {
        let mut total = InfoExpression::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    BigRational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -BigRational::one()
                }
                Some(_) if first => BigRational::one(),
                _ => break,
            };
            first = false;
            let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let n = self.number()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                }
                n
            } else {
                BigRational::one()
            };
            if self.peek().is_some_and(|c| c == b'H' || c == b'I') {
                total = total + self.atom()? * (sign * coeff);
            } else if coeff.is_zero() {
                // bare zero literal contributes nothing
            } else {
                return Err(ItpError::Parse(
                    "constant terms other than 0 are not information expressions".into(),
                ));
            }
        }
        Ok(total)
    }
}

/// Parse a linear combination of H(...) and I(...) terms.
pub fn parse_expression(src: &str) -> Result<InfoExpression, ItpError> {
    let mut sc = Scanner::new(src);
    let e = sc.expr()?;
    if sc.peek().is_some() {
        return Err(ItpError::Parse(format!(
            "trailing input at byte {}",
            sc.pos
        )));
    }
    Ok(e)
}

/// Parse a claim of the form `lhs >= rhs`, `lhs <= rhs`, or `lhs = rhs`
/// into an expression asserted nonnegative (equalities are rejected;
/// prove both directions instead).
pub fn parse_target(src: &str) -> Result<InfoExpression, ItpError> {
    let (lhs, rhs, flip) = if let Some((l, r)) = src.split_once(">=") {
        (l, r, false)
    } else if let Some((l, r)) = src.split_once("<=") {
        (l, r, true)
    } else {
        return Err(ItpError::Parse("expected `>=` or `<=`".into()));
    };
    let l = parse_expression(lhs)?;
    let r = parse_expression(rhs)?;
    Ok(if flip { r - l } else { l - r })
}

/// Parse a side condition: `H(A|B) = 0`, `I(A;B|C) = 0`, or a general
/// `expr = 0`.
pub fn parse_constraint(src: &str) -> Result<ProofConstraint, ItpError> {
    let (lhs, rhs) = src
        .split_once('=')
        .ok_or_else(|| ItpError::Parse("expected `expr = 0`".into()))?;
    let rhs = rhs.trim();
    if rhs != "0" {
        return Err(ItpError::Parse("constraint right-hand side must be 0".into()));
    }
    // Recognize the two structured forms so callers get semantic variants.
    let mut sc = Scanner::new(lhs);
    if let Some(head) = probe_head(lhs) {
        match head {
            b'H' => {
                let name = sc.name()?;
                debug_assert_eq!(name, "H");
                sc.expect(b'(')?;
                let a = sc.var_list(&[b'|', b')'])?;
                let given = if sc.peek() == Some(b'|') {
                    sc.pos += 1;
                    sc.var_list(&[b')'])?
                } else {
                    Vec::new()
                };
                sc.expect(b')')?;
                if sc.peek().is_none() {
                    return Ok(ProofConstraint::FunctionalDependency { a, given });
                }
            }
            b'I' => {
                let name = sc.name()?;
                debug_assert_eq!(name, "I");
                sc.expect(b'(')?;
                let a = sc.var_list(&[b';'])?;
                sc.expect(b';')?;
                let b = sc.var_list(&[b'|', b')'])?;
                let given = if sc.peek() == Some(b'|') {
                    sc.pos += 1;
                    sc.var_list(&[b')'])?
                } else {
                    Vec::new()
                };
                sc.expect(b')')?;
                if sc.peek().is_none() {
                    return Ok(ProofConstraint::Independence { a, b, given });
                }
            }
            _ => {}
        }
    }
    Ok(ProofConstraint::LinearEquality(parse_expression(lhs)?))
}

fn probe_head(src: &str) -> Option<u8> {
    let t = src.trim_start();
    let b = t.as_bytes();
    if b.len() >= 2 && (b[0] == b'H' || b[0] == b'I') {
        let mut i = 1;
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < b.len() && b[i] == b'(' {
            return Some(b[0]);
        }
    }
    None
}
