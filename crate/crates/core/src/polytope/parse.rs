use std::collections::BTreeMap;

use num::{BigInt, Zero};

use super::{LinIneq, LinSystem, PolytopeError, Rational, Relation};

/// Parse one inequality line, e.g. `3*v1 - 2*v2 + r0 <= 5/2`.
/// Both sides may mix variable terms and rational constants; `>=` and
/// `>` are normalized by sign flip.
pub fn parse_lin_ineq(line: &str) -> Result<LinIneq, PolytopeError> {
    let (rel, pos) = find_relation(line)?;
    let (lhs_text, rhs_text) = {
        let (l, r) = line.split_at(pos);
        (l, &r[rel_len(rel, r)..])
    };
    let (mut coeffs, mut constant) = parse_side(lhs_text)?;
    let (rhs_coeffs, rhs_constant) = parse_side(rhs_text)?;
    // Move rhs terms left, lhs constant right.
    for (v, c) in rhs_coeffs {
        *coeffs.entry(v).or_insert_with(Rational::zero) -= c;
    }
    constant = rhs_constant - constant;
    let (relation, flip) = match rel {
        RawRel::Le => (Relation::Le, false),
        RawRel::Lt => (Relation::Lt, false),
        RawRel::Eq => (Relation::Eq, false),
        RawRel::Ge => (Relation::Le, true),
        RawRel::Gt => (Relation::Lt, true),
    };
    if flip {
        for c in coeffs.values_mut() {
            *c = -c.clone();
        }
        constant = -constant;
    }
    Ok(LinIneq::new(coeffs, relation, constant))
}

/// Parse a whole system: one row per line, `#` starts a comment,
/// blank lines ignored.
pub fn parse_lin_system(text: &str, variables: &[String]) -> Result<LinSystem, PolytopeError> {
    let mut system = LinSystem::new(variables.to_vec());
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        system.push(parse_lin_ineq(line)?)?;
    }
    Ok(system)
}

#[derive(Clone, Copy, PartialEq)]
enum RawRel {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

fn rel_len(rel: RawRel, rest: &str) -> usize {
    match rel {
        RawRel::Le | RawRel::Ge => 2,
        RawRel::Eq => {
            if rest.starts_with("==") {
                2
            } else {
                1
            }
        }
        RawRel::Lt | RawRel::Gt => 1,
    }
}

fn find_relation(line: &str) -> Result<(RawRel, usize), PolytopeError> {
    let bytes = line.as_bytes();
    for i in 0..bytes.len() {
        match bytes[i] {
            b'<' => {
                return Ok(if bytes.get(i + 1) == Some(&b'=') {
                    (RawRel::Le, i)
                } else {
                    (RawRel::Lt, i)
                })
            }
            b'>' => {
                return Ok(if bytes.get(i + 1) == Some(&b'=') {
                    (RawRel::Ge, i)
                } else {
                    (RawRel::Gt, i)
                })
            }
            b'=' => return Ok((RawRel::Eq, i)),
            _ => {}
        }
    }
    Err(PolytopeError::Parse(format!(
        "no relation operator in `{line}`"
    )))
}

/// Parse `3*v1 - 2*v2 + 5/2` into (coefficients, constant).
fn parse_side(text: &str) -> Result<(BTreeMap<String, Rational>, Rational), PolytopeError> {
    let mut coeffs: BTreeMap<String, Rational> = BTreeMap::new();
    let mut constant = Rational::zero();
    let mut rest = text.trim();
    let mut sign = Rational::from_integer(1.into());
    let mut first = true;
    while !rest.is_empty() {
        if !first || rest.starts_with('+') || rest.starts_with('-') {
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -Rational::from_integer(1.into());
                rest = r.trim_start();
            } else if !first {
                return Err(PolytopeError::Parse(format!(
                    "expected + or - before `{rest}`"
                )));
            }
        }
        first = false;
        let (term, remainder) = take_term(rest);
        rest = remainder.trim_start();
        let term = term.trim();
        if term.is_empty() {
            return Err(PolytopeError::Parse("empty term".into()));
        }
        let (coeff, var) = split_term(term)?;
        let value = sign.clone() * coeff;
        match var {
            Some(name) => {
                *coeffs.entry(name).or_insert_with(Rational::zero) += value;
            }
            None => constant += value,
        }
        sign = Rational::from_integer(1.into());
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok((coeffs, constant))
}

fn take_term(text: &str) -> (&str, &str) {
    match text.find(['+', '-']) {
        Some(i) => text.split_at(i),
        None => (text, ""),
    }
}

/// `3*v1` -> (3, Some(v1)); `v1` -> (1, Some(v1)); `5/2` -> (5/2, None).
fn split_term(term: &str) -> Result<(Rational, Option<String>), PolytopeError> {
    if let Some((num_text, var_text)) = term.split_once('*') {
        let coeff = parse_rational(num_text.trim())?;
        let var = parse_name(var_text.trim())?;
        Ok((coeff, Some(var)))
    } else if term
        .chars()
        .next()
        .map(|c| c.is_ascii_alphabetic())
        .unwrap_or(false)
    {
        Ok((Rational::from_integer(1.into()), Some(parse_name(term)?)))
    } else {
        Ok((parse_rational(term)?, None))
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<Rational, PolytopeError> {
    let parse_int = |t: &str| -> Result<BigInt, PolytopeError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| PolytopeError::Parse(format!("bad number `{t}`")))
    };
    if let Some((n, d)) = text.split_once('/') {
        let denom = parse_int(d)?;
        if denom.is_zero() {
            return Err(PolytopeError::Parse("zero denominator".into()));
        }
        Ok(Rational::new(parse_int(n)?, denom))
    } else {
        Ok(Rational::from_integer(parse_int(text)?))
    }
}

fn parse_name(text: &str) -> Result<String, PolytopeError> {
    let ok = text
        .chars()
        .next()
        .map(|c| c.is_ascii_alphabetic())
        .unwrap_or(false)
        && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(text.to_string())
    } else {
        Err(PolytopeError::Parse(format!("bad variable name `{text}`")))
    }
}
