use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::simplex::{maximize, LpOutcome};
use super::{LinIneq, LinSystem, PolytopeError, Rational, Relation};

/// Project out one variable by Fourier-Motzkin elimination. Equalities
/// mentioning the variable are used for substitution first; remaining
/// lower bounds are paired with upper bounds. Pairing a strict row with
/// anything yields a strict row.
pub fn fm_eliminate(system: &LinSystem, var: &str) -> Result<LinSystem, PolytopeError> {
    if !system.variables.contains(&var.to_string()) {
        return Err(PolytopeError::UnknownVariable(var.to_string()));
    }
    let variables: Vec<String> = system
        .variables
        .iter()
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect();
    let mut out = LinSystem::new(variables);

    // Substitution via an equality row pinning var.
    if let Some(eq) = system
        .rows
        .iter()
        .find(|r| r.relation == Relation::Eq && !r.coeff(var).is_zero())
    {
        let a = eq.coeff(var);
        for row in &system.rows {
            if std::ptr::eq(row, eq) {
                continue;
            }
            let b = row.coeff(var);
            let substituted = if b.is_zero() {
                row.clone()
            } else {
                // row - (b/a) * eq removes var.
                combine(row, eq, &(-(&b / &a)))
            };
            push_row(&mut out, substituted)?;
        }
        return Ok(out);
    }

    let mut lowers: Vec<&LinIneq> = Vec::new();
    let mut uppers: Vec<&LinIneq> = Vec::new();
    for row in &system.rows {
        let c = row.coeff(var);
        if c.is_zero() {
            push_row(&mut out, row.clone())?;
        } else if c.is_positive() {
            uppers.push(row);
        } else {
            lowers.push(row);
        }
    }
    for lo in &lowers {
        for up in &uppers {
            // lo: -a*var + ... <= c1 (a > 0), up: b*var + ... <= c2 (b > 0).
            // Combine b*lo + a*up to cancel var.
            let a = -lo.coeff(var);
            let b = up.coeff(var);
            let mut coeffs: BTreeMap<String, Rational> = BTreeMap::new();
            for (v, c) in &lo.coefficients {
                *coeffs.entry(v.clone()).or_insert_with(Rational::zero) += c * &b;
            }
            for (v, c) in &up.coefficients {
                *coeffs.entry(v.clone()).or_insert_with(Rational::zero) += c * &a;
            }
            let constant = &lo.constant * &b + &up.constant * &a;
            let relation = if lo.relation == Relation::Lt || up.relation == Relation::Lt {
                Relation::Lt
            } else {
                Relation::Le
            };
            push_row(&mut out, LinIneq::new(coeffs, relation, constant))?;
        }
    }
    Ok(out)
}

/// row + k * eq
fn combine(row: &LinIneq, eq: &LinIneq, k: &Rational) -> LinIneq {
    let mut coeffs = row.coefficients.clone();
    for (v, c) in &eq.coefficients {
        *coeffs.entry(v.clone()).or_insert_with(Rational::zero) += c * k;
    }
    let constant = &row.constant + &eq.constant * k;
    LinIneq::new(coeffs, row.relation, constant)
}

/// Tautological constant rows are dropped; contradictory ones are kept
/// so infeasibility stays visible in the projected system.
fn push_row(system: &mut LinSystem, row: LinIneq) -> Result<(), PolytopeError> {
    if row.is_constant() && row.constant_holds() {
        return Ok(());
    }
    system.push(row)
}

/// Eliminate several variables in the given order, deduplicating
/// canonical rows after every step.
pub fn eliminate_all(system: &LinSystem, order: &[&str]) -> Result<LinSystem, PolytopeError> {
    let mut current = system.clone();
    current.dedup();
    for var in order {
        current = fm_eliminate(&current, var)?;
        current.dedup();
    }
    Ok(current)
}

/// Remove every row implied by the remaining rows, decided by exact
/// rational LP on the closed relaxation. Returns a minimal subsystem
/// with the same solution set.
pub fn remove_redundant(system: &LinSystem) -> LinSystem {
    let mut kept: Vec<LinIneq> = system.canonical_rows();
    let mut i = 0;
    while i < kept.len() {
        let candidate = kept[i].clone();
        if candidate.relation == Relation::Eq {
            // Equalities are not tested for redundancy here; the region
            // systems this artifact manipulates carry none after
            // substitution.
            i += 1;
            continue;
        }
        let others: Vec<LinIneq> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.closed())
            .collect();
        if implied_by(&candidate, &others, &system.variables) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    LinSystem {
        variables: system.variables.clone(),
        rows: kept,
    }
}

/// Is `row` (closed relaxation) implied by `others`? True iff
/// max { c.x : others } <= constant.
fn implied_by(row: &LinIneq, others: &[LinIneq], variables: &[String]) -> bool {
    match maximize(&row.coefficients, others, variables) {
        LpOutcome::Optimal(value, _) => value <= row.constant,
        LpOutcome::Unbounded => false,
        // An infeasible constraint set implies everything.
        LpOutcome::Infeasible => true,
    }
}
