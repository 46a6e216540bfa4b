use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Signed, Zero};

use super::{PolytopeError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// <=
    Le,
    /// < (strict)
    Lt,
    /// =
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Le => write!(f, "<="),
            Relation::Lt => write!(f, "<"),
            Relation::Eq => write!(f, "="),
        }
    }
}

/// A linear inequality sum(coeff_i * x_i) REL constant, kept canonical:
/// coefficients integer-scaled and gcd-reduced together with the
/// constant; the leading coefficient positive for equalities; no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinIneq {
    pub coefficients: BTreeMap<String, Rational>,
    pub relation: Relation,
    pub constant: Rational,
}

impl LinIneq {
    pub fn new(
        coefficients: BTreeMap<String, Rational>,
        relation: Relation,
        constant: Rational,
    ) -> Self {
        let mut row = LinIneq {
            coefficients,
            relation,
            constant,
        };
        row.canonicalize();
        row
    }

    pub fn coeff(&self, var: &str) -> Rational {
        self.coefficients
            .get(var)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// True when the row has no variables. A trivial row is either
    /// vacuously true (e.g. 0 <= 1) or an outright contradiction.
    pub fn is_constant(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// For constant rows: does the row hold?
    pub fn constant_holds(&self) -> bool {
        debug_assert!(self.is_constant());
        let zero = Rational::zero();
        match self.relation {
            Relation::Le => zero <= self.constant,
            Relation::Lt => zero < self.constant,
            Relation::Eq => zero == self.constant,
        }
    }

    fn canonicalize(&mut self) {
        self.coefficients.retain(|_, c| !c.is_zero());
        if self.coefficients.is_empty() {
            return;
        }
        // Coefficients become coprime integers; the constant scales along
        // and may stay fractional.
        let mut lcm = BigInt::from(1);
        for c in self.coefficients.values() {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let mut gcd = BigInt::zero();
        for c in self.coefficients.values() {
            let scaled = c.numer() * (&lcm / c.denom());
            gcd = num::integer::gcd(gcd, scaled);
        }
        if gcd.is_zero() {
            gcd = BigInt::from(1);
        }
        let mut scale = Rational::new(lcm, gcd);
        if self.relation == Relation::Eq {
            // Sign fixed by the first (lexicographically smallest) variable.
            let lead = self.coefficients.values().next().unwrap();
            if (lead * &scale).is_negative() {
                scale = -scale;
            }
        } else if scale.is_negative() {
            // Direction-preserving scaling only.
            scale = -scale;
        }
        for c in self.coefficients.values_mut() {
            *c *= &scale;
        }
        self.constant *= &scale;
    }

    /// Evaluate at a rational point; true iff the row is satisfied.
    pub fn satisfied_at(&self, point: &BTreeMap<String, Rational>) -> bool {
        let mut lhs = Rational::zero();
        for (v, c) in &self.coefficients {
            if let Some(x) = point.get(v) {
                lhs += c * x;
            }
        }
        match self.relation {
            Relation::Le => lhs <= self.constant,
            Relation::Lt => lhs < self.constant,
            Relation::Eq => lhs == self.constant,
        }
    }

    /// The closed relaxation: < becomes <=.
    pub fn closed(&self) -> LinIneq {
        let mut row = self.clone();
        if row.relation == Relation::Lt {
            row.relation = Relation::Le;
        }
        row
    }
}

impl fmt::Display for LinIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            write!(f, "0 {} {}", self.relation, self.constant)?;
            return Ok(());
        }
        let one = Rational::from_integer(1.into());
        let mut first = true;
        for (v, c) in &self.coefficients {
            if first {
                if c == &one {
                    write!(f, "{v}")?;
                } else if c == &(-one.clone()) {
                    write!(f, "-{v}")?;
                } else {
                    write!(f, "{c}*{v}")?;
                }
                first = false;
            } else if c.is_negative() {
                let a = -c.clone();
                if a == one {
                    write!(f, " - {v}")?;
                } else {
                    write!(f, " - {a}*{v}")?;
                }
            } else if c == &one {
                write!(f, " + {v}")?;
            } else {
                write!(f, " + {c}*{v}")?;
            }
        }
        write!(f, " {} {}", self.relation, self.constant)
    }
}

/// A system of linear inequalities over an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSystem {
    pub variables: Vec<String>,
    pub rows: Vec<LinIneq>,
}

impl LinSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinSystem {
            variables,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: LinIneq) -> Result<(), PolytopeError> {
        for v in row.coefficients.keys() {
            if !self.variables.contains(v) {
                return Err(PolytopeError::UnknownVariable(v.clone()));
            }
        }
        if !self.rows.contains(&row) {
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn dedup(&mut self) {
        let mut seen = Vec::new();
        self.rows.retain(|r| {
            if seen.contains(r) {
                false
            } else {
                seen.push(r.clone());
                true
            }
        });
    }

    /// Canonical sorted view of the rows, for set comparison and
    /// bit-identical reporting.
    pub fn canonical_rows(&self) -> Vec<LinIneq> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows.dedup();
        rows
    }

    pub fn same_row_set(&self, other: &LinSystem) -> bool {
        self.canonical_rows() == other.canonical_rows()
    }
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
