use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, Zero};

/// A linear combination of joint entropies, sum of c_k * H(subset_k),
/// with exact rational coefficients. Kept in canonical form: subsets
/// sorted (BTreeMap order), no empty subset, no zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoExpression {
    terms: BTreeMap<BTreeSet<String>, BigRational>,
}

fn names(set: &[&str]) -> BTreeSet<String> {
    set.iter().map(|s| s.to_string()).collect()
}

impl InfoExpression {
    pub fn zero() -> Self {
        InfoExpression {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BTreeSet<String>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Every variable name referenced by the expression.
    pub fn support(&self) -> BTreeSet<String> {
        self.terms.keys().flatten().cloned().collect()
    }

    pub fn add_term(&mut self, subset: BTreeSet<String>, coeff: BigRational) {
        if subset.is_empty() || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(subset).or_insert_with(BigRational::zero);
        *entry += coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// H(A)
    pub fn entropy(a: &[&str]) -> Self {
        let mut e = InfoExpression::zero();
        e.add_term(names(a), BigRational::from_integer(1.into()));
        e
    }

    /// H(A | B) = H(A,B) - H(B)
    pub fn cond_entropy(a: &[&str], given: &[&str]) -> Self {
        let mut ab = names(a);
        ab.extend(names(given));
        let mut e = InfoExpression::zero();
        e.add_term(ab, BigRational::from_integer(1.into()));
        e.add_term(names(given), BigRational::from_integer((-1).into()));
        e
    }

    /// I(A; B | C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
    pub fn mutual(a: &[&str], b: &[&str], given: &[&str]) -> Self {
        let c = names(given);
        let mut ac = names(a);
        ac.extend(c.iter().cloned());
        let mut bc = names(b);
        bc.extend(c.iter().cloned());
        let mut abc = ac.clone();
        abc.extend(bc.iter().cloned());
        let one = BigRational::from_integer(1.into());
        let mut e = InfoExpression::zero();
        e.add_term(ac, one.clone());
        e.add_term(bc, one.clone());
        e.add_term(abc, -one.clone());
        e.add_term(c, -one);
        e
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        let mut e = InfoExpression::zero();
        for (s, c) in &self.terms {
            e.add_term(s.clone(), c * k);
        }
        e
    }
}

impl Add for InfoExpression {
    type Output = InfoExpression;
    fn add(self, rhs: InfoExpression) -> InfoExpression {
        let mut out = self;
        for (s, c) in rhs.terms {
            out.add_term(s, c);
        }
        out
    }
}

impl Sub for InfoExpression {
    type Output = InfoExpression;
    fn sub(self, rhs: InfoExpression) -> InfoExpression {
        self + (-rhs)
    }
}

impl Neg for InfoExpression {
    type Output = InfoExpression;
    fn neg(self) -> InfoExpression {
        let minus_one = BigRational::from_integer((-1).into());
        self.scaled(&minus_one)
    }
}

impl Mul<BigRational> for InfoExpression {
    type Output = InfoExpression;
    fn mul(self, rhs: BigRational) -> InfoExpression {
        self.scaled(&rhs)
    }
}

impl fmt::Display for InfoExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (subset, coeff) in &self.terms {
            let vars: Vec<&str> = subset.iter().map(|s| s.as_str()).collect();
            if first {
                if coeff == &BigRational::from_integer(1.into()) {
                    write!(f, "H({})", vars.join(","))?;
                } else {
                    write!(f, "{}*H({})", coeff, vars.join(","))?;
                }
                first = false;
            } else if coeff < &BigRational::zero() {
                let c = -coeff.clone();
                if c == BigRational::from_integer(1.into()) {
                    write!(f, " - H({})", vars.join(","))?;
                } else {
                    write!(f, " - {}*H({})", c, vars.join(","))?;
                }
            } else if coeff == &BigRational::from_integer(1.into()) {
                write!(f, " + H({})", vars.join(","))?;
            } else {
                write!(f, " + {}*H({})", coeff, vars.join(","))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_minus_itself_is_zero() {
        let e = InfoExpression::entropy(&["A"]) - InfoExpression::entropy(&["A"]);
        assert!(e.is_zero());
    }

    #[test]
    fn self_mutual_information_is_entropy() {
        // I(X;X) expands to H(X).
        let i = InfoExpression::mutual(&["X"], &["X"], &[]);
        assert_eq!(i, InfoExpression::entropy(&["X"]));
    }

    #[test]
    fn conditional_mi_expansion_is_canonical() {
        let i = InfoExpression::mutual(&["A"], &["B"], &["C"]);
        assert_eq!(i.num_terms(), 4);
        let again = InfoExpression::mutual(&["A"], &["B"], &["C"]);
        assert_eq!(i, again);
    }
}
