use std::collections::BTreeSet;

use super::{InfoExpression, MeasureError, MAX_CELLS, NORMALIZATION_TOL};

/// A named finite-alphabet random variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteVariable {
    pub name: String,
    pub alphabet_size: usize,
}

impl FiniteVariable {
    pub fn new(name: impl Into<String>, alphabet_size: usize) -> Self {
        FiniteVariable {
            name: name.into(),
            alphabet_size,
        }
    }
}

/// Dense joint probability mass function over an ordered list of named
/// finite variables. The mass tensor is row-major: the last variable's
/// index varies fastest.
#[derive(Debug, Clone)]
pub struct JointPmf {
    variables: Vec<FiniteVariable>,
    mass: Vec<f64>,
}

impl JointPmf {
    pub fn new(variables: Vec<FiniteVariable>, mass: Vec<f64>) -> Result<Self, MeasureError> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if v.alphabet_size == 0 {
                return Err(MeasureError::EmptyAlphabet);
            }
            if !seen.insert(v.name.clone()) {
                return Err(MeasureError::DuplicateVariable(v.name.clone()));
            }
        }
        let want: usize = variables.iter().map(|v| v.alphabet_size).product();
        if want > MAX_CELLS {
            return Err(MeasureError::TooLarge(want, MAX_CELLS));
        }
        if mass.len() != want {
            return Err(MeasureError::ShapeMismatch {
                got: mass.len(),
                want,
            });
        }
        let mut total = 0.0;
        for &p in &mass {
            if p < 0.0 {
                return Err(MeasureError::NegativeMass(p));
            }
            total += p;
        }
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(MeasureError::NotNormalized(total));
        }
        Ok(JointPmf { variables, mass })
    }

    pub fn variables(&self) -> &[FiniteVariable] {
        &self.variables
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn num_cells(&self) -> usize {
        self.mass.len()
    }

    pub fn variable_index(&self, name: &str) -> Result<usize, MeasureError> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| MeasureError::UnknownVariable(name.to_string()))
    }

    pub fn alphabet_size(&self, name: &str) -> Result<usize, MeasureError> {
        Ok(self.variables[self.variable_index(name)?].alphabet_size)
    }

    /// Row-major strides, last variable fastest.
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.variables.len()];
        for i in (0..self.variables.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.variables[i + 1].alphabet_size;
        }
        strides
    }

    /// Decode a flat cell index into per-variable symbol indices.
    pub fn decode_index(&self, mut flat: usize) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize; self.variables.len()];
        for (i, s) in strides.iter().enumerate() {
            out[i] = flat / s;
            flat %= s;
        }
        out
    }

    pub fn mass_at(&self, symbols: &[usize]) -> f64 {
        let strides = self.strides();
        let flat: usize = symbols.iter().zip(&strides).map(|(s, st)| s * st).sum();
        self.mass[flat]
    }

    /// Sum out every variable not in `keep`, preserving the original
    /// relative order of the kept variables.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf, MeasureError> {
        let keep_set: BTreeSet<&str> = keep.iter().copied().collect();
        for name in &keep_set {
            self.variable_index(name)?;
        }
        let kept: Vec<usize> = (0..self.variables.len())
            .filter(|&i| keep_set.contains(self.variables[i].name.as_str()))
            .collect();
        let out_vars: Vec<FiniteVariable> = kept.iter().map(|&i| self.variables[i].clone()).collect();
        let out_cells: usize = out_vars.iter().map(|v| v.alphabet_size).product();
        let mut out_mass = vec![0.0f64; out_cells];

        let mut out_strides = vec![1usize; out_vars.len()];
        for i in (0..out_vars.len().saturating_sub(1)).rev() {
            out_strides[i] = out_strides[i + 1] * out_vars[i + 1].alphabet_size;
        }
        let strides = self.strides();
        for (flat, &p) in self.mass.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut rem = flat;
            let mut out_flat = 0usize;
            let mut k = 0usize;
            for (i, s) in strides.iter().enumerate() {
                let sym = rem / s;
                rem %= s;
                if k < kept.len() && kept[k] == i {
                    out_flat += sym * out_strides[k];
                    k += 1;
                }
            }
            out_mass[out_flat] += p;
        }
        // Summation can only lose mass to rounding; renormalization is not
        // applied so marginal sums stay bit-faithful to the input.
        Ok(JointPmf {
            variables: out_vars,
            mass: out_mass,
        })
    }

    /// Joint entropy of a subset of variables, in bits, with 0 log 0 = 0.
    pub fn entropy_joint(&self, subset: &[&str]) -> Result<f64, MeasureError> {
        if subset.is_empty() {
            return Ok(0.0);
        }
        let marg = self.marginalize(subset)?;
        let mut h = 0.0;
        for &p in &marg.mass {
            if p > 0.0 {
                h -= p * p.log2();
            }
        }
        Ok(h)
    }

    /// Conditional entropy H(A | Given), in bits.
    pub fn entropy(&self, a: &[&str], given: &[&str]) -> Result<f64, MeasureError> {
        let joint: Vec<&str> = union(a, given);
        Ok(self.entropy_joint(&joint)? - self.entropy_joint(given)?)
    }

    /// Conditional mutual information I(A; B | Given), in bits. Computed
    /// as H(A|Given) - H(A|B,Given), which handles overlapping sets.
    pub fn mutual_information(
        &self,
        a: &[&str],
        b: &[&str],
        given: &[&str],
    ) -> Result<f64, MeasureError> {
        let bg = union(b, given);
        Ok(self.entropy(a, given)? - self.entropy(a, &bg)?)
    }

    /// Evaluate a canonical information expression on this pmf.
    pub fn eval_expression(&self, expr: &InfoExpression) -> Result<f64, MeasureError> {
        let mut total = 0.0;
        for (subset, coeff) in expr.terms() {
            let names: Vec<&str> = subset.iter().map(|s| s.as_str()).collect();
            for n in &names {
                self.variable_index(n)?;
            }
            total += rational_to_f64(coeff) * self.entropy_joint(&names)?;
        }
        Ok(total)
    }

    /// Extend the pmf with an independent variable `w` with distribution
    /// `w_dist`.
    pub fn adjoin_independent(
        &self,
        w: FiniteVariable,
        w_dist: &[f64],
    ) -> Result<JointPmf, MeasureError> {
        if self.variable_index(&w.name).is_ok() {
            return Err(MeasureError::DuplicateVariable(w.name));
        }
        if w_dist.len() != w.alphabet_size {
            return Err(MeasureError::ShapeMismatch {
                got: w_dist.len(),
                want: w.alphabet_size,
            });
        }
        let sum: f64 = w_dist.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL || w_dist.iter().any(|&p| p < 0.0) {
            return Err(MeasureError::NotNormalized(sum));
        }
        let mut mass = Vec::with_capacity(self.mass.len() * w.alphabet_size);
        for &p in &self.mass {
            for &q in w_dist {
                mass.push(p * q);
            }
        }
        let mut variables = self.variables.clone();
        variables.push(w);
        Ok(JointPmf { variables, mass })
    }

    /// Attach a deterministic variable `name` computed from the joint
    /// symbol of `from` via `f`. Used to materialize the common part K
    /// and product constructions like (U0, W).
    pub fn adjoin_function(
        &self,
        name: &str,
        from: &[&str],
        alphabet_size: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<JointPmf, MeasureError> {
        if self.variable_index(name).is_ok() {
            return Err(MeasureError::DuplicateVariable(name.to_string()));
        }
        if alphabet_size == 0 {
            return Err(MeasureError::EmptyAlphabet);
        }
        let from_idx: Vec<usize> = from
            .iter()
            .map(|n| self.variable_index(n))
            .collect::<Result<_, _>>()?;
        let mut mass = vec![0.0f64; self.mass.len() * alphabet_size];
        let mut args = vec![0usize; from_idx.len()];
        for (flat, &p) in self.mass.iter().enumerate() {
            let syms = self.decode_index(flat);
            for (k, &i) in from_idx.iter().enumerate() {
                args[k] = syms[i];
            }
            let val = f(&args);
            assert!(val < alphabet_size, "derived symbol out of range");
            mass[flat * alphabet_size + val] += p;
        }
        let mut variables = self.variables.clone();
        variables.push(FiniteVariable::new(name, alphabet_size));
        Ok(JointPmf { variables, mass })
    }
}

fn union<'a>(a: &[&'a str], b: &[&'a str]) -> Vec<&'a str> {
    let mut set: BTreeSet<&str> = a.iter().copied().collect();
    set.extend(b.iter().copied());
    set.into_iter().collect()
}

pub(crate) fn rational_to_f64(r: &num::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational coefficient out of f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uniform2x2() -> JointPmf {
        JointPmf::new(
            vec![FiniteVariable::new("A", 2), FiniteVariable::new("B", 2)],
            vec![0.25; 4],
        )
        .unwrap()
    }

    #[test]
    fn marginalize_uniform_is_uniform() {
        let p = uniform2x2();
        let m = p.marginalize(&["A"]).unwrap();
        assert_eq!(m.mass(), &[0.5, 0.5]);
    }

    #[test]
    fn marginalize_identity_keeps_everything() {
        let p = uniform2x2();
        let m = p.marginalize(&["A", "B"]).unwrap();
        assert_eq!(m.mass(), p.mass());
    }

    #[test]
    fn marginalize_block_source_rows() {
        // Support {(0,0),(0,1),(1,1),(2,2)} with masses (0.25,0.25,0.25,0.25)
        // is not used here; the derived row sums below come from the
        // (0.2,0.2,0.2,0.4)-weighted variant re-expressed on a 3x3 grid.
        let mut mass = vec![0.0; 9];
        mass[0] = 0.25; // (0,0)
        mass[1] = 0.0;
        mass[4] = 0.35; // (1,1)
        mass[8] = 0.40; // (2,2)
        let p = JointPmf::new(
            vec![FiniteVariable::new("S1", 3), FiniteVariable::new("S2", 3)],
            mass,
        )
        .unwrap();
        let m = p.marginalize(&["S1"]).unwrap();
        assert_abs_diff_eq!(m.mass()[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m.mass()[1], 0.35, epsilon = 1e-15);
        assert_abs_diff_eq!(m.mass()[2], 0.40, epsilon = 1e-15);
    }

    #[test]
    fn marginalize_unknown_variable_errors() {
        let p = uniform2x2();
        assert_eq!(
            p.marginalize(&["C"]).unwrap_err(),
            MeasureError::UnknownVariable("C".into())
        );
    }

    #[test]
    fn entropy_uniform_binary() {
        let p = JointPmf::new(vec![FiniteVariable::new("X", 2)], vec![0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(p.entropy(&["X"], &[]).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_self_conditioning_is_zero() {
        let p = uniform2x2();
        assert_abs_diff_eq!(p.entropy(&["A"], &["A"]).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_bernoulli_011() {
        // Binary entropy -p log p - (1-p) log(1-p) at p = 0.11.
        let p = JointPmf::new(vec![FiniteVariable::new("X", 2)], vec![0.89, 0.11]).unwrap();
        let expected = -(0.11f64 * 0.11f64.log2() + 0.89 * 0.89f64.log2());
        assert_abs_diff_eq!(p.entropy(&["X"], &[]).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(expected, 0.499916, epsilon = 5e-7);
    }

    #[test]
    fn mi_independent_is_zero() {
        let p = uniform2x2();
        assert_abs_diff_eq!(
            p.mutual_information(&["A"], &["B"], &[]).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn self_information_is_entropy() {
        let p = JointPmf::new(vec![FiniteVariable::new("X", 2)], vec![0.3, 0.7]).unwrap();
        let h = p.entropy(&["X"], &[]).unwrap();
        let i = p.mutual_information(&["X"], &["X"], &[]).unwrap();
        assert_abs_diff_eq!(i, h, epsilon = 1e-14);
    }

    #[test]
    fn adjoin_independent_adds_one_bit() {
        let p = uniform2x2();
        let q = p
            .adjoin_independent(FiniteVariable::new("W", 2), &[0.5, 0.5])
            .unwrap();
        assert_abs_diff_eq!(q.entropy(&["W"], &[]).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            q.entropy(&["A", "W"], &[]).unwrap(),
            q.entropy(&["A"], &[]).unwrap() + 1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            q.mutual_information(&["A"], &["B"], &[]).unwrap(),
            p.mutual_information(&["A"], &["B"], &[]).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn adjoin_independent_name_clash() {
        let p = uniform2x2();
        assert!(p
            .adjoin_independent(FiniteVariable::new("A", 2), &[0.5, 0.5])
            .is_err());
    }
}
