use super::{FiniteVariable, JointPmf, MeasureError, MAX_CELLS, NORMALIZATION_TOL};

/// A conditional pmf p(out | given), stored as normalized slices.
/// `probs` is row-major over (given indices..., out indices...), i.e.
/// each block of `out_cells()` entries is one normalized slice.
#[derive(Debug, Clone)]
pub struct Conditional {
    pub given_shape: Vec<usize>,
    pub out_shape: Vec<usize>,
    pub probs: Vec<f64>,
}

impl Conditional {
    pub fn new(
        given_shape: Vec<usize>,
        out_shape: Vec<usize>,
        probs: Vec<f64>,
    ) -> Result<Self, MeasureError> {
        let g: usize = given_shape.iter().product();
        let o: usize = out_shape.iter().product();
        if g == 0 || o == 0 {
            return Err(MeasureError::EmptyAlphabet);
        }
        if probs.len() != g * o {
            return Err(MeasureError::ShapeMismatch {
                got: probs.len(),
                want: g * o,
            });
        }
        for slice in 0..g {
            let s: f64 = probs[slice * o..(slice + 1) * o].iter().sum();
            if (s - 1.0).abs() > NORMALIZATION_TOL {
                return Err(MeasureError::UnnormalizedSlice(slice, s));
            }
            if probs[slice * o..(slice + 1) * o].iter().any(|&p| p < 0.0) {
                return Err(MeasureError::NegativeMass(slice as f64));
            }
        }
        Ok(Conditional {
            given_shape,
            out_shape,
            probs,
        })
    }

    pub fn out_cells(&self) -> usize {
        self.out_shape.iter().product()
    }

    pub fn given_cells(&self) -> usize {
        self.given_shape.iter().product()
    }

    /// p(out_flat | given_flat)
    pub fn prob(&self, given_flat: usize, out_flat: usize) -> f64 {
        self.probs[given_flat * self.out_cells() + out_flat]
    }
}

/// Deterministic symbol map x(s1, s2, u0, u1, u2), stored flat and
/// row-major over (s1, s2, u0, u1, u2).
#[derive(Debug, Clone)]
pub struct XMap {
    pub domain_shape: Vec<usize>,
    pub x_size: usize,
    pub values: Vec<usize>,
}

impl XMap {
    pub fn new(
        domain_shape: Vec<usize>,
        x_size: usize,
        values: Vec<usize>,
    ) -> Result<Self, MeasureError> {
        let cells: usize = domain_shape.iter().product();
        if values.len() != cells {
            return Err(MeasureError::ShapeMismatch {
                got: values.len(),
                want: cells,
            });
        }
        if values.iter().any(|&v| v >= x_size) {
            return Err(MeasureError::DimensionMismatch(
                "x_map value outside X alphabet".into(),
            ));
        }
        Ok(XMap {
            domain_shape,
            x_size,
            values,
        })
    }
}

/// Compose p(s1,s2) * p(u0,u1,u2|s1,s2) * 1{x = x_map(...)} * p(y1,y2|x)
/// into a joint pmf over {S1, S2, U0, U1, U2, X, Y1, Y2}, in that order.
pub fn compose_scenario(
    source: &JointPmf,
    aux: &Conditional,
    x_map: &XMap,
    channel: &Conditional,
) -> Result<JointPmf, MeasureError> {
    if source.variables().len() != 2 {
        return Err(MeasureError::DimensionMismatch(
            "source must be a pmf over exactly {S1, S2}".into(),
        ));
    }
    let n_s1 = source.variables()[0].alphabet_size;
    let n_s2 = source.variables()[1].alphabet_size;
    if aux.given_shape != [n_s1, n_s2] {
        return Err(MeasureError::DimensionMismatch(format!(
            "aux conditioned on shape {:?}, source has ({}, {})",
            aux.given_shape, n_s1, n_s2
        )));
    }
    if aux.out_shape.len() != 3 {
        return Err(MeasureError::DimensionMismatch(
            "aux must produce (u0, u1, u2)".into(),
        ));
    }
    let (n_u0, n_u1, n_u2) = (aux.out_shape[0], aux.out_shape[1], aux.out_shape[2]);
    if x_map.domain_shape != [n_s1, n_s2, n_u0, n_u1, n_u2] {
        return Err(MeasureError::DimensionMismatch(format!(
            "x_map domain {:?} does not match (s1,s2,u0,u1,u2) = ({},{},{},{},{})",
            x_map.domain_shape, n_s1, n_s2, n_u0, n_u1, n_u2
        )));
    }
    let n_x = x_map.x_size;
    if channel.given_shape != [n_x] {
        return Err(MeasureError::DimensionMismatch(format!(
            "channel conditioned on shape {:?}, x_map produces |X| = {}",
            channel.given_shape, n_x
        )));
    }
    if channel.out_shape.len() != 2 {
        return Err(MeasureError::DimensionMismatch(
            "channel must produce (y1, y2)".into(),
        ));
    }
    let (n_y1, n_y2) = (channel.out_shape[0], channel.out_shape[1]);

    let cells = n_s1 * n_s2 * n_u0 * n_u1 * n_u2 * n_x * n_y1 * n_y2;
    if cells > MAX_CELLS {
        return Err(MeasureError::TooLarge(cells, MAX_CELLS));
    }
    let mut mass = vec![0.0f64; cells];
    // Strides for the output, row-major over (s1,s2,u0,u1,u2,x,y1,y2).
    let shape = [n_s1, n_s2, n_u0, n_u1, n_u2, n_x, n_y1, n_y2];
    let mut strides = [1usize; 8];
    for i in (0..7).rev() {
        strides[i] = strides[i + 1] * shape[i + 1];
    }
    for s1 in 0..n_s1 {
        for s2 in 0..n_s2 {
            let ps = source.mass_at(&[s1, s2]);
            if ps == 0.0 {
                continue;
            }
            let src_flat = s1 * n_s2 + s2;
            for u0 in 0..n_u0 {
                for u1 in 0..n_u1 {
                    for u2 in 0..n_u2 {
                        let aux_flat = (u0 * n_u1 + u1) * n_u2 + u2;
                        let pa = aux.prob(src_flat, aux_flat);
                        if pa == 0.0 {
                            continue;
                        }
                        let x = x_map.values
                            [(((s1 * n_s2 + s2) * n_u0 + u0) * n_u1 + u1) * n_u2 + u2];
                        for y1 in 0..n_y1 {
                            for y2 in 0..n_y2 {
                                let pc = channel.prob(x, y1 * n_y2 + y2);
                                if pc == 0.0 {
                                    continue;
                                }
                                let flat = s1 * strides[0]
                                    + s2 * strides[1]
                                    + u0 * strides[2]
                                    + u1 * strides[3]
                                    + u2 * strides[4]
                                    + x * strides[5]
                                    + y1 * strides[6]
                                    + y2 * strides[7];
                                mass[flat] = ps * pa * pc;
                            }
                        }
                    }
                }
            }
        }
    }
    JointPmf::new(
        vec![
            FiniteVariable::new("S1", n_s1),
            FiniteVariable::new("S2", n_s2),
            FiniteVariable::new("U0", n_u0),
            FiniteVariable::new("U1", n_u1),
            FiniteVariable::new("U2", n_u2),
            FiniteVariable::new("X", n_x),
            FiniteVariable::new("Y1", n_y1),
            FiniteVariable::new("Y2", n_y2),
        ],
        mass,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn identity_scenario() -> JointPmf {
        // S1 = S2 uniform bit, U0 = S1, U1 = U2 constant, X = U0,
        // noiseless channel Y1 = Y2 = X.
        let source = JointPmf::new(
            vec![FiniteVariable::new("S1", 2), FiniteVariable::new("S2", 2)],
            vec![0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        let mut aux_probs = vec![0.0; 4 * 2];
        for s in 0..2 {
            let flat = s * 2 + s;
            aux_probs[flat * 2 + s] = 1.0; // u0 = s1, u1 = u2 = 0
        }
        // Unreached slices (off-diagonal sources) still must normalize.
        aux_probs[1 * 2] = 1.0;
        aux_probs[2 * 2] = 1.0;
        let aux = Conditional::new(vec![2, 2], vec![2, 1, 1], aux_probs).unwrap();
        let x_values: Vec<usize> = (0..2 * 2 * 2)
            .map(|flat| flat % 2) // x = u0 (last coordinate)
            .collect();
        let x_map = XMap::new(vec![2, 2, 2, 1, 1], 2, x_values).unwrap();
        let channel = Conditional::new(
            vec![2],
            vec![2, 2],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        compose_scenario(&source, &aux, &x_map, &channel).unwrap()
    }

    #[test]
    fn noiseless_identity_chain_is_deterministic() {
        let p = identity_scenario();
        // Y1 = Y2 = S1 with probability 1.
        assert_abs_diff_eq!(p.entropy(&["Y1"], &["S1"]).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.entropy(&["Y2"], &["S1"]).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.entropy(&["Y1"], &[]).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn composed_marginal_matches_source() {
        let p = identity_scenario();
        let m = p.marginalize(&["S1", "S2"]).unwrap();
        assert_abs_diff_eq!(m.mass()[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.mass()[3], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn markov_property_holds() {
        let p = identity_scenario();
        let i = p
            .mutual_information(&["Y1", "Y2"], &["S1", "S2", "U0", "U1", "U2"], &["X"])
            .unwrap();
        assert_abs_diff_eq!(i, 0.0, epsilon = 1e-10);
    }
}
