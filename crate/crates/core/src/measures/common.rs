use super::{JointPmf, MeasureError};

/// The Gacs-Korner-Witsenhausen common part of a two-variable source:
/// the maximal K computable as f(S1) = g(S2). K indexes connected
/// components of the bipartite graph on the supports with an edge
/// wherever p(s1, s2) > 0. Zero-probability symbols are excluded from
/// the partition; their f/g entries are None.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonPart {
    pub f: Vec<Option<usize>>,
    pub g: Vec<Option<usize>>,
    pub size: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Compute the common part of a pmf over exactly two variables.
pub fn common_part(source: &JointPmf) -> Result<CommonPart, MeasureError> {
    if source.variables().len() != 2 {
        return Err(MeasureError::DimensionMismatch(format!(
            "common_part needs exactly 2 variables, got {}",
            source.variables().len()
        )));
    }
    let n1 = source.variables()[0].alphabet_size;
    let n2 = source.variables()[1].alphabet_size;
    if source.mass().iter().all(|&p| p == 0.0) {
        return Err(MeasureError::ZeroMass);
    }
    // Nodes 0..n1 are S1 symbols, n1..n1+n2 are S2 symbols.
    let mut uf = UnionFind::new(n1 + n2);
    for (flat, &p) in source.mass().iter().enumerate() {
        if p > 0.0 {
            let s1 = flat / n2;
            let s2 = flat % n2;
            uf.union(s1, n1 + s2);
        }
    }
    let mut supported1 = vec![false; n1];
    let mut supported2 = vec![false; n2];
    for (flat, &p) in source.mass().iter().enumerate() {
        if p > 0.0 {
            supported1[flat / n2] = true;
            supported2[flat % n2] = true;
        }
    }
    // Stable component ids in order of first appearance over S1 then S2.
    let mut ids: Vec<usize> = Vec::new();
    let class_of = |uf: &mut UnionFind, node: usize, ids: &mut Vec<usize>| {
        let root = uf.find(node);
        match ids.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                ids.push(root);
                ids.len() - 1
            }
        }
    };
    let mut f = vec![None; n1];
    let mut g = vec![None; n2];
    for (s1, item) in f.iter_mut().enumerate() {
        if supported1[s1] {
            *item = Some(class_of(&mut uf, s1, &mut ids));
        }
    }
    for (s2, item) in g.iter_mut().enumerate() {
        if supported2[s2] {
            *item = Some(class_of(&mut uf, n1 + s2, &mut ids));
        }
    }
    Ok(CommonPart {
        f,
        g,
        size: ids.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::FiniteVariable;

    fn pmf2(n1: usize, n2: usize, mass: Vec<f64>) -> JointPmf {
        JointPmf::new(
            vec![
                FiniteVariable::new("S1", n1),
                FiniteVariable::new("S2", n2),
            ],
            mass,
        )
        .unwrap()
    }

    #[test]
    fn full_support_product_has_trivial_common_part() {
        let p = pmf2(2, 2, vec![0.25; 4]);
        let cp = common_part(&p).unwrap();
        assert_eq!(cp.size, 1);
    }

    #[test]
    fn identity_coupling_has_identity_common_part() {
        let p = pmf2(2, 2, vec![0.5, 0.0, 0.0, 0.5]);
        let cp = common_part(&p).unwrap();
        assert_eq!(cp.size, 2);
        assert_eq!(cp.f, vec![Some(0), Some(1)]);
        assert_eq!(cp.g, vec![Some(0), Some(1)]);
    }

    #[test]
    fn block_structure_yields_two_classes() {
        // Support {(0,0),(0,1),(1,1),(2,2)}: symbols s1 in {0,1} chain
        // through s2 = 1 into one component, s1 = 2 stands alone.
        let mut mass = vec![0.0; 9];
        mass[0] = 0.2; // (0,0)
        mass[1] = 0.2; // (0,1)
        mass[4] = 0.2; // (1,1)
        mass[8] = 0.4; // (2,2)
        let p = pmf2(3, 3, mass);
        let cp = common_part(&p).unwrap();
        assert_eq!(cp.size, 2);
        assert_eq!(cp.f[0], cp.f[1]);
        assert_ne!(cp.f[0], cp.f[2]);
        assert_eq!(cp.g[0], cp.g[1]);
        assert_eq!(cp.g[2], cp.f[2]);
    }

    #[test]
    fn zero_mass_source_rejected() {
        let p = JointPmf::new(
            vec![FiniteVariable::new("A", 1), FiniteVariable::new("B", 1)],
            vec![1.0],
        )
        .unwrap();
        // Single-cell pmf with mass 1 has a (trivial) common part.
        assert_eq!(common_part(&p).unwrap().size, 1);
    }

    #[test]
    fn idempotent_under_symbol_relabeling() {
        let mut mass = vec![0.0; 9];
        mass[0] = 0.2;
        mass[1] = 0.2;
        mass[4] = 0.2;
        mass[8] = 0.4;
        let p = pmf2(3, 3, mass.clone());
        let cp = common_part(&p).unwrap();
        // Swap s1 symbols 0 and 2 (rows 0 and 2 of the 3x3 grid).
        let mut swapped = mass.clone();
        swapped.swap(0, 6);
        swapped.swap(1, 7);
        swapped.swap(2, 8);
        let q = pmf2(3, 3, swapped);
        let cq = common_part(&q).unwrap();
        assert_eq!(cp.size, cq.size);
        // Partition structure is permuted along with the symbols.
        assert_eq!(cq.f[2], cq.f[1]);
        assert_ne!(cq.f[0], cq.f[1]);
    }
}
