use crate::linalg::{combine, coordinates, inverse, rank, Mat};
use crate::scalars::Scalar;

use super::ExtensionError;

/// Finite-dimensional real Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c_ij^k e_k` with real constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlg {
    names: Vec<String>,
    /// `table[i][j]` lists the nonzero `(k, c_ij^k)`.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl LieAlg {
    /// Builds the algebra from entries `(i, j, k, c)` meaning `c_ij^k = c`
    /// (and `c_ji^k = −c`), then validates the Jacobi identity.
    pub fn new(names: Vec<String>, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self, ExtensionError> {
        let dim = names.len();
        let mut dense = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut seen = vec![vec![vec![false; dim]; dim]; dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(ExtensionError::Algebra(format!("index ({i},{j},{k}) out of range")));
            }
            if !c.is_real() {
                return Err(ExtensionError::Algebra(format!("constant c[{i}][{j}][{k}] is not real")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(ExtensionError::Algebra(format!("c[{i}][{i}][{k}] must vanish")));
                }
                continue;
            }
            let neg = -c;
            for (a, b, val) in [(i, j, c.clone()), (j, i, neg)] {
                if seen[a][b][k] && dense[a][b][k] != val {
                    return Err(ExtensionError::Algebra(format!("conflicting values for c[{a}][{b}][{k}]")));
                }
                seen[a][b][k] = true;
                dense[a][b][k] = val;
            }
        }
        let alg = LieAlg::from_dense(names, dense);
        if let Some((i, j, k)) = alg.jacobi_defect() {
            return Err(ExtensionError::Algebra(format!("Jacobi identity fails on ({i},{j},{k})")));
        }
        Ok(alg)
    }

    fn from_dense(names: Vec<String>, dense: Vec<Vec<Vec<Scalar>>>) -> Self {
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        LieAlg { names, table }
    }

    /// The algebra spanned by the given matrices, which must be linearly
    /// independent and closed under the commutator.
    pub fn from_matrices(names: Vec<String>, mats: &[Mat]) -> Result<Self, ExtensionError> {
        if names.len() != mats.len() {
            return Err(ExtensionError::Algebra("one name per matrix required".into()));
        }
        let flat: Vec<Vec<Scalar>> = mats.iter().map(flatten).collect();
        if rank(&flat) != mats.len() {
            return Err(ExtensionError::Algebra("matrices are linearly dependent".into()));
        }
        let dim = mats.len();
        let mut dense = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let br = mats[i].bracket(&mats[j])?;
                let c = coordinates(&flat, &flatten(&br)).ok_or_else(|| {
                    ExtensionError::Algebra(format!("[{}, {}] leaves the span", names[i], names[j]))
                })?;
                if !c.iter().all(Scalar::is_real) {
                    return Err(ExtensionError::Algebra("span is not a real algebra".into()));
                }
                dense[j][i] = c.iter().map(|x| -x).collect();
                dense[i][j] = c;
            }
        }
        Ok(LieAlg::from_dense(names, dense))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn unit(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[k] = Scalar::one();
        v
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || self.table[i][j].is_empty() {
                    continue;
                }
                let f = ui * vj;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&f * c);
                }
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// True when the span of `vectors` is closed under the bracket.
    pub fn is_subalgebra(&self, vectors: &[Vec<Scalar>]) -> bool {
        for (a, u) in vectors.iter().enumerate() {
            for v in &vectors[a + 1..] {
                if coordinates(vectors, &self.bracket(u, v)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// The same algebra in a new basis, given by coordinate vectors in the
    /// current basis.
    pub fn change_basis(&self, names: Vec<String>, basis: &[Vec<Scalar>]) -> Result<LieAlg, ExtensionError> {
        let d = self.dim();
        if basis.len() != d || names.len() != d {
            return Err(ExtensionError::Algebra("new basis has the wrong size".into()));
        }
        let p = Mat::from_fn(d, d, |r, c| basis[c][r].clone());
        let pinv = inverse(&p).map_err(|_| ExtensionError::Algebra("new basis is not a basis".into()))?;
        let mut dense = vec![vec![vec![Scalar::zero(); d]; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let br = self.bracket(&basis[i], &basis[j]);
                let c = pinv.apply(&br).expect("dimension");
                dense[j][i] = c.iter().map(|x| -x).collect();
                dense[i][j] = c;
            }
        }
        Ok(LieAlg::from_dense(names, dense))
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, vectors: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
        combine(vectors, coeffs)
    }
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    m.entries().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> LieAlg {
        let one = Scalar::one();
        LieAlg::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)],
        )
        .unwrap()
    }

    #[test]
    fn antisymmetric_table() {
        let g = so3();
        assert_eq!(g.bracket_basis(1, 0), vec![Scalar::zero(), Scalar::zero(), Scalar::from_int(-1)]);
        assert!(g.jacobi_defect().is_none());
    }

    #[test]
    fn jacobi_violation_detected() {
        let one = Scalar::one();
        let bad = LieAlg::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 0, one.clone()), (1, 2, 1, one.clone()), (0, 2, 2, one)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn change_basis_preserves_brackets() {
        let g = so3();
        let two = Scalar::from_int(2);
        let basis = vec![
            vec![two.clone(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::one(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let h = g.change_basis(vec!["x".into(), "y".into(), "z".into()], &basis).unwrap();
        assert!(h.jacobi_defect().is_none());
        // [2a, a+b] = 2c
        assert_eq!(h.bracket_basis(0, 1), vec![Scalar::zero(), Scalar::zero(), two]);
    }
}
