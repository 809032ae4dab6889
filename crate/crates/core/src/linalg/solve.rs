use crate::scalars::Scalar;

use super::{LinalgError, Mat};

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Pivots are the first nonzero entry in each column scan.
pub fn rref_rows(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form of a matrix and its pivot columns.
pub fn rref(m: &Mat<Scalar>) -> (Mat<Scalar>, Vec<usize>) {
    let mut rows = m.to_rows();
    let piv = rref_rows(&mut rows);
    let out = if rows.is_empty() {
        Mat::zeros(0, m.cols())
    } else {
        Mat::from_rows(rows).expect("rectangular")
    };
    (out, piv)
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let mut rows = vectors.to_vec();
    rref_rows(&mut rows).len()
}

pub fn mat_rank(m: &Mat<Scalar>) -> usize {
    rref(m).1.len()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel(m: &Mat<Scalar>) -> Vec<Vec<Scalar>> {
    let (r, piv) = rref(m);
    let n = m.cols();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !piv.contains(c)) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (k, &pc) in piv.iter().enumerate() {
            v[pc] = -&r[(k, free)];
        }
        out.push(v);
    }
    out
}

/// Some solution of `m x = rhs`, or `None` when inconsistent.
pub fn solve(m: &Mat<Scalar>, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows(), rhs.len(), "right-hand side length");
    let n = m.cols();
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r);
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let piv = rref_rows(&mut rows);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (k, &pc) in piv.iter().enumerate() {
        x[pc] = rows[k][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix.
pub fn inverse(m: &Mat<Scalar>) -> Result<Mat<Scalar>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row = m.row(r);
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let piv = rref_rows(&mut rows);
    if piv.len() < n || piv[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Mat::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut rows = vectors.to_vec();
    let piv = rref_rows(&mut rows);
    rows.truncate(piv.len());
    rows
}

/// A maximal linearly independent sublist of `vectors`, in order.
pub fn independent_subset(vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut idx = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        chosen.push(v.clone());
        if rank(&chosen) == chosen.len() {
            idx.push(k);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Coefficients `c` with `Σ c_k basis_k = v`, if `v` lies in the span.
pub fn coordinates(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    let m = Mat::from_fn(v.len(), basis.len(), |r, c| basis[c][r].clone());
    solve(&m, v)
}

pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    coordinates(basis, v).is_some()
}

/// Basis of the intersection of two spans.
pub fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    let m = Mat::from_fn(dim, a.len() + b.len(), |r, c| {
        if c < a.len() {
            a[c][r].clone()
        } else {
            -&b[c - a.len()][r]
        }
    });
    let vecs: Vec<Vec<Scalar>> = kernel(&m)
        .into_iter()
        .map(|k| combine(a, &k[..a.len()]))
        .collect();
    span_basis(&vecs)
}

/// Linear combination `Σ c_k v_k`.
pub fn combine(vectors: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Scalar::zero(); dim];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(x * c);
        }
    }
    out
}

/// Standard unit vectors completing `sub` to a basis of the ambient space.
pub fn complement(sub: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let mut acc = sub.to_vec();
    let mut out = Vec::new();
    let base = rank(&acc);
    for k in 0..dim {
        let mut e = vec![Scalar::zero(); dim];
        e[k] = Scalar::one();
        acc.push(e.clone());
        if rank(&acc) == base + out.len() + 1 {
            out.push(e);
        } else {
            acc.pop();
        }
    }
    out
}

/// Affine equation `Σ coeffs_k x_k = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEq {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
}

impl AffineEq {
    pub fn new(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        AffineEq { coeffs, rhs }
    }

    pub fn holds_at(&self, x: &[Scalar]) -> bool {
        let lhs: Scalar = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs == self.rhs
    }
}

/// Solution set of an affine system: empty, or a point plus a linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub ambient: usize,
    pub particular: Option<Vec<Scalar>>,
    pub directions: Vec<Vec<Scalar>>,
}

impl AffineSpace {
    pub fn empty(ambient: usize) -> Self {
        AffineSpace { ambient, particular: None, directions: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.directions.len())
    }

    /// The single point, if the set is a point.
    pub fn unique_point(&self) -> Option<&Vec<Scalar>> {
        match self.dim() {
            Some(0) => self.particular.as_ref(),
            _ => None,
        }
    }

    /// `particular + Σ t_k directions_k`.
    pub fn point(&self, t: &[Scalar]) -> Option<Vec<Scalar>> {
        let p = self.particular.as_ref()?;
        let shift = combine(&self.directions, t);
        Some(p.iter().zip(shift.iter().chain(std::iter::repeat(&Scalar::zero()))).map(|(a, b)| a + b).collect())
    }

    /// Membership test for an arbitrary point.
    pub fn contains(&self, x: &[Scalar]) -> bool {
        match &self.particular {
            None => false,
            Some(p) => {
                let diff: Vec<Scalar> = x.iter().zip(p).map(|(a, b)| a - b).collect();
                in_span(&self.directions, &diff)
            }
        }
    }

    /// Equality as sets.
    pub fn same_set(&self, o: &AffineSpace) -> bool {
        match (&self.particular, &o.particular) {
            (None, None) => self.ambient == o.ambient,
            (Some(_), Some(q)) => {
                self.ambient == o.ambient
                    && self.directions.len() == o.directions.len()
                    && self.contains(q)
                    && o.directions.iter().all(|d| in_span(&self.directions, d))
            }
            _ => false,
        }
    }
}

/// Exact solution set of a real affine system in `m` unknowns.
///
/// Coefficients must be real; callers split complex equations into real and
/// imaginary parts first.
pub fn solve_affine(equations: &[AffineEq], m: usize) -> Result<AffineSpace, LinalgError> {
    for (k, eq) in equations.iter().enumerate() {
        if eq.coeffs.len() != m {
            return Err(LinalgError::Malformed(format!(
                "equation {k} has {} coefficients, expected {m}",
                eq.coeffs.len()
            )));
        }
        if !eq.coeffs.iter().all(Scalar::is_real) || !eq.rhs.is_real() {
            return Err(LinalgError::Malformed(format!("equation {k} has non-real coefficients")));
        }
    }
    let mut rows: Vec<Vec<Scalar>> = equations
        .iter()
        .map(|eq| {
            let mut r = eq.coeffs.clone();
            r.push(eq.rhs.clone());
            r
        })
        .collect();
    let piv = rref_rows(&mut rows);
    if piv.contains(&m) {
        return Ok(AffineSpace::empty(m));
    }
    let mut particular = vec![Scalar::zero(); m];
    for (k, &pc) in piv.iter().enumerate() {
        particular[pc] = rows[k][m].clone();
    }
    let mut directions = Vec::new();
    for free in (0..m).filter(|c| !piv.contains(c)) {
        let mut v = vec![Scalar::zero(); m];
        v[free] = Scalar::one();
        for (k, &pc) in piv.iter().enumerate() {
            v[pc] = -&rows[k][free];
        }
        directions.push(v);
    }
    Ok(AffineSpace { ambient: m, particular: Some(particular), directions })
}
