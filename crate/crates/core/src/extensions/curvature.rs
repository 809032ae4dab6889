use crate::linalg::{Entry, Mat};
use crate::scalars::Scalar;
use crate::sualg::{dual_plus_basis, grade_part, minus_basis, minus_coords, minus_part};

use super::{Extension, ExtensionError};

/// Values `τ(e_i, e_j) = [α(e_i), α(e_j)] − α([e_i, e_j])` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTable<T: Entry = Scalar> {
    dim: usize,
    size: usize,
    values: Vec<Mat<T>>,
}

impl<T: Entry> CurvatureTable<T> {
    fn index(&self, i: usize, j: usize) -> usize {
        // position of (i, j), i < j, in row-major upper-triangular order
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `τ(e_i, e_j)` for any ordered pair.
    pub fn get(&self, i: usize, j: usize) -> Mat<T> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.values[self.index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.values[self.index(j, i)],
            std::cmp::Ordering::Equal => Mat::zeros(self.size, self.size),
        }
    }

    /// Stored pairs `((i, j), τ(e_i, e_j))` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &Mat<T>)> {
        let d = self.dim;
        (0..d)
            .flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
            .zip(self.values.iter())
    }

    /// `τ(u, v)` for coordinate vectors.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Mat<T> {
        let mut acc = Mat::zeros(self.size, self.size);
        for (i, ui) in u.iter().enumerate().take(self.dim) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(self.dim) {
                if i == j || vj.is_zero() {
                    continue;
                }
                acc = &acc + &self.get(i, j).scale(&(ui * vj));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Mat::is_zero)
    }
}

/// Curvature on all basis pairs, without checking where the values lie.
pub fn curvature_table<T: Entry>(ext: &Extension<T>) -> CurvatureTable<T> {
    let d = ext.dim();
    let mut values = Vec::with_capacity(d * d.saturating_sub(1) / 2);
    for i in 0..d {
        for j in i + 1..d {
            let br = ext.alpha[i].bracket(&ext.alpha[j]).expect("square matrices");
            let img = ext.alpha_of(&ext.algebra.bracket_basis(i, j));
            values.push(&br - &img);
        }
    }
    CurvatureTable { dim: d, size: ext.sig.size(), values }
}

/// Curvature table, rejecting values outside `𝔭 = g₀ ⊕ g₁ ⊕ g₂`.
pub fn curvature(ext: &Extension) -> Result<CurvatureTable, ExtensionError> {
    let table = curvature_table(ext);
    for ((i, j), t) in table.pairs() {
        if !minus_part(t).is_zero() {
            return Err(ExtensionError::CurvatureOutsideParabolic(i, j));
        }
    }
    Ok(table)
}

/// True when `α` is a bracket homomorphism.
pub fn is_flat(ext: &Extension) -> bool {
    curvature_table(ext).is_zero()
}

/// Values indexed by basis pairs `(i, j)`, `i < j`.
pub type PairValues = Vec<((usize, usize), Mat)>;

/// Grade-0 parts of the curvature values, with a flag for nonvanishing.
pub fn weyl_component(ext: &Extension) -> (PairValues, bool) {
    let table = curvature_table(ext);
    let parts: PairValues =
        table.pairs().map(|(ij, t)| (ij, grade_part(t, 0))).collect();
    let nonzero = parts.iter().any(|(_, m)| !m.is_zero());
    (parts, nonzero)
}

/// Kostant codifferential of the curvature, evaluated on the canonical g₋
/// basis `ξ_b` (transported to 𝔨/𝔩 through `ᾱ`):
///
/// `∂*κ(ξ_b) = Σ_a [ζ^a, κ(ξ_a, ξ_b)] − ½ Σ_a κ(pr₋[ζ^a, ξ_b], ξ_a)`.
pub fn kostant_codifferential<T: Entry>(ext: &Extension<T>) -> Result<Vec<Mat<T>>, ExtensionError> {
    let sig = ext.sig;
    let reps = ext.minus_representatives()?;
    let table = curvature_table(ext);
    let m = sig.minus_dim();
    // κ(ξ_a, ξ_b) on the canonical basis
    let mut kappa: Vec<Vec<Mat<T>>> = Vec::with_capacity(m);
    for a in 0..m {
        kappa.push((0..m).map(|b| table.eval(&reps[a], &reps[b])).collect());
    }
    let minus = minus_basis(sig);
    let dual = dual_plus_basis(sig)?;
    let dual_t: Vec<Mat<T>> = dual.iter().map(|z| z.map(|s| T::from_scalar(s.clone()))).collect();
    let half = Scalar::frac(1, 2);
    let s = sig.size();
    let mut out = Vec::with_capacity(m);
    for b in 0..m {
        let mut acc = Mat::zeros(s, s);
        for a in 0..m {
            acc = &acc + &dual_t[a].bracket(&kappa[a][b])?;
            let w = minus_coords(&dual[a].bracket(&minus[b])?, sig);
            for (c, wc) in w.iter().enumerate() {
                if wc.is_zero() {
                    continue;
                }
                acc = &acc - &kappa[c][a].scale(&(wc * &half));
            }
        }
        out.push(acc);
    }
    Ok(out)
}
