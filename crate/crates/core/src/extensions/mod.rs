//! Extensions `α: 𝔨 → su(p+1, q+1)` of homogeneous CR geometries: validity
//! conditions, curvature, normality, normalization and derived invariants.

mod checks;
mod curvature;
mod lie;
mod normalize;
mod skeleton;

pub use checks::{
    check_extension, check_symmetric_form, format_mat, g0_data, invariant_weyl_descriptor,
    metrizability_check, model_nijenhuis, nijenhuis_check, nijenhuis_report, weyl_descriptor_table,
    CheckOutcome, NijenhuisCase, NijenhuisEntry, SymmetricFormReport,
};
pub use curvature::{curvature, curvature_table, is_flat, kostant_codifferential, weyl_component, CurvatureTable};
pub use lie::LieAlg;
pub use normalize::{solve_normalization, solve_polynomial_system, Normalized, SystemSolution};
pub use skeleton::{canonical_skeleton, SkeletonUnknowns};

use thiserror::Error;

use crate::linalg::{combine, coordinates, inverse, mat_rank, Entry, LinalgError, Mat};
use crate::scalars::Scalar;
use crate::sualg::{check_member, minus_coords, Signature, SuError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("invalid Lie algebra: {0}")]
    Algebra(String),
    #[error("α({0}) is not in su(p+1,q+1): {1}")]
    NotMember(usize, String),
    #[error("𝔩 is not a subalgebra")]
    NotSubalgebra,
    #[error("α does not induce an isomorphism 𝔨/𝔩 → su/𝔭 (rank {rank}, expected {expected})")]
    NotIsomorphism { rank: usize, expected: usize },
    #[error("equivariance fails for 𝔩 element {l} against basis element {basis}")]
    Equivariance { l: usize, basis: usize },
    #[error("curvature τ(e{0}, e{1}) leaves 𝔭")]
    CurvatureOutsideParabolic(usize, usize),
    #[error("the g₋ part of α contains unknowns")]
    SymbolicMinusPart,
    #[error("α has {found} matrices, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("γ restricted to 𝔩 differs from the adjoint action at 𝔩 element {0}")]
    DescriptorMismatch(usize),
    #[error("the supplied 𝔥/𝔪 split is not a decomposition of 𝔨")]
    BadSplit,
    #[error("no normal extension for this skeleton: equation {0} fails")]
    Inconsistent(String),
    #[error("normalization is underdetermined: {kernel_dim} free directions ({unresolved:?})")]
    Underdetermined { kernel_dim: usize, unresolved: Vec<String> },
    #[error(transparent)]
    Su(#[from] SuError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear map `α: 𝔨 → su(p+1, q+1)` with a subalgebra `𝔩 ⊂ 𝔨`.
///
/// Entries are scalars, or polynomials in `unknowns` for skeletons awaiting
/// normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<T: Entry = Scalar> {
    pub algebra: LieAlg,
    /// Basis of 𝔩 as coordinate vectors.
    pub l_basis: Vec<Vec<Scalar>>,
    pub sig: Signature,
    /// `alpha[i] = α(e_i)`.
    pub alpha: Vec<Mat<T>>,
    pub unknowns: Vec<String>,
}

impl<T: Entry> Extension<T> {
    pub fn new(
        algebra: LieAlg,
        l_basis: Vec<Vec<Scalar>>,
        sig: Signature,
        alpha: Vec<Mat<T>>,
        unknowns: Vec<String>,
    ) -> Result<Self, ExtensionError> {
        if alpha.len() != algebra.dim() {
            return Err(ExtensionError::WrongArity { expected: algebra.dim(), found: alpha.len() });
        }
        for (k, a) in alpha.iter().enumerate() {
            if a.rows() != sig.size() || a.cols() != sig.size() {
                return Err(ExtensionError::NotMember(k, "wrong size".into()));
            }
        }
        if l_basis.iter().any(|v| v.len() != algebra.dim()) {
            return Err(ExtensionError::Algebra("𝔩 vectors have the wrong length".into()));
        }
        Ok(Extension { algebra, l_basis, sig, alpha, unknowns })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `α(v)` for a coordinate vector `v`.
    pub fn alpha_of(&self, v: &[Scalar]) -> Mat<T> {
        let s = self.sig.size();
        v.iter()
            .zip(&self.alpha)
            .filter(|(c, _)| !c.is_zero())
            .fold(Mat::zeros(s, s), |acc, (c, a)| &acc + &a.scale(c))
    }

    /// `α(l_j)` for the 𝔩 basis.
    pub fn alpha_l(&self) -> Vec<Mat<T>> {
        self.l_basis.iter().map(|l| self.alpha_of(l)).collect()
    }

    /// Matrix of the induced map `𝔨 → g₋` in the canonical g₋ basis; fails
    /// when the g₋ parts contain unknowns.
    pub fn minus_matrix(&self) -> Result<Mat, ExtensionError> {
        let cols: Vec<Vec<Scalar>> = self
            .alpha
            .iter()
            .map(|a| {
                minus_coords(a, self.sig)
                    .iter()
                    .map(Entry::as_scalar)
                    .collect::<Option<Vec<Scalar>>>()
                    .ok_or(ExtensionError::SymbolicMinusPart)
            })
            .collect::<Result<_, _>>()?;
        let rows = self.sig.minus_dim();
        Ok(Mat::from_fn(rows, self.dim(), |r, c| cols[c][r].clone()))
    }

    /// Representatives in 𝔨 of the canonical g₋ basis under `ᾱ`.
    pub fn minus_representatives(&self) -> Result<Vec<Vec<Scalar>>, ExtensionError> {
        let abar = self.minus_matrix()?;
        let m = self.sig.minus_dim();
        (0..m)
            .map(|a| {
                let mut e = vec![Scalar::zero(); m];
                e[a] = Scalar::one();
                crate::linalg::solve(&abar, &e).ok_or(ExtensionError::NotIsomorphism {
                    rank: mat_rank(&abar),
                    expected: m,
                })
            })
            .collect()
    }

    /// Structural invariants: 𝔩 subalgebra, `ᾱ` an isomorphism, `α(𝔩) ⊂ 𝔭`.
    pub fn check_structure(&self) -> Result<(), ExtensionError> {
        if !self.algebra.is_subalgebra(&self.l_basis) {
            return Err(ExtensionError::NotSubalgebra);
        }
        let abar = self.minus_matrix()?;
        let m = self.sig.minus_dim();
        let r = mat_rank(&abar);
        let l_rank = crate::linalg::rank(&self.l_basis);
        if r != m || self.dim() != m + l_rank {
            return Err(ExtensionError::NotIsomorphism { rank: r, expected: m });
        }
        for l in &self.l_basis {
            if abar.apply(l)?.iter().any(|c| !c.is_zero()) {
                return Err(ExtensionError::NotIsomorphism { rank: r, expected: m });
            }
        }
        Ok(())
    }

    /// Re-expresses an extension defined on an adapted basis of `algebra`
    /// (given by coordinate vectors `basis`) on the standard basis.
    pub fn pull_back(&self, algebra: &LieAlg, basis: &[Vec<Scalar>]) -> Result<Extension<T>, ExtensionError> {
        let d = algebra.dim();
        let p = Mat::from_fn(d, d, |r, c| basis[c][r].clone());
        let pinv = inverse(&p)?;
        let s = self.sig.size();
        let alpha = (0..d)
            .map(|i| {
                (0..d).fold(Mat::zeros(s, s), |acc, j| {
                    if pinv[(j, i)].is_zero() {
                        acc
                    } else {
                        &acc + &self.alpha[j].scale(&pinv[(j, i)])
                    }
                })
            })
            .collect();
        let l_basis = self.l_basis.iter().map(|l| combine(basis, l)).collect();
        Extension::new(algebra.clone(), l_basis, self.sig, alpha, self.unknowns.clone())
    }
}

impl Extension<Scalar> {
    /// Membership of every `α(e_i)` in `su(p+1, q+1)`.
    pub fn check_membership(&self) -> Result<(), ExtensionError> {
        for (k, a) in self.alpha.iter().enumerate() {
            check_member(a, self.sig).map_err(|e| ExtensionError::NotMember(k, e.to_string()))?;
        }
        Ok(())
    }

    /// Infinitesimal equivariance `[α(l), α(X)] = α([l, X])`.
    pub fn check_equivariance(&self) -> Result<(), ExtensionError> {
        for (li, l) in self.l_basis.iter().enumerate() {
            let al = self.alpha_of(l);
            for j in 0..self.dim() {
                let lhs = al.bracket(&self.alpha[j])?;
                let rhs = self.alpha_of(&self.algebra.bracket(l, &self.algebra.unit(j)));
                if lhs != rhs {
                    return Err(ExtensionError::Equivariance { l: li, basis: j });
                }
            }
        }
        Ok(())
    }

    /// All invariants of a valid extension.
    pub fn validate(&self) -> Result<(), ExtensionError> {
        self.check_membership()?;
        self.check_structure()?;
        self.check_equivariance()?;
        curvature(self)?;
        Ok(())
    }

    /// Coordinates of `v` in 𝔩, if it lies there.
    pub fn l_coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        coordinates(&self.l_basis, v)
    }
}
