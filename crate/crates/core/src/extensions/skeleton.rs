use crate::linalg::Mat;
use crate::scalars::{Poly, Scalar};
use crate::sualg::{assemble_unchecked, GradedParts, Signature};

use super::{Extension, ExtensionError, LieAlg};

/// Names of the unknowns introduced by [`canonical_skeleton`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonUnknowns {
    /// Real scalar `a` in the corners of `α(T)`.
    pub a: String,
    /// Real and imaginary parts of the middle block `A` of `α(T)`.
    pub block: Vec<String>,
    /// Real and imaginary parts of the row `ρ₁` of each representative.
    pub rho1: Vec<String>,
    /// Real coefficient `ρ₂` in the top-right corner of `α(T)`.
    pub rho2: String,
}

impl SkeletonUnknowns {
    fn new(n: usize) -> Self {
        let mut block = Vec::new();
        for j in 0..n {
            for k in 0..n {
                block.push(format!("A_re_{j}_{k}"));
                block.push(format!("A_im_{j}_{k}"));
            }
        }
        let mut rho1 = Vec::new();
        for r in 0..2 * n {
            for k in 0..n {
                rho1.push(format!("rho1_{r}_{k}_re"));
                rho1.push(format!("rho1_{r}_{k}_im"));
            }
        }
        SkeletonUnknowns { a: "a".into(), block, rho1, rho2: "rho2".into() }
    }

    /// All unknowns in a fixed order.
    pub fn all(&self) -> Vec<String> {
        let mut out = vec![self.a.clone()];
        out.extend(self.block.iter().cloned());
        out.extend(self.rho1.iter().cloned());
        out.push(self.rho2.clone());
        out
    }
}

fn complex_unknown(re: &str, im: &str) -> Poly {
    &Poly::var(re) + &Poly::term(Scalar::i(), im)
}

/// Skeleton extension on an adapted basis `[T, R_1, …, R_2n, l_1, …]`:
///
/// * `α(T)` has g₋₂ coordinate 1, corners `i·a`, middle block `A` and
///   top-right corner `i·ρ₂`;
/// * `α(R_{2k})` has g₋₁ column `e_k`, `α(R_{2k+1})` has column `i·e_k`, and
///   each carries an unknown g₁ row `ρ₁`;
/// * `α(l_j)` is the supplied constant matrix.
///
/// `algebra` must already be expressed in the adapted basis.
pub fn canonical_skeleton(
    algebra: &LieAlg,
    sig: Signature,
    alpha_l: &[Mat],
) -> Result<(Extension<Poly>, SkeletonUnknowns), ExtensionError> {
    let n = sig.n();
    let d = algebra.dim();
    if d != 2 * n + 1 + alpha_l.len() {
        return Err(ExtensionError::WrongArity { expected: d, found: 2 * n + 1 + alpha_l.len() });
    }
    let names = SkeletonUnknowns::new(n);
    let ia = Poly::term(Scalar::i(), &names.a);
    let block = Mat::from_fn(n, n, |j, k| {
        complex_unknown(&names.block[2 * (j * n + k)], &names.block[2 * (j * n + k) + 1])
    });
    let mut t = assemble_unchecked(
        &GradedParts::zero(n)
            .with_x(Poly::one())
            .with_g0(ia.clone(), block)
            .with_z(Poly::var(&names.rho2)),
        sig,
    );
    // both corners carry i·a, which matches −conj(i·a) for real a
    t[(n + 1, n + 1)] = ia;
    let mut alpha = vec![t];
    for r in 0..2 * n {
        let k = r / 2;
        let unit = if r % 2 == 0 { Scalar::one() } else { Scalar::i() };
        let mut col = vec![Poly::zero(); n];
        col[k] = Poly::constant(unit);
        let row = (0..n)
            .map(|c| {
                let base = 2 * (r * n + c);
                complex_unknown(&names.rho1[base], &names.rho1[base + 1])
            })
            .collect();
        alpha.push(assemble_unchecked(&GradedParts::zero(n).with_col(col).with_row(row), sig));
    }
    alpha.extend(alpha_l.iter().map(Mat::to_poly));
    let l_basis = (2 * n + 1..d).map(|k| algebra.unit(k)).collect();
    let ext = Extension::new(algebra.clone(), l_basis, sig, alpha, names.all())?;
    Ok((ext, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sualg::minus_coords;

    #[test]
    fn skeleton_shape_for_n1() {
        let alg = LieAlg::new(vec!["t".into(), "r1".into(), "r2".into()], &[]).unwrap();
        let sig = Signature::unordered(1, 0).unwrap();
        let (ext, names) = canonical_skeleton(&alg, sig, &[]).unwrap();
        assert_eq!(names.all().len(), 1 + 2 + 4 + 1);
        let m = ext.minus_matrix().unwrap();
        assert_eq!(m, Mat::identity(3));
        let c = minus_coords(&ext.alpha[2], sig);
        assert_eq!(c[2], Poly::one());
    }

    #[test]
    fn arity_checked() {
        let alg = LieAlg::new(vec!["t".into(), "r1".into()], &[]).unwrap();
        let sig = Signature::unordered(1, 0).unwrap();
        assert!(canonical_skeleton(&alg, sig, &[]).is_err());
    }
}
