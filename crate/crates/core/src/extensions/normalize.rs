use std::collections::BTreeMap;

use crate::linalg::{solve_affine, AffineEq, Mat};
use crate::scalars::{Poly, Scalar};
use crate::sualg::{membership_residual, minus_coords};

use super::{curvature_table, kostant_codifferential, Extension, ExtensionError};

/// Result of [`solve_polynomial_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSolution {
    /// Every unknown pinned.
    Unique(BTreeMap<String, Scalar>),
    /// Some unknowns remain free after elimination.
    Underdetermined {
        pinned: BTreeMap<String, Scalar>,
        free: Vec<String>,
        kernel_dim: usize,
    },
    /// Equation with the given label cannot hold.
    Inconsistent(String),
}

/// Solves real polynomial equations `p = 0` by iterated exact elimination:
/// equations of degree at most one are solved with [`solve_affine`],
/// unknowns pinned to a single value are substituted, and the process repeats
/// until nothing changes.
pub fn solve_polynomial_system(equations: &[(String, Poly)], unknowns: &[String]) -> SystemSolution {
    let mut pinned: BTreeMap<String, Scalar> = BTreeMap::new();
    loop {
        let free: Vec<String> = unknowns.iter().filter(|u| !pinned.contains_key(*u)).cloned().collect();
        let mut linear = Vec::new();
        for (label, p) in equations {
            let q = p.substitute(&pinned);
            if q.is_zero() {
                continue;
            }
            if let Some(c) = q.as_constant() {
                let _ = c;
                return SystemSolution::Inconsistent(label.clone());
            }
            if let Some((coeffs, constant)) = q.linear_form(&free) {
                linear.push(AffineEq::new(coeffs, -&constant));
            }
        }
        if free.is_empty() {
            return SystemSolution::Unique(pinned);
        }
        let space = match solve_affine(&linear, free.len()) {
            Ok(s) => s,
            Err(e) => return SystemSolution::Inconsistent(e.to_string()),
        };
        let Some(point) = space.particular.clone() else {
            return SystemSolution::Inconsistent("affine part".into());
        };
        let mut progress = false;
        for (k, name) in free.iter().enumerate() {
            if space.directions.iter().all(|d| d[k].is_zero()) {
                pinned.insert(name.clone(), point[k].clone());
                progress = true;
            }
        }
        if !progress {
            let still: Vec<String> = free.clone();
            return SystemSolution::Underdetermined { pinned, free: still, kernel_dim: space.directions.len() };
        }
    }
}

/// A normalized extension with the solved values of the skeleton unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub extension: Extension,
    pub assignment: BTreeMap<String, Scalar>,
}

fn push_entries(out: &mut Vec<(String, Poly)>, label: &str, m: &Mat<Poly>) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = &m[(r, c)];
            if e.is_zero() {
                continue;
            }
            out.push((format!("{label}[{r},{c}].re"), e.re_part()));
            out.push((format!("{label}[{r},{c}].im"), e.im_part()));
        }
    }
}

/// All equations a normal extension must satisfy, as real polynomials.
fn normalization_equations(skel: &Extension<Poly>) -> Result<Vec<(String, Poly)>, ExtensionError> {
    let sig = skel.sig;
    let mut eqs = Vec::new();
    for (k, a) in skel.alpha.iter().enumerate() {
        let (res, tr) = membership_residual(a, sig);
        push_entries(&mut eqs, &format!("membership α{k}"), &res);
        eqs.push((format!("trace α{k}.re"), tr.re_part()));
        eqs.push((format!("trace α{k}.im"), tr.im_part()));
    }
    for (j, l) in skel.l_basis.iter().enumerate() {
        for (c, v) in minus_coords(&skel.alpha_of(l), sig).into_iter().enumerate() {
            eqs.push((format!("α(l{j}) in 𝔭 [{c}]"), v));
        }
    }
    let table = curvature_table(skel);
    for ((i, j), t) in table.pairs() {
        for (c, v) in minus_coords(t, sig).into_iter().enumerate() {
            eqs.push((format!("τ({i},{j}) in 𝔭 [{c}]"), v));
        }
    }
    for (j, l) in skel.l_basis.iter().enumerate() {
        for b in 0..skel.dim() {
            let t = table.eval(l, &skel.algebra.unit(b));
            push_entries(&mut eqs, &format!("equivariance l{j},e{b}"), &t);
        }
    }
    for (b, d) in kostant_codifferential(skel)?.iter().enumerate() {
        push_entries(&mut eqs, &format!("∂*κ(ξ{b})"), d);
    }
    Ok(eqs)
}

/// Determines the unknowns of a skeleton from the normality condition
/// `∂*κ = 0` together with membership, `τ ∈ 𝔭` and equivariance.
pub fn solve_normalization(skel: &Extension<Poly>) -> Result<Normalized, ExtensionError> {
    let eqs = normalization_equations(skel)?;
    match solve_polynomial_system(&eqs, &skel.unknowns) {
        SystemSolution::Inconsistent(label) => Err(ExtensionError::Inconsistent(label)),
        SystemSolution::Underdetermined { free, kernel_dim, .. } => {
            Err(ExtensionError::Underdetermined { kernel_dim, unresolved: free })
        }
        SystemSolution::Unique(assignment) => {
            let alpha: Vec<Mat> = skel
                .alpha
                .iter()
                .map(|a| {
                    a.map(|p| Poly::constant(p.eval(&assignment).expect("all unknowns assigned")))
                        .to_scalar()
                        .expect("constant entries")
                })
                .collect();
            let extension = Extension::new(
                skel.algebra.clone(),
                skel.l_basis.clone(),
                skel.sig,
                alpha,
                Vec::new(),
            )?;
            Ok(Normalized { extension, assignment })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn linear_then_quadratic_elimination() {
        // x - 2 = 0, x*y - 6 = 0  ->  x = 2, then 2y - 6 = 0
        let x = Poly::var("x");
        let y = Poly::var("y");
        let eqs = vec![
            ("a".to_string(), &x - &Poly::constant(Scalar::from_int(2))),
            ("b".to_string(), &(&x * &y) - &Poly::constant(Scalar::from_int(6))),
        ];
        match solve_polynomial_system(&eqs, &names(&["x", "y"])) {
            SystemSolution::Unique(a) => {
                assert_eq!(a["x"], Scalar::from_int(2));
                assert_eq!(a["y"], Scalar::from_int(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistency_is_labelled() {
        let x = Poly::var("x");
        let eqs = vec![
            ("first".to_string(), x.clone()),
            ("second".to_string(), &(&x * &x) - &Poly::one()),
        ];
        assert_eq!(
            solve_polynomial_system(&eqs, &names(&["x"])),
            SystemSolution::Inconsistent("second".into())
        );
    }

    #[test]
    fn free_unknowns_reported() {
        let eqs = vec![("s".to_string(), &Poly::var("x") + &Poly::var("y"))];
        match solve_polynomial_system(&eqs, &names(&["x", "y"])) {
            SystemSolution::Underdetermined { kernel_dim, free, .. } => {
                assert_eq!(kernel_dim, 1);
                assert_eq!(free.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
