use std::fmt;

use crate::linalg::{rank, Mat};
use crate::scalars::Scalar;
use crate::sualg::{
    decompose, from_minus_coords, grade_part, grading_coefficient, grading_element, minus_basis, minus_coords,
    u_pq_complement_split, GradedParts, Signature,
};

use super::{curvature_table, is_flat, kostant_codifferential, weyl_component, Extension, ExtensionError};

/// One line of an extension report. `passed` is `None` for informational
/// entries and for conditions that are not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: Option<bool>,
    pub detail: String,
}

impl CheckOutcome {
    pub fn verdict(name: &str, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => CheckOutcome { name: name.into(), passed: Some(true), detail: String::new() },
            Err(e) => CheckOutcome { name: name.into(), passed: Some(false), detail: e },
        }
    }

    pub fn info(name: &str, value: bool, detail: String) -> Self {
        CheckOutcome { name: name.into(), passed: None, detail: format!("{value}{detail}") }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

fn first_nonzero(mats: &[Mat]) -> Option<(usize, &Mat)> {
    mats.iter().enumerate().find(|(_, m)| !m.is_zero())
}

/// Runs every algebraic condition on an extension. Pass/fail entries:
/// membership, subalgebra, isomorphism, equivariance, curvature in 𝔭,
/// normality, Nijenhuis. Informational: flatness, Weyl component,
/// metrizability, and the group-level condition, which is not checked.
pub fn check_extension(ext: &Extension) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(CheckOutcome::verdict("membership", ext.check_membership().map_err(|e| e.to_string())));
    let sub = if ext.algebra.is_subalgebra(&ext.l_basis) {
        Ok(())
    } else {
        Err(ExtensionError::NotSubalgebra.to_string())
    };
    out.push(CheckOutcome::verdict("subalgebra", sub));
    let structure = ext.check_structure();
    let iso = match &structure {
        Err(ExtensionError::NotSubalgebra) | Ok(()) => Ok(()),
        Err(e) => Err(e.to_string()),
    };
    let iso_ok = iso.is_ok();
    out.push(CheckOutcome::verdict("isomorphism", iso));
    out.push(CheckOutcome::verdict("equivariance", ext.check_equivariance().map_err(|e| e.to_string())));
    out.push(CheckOutcome::verdict("curvature in p", super::curvature(ext).map(|_| ()).map_err(|e| e.to_string())));
    let normal = if iso_ok {
        match kostant_codifferential(ext) {
            Ok(d) => match first_nonzero(&d) {
                None => Ok(()),
                Some((b, m)) => Err(format!("∂*κ(ξ{b}) = {}", format_mat(m))),
            },
            Err(e) => Err(e.to_string()),
        }
    } else {
        Err("requires the isomorphism condition".into())
    };
    out.push(CheckOutcome::verdict("normality", normal));
    let nij = if iso_ok {
        match nijenhuis_check(ext) {
            true => Ok(()),
            false => Err(nijenhuis_report(ext)
                .into_iter()
                .filter(|r| !r.vanishes)
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("; ")),
        }
    } else {
        Err("requires the isomorphism condition".into())
    };
    out.push(CheckOutcome::verdict("nijenhuis", nij));
    out.push(CheckOutcome::info("flat", is_flat(ext), String::new()));
    let (_, weyl_nonzero) = weyl_component(ext);
    out.push(CheckOutcome::info("weyl component nonzero", weyl_nonzero, String::new()));
    out.push(CheckOutcome::info("metrizable", metrizability_check(ext), String::new()));
    out.push(CheckOutcome {
        name: "group-level conditions".into(),
        passed: None,
        detail: "not checked (algebra level only)".into(),
    });
    out
}

/// Exact matrix printout, rows separated by `;`.
pub fn format_mat(m: &Mat) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Verdicts on the inclusions `α(𝔪) ⊂ ℂⁿ ⊕ ℂⁿ*`, `α(𝔩) ⊂ u(p,q)` and
/// `α(𝔥) ⊂ ℝ ⊕ csu(p,q) ⊕ ℝ*`. Each failure carries the offending
/// basis index (within 𝔪, 𝔩 and 𝔥 respectively).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFormReport {
    pub m_in_odd: Result<(), usize>,
    pub l_in_u: Result<(), usize>,
    pub h_in_even: Result<(), usize>,
}

impl SymmetricFormReport {
    pub fn all_pass(&self) -> bool {
        self.m_in_odd.is_ok() && self.l_in_u.is_ok() && self.h_in_even.is_ok()
    }
}

fn only_grades(m: &Mat, grades: &[i32]) -> bool {
    let kept = grades.iter().fold(Mat::zeros(m.rows(), m.cols()), |acc, &k| &acc + &grade_part(m, k));
    &kept == m
}

fn in_u(m: &Mat, sig: Signature) -> bool {
    if !only_grades(m, &[0]) {
        return false;
    }
    let p = decompose(m, sig);
    matches!(u_pq_complement_split(&p.a, &p.block, sig), Ok((_, c)) if c.is_zero())
}

/// Checks the block shape of `α` against a split `𝔨 = 𝔥 ⊕ 𝔪`.
pub fn check_symmetric_form(
    ext: &Extension,
    h_basis: &[Vec<Scalar>],
    m_basis: &[Vec<Scalar>],
) -> Result<SymmetricFormReport, ExtensionError> {
    let d = ext.dim();
    let mut all: Vec<Vec<Scalar>> = h_basis.to_vec();
    all.extend(m_basis.iter().cloned());
    if all.iter().any(|v| v.len() != d) || all.len() != d || rank(&all) != d {
        return Err(ExtensionError::BadSplit);
    }
    let check = |basis: &[Vec<Scalar>], pred: &dyn Fn(&Mat) -> bool| -> Result<(), usize> {
        match basis.iter().position(|v| !pred(&ext.alpha_of(v))) {
            None => Ok(()),
            Some(k) => Err(k),
        }
    };
    let sig = ext.sig;
    Ok(SymmetricFormReport {
        m_in_odd: check(m_basis, &|m| only_grades(m, &[-1, 1])),
        l_in_u: check(&ext.l_basis, &|m| in_u(m, sig)),
        h_in_even: check(h_basis, &|m| only_grades(m, &[-2, 0, 2])),
    })
}

/// `γ(e_i)` for every basis element: the matrix of `ad(r₀ α(e_i))` acting on
/// `g₋ ≅ 𝔨/𝔩` in the canonical g₋ basis, without further checks.
pub fn weyl_descriptor_table(ext: &Extension) -> Result<Vec<Mat>, ExtensionError> {
    let sig = ext.sig;
    let minus = minus_basis(sig);
    let m = minus.len();
    ext.alpha
        .iter()
        .map(|a| {
            let g0 = grade_part(a, 0);
            let mut out = Mat::zeros(m, m);
            for (b, xi) in minus.iter().enumerate() {
                let c = minus_coords(&g0.bracket(xi)?, sig);
                for (r, v) in c.into_iter().enumerate() {
                    out[(r, b)] = v;
                }
            }
            Ok(out)
        })
        .collect()
}

/// [`weyl_descriptor_table`], checked against the induced adjoint action of 𝔩
/// on `𝔨/𝔩`.
pub fn invariant_weyl_descriptor(ext: &Extension) -> Result<Vec<Mat>, ExtensionError> {
    let table = weyl_descriptor_table(ext)?;
    let abar = ext.minus_matrix()?;
    let reps = ext.minus_representatives()?;
    let m = reps.len();
    for (j, l) in ext.l_basis.iter().enumerate() {
        let gamma = combine_mats(&table, l);
        let mut ad = Mat::zeros(m, m);
        for (b, rep) in reps.iter().enumerate() {
            let col = abar.apply(&ext.algebra.bracket(l, rep))?;
            for (r, v) in col.into_iter().enumerate() {
                ad[(r, b)] = v;
            }
        }
        if gamma != ad {
            return Err(ExtensionError::DescriptorMismatch(j));
        }
    }
    Ok(table)
}

fn combine_mats(table: &[Mat], v: &[Scalar]) -> Mat {
    let m = table[0].rows();
    v.iter()
        .zip(table)
        .filter(|(c, _)| !c.is_zero())
        .fold(Mat::zeros(m, m), |acc, (c, t)| &acc + &t.scale(c))
}

/// True when no `α(e_i)` has a component along the grading element.
pub fn metrizability_check(ext: &Extension) -> bool {
    ext.alpha.iter().all(|a| grading_coefficient(a).is_zero())
}

/// Bracket classes of the Nijenhuis computation on `ℝ ⊕ ℂⁿ ⊕ span(E_gr)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NijenhuisCase {
    /// Both arguments in ℂⁿ.
    ComplexComplex,
    /// One argument in ℂⁿ, the other in ℝ.
    ComplexReal,
    /// One argument in ℂⁿ, the other the grading element.
    ComplexGrading,
    /// ℝ against the grading element.
    RealGrading,
    /// Identical one-dimensional arguments (ℝ with ℝ, grading with grading).
    Diagonal,
    /// Reduction `τ ≡ 0 mod u(p,q) ⊕ ℂⁿ* ⊕ ℝ*` of the extension itself.
    Reduction,
}

impl fmt::Display for NijenhuisCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NijenhuisCase::ComplexComplex => "C^n x C^n",
            NijenhuisCase::ComplexReal => "C^n x R",
            NijenhuisCase::ComplexGrading => "C^n x E_gr",
            NijenhuisCase::RealGrading => "R x E_gr",
            NijenhuisCase::Diagonal => "diagonal",
            NijenhuisCase::Reduction => "reduction",
        };
        f.write_str(s)
    }
}

/// One evaluated pair of the Nijenhuis computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisEntry {
    pub case: NijenhuisCase,
    pub pair: (usize, usize),
    /// Coordinates of the value in `ℝ ⊕ ℂⁿ ⊕ span(E_gr)`.
    pub value: Vec<Scalar>,
    pub vanishes: bool,
}

impl fmt::Display for NijenhuisEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.value.iter().map(|s| s.to_string()).collect();
        write!(f, "{} ({}, {}) -> [{}]", self.case, self.pair.0, self.pair.1, v.join(", "))
    }
}

/// Coordinates modulo `u(p,q) ⊕ ℂⁿ* ⊕ ℝ*`: the g₋ coordinates followed by
/// the grading coefficient.
fn quotient_coords(m: &Mat, sig: Signature) -> Vec<Scalar> {
    let mut c = minus_coords(m, sig);
    c.push(grading_coefficient(m));
    c
}

fn from_quotient_coords(c: &[Scalar], sig: Signature) -> Mat {
    let last = c.len() - 1;
    &from_minus_coords(&c[..last], sig) + &grading_element(sig).scale(&c[last])
}

/// `J` on `ℝ ⊕ ℂⁿ ⊕ span(E_gr)`: `J E_gr = ξ₋₂`, `J ξ₋₂ = −E_gr`, `J = i` on ℂⁿ.
fn apply_j(c: &[Scalar]) -> Vec<Scalar> {
    let last = c.len() - 1;
    let mut out = vec![Scalar::zero(); c.len()];
    out[0] = c[last].clone();
    out[last] = -&c[0];
    let n = (last - 1) / 2;
    for k in 0..n {
        // i (re + i im) = −im + i re
        out[1 + 2 * k] = -&c[2 + 2 * k];
        out[2 + 2 * k] = c[1 + 2 * k].clone();
    }
    out
}

fn model_bracket(u: &[Scalar], v: &[Scalar], sig: Signature) -> Vec<Scalar> {
    let a = from_quotient_coords(u, sig);
    let b = from_quotient_coords(v, sig);
    quotient_coords(&a.bracket(&b).expect("square"), sig)
}

fn add(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn sub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `[X,Y] − [JX,JY] + J([JX,Y] + [X,JY])` modulo `u(p,q) ⊕ ℂⁿ* ⊕ ℝ*`.
pub fn model_nijenhuis(u: &[Scalar], v: &[Scalar], sig: Signature) -> Vec<Scalar> {
    let (ju, jv) = (apply_j(u), apply_j(v));
    let first = sub(&model_bracket(u, v, sig), &model_bracket(&ju, &jv, sig));
    let inner = add(&model_bracket(&ju, v, sig), &model_bracket(u, &jv, sig));
    add(&first, &apply_j(&inner))
}

fn classify(i: usize, j: usize, last: usize) -> NijenhuisCase {
    let kind = |k: usize| {
        if k == 0 {
            0
        } else if k == last {
            2
        } else {
            1
        }
    };
    match (kind(i), kind(j)) {
        (1, 1) => NijenhuisCase::ComplexComplex,
        (1, 0) | (0, 1) => NijenhuisCase::ComplexReal,
        (1, 2) | (2, 1) => NijenhuisCase::ComplexGrading,
        (0, 2) | (2, 0) => NijenhuisCase::RealGrading,
        _ => NijenhuisCase::Diagonal,
    }
}

/// Case-by-case Nijenhuis evaluation: the reduction of the curvature
/// modulo `u(p,q) ⊕ ℂⁿ* ⊕ ℝ*` on every basis pair of `𝔨`, then the model
/// tensor on every ordered basis pair of `ℝ ⊕ ℂⁿ ⊕ span(E_gr)`.
pub fn nijenhuis_report(ext: &Extension) -> Vec<NijenhuisEntry> {
    let sig = ext.sig;
    let mut out = Vec::new();
    for ((i, j), t) in curvature_table(ext).pairs() {
        let value = quotient_coords(t, sig);
        let vanishes = value.iter().all(Scalar::is_zero);
        out.push(NijenhuisEntry { case: NijenhuisCase::Reduction, pair: (i, j), value, vanishes });
    }
    let dim = sig.minus_dim() + 1;
    let unit = |k: usize| {
        let mut v = vec![Scalar::zero(); dim];
        v[k] = Scalar::one();
        v
    };
    for i in 0..dim {
        for j in 0..dim {
            let value = model_nijenhuis(&unit(i), &unit(j), sig);
            let vanishes = value.iter().all(Scalar::is_zero);
            out.push(NijenhuisEntry { case: classify(i, j, dim - 1), pair: (i, j), value, vanishes });
        }
    }
    out
}

/// True when every entry of [`nijenhuis_report`] vanishes.
pub fn nijenhuis_check(ext: &Extension) -> bool {
    nijenhuis_report(ext).iter().all(|e| e.vanishes)
}

/// Grade-0 block data `(a, A)` of a member, for reports.
pub fn g0_data(m: &Mat, sig: Signature) -> (Scalar, Mat) {
    let p: GradedParts = decompose(m, sig);
    (p.a, p.block)
}
