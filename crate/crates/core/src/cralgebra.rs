//! Symmetry test for CR algebras `(𝔨, 𝔮)`: derivation of `𝔩` and `H`, an
//! adapted basis from a user choice, the `𝔩 → csu(p,q)` map, the parity
//! automorphism `ν`, and normalization of the resulting skeleton.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::extensions::{
    curvature_table, is_flat, kostant_codifferential, canonical_skeleton, solve_normalization, solve_polynomial_system,
    Extension, ExtensionError, LieAlg, SystemSolution,
};
use crate::linalg::{coordinates, independent_subset, intersect, inverse, kernel, rank, solve, span_basis, LinalgError, Mat};
use crate::scalars::{Poly, Scalar};
use crate::sualg::{
    assemble_unchecked, entry_grade, g0_invariant_residuals, inertia, minus_basis, minus_coords, GradedParts,
    Signature, SuError,
};
use crate::symmetries::{make_symmetry, SymmetryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrError {
    #[error("malformed CR algebra: {0}")]
    Malformed(String),
    #[error("𝔮 is not a complex subalgebra of 𝔨_ℂ")]
    NotSubalgebra,
    #[error("rejected: {0}")]
    Degenerate(String),
    #[error("invalid basis choice: {0}")]
    Choice(String),
    #[error("search mode is limited to dim 𝔨 ≤ 4 (got {0})")]
    SearchScope(usize),
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Su(#[from] SuError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A known embedding `α: 𝔨 → su(p+1, q+1)`, used on the flat path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub sig: Signature,
    pub alpha: Vec<Mat>,
}

/// Real Lie algebra `𝔨` with a complex subalgebra `𝔮 ⊂ 𝔨_ℂ`; vectors of `𝔮`
/// are complex coordinate vectors `u + i w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrAlgebra {
    pub algebra: LieAlg,
    pub q_basis: Vec<Vec<Scalar>>,
    pub embedding: Option<Embedding>,
}

fn conj_vec(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(Scalar::conj).collect()
}

fn re_vec(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(Scalar::re).collect()
}

fn im_vec(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(Scalar::im).collect()
}

fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale_vec(a: &[Scalar], k: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * k).collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Membership in a span; the empty span contains only zero.
fn in_span0(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    !basis.is_empty() && coordinates(basis, v).is_some()
}

/// Real points of a conjugation-invariant complex span of `vectors`
/// together with their conjugates.
fn real_points(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut all = Vec::new();
    for v in vectors {
        all.push(re_vec(v));
        all.push(im_vec(v));
    }
    span_basis(&all)
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    m.entries().cloned().collect()
}

impl CrAlgebra {
    pub fn new(algebra: LieAlg, q_basis: Vec<Vec<Scalar>>, embedding: Option<Embedding>) -> Result<Self, CrError> {
        let d = algebra.dim();
        if q_basis.iter().any(|v| v.len() != d) {
            return Err(CrError::Malformed(format!("𝔮 vectors must have length {d}")));
        }
        if rank(&q_basis) != q_basis.len() {
            return Err(CrError::Malformed("𝔮 vectors are linearly dependent".into()));
        }
        for (a, u) in q_basis.iter().enumerate() {
            for v in &q_basis[a + 1..] {
                if !in_span0(&q_basis, &algebra.bracket(u, v)) {
                    return Err(CrError::NotSubalgebra);
                }
            }
        }
        if let Some(e) = &embedding {
            if e.alpha.len() != d || e.alpha.iter().any(|m| m.rows() != e.sig.size() || m.cols() != e.sig.size()) {
                return Err(CrError::Malformed("embedding has the wrong shape".into()));
            }
        }
        Ok(CrAlgebra { algebra, q_basis, embedding })
    }

    /// CR algebra of an embedding: `𝔮` is the set of `v ∈ 𝔨_ℂ` with
    /// `α(v) e₀ ∈ ⟨e₀⟩`.
    pub fn from_embedding(algebra: LieAlg, sig: Signature, alpha: Vec<Mat>) -> Result<Self, CrError> {
        let d = algebra.dim();
        if alpha.len() != d {
            return Err(CrError::Malformed("one matrix per basis element required".into()));
        }
        let n = sig.n();
        let m = Mat::from_fn(n + 1, d, |r, j| alpha[j][(r + 1, 0)].clone());
        let q = kernel(&m);
        CrAlgebra::new(algebra, q, Some(Embedding { sig, alpha }))
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Output of [`derive_l_and_h`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhData {
    /// Real basis of `𝔩 = 𝔨 ∩ 𝔮 ∩ 𝔮̄`.
    pub l_basis: Vec<Vec<Scalar>>,
    /// Real basis of `H + 𝔩`, the real points of `𝔮 + 𝔮̄`.
    pub hl_basis: Vec<Vec<Scalar>>,
    /// Complement of `𝔩` inside `H + 𝔩`.
    pub h_basis: Vec<Vec<Scalar>>,
    /// Functional vanishing exactly on `H + 𝔩`.
    pub transversal: Vec<Scalar>,
    /// Levi signature, sorted.
    pub levi_signature: (usize, usize),
    q: Vec<Vec<Scalar>>,
    qbar: Vec<Vec<Scalar>>,
}

impl LhData {
    pub fn n(&self) -> usize {
        self.h_basis.len() / 2
    }

    /// Complex structure on `H`: for `X = a + b` with `a ∈ 𝔮`, `b ∈ 𝔮̄`,
    /// `J X = 2 Im a`, well defined modulo `𝔩`.
    pub fn apply_j(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut all = self.q.clone();
        all.extend(self.qbar.iter().cloned());
        let d = x.len();
        let m = Mat::from_fn(d, all.len(), |r, c| all[c][r].clone());
        let c = solve(&m, x)?;
        let a = self.q.iter().zip(&c).fold(vec![Scalar::zero(); d], |acc, (v, k)| {
            acc.iter().zip(v).map(|(s, vi)| s + &(vi * k)).collect()
        });
        Some(scale_vec(&im_vec(&a), &Scalar::from_int(2)))
    }

    /// `J` extended linearly to `𝔨`, zero on a transversal direction.
    fn j_matrix(&self, d: usize) -> Mat {
        let mut basis = self.hl_basis.clone();
        let extra = (0..d)
            .map(|k| {
                let mut e = vec![Scalar::zero(); d];
                e[k] = Scalar::one();
                e
            })
            .find(|e| !dot(&self.transversal, e).is_zero())
            .expect("transversal is nonzero");
        basis.push(extra);
        let p = Mat::from_fn(d, d, |r, c| basis[c][r].clone());
        let pinv = inverse(&p).expect("H + 𝔩 plus a transversal is a basis");
        let images: Vec<Vec<Scalar>> = self
            .hl_basis
            .iter()
            .map(|v| self.apply_j(v).expect("H + 𝔩 lies in 𝔮 + 𝔮̄"))
            .chain([vec![Scalar::zero(); d]])
            .collect();
        let jb = Mat::from_fn(d, d, |r, c| images[c][r].clone());
        &jb * &pinv
    }
}

/// Step (1): `𝔩`, `H + 𝔩`, and the Levi signature read from brackets.
pub fn derive_l_and_h(cr: &CrAlgebra) -> Result<LhData, CrError> {
    let d = cr.dim();
    let q = cr.q_basis.clone();
    let qbar: Vec<Vec<Scalar>> = q.iter().map(|v| conj_vec(v)).collect();
    let l_basis = real_points(&intersect(&q, &qbar));
    let hl_basis = real_points(&q);
    let codim = d - hl_basis.len();
    if codim != 1 {
        return Err(CrError::Degenerate(format!("H has real codimension {codim}, expected 1")));
    }
    let h_dim = hl_basis.len() - l_basis.len();
    if h_dim == 0 || !h_dim.is_multiple_of(2) {
        return Err(CrError::Degenerate(format!("H/𝔩 has real dimension {h_dim}")));
    }
    let mut stacked = l_basis.clone();
    stacked.extend(hl_basis.iter().cloned());
    let h_basis: Vec<Vec<Scalar>> = independent_subset(&stacked)
        .into_iter()
        .filter(|&k| k >= l_basis.len())
        .map(|k| stacked[k].clone())
        .collect();
    let rows = Mat::from_fn(hl_basis.len(), d, |r, c| hl_basis[r][c].clone());
    let transversal = kernel(&rows).pop().expect("codimension one");
    let mut lh = LhData { l_basis, hl_basis, h_basis, transversal, levi_signature: (0, 0), q, qbar };
    let jh: Vec<Vec<Scalar>> = lh
        .h_basis
        .iter()
        .map(|v| lh.apply_j(v).ok_or_else(|| CrError::Malformed("H outside 𝔮 + 𝔮̄".into())))
        .collect::<Result<_, _>>()?;
    let half = Scalar::frac(1, 2);
    let m = lh.h_basis.len();
    let gram = Mat::from_fn(m, m, |a, b| &dot(&lh.transversal, &cr.algebra.bracket(&lh.h_basis[a], &jh[b])) * &half);
    let (pos, neg, zero) = inertia(&gram).map_err(|_| CrError::Degenerate("Levi form is not symmetric".into()))?;
    if zero != 0 {
        return Err(CrError::Degenerate("Levi form is degenerate".into()));
    }
    lh.levi_signature = (pos.min(neg) / 2, pos.max(neg) / 2);
    Ok(lh)
}

/// Representatives of a complex basis of `H` (`R_{2k}` and `R_{2k+1} ≡ J R_{2k}`),
/// a complement `T`, and optionally the symmetry parameters `(Z, z)` used on
/// the flat path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChoice {
    pub representatives: Vec<Vec<Scalar>>,
    pub complement: Vec<Scalar>,
    pub symmetry: Option<(Vec<Scalar>, Scalar)>,
}

impl BasisChoice {
    pub fn new(representatives: Vec<Vec<Scalar>>, complement: Vec<Scalar>) -> Self {
        BasisChoice { representatives, complement, symmetry: None }
    }
}

/// The adapted basis `[T, R_1, …, R_2n, l_1, …]` and the algebra in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adapted {
    pub basis: Vec<Vec<Scalar>>,
    pub algebra: LieAlg,
    pub sig: Signature,
    pub n: usize,
    pub l_dim: usize,
}

impl Adapted {
    /// `ν`: `+1` on `T` and `𝔩`, `−1` on the representatives.
    pub fn parity(&self, k: usize) -> i32 {
        if (1..=2 * self.n).contains(&k) {
            -1
        } else {
            1
        }
    }
}

/// Validates a choice against step (1) and reads the Levi signs from
/// `[R_{2k}, R_{2k+1}] ≡ −2 I_k T`.
pub fn adapt(cr: &CrAlgebra, lh: &LhData, choice: &BasisChoice) -> Result<Adapted, CrError> {
    let d = cr.dim();
    let n = lh.n();
    if choice.representatives.len() != 2 * n {
        return Err(CrError::Choice(format!("expected {} representatives", 2 * n)));
    }
    if choice.complement.len() != d || choice.representatives.iter().any(|r| r.len() != d) {
        return Err(CrError::Choice(format!("vectors must have length {d}")));
    }
    for (k, r) in choice.representatives.iter().enumerate() {
        if !r.iter().all(Scalar::is_real) || !in_span0(&lh.hl_basis, r) {
            return Err(CrError::Choice(format!("representative {k} is not a real vector of H")));
        }
    }
    if !choice.complement.iter().all(Scalar::is_real) || in_span0(&lh.hl_basis, &choice.complement) {
        return Err(CrError::Choice("complement lies in H".into()));
    }
    for k in 0..n {
        let jr = lh.apply_j(&choice.representatives[2 * k]).expect("in H");
        if !in_span0(&lh.l_basis, &sub_vec(&jr, &choice.representatives[2 * k + 1])) {
            return Err(CrError::Choice(format!("representative {} is not J of representative {}", 2 * k + 1, 2 * k)));
        }
    }
    let mut basis = vec![choice.complement.clone()];
    basis.extend(choice.representatives.iter().cloned());
    basis.extend(lh.l_basis.iter().cloned());
    if rank(&basis) != d {
        return Err(CrError::Choice("complement, representatives and 𝔩 do not span 𝔨".into()));
    }
    let mut names = vec!["T".to_string()];
    names.extend((1..=2 * n).map(|k| format!("R{k}")));
    names.extend((1..=lh.l_basis.len()).map(|k| format!("L{k}")));
    let algebra = cr.algebra.change_basis(names, &basis)?;
    let mut signs = Vec::with_capacity(n);
    for k in 0..n {
        let c = &algebra.bracket_basis(1 + 2 * k, 2 + 2 * k)[0];
        let s = if *c == Scalar::from_int(-2) {
            1
        } else if *c == Scalar::from_int(2) {
            -1
        } else {
            return Err(CrError::Choice(format!("[R{}, R{}] has T-coefficient {c}, expected ±2", 2 * k + 1, 2 * k + 2)));
        };
        signs.push(s);
    }
    if signs.windows(2).any(|w| w[0] < w[1]) {
        return Err(CrError::Choice("representatives must list positive Levi directions first".into()));
    }
    let p = signs.iter().filter(|&&s| s == 1).count();
    let sig = Signature::unordered(p, n - p)?;
    let model = minus_basis(sig);
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let expect = minus_coords(&model[1 + a].bracket(&model[1 + b])?, sig)[0].clone();
            let got = algebra.bracket_basis(1 + a, 1 + b)[0].clone();
            if got != expect {
                return Err(CrError::Choice(format!(
                    "[R{}, R{}] has T-coefficient {got}, the Levi normalization requires {expect}",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    Ok(Adapted { basis, algebra, sig, n, l_dim: lh.l_basis.len() })
}

/// Step (2): the map `𝔩 → csu(p,q)` induced by the action on `H` and on
/// `𝔨/(H + 𝔩)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injectivity {
    /// `α(l_j)` as g₀ elements.
    pub images: Vec<Mat>,
    pub kernel_dim: usize,
}

impl Injectivity {
    pub fn injective(&self) -> bool {
        self.kernel_dim == 0
    }
}

impl fmt::Display for Injectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.injective() {
            write!(f, "Injective")
        } else {
            write!(f, "NotInjectiveHenceFlat (kernel dimension {})", self.kernel_dim)
        }
    }
}

pub fn injectivity_shortcut(adapted: &Adapted) -> Result<Injectivity, CrError> {
    let n = adapted.n;
    let sig = adapted.sig;
    let alg = &adapted.algebra;
    let mut images = Vec::with_capacity(adapted.l_dim);
    for j in 0..adapted.l_dim {
        let lj = 1 + 2 * n + j;
        let mut real = Mat::zeros(2 * n, 2 * n);
        for b in 0..2 * n {
            let v = alg.bracket_basis(lj, 1 + b);
            if !v[0].is_zero() {
                return Err(CrError::Degenerate(format!("𝔩 element {j} does not preserve H")));
            }
            for r in 0..2 * n {
                real[(r, b)] = v[1 + r].clone();
            }
        }
        let c = alg.bracket_basis(lj, 0)[0].clone();
        let mut nc = Mat::zeros(n, n);
        for r in 0..n {
            for k in 0..n {
                let (re, im) = (&real[(2 * r, 2 * k)], &real[(2 * r + 1, 2 * k)]);
                if real[(2 * r, 2 * k + 1)] != -im || &real[(2 * r + 1, 2 * k + 1)] != re {
                    return Err(CrError::Degenerate(format!("𝔩 element {j} acts on H by a non complex-linear map")));
                }
                nc[(r, k)] = re + &(&Scalar::i() * im);
            }
        }
        let tr = nc.trace()?;
        let re_a = -&(&c * &Scalar::frac(1, 2));
        let im_a = -&(&tr.im() * &Scalar::frac(1, n as i64 + 2));
        let a = &re_a + &(&Scalar::i() * &im_a);
        let block = &nc + &Mat::identity(n).scale(&a);
        let (tres, hres) = g0_invariant_residuals(&a, &block, sig);
        if !tres.is_zero() || !hres.is_zero() {
            return Err(CrError::Degenerate(format!("𝔩 element {j} does not act by csu(p,q)")));
        }
        images.push(assemble_unchecked(&GradedParts::zero(n).with_g0(a, block), sig));
    }
    let r = rank(&images.iter().map(flatten).collect::<Vec<_>>());
    Ok(Injectivity { images, kernel_dim: adapted.l_dim - r })
}

/// Both formulations of the `ν` test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuTest {
    /// `ν[X, Y] = [νX, νY]` on structure constants.
    pub direct: bool,
    /// `Ad(s₀,₀) τ(νX, νY) = τ(X, Y)` identically in the skeleton unknowns.
    pub via_curvature: bool,
}

impl NuTest {
    pub fn passed(&self) -> bool {
        self.direct && self.via_curvature
    }
}

fn nu_direct(adapted: &Adapted) -> bool {
    let d = adapted.algebra.dim();
    for i in 0..d {
        for j in i + 1..d {
            let e = adapted.parity(i) * adapted.parity(j);
            let br = adapted.algebra.bracket_basis(i, j);
            if br.iter().enumerate().any(|(k, c)| !c.is_zero() && adapted.parity(k) != e) {
                return false;
            }
        }
    }
    true
}

fn nu_curvature(adapted: &Adapted, images: &[Mat]) -> Result<bool, CrError> {
    let (skel, _) = canonical_skeleton(&adapted.algebra, adapted.sig, images)?;
    let table = curvature_table(&skel);
    for ((i, j), t) in table.pairs() {
        let e = adapted.parity(i) * adapted.parity(j);
        let s = t.rows();
        for r in 0..s {
            for c in 0..s {
                let g = entry_grade(s, r, c);
                let sign = if g.rem_euclid(2) == 0 { 1 } else { -1 };
                if sign != e && !t[(r, c)].is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Step (3): is `ν` a Lie algebra automorphism, in both formulations.
pub fn nu_automorphism_test(cr: &CrAlgebra, choice: &BasisChoice) -> Result<NuTest, CrError> {
    let lh = derive_l_and_h(cr)?;
    let adapted = adapt(cr, &lh, choice)?;
    let inj = injectivity_shortcut(&adapted)?;
    Ok(NuTest { direct: nu_direct(&adapted), via_curvature: nu_curvature(&adapted, &inj.images)? })
}

/// Final verdict for one choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Symmetric(Box<Extension>),
    NotSymmetricForChoice(String),
    Undetermined(String),
}

impl Verdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Verdict::Symmetric(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Symmetric(_) => write!(f, "Symmetric"),
            Verdict::NotSymmetricForChoice(r) => write!(f, "NotSymmetricForChoice ({r})"),
            Verdict::Undetermined(r) => write!(f, "Undetermined ({r})"),
        }
    }
}

/// Everything computed by [`check_symmetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricReport {
    pub lh: LhData,
    pub sig: Signature,
    pub injectivity: Injectivity,
    pub nu: NuTest,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn flat_path(cr: &CrAlgebra, lh: &LhData, choice: &BasisChoice) -> Result<Verdict, CrError> {
    let Some(emb) = &cr.embedding else {
        return Ok(Verdict::Undetermined("flat geometry and no embedding supplied".into()));
    };
    let ext = Extension::new(cr.algebra.clone(), lh.l_basis.clone(), emb.sig, emb.alpha.clone(), Vec::new())?;
    if !is_flat(&ext) {
        return Ok(Verdict::Undetermined("the supplied embedding is not a homomorphism".into()));
    }
    ext.validate()?;
    let (row, z) = choice.symmetry.clone().unwrap_or_else(|| (vec![Scalar::zero(); emb.sig.n()], Scalar::zero()));
    let s = make_symmetry(&row, &z, emb.sig)?;
    let alpha_l: Vec<Vec<Scalar>> = ext.alpha_l().iter().map(flatten).collect();
    let mut alpha_hl = alpha_l.clone();
    alpha_hl.extend(choice.representatives.iter().map(|r| flatten(&ext.alpha_of(r))));
    for (k, r) in choice.representatives.iter().enumerate() {
        let a = ext.alpha_of(r);
        if !in_span0(&alpha_l, &flatten(&(&s.adjoint(&a) + &a))) {
            return Ok(Verdict::NotSymmetricForChoice(format!("Ad(s) is not −id on representative {k}")));
        }
    }
    let t = ext.alpha_of(&choice.complement);
    if !in_span0(&alpha_hl, &flatten(&(&s.adjoint(&t) - &t))) {
        return Ok(Verdict::NotSymmetricForChoice("Ad(s) does not fix the complement modulo H".into()));
    }
    Ok(Verdict::Symmetric(Box::new(ext)))
}

/// Steps (1)–(5) for one choice.
pub fn check_symmetric(cr: &CrAlgebra, choice: &BasisChoice) -> Result<SymmetricReport, CrError> {
    let lh = derive_l_and_h(cr)?;
    let adapted = adapt(cr, &lh, choice)?;
    let injectivity = injectivity_shortcut(&adapted)?;
    let nu = NuTest { direct: nu_direct(&adapted), via_curvature: nu_curvature(&adapted, &injectivity.images)? };
    let mut notes = vec!["group-level conditions not checked (algebra level only)".to_string()];
    let verdict = if !injectivity.injective() {
        notes.push(format!("𝔩 → csu(p,q) has kernel of dimension {}", injectivity.kernel_dim));
        flat_path(cr, &lh, choice)?
    } else if !nu.passed() {
        Verdict::NotSymmetricForChoice("ν is not an automorphism".into())
    } else {
        let (skel, _) = canonical_skeleton(&adapted.algebra, adapted.sig, &injectivity.images)?;
        match solve_normalization(&skel) {
            Err(ExtensionError::Inconsistent(label)) => {
                Verdict::NotSymmetricForChoice(format!("curvature component cannot vanish: {label}"))
            }
            Err(e) => return Err(e.into()),
            Ok(normalized) => {
                let ext = normalized.extension.pull_back(&cr.algebra, &adapted.basis)?;
                ext.validate()?;
                if !kostant_codifferential(&ext)?.iter().all(Mat::is_zero) {
                    return Err(CrError::Malformed("normalized extension fails the normality re-check".into()));
                }
                Verdict::Symmetric(Box::new(ext))
            }
        }
    };
    if injectivity.injective() && adapted.l_dim > 0 {
        notes.push("whether 𝔩 → csu(p,q) is the restriction of α or only its graded part is not decided".into());
    }
    Ok(SymmetricReport { lh, sig: adapted.sig, injectivity, nu, verdict, notes })
}

/// Parameters `(p₁, …, p₆)` when `b_inv` has the form
/// `[[(p₁p₂ − p₃p₄)/2, p₅, (p₅p₃ − 2p₆)/2], [p₆, p₄, p₂], [0, p₁, p₃]]`.
pub fn verify_variety_membership(b_inv: &Mat) -> Result<Option<[Scalar; 6]>, CrError> {
    if b_inv.rows() != 3 || b_inv.cols() != 3 {
        return Err(CrError::Malformed("expected a 3×3 matrix".into()));
    }
    inverse(b_inv).map_err(|_| CrError::Singular)?;
    if !b_inv.entries().all(Scalar::is_real) || !b_inv[(2, 0)].is_zero() {
        return Ok(None);
    }
    let p = [
        b_inv[(2, 1)].clone(),
        b_inv[(1, 2)].clone(),
        b_inv[(2, 2)].clone(),
        b_inv[(1, 1)].clone(),
        b_inv[(0, 1)].clone(),
        b_inv[(1, 0)].clone(),
    ];
    let half = Scalar::frac(1, 2);
    let top_left = &(&(&p[0] * &p[1]) - &(&p[2] * &p[3])) * &half;
    let top_right = &(&(&p[4] * &p[2]) - &(&p[5] * &Scalar::from_int(2))) * &half;
    if b_inv[(0, 0)] != top_left || b_inv[(0, 2)] != top_right {
        return Ok(None);
    }
    Ok(Some(p))
}

/// One choice examined in search mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub choice: BasisChoice,
    pub levi_signs: Vec<i64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    /// Number of symmetric candidates found.
    Symmetric(usize),
    NotSymmetric,
    Inconclusive,
}

/// Constraint system on the adapted basis and the candidates examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub unknowns: Vec<String>,
    pub equations: Vec<(String, Poly)>,
    pub candidates: Vec<Candidate>,
    pub verdict: SearchVerdict,
}

fn vec_unknowns(prefix: &str, d: usize) -> Vec<String> {
    (0..d).map(|i| format!("{prefix}_{i}")).collect()
}

fn poly_vec(names: &[String]) -> Vec<Poly> {
    names.iter().map(|s| Poly::var(s)).collect()
}

fn const_vec(v: &[Scalar]) -> Vec<Poly> {
    v.iter().map(|s| Poly::constant(s.clone())).collect()
}

fn poly_bracket(alg: &LieAlg, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let d = alg.dim();
    let mut out = vec![Poly::zero(); d];
    for (i, ui) in u.iter().enumerate().take(d) {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate().take(d) {
            if i == j || vj.is_zero() {
                continue;
            }
            let f = ui * vj;
            for (k, c) in alg.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &f.scale(c);
                }
            }
        }
    }
    out
}

fn lin(terms: &[(Poly, &[Poly])], d: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); d];
    for (c, v) in terms {
        for k in 0..d {
            out[k] = &out[k] + &(c * &v[k]);
        }
    }
    out
}

impl SearchReport {
    /// Whether a concrete choice with the given Levi signs solves the
    /// constraint system for some values of the auxiliary constants.
    pub fn contains(&self, choice: &BasisChoice, levi_signs: &[i64]) -> bool {
        let mut pinned = BTreeMap::new();
        for (i, c) in choice.complement.iter().enumerate() {
            pinned.insert(format!("t_{i}"), c.clone());
        }
        for (a, r) in choice.representatives.iter().enumerate() {
            for (i, c) in r.iter().enumerate() {
                pinned.insert(format!("r{a}_{i}"), c.clone());
            }
        }
        for (k, s) in levi_signs.iter().enumerate() {
            pinned.insert(format!("levi_{k}"), Scalar::from_int(*s));
        }
        let eqs: Vec<(String, Poly)> = self.equations.iter().map(|(l, p)| (l.clone(), p.substitute(&pinned))).collect();
        let rest: Vec<String> = self.unknowns.iter().filter(|u| !pinned.contains_key(*u)).cloned().collect();
        !matches!(solve_polynomial_system(&eqs, &rest), SystemSolution::Inconsistent(_))
    }
}

/// Search mode for `dim 𝔨 ≤ 4`: the constraint system on an unknown adapted
/// basis (affine: representatives in `H`, J-relation; quadratic: bracket
/// identities of the parity automorphism and the Levi normalization), then
/// candidate choices from a grid `{−1, 0, 1}` on the even representatives
/// and every sorted Levi sign pattern, each run through [`check_symmetric`].
pub fn search(cr: &CrAlgebra) -> Result<SearchReport, CrError> {
    let d = cr.dim();
    if d > 4 {
        return Err(CrError::SearchScope(d));
    }
    let lh = derive_l_and_h(cr)?;
    let n = lh.n();
    let m = lh.l_basis.len();
    let alg = &cr.algebra;
    let jm = lh.j_matrix(d);
    let mut unknowns = vec_unknowns("t", d);
    let t = poly_vec(&unknowns);
    let mut reps = Vec::new();
    for a in 0..2 * n {
        let names = vec_unknowns(&format!("r{a}"), d);
        reps.push(poly_vec(&names));
        unknowns.extend(names);
    }
    let levi: Vec<String> = (0..n).map(|k| format!("levi_{k}")).collect();
    unknowns.extend(levi.iter().cloned());
    let l_polys: Vec<Vec<Poly>> = lh.l_basis.iter().map(|v| const_vec(v)).collect();
    let mut eqs: Vec<(String, Poly)> = Vec::new();
    let phi = const_vec(&lh.transversal);
    let annihilator = if m == 0 {
        (0..d)
            .map(|k| {
                let mut e = vec![Scalar::zero(); d];
                e[k] = Scalar::one();
                e
            })
            .collect()
    } else {
        kernel(&Mat::from_fn(m, d, |r, c| lh.l_basis[r][c].clone()))
    };
    for (a, r) in reps.iter().enumerate() {
        let v = r.iter().zip(&phi).fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y));
        eqs.push((format!("R{} in H", a + 1), v));
    }
    for k in 0..n {
        let jr: Vec<Poly> = (0..d)
            .map(|i| (0..d).fold(Poly::zero(), |acc, j| &acc + &reps[2 * k][j].scale(&jm[(i, j)])))
            .collect();
        for (w, psi) in annihilator.iter().enumerate() {
            let v = (0..d).fold(Poly::zero(), |acc, i| &acc + &(&jr[i] - &reps[2 * k + 1][i]).scale(&psi[i]));
            eqs.push((format!("J R{} = R{} mod l [{w}]", 2 * k + 1, 2 * k + 2), v));
        }
    }
    let sig_model = Signature::unordered(n, 0)?;
    let model = minus_basis(sig_model);
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            // model T-coefficient with the positive signature, scaled by the sign
            let base = minus_coords(&model[1 + a].bracket(&model[1 + b])?, sig_model)[0].clone();
            let coef = if base.is_zero() { Poly::zero() } else { Poly::var(&levi[a / 2]).scale(&base) };
            let mut terms: Vec<(Poly, &[Poly])> = vec![(coef, &t[..])];
            let lam: Vec<String> = (0..m).map(|j| format!("lam_{a}_{b}_{j}")).collect();
            unknowns.extend(lam.iter().cloned());
            let lam_p = poly_vec(&lam);
            for j in 0..m {
                terms.push((lam_p[j].clone(), &l_polys[j][..]));
            }
            let rhs = lin(&terms, d);
            let br = poly_bracket(alg, &reps[a], &reps[b]);
            for i in 0..d {
                eqs.push((format!("[R{}, R{}] Levi [{i}]", a + 1, b + 1), &br[i] - &rhs[i]));
            }
        }
    }
    for a in 0..2 * n {
        let cs: Vec<String> = (0..2 * n).map(|b| format!("c_t_{a}_{b}")).collect();
        unknowns.extend(cs.iter().cloned());
        let cp = poly_vec(&cs);
        let terms: Vec<(Poly, &[Poly])> = (0..2 * n).map(|b| (cp[b].clone(), &reps[b][..])).collect();
        let rhs = lin(&terms, d);
        let br = poly_bracket(alg, &t, &reps[a]);
        for i in 0..d {
            eqs.push((format!("[T, R{}] odd [{i}]", a + 1), &br[i] - &rhs[i]));
        }
    }
    for j in 0..m {
        let kt = format!("kappa_{j}");
        unknowns.push(kt.clone());
        let mus: Vec<String> = (0..m).map(|k| format!("mu_{j}_{k}")).collect();
        unknowns.extend(mus.iter().cloned());
        let mp = poly_vec(&mus);
        let mut terms: Vec<(Poly, &[Poly])> = vec![(Poly::var(&kt), &t[..])];
        for k in 0..m {
            terms.push((mp[k].clone(), &l_polys[k][..]));
        }
        let rhs = lin(&terms, d);
        let br = poly_bracket(alg, &l_polys[j], &t);
        for i in 0..d {
            eqs.push((format!("[L{}, T] even [{i}]", j + 1), &br[i] - &rhs[i]));
        }
        for a in 0..2 * n {
            let nus: Vec<String> = (0..2 * n).map(|b| format!("nu_{j}_{a}_{b}")).collect();
            unknowns.extend(nus.iter().cloned());
            let np = poly_vec(&nus);
            let terms: Vec<(Poly, &[Poly])> = (0..2 * n).map(|b| (np[b].clone(), &reps[b][..])).collect();
            let rhs = lin(&terms, d);
            let br = poly_bracket(alg, &l_polys[j], &reps[a]);
            for i in 0..d {
                eqs.push((format!("[L{}, R{}] odd [{i}]", j + 1, a + 1), &br[i] - &rhs[i]));
            }
        }
    }
    for (k, s) in levi.iter().enumerate() {
        eqs.push((format!("levi sign {k}"), &(&Poly::var(s) * &Poly::var(s)) - &Poly::one()));
    }

    let mut candidates = Vec::new();
    let grid = [Scalar::from_int(-1), Scalar::zero(), Scalar::one()];
    let total = 3usize.pow((d * n) as u32);
    for code in 0..total {
        let mut c = code;
        let mut evens = Vec::with_capacity(n);
        for _ in 0..n {
            let v: Vec<Scalar> = (0..d)
                .map(|_| {
                    let s = grid[c % 3].clone();
                    c /= 3;
                    s
                })
                .collect();
            evens.push(v);
        }
        if evens.iter().any(|v| !dot(&lh.transversal, v).is_zero() || in_span0(&lh.l_basis, v)) {
            continue;
        }
        let mut representatives = Vec::with_capacity(2 * n);
        for v in &evens {
            representatives.push(v.clone());
            representatives.push(jm.apply(v)?);
        }
        for p in (0..=n).rev() {
            let signs: Vec<i64> = (0..n).map(|k| if k < p { 1 } else { -1 }).collect();
            let br = alg.bracket(&representatives[0], &representatives[1]);
            let complement = scale_vec(&br, &Scalar::frac(-1, 2 * signs[0]));
            if dot(&lh.transversal, &complement).is_zero() {
                continue;
            }
            let choice = BasisChoice::new(representatives.clone(), complement);
            let verdict = match check_symmetric(cr, &choice) {
                Ok(r) => r.verdict,
                Err(CrError::Choice(_)) => continue,
                Err(e) => Verdict::Undetermined(e.to_string()),
            };
            candidates.push(Candidate { choice, levi_signs: signs, verdict });
        }
    }
    let affine: Vec<(String, Poly)> = eqs.iter().filter(|(_, p)| p.degree() <= 1).cloned().collect();
    let count = candidates.iter().filter(|c| c.verdict.is_symmetric()).count();
    let verdict = if count > 0 {
        SearchVerdict::Symmetric(count)
    } else if matches!(solve_polynomial_system(&affine, &unknowns), SystemSolution::Inconsistent(_)) {
        SearchVerdict::NotSymmetric
    } else {
        SearchVerdict::Inconclusive
    };
    Ok(SearchReport { unknowns, equations: eqs, candidates, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    use crate::builtins::e2_cr;

    fn unit(d: usize, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); d];
        v[k] = Scalar::one();
        v
    }

    #[test]
    fn e2_l_and_h() {
        let lh = derive_l_and_h(&e2_cr()).unwrap();
        assert!(lh.l_basis.is_empty());
        assert_eq!(lh.h_basis.len(), 2);
        assert_eq!(lh.levi_signature, (0, 1));
        assert_eq!(lh.apply_j(&unit(3, 1)).unwrap(), unit(3, 2));
    }

    #[test]
    fn e2_choice_is_symmetric() {
        let r = check_symmetric(&e2_cr(), &builtins::e2_choice()).unwrap();
        assert_eq!(r.verdict, Verdict::Symmetric(Box::new(builtins::e2())));
    }

    #[test]
    fn parity_mixing_choice_rejected() {
        let choice = builtins::e2_mixing_choice();
        let nu = nu_automorphism_test(&e2_cr(), &choice).unwrap();
        assert!(!nu.direct && !nu.via_curvature);
        let r = check_symmetric(&e2_cr(), &choice).unwrap();
        assert!(matches!(r.verdict, Verdict::NotSymmetricForChoice(_)));
    }

    #[test]
    fn full_q_rejected() {
        let alg = builtins::e2_algebra();
        let q = (0..3).map(|k| unit(3, k)).collect();
        let cr = CrAlgebra::new(alg, q, None).unwrap();
        assert!(matches!(derive_l_and_h(&cr), Err(CrError::Degenerate(_))));
    }

    #[test]
    fn variety_examples() {
        let p = verify_variety_membership(&builtins::e2_distinguished_b_inv()).unwrap().unwrap();
        let expect = [1, 1, 0, 0, 0, 0].map(Scalar::from_int);
        assert_eq!(p, expect);
        assert_eq!(verify_variety_membership(&Mat::identity(3)).unwrap(), None);
        assert!(verify_variety_membership(&Mat::zeros(3, 3)).is_err());
    }

    #[test]
    fn sp11_flat_path() {
        let e = builtins::sp11();
        let cr = CrAlgebra::from_embedding(e.algebra.clone(), e.sig, e.alpha.clone()).unwrap();
        let lh = derive_l_and_h(&cr).unwrap();
        assert_eq!(lh.l_basis.len(), 5);
        assert_eq!(lh.levi_signature, (1, 1));
        let d = cr.dim();
        assert_eq!(lh.apply_j(&unit(d, 6)).unwrap(), unit(d, 7));
        assert_eq!(lh.apply_j(&unit(d, 8)).unwrap(), unit(d, 9));
        let choice = BasisChoice::new((6..10).map(|k| unit(d, k)).collect(), unit(d, 5));
        let r = check_symmetric(&cr, &choice).unwrap();
        assert!(!r.injectivity.injective());
        assert_eq!(r.verdict, Verdict::Symmetric(Box::new(e)));
    }

    #[test]
    fn e2_search_contains_distinguished_point() {
        let cr = e2_cr();
        let report = search(&cr).unwrap();
        let b = builtins::e2_distinguished_b_inv();
        let cols: Vec<Vec<Scalar>> = (0..3).map(|c| builtins::e2_from_standard(&(0..3).map(|r| b[(r, c)].clone()).collect::<Vec<_>>())).collect();
        let choice = BasisChoice::new(vec![cols[1].clone(), cols[2].clone()], cols[0].clone());
        assert!(report.contains(&choice, &[1]));
        assert!(!report.contains(&choice, &[-1]));
        assert!(matches!(report.verdict, SearchVerdict::Symmetric(_)));
    }
}
