//! The graded model of `su(p+1, q+1)`.
//!
//! Matrices act on `F^{n+2}` with coordinates `(u_0, u_1..u_n, u_{n+1})` and
//! preserve `m(u, v) = Σ H_jk u_j conj(v_k)`. An element has the block form
//!
//! ```text
//! [[ a ,   Z   , i z  ],
//!  [ X ,   A   , -IZ* ],
//!  [i x, -X* I , -ā   ]]
//! ```
//!
//! with grades `-2` (x), `-1` (X), `0` (a, A), `1` (Z), `2` (z).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{inverse, Entry, LinalgError, Mat};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuError {
    #[error("invalid signature (p={p}, q={q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: &'static str },
    #[error("matrix is not in su(p+1,q+1): {0}")]
    NotMember(String),
    #[error("block data violates {0}")]
    InvariantViolation(&'static str),
    #[error("grade {0} is outside -2..=2")]
    BadGrade(i32),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Signature `(p, q)` of the Levi form; `n = p + q`.
///
/// `I = diag(+1 × p, −1 × q)`. [`Signature::new`] enforces `p ≤ q`;
/// [`Signature::unordered`] keeps the given order for data whose blocks are
/// written with more positive than negative directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self, SuError> {
        if p > q {
            return Err(SuError::InvalidSignature { p, q, reason: "p must not exceed q" });
        }
        Signature::unordered(p, q)
    }

    pub fn unordered(p: usize, q: usize) -> Result<Self, SuError> {
        if p + q == 0 {
            return Err(SuError::InvalidSignature { p, q, reason: "n = p + q must be positive" });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Matrix size `n + 2`.
    pub fn size(&self) -> usize {
        self.n() + 2
    }

    /// Diagonal entry `I_k` (0-based among the middle coordinates).
    pub fn levi_sign(&self, k: usize) -> i64 {
        if k < self.p {
            1
        } else {
            -1
        }
    }

    pub fn levi_sign_scalar(&self, k: usize) -> Scalar {
        Scalar::from_int(self.levi_sign(k))
    }

    /// Real dimension of `su(p+1, q+1)`.
    pub fn algebra_dim(&self) -> usize {
        self.size() * self.size() - 1
    }

    /// Real dimension of `g₋₂ ⊕ g₋₁`.
    pub fn minus_dim(&self) -> usize {
        2 * self.n() + 1
    }
}

/// The matrix `H` with `m(u, v) = Σ H_jk u_j conj(v_k)`.
pub fn hermitian_form_matrix(sig: Signature) -> Mat {
    let s = sig.size();
    let mut h = Mat::zeros(s, s);
    h[(0, s - 1)] = Scalar::one();
    h[(s - 1, 0)] = Scalar::one();
    for k in 0..sig.n() {
        h[(k + 1, k + 1)] = sig.levi_sign_scalar(k);
    }
    h
}

/// `m(u, v)`.
pub fn form_value(sig: Signature, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let h = hermitian_form_matrix(sig);
    let mut total = Scalar::zero();
    for j in 0..sig.size() {
        for k in 0..sig.size() {
            if !h[(j, k)].is_zero() {
                total = &total + &(&(&h[(j, k)] * &u[j]) * &v[k].conj());
            }
        }
    }
    total
}

/// Grade of the matrix entry `(r, c)`: `ε(r) − ε(c)` with `ε = (1, 0, …, 0, −1)`.
pub fn entry_grade(size: usize, r: usize, c: usize) -> i32 {
    let eps = |k: usize| -> i32 {
        if k == 0 {
            1
        } else if k == size - 1 {
            -1
        } else {
            0
        }
    };
    eps(r) - eps(c)
}

/// Block data of an element of `su(p+1, q+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedParts<T: Entry = Scalar> {
    /// g₋₂ coordinate (real).
    pub x: T,
    /// g₋₁ column `X`.
    pub col: Vec<T>,
    /// Corner entry `a` of the g₀ part.
    pub a: T,
    /// Middle block `A` of the g₀ part.
    pub block: Mat<T>,
    /// g₁ row `Z`.
    pub row: Vec<T>,
    /// g₂ coordinate (real).
    pub z: T,
}

impl<T: Entry> GradedParts<T> {
    pub fn zero(n: usize) -> Self {
        GradedParts {
            x: T::zero(),
            col: vec![T::zero(); n],
            a: T::zero(),
            block: Mat::zeros(n, n),
            row: vec![T::zero(); n],
            z: T::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn with_x(mut self, x: T) -> Self {
        self.x = x;
        self
    }

    pub fn with_col(mut self, col: Vec<T>) -> Self {
        self.col = col;
        self
    }

    pub fn with_g0(mut self, a: T, block: Mat<T>) -> Self {
        self.a = a;
        self.block = block;
        self
    }

    pub fn with_row(mut self, row: Vec<T>) -> Self {
        self.row = row;
        self
    }

    pub fn with_z(mut self, z: T) -> Self {
        self.z = z;
        self
    }
}

/// Builds the block matrix without checking the block invariants.
pub fn assemble_unchecked<T: Entry>(parts: &GradedParts<T>, sig: Signature) -> Mat<T> {
    let n = sig.n();
    let s = sig.size();
    let i = T::from_scalar(Scalar::i());
    let mut m = Mat::zeros(s, s);
    m[(0, 0)] = parts.a.clone();
    m[(s - 1, s - 1)] = -parts.a.conj_real();
    m[(0, s - 1)] = i.clone() * &parts.z;
    m[(s - 1, 0)] = i * &parts.x;
    for k in 0..n {
        let ik = sig.levi_sign_scalar(k);
        m[(0, k + 1)] = parts.row[k].clone();
        m[(k + 1, s - 1)] = -parts.row[k].conj_real().scale(&ik);
        m[(k + 1, 0)] = parts.col[k].clone();
        m[(s - 1, k + 1)] = -parts.col[k].conj_real().scale(&ik);
        for j in 0..n {
            m[(j + 1, k + 1)] = parts.block[(j, k)].clone();
        }
    }
    m
}

/// Checks the g₀ invariants `a + tr A − ā = 0` and `A* I + I A = 0`.
pub fn g0_invariant_residuals<T: Entry>(a: &T, block: &Mat<T>, sig: Signature) -> (T, Mat<T>) {
    let n = sig.n();
    let tr = (0..n).fold(T::zero(), |acc, k| acc + &block[(k, k)]);
    let trace_res = a.clone() + &tr - &a.conj_real();
    let im = Mat::from_fn(n, n, |r, c| {
        if r == c {
            T::from_scalar(sig.levi_sign_scalar(r))
        } else {
            T::zero()
        }
    });
    let res = &(&block.conj_transpose_real() * &im) + &(&im * block);
    (trace_res, res)
}

/// Builds the block matrix after validating the block invariants.
pub fn assemble(parts: &GradedParts, sig: Signature) -> Result<Mat, SuError> {
    let n = sig.n();
    if parts.col.len() != n || parts.row.len() != n || parts.block.rows() != n || parts.block.cols() != n {
        return Err(SuError::InvariantViolation("block sizes"));
    }
    if !parts.x.is_real() {
        return Err(SuError::InvariantViolation("x real (g₋₂)"));
    }
    if !parts.z.is_real() {
        return Err(SuError::InvariantViolation("z real (g₂)"));
    }
    let (tr, herm) = g0_invariant_residuals(&parts.a, &parts.block, sig);
    if !tr.is_zero() {
        return Err(SuError::InvariantViolation("a + tr A − conj(a) = 0 (g₀)"));
    }
    if !herm.is_zero() {
        return Err(SuError::InvariantViolation("A* I + I A = 0 (g₀)"));
    }
    Ok(assemble_unchecked(parts, sig))
}

/// `M* H + H M` (unknowns treated as real) and `tr M`.
pub fn membership_residual<T: Entry>(m: &Mat<T>, sig: Signature) -> (Mat<T>, T) {
    let h = hermitian_form_matrix(sig).map(|s| T::from_scalar(s.clone()));
    let res = &(&m.conj_transpose_real() * &h) + &(&h * m);
    let tr = m.trace().unwrap_or_else(|_| T::zero());
    (res, tr)
}

/// True when `m` lies in `su(p+1, q+1)`.
pub fn is_member<T: Entry>(m: &Mat<T>, sig: Signature) -> bool {
    if m.rows() != sig.size() || m.cols() != sig.size() {
        return false;
    }
    let (res, tr) = membership_residual(m, sig);
    res.is_zero() && tr.is_zero()
}

pub fn check_member<T: Entry>(m: &Mat<T>, sig: Signature) -> Result<(), SuError> {
    if m.rows() != sig.size() || m.cols() != sig.size() {
        return Err(SuError::NotMember(format!(
            "size {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            sig.size(),
            sig.size()
        )));
    }
    let (res, tr) = membership_residual(m, sig);
    if !res.is_zero() {
        return Err(SuError::NotMember("M*H + HM ≠ 0".into()));
    }
    if !tr.is_zero() {
        return Err(SuError::NotMember("trace ≠ 0".into()));
    }
    Ok(())
}

/// Reads the block data of a member (no checks).
pub fn decompose<T: Entry>(m: &Mat<T>, sig: Signature) -> GradedParts<T> {
    let n = sig.n();
    let s = sig.size();
    GradedParts {
        x: m[(s - 1, 0)].im_part(),
        col: (0..n).map(|k| m[(k + 1, 0)].clone()).collect(),
        a: m[(0, 0)].clone(),
        block: m.block(1, n + 1, 1, n + 1),
        row: (0..n).map(|k| m[(0, k + 1)].clone()).collect(),
        z: m[(0, s - 1)].im_part(),
    }
}

/// The grade-`k` part of a matrix: entries of other grades set to zero.
pub fn grade_part<T: Entry>(m: &Mat<T>, k: i32) -> Mat<T> {
    let s = m.rows();
    Mat::from_fn(s, s, |r, c| {
        if entry_grade(s, r, c) == k {
            m[(r, c)].clone()
        } else {
            T::zero()
        }
    })
}

/// Projection of a member onto the grade-`k` summand.
pub fn grade_project(m: &Mat, k: i32, sig: Signature) -> Result<Mat, SuError> {
    if !(-2..=2).contains(&k) {
        return Err(SuError::BadGrade(k));
    }
    check_member(m, sig)?;
    Ok(grade_part(m, k))
}

/// `g₋₂ ⊕ g₋₁` part.
pub fn minus_part<T: Entry>(m: &Mat<T>) -> Mat<T> {
    &grade_part(m, -2) + &grade_part(m, -1)
}

/// `g₀ ⊕ g₁ ⊕ g₂` part.
pub fn parabolic_part<T: Entry>(m: &Mat<T>) -> Mat<T> {
    m - &minus_part(m)
}

/// `g₁ ⊕ g₂` part.
pub fn plus_part<T: Entry>(m: &Mat<T>) -> Mat<T> {
    &grade_part(m, 1) + &grade_part(m, 2)
}

/// Grading element `diag(1, 0, …, 0, −1)`.
pub fn grading_element(sig: Signature) -> Mat {
    let s = sig.size();
    let mut m = Mat::zeros(s, s);
    m[(0, 0)] = Scalar::one();
    m[(s - 1, s - 1)] = Scalar::from_int(-1);
    m
}

/// Trace form `tr(MN)`.
pub fn trace_form<T: Entry>(m: &Mat<T>, n: &Mat<T>) -> Result<T, SuError> {
    Ok(m.try_mul(n)?.trace()?)
}

/// Real and imaginary parts of the Levi form at the origin:
/// `re = ½ x([X, iY])`, `im = ½ x([X, Y])` where `x` reads the g₋₂ coordinate.
pub fn levi_form(x_vec: &[Scalar], y_vec: &[Scalar], sig: Signature) -> (Scalar, Scalar) {
    let n = sig.n();
    let gx = assemble_unchecked(&GradedParts::zero(n).with_col(x_vec.to_vec()), sig);
    let iy: Vec<Scalar> = y_vec.iter().map(|y| &Scalar::i() * y).collect();
    let giy = assemble_unchecked(&GradedParts::zero(n).with_col(iy), sig);
    let gy = assemble_unchecked(&GradedParts::zero(n).with_col(y_vec.to_vec()), sig);
    let half = Scalar::frac(1, 2);
    let re = &decompose(&(&(&gx * &giy) - &(&giy * &gx)), sig).x * &half;
    let im = &decompose(&(&(&gx * &gy) - &(&gy * &gx)), sig).x * &half;
    (re, im)
}

/// Gram matrix of the real part of the Levi form on `ℝ^{2n}` with basis
/// `(e_1, i e_1, e_2, i e_2, …)`.
pub fn levi_gram(sig: Signature) -> Mat {
    let n = sig.n();
    let basis: Vec<Vec<Scalar>> = (0..2 * n)
        .map(|k| {
            let mut v = vec![Scalar::zero(); n];
            v[k / 2] = if k % 2 == 0 { Scalar::one() } else { Scalar::i() };
            v
        })
        .collect();
    Mat::from_fn(2 * n, 2 * n, |r, c| levi_form(&basis[r], &basis[c], sig).0)
}

/// Inertia of a real symmetric matrix: `(positive, negative, zero)` counts.
pub fn inertia(m: &Mat) -> Result<(usize, usize, usize), SuError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()).into());
    }
    if m != &m.transpose() || !m.entries().all(Scalar::is_real) {
        return Err(SuError::InvariantViolation("real symmetric matrix"));
    }
    let mut a = m.clone();
    let n = a.rows();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // row/col k += row/col j makes the pivot 2 a_kj ≠ 0
                add_sym(&mut a, k, j);
            } else {
                diag.push(Scalar::zero());
                k += 1;
                continue;
            }
        }
        let p = a[(k, k)].clone();
        let pinv = p.inv().expect("nonzero pivot");
        for r in k + 1..n {
            let f = &a[(r, k)] * &pinv;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &a[(r, c)] - &(&f * &a[(k, c)]);
                a[(r, c)] = v;
            }
            for rr in k..n {
                let v = &a[(rr, r)] - &(&f * &a[(rr, k)]);
                a[(rr, r)] = v;
            }
        }
        diag.push(p);
        k += 1;
    }
    let pos = diag.iter().filter(|d| d.real_sign() > 0).count();
    let neg = diag.iter().filter(|d| d.real_sign() < 0).count();
    Ok((pos, neg, n - pos - neg))
}

fn swap_sym(a: &mut Mat, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

fn add_sym(a: &mut Mat, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = &a[(i, c)] + &a[(j, c)];
        a[(i, c)] = v;
    }
    for r in 0..n {
        let v = &a[(r, i)] + &a[(r, j)];
        a[(r, i)] = v;
    }
}

/// Split of a g₀ element into its `u(p,q)` part (with `Re a = 0`) and the
/// coefficient of the grading element.
pub fn u_pq_complement_split(a: &Scalar, block: &Mat, sig: Signature) -> Result<((Scalar, Mat), Scalar), SuError> {
    let (tr, herm) = g0_invariant_residuals(a, block, sig);
    if !tr.is_zero() || !herm.is_zero() {
        return Err(SuError::InvariantViolation("csu(p,q) block data"));
    }
    let coef = a.re();
    Ok(((a - &coef, block.clone()), coef))
}

/// Coefficient of the grading element in the g₀ part of a member.
pub fn grading_coefficient<T: Entry>(m: &Mat<T>) -> T {
    m[(0, 0)].re_part()
}

/// Canonical basis of `g₋₂ ⊕ g₋₁`: `x = 1`, then `X = e_k`, `X = i e_k`.
pub fn minus_basis(sig: Signature) -> Vec<Mat> {
    let n = sig.n();
    let mut out = vec![assemble_unchecked(&GradedParts::zero(n).with_x(Scalar::one()), sig)];
    for k in 0..n {
        for unit in [Scalar::one(), Scalar::i()] {
            let mut col = vec![Scalar::zero(); n];
            col[k] = unit;
            out.push(assemble_unchecked(&GradedParts::zero(n).with_col(col), sig));
        }
    }
    out
}

/// Coordinates of the `g₋₂ ⊕ g₋₁` part in [`minus_basis`].
pub fn minus_coords<T: Entry>(m: &Mat<T>, sig: Signature) -> Vec<T> {
    let n = sig.n();
    let s = sig.size();
    let mut out = vec![m[(s - 1, 0)].im_part()];
    for k in 0..n {
        out.push(m[(k + 1, 0)].re_part());
        out.push(m[(k + 1, 0)].im_part());
    }
    out
}

/// Element of `g₋₂ ⊕ g₋₁` with the given coordinates.
pub fn from_minus_coords<T: Entry>(c: &[T], sig: Signature) -> Mat<T> {
    let n = sig.n();
    let i = T::from_scalar(Scalar::i());
    let col = (0..n).map(|k| c[1 + 2 * k].clone() + &(i.clone() * &c[2 + 2 * k])).collect();
    let parts = GradedParts::zero(n).with_x(c[0].clone()).with_col(col);
    assemble_unchecked(&parts, sig)
}

/// Canonical basis of `g₁ ⊕ g₂`: `Z = e_k`, `Z = i e_k`, then `z = 1`.
pub fn plus_basis(sig: Signature) -> Vec<Mat> {
    let n = sig.n();
    let mut out = Vec::new();
    for k in 0..n {
        for unit in [Scalar::one(), Scalar::i()] {
            let mut row = vec![Scalar::zero(); n];
            row[k] = unit;
            out.push(assemble_unchecked(&GradedParts::zero(n).with_row(row), sig));
        }
    }
    out.push(assemble_unchecked(&GradedParts::zero(n).with_z(Scalar::one()), sig));
    out
}

/// Gram matrix `G[i][j] = tr(plus_i · minus_j)`.
pub fn pairing_gram(sig: Signature) -> Mat {
    let minus = minus_basis(sig);
    let plus = plus_basis(sig);
    Mat::from_fn(plus.len(), minus.len(), |i, j| {
        trace_form(&plus[i], &minus[j]).expect("same size")
    })
}

/// Basis `ζ^a` of `g₁ ⊕ g₂` dual to [`minus_basis`] under the trace form.
pub fn dual_plus_basis(sig: Signature) -> Result<Vec<Mat>, SuError> {
    let plus = plus_basis(sig);
    let ginv = inverse(&pairing_gram(sig))?;
    let dim = plus.len();
    let s = sig.size();
    Ok((0..dim)
        .map(|a| {
            (0..dim).fold(Mat::zeros(s, s), |acc, j| &acc + &plus[j].scale(&ginv[(a, j)]))
        })
        .collect())
}

/// Real basis of `csu(p, q)` as g₀ matrices: the grading element first, then
/// `u(p, q)` elements `A = I S` for a basis of skew-Hermitian `S`.
pub fn g0_basis(sig: Signature) -> Vec<Mat> {
    let n = sig.n();
    let mut out = vec![grading_element(sig)];
    let mut skews: Vec<Mat> = Vec::new();
    for j in 0..n {
        skews.push(Mat::unit(n, j, j, Scalar::i()));
        for k in j + 1..n {
            let mut s = Mat::unit(n, j, k, Scalar::one());
            s[(k, j)] = Scalar::from_int(-1);
            skews.push(s);
            let mut t = Mat::unit(n, j, k, Scalar::i());
            t[(k, j)] = Scalar::i();
            skews.push(t);
        }
    }
    let im = Mat::from_fn(n, n, |r, c| if r == c { sig.levi_sign_scalar(r) } else { Scalar::zero() });
    for s in skews {
        let block = &im * &s;
        let tr = block.trace().expect("square");
        let a = -&(&tr * &Scalar::frac(1, 2));
        out.push(assemble_unchecked(&GradedParts::zero(n).with_g0(a, block), sig));
    }
    out
}

/// Real basis of `su(p+1, q+1)` ordered by grade: minus, g₀, plus.
pub fn su_basis(sig: Signature) -> Vec<Mat> {
    let mut out = minus_basis(sig);
    out.extend(g0_basis(sig));
    out.extend(plus_basis(sig));
    out
}

/// Coordinates of a member in [`su_basis`].
pub fn su_coords(m: &Mat, sig: Signature) -> Result<Vec<Scalar>, SuError> {
    check_member(m, sig)?;
    let n = sig.n();
    let p = decompose(m, sig);
    let mut out = minus_coords(m, sig);
    out.push(p.a.re());
    let im = |k: usize| sig.levi_sign_scalar(k);
    // S = I A
    for j in 0..n {
        out.push((&im(j) * &p.block[(j, j)]).im());
        for k in j + 1..n {
            let s = &im(j) * &p.block[(j, k)];
            out.push(s.re());
            out.push(s.im());
        }
    }
    for k in 0..n {
        out.push(p.row[k].re());
        out.push(p.row[k].im());
    }
    out.push(p.z.clone());
    Ok(out)
}
