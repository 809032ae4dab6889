//! Symmetries of the standard model at the base point `⟨e₀⟩` and their
//! enumeration under constraints on two null lines.
//!
//! A symmetry at `⟨e₀⟩` is
//!
//! ```text
//! s_{Z,z} = [[-1, -Z, i z + ½ Z I Z*],
//!            [ 0,  E, -I Z*         ],
//!            [ 0,  0, -1            ]]
//! ```
//!
//! parametrized by `Z = a + i b ∈ ℂⁿ*` and `z ∈ ℝ`; solution sets are affine
//! subspaces of `ℝ^{2n+1}` in the coordinates `(a_1..a_n, b_1..b_n, z)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve_affine, AffineEq, AffineSpace, LinalgError, Mat};
use crate::scalars::Scalar;
use crate::sualg::{form_value, hermitian_form_matrix, minus_basis, minus_coords, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("parameter z must be real")]
    NonRealZ,
    #[error("row Z has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("symmetry matrix violates {0}")]
    Convention(&'static str),
    #[error("vector {0} is not null for m")]
    NotNull(&'static str),
    #[error("vector {0} is zero")]
    ZeroVector(&'static str),
    #[error("u and v span the same line")]
    SameLine,
    #[error("vector {0} spans the base point ⟨e₀⟩")]
    BasePoint(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The matrix `s_{Z,z}` with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryMatrix {
    pub row: Vec<Scalar>,
    pub z: Scalar,
    pub sig: Signature,
    pub mat: Mat,
}

/// `Z I Z*`.
fn zizstar(row: &[Scalar], sig: Signature) -> Scalar {
    row.iter()
        .enumerate()
        .map(|(k, zk)| &(zk * &zk.conj()) * &sig.levi_sign_scalar(k))
        .sum()
}

/// The matrix `s_{Z,z}` without validation.
pub fn symmetry_matrix(row: &[Scalar], z: &Scalar, sig: Signature) -> Mat {
    let n = sig.n();
    let s = sig.size();
    let mut m = Mat::zeros(s, s);
    m[(0, 0)] = Scalar::from_int(-1);
    m[(s - 1, s - 1)] = Scalar::from_int(-1);
    m[(0, s - 1)] = &(&Scalar::i() * z) + &(&zizstar(row, sig) * &Scalar::frac(1, 2));
    for k in 0..n {
        m[(k + 1, k + 1)] = Scalar::one();
        m[(0, k + 1)] = -&row[k];
        m[(k + 1, s - 1)] = -(&sig.levi_sign_scalar(k) * &row[k].conj());
    }
    m
}

/// Builds `s_{Z,z}` and validates that it preserves `m`, fixes `⟨e₀⟩` and acts
/// by `−id` on `g₋₁` modulo the parabolic subalgebra.
pub fn make_symmetry(row: &[Scalar], z: &Scalar, sig: Signature) -> Result<SymmetryMatrix, SymmetryError> {
    let n = sig.n();
    if row.len() != n {
        return Err(SymmetryError::BadLength { expected: n, found: row.len() });
    }
    if !z.is_real() {
        return Err(SymmetryError::NonRealZ);
    }
    let mat = symmetry_matrix(row, z, sig);
    let h = hermitian_form_matrix(sig);
    if &(&mat.conj_transpose()? * &h) * &mat != h {
        return Err(SymmetryError::Convention("s* H s = H"));
    }
    if (1..sig.size()).any(|r| !mat[(r, 0)].is_zero()) {
        return Err(SymmetryError::Convention("s stabilizes ⟨e₀⟩"));
    }
    let sym = SymmetryMatrix { row: row.to_vec(), z: z.clone(), sig, mat };
    let basis = minus_basis(sig);
    for xi in &basis[1..] {
        let moved = &sym.adjoint(xi) + xi;
        if minus_coords(&moved, sig).iter().any(|c| !c.is_zero()) {
            return Err(SymmetryError::Convention("−id on g₋₁ modulo 𝔭"));
        }
    }
    Ok(sym)
}

impl SymmetryMatrix {
    /// `s⁻¹ = H s* H`.
    pub fn inverse(&self) -> Mat {
        let h = hermitian_form_matrix(self.sig);
        &(&h * &self.mat.conj_transpose().expect("scalar entries")) * &h
    }

    /// `Ad(s) M = s M s⁻¹`.
    pub fn adjoint(&self, m: &Mat) -> Mat {
        &(&self.mat * m) * &self.inverse()
    }

    pub fn square(&self) -> Mat {
        &self.mat * &self.mat
    }

    /// True when `s²` is a scalar multiple of the identity.
    pub fn is_involutive(&self) -> bool {
        let sq = self.square();
        let c = sq[(0, 0)].clone();
        sq == Mat::identity(self.sig.size()).scale(&c)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mat.apply(v).expect("vector length n+2")
    }
}

/// Free function form of [`SymmetryMatrix::is_involutive`].
pub fn is_involutive(s: &SymmetryMatrix) -> bool {
    s.is_involutive()
}

/// Two distinct null lines `⟨u⟩, ⟨v⟩`, neither equal to `⟨e₀⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullLinePair {
    u: Vec<Scalar>,
    v: Vec<Scalar>,
}

/// True when the vectors are proportional (all 2×2 minors vanish).
pub fn is_parallel(a: &[Scalar], b: &[Scalar]) -> bool {
    for j in 0..a.len() {
        for k in j + 1..a.len() {
            if &a[j] * &b[k] != &a[k] * &b[j] {
                return false;
            }
        }
    }
    true
}

fn base_point(size: usize) -> Vec<Scalar> {
    let mut e0 = vec![Scalar::zero(); size];
    e0[0] = Scalar::one();
    e0
}

impl NullLinePair {
    pub fn new(u: Vec<Scalar>, v: Vec<Scalar>, sig: Signature) -> Result<Self, SymmetryError> {
        let s = sig.size();
        for (name, w) in [("u", &u), ("v", &v)] {
            if w.len() != s {
                return Err(SymmetryError::BadLength { expected: s, found: w.len() });
            }
            if w.iter().all(Scalar::is_zero) {
                return Err(SymmetryError::ZeroVector(name));
            }
            if !form_value(sig, w, w).is_zero() {
                return Err(SymmetryError::NotNull(name));
            }
            if is_parallel(w, &base_point(s)) {
                return Err(SymmetryError::BasePoint(name));
            }
        }
        if is_parallel(&u, &v) {
            return Err(SymmetryError::SameLine);
        }
        Ok(NullLinePair { u, v })
    }

    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn v(&self) -> &[Scalar] {
        &self.v
    }
}

/// Orbit type of a pair of null lines under the stabilizer of `⟨e₀⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitCase {
    /// `m(u, v) ≠ 0`.
    NonIsotropicPair,
    /// `m(e₀, u) ≠ 0` and `m(e₀, v) ≠ 0`.
    Case1,
    /// Exactly one of `m(e₀, u)`, `m(e₀, v)` vanishes.
    Case2,
    /// Both vanish and `e₀ ∈ ⟨u, v⟩`.
    Case3,
    /// Both vanish and `e₀ ∉ ⟨u, v⟩`.
    Case4,
}

impl fmt::Display for OrbitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitCase::NonIsotropicPair => "non-isotropic pair",
            OrbitCase::Case1 => "case 1",
            OrbitCase::Case2 => "case 2",
            OrbitCase::Case3 => "case 3",
            OrbitCase::Case4 => "case 4",
        };
        write!(f, "{s}")
    }
}

pub fn classify_pair(pair: &NullLinePair, sig: Signature) -> OrbitCase {
    let e0 = base_point(sig.size());
    if !form_value(sig, &pair.u, &pair.v).is_zero() {
        return OrbitCase::NonIsotropicPair;
    }
    let mu = form_value(sig, &e0, &pair.u).is_zero();
    let mv = form_value(sig, &e0, &pair.v).is_zero();
    match (mu, mv) {
        (false, false) => OrbitCase::Case1,
        (true, false) | (false, true) => OrbitCase::Case2,
        (true, true) => {
            let span = vec![pair.u.clone(), pair.v.clone(), e0];
            if crate::linalg::rank(&span) == 2 {
                OrbitCase::Case3
            } else {
                OrbitCase::Case4
            }
        }
    }
}

/// Whether the symmetry keeps both lines or exchanges them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Preserve,
    Swap,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Preserve => write!(f, "preserve"),
            Mode::Swap => write!(f, "swap"),
        }
    }
}

fn unit_eq(m: usize, k: usize, rhs: Scalar) -> AffineEq {
    let mut coeffs = vec![Scalar::zero(); m];
    coeffs[k] = Scalar::one();
    AffineEq::new(coeffs, rhs)
}

/// Affine equations on `(a, b, z)` expressing `s_{Z,z} · u ∥ w`, or `None`
/// when no parameter value works.
fn line_condition(u: &[Scalar], w: &[Scalar], sig: Signature) -> Option<Vec<AffineEq>> {
    let n = sig.n();
    let last = n + 1;
    let m = 2 * n + 1;
    let mut eqs = Vec::new();
    if !w[last].is_zero() {
        // (s u)_{n+1} = -u_{n+1} = λ w_{n+1}
        if u[last].is_zero() {
            return None;
        }
        let lambda = -&(&u[last] / &w[last]);
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            // u_k - I_k conj(Z_k) u_{n+1} = λ w_k
            let zstar = &(&sig.levi_sign_scalar(k) * &(&u[k + 1] - &(&lambda * &w[k + 1]))) / &u[last];
            row.push(zstar.conj());
        }
        for (k, zk) in row.iter().enumerate() {
            eqs.push(unit_eq(m, k, zk.re()));
            eqs.push(unit_eq(m, n + k, zk.im()));
        }
        // -u_0 - Z u_mid + (i z + ½ Z I Z*) u_{n+1} = λ w_0
        let zu: Scalar = row.iter().enumerate().map(|(k, zk)| zk * &u[k + 1]).sum();
        let iz = &(&(&(&lambda * &w[0]) + &u[0]) + &zu) / &u[last];
        let iz = &iz - &(&zizstar(&row, sig) * &Scalar::frac(1, 2));
        let z = &iz / &Scalar::i();
        if !z.is_real() {
            return None;
        }
        eqs.push(unit_eq(m, 2 * n, z));
    } else {
        if !u[last].is_zero() {
            return None;
        }
        let j = (1..=n).find(|&j| !w[j].is_zero())?;
        let lambda = &u[j] / &w[j];
        if (1..=n).any(|k| u[k] != &lambda * &w[k]) {
            return None;
        }
        // -u_0 - Σ Z_k u_k = λ w_0, split into real and imaginary parts
        let r = -&(&u[0] + &(&lambda * &w[0]));
        let mut re = vec![Scalar::zero(); m];
        let mut im = vec![Scalar::zero(); m];
        for k in 0..n {
            let (ur, ui) = (u[k + 1].re(), u[k + 1].im());
            re[k] = ur.clone();
            re[n + k] = -&ui;
            im[k] = ui;
            im[n + k] = ur;
        }
        eqs.push(AffineEq::new(re, r.re()));
        eqs.push(AffineEq::new(im, r.im()));
    }
    Some(eqs)
}

/// Exact set of parameters `(a, b, z)` with `Z = a + i b` such that `s_{Z,z}`
/// preserves or swaps the two lines.
pub fn find_symmetries(pair: &NullLinePair, mode: Mode, sig: Signature) -> Result<AffineSpace, SymmetryError> {
    let m = 2 * sig.n() + 1;
    let (tu, tv) = match mode {
        Mode::Preserve => (&pair.u, &pair.v),
        Mode::Swap => (&pair.v, &pair.u),
    };
    let (Some(mut eqs), Some(more)) = (line_condition(&pair.u, tu, sig), line_condition(&pair.v, tv, sig)) else {
        return Ok(AffineSpace::empty(m));
    };
    eqs.extend(more);
    Ok(solve_affine(&eqs, m)?)
}

/// Splits a parameter point `(a, b, z)` into `(Z, z)`.
pub fn params_to_symmetry(point: &[Scalar], sig: Signature) -> (Vec<Scalar>, Scalar) {
    let n = sig.n();
    let row = (0..n).map(|k| &point[k] + &(&Scalar::i() * &point[n + k])).collect();
    (row, point[2 * n].clone())
}

/// Exact check that `s` maps the lines as `mode` requires.
pub fn verify_mode(s: &SymmetryMatrix, pair: &NullLinePair, mode: Mode) -> bool {
    let su = s.apply(&pair.u);
    let sv = s.apply(&pair.v);
    match mode {
        Mode::Preserve => is_parallel(&su, &pair.u) && is_parallel(&sv, &pair.v),
        Mode::Swap => is_parallel(&su, &pair.v) && is_parallel(&sv, &pair.u),
    }
}

/// Sample points of a solution set: the particular point and the particular
/// point plus and minus each direction.
pub fn sample_points(set: &AffineSpace) -> Vec<Vec<Scalar>> {
    let Some(p) = &set.particular else { return Vec::new() };
    let mut out = vec![p.clone()];
    for d in &set.directions {
        for sign in [1, -1] {
            let f = Scalar::from_int(sign);
            out.push(p.iter().zip(d).map(|(a, b)| a + &(b * &f)).collect());
        }
    }
    out
}

/// Checks every sample point of `set` through [`make_symmetry`] and
/// [`verify_mode`].
pub fn verify_solution_set(set: &AffineSpace, pair: &NullLinePair, mode: Mode, sig: Signature) -> Result<bool, SymmetryError> {
    for point in sample_points(set) {
        let (row, z) = params_to_symmetry(&point, sig);
        let s = make_symmetry(&row, &z, sig)?;
        if !verify_mode(&s, pair, mode) {
            return Ok(false);
        }
    }
    Ok(true)
}
