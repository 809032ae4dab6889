use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalars::{Poly, Scalar};

use super::LinalgError;

/// Matrix entry: a commutative ring over ℚ(i, √d) with complex conjugation.
pub trait Entry:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Scalar) -> Self;
    fn scale(&self, k: &Scalar) -> Self;
    /// Conjugation that treats every unknown as real.
    fn conj_real(&self) -> Self;
    fn re_part(&self) -> Self;
    fn im_part(&self) -> Self;
    /// Conjugation, defined only for unknown-free entries.
    fn try_conj(&self) -> Option<Self>;
    fn as_scalar(&self) -> Option<Scalar>;
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn scale(&self, k: &Scalar) -> Self {
        self * k
    }
    fn conj_real(&self) -> Self {
        self.conj()
    }
    fn re_part(&self) -> Self {
        self.re()
    }
    fn im_part(&self) -> Self {
        self.im()
    }
    fn try_conj(&self) -> Option<Self> {
        Some(self.conj())
    }
    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }
}

impl Entry for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        Poly::constant(s)
    }
    fn scale(&self, k: &Scalar) -> Self {
        Poly::scale(self, k)
    }
    fn conj_real(&self) -> Self {
        Poly::conj_real(self)
    }
    fn re_part(&self) -> Self {
        Poly::re_part(self)
    }
    fn im_part(&self) -> Self {
        Poly::im_part(self)
    }
    fn try_conj(&self) -> Option<Self> {
        self.as_constant().map(|c| Poly::constant(c.conj()))
    }
    fn as_scalar(&self) -> Option<Scalar> {
        self.as_constant()
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Malformed("rows of unequal length".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix with the single entry `value` at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize, value: T) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(r, c)] = value;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn check_same(&self, o: &Self, op: &'static str) -> Result<(), LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (o.rows, o.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, LinalgError> {
        self.check_same(o, "add")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, LinalgError> {
        self.check_same(o, "sub")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (o.rows, o.cols),
            });
        }
        let mut out = Mat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(r, c)], T::zero());
                    out[(r, c)] = cur + &(a.clone() * b);
                }
            }
        }
        Ok(out)
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, o: &Self) -> Result<Self, LinalgError> {
        if !self.is_square() || !o.is_square() || self.rows != o.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "bracket",
                left: (self.rows, self.cols),
                right: (o.rows, o.cols),
            });
        }
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "apply",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| acc + &(self[(r, c)].clone() * &v[c]))
            })
            .collect())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.map(|x| x.scale(k))
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).fold(T::zero(), |acc, k| acc + &self[(k, k)]))
    }

    /// Conjugate transpose. Fails on entries containing unknowns.
    pub fn conj_transpose(&self) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].try_conj().ok_or(LinalgError::SymbolicConjugation)?);
            }
        }
        Ok(Mat { rows: self.cols, cols: self.rows, data })
    }

    /// Conjugate transpose treating unknowns as real.
    pub fn conj_transpose_real(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj_real())
    }

    pub fn re_part(&self) -> Self {
        self.map(Entry::re_part)
    }

    pub fn im_part(&self) -> Self {
        self.map(Entry::im_part)
    }

    /// Copy of the block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Mat::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Writes `b` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    /// All entries converted to scalars, if none contains unknowns.
    pub fn to_scalar(&self) -> Option<Mat<Scalar>> {
        let data: Option<Vec<Scalar>> = self.data.iter().map(Entry::as_scalar).collect();
        Some(Mat { rows: self.rows, cols: self.cols, data: data? })
    }
}

impl Mat<Scalar> {
    pub fn to_poly(&self) -> Mat<Poly> {
        self.map(|s| Poly::constant(s.clone()))
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<'a, T: Entry> Add<&'a Mat<T>> for &'a Mat<T> {
    type Output = Mat<T>;
    /// Panics on shape mismatch; see [`Mat::try_add`].
    fn add(self, o: &Mat<T>) -> Mat<T> {
        self.try_add(o).expect("matrix shapes differ")
    }
}

impl<'a, T: Entry> Sub<&'a Mat<T>> for &'a Mat<T> {
    type Output = Mat<T>;
    /// Panics on shape mismatch; see [`Mat::try_sub`].
    fn sub(self, o: &Mat<T>) -> Mat<T> {
        self.try_sub(o).expect("matrix shapes differ")
    }
}

impl<'a, T: Entry> Mul<&'a Mat<T>> for &'a Mat<T> {
    type Output = Mat<T>;
    /// Panics on shape mismatch; see [`Mat::try_mul`].
    fn mul(self, o: &Mat<T>) -> Mat<T> {
        self.try_mul(o).expect("matrix shapes incompatible")
    }
}

impl<T: Entry> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, r: usize, c: usize) -> Mat {
        Mat::unit(n, r, c, Scalar::one())
    }

    #[test]
    fn bracket_self_vanishes() {
        let a = &e(3, 0, 1) + &e(3, 2, 0);
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn bracket_with_diagonal() {
        let d = Mat::from_fn(3, 3, |r, c| {
            if r == c {
                Scalar::from_int(1 - r as i64)
            } else {
                Scalar::zero()
            }
        });
        assert_eq!(d.bracket(&e(3, 1, 0)).unwrap(), -&e(3, 1, 0));
    }

    #[test]
    fn bracket_giving_corner() {
        let a = &e(3, 1, 0) + &e(3, 2, 1);
        let b = &e(3, 1, 0).scale(&Scalar::i()) - &e(3, 2, 1).scale(&Scalar::i());
        let want = e(3, 2, 0).scale(&Scalar::cplx(0, 1, 2, 1));
        assert_eq!(a.bracket(&b).unwrap(), want);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        assert!(matches!(
            e(2, 0, 0).bracket(&e(3, 0, 0)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn conj_transpose_examples() {
        let a = e(2, 0, 1).scale(&Scalar::i());
        assert_eq!(a.conj_transpose().unwrap(), e(2, 1, 0).scale(&-Scalar::i()));
        let id: Mat = Mat::identity(3);
        assert_eq!(id.conj_transpose().unwrap(), id);
        let s = Mat::from_fn(3, 3, |r, c| match (r, c) {
            (1, 1) => Scalar::one(),
            (r, c) if r == c => Scalar::from_int(-1),
            _ => Scalar::zero(),
        });
        assert_eq!(s.conj_transpose().unwrap(), s);
    }

    #[test]
    fn symbolic_conjugation_rejected() {
        let m = Mat::from_rows(vec![vec![Poly::var("a")]]).unwrap();
        assert_eq!(m.conj_transpose(), Err(LinalgError::SymbolicConjugation));
        assert_eq!(m.conj_transpose_real(), m);
    }
}
