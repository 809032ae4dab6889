use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// Default radicand of the quadratic extension.
pub const DEFAULT_D: u32 = 2;

/// Element `c0 + c1 i + c2 √d + c3 i√d` of the field ℚ(i, √d).
///
/// The radicand travels with the value. Values whose `√d` part is zero are
/// compatible with every radicand; combining two values with nonzero `√d`
/// parts over different radicands panics, since towers are not supported.
#[derive(Clone, Debug)]
pub struct Scalar {
    c: [BigRational; 4],
    d: u32,
}

/// Gaussian rational `re + im i`, used internally for `A + B√d` arithmetic.
#[derive(Clone)]
struct Gauss {
    re: BigRational,
    im: BigRational,
}

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn scale(&self, k: &BigRational) -> Gauss {
        Gauss { re: &self.re * k, im: &self.im * k }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Gauss {
        let norm = &self.re * &self.re + &self.im * &self.im;
        Gauss { re: &self.re / &norm, im: -(&self.im / &norm) }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Returns true when `d` is a square-free integer greater than one.
pub fn is_valid_radicand(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Scalar {
    /// Builds `c0 + c1 i + c2 √d + c3 i√d`.
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational, d: u32) -> Self {
        Scalar { c: [c0, c1, c2, c3], d }
    }

    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Scalar::new(rat(0), rat(1), rat(0), rat(0), DEFAULT_D)
    }

    /// `√d`.
    pub fn sqrt_d(d: u32) -> Self {
        Scalar::new(rat(0), rat(0), rat(1), rat(0), d)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, rat(0), rat(0), rat(0), DEFAULT_D)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat(n))
    }

    /// The rational `num/den`. Panics when `den` is zero.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Gaussian rational `re + im i`.
    pub fn gauss(re: BigRational, im: BigRational) -> Self {
        Scalar::new(re, im, rat(0), rat(0), DEFAULT_D)
    }

    /// Gaussian rational from small fractions `(rn/rd) + (in/id) i`.
    pub fn cplx(rn: i64, rd: i64, in_: i64, id: i64) -> Self {
        Scalar::gauss(
            BigRational::new(BigInt::from(rn), BigInt::from(rd)),
            BigRational::new(BigInt::from(in_), BigInt::from(id)),
        )
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    /// Same value with the radicand replaced. Only meaningful before any
    /// arithmetic has mixed values.
    pub fn with_radicand(mut self, d: u32) -> Self {
        self.d = d;
        self
    }

    fn has_sqrt_part(&self) -> bool {
        !(self.c[2].is_zero() && self.c[3].is_zero())
    }

    fn joint_radicand(&self, o: &Scalar) -> u32 {
        match (self.has_sqrt_part(), o.has_sqrt_part()) {
            (true, true) => {
                assert_eq!(self.d, o.d, "mixed quadratic extensions ℚ(√{}) and ℚ(√{})", self.d, o.d);
                self.d
            }
            (true, false) => self.d,
            (false, true) => o.d,
            (false, false) => self.d,
        }
    }

    fn split(&self) -> (Gauss, Gauss) {
        (
            Gauss { re: self.c[0].clone(), im: self.c[1].clone() },
            Gauss { re: self.c[2].clone(), im: self.c[3].clone() },
        )
    }

    fn join(a: Gauss, b: Gauss, d: u32) -> Scalar {
        Scalar::new(a.re, a.im, b.re, b.im, d)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && !self.has_sqrt_part()
    }

    /// True when the value is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }

    /// True when the value lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && !self.has_sqrt_part()
    }

    /// The rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.c[0])
    }

    /// Complex conjugate: `i ↦ −i`, `√d` fixed.
    pub fn conj(&self) -> Scalar {
        Scalar::new(self.c[0].clone(), -self.c[1].clone(), self.c[2].clone(), -self.c[3].clone(), self.d)
    }

    /// Real part `(x + x̄)/2`.
    pub fn re(&self) -> Scalar {
        Scalar::new(self.c[0].clone(), rat(0), self.c[2].clone(), rat(0), self.d)
    }

    /// Imaginary part `(x − x̄)/2i`, a real scalar.
    pub fn im(&self) -> Scalar {
        Scalar::new(self.c[1].clone(), rat(0), self.c[3].clone(), rat(0), self.d)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (a, b) = self.split();
        let d = rat(self.d as i64);
        // (A + B√d)^{-1} = (A − B√d) / (A² − d B²)
        let norm = a.mul(&a).sub(&b.mul(&b).scale(&d));
        debug_assert!(!norm.is_zero());
        let ninv = norm.inv();
        let re = a.mul(&ninv);
        let sq = b.mul(&ninv);
        let sq = Gauss { re: -sq.re, im: -sq.im };
        Ok(Scalar::join(re, sq, self.d))
    }

    /// Checked division.
    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn scale_rational(&self, k: &BigRational) -> Scalar {
        Scalar::new(&self.c[0] * k, &self.c[1] * k, &self.c[2] * k, &self.c[3] * k, self.d)
    }

    /// Sign of a real scalar `c0 + c2 √d` as −1, 0 or 1. Panics on non-real input.
    pub fn real_sign(&self) -> i32 {
        assert!(self.is_real(), "sign of a non-real scalar");
        let s0 = self.c[0].signum();
        let s2 = self.c[2].signum();
        let sgn = |r: &BigRational| -> i32 {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        };
        let (a, b) = (sgn(&s0), sgn(&s2));
        if a == 0 {
            return b;
        }
        if b == 0 || a == b {
            return a;
        }
        let lhs = &self.c[0] * &self.c[0];
        let rhs = &self.c[2] * &self.c[2] * rat(self.d as i64);
        match lhs.cmp(&rhs) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => 0,
        }
    }

    /// Canonical four-string encoding `["c0","c1","c2","c3"]`.
    pub fn to_strings(&self) -> [String; 4] {
        [0, 1, 2, 3].map(|k| rational_to_string(&self.c[k]))
    }

    /// Parses the four-string encoding with radicand `d`.
    pub fn from_strings(parts: &[String], d: u32) -> Result<Scalar, ScalarError> {
        if parts.len() != 4 {
            return Err(ScalarError::Parse(format!("expected 4 coefficients, found {}", parts.len())));
        }
        let mut c = Vec::with_capacity(4);
        for p in parts {
            c.push(parse_rational(p)?);
        }
        let mut it = c.into_iter();
        Ok(Scalar::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            d,
        ))
    }
}

/// `"a/b"` or `"a"` for integers.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        self.c == o.c && (!self.has_sqrt_part() || self.d == o.d)
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let root = format!("√{}", self.d);
        let units = ["", "i", root.as_str(), &format!("i{root}")];
        let mut first = true;
        for (k, unit) in units.iter().enumerate() {
            let c = &self.c[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if unit.is_empty() {
                write!(f, "{}", rational_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{}{unit}", rational_to_string(&mag))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let d = self.joint_radicand(o);
        Scalar::new(
            &self.c[0] + &o.c[0],
            &self.c[1] + &o.c[1],
            &self.c[2] + &o.c[2],
            &self.c[3] + &o.c[3],
            d,
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let d = self.joint_radicand(o);
        Scalar::new(
            &self.c[0] - &o.c[0],
            &self.c[1] - &o.c[1],
            &self.c[2] - &o.c[2],
            &self.c[3] - &o.c[3],
            d,
        )
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let d = self.joint_radicand(o);
        let (a, b) = self.split();
        let (c, e) = o.split();
        let rd = rat(d as i64);
        let re = a.mul(&c).add(&b.mul(&e).scale(&rd));
        let sq = a.mul(&e).add(&b.mul(&c));
        Scalar::join(re, sq, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] to recover.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.c[0].clone(), -self.c[1].clone(), -self.c[2].clone(), -self.c[3].clone(), self.d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Scalar {
        Scalar::sqrt_d(2)
    }

    #[test]
    fn modulus_identity() {
        let a = Scalar::cplx(1, 2, 1, 1);
        let b = Scalar::cplx(1, 2, -1, 1);
        assert_eq!(&a * &b, Scalar::frac(5, 4));
    }

    #[test]
    fn conj_of_imaginary_root() {
        let x = -(&Scalar::i() * &s2());
        assert_eq!(x.conj(), &Scalar::i() * &s2());
    }

    #[test]
    fn inverse_of_root_two() {
        let inv = s2().inv().unwrap();
        assert_eq!(inv, &Scalar::frac(1, 2) * &s2());
        assert!((&inv * &s2()).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn real_sign_of_mixed_terms() {
        // 1 - √2 < 0, 3 - 2√2 > 0, -3 + 2√2 < 0
        assert_eq!((&Scalar::one() - &s2()).real_sign(), -1);
        assert_eq!((&Scalar::from_int(3) - &(&Scalar::from_int(2) * &s2())).real_sign(), 1);
        assert_eq!((&(&Scalar::from_int(2) * &s2()) - &Scalar::from_int(3)).real_sign(), -1);
        assert_eq!(Scalar::zero().real_sign(), 0);
    }

    #[test]
    fn string_round_trip() {
        let x = Scalar::new(rat(1) / rat(2), rat(-3), rat(0), rat(7) / rat(16), 3);
        let back = Scalar::from_strings(&x.to_strings(), 3).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.to_strings()[0], "1/2");
    }

    #[test]
    fn display_is_readable() {
        let x = &Scalar::cplx(0, 1, -3, 16) + &s2();
        assert_eq!(x.to_string(), "-3/16i + √2");
    }

    #[test]
    fn radicand_validation() {
        assert!(is_valid_radicand(2));
        assert!(is_valid_radicand(6));
        assert!(!is_valid_radicand(1));
        assert!(!is_valid_radicand(8));
    }
}
