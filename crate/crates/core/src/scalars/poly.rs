use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Scalar, ScalarError};

/// Product of named unknowns with positive exponents, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let mut out: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &o.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial over ℚ(i, √d) in named unknowns.
///
/// Unknowns are real-valued coordinates; [`Poly::conj_real`], [`Poly::re_part`]
/// and [`Poly::im_part`] act on coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(name), Scalar::one());
        p
    }

    /// `c · name`.
    pub fn term(c: Scalar, name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(name), c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// The value if the polynomial has no unknowns.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Coefficient-wise conjugate; exact when all unknowns take real values.
    pub fn conj_real(&self) -> Poly {
        self.map_coeffs(Scalar::conj)
    }

    /// Real part, assuming real unknowns.
    pub fn re_part(&self) -> Poly {
        self.map_coeffs(Scalar::re)
    }

    /// Imaginary part, assuming real unknowns.
    pub fn im_part(&self) -> Poly {
        self.map_coeffs(Scalar::im)
    }

    /// Full evaluation; every unknown must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Scalar, ScalarError> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in &m.0 {
                let x = assignment
                    .get(v)
                    .ok_or_else(|| ScalarError::MissingUnknown(v.clone()))?;
                for _ in 0..*e {
                    val = &val * x;
                }
            }
            total = &total + &val;
        }
        Ok(total)
    }

    /// Partial evaluation: assigned unknowns are replaced, others kept.
    pub fn substitute(&self, assignment: &BTreeMap<String, Scalar>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            let mut rest = Vec::new();
            for (v, e) in &m.0 {
                match assignment.get(v) {
                    Some(x) => {
                        for _ in 0..*e {
                            val = &val * x;
                        }
                    }
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), val);
        }
        out
    }

    /// Coefficients along `unknowns` and the constant term, when the degree is
    /// at most one and no other unknown occurs.
    pub fn linear_form(&self, unknowns: &[String]) -> Option<(Vec<Scalar>, Scalar)> {
        if self.degree() > 1 {
            return None;
        }
        let mut coeffs = vec![Scalar::zero(); unknowns.len()];
        let mut constant = Scalar::zero();
        for (m, c) in &self.terms {
            match m.0.as_slice() {
                [] => constant = c.clone(),
                [(v, 1)] => {
                    let k = unknowns.iter().position(|u| u == v)?;
                    coeffs[k] = c.clone();
                }
                _ => return None,
            }
        }
        Some((coeffs, constant))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.0.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Poly {
        Poly::constant(c)
    }
}
