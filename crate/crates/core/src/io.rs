//! JSON file formats for extensions, CR algebras and basis choices.
//!
//! Scalars are 4-arrays of rational strings `[c0, c1, c2, c3]` for
//! `c0 + c1 i + c2 √d + c3 i√d`; `d` is stored once per file. Canonical
//! output is pretty-printed JSON with a trailing newline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cralgebra::{BasisChoice, CrAlgebra, CrError, Embedding};
use crate::extensions::{Extension, ExtensionError, LieAlg};
use crate::linalg::{Entry, LinalgError, Mat};
use crate::scalars::{is_valid_radicand, parse_rational, Poly, Scalar, ScalarError, DEFAULT_D};
use crate::sualg::{Signature, SuError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Cr(#[from] CrError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn field<E: std::fmt::Display>(name: impl Into<String>) -> impl FnOnce(E) -> IoError {
    let field = name.into();
    move |e| IoError::Field { field, message: e.to_string() }
}

pub type ScalarRepr = [String; 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRepr {
    pub monomial: Vec<(String, u32)>,
    pub coeff: ScalarRepr,
}

/// A matrix entry: a scalar, or a polynomial as a list of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryRepr {
    Scalar(ScalarRepr),
    Poly(Vec<TermRepr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureRepr {
    pub p: usize,
    pub q: usize,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRepr {
    pub dim: usize,
    pub names: Vec<String>,
    /// Sparse `[i, j, k, c]` with `[e_i, e_j] ∋ c e_k`, `i < j`.
    pub structure_constants: Vec<(usize, usize, usize, ScalarRepr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub signature: SignatureRepr,
    pub algebra: AlgebraRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_basis: Option<Vec<Vec<ScalarRepr>>>,
    pub alpha: Vec<Vec<Vec<EntryRepr>>>,
    #[serde(default)]
    pub unknowns: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingRepr {
    pub signature: SignatureRepr,
    pub alpha: Vec<Vec<Vec<ScalarRepr>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrFile {
    pub d: u32,
    pub algebra: AlgebraRepr,
    /// Complex coordinate vectors spanning `𝔮`.
    pub q_basis: Vec<Vec<ScalarRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoiceFile {
    pub d: u32,
    pub representatives: Vec<Vec<ScalarRepr>>,
    pub complement: Vec<ScalarRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_row: Option<Vec<ScalarRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_z: Option<ScalarRepr>,
}

/// Radicand shared by all scalars with a `√d` part, or the default.
fn file_radicand<'a>(scalars: impl IntoIterator<Item = &'a Scalar>) -> u32 {
    scalars
        .into_iter()
        .find(|s| !s.coeffs()[2..].iter().all(num_traits::Zero::is_zero))
        .map(Scalar::radicand)
        .unwrap_or(DEFAULT_D)
}

fn check_radicand(d: u32) -> Result<u32, IoError> {
    if is_valid_radicand(d) {
        Ok(d)
    } else {
        Err(IoError::Field { field: "d".into(), message: format!("{d} is not a square-free integer > 1") })
    }
}

pub fn scalar_repr(s: &Scalar) -> ScalarRepr {
    s.to_strings()
}

pub fn parse_scalar(r: &ScalarRepr, d: u32, name: &str) -> Result<Scalar, IoError> {
    Scalar::from_strings(r, d).map_err(field::<ScalarError>(name))
}

fn parse_vec(v: &[ScalarRepr], d: u32, name: &str) -> Result<Vec<Scalar>, IoError> {
    v.iter().enumerate().map(|(k, s)| parse_scalar(s, d, &format!("{name}[{k}]"))).collect()
}

fn parse_vecs(v: &[Vec<ScalarRepr>], d: u32, name: &str) -> Result<Vec<Vec<Scalar>>, IoError> {
    v.iter().enumerate().map(|(k, s)| parse_vec(s, d, &format!("{name}[{k}]"))).collect()
}

fn vec_repr(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(scalar_repr).collect()
}

fn mat_repr(m: &Mat) -> Vec<Vec<ScalarRepr>> {
    m.to_rows().iter().map(|r| vec_repr(r)).collect()
}

fn parse_mat(rows: &[Vec<ScalarRepr>], d: u32, name: &str) -> Result<Mat, IoError> {
    Mat::from_rows(parse_vecs(rows, d, name)?).map_err(field::<LinalgError>(name))
}

pub fn poly_repr(p: &Poly) -> EntryRepr {
    match p.as_constant() {
        Some(c) => EntryRepr::Scalar(scalar_repr(&c)),
        None => EntryRepr::Poly(
            p.terms()
                .map(|(m, c)| TermRepr { monomial: m.factors().to_vec(), coeff: scalar_repr(c) })
                .collect(),
        ),
    }
}

fn parse_entry(e: &EntryRepr, d: u32, name: &str) -> Result<Poly, IoError> {
    match e {
        EntryRepr::Scalar(s) => Ok(Poly::constant(parse_scalar(s, d, name)?)),
        EntryRepr::Poly(terms) => {
            let mut out = Poly::zero();
            for t in terms {
                let mut term = Poly::constant(parse_scalar(&t.coeff, d, name)?);
                for (v, e) in &t.monomial {
                    for _ in 0..*e {
                        term = &term * &Poly::var(v);
                    }
                }
                out = &out + &term;
            }
            Ok(out)
        }
    }
}

pub fn algebra_repr(alg: &LieAlg) -> AlgebraRepr {
    AlgebraRepr {
        dim: alg.dim(),
        names: alg.names().to_vec(),
        structure_constants: alg.entries().into_iter().map(|(i, j, k, c)| (i, j, k, scalar_repr(&c))).collect(),
    }
}

pub fn parse_algebra(a: &AlgebraRepr, d: u32) -> Result<LieAlg, IoError> {
    if a.names.len() != a.dim {
        return Err(IoError::Field {
            field: "algebra.names".into(),
            message: format!("{} names for dimension {}", a.names.len(), a.dim),
        });
    }
    let mut entries = Vec::with_capacity(a.structure_constants.len());
    for (n, (i, j, k, c)) in a.structure_constants.iter().enumerate() {
        entries.push((*i, *j, *k, parse_scalar(c, d, &format!("algebra.structure_constants[{n}]"))?));
    }
    Ok(LieAlg::new(a.names.clone(), &entries)?)
}

fn signature_repr(sig: Signature, d: u32) -> SignatureRepr {
    SignatureRepr { p: sig.p(), q: sig.q(), d }
}

fn parse_signature(s: &SignatureRepr) -> Result<(Signature, u32), IoError> {
    let d = check_radicand(s.d)?;
    let sig = Signature::unordered(s.p, s.q).map_err(field::<SuError>("signature"))?;
    Ok((sig, d))
}

fn unit_index(v: &[Scalar]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
    (nz.len() == 1 && v[nz[0]].is_one()).then(|| nz[0])
}

fn extension_file<T: Entry>(ext: &Extension<T>, entry: impl Fn(&T) -> EntryRepr, d: u32) -> ExtensionFile {
    let indices: Option<Vec<usize>> = ext.l_basis.iter().map(|v| unit_index(v)).collect();
    let (l_indices, l_basis) = match indices {
        Some(ix) => (Some(ix), None),
        None => (None, Some(ext.l_basis.iter().map(|v| vec_repr(v)).collect())),
    };
    ExtensionFile {
        signature: signature_repr(ext.sig, d),
        algebra: algebra_repr(&ext.algebra),
        l_indices,
        l_basis,
        alpha: ext.alpha.iter().map(|m| m.to_rows().iter().map(|r| r.iter().map(&entry).collect()).collect()).collect(),
        unknowns: ext.unknowns.clone(),
    }
}

fn all_scalars(ext: &Extension) -> impl Iterator<Item = &Scalar> {
    ext.alpha.iter().flat_map(|m| m.entries()).chain(ext.l_basis.iter().flatten())
}

/// File form of a constant extension.
pub fn extension_to_file(ext: &Extension) -> ExtensionFile {
    let d = file_radicand(all_scalars(ext));
    extension_file(ext, |s| EntryRepr::Scalar(scalar_repr(s)), d)
}

/// File form of an extension with unknowns.
pub fn poly_extension_to_file(ext: &Extension<Poly>) -> ExtensionFile {
    let coeffs: Vec<Scalar> = ext.alpha.iter().flat_map(|m| m.entries()).flat_map(|p| p.terms().map(|(_, c)| c.clone())).collect();
    let d = file_radicand(coeffs.iter());
    extension_file(ext, poly_repr, d)
}

/// Parses an extension, possibly with unknowns.
pub fn poly_extension_from_file(f: &ExtensionFile) -> Result<Extension<Poly>, IoError> {
    let (sig, d) = parse_signature(&f.signature)?;
    let algebra = parse_algebra(&f.algebra, d)?;
    let l_basis = match (&f.l_indices, &f.l_basis) {
        (Some(ix), None) => ix
            .iter()
            .map(|&k| {
                if k < algebra.dim() {
                    Ok(algebra.unit(k))
                } else {
                    Err(IoError::Field { field: "l_indices".into(), message: format!("index {k} out of range") })
                }
            })
            .collect::<Result<_, _>>()?,
        (None, Some(b)) => parse_vecs(b, d, "l_basis")?,
        (None, None) => Vec::new(),
        (Some(_), Some(_)) => {
            return Err(IoError::Field { field: "l_indices".into(), message: "give l_indices or l_basis, not both".into() })
        }
    };
    let mut alpha = Vec::with_capacity(f.alpha.len());
    for (k, rows) in f.alpha.iter().enumerate() {
        let name = format!("alpha[{k}]");
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_entry(e, d, &name)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        alpha.push(Mat::from_rows(parsed).map_err(field::<LinalgError>(name))?);
    }
    Ok(Extension::new(algebra, l_basis, sig, alpha, f.unknowns.clone())?)
}

/// Parses a constant extension; unknowns are rejected.
pub fn extension_from_file(f: &ExtensionFile) -> Result<Extension, IoError> {
    let ext = poly_extension_from_file(f)?;
    let alpha = ext
        .alpha
        .iter()
        .enumerate()
        .map(|(k, m)| {
            m.to_scalar().ok_or_else(|| IoError::Field {
                field: format!("alpha[{k}]"),
                message: "contains unknowns; only constant extensions are accepted here".into(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Extension::new(ext.algebra, ext.l_basis, ext.sig, alpha, Vec::new())?)
}

pub fn cr_to_file(cr: &CrAlgebra) -> CrFile {
    let mut scalars: Vec<&Scalar> = cr.q_basis.iter().flatten().collect();
    if let Some(e) = &cr.embedding {
        scalars.extend(e.alpha.iter().flat_map(|m| m.entries()));
    }
    let d = file_radicand(scalars);
    CrFile {
        d,
        algebra: algebra_repr(&cr.algebra),
        q_basis: cr.q_basis.iter().map(|v| vec_repr(v)).collect(),
        embedding: cr
            .embedding
            .as_ref()
            .map(|e| EmbeddingRepr { signature: signature_repr(e.sig, d), alpha: e.alpha.iter().map(mat_repr).collect() }),
    }
}

pub fn cr_from_file(f: &CrFile) -> Result<CrAlgebra, IoError> {
    let d = check_radicand(f.d)?;
    let algebra = parse_algebra(&f.algebra, d)?;
    let q = parse_vecs(&f.q_basis, d, "q_basis")?;
    let embedding = match &f.embedding {
        None => None,
        Some(e) => {
            let (sig, _) = parse_signature(&e.signature)?;
            let alpha = e
                .alpha
                .iter()
                .enumerate()
                .map(|(k, m)| parse_mat(m, d, &format!("embedding.alpha[{k}]")))
                .collect::<Result<_, _>>()?;
            Some(Embedding { sig, alpha })
        }
    };
    Ok(CrAlgebra::new(algebra, q, embedding)?)
}

pub fn choice_to_file(c: &BasisChoice) -> ChoiceFile {
    let mut scalars: Vec<&Scalar> = c.representatives.iter().flatten().chain(&c.complement).collect();
    if let Some((row, z)) = &c.symmetry {
        scalars.extend(row.iter().chain([z]));
    }
    ChoiceFile {
        d: file_radicand(scalars),
        representatives: c.representatives.iter().map(|v| vec_repr(v)).collect(),
        complement: vec_repr(&c.complement),
        symmetry_row: c.symmetry.as_ref().map(|(row, _)| vec_repr(row)),
        symmetry_z: c.symmetry.as_ref().map(|(_, z)| scalar_repr(z)),
    }
}

pub fn choice_from_file(f: &ChoiceFile) -> Result<BasisChoice, IoError> {
    let d = check_radicand(f.d)?;
    let symmetry = match (&f.symmetry_row, &f.symmetry_z) {
        (None, None) => None,
        (Some(row), z) => Some((
            parse_vec(row, d, "symmetry_row")?,
            match z {
                Some(z) => parse_scalar(z, d, "symmetry_z")?,
                None => Scalar::zero(),
            },
        )),
        (None, Some(_)) => {
            return Err(IoError::Field { field: "symmetry_row".into(), message: "symmetry_z given without a row".into() })
        }
    };
    Ok(BasisChoice {
        representatives: parse_vecs(&f.representatives, d, "representatives")?,
        complement: parse_vec(&f.complement, d, "complement")?,
        symmetry,
    })
}

/// Parses a scalar written as a sum of terms such as `1/2`, `-3i` or
/// `i*sqrt(2)`. Each term is a product of a rational, `i` and `√d` or
/// `sqrt(d)` factors, where `d` is the radicand of the field.
pub fn parse_scalar_text(text: &str, d: u32) -> Result<Scalar, IoError> {
    let bad = |m: &str| IoError::Field { field: "scalar".into(), message: format!("{m} in {text:?}") };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty scalar"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (k, c) in s.char_indices() {
        if (c == '+' || c == '-') && k > 0 {
            terms.push(&s[start..k]);
            start = k;
        }
    }
    terms.push(&s[start..]);
    let mut total = Scalar::zero();
    for term in terms {
        let (neg, body) = match term.chars().next() {
            Some('-') => (true, &term[1..]),
            Some('+') => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let mut value = Scalar::one();
        let mut rest = body;
        while !rest.is_empty() {
            rest = rest.strip_prefix('*').unwrap_or(rest);
            if let Some(r) = rest.strip_prefix('i') {
                value = &value * &Scalar::i();
                rest = r;
            } else if let Some(r) = rest.strip_prefix("sqrt(").or_else(|| rest.strip_prefix('√')) {
                let close = r.strip_prefix('(').unwrap_or(r);
                let digits: String = close.chars().take_while(char::is_ascii_digit).collect();
                let n: u32 = digits.parse().map_err(|_| bad("missing radicand"))?;
                if n != d {
                    return Err(bad(&format!("radicand {n} differs from the field radicand {d}")));
                }
                value = &value * &Scalar::sqrt_d(d);
                rest = &close[digits.len()..];
                rest = rest.strip_prefix(')').unwrap_or(rest);
            } else {
                let len = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
                if len == 0 {
                    return Err(bad("unexpected character"));
                }
                let r = parse_rational(&rest[..len]).map_err(|e| bad(&e.to_string()))?;
                value = value.scale_rational(&r);
                rest = &rest[len..];
            }
        }
        total = if neg { &total - &value } else { &total + &value };
    }
    Ok(total)
}

/// Comma-separated list of scalars.
pub fn parse_vector_text(text: &str, d: u32) -> Result<Vec<Scalar>, IoError> {
    text.split(',').map(|t| parse_scalar_text(t, d)).collect()
}

/// Canonical serialization: pretty JSON plus a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file structs serialize");
    s.push('\n');
    s
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn extension_to_json(ext: &Extension) -> String {
    to_canonical(&extension_to_file(ext))
}

pub fn extension_from_json(text: &str) -> Result<Extension, IoError> {
    extension_from_file(&parse(text)?)
}

pub fn cr_to_json(cr: &CrAlgebra) -> String {
    to_canonical(&cr_to_file(cr))
}

pub fn cr_from_json(text: &str) -> Result<CrAlgebra, IoError> {
    cr_from_file(&parse(text)?)
}

pub fn choice_to_json(c: &BasisChoice) -> String {
    to_canonical(&choice_to_file(c))
}

pub fn choice_from_json(text: &str) -> Result<BasisChoice, IoError> {
    choice_from_file(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::extensions::canonical_skeleton;

    #[test]
    fn extension_round_trip() {
        for ext in [builtins::e2(), builtins::sp11(), builtins::standard(builtins::standard_signature())] {
            let text = extension_to_json(&ext);
            let back = extension_from_json(&text).unwrap();
            assert_eq!(back, ext);
            assert_eq!(extension_to_json(&back), text);
        }
    }

    #[test]
    fn skeleton_round_trip() {
        let (skel, _) = canonical_skeleton(&builtins::e2_algebra(), builtins::e2_signature(), &[]).unwrap();
        let text = to_canonical(&poly_extension_to_file(&skel));
        let back = poly_extension_from_file(&parse(&text).unwrap()).unwrap();
        assert_eq!(back, skel);
        assert!(extension_from_json(&text).is_err());
    }

    #[test]
    fn cr_and_choice_round_trip() {
        let e = builtins::e2();
        let cr = CrAlgebra::from_embedding(e.algebra, e.sig, e.alpha).unwrap();
        assert_eq!(cr_from_json(&cr_to_json(&cr)).unwrap(), cr);
        let choice = BasisChoice {
            representatives: vec![vec![Scalar::zero(), Scalar::one(), Scalar::zero()]],
            complement: vec![Scalar::one(), Scalar::zero(), Scalar::sqrt_d(3)],
            symmetry: Some((vec![Scalar::i()], Scalar::zero())),
        };
        let text = choice_to_json(&choice);
        assert!(text.contains("\"d\": 3"));
        assert_eq!(choice_from_json(&text).unwrap(), choice);
    }

    #[test]
    fn parse_errors_carry_location() {
        match extension_from_json("{\n  \"signature\": 3\n}") {
            Err(IoError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let mut f = extension_to_file(&builtins::e2());
        f.alpha[0][0][0] = EntryRepr::Scalar(["x".into(), "0".into(), "0".into(), "0".into()]);
        match extension_from_file(&f) {
            Err(IoError::Field { field, .. }) => assert_eq!(field, "alpha[0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scalar_text() {
        let r2 = Scalar::sqrt_d(2);
        assert_eq!(parse_scalar_text("1/2", 2).unwrap(), Scalar::frac(1, 2));
        assert_eq!(parse_scalar_text("-i*sqrt(2)", 2).unwrap(), -&(&Scalar::i() * &r2));
        assert_eq!(parse_scalar_text("1 + i - 3/2√2", 2).unwrap(), &Scalar::cplx(1, 1, 1, 1) - &r2.scale_rational(&parse_rational("3/2").unwrap()));
        assert_eq!(parse_vector_text("0,i,2", 2).unwrap(), vec![Scalar::zero(), Scalar::i(), Scalar::from_int(2)]);
        assert!(parse_scalar_text("sqrt(3)", 2).is_err());
        assert!(parse_scalar_text("x", 2).is_err());
        assert!(parse_scalar_text("1+", 2).is_err());
    }
}
