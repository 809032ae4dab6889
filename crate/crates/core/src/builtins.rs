//! Built-in example data: the non-flat E(2) extension, the flat `sp(1,1)` and
//! `sp(4,ℝ)` subalgebras of `su(2,2)`, the standard inclusion, and the null
//! line pairs of the symmetry examples.

use crate::cralgebra::{BasisChoice, CrAlgebra};
use crate::extensions::{canonical_skeleton, Extension, ExtensionError, LieAlg, SkeletonUnknowns};
use crate::linalg::Mat;
use crate::scalars::{Poly, Scalar};
use crate::sualg::{minus_basis, su_basis, Signature};
use crate::symmetries::{Mode, OrbitCase};

/// Names of the builtins known to the command line.
pub const NAMES: [&str; 6] = ["e2", "sp11", "sp4r", "standard", "exam61", "exam62"];

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn mat(rows: Vec<Vec<Scalar>>) -> Mat {
    Mat::from_rows(rows).expect("rectangular literal")
}

/// `e(2)` on the basis `(T_x, T_1, T_2)` read off the domain matrices
/// `x/2 ↦ T_x`, rotation `↦ T_1`, translation `↦ T_2`:
/// `[T_x, T_1] = −½ T_2`, `[T_1, T_2] = −2 T_x`, `[T_x, T_2] = 0`.
pub fn e2_algebra() -> LieAlg {
    LieAlg::new(
        names(&["T_x", "T1", "T2"]),
        &[(0, 1, 2, Scalar::frac(-1, 2)), (1, 2, 0, Scalar::from_int(-2))],
    )
    .expect("e(2) satisfies Jacobi")
}

/// The same algebra on the basis `(e_1, e_2, rot)` with `[rot, e_1] = e_2`,
/// `[rot, e_2] = −e_1`.
pub fn e2_standard_algebra() -> LieAlg {
    LieAlg::new(
        names(&["e1", "e2", "rot"]),
        &[(2, 0, 1, Scalar::one()), (2, 1, 0, Scalar::from_int(-1))],
    )
    .expect("e(2) satisfies Jacobi")
}

/// Coordinates in the builtin basis `(T_x, T_1, T_2)` of a vector given in
/// `(e_1, e_2, rot)`.
pub fn e2_from_standard(v: &[Scalar]) -> Vec<Scalar> {
    vec![&v[0] * &Scalar::from_int(2), v[2].clone(), v[1].clone()]
}

/// Levi signature of the E(2) data: one positive direction, `I = (+1)`.
pub fn e2_signature() -> Signature {
    Signature::unordered(1, 0).expect("n = 1")
}

/// The printed normal extension of E(2).
pub fn e2_alpha() -> Vec<Mat> {
    let z = Scalar::zero;
    let c = Scalar::cplx;
    vec![
        mat(vec![
            vec![c(0, 1, 1, 16), z(), c(0, 1, -15, 256)],
            vec![z(), c(0, 1, -1, 8), z()],
            vec![Scalar::i(), z(), c(0, 1, 1, 16)],
        ]),
        mat(vec![
            vec![z(), Scalar::frac(-5, 16), z()],
            vec![Scalar::one(), z(), Scalar::frac(5, 16)],
            vec![z(), Scalar::from_int(-1), z()],
        ]),
        mat(vec![
            vec![z(), c(0, 1, -3, 16), z()],
            vec![Scalar::i(), z(), c(0, 1, -3, 16)],
            vec![z(), Scalar::i(), z()],
        ]),
    ]
}

pub fn e2() -> Extension {
    Extension::new(e2_algebra(), Vec::new(), e2_signature(), e2_alpha(), Vec::new()).expect("well-formed")
}

/// Expected curvature of the E(2) extension on the pairs
/// `(T_x, T_1)`, `(T_x, T_2)`, `(T_1, T_2)`.
pub fn e2_expected_tau() -> Vec<((usize, usize), Mat)> {
    let mut t01 = Mat::zeros(3, 3);
    t01[(0, 1)] = Scalar::cplx(0, 1, -3, 32);
    t01[(1, 2)] = Scalar::cplx(0, 1, -3, 32);
    let mut t02 = Mat::zeros(3, 3);
    t02[(0, 1)] = Scalar::frac(3, 32);
    t02[(1, 2)] = Scalar::frac(-3, 32);
    vec![((0, 1), t01), ((0, 2), t02), ((1, 2), Mat::zeros(3, 3))]
}

/// Skeleton of the E(2) extension: the builtin basis is already adapted
/// (`T = T_x`, `R_1 = T_1`, `R_2 = T_2`).
pub fn e2_skeleton() -> (Extension<Poly>, SkeletonUnknowns) {
    canonical_skeleton(&e2_algebra(), e2_signature(), &[]).expect("well-formed")
}

/// Parameters of the distinguished point of the E(2) variety and its
/// inverse basis matrix in the basis `(e_1, e_2, rot)`.
pub fn e2_distinguished_b_inv() -> Mat {
    mat(vec![
        vec![Scalar::frac(1, 2), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
    ])
}

/// An entry `Σ (re + i·im)/2 · var` in half units.
type Entry2 = &'static [(&'static str, i64, i64)];

const SP_VARS: [&str; 10] = ["l1", "l2", "l3", "l4", "l5", "x", "X1", "X2", "X3", "X4"];

fn generators(rows: [[Entry2; 4]; 4]) -> Vec<Mat> {
    SP_VARS
        .iter()
        .map(|var| {
            Mat::from_fn(4, 4, |r, c| {
                rows[r][c]
                    .iter()
                    .filter(|(v, _, _)| v == var)
                    .fold(Scalar::zero(), |acc, (_, re, im)| &acc + &Scalar::cplx(*re, 2, *im, 2))
            })
        })
        .collect()
}

const SP_LAST_ROW: [Entry2; 4] = [
    &[("x", 0, 2)],
    &[("X2", 0, 2), ("X1", -2, 0)],
    &[("X3", 2, 0), ("X4", 0, -2)],
    &[("l1", -2, 0), ("l2", 0, 2)],
];

/// Generators of the `sp(1,1)` subalgebra of `su(2,2)`, ordered
/// `l_1, …, l_5, x, X_1, …, X_4`.
pub fn sp11_generators() -> Vec<Mat> {
    generators([
        [
            &[("l1", 2, 0), ("l2", 0, 2)],
            &[("X2", 0, 2), ("l5", 0, 2), ("X1", -2, 0), ("l4", 2, 0)],
            &[("X4", 0, 2), ("l5", 0, 2), ("X3", -2, 0), ("l4", 2, 0)],
            &[("l3", 0, 2), ("x", 0, 2)],
        ],
        [
            &[("X2", 0, 2), ("X1", 2, 0)],
            &[("l2", 0, -2), ("x", 0, -2), ("l3", 0, -1)],
            &[("l3", 0, -1), ("l1", -2, 0)],
            &[("X2", 0, 2), ("l5", 0, 2), ("X1", 2, 0), ("l4", -2, 0)],
        ],
        [
            &[("X4", 0, 2), ("X3", 2, 0)],
            &[("l3", 0, 1), ("l1", -2, 0)],
            &[("l2", 0, -2), ("x", 0, 2), ("l3", 0, 1)],
            &[("X4", 0, -2), ("l5", 0, -2), ("X3", -2, 0), ("l4", 2, 0)],
        ],
        SP_LAST_ROW,
    ])
}

/// Generators of the `sp(4,ℝ)` subalgebra of `su(2,2)`, same ordering.
pub fn sp4r_generators() -> Vec<Mat> {
    generators([
        [
            &[("l1", 2, 0), ("l2", 0, 2)],
            &[("X1", 2, 0), ("X2", 0, -2), ("l4", 2, 0), ("l5", 0, 2)],
            &[("X3", 2, 0), ("X4", 0, -2), ("l4", -2, 0), ("l5", 0, -2)],
            &[("l3", 0, 2), ("x", 0, 2)],
        ],
        [
            &[("X2", 0, 2), ("X1", 2, 0)],
            &[("l2", 0, -2), ("x", 0, 2), ("l3", 0, 1)],
            &[("l1", 2, 0), ("l3", 0, -1)],
            &[("X2", 0, -2), ("l5", 0, 2), ("X1", -2, 0), ("l4", -2, 0)],
        ],
        [
            &[("X4", 0, 2), ("X3", 2, 0)],
            &[("l1", 2, 0), ("l3", 0, 1)],
            &[("l2", 0, -2), ("x", 0, -2), ("l3", 0, -1)],
            &[("X4", 0, 2), ("l5", 0, 2), ("X3", 2, 0), ("l4", -2, 0)],
        ],
        SP_LAST_ROW,
    ])
}

fn sp_signature() -> Signature {
    Signature::new(1, 1).expect("valid")
}

fn inclusion(gens: Vec<Mat>, l_count: usize, sig: Signature, var_names: Vec<String>) -> Result<Extension, ExtensionError> {
    let algebra = LieAlg::from_matrices(var_names, &gens)?;
    let l_basis = (0..l_count).map(|k| algebra.unit(k)).collect();
    Extension::new(algebra, l_basis, sig, gens, Vec::new())
}

/// Inclusion extension of `sp(1,1)` with `𝔩 = span(l_1, …, l_5)`.
pub fn sp11() -> Extension {
    inclusion(sp11_generators(), 5, sp_signature(), names(&SP_VARS)).expect("closed subalgebra")
}

/// Inclusion extension of `sp(4,ℝ)` with `𝔩 = span(l_1, …, l_5)`.
pub fn sp4r() -> Extension {
    inclusion(sp4r_generators(), 5, sp_signature(), names(&SP_VARS)).expect("closed subalgebra")
}

/// Identity extension of `su(p+1, q+1)` on its graded basis, `𝔩 = 𝔭`.
pub fn standard(sig: Signature) -> Extension {
    let basis = su_basis(sig);
    let m = minus_basis(sig).len();
    let names = (0..basis.len())
        .map(|k| if k < m { format!("m{k}") } else { format!("p{}", k - m) })
        .collect();
    let algebra = LieAlg::from_matrices(names, &basis).expect("su basis closes");
    let l_basis = (m..basis.len()).map(|k| algebra.unit(k)).collect();
    Extension::new(algebra, l_basis, sig, basis, Vec::new()).expect("well-formed")
}

/// Signature used by the builtin standard inclusion.
pub fn standard_signature() -> Signature {
    Signature::new(0, 1).expect("valid")
}

/// A pair of null lines with the expected orbit case and the modes that
/// admit symmetries.
#[derive(Clone, Debug)]
pub struct LinePairExample {
    pub label: &'static str,
    pub sig: Signature,
    pub u: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub case: OrbitCase,
    pub nonempty: Vec<Mode>,
}

fn unit6(k: usize, c: Scalar) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); 6];
    v[k] = c;
    v
}

fn add6(a: Vec<Scalar>, b: Vec<Scalar>) -> Vec<Scalar> {
    a.iter().zip(&b).map(|(x, y)| x + y).collect()
}

/// The four null line pairs of the `(2,2)` symmetry example.
pub fn exam61() -> Vec<LinePairExample> {
    let sig = Signature::new(2, 2).expect("valid");
    let r2 = Scalar::sqrt_d(2);
    let i = Scalar::i();
    let e = |k: usize| unit6(k, Scalar::one());
    let e1e4 = add6(e(1), e(4));
    vec![
        LinePairExample {
            label: "case (1)",
            sig,
            u: add6(add6(unit6(0, i.clone()), unit6(1, r2.clone())), unit6(5, -&i)),
            v: add6(add6(unit6(0, i.clone()), unit6(4, -&r2)), unit6(5, i.clone())),
            case: OrbitCase::Case1,
            nonempty: vec![Mode::Swap],
        },
        LinePairExample {
            label: "case (2)",
            sig,
            u: e1e4.clone(),
            v: unit6(5, i.clone()),
            case: OrbitCase::Case2,
            nonempty: vec![Mode::Preserve],
        },
        LinePairExample {
            label: "case (3)",
            sig,
            u: e1e4.clone(),
            v: add6(e(0), e1e4.clone()),
            case: OrbitCase::Case3,
            nonempty: vec![Mode::Swap],
        },
        LinePairExample {
            label: "case (4)",
            sig,
            u: e1e4,
            v: add6(e(2), e(3)),
            case: OrbitCase::Case4,
            nonempty: vec![Mode::Preserve],
        },
    ]
}

/// The non-isotropic pair of the second symmetry example.
pub fn exam62() -> LinePairExample {
    let sig = Signature::new(2, 2).expect("valid");
    LinePairExample {
        label: "non-isotropic pair",
        sig,
        u: unit6(5, Scalar::one()),
        v: add6(add6(unit6(0, Scalar::one()), unit6(1, Scalar::sqrt_d(2))), unit6(4, Scalar::cplx(1, 1, 1, 1))),
        case: OrbitCase::NonIsotropicPair,
        nonempty: Vec::new(),
    }
}

fn unit3(k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); 3];
    v[k] = Scalar::one();
    v
}

/// CR algebra of the E(2) data: `𝔮 = ℂ(T_1 + i T_2)`, no embedding.
pub fn e2_cr() -> CrAlgebra {
    let q = vec![vec![Scalar::zero(), Scalar::one(), Scalar::i()]];
    CrAlgebra::new(e2_algebra(), q, None).expect("𝔮 is a line")
}

/// Representatives `(T_1, T_2)` and complement `T_x`.
pub fn e2_choice() -> BasisChoice {
    BasisChoice::new(vec![unit3(1), unit3(2)], unit3(0))
}

/// Complement `T_x + T_1`, mixing the parities of `ν`.
pub fn e2_mixing_choice() -> BasisChoice {
    let mut t = unit3(0);
    t[1] = Scalar::one();
    BasisChoice::new(vec![unit3(1), unit3(2)], t)
}

/// Builtin extension by name (line-pair builtins have no extension).
pub fn extension_by_name(name: &str) -> Option<Extension> {
    match name {
        "e2" => Some(e2()),
        "sp11" => Some(sp11()),
        "sp4r" => Some(sp4r()),
        "standard" => Some(standard(standard_signature())),
        _ => None,
    }
}

/// True for every name in [`NAMES`].
pub fn is_builtin(name: &str) -> bool {
    NAMES.contains(&name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sualg::is_member;

    #[test]
    fn e2_cr_matches_embedding() {
        let e = e2();
        let from = CrAlgebra::from_embedding(e.algebra, e.sig, e.alpha).unwrap();
        let mut both = from.q_basis.clone();
        both.extend(e2_cr().q_basis);
        assert_eq!(crate::linalg::rank(&both), 1);
    }

    #[test]
    fn e2_alpha_members() {
        let ext = e2();
        assert!(ext.validate().is_ok());
    }

    #[test]
    fn e2_standard_basis_matches() {
        // T_x = e1/2, T1 = rot, T2 = e2
        let std = e2_standard_algebra();
        let basis = vec![
            vec![Scalar::frac(1, 2), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
        ];
        let changed = std.change_basis(names(&["T_x", "T1", "T2"]), &basis).unwrap();
        assert_eq!(changed, e2_algebra());
        assert_eq!(e2_from_standard(&basis[0]), e2_algebra().unit(0));
    }

    #[test]
    fn sp_generators_are_members() {
        let sig = sp_signature();
        for g in sp11_generators().iter().chain(sp4r_generators().iter()) {
            assert!(is_member(g, sig));
        }
    }

    #[test]
    fn line_pairs_are_null() {
        use crate::sualg::form_value;
        for ex in exam61().into_iter().chain([exam62()]) {
            assert!(form_value(ex.sig, &ex.u, &ex.u).is_zero(), "{}", ex.label);
            assert!(form_value(ex.sig, &ex.v, &ex.v).is_zero(), "{}", ex.label);
        }
    }

    #[test]
    fn e2_is_normal_and_recovered() {
        use crate::extensions::{kostant_codifferential, solve_normalization};
        let ext = e2();
        assert!(kostant_codifferential(&ext).unwrap().iter().all(Mat::is_zero));
        let (skel, _) = e2_skeleton();
        let solved = solve_normalization(&skel).unwrap();
        assert_eq!(solved.extension, ext);
    }

    #[test]
    fn sp_inclusions_are_flat() {
        use crate::extensions::is_flat;
        assert!(is_flat(&sp11()));
        assert!(is_flat(&sp4r()));
        assert!(is_flat(&standard(standard_signature())));
    }
}
