//! Named worked examples: algebras, reductive pairs, finite groups and
//! foliation profiles, each with the values it is expected to reproduce.

use thiserror::Error;

use crate::algebra::{LieAlgebra, ReductivePair};
use crate::exterior::exterior_power;
use crate::group::{conjugation_ad, FiniteGroup, GroupElementAd};
use crate::linalg::Matrix;
use crate::scalar::{frac, int, Scalar};
use crate::tischler::{self, FoliationProfile, PeriodGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
}

/// A reductive pair with a name and sample group elements for `det Ad`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairData {
    pub name: String,
    pub pair: ReductivePair,
    pub elements: Vec<GroupElementAd>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub group: FiniteGroup,
    pub subgroup: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileData {
    pub name: String,
    pub profile: FoliationProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodsData {
    pub name: String,
    pub periods: PeriodGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Algebra(LieAlgebra),
    Pair(PairData),
    Group(GroupData),
    Profile(ProfileData),
    Periods(PeriodsData),
}

impl Payload {
    pub fn name(&self) -> &str {
        match self {
            Payload::Algebra(g) => g.name(),
            Payload::Pair(p) => &p.name,
            Payload::Group(g) => g.group.name(),
            Payload::Profile(p) => &p.name,
            Payload::Periods(p) => &p.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Pair(_) => "pair",
            Payload::Group(_) => "group",
            Payload::Profile(_) => "profile",
            Payload::Periods(_) => "periods",
        }
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Stated in the published worked example.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Reproduced by a separate hand or brute-force computation.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    /// CLI command and extra arguments; the first report line, minus any
    /// leading key, carries the value.
    pub quantity: &'static str,
    pub value: String,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub expected: Vec<Expected>,
}

fn expect(quantity: &'static str, value: &str, evidence: Evidence) -> Expected {
    Expected {
        quantity,
        value: value.to_string(),
        evidence,
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

/// `sl₂` with `[X,Y] = 2Y`, `[X,Z] = −2Z`, `[Y,Z] = X`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "sl2",
        names(&["X", "Y", "Z"]),
        &[(0, 1, v(&[0, 2, 0])), (0, 2, v(&[0, 0, -2])), (1, 2, v(&[1, 0, 0]))],
    )
    .expect("sl2 is a Lie algebra")
}

/// The affine line algebra, basis `(H, S)`, `[H, S] = S`.
pub fn ga1() -> LieAlgebra {
    LieAlgebra::from_brackets("ga1", names(&["H", "S"]), &[(0, 1, v(&[0, 1]))]).expect("ga1 is a Lie algebra")
}

/// Basis `(P, Q, Z)`, `[P, Q] = Z`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets("heisenberg3", names(&["P", "Q", "Z"]), &[(0, 1, v(&[0, 0, 1]))])
        .expect("heisenberg3 is a Lie algebra")
}

/// `[A,B] = C`, `[B,C] = A`, `[C,A] = B`.
pub fn su2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "su2",
        names(&["A", "B", "C"]),
        &[(0, 1, v(&[0, 0, 1])), (1, 2, v(&[1, 0, 0])), (2, 0, v(&[0, 1, 0]))],
    )
    .expect("su2 is a Lie algebra")
}

/// Euclidean motions of the plane: `[J, P1] = P2`, `[J, P2] = −P1`.
pub fn e2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "e2",
        names(&["J", "P1", "P2"]),
        &[(0, 1, v(&[0, 0, 1])), (0, 2, v(&[0, -1, 0]))],
    )
    .expect("e2 is a Lie algebra")
}

/// Matrix Lie algebra spanned by `basis`, structure constants by solving
/// for the coordinates of each commutator.
fn matrix_algebra(name: &str, labels: Vec<String>, basis: &[Matrix]) -> LieAlgebra {
    let flat = |m: &Matrix| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
    let size = basis[0].rows() * basis[0].cols();
    let b = Matrix::from_columns(size, &basis.iter().map(flat).collect::<Vec<_>>());
    let mut brackets = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let c = b
                .solve(&flat(&basis[i].commutator(&basis[j])))
                .expect("basis spans a subalgebra");
            brackets.push((i, j, c));
        }
    }
    LieAlgebra::from_brackets(name, labels, &brackets).expect("matrix commutators satisfy Jacobi")
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = int(1);
    m
}

/// `sl(n)` on the basis `H_i = E_ii − E_{i+1,i+1}` then `E_ij` (`i ≠ j`).
pub fn sl(n: usize) -> LieAlgebra {
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n - 1 {
        labels.push(format!("H{}", i + 1));
        basis.push(elementary(n, i, i).sub(&elementary(n, i + 1, i + 1)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("E{}{}", i + 1, j + 1));
                basis.push(elementary(n, i, j));
            }
        }
    }
    matrix_algebra(&format!("sl{n}"), labels, &basis)
}

pub fn algebras() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = (1..=4).map(LieAlgebra::abelian).collect();
    out.extend([heisenberg3(), sl2(), ga1(), su2()]);
    out
}

/// `k = span(Y − Z)`, `p = span(X, Y + Z)`: the hyperbolic plane.
pub fn sl2_so2_pair() -> ReductivePair {
    ReductivePair::new(sl2(), vec![v(&[0, 1, -1])], vec![v(&[1, 0, 0]), v(&[0, 1, 1])], vec![])
        .expect("sl2/so2 is reductive")
}

pub fn ga1_trivial_pair() -> ReductivePair {
    ReductivePair::trivial(ga1())
}

/// `k = so(2)`, with the reflection `(x, y) ↦ (x, −y)` as component generator.
pub fn e2_o2_pair() -> ReductivePair {
    let g = e2();
    ReductivePair::new(
        g.clone(),
        vec![g.unit(0)],
        vec![g.unit(1), g.unit(2)],
        vec![reflection_ad()],
    )
    .expect("e2/o2 is reductive")
}

fn reflection_ad() -> Matrix {
    Matrix::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])
}

/// `k = span(C)`: the round sphere.
pub fn su2_u1_pair() -> ReductivePair {
    let g = su2();
    ReductivePair::new(g.clone(), vec![g.unit(2)], vec![g.unit(0), g.unit(1)], vec![]).expect("su2/u1 is reductive")
}

/// `k` the center.
pub fn heisenberg_center_pair() -> ReductivePair {
    let g = heisenberg3();
    ReductivePair::new(g.clone(), vec![g.unit(2)], vec![g.unit(0), g.unit(1)], vec![])
        .expect("center gives a reductive pair")
}

/// `ℝ³ = ℝ ⊕ ℝ²` with no bracket.
pub fn abelian3_split_pair() -> ReductivePair {
    let g = LieAlgebra::abelian(3);
    ReductivePair::new(g.clone(), vec![g.unit(0)], vec![g.unit(1), g.unit(2)], vec![]).expect("abelian split")
}

pub fn pairs() -> Vec<ReductivePair> {
    let mut out = vec![
        sl2_so2_pair(),
        ga1_trivial_pair(),
        e2_o2_pair(),
        su2_u1_pair(),
        heisenberg_center_pair(),
        abelian3_split_pair(),
    ];
    out.extend(algebras().into_iter().map(ReductivePair::trivial));
    out
}

/// `Ad(s, t)` of the affine group on basis `(H, S)`, with `a = λᵗ` given
/// exactly: `H ↦ H − s S`, `S ↦ a S`; `det = a`.
pub fn ga1_element(s: &Scalar, a: &Scalar) -> GroupElementAd {
    let m = Matrix::from_rows(vec![vec![int(1), int(0)], vec![-s.clone(), a.clone()]]);
    GroupElementAd::new(&ga1(), format!("ga({},{})", crate::scalar::render(s), crate::scalar::render(a)), m)
        .expect("affine element is an automorphism")
}

/// `Ad` of the rotation with `(cos, sin) = (c, s)` on `sl₂`, by conjugating
/// the matrices `X = diag(1, −1)`, `Y = E12`, `Z = E21`.
pub fn sl2_rotation(c: &Scalar, s: &Scalar) -> GroupElementAd {
    let r = Matrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s.clone(), c.clone()]]);
    let basis = [
        Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]),
        elementary(2, 0, 1),
        elementary(2, 1, 0),
    ];
    let ad = conjugation_ad(&basis, &r).expect("rotation conjugates sl2 into itself");
    GroupElementAd::new(
        &sl2(),
        format!("rot({},{})", crate::scalar::render(c), crate::scalar::render(s)),
        ad,
    )
    .expect("conjugation is an automorphism")
}

/// Block-preserving sample elements, each with the pair it acts on.
pub fn elements() -> Vec<(ReductivePair, GroupElementAd)> {
    let abelian = abelian3_split_pair();
    let diag = GroupElementAd::new(
        abelian.algebra(),
        "diag(2,3,1/3)",
        Matrix::from_rows(vec![
            vec![int(2), int(0), int(0)],
            vec![int(0), int(3), int(0)],
            vec![int(0), int(0), frac(1, 3)],
        ]),
    )
    .expect("diagonal automorphism");
    let e2 = e2_o2_pair();
    let reflection = GroupElementAd::new(e2.algebra(), "reflection", reflection_ad()).expect("reflection");
    let sl2p = sl2_so2_pair();
    vec![
        (sl2p.clone(), GroupElementAd::identity(sl2p.algebra())),
        (sl2p, sl2_rotation(&frac(3, 5), &frac(4, 5))),
        (ga1_trivial_pair(), ga1_element(&int(1), &int(2))),
        (abelian, diag),
        (e2, reflection),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Symmetric group on `n` letters, elements in lexicographic order, with
/// `(g·h)(i) = g(h(i))`.
pub fn symmetric(name: &str, n: usize) -> FiniteGroup {
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
    let table = perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|h| index(&h.iter().map(|&i| g[i]).collect()))
                .collect()
        })
        .collect();
    FiniteGroup::new(name, table).expect("symmetric group table")
}

fn permutation_index(n: usize, p: &[usize]) -> usize {
    permutations(n).iter().position(|q| q == p).expect("a permutation")
}

pub fn s3_table() -> FiniteGroup {
    symmetric("s3_table", 3)
}

pub fn s4_table() -> FiniteGroup {
    symmetric("s4_table", 4)
}

/// `{e, (0 1)}` in `S₃`.
pub fn s3_transposition_subgroup() -> Vec<usize> {
    s3_table().closure(&[permutation_index(3, &[1, 0, 2])])
}

/// Symmetries of the square `0-1-2-3` inside `S₄`.
pub fn s4_dihedral_subgroup() -> Vec<usize> {
    s4_table().closure(&[permutation_index(4, &[1, 2, 3, 0]), permutation_index(4, &[2, 1, 0, 3])])
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
    FiniteGroup::new(format!("z{n}"), table).expect("cyclic table")
}

fn powers(m: &Matrix, n: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(m.rows())];
    for _ in 1..n {
        let next = out.last().expect("nonempty").mul(m);
        out.push(next);
    }
    out
}

pub fn trivial_group_action() -> FiniteGroup {
    FiniteGroup::new("trivial_action", vec![vec![0]])
        .and_then(|g| g.with_action(vec![Matrix::identity(1)]))
        .expect("trivial action")
}

/// `ℤ/2` acting on `ℝ` by `−1`.
pub fn z2_sign() -> FiniteGroup {
    FiniteGroup::new("z2_sign", vec![vec![0, 1], vec![1, 0]])
        .and_then(|g| g.with_action(powers(&Matrix::from_i64_rows(&[&[-1]]), 2)))
        .expect("sign action")
}

fn quarter_turn() -> Matrix {
    Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])
}

/// `ℤ/4` rotating the plane.
pub fn z4_plane() -> FiniteGroup {
    rename(cyclic(4).with_action(powers(&quarter_turn(), 4)).expect("rotation action"), "z4_plane")
}

/// `ℤ/4` rotating the plane, acting on `Λ²` of it.
pub fn z4_area_form() -> FiniteGroup {
    let action = powers(&quarter_turn(), 4).iter().map(|m| exterior_power(m, 2)).collect();
    rename(cyclic(4).with_action(action).expect("area form action"), "z4_area_form")
}

/// `S₃` permuting the coordinates of `ℝ³`.
pub fn s3_permutation() -> FiniteGroup {
    let perms = permutations(3);
    let action = perms
        .iter()
        .map(|p| {
            let mut m = Matrix::zeros(3, 3);
            for (i, &pi) in p.iter().enumerate() {
                m[(pi, i)] = int(1);
            }
            m
        })
        .collect();
    symmetric("s3_permutation", 3).with_action(action).expect("permutation action")
}

fn rename(g: FiniteGroup, name: &str) -> FiniteGroup {
    let renamed = FiniteGroup::new(name, g.table().to_vec()).expect("same table");
    match g.action() {
        Some(a) => renamed.with_action(a.to_vec()).expect("same action"),
        None => renamed,
    }
}

pub fn finite_actions() -> Vec<FiniteGroup> {
    vec![trivial_group_action(), z2_sign(), z4_plane(), z4_area_form(), s3_permutation()]
}

pub fn carriere_matrix() -> Matrix {
    Matrix::from_i64_rows(&[&[2, 1], &[1, 1]])
}

pub fn carriere_default() -> FoliationProfile {
    tischler::carriere_profile(&carriere_matrix())
        .expect("default matrix is hyperbolic")
        .profile
}

/// The hyperbolic-plane example: every hypothesis holds.
pub fn sl2_example_profile() -> FoliationProfile {
    FoliationProfile::from_flags([true; 7])
}

pub fn list() -> Vec<&'static str> {
    vec![
        "abelian1",
        "abelian2",
        "abelian3",
        "abelian4",
        "heisenberg3",
        "sl2",
        "ga1",
        "su2",
        "e2",
        "sl2_so2_pair",
        "ga1_trivial_pair",
        "e2_o2_pair",
        "su2_u1_pair",
        "heisenberg_center_pair",
        "abelian3_split_pair",
        "s3_table",
        "s4_table",
        "z2_sign",
        "z4_plane",
        "z4_area_form",
        "s3_permutation",
        "carriere_default",
        "sl2_example_profile",
    ]
}

fn pair_entry(name: &str, pair: ReductivePair, elements: Vec<GroupElementAd>) -> Payload {
    Payload::Pair(PairData {
        name: name.to_string(),
        pair,
        elements,
    })
}

fn elements_for(name: &str) -> Vec<GroupElementAd> {
    let wanted = match name {
        "sl2_so2_pair" => "sl2",
        "ga1_trivial_pair" => "ga1",
        "e2_o2_pair" => "e2",
        "abelian3_split_pair" => "abelian3",
        _ => return Vec::new(),
    };
    elements()
        .into_iter()
        .filter(|(p, _)| p.algebra().name() == wanted)
        .map(|(_, e)| e)
        .collect()
}

pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    use Evidence::*;
    let (payload, expected) = match name {
        "abelian1" | "abelian2" | "abelian3" | "abelian4" => {
            let n: usize = name["abelian".len()..].parse().expect("digit suffix");
            let betti: Vec<String> = (0..=n)
                .map(|r| crate::exterior::binomial(n, r).to_string())
                .collect();
            (
                Payload::Algebra(LieAlgebra::abelian(n)),
                vec![expect("betti", &betti.join(" "), Elementary)],
            )
        }
        "heisenberg3" => (Payload::Algebra(heisenberg3()), vec![expect("betti", "1 2 2 1", Independent)]),
        "sl2" => (Payload::Algebra(sl2()), vec![expect("betti", "1 0 0 1", Independent)]),
        "ga1" => (
            Payload::Algebra(ga1()),
            vec![expect("betti", "1 1 0", Independent), expect("character", "1 0", Independent)],
        ),
        "su2" => (Payload::Algebra(su2()), vec![expect("betti", "1 0 0 1", Independent)]),
        "e2" => (Payload::Algebra(e2()), vec![expect("betti", "1 1 1 1", Independent)]),
        "sl2_so2_pair" => (
            pair_entry(name, sl2_so2_pair(), elements_for(name)),
            vec![
                expect("relative-betti", "1 0 1", Published),
                expect("homology-betti", "1 0 1", Independent),
                expect("h0 --module dual-twisted", "1", Independent),
            ],
        ),
        "ga1_trivial_pair" => (
            pair_entry(name, ga1_trivial_pair(), elements_for(name)),
            vec![
                expect("relative-betti", "1 1 0", Independent),
                expect("h0 --module dual-twisted", "0", Independent),
            ],
        ),
        "e2_o2_pair" => (
            pair_entry(name, e2_o2_pair(), elements_for(name)),
            vec![
                expect("relative-betti", "1 0 0", Independent),
                expect("homology-betti", "1 0 0", Independent),
                expect("homology-betti --module twisted", "0 0 1", Independent),
                expect("h0 --module dual-twisted", "0", Independent),
            ],
        ),
        "su2_u1_pair" => (
            pair_entry(name, su2_u1_pair(), Vec::new()),
            vec![
                expect("relative-betti", "1 0 1", Independent),
                expect("h0 --module dual-twisted", "1", Independent),
            ],
        ),
        "heisenberg_center_pair" => (
            pair_entry(name, heisenberg_center_pair(), Vec::new()),
            vec![expect("relative-betti", "1 2 1", Independent)],
        ),
        "abelian3_split_pair" => (
            pair_entry(name, abelian3_split_pair(), elements_for(name)),
            vec![expect("relative-betti", "1 2 1", Elementary)],
        ),
        "s3_table" => (
            Payload::Group(GroupData {
                group: s3_table(),
                subgroup: Some(s3_transposition_subgroup()),
            }),
            vec![expect("core", "1", Independent)],
        ),
        "s4_table" => (
            Payload::Group(GroupData {
                group: s4_table(),
                subgroup: Some(s4_dihedral_subgroup()),
            }),
            vec![expect("core", "4", Independent)],
        ),
        "z2_sign" | "z4_plane" | "z4_area_form" | "s3_permutation" => {
            let (group, rank) = match name {
                "z2_sign" => (z2_sign(), "0"),
                "z4_plane" => (z4_plane(), "0"),
                "z4_area_form" => (z4_area_form(), "1"),
                _ => (s3_permutation(), "1"),
            };
            (
                Payload::Group(GroupData { group, subgroup: None }),
                vec![expect("average", rank, Independent)],
            )
        }
        "carriere_default" => (
            Payload::Profile(ProfileData {
                name: name.into(),
                profile: carriere_default(),
            }),
            vec![
                expect("verdict", "ManifoldFibers", Published),
                expect("tischler", "1", Published),
            ],
        ),
        "sl2_example_profile" => (
            Payload::Profile(ProfileData {
                name: name.into(),
                profile: sl2_example_profile(),
            }),
            vec![expect("verdict", "FoliationUnimodular", Published)],
        ),
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        payload,
        expected,
    })
}

pub fn entries() -> Vec<CatalogEntry> {
    list().into_iter().map(|n| get(n).expect("listed names resolve")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::{self, CoefficientModule};

    #[test]
    fn every_listed_name_resolves() {
        for name in list() {
            let e = get(name).unwrap();
            assert_eq!(e.payload.name(), name);
            assert!(!e.expected.is_empty());
        }
        assert_eq!(get("nope").unwrap_err(), CatalogError::UnknownName("nope".into()));
    }

    #[test]
    fn sl3_has_trivial_low_cohomology() {
        let g = sl(3);
        assert_eq!(g.dim(), 8);
        assert!(g.is_unimodular());
        let b = ce::betti(&g, &CoefficientModule::trivial(&g));
        assert_eq!(b.numbers(), &[1, 0, 0, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn sl2_matches_matrix_model() {
        assert_eq!(sl(2).dim(), 3);
        let b = ce::betti(&sl(2), &CoefficientModule::trivial(&sl(2)));
        assert_eq!(b.numbers(), &[1, 0, 0, 1]);
    }

    #[test]
    fn groups_have_expected_orders() {
        assert_eq!(s3_table().order(), 6);
        assert_eq!(s4_table().order(), 24);
        assert_eq!(s3_transposition_subgroup().len(), 2);
        assert_eq!(s4_dihedral_subgroup().len(), 8);
    }

    #[test]
    fn e2_is_unimodular_and_reflection_reverses_p() {
        let pair = e2_o2_pair();
        assert!(pair.algebra().is_unimodular());
        assert_eq!(pair.blocks(&pair.generators()[0]).1.det(), int(-1));
    }
}
