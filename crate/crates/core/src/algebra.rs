//! Lie algebras by structure constants, adjoint operators, modular
//! characters and reductive pairs.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("antisymmetry violated at c[{i}][{j}][{k}]")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("Jacobi identity violated for ({i}, {j}, {l}); residual {residual:?}")]
    JacobiViolation {
        i: usize,
        j: usize,
        l: usize,
        residual: Vec<String>,
    },
    #[error("subalgebra is not closed under the bracket: [k{a}, k{b}] leaves it")]
    NotSubalgebra { a: usize, b: usize },
    #[error("subalgebra and complement do not form a direct sum decomposition")]
    NotComplement,
    #[error("complement is not invariant: {0}")]
    NotAdInvariant(InvarianceWitness),
    #[error("component generator {0} is not an invertible Lie algebra automorphism")]
    NotAutomorphism(usize),
    #[error("no invariant complement exists")]
    NoComplement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvarianceWitness {
    /// `[k_basis[k], p_basis[p]]` has a nonzero component in the subalgebra.
    Bracket { k: usize, p: usize },
    /// The generator does not preserve the subalgebra or the complement.
    Generator(usize),
}

impl std::fmt::Display for InvarianceWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvarianceWitness::Bracket { k, p } => write!(f, "[k{k}, p{p}] not in complement"),
            InvarianceWitness::Generator(g) => write!(f, "generator {g} does not preserve the splitting"),
        }
    }
}

/// A finite-dimensional Lie algebra over ℚ with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Values are validated on construction and immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    structure: Vec<Scalar>,
}

impl LieAlgebra {
    /// Validates a raw structure table `table[i][j][k]`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        if table.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: table.len(),
            });
        }
        let mut structure = Vec::with_capacity(n * n * n);
        for row in &table {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for entry in row {
                if entry.len() != n {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: n,
                        found: entry.len(),
                    });
                }
                structure.extend(entry.iter().cloned());
            }
        }
        let g = LieAlgebra {
            name: name.into(),
            basis,
            structure,
        };
        g.check_axioms()?;
        Ok(g)
    }

    /// Builds an algebra from the brackets of unordered basis pairs; the
    /// remaining entries follow by antisymmetry.
    pub fn from_brackets(
        name: impl Into<String>,
        basis: Vec<String>,
        brackets: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if i == j {
                if !linalg::is_zero_vec(v) {
                    let k = v.iter().position(|x| !x.is_zero()).unwrap();
                    return Err(AlgebraError::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            table[i][j] = v.clone();
            table[j][i] = v.iter().map(|x| -x).collect();
        }
        LieAlgebra::new(name, basis, table)
    }

    pub fn abelian(n: usize) -> Self {
        let basis = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra::from_brackets(format!("abelian{n}"), basis, &[]).expect("zero bracket is valid")
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.c(i, j, k) != &-self.c(j, i, k) {
                        return Err(AlgebraError::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        // Jacobi is alternating once antisymmetry holds, so i < j < l suffices.
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let residual = self.jacobiator(i, j, l);
                    if !linalg::is_zero_vec(&residual) {
                        return Err(AlgebraError::JacobiViolation {
                            i,
                            j,
                            l,
                            residual: residual.iter().map(scalar::render).collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobiator(&self, i: usize, j: usize, l: usize) -> Vec<Scalar> {
        let e = |a: usize| self.unit(a);
        let t1 = self.bracket(&e(i), &self.bracket(&e(j), &e(l)));
        let t2 = self.bracket(&e(j), &self.bracket(&e(l), &e(i)));
        let t3 = self.bracket(&e(l), &self.bracket(&e(i), &e(j)));
        (0..self.dim())
            .map(|k| &t1[k] + &t2[k] + &t3[k])
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Structure constant `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.structure[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let coef = &x[i] * &y[j];
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &coef * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_X`; column `j` holds the coordinates of `[X, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
        let n = self.dim();
        if x.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let columns: Vec<Vec<Scalar>> = (0..n).map(|j| self.bracket(x, &self.unit(j))).collect();
        Ok(Matrix::from_columns(n, &columns))
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad_matrix(&self.unit(i)).expect("basis vector has the right length")
    }

    pub fn modular_character(&self) -> ModularCharacter {
        ModularCharacter {
            values: (0..self.dim()).map(|i| self.ad_basis(i).trace()).collect(),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.modular_character().is_zero()
    }

    /// True if `a` is invertible and `a[x, y] = [a x, a y]` on all basis pairs.
    pub fn is_automorphism(&self, a: &Matrix) -> bool {
        let n = self.dim();
        if a.rows() != n || a.cols() != n || a.det().is_zero() {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| a.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = a.mul_vec(self.bracket_basis(i, j));
                let rhs = self.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// True if the span of `vectors` is closed under the bracket.
    pub fn is_subalgebra(&self, vectors: &[Vec<Scalar>]) -> bool {
        self.subalgebra_witness(vectors).is_none()
    }

    fn subalgebra_witness(&self, vectors: &[Vec<Scalar>]) -> Option<(usize, usize)> {
        let r = linalg::vectors_rank(self.dim(), vectors);
        for a in 0..vectors.len() {
            for b in a + 1..vectors.len() {
                let mut ext = vectors.to_vec();
                ext.push(self.bracket(&vectors[a], &vectors[b]));
                if linalg::vectors_rank(self.dim(), &ext) != r {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Trace of `ad_X` restricted to the subalgebra spanned by `basis`, for
    /// each basis vector `X`. Assumes `basis` spans a subalgebra.
    pub fn restricted_traces(&self, basis: &[Vec<Scalar>]) -> Vec<Scalar> {
        if basis.is_empty() {
            return Vec::new();
        }
        let b = Matrix::from_columns(self.dim(), basis);
        basis
            .iter()
            .map(|x| {
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|y| {
                        b.solve(&self.bracket(x, y))
                            .expect("subalgebra is closed under the bracket")
                    })
                    .collect();
                Matrix::from_columns(basis.len(), &cols).trace()
            })
            .collect()
    }
}

/// The character `X ↦ trace ad_X`, as a covector in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularCharacter {
    values: Vec<Scalar>,
}

impl ModularCharacter {
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.values.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.values)
    }
}

/// A validated splitting `g = k ⊕ p` with `[k, p] ⊆ p`, together with the
/// adjoint action of finitely many component-group generators of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductivePair {
    algebra: LieAlgebra,
    k_basis: Vec<Vec<Scalar>>,
    p_basis: Vec<Vec<Scalar>>,
    generators: Vec<Matrix>,
    /// Inverse of `[k_basis | p_basis]`: maps ambient coordinates to adapted ones.
    to_adapted: Matrix,
}

impl ReductivePair {
    pub fn new(
        algebra: LieAlgebra,
        k_basis: Vec<Vec<Scalar>>,
        p_basis: Vec<Vec<Scalar>>,
        generators: Vec<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let n = algebra.dim();
        for v in k_basis.iter().chain(&p_basis) {
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        if k_basis.len() + p_basis.len() != n {
            return Err(AlgebraError::NotComplement);
        }
        let adapted: Vec<Vec<Scalar>> = k_basis.iter().chain(&p_basis).cloned().collect();
        let to_adapted = Matrix::from_columns(n, &adapted)
            .inverse()
            .ok_or(AlgebraError::NotComplement)?;
        if let Some((a, b)) = algebra.subalgebra_witness(&k_basis) {
            return Err(AlgebraError::NotSubalgebra { a, b });
        }
        let pair = ReductivePair {
            algebra,
            k_basis,
            p_basis,
            generators,
            to_adapted,
        };
        for a in 0..pair.k_dim() {
            for b in 0..pair.q() {
                let w = pair.algebra.bracket(&pair.k_basis[a], &pair.p_basis[b]);
                if !linalg::is_zero_vec(&pair.split(&w).0) {
                    return Err(AlgebraError::NotAdInvariant(InvarianceWitness::Bracket {
                        k: a,
                        p: b,
                    }));
                }
            }
        }
        for (idx, g) in pair.generators.iter().enumerate() {
            if !pair.algebra.is_automorphism(g) {
                return Err(AlgebraError::NotAutomorphism(idx));
            }
            let preserves_k = pair
                .k_basis
                .iter()
                .all(|v| linalg::is_zero_vec(&pair.split(&g.mul_vec(v)).1));
            let preserves_p = pair
                .p_basis
                .iter()
                .all(|v| linalg::is_zero_vec(&pair.split(&g.mul_vec(v)).0));
            if !preserves_k || !preserves_p {
                return Err(AlgebraError::NotAdInvariant(InvarianceWitness::Generator(idx)));
            }
        }
        Ok(pair)
    }

    /// The pair `(g, {0})`: `p = g` with its standard basis and no generators.
    pub fn trivial(algebra: LieAlgebra) -> Self {
        let p = (0..algebra.dim()).map(|i| algebra.unit(i)).collect();
        ReductivePair::new(algebra, Vec::new(), p, Vec::new()).expect("trivial splitting is valid")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn k_basis(&self) -> &[Vec<Scalar>] {
        &self.k_basis
    }

    pub fn p_basis(&self) -> &[Vec<Scalar>] {
        &self.p_basis
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn k_dim(&self) -> usize {
        self.k_basis.len()
    }

    /// `q = dim p`.
    pub fn q(&self) -> usize {
        self.p_basis.len()
    }

    /// Splits ambient coordinates into (k-coordinates, p-coordinates).
    pub fn split(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut adapted = self.to_adapted.mul_vec(v);
        let p = adapted.split_off(self.k_dim());
        (adapted, p)
    }

    /// p-coordinates of the projected bracket `[p_a, p_b]_p`.
    pub fn p_bracket(&self, a: usize, b: usize) -> Vec<Scalar> {
        self.split(&self.algebra.bracket(&self.p_basis[a], &self.p_basis[b]))
            .1
    }

    /// Matrix of `ad(k_a)` restricted to `p`, in p-coordinates.
    pub fn k_action_on_p(&self, a: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.q())
            .map(|b| self.split(&self.algebra.bracket(&self.k_basis[a], &self.p_basis[b])).1)
            .collect();
        Matrix::from_columns(self.q(), &cols)
    }

    /// Block of a block-preserving automorphism on `k` and on `p`.
    pub fn blocks(&self, g: &Matrix) -> (Matrix, Matrix) {
        let kcols: Vec<Vec<Scalar>> = self
            .k_basis
            .iter()
            .map(|v| self.split(&g.mul_vec(v)).0)
            .collect();
        let pcols: Vec<Vec<Scalar>> = self
            .p_basis
            .iter()
            .map(|v| self.split(&g.mul_vec(v)).1)
            .collect();
        (
            Matrix::from_columns(self.k_dim(), &kcols),
            Matrix::from_columns(self.q(), &pcols),
        )
    }

    /// True if `g` maps `k` into `k` and `p` into `p`.
    pub fn preserves_splitting(&self, g: &Matrix) -> bool {
        self.k_basis
            .iter()
            .all(|v| linalg::is_zero_vec(&self.split(&g.mul_vec(v)).1))
            && self
                .p_basis
                .iter()
                .all(|v| linalg::is_zero_vec(&self.split(&g.mul_vec(v)).0))
    }

    /// Ambient vector of p-coordinates.
    pub fn p_vector(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.algebra.dim()];
        for (c, b) in coords.iter().zip(&self.p_basis) {
            if c.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += c * bi;
            }
        }
        v
    }

    /// True if `trace ad` restricted to `k` vanishes on `k`.
    pub fn k_is_unimodular(&self) -> bool {
        self.algebra
            .restricted_traces(&self.k_basis)
            .iter()
            .all(Zero::is_zero)
    }
}

/// Finds a complement `p` of the subalgebra spanned by `k_basis` with
/// `[k, p] ⊆ p` that every generator preserves.
///
/// The complement is written as a graph `p = {f + C f}` over the standard
/// coordinates outside the pivots of `k`; both invariance conditions are
/// linear in `C` because `k` is closed under the bracket and preserved by
/// the generators. The particular solution with free unknowns zero is taken
/// and returned in reduced echelon form.
pub fn find_reductive_complement(
    algebra: &LieAlgebra,
    k_basis: &[Vec<Scalar>],
    generators: &[Matrix],
) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
    let n = algebra.dim();
    if let Some(v) = k_basis.iter().find(|v| v.len() != n) {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if let Some((a, b)) = algebra.subalgebra_witness(k_basis) {
        return Err(AlgebraError::NotSubalgebra { a, b });
    }
    let kb = linalg::span_basis(n, k_basis);
    let k = kb.len();
    let pivots: Vec<usize> = kb
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero"))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let m = free.len();

    // w = Σ κ_i kb_i + Σ φ_j e_{free_j}
    let decompose = |w: &[Scalar]| -> (Vec<Scalar>, Vec<Scalar>) {
        let kappa: Vec<Scalar> = pivots.iter().map(|&p| w[p].clone()).collect();
        let phi: Vec<Scalar> = free
            .iter()
            .map(|&f| {
                let mut x = w[f].clone();
                for (i, ki) in kb.iter().enumerate() {
                    x -= &kappa[i] * &ki[f];
                }
                x
            })
            .collect();
        (kappa, phi)
    };

    let unknowns = k * m;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // For an operator T preserving k: the k-component of T(f_j + C f_j) must vanish.
    let mut add_constraints = |image_f: &dyn Fn(usize) -> Vec<Scalar>, image_k: &dyn Fn(usize) -> Vec<Scalar>| {
        let kimg: Vec<Vec<Scalar>> = (0..k).map(|i| decompose(&image_k(i)).0).collect();
        for j in 0..m {
            let (ku, fu) = decompose(&image_f(free[j]));
            for t in 0..k {
                let mut row = vec![Scalar::zero(); unknowns];
                for i in 0..k {
                    row[i * m + j] += &kimg[i][t];
                }
                for l in 0..m {
                    row[t * m + l] -= &fu[l];
                }
                rows.push(row);
                rhs.push(-ku[t].clone());
            }
        }
    };
    for a in 0..k {
        let ka = kb[a].clone();
        add_constraints(
            &|f| algebra.bracket(&ka, &algebra.unit(f)),
            &|i| algebra.bracket(&ka, &kb[i]),
        );
    }
    for g in generators {
        if g.rows() != n || g.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: g.rows(),
            });
        }
        if kb.iter().any(|v| !linalg::is_zero_vec(&decompose(&g.mul_vec(v)).1)) {
            return Err(AlgebraError::NoComplement);
        }
        add_constraints(&|f| g.column(f), &|i| g.mul_vec(&kb[i]));
    }

    let solution = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        vec![Scalar::zero(); unknowns]
    } else {
        Matrix::from_rows(rows)
            .solve(&rhs)
            .ok_or(AlgebraError::NoComplement)?
    };
    let p: Vec<Vec<Scalar>> = (0..m)
        .map(|j| {
            let mut v = algebra.unit(free[j]);
            for i in 0..k {
                let c = &solution[i * m + j];
                for (x, y) in v.iter_mut().zip(&kb[i]) {
                    *x += c * y;
                }
            }
            v
        })
        .collect();
    Ok(linalg::span_basis(n, &p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{frac, int};

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn abelian_is_valid() {
        let g = LieAlgebra::abelian(3);
        assert_eq!(g.dim(), 3);
        assert!(g.is_unimodular());
        assert!(g.ad_basis(1).is_zero());
    }

    #[test]
    fn sl2_is_valid_and_unimodular() {
        let g = catalog::sl2();
        assert!(g.is_unimodular());
        let ad_x = g.ad_basis(0);
        assert_eq!(ad_x.trace(), int(0));
        assert_eq!(ad_x, Matrix::from_i64_rows(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let mut table = vec![vec![vec![int(0); 3]; 3]; 3];
        table[1][2][1] = int(1);
        table[2][1][1] = int(1);
        let err = LieAlgebra::new("bad", vec!["a".into(), "b".into(), "c".into()], table).unwrap_err();
        assert!(matches!(err, AlgebraError::AntisymmetryViolation { .. }));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [a,b]=a, [a,c]=a, [b,c]=b fails Jacobi.
        let basis = vec!["a".into(), "b".into(), "c".into()];
        let err = LieAlgebra::from_brackets(
            "bad",
            basis,
            &[(0, 1, v(&[1, 0, 0])), (0, 2, v(&[1, 0, 0])), (1, 2, v(&[0, 1, 0]))],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::JacobiViolation { i: 0, j: 1, l: 2, .. }));
    }

    #[test]
    fn ad_dimension_mismatch() {
        let g = LieAlgebra::abelian(2);
        assert_eq!(
            g.ad_matrix(&v(&[1])).unwrap_err(),
            AlgebraError::DimensionMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn ga_ad_and_character() {
        let g = catalog::ga1();
        // basis (H, S), [H,S] = S
        let ad_h = g.ad_basis(0);
        assert_eq!(ad_h, Matrix::from_i64_rows(&[&[0, 0], &[0, 1]]));
        assert_eq!(g.modular_character().values(), &[int(1), int(0)]);
        assert!(!g.is_unimodular());
    }

    #[test]
    fn character_vanishes_on_brackets() {
        for g in catalog::algebras() {
            let chi = g.modular_character();
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    assert_eq!(chi.eval(g.bracket_basis(i, j)), int(0), "{}", g.name());
                }
            }
        }
    }

    #[test]
    fn ad_is_a_representation() {
        for g in catalog::algebras() {
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let lhs = g.ad_matrix(g.bracket_basis(i, j)).unwrap();
                    let rhs = g.ad_basis(i).commutator(&g.ad_basis(j));
                    assert_eq!(lhs, rhs, "{}", g.name());
                }
            }
        }
    }

    #[test]
    fn sl2_so2_pair_validates() {
        let g = catalog::sl2();
        let pair = ReductivePair::new(
            g,
            vec![v(&[0, 1, -1])],
            vec![v(&[1, 0, 0]), v(&[0, 1, 1])],
            vec![],
        )
        .unwrap();
        assert_eq!(pair.q(), 2);
        assert!(pair.k_is_unimodular());
    }

    #[test]
    fn sl2_wrong_complement_rejected() {
        let err = ReductivePair::new(
            catalog::sl2(),
            vec![v(&[0, 1, -1])],
            vec![v(&[1, 0, 0]), v(&[0, 1, 0])],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::NotAdInvariant(InvarianceWitness::Bracket { .. })));
    }

    #[test]
    fn pair_error_paths() {
        let g = catalog::sl2();
        // not a subalgebra: span(Y, Z) brackets to X
        let err = ReductivePair::new(g.clone(), vec![v(&[0, 1, 0]), v(&[0, 0, 1])], vec![v(&[1, 0, 0])], vec![])
            .unwrap_err();
        assert!(matches!(err, AlgebraError::NotSubalgebra { .. }));
        let err = ReductivePair::new(g.clone(), vec![v(&[1, 0, 0])], vec![v(&[1, 0, 0]), v(&[0, 1, 0])], vec![])
            .unwrap_err();
        assert_eq!(err, AlgebraError::NotComplement);
        let err = ReductivePair::new(g.clone(), vec![], vec![g.unit(0), g.unit(1), g.unit(2)], vec![Matrix::zeros(3, 3)])
            .unwrap_err();
        assert_eq!(err, AlgebraError::NotAutomorphism(0));
    }

    #[test]
    fn trivial_pair_always_valid() {
        for g in catalog::algebras() {
            let p = ReductivePair::trivial(g);
            assert_eq!(p.k_dim(), 0);
        }
    }

    #[test]
    fn complement_search_sl2() {
        let g = catalog::sl2();
        let p = find_reductive_complement(&g, &[v(&[0, 1, -1])], &[]).unwrap();
        assert_eq!(p, vec![v(&[1, 0, 0]), v(&[0, 1, 1])]);
    }

    #[test]
    fn complement_search_heisenberg_center() {
        let g = catalog::heisenberg3();
        let p = find_reductive_complement(&g, &[v(&[0, 0, 1])], &[]).unwrap();
        assert_eq!(p, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
    }

    #[test]
    fn complement_search_trivial_k() {
        let g = catalog::sl2();
        let p = find_reductive_complement(&g, &[], &[]).unwrap();
        assert_eq!(p, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn complement_search_fails_for_ga_translations() {
        // k = span(S) in ga: any complement H + cS has [S, H + cS] = -S ∉ p.
        let g = catalog::ga1();
        assert_eq!(
            find_reductive_complement(&g, &[v(&[0, 1])], &[]).unwrap_err(),
            AlgebraError::NoComplement
        );
    }

    #[test]
    fn complement_search_respects_generators() {
        // e(2) with a reflection generator: the result must be preserved by it.
        let pair = catalog::e2_o2_pair();
        let p = find_reductive_complement(pair.algebra(), pair.k_basis(), pair.generators()).unwrap();
        ReductivePair::new(pair.algebra().clone(), pair.k_basis().to_vec(), p, pair.generators().to_vec()).unwrap();
    }

    #[test]
    fn restricted_trace_of_ga_in_itself() {
        let g = catalog::ga1();
        let t = g.restricted_traces(&[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(t, vec![int(1), int(0)]);
        let t = g.restricted_traces(&[vec![int(0), frac(1, 2)]]);
        assert_eq!(t, vec![int(0)]);
    }
}
