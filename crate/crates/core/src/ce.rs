//! Chevalley–Eilenberg cochain complexes and their cohomology.
//!
//! Cochains of degree `r` are linear maps `Λʳ L → V`, stored as vectors
//! indexed by `(multi-index position) · dim V + (V coordinate)`. The same
//! builders serve the absolute complex (`L = g`) and the relative one
//! (`L = p`, bracket projected to `p`).

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::exec::Execution;
use crate::exterior::{binomial, ExteriorBasis};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("degree {degree} out of range for a complex of length {top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("module has {found} action matrices, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("action matrices do not form a representation: rho([e{i}, e{j}]) != [rho(e{i}), rho(e{j})]")]
    NotARepresentation { i: usize, j: usize },
    #[error("component action {0} is incompatible with the Lie algebra action")]
    IncompatibleComponentAction(usize),
    #[error("component action {0} is not invertible or has the wrong size")]
    BadComponentAction(usize),
    #[error("module pairs {found} component actions with {expected} generators")]
    GeneratorCountMismatch { expected: usize, found: usize },
    #[error("the subalgebra k is not unimodular")]
    KNotUnimodular,
    #[error("differential does not preserve invariant cochains in degree {0}")]
    InvariantsNotPreserved(usize),
}

/// A representation `rho: g → End(V)` given on basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientModule {
    dim: usize,
    rho: Vec<Matrix>,
}

impl CoefficientModule {
    /// Validates the representation property on all basis pairs.
    pub fn new(algebra: &LieAlgebra, dim: usize, rho: Vec<Matrix>) -> Result<Self, CohomologyError> {
        let n = algebra.dim();
        if rho.len() != n {
            return Err(CohomologyError::DimensionMismatch {
                expected: n,
                found: rho.len(),
            });
        }
        if rho.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(CohomologyError::DimensionMismatch {
                expected: dim,
                found: rho.iter().map(Matrix::rows).find(|&r| r != dim).unwrap_or(0),
            });
        }
        let module = CoefficientModule { dim, rho };
        for i in 0..n {
            for j in i + 1..n {
                let lhs = module.act(algebra.bracket_basis(i, j));
                let rhs = module.rho[i].commutator(&module.rho[j]);
                if lhs != rhs {
                    return Err(CohomologyError::NotARepresentation { i, j });
                }
            }
        }
        Ok(module)
    }

    pub fn trivial(algebra: &LieAlgebra) -> Self {
        CoefficientModule {
            dim: 1,
            rho: vec![Matrix::zeros(1, 1); algebra.dim()],
        }
    }

    pub fn adjoint(algebra: &LieAlgebra) -> Self {
        CoefficientModule {
            dim: algebra.dim(),
            rho: (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect(),
        }
    }

    /// One-dimensional module `X·v = χ(X) v` for the modular character χ.
    pub fn modular(algebra: &LieAlgebra) -> Self {
        let chi = algebra.modular_character();
        CoefficientModule {
            dim: 1,
            rho: chi.values().iter().map(|c| Matrix::scalar(1, c)).collect(),
        }
    }

    /// Dual module: `(Xφ)(v) = −φ(Xv)`, i.e. `rho*(X) = −rho(X)ᵀ`.
    pub fn dual(&self) -> Self {
        CoefficientModule {
            dim: self.dim,
            rho: self
                .rho
                .iter()
                .map(|m| m.transpose().scale(&Scalar::from_integer((-1).into())))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// Action matrix of an arbitrary element given in basis coordinates.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.rho) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// `differential(r)` maps degree `r` to `r + 1`.
    Cochain,
    /// `differential(r)` maps degree `r + 1` to `r`.
    Chain,
}

/// Graded dimensions and the maps between consecutive degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    grading: Grading,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<Matrix>) -> Self {
        debug_assert_eq!(differentials.len() + 1, dims.len().max(1));
        CochainComplex {
            grading: Grading::Cochain,
            dims,
            differentials,
        }
    }

    pub fn chain(dims: Vec<usize>, boundaries: Vec<Matrix>) -> Self {
        debug_assert_eq!(boundaries.len() + 1, dims.len().max(1));
        CochainComplex {
            grading: Grading::Chain,
            dims,
            differentials: boundaries,
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, r: usize) -> &Matrix {
        &self.differentials[r]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// True if every composite of consecutive maps vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| match self.grading {
            Grading::Cochain => w[1].mul(&w[0]).is_zero(),
            Grading::Chain => w[0].mul(&w[1]).is_zero(),
        })
    }

    /// The map leaving degree `r`.
    pub fn outgoing(&self, r: usize) -> Option<&Matrix> {
        match self.grading {
            Grading::Cochain => self.differentials.get(r),
            Grading::Chain => r.checked_sub(1).and_then(|i| self.differentials.get(i)),
        }
    }

    /// The map arriving in degree `r`.
    pub fn incoming(&self, r: usize) -> Option<&Matrix> {
        match self.grading {
            Grading::Cochain => r.checked_sub(1).and_then(|i| self.differentials.get(i)),
            Grading::Chain => self.differentials.get(r),
        }
    }

    pub fn betti(&self) -> BettiTable {
        self.betti_with(Execution::default())
    }

    pub fn betti_with(&self, exec: Execution) -> BettiTable {
        let ranks = exec.map_indices(self.differentials.len(), |r| self.differentials[r].rank_with(exec));
        let numbers = (0..self.dims.len())
            .map(|r| {
                let out_rank = ranks.get(r).copied().unwrap_or(0);
                let in_rank = if r == 0 { 0 } else { ranks[r - 1] };
                self.dims[r] - out_rank - in_rank
            })
            .collect();
        BettiTable {
            numbers,
            representatives: None,
        }
    }

    /// Betti numbers plus (co)cycles spanning a complement of the
    /// (co)boundaries in each degree.
    pub fn betti_with_representatives(&self) -> BettiTable {
        let mut table = self.betti();
        let reps = (0..self.dims.len())
            .map(|r| {
                let kernel = match self.outgoing(r) {
                    Some(d) => d.nullspace(),
                    None => (0..self.dims[r]).map(|i| unit(self.dims[r], i)).collect(),
                };
                let image: Vec<Vec<Scalar>> = match self.incoming(r) {
                    Some(d) => linalg::span_basis(self.dims[r], &d.transpose().to_rows()),
                    None => Vec::new(),
                };
                complement_in(self.dims[r], &image, &kernel)
            })
            .collect();
        table.representatives = Some(reps);
        table
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

/// Vectors of `candidates` extending a basis of `base` greedily, in order.
fn complement_in(dim: usize, base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut acc: Vec<Vec<Scalar>> = base.to_vec();
    let mut rank = linalg::vectors_rank(dim, &acc);
    let mut picked = Vec::new();
    for c in candidates {
        acc.push(c.clone());
        let r = linalg::vectors_rank(dim, &acc);
        if r > rank {
            rank = r;
            picked.push(c.clone());
        } else {
            acc.pop();
        }
    }
    picked
}

/// Betti numbers `b_0 … b_q`, optionally with representative (co)cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    numbers: Vec<usize>,
    representatives: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl BettiTable {
    pub fn from_numbers(numbers: Vec<usize>) -> Self {
        BettiTable {
            numbers,
            representatives: None,
        }
    }

    pub fn numbers(&self) -> &[usize] {
        &self.numbers
    }

    pub fn representatives(&self) -> Option<&[Vec<Vec<Scalar>>]> {
        self.representatives.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.numbers
            .iter()
            .enumerate()
            .map(|(r, &b)| if r % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl std::fmt::Display for BettiTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.numbers.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Data the CE builders need: the argument space `L` (dimension, bracket)
/// and the action of each `L` basis vector on `V`.
pub(crate) struct CeData<'a> {
    pub l_dim: usize,
    pub bracket: Box<dyn Fn(usize, usize) -> Vec<Scalar> + Sync + 'a>,
    pub rho: Vec<Matrix>,
    pub v_dim: usize,
}

impl CeData<'_> {
    /// Matrix of `d: C^r → C^{r+1}` with
    /// `(dω)(X₀,…,X_r) = Σ (−1)^i X_i·ω(…X̂_i…) + Σ_{i<j} (−1)^{i+j} ω([X_i,X_j], …X̂_i…X̂_j…)`.
    pub fn cochain_differential(&self, r: usize, exec: Execution) -> Matrix {
        let m = self.v_dim;
        let src = ExteriorBasis::new(self.l_dim, r);
        let dst = ExteriorBasis::new(self.l_dim, r + 1);
        let brackets: Vec<Vec<Vec<Scalar>>> = (0..self.l_dim)
            .map(|i| (0..self.l_dim).map(|j| (self.bracket)(i, j)).collect())
            .collect();
        let rows: Vec<Vec<(usize, usize, Scalar)>> = exec.map_indices(dst.len(), |jpos| {
            let target = dst.get(jpos);
            let idx = target.indices();
            let mut entries = Vec::new();
            for (i, &xi) in idx.iter().enumerate() {
                let rest = target.without(i);
                let Some(col) = src.position(&rest) else { continue };
                let neg = i % 2 == 1;
                let rho = &self.rho[xi];
                for b in 0..m {
                    for a in 0..m {
                        let v = &rho[(b, a)];
                        if !v.is_zero() {
                            entries.push((jpos * m + b, col * m + a, if neg { -v.clone() } else { v.clone() }));
                        }
                    }
                }
            }
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    let rest = target.without(j).without(i);
                    let neg = (i + j) % 2 == 1;
                    for (s, c) in brackets[idx[i]][idx[j]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let Some((flip, k)) = rest.insert_front(s) else { continue };
                        let col = src.position(&k).expect("index in basis");
                        let coef = if neg ^ flip { -c.clone() } else { c.clone() };
                        for a in 0..m {
                            entries.push((jpos * m + a, col * m + a, coef.clone()));
                        }
                    }
                }
            }
            entries
        });
        let mut d = Matrix::zeros(dst.len() * m, src.len() * m);
        for (row, col, v) in rows.into_iter().flatten() {
            d[(row, col)] += v;
        }
        d
    }

    /// Matrix of `∂: C_r → C_{r−1}` on `Λʳ L ⊗ V` with
    /// `∂(X₁∧…∧X_r⊗v) = Σ (−1)^i X₁…X̂_i…X_r ⊗ X_i·v + Σ_{i<j} (−1)^{i+j} [X_i,X_j]∧…X̂_i…X̂_j… ⊗ v`
    /// (positions counted from 1), so that `∂(X⊗v) = −X·v`.
    pub fn chain_boundary(&self, r: usize, exec: Execution) -> Matrix {
        assert!(r >= 1);
        let m = self.v_dim;
        let src = ExteriorBasis::new(self.l_dim, r);
        let dst = ExteriorBasis::new(self.l_dim, r - 1);
        let columns: Vec<Vec<(usize, usize, Scalar)>> = exec.map_indices(src.len(), |ipos| {
            let source = src.get(ipos);
            let idx = source.indices();
            let mut entries = Vec::new();
            for (i, &xi) in idx.iter().enumerate() {
                let rest = source.without(i);
                let row = dst.position(&rest).expect("index in basis");
                // 1-based position i+1
                let neg = i % 2 == 0;
                let rho = &self.rho[xi];
                for a in 0..m {
                    for b in 0..m {
                        let v = &rho[(b, a)];
                        if !v.is_zero() {
                            entries.push((row * m + b, ipos * m + a, if neg { -v.clone() } else { v.clone() }));
                        }
                    }
                }
            }
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    let rest = source.without(j).without(i);
                    let neg = (i + j) % 2 == 1;
                    for (s, c) in (self.bracket)(idx[i], idx[j]).iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let Some((flip, k)) = rest.insert_front(s) else { continue };
                        let row = dst.position(&k).expect("index in basis");
                        let coef = if neg ^ flip { -c.clone() } else { c.clone() };
                        for a in 0..m {
                            entries.push((row * m + a, ipos * m + a, coef.clone()));
                        }
                    }
                }
            }
            entries
        });
        let mut d = Matrix::zeros(dst.len() * m, src.len() * m);
        for (row, col, v) in columns.into_iter().flatten() {
            d[(row, col)] += v;
        }
        d
    }

    pub fn cochain_dims(&self) -> Vec<usize> {
        (0..=self.l_dim)
            .map(|r| binomial(self.l_dim, r) * self.v_dim)
            .collect()
    }
}

fn absolute_data<'a>(g: &'a LieAlgebra, v: &CoefficientModule) -> CeData<'a> {
    CeData {
        l_dim: g.dim(),
        bracket: Box::new(move |i, j| g.bracket_basis(i, j).to_vec()),
        rho: v.rho.clone(),
        v_dim: v.dim,
    }
}

/// Matrix of the CE differential in degree `r` (`0 ≤ r < dim g`).
pub fn ce_differential(g: &LieAlgebra, v: &CoefficientModule, r: usize) -> Result<Matrix, CohomologyError> {
    if r >= g.dim() {
        return Err(CohomologyError::DegreeOutOfRange { degree: r, top: g.dim() });
    }
    Ok(absolute_data(g, v).cochain_differential(r, Execution::default()))
}

pub fn ce_complex(g: &LieAlgebra, v: &CoefficientModule) -> CochainComplex {
    ce_complex_with(g, v, Execution::default())
}

pub fn ce_complex_with(g: &LieAlgebra, v: &CoefficientModule, exec: Execution) -> CochainComplex {
    let data = absolute_data(g, v);
    let diffs = exec.map_indices(g.dim(), |r| data.cochain_differential(r, exec));
    CochainComplex::new(data.cochain_dims(), diffs)
}

/// Cohomology dimensions `dim H^r(g; V)`, `r = 0 … dim g`.
pub fn betti(g: &LieAlgebra, v: &CoefficientModule) -> BettiTable {
    betti_with(g, v, Execution::default())
}

pub fn betti_with(g: &LieAlgebra, v: &CoefficientModule, exec: Execution) -> BettiTable {
    ce_complex_with(g, v, exec).betti_with(exec)
}

pub fn betti_with_representatives(g: &LieAlgebra, v: &CoefficientModule) -> BettiTable {
    ce_complex(g, v).betti_with_representatives()
}

/// Chain complex `Λʳ g ⊗ V` with the CE boundary; entry `r` maps degree `r+1` to `r`.
pub fn ce_chain_complex(g: &LieAlgebra, v: &CoefficientModule) -> CochainComplex {
    let data = absolute_data(g, v);
    let exec = Execution::default();
    let boundaries = exec.map_indices(g.dim(), |r| data.chain_boundary(r + 1, exec));
    CochainComplex::chain(data.cochain_dims(), boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    #[test]
    fn constants_are_closed() {
        let g = catalog::sl2();
        let d0 = ce_differential(&g, &CoefficientModule::trivial(&g), 0).unwrap();
        assert!(d0.is_zero());
    }

    #[test]
    fn ga_differential_of_theta_s() {
        // basis (H, S); Λ¹ basis (θ_H, θ_S), Λ² basis (θ_H∧θ_S)
        let g = catalog::ga1();
        let d1 = ce_differential(&g, &CoefficientModule::trivial(&g), 1).unwrap();
        assert_eq!(d1, Matrix::from_i64_rows(&[&[0, -1]]));
    }

    #[test]
    fn degree_out_of_range() {
        let g = catalog::ga1();
        assert_eq!(
            ce_differential(&g, &CoefficientModule::trivial(&g), 2).unwrap_err(),
            CohomologyError::DegreeOutOfRange { degree: 2, top: 2 }
        );
    }

    #[test]
    fn catalog_betti_numbers() {
        let cases: Vec<(LieAlgebra, Vec<usize>)> = vec![
            (catalog::sl2(), vec![1, 0, 0, 1]),
            (catalog::ga1(), vec![1, 1, 0]),
            (catalog::heisenberg3(), vec![1, 2, 2, 1]),
            (catalog::su2(), vec![1, 0, 0, 1]),
            (LieAlgebra::abelian(3), vec![1, 3, 3, 1]),
        ];
        for (g, expected) in cases {
            let b = betti(&g, &CoefficientModule::trivial(&g));
            assert_eq!(b.numbers(), expected.as_slice(), "{}", g.name());
            assert_eq!(b.euler_characteristic(), 0);
        }
    }

    #[test]
    fn squares_vanish_with_nontrivial_coefficients() {
        for g in catalog::algebras() {
            for v in [CoefficientModule::adjoint(&g), CoefficientModule::adjoint(&g).dual(), CoefficientModule::modular(&g)] {
                assert!(ce_complex(&g, &v).squares_to_zero(), "{}", g.name());
                assert!(ce_chain_complex(&g, &v).squares_to_zero(), "{} chains", g.name());
            }
        }
    }

    #[test]
    fn chain_degree_one_boundary() {
        let g = catalog::ga1();
        let v = CoefficientModule::modular(&g);
        let c = ce_chain_complex(&g, &v);
        // ∂(H⊗1) = −χ(H) = −1, ∂(S⊗1) = 0
        assert_eq!(c.differential(0), &Matrix::from_i64_rows(&[&[-1, 0]]));
        assert_eq!(c.betti().numbers()[0], 0);
    }

    #[test]
    fn representation_check() {
        let g = catalog::sl2();
        let bad = vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
        assert!(matches!(
            CoefficientModule::new(&g, 1, bad),
            Err(CohomologyError::NotARepresentation { .. })
        ));
        let ad = CoefficientModule::adjoint(&g);
        assert!(CoefficientModule::new(&g, 3, ad.rho().to_vec()).is_ok());
    }

    #[test]
    fn representatives_are_cocycles() {
        for g in catalog::algebras() {
            let v = CoefficientModule::trivial(&g);
            let complex = ce_complex(&g, &v);
            let table = complex.betti_with_representatives();
            let reps = table.representatives().unwrap();
            for (r, basis) in reps.iter().enumerate() {
                assert_eq!(basis.len(), table.numbers()[r]);
                if let Some(d) = complex.outgoing(r) {
                    for rep in basis {
                        assert!(linalg::is_zero_vec(&d.mul_vec(rep)));
                    }
                }
            }
        }
        let g = catalog::ga1();
        let table = betti_with_representatives(&g, &CoefficientModule::trivial(&g));
        assert_eq!(table.representatives().unwrap()[1], vec![vec![int(1), int(0)]]);
    }
}
