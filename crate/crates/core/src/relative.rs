//! Relative (g, K) cohomology and homology on a reductive pair, the
//! Hazewinkel twist and Poincaré duality.
//!
//! Invariance under `K` is imposed through two families of linear
//! conditions: annihilation by `k` (the identity component) and fixedness
//! under each listed component generator.

use num_traits::{One, Zero};

use crate::algebra::ReductivePair;
use crate::ce::{BettiTable, CeData, CochainComplex, CoefficientModule, CohomologyError};
use crate::exec::Execution;
use crate::exterior::{binomial, exterior_derivation, exterior_power};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// A `(g, K)`-module: a representation of `g` plus the action of each
/// component generator of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkModule {
    coefficient: CoefficientModule,
    component_action: Vec<Matrix>,
    /// `component_action[i]` acts as the group element whose adjoint
    /// action is `pair.generators()[linkage[i]]`.
    linkage: Vec<usize>,
}

impl GkModule {
    /// Validates `α(k) ρ(X) α(k)⁻¹ = ρ(Ad(k) X)` for every generator and basis vector.
    pub fn new(
        pair: &ReductivePair,
        coefficient: CoefficientModule,
        component_action: Vec<Matrix>,
        linkage: Vec<usize>,
    ) -> Result<Self, CohomologyError> {
        let gens = pair.generators();
        let mut seen = vec![false; gens.len()];
        if component_action.len() != gens.len() || linkage.len() != gens.len() {
            return Err(CohomologyError::GeneratorCountMismatch {
                expected: gens.len(),
                found: component_action.len().max(linkage.len()),
            });
        }
        for &l in &linkage {
            if l >= gens.len() || seen[l] {
                return Err(CohomologyError::GeneratorCountMismatch {
                    expected: gens.len(),
                    found: linkage.len(),
                });
            }
            seen[l] = true;
        }
        let g = pair.algebra();
        let m = coefficient.dim();
        for (idx, (alpha, &l)) in component_action.iter().zip(&linkage).enumerate() {
            if alpha.rows() != m || alpha.cols() != m {
                return Err(CohomologyError::BadComponentAction(idx));
            }
            let inv = alpha
                .inverse()
                .ok_or(CohomologyError::BadComponentAction(idx))?;
            let ad = &gens[l];
            for x in 0..g.dim() {
                let lhs = alpha.mul(&coefficient.rho()[x]).mul(&inv);
                let rhs = coefficient.act(&ad.column(x));
                if lhs != rhs {
                    return Err(CohomologyError::IncompatibleComponentAction(idx));
                }
            }
        }
        Ok(GkModule {
            coefficient,
            component_action,
            linkage,
        })
    }

    /// `V = ℝ` with `X·t = 0` and `k·t = t`.
    pub fn trivial(pair: &ReductivePair) -> Self {
        let n = pair.generators().len();
        GkModule {
            coefficient: CoefficientModule::trivial(pair.algebra()),
            component_action: vec![Matrix::identity(1); n],
            linkage: (0..n).collect(),
        }
    }

    /// The adjoint module `g`, with generators acting through their Ad matrices.
    pub fn adjoint(pair: &ReductivePair) -> Self {
        let n = pair.generators().len();
        GkModule {
            coefficient: CoefficientModule::adjoint(pair.algebra()),
            component_action: pair.generators().to_vec(),
            linkage: (0..n).collect(),
        }
    }

    /// `V = ℝ` with `X·v = trace(ad_X) v` and generators acting trivially.
    pub fn modular(pair: &ReductivePair) -> Result<Self, CohomologyError> {
        let n = pair.generators().len();
        GkModule::new(
            pair,
            CoefficientModule::modular(pair.algebra()),
            vec![Matrix::identity(1); n],
            (0..n).collect(),
        )
    }

    /// Dual module: `(Xφ)(v) = −φ(Xv)`, `(kφ)(v) = φ(k⁻¹v)`.
    pub fn dual(&self) -> Self {
        GkModule {
            coefficient: self.coefficient.dual(),
            component_action: self
                .component_action
                .iter()
                .map(|a| a.inverse().expect("validated actions are invertible").transpose())
                .collect(),
            linkage: self.linkage.clone(),
        }
    }

    pub fn coefficient(&self) -> &CoefficientModule {
        &self.coefficient
    }

    pub fn dim(&self) -> usize {
        self.coefficient.dim()
    }

    pub fn component_action(&self) -> &[Matrix] {
        &self.component_action
    }

    pub fn linkage(&self) -> &[usize] {
        &self.linkage
    }

    /// `(α(k), Ad(k))` for each component generator.
    fn generator_pairs<'a>(&'a self, pair: &'a ReductivePair) -> impl Iterator<Item = (&'a Matrix, &'a Matrix)> {
        self.component_action
            .iter()
            .zip(&self.linkage)
            .map(move |(a, &l)| (a, &pair.generators()[l]))
    }
}

/// The Hazewinkel twist `V^tw`: `X ⊙ v = X·v − trace(ad_X) v` and
/// `k ⊙ v = det(Ad_p(k))⁻¹ k·v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HazewinkelModule {
    module: GkModule,
}

impl HazewinkelModule {
    pub fn module(&self) -> &GkModule {
        &self.module
    }

    pub fn into_module(self) -> GkModule {
        self.module
    }
}

pub fn hazewinkel_twist(pair: &ReductivePair, v: &GkModule) -> Result<HazewinkelModule, CohomologyError> {
    if !pair.k_is_unimodular() {
        return Err(CohomologyError::KNotUnimodular);
    }
    let g = pair.algebra();
    let chi = g.modular_character();
    let m = v.dim();
    let rho: Vec<Matrix> = v
        .coefficient
        .rho()
        .iter()
        .zip(chi.values())
        .map(|(r, c)| r.sub(&Matrix::scalar(m, c)))
        .collect();
    let coefficient = CoefficientModule::new(g, m, rho)?;
    let component_action = v
        .generator_pairs(pair)
        .map(|(alpha, ad)| {
            let det_p = pair.blocks(ad).1.det();
            alpha.scale(&det_p.recip())
        })
        .collect();
    let module = GkModule::new(pair, coefficient, component_action, v.linkage.clone())?;
    Ok(HazewinkelModule { module })
}

fn relative_data<'a>(pair: &'a ReductivePair, v: &GkModule) -> CeData<'a> {
    CeData {
        l_dim: pair.q(),
        bracket: Box::new(move |i, j| pair.p_bracket(i, j)),
        rho: pair
            .p_basis()
            .iter()
            .map(|x| v.coefficient.act(x))
            .collect(),
        v_dim: v.dim(),
    }
}

/// Linear conditions whose common kernel is `L_K(Λʳ p, V)`, stacked as rows.
fn invariance_constraints(pair: &ReductivePair, v: &GkModule, r: usize) -> Matrix {
    let m = v.dim();
    let size = binomial(pair.q(), r) * m;
    let id_lambda = Matrix::identity(binomial(pair.q(), r));
    let id_v = Matrix::identity(m);
    let mut stacked = Matrix::zeros(0, size);
    for a in 0..pair.k_dim() {
        // (X·ω) = ρ(X)∘ω − ω∘ad(X): rows indexed like cochains.
        let der = exterior_derivation(&pair.k_action_on_p(a), r);
        let rho_x = v.coefficient.act(&pair.k_basis()[a]);
        let op = id_lambda.kron(&rho_x).sub(&der.transpose().kron(&id_v));
        stacked = stacked.vstack(&op);
    }
    for (alpha, ad) in v.generator_pairs(pair) {
        // ω fixed by k  ⇔  ω∘Λʳ(Ad_p k) = α(k)∘ω
        let power = exterior_power(&pair.blocks(ad).1, r);
        let op = power.transpose().kron(&id_v).sub(&id_lambda.kron(alpha));
        stacked = stacked.vstack(&op);
    }
    stacked
}

/// Basis of `L_K(Λʳ p, V)` as cochain vectors, in reduced echelon order.
pub fn invariant_cochains(pair: &ReductivePair, v: &GkModule, r: usize) -> Vec<Vec<Scalar>> {
    let size = binomial(pair.q(), r) * v.dim();
    let constraints = invariance_constraints(pair, v, r);
    if constraints.rows() == 0 {
        return (0..size).map(|i| unit(size, i)).collect();
    }
    constraints.nullspace()
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// The relative cochain complex in coordinates of the invariant bases.
pub fn relative_complex(pair: &ReductivePair, v: &GkModule) -> Result<CochainComplex, CohomologyError> {
    relative_complex_with(pair, v, Execution::default())
}

pub fn relative_complex_with(
    pair: &ReductivePair,
    v: &GkModule,
    exec: Execution,
) -> Result<CochainComplex, CohomologyError> {
    let q = pair.q();
    let data = relative_data(pair, v);
    let bases: Vec<Vec<Vec<Scalar>>> = exec.map_indices(q + 1, |r| invariant_cochains(pair, v, r));
    let diffs: Vec<Result<Matrix, CohomologyError>> = exec.map_indices(q, |r| {
        let full = data.cochain_differential(r, exec);
        let target_dim = binomial(q, r + 1) * v.dim();
        let target = Matrix::from_columns(target_dim, &bases[r + 1]);
        let cols = bases[r]
            .iter()
            .map(|b| {
                target
                    .solve(&full.mul_vec(b))
                    .ok_or(CohomologyError::InvariantsNotPreserved(r))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(bases[r + 1].len(), &cols))
    });
    let diffs = diffs.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CochainComplex::new(bases.iter().map(Vec::len).collect(), diffs))
}

/// `dim H^r(g, K; V)` for `r = 0 … q`.
pub fn relative_betti(pair: &ReductivePair, v: &GkModule) -> Result<BettiTable, CohomologyError> {
    Ok(relative_complex(pair, v)?.betti())
}

pub fn relative_betti_with(pair: &ReductivePair, v: &GkModule, exec: Execution) -> Result<BettiTable, CohomologyError> {
    Ok(relative_complex_with(pair, v, exec)?.betti_with(exec))
}

/// Generators of the submodule spanned by `X·c` (`X ∈ k`) and `k·c − c`,
/// whose quotient is the coinvariant space `Λʳ p ⊗_K V`.
fn coinvariant_relations(pair: &ReductivePair, v: &GkModule, r: usize) -> Vec<Vec<Scalar>> {
    let m = v.dim();
    let size = binomial(pair.q(), r) * m;
    let id_lambda = Matrix::identity(binomial(pair.q(), r));
    let id_v = Matrix::identity(m);
    let mut ops: Vec<Matrix> = Vec::new();
    for a in 0..pair.k_dim() {
        let der = exterior_derivation(&pair.k_action_on_p(a), r);
        let rho_x = v.coefficient.act(&pair.k_basis()[a]);
        ops.push(der.kron(&id_v).add(&id_lambda.kron(&rho_x)));
    }
    for (alpha, ad) in v.generator_pairs(pair) {
        let power = exterior_power(&pair.blocks(ad).1, r);
        ops.push(power.kron(alpha).sub(&Matrix::identity(size)));
    }
    let columns: Vec<Vec<Scalar>> = ops
        .iter()
        .flat_map(|op| (0..op.cols()).map(move |j| op.column(j)))
        .collect();
    linalg::span_basis(size, &columns)
}

/// Quotient coordinates: a greedy complement of the relations among the
/// standard basis vectors, and a solver that reads off those coordinates.
struct Quotient {
    relations: Vec<Vec<Scalar>>,
    kept: Vec<usize>,
    solver: Matrix,
}

impl Quotient {
    fn new(size: usize, relations: Vec<Vec<Scalar>>) -> Self {
        let mut acc = relations.clone();
        let mut rank = acc.len();
        let mut kept = Vec::new();
        for i in 0..size {
            acc.push(unit(size, i));
            let rr = linalg::vectors_rank(size, &acc);
            if rr > rank {
                rank = rr;
                kept.push(i);
            } else {
                acc.pop();
            }
        }
        let mut cols = relations.clone();
        cols.extend(kept.iter().map(|&i| unit(size, i)));
        let solver = Matrix::from_columns(size, &cols);
        Quotient {
            relations,
            kept,
            solver,
        }
    }

    fn dim(&self) -> usize {
        self.kept.len()
    }

    fn project(&self, w: &[Scalar]) -> Vec<Scalar> {
        let x = self.solver.solve(w).expect("relations and kept units span the space");
        x[self.relations.len()..].to_vec()
    }

    fn contains(&self, w: &[Scalar]) -> bool {
        linalg::is_zero_vec(&self.project(w))
    }
}

/// The coinvariant chain complex `Λʳ p ⊗_K V` in quotient coordinates.
/// Entry `r` of the result maps degree `r + 1` to degree `r`.
pub fn relative_chain_complex(pair: &ReductivePair, v: &GkModule) -> Result<CochainComplex, CohomologyError> {
    relative_chain_complex_with(pair, v, Execution::default())
}

pub fn relative_chain_complex_with(
    pair: &ReductivePair,
    v: &GkModule,
    exec: Execution,
) -> Result<CochainComplex, CohomologyError> {
    let q = pair.q();
    let m = v.dim();
    let data = relative_data(pair, v);
    let quotients: Vec<Quotient> = exec.map_indices(q + 1, |r| {
        Quotient::new(binomial(q, r) * m, coinvariant_relations(pair, v, r))
    });
    let boundaries: Vec<Result<Matrix, CohomologyError>> = exec.map_indices(q, |r| {
        // ∂: degree r+1 → degree r
        let full = data.chain_boundary(r + 1, exec);
        let (src, dst) = (&quotients[r + 1], &quotients[r]);
        if !src.relations.iter().all(|u| dst.contains(&full.mul_vec(u))) {
            return Err(CohomologyError::InvariantsNotPreserved(r + 1));
        }
        let cols: Vec<Vec<Scalar>> = src
            .kept
            .iter()
            .map(|&i| dst.project(&full.column(i)))
            .collect();
        Ok(Matrix::from_columns(dst.dim(), &cols))
    });
    let boundaries = boundaries.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CochainComplex::chain(
        quotients.iter().map(Quotient::dim).collect(),
        boundaries,
    ))
}

/// `dim H_r(g, K; V)` for `r = 0 … q`.
pub fn relative_homology_betti(pair: &ReductivePair, v: &GkModule) -> Result<BettiTable, CohomologyError> {
    Ok(relative_chain_complex(pair, v)?.betti())
}

/// Simultaneous fixed points of `ρ(p)`, `ρ(k)` and every component generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    pub dim: usize,
    pub basis: Vec<Vec<Scalar>>,
}

pub fn h0_fixed_points(pair: &ReductivePair, v: &GkModule) -> FixedPoints {
    let m = v.dim();
    let mut stacked = Matrix::zeros(0, m);
    for x in pair.p_basis().iter().chain(pair.k_basis()) {
        stacked = stacked.vstack(&v.coefficient.act(x));
    }
    for alpha in &v.component_action {
        stacked = stacked.vstack(&alpha.sub(&Matrix::identity(m)));
    }
    let basis = if stacked.rows() == 0 {
        (0..m).map(|i| unit(m, i)).collect()
    } else {
        stacked.nullspace()
    };
    FixedPoints {
        dim: basis.len(),
        basis,
    }
}

/// Both sides of `H^r(g,K;V) ≅ H_{q−r}(g,K;V^tw)` for every `r`, and the
/// top-degree statement `H^q(g,K;ℝ)* ≅ H^0(g,K;(ℝ^tw)*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub q: usize,
    pub cohomology: Vec<usize>,
    /// `twisted_homology[r] = dim H_{q−r}(g, K; V^tw)`.
    pub twisted_homology: Vec<usize>,
    pub per_degree: Vec<bool>,
    pub top_cohomology_trivial: usize,
    pub h0_dual_twist: usize,
    pub corollary_holds: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.per_degree.iter().all(|&b| b) && self.corollary_holds
    }
}

pub fn duality_check(pair: &ReductivePair, v: &GkModule) -> Result<DualityReport, CohomologyError> {
    let q = pair.q();
    let cohomology = relative_betti(pair, v)?.numbers().to_vec();
    let twisted = hazewinkel_twist(pair, v)?;
    let homology = relative_homology_betti(pair, twisted.module())?.numbers().to_vec();
    let twisted_homology: Vec<usize> = (0..=q).map(|r| homology[q - r]).collect();
    let per_degree = cohomology
        .iter()
        .zip(&twisted_homology)
        .map(|(a, b)| a == b)
        .collect();
    let trivial = GkModule::trivial(pair);
    let top_cohomology_trivial = relative_betti(pair, &trivial)?.numbers()[q];
    let dual_twist = hazewinkel_twist(pair, &trivial)?.into_module().dual();
    let h0_dual_twist = h0_fixed_points(pair, &dual_twist).dim;
    Ok(DualityReport {
        q,
        cohomology,
        twisted_homology,
        per_degree,
        top_cohomology_trivial,
        h0_dual_twist,
        corollary_holds: top_cohomology_trivial == h0_dual_twist,
    })
}

/// True if `trace ad` vanishes on `p` and every generator has `det Ad_p = 1`.
pub fn strongly_unimodular_data(pair: &ReductivePair) -> bool {
    let chi = pair.algebra().modular_character();
    pair.p_basis().iter().all(|x| chi.eval(x).is_zero())
        && pair
            .generators()
            .iter()
            .all(|g| pair.blocks(g).1.det().is_one())
}
