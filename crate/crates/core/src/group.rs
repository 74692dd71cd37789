//! Group-level data entering through adjoint matrices, and finite groups
//! given by multiplication tables.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::{LieAlgebra, ReductivePair};
use crate::exec::Execution;
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element {0} is not an invertible Lie algebra automorphism")]
    NotAutomorphism(String),
    #[error("element {0} does not preserve the splitting k + p")]
    NotBlockPreserving(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("index set {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("action matrices do not form a representation (elements {0} and {1})")]
    NotARepresentation(usize, usize),
    #[error("group {0} carries no action matrices")]
    NoAction(String),
}

/// The adjoint action of a group element on its Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElementAd {
    label: String,
    ad: Matrix,
}

impl GroupElementAd {
    pub fn new(algebra: &LieAlgebra, label: impl Into<String>, ad: Matrix) -> Result<Self, GroupError> {
        let label = label.into();
        if !algebra.is_automorphism(&ad) {
            return Err(GroupError::NotAutomorphism(label));
        }
        Ok(GroupElementAd { label, ad })
    }

    pub fn identity(algebra: &LieAlgebra) -> Self {
        GroupElementAd {
            label: "e".into(),
            ad: Matrix::identity(algebra.dim()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ad(&self) -> &Matrix {
        &self.ad
    }

    /// Composition `self · other`, labelled `self*other`.
    pub fn compose(&self, other: &GroupElementAd) -> GroupElementAd {
        GroupElementAd {
            label: format!("{}*{}", self.label, other.label),
            ad: self.ad.mul(&other.ad),
        }
    }
}

/// Adjoint matrix of conjugation `M ↦ g M g⁻¹` on a Lie algebra of
/// matrices with the given basis. `None` if `g` is singular or the image
/// leaves the span of the basis.
pub fn conjugation_ad(basis: &[Matrix], g: &Matrix) -> Option<Matrix> {
    let inv = g.inverse()?;
    let flat = |m: &Matrix| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
    let rows = basis.first()?.rows() * basis.first()?.cols();
    let b = Matrix::from_columns(rows, &basis.iter().map(flat).collect::<Vec<_>>());
    let cols = basis
        .iter()
        .map(|m| b.solve(&flat(&g.mul(m).mul(&inv))))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(basis.len(), &cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetAd {
    pub det: Scalar,
    /// `|det Ad|`
    pub modular: Scalar,
    pub strongly_unimodular: bool,
    pub unimodular: bool,
}

pub fn det_ad(e: &GroupElementAd) -> DetAd {
    let det = e.ad.det();
    let modular = det.abs();
    DetAd {
        strongly_unimodular: det.is_one(),
        unimodular: modular.is_one(),
        det,
        modular,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetAdDecomposition {
    pub det_k: Scalar,
    pub det_p: Scalar,
    pub det: Scalar,
    pub product_holds: bool,
}

/// Block determinants of an element preserving `k` and `p`.
pub fn det_ad_decomposition(pair: &ReductivePair, e: &GroupElementAd) -> Result<DetAdDecomposition, GroupError> {
    if !pair.preserves_splitting(&e.ad) {
        return Err(GroupError::NotBlockPreserving(e.label.clone()));
    }
    let (k, p) = pair.blocks(&e.ad);
    let det_k = k.det();
    let det_p = p.det();
    let det = e.ad.det();
    Ok(DetAdDecomposition {
        product_holds: &det_k * &det_p == det,
        det_k,
        det_p,
        det,
    })
}

/// A finite group by its multiplication table `table[g][h] = g·h`,
/// optionally acting linearly on a vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    action: Option<Vec<Matrix>>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |s: &str| Err(GroupError::NotAGroup(s.to_string()));
        if n == 0 {
            return bad("empty table");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not square over its index set");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for (g, row) in table.iter().enumerate() {
            match (0..n).find(|&h| row[h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return Err(GroupError::NotAGroup(format!("element {g} has no inverse"))),
            }
        }
        let associative = Execution::default().all_indices(n, |a| {
            (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
        });
        if !associative {
            return bad("multiplication is not associative");
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverses,
            action: None,
        })
    }

    /// Attaches action matrices, one per element in table order.
    pub fn with_action(mut self, action: Vec<Matrix>) -> Result<Self, GroupError> {
        let n = self.order();
        if action.len() != n {
            return Err(GroupError::NotARepresentation(action.len().min(n), 0));
        }
        let dim = action[0].rows();
        if let Some(g) = action.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(GroupError::NotARepresentation(g, g));
        }
        for g in 0..n {
            for h in 0..n {
                if action[g].mul(&action[h]) != action[self.table[g][h]] {
                    return Err(GroupError::NotARepresentation(g, h));
                }
            }
        }
        self.action = Some(action);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn action(&self) -> Option<&[Matrix]> {
        self.action.as_deref()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        !members.is_empty()
            && members.iter().all(|&x| x < self.order())
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| members.contains(&self.mul(a, self.inverse(b)))))
    }

    /// `g K g⁻¹`, sorted.
    pub fn conjugate(&self, set: &[usize], g: usize) -> Vec<usize> {
        let gi = self.inverse(g);
        let out: BTreeSet<usize> = set.iter().map(|&k| self.mul(self.mul(g, k), gi)).collect();
        out.into_iter().collect()
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let sorted: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        (0..self.order()).all(|g| self.conjugate(&sorted, g) == sorted)
    }

    /// Smallest subgroup containing `set`.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = set.iter().copied().collect();
        members.insert(self.identity);
        loop {
            let new: Vec<usize> = members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(a, b))
                .filter(|x| !members.contains(x))
                .collect();
            if new.is_empty() {
                return members.into_iter().collect();
            }
            members.extend(new);
        }
    }

    /// Every subgroup, each sorted, in lexicographic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let bigger = self.closure(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }
}

/// `⋂_g g K g⁻¹`, sorted.
pub fn normal_core(group: &FiniteGroup, k: &[usize]) -> Result<Vec<usize>, GroupError> {
    if !group.is_subgroup(k) {
        return Err(GroupError::NotASubgroup(k.to_vec()));
    }
    let mut core: BTreeSet<usize> = k.iter().copied().collect();
    for g in 0..group.order() {
        let conj: BTreeSet<usize> = group.conjugate(k, g).into_iter().collect();
        core = core.intersection(&conj).copied().collect();
    }
    Ok(core.into_iter().collect())
}

/// `P = (1/N) Σ_g action(g)`.
pub fn average_projector(group: &FiniteGroup) -> Result<Matrix, GroupError> {
    let action = group.action().ok_or_else(|| GroupError::NoAction(group.name.clone()))?;
    let dim = action[0].rows();
    let sum = action.iter().fold(Matrix::zeros(dim, dim), |acc, m| acc.add(m));
    Ok(sum.scale(&scalar::frac(1, group.order() as i64)))
}

/// Vectors fixed by every action matrix.
pub fn invariant_vectors(group: &FiniteGroup) -> Result<Vec<Vec<Scalar>>, GroupError> {
    let action = group.action().ok_or_else(|| GroupError::NoAction(group.name.clone()))?;
    let dim = action[0].rows();
    let stacked = action
        .iter()
        .fold(Matrix::zeros(0, dim), |acc, m| acc.vstack(&m.sub(&Matrix::identity(dim))));
    Ok(stacked.nullspace())
}

/// True if `P² = P` and `P v = v` for every invariant `v`.
pub fn projector_contract_holds(group: &FiniteGroup) -> Result<bool, GroupError> {
    let p = average_projector(group)?;
    let invariants = invariant_vectors(group)?;
    let idempotent = p.mul(&p) == p;
    let retracts = invariants.iter().all(|v| p.mul_vec(v) == *v);
    let image_is_invariants = p.rank() == invariants.len();
    Ok(idempotent && retracts && image_is_invariants)
}
