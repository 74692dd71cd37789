//! Exterior algebra of a finite-dimensional space over ℚ.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("degree overflow: {left} + {right} exceeds ambient dimension {dim}")]
    DegreeOverflow { left: usize, right: usize, dim: usize },
    #[error("expected an element of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("elements live in different ambient dimensions ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("invalid multi-index {0:?}")]
    InvalidIndex(Vec<usize>),
}

/// Strictly increasing list of basis indices `i₁ < … < iᵣ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, dim: usize) -> Result<Self, ExteriorError> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        if !increasing || indices.iter().any(|&i| i >= dim) {
            return Err(ExteriorError::InvalidIndex(indices));
        }
        Ok(MultiIndex(indices))
    }

    /// The full index `0 < 1 < … < dim-1`.
    pub fn top(dim: usize) -> Self {
        MultiIndex((0..dim).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// The index with position `pos` removed.
    pub fn without(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    /// `e_t ∧ e_self`, as (sign is negative, sorted index), or `None` if `t` repeats.
    pub fn insert_front(&self, t: usize) -> Option<(bool, MultiIndex)> {
        match self.0.binary_search(&t) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, t);
                Some((pos % 2 == 1, MultiIndex(v)))
            }
        }
    }

    /// `e_self ∧ e_other`, as (sign is negative, merged index), or `None` if they overlap.
    pub fn merge(&self, other: &MultiIndex) -> Option<(bool, MultiIndex)> {
        let mut merged = Vec::with_capacity(self.degree() + other.degree());
        let mut inversions = 0usize;
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a] < other.0[b]) {
                merged.push(self.0[a]);
                a += 1;
            } else if a == self.0.len() || other.0[b] < self.0[a] {
                // other.0[b] jumps over the remaining entries of self
                inversions += self.0.len() - a;
                merged.push(other.0[b]);
                b += 1;
            } else {
                return None;
            }
        }
        Some((inversions % 2 == 1, MultiIndex(merged)))
    }
}

/// Enumerated basis of `Λʳ` of an `n`-dimensional space, in lexicographic order.
#[derive(Debug, Clone)]
pub struct ExteriorBasis {
    dim: usize,
    degree: usize,
    list: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
}

impl ExteriorBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        let mut list = Vec::new();
        if degree <= dim {
            let mut current: Vec<usize> = (0..degree).collect();
            loop {
                list.push(MultiIndex(current.clone()));
                // advance to the next combination
                let mut i = degree;
                loop {
                    if i == 0 {
                        let lookup = index_map(&list);
                        return ExteriorBasis { dim, degree, list, lookup };
                    }
                    i -= 1;
                    if current[i] < dim - degree + i {
                        current[i] += 1;
                        for j in i + 1..degree {
                            current[j] = current[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        ExteriorBasis {
            dim,
            degree,
            list,
            lookup: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.list[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.list.iter()
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.lookup.get(idx).copied()
    }
}

fn index_map(list: &[MultiIndex]) -> HashMap<MultiIndex, usize> {
    list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// A homogeneous element of `Λʳ` in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl ExteriorElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorElement {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `coef · e_{indices}`; the indices may be unsorted, the sign is applied.
    pub fn monomial(dim: usize, indices: &[usize], coef: Scalar) -> Result<Self, ExteriorError> {
        let mut out = ExteriorElement::zero(dim, indices.len());
        let mut acc = (false, MultiIndex(Vec::new()));
        for &i in indices.iter().rev() {
            if i >= dim {
                return Err(ExteriorError::InvalidIndex(indices.to_vec()));
            }
            match acc.1.insert_front(i) {
                Some((neg, m)) => acc = (acc.0 ^ neg, m),
                None => return Ok(out),
            }
        }
        out.add_term(acc.1, if acc.0 { -coef } else { coef });
        Ok(out)
    }

    /// Degree-one element with the given coordinates.
    pub fn vector(coords: &[Scalar]) -> Self {
        let mut out = ExteriorElement::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(MultiIndex(vec![i]), c.clone());
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, idx: MultiIndex, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx.clone()).or_insert_with(Scalar::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> Result<Self, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::AmbientMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(ExteriorError::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = ExteriorElement::zero(self.dim, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * s);
        }
        out
    }
}

pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
    if a.dim != b.dim {
        return Err(ExteriorError::AmbientMismatch(a.dim, b.dim));
    }
    if a.degree + b.degree > a.dim {
        return Err(ExteriorError::DegreeOverflow {
            left: a.degree,
            right: b.degree,
            dim: a.dim,
        });
    }
    let mut out = ExteriorElement::zero(a.dim, a.degree + b.degree);
    for (ia, ca) in &a.terms {
        for (ib, cb) in &b.terms {
            if let Some((neg, m)) = ia.merge(ib) {
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Evaluates a top-degree element against the orientation `ε₀`, normalized
/// by `ε₀(e_orientation) = 1`.
pub fn eval_top(orientation: &MultiIndex, a: &ExteriorElement) -> Result<Scalar, ExteriorError> {
    if orientation.degree() != a.dim {
        return Err(ExteriorError::WrongDegree {
            expected: a.dim,
            found: orientation.degree(),
        });
    }
    if a.degree != a.dim {
        return Err(ExteriorError::WrongDegree {
            expected: a.dim,
            found: a.degree,
        });
    }
    // Orientation is the full index set; any reordering is folded into its sign.
    let top = MultiIndex::top(a.dim);
    let coef = a.coefficient(&top);
    if orientation == &top {
        Ok(coef)
    } else {
        Err(ExteriorError::InvalidIndex(orientation.indices().to_vec()))
    }
}

/// Matrix of `Λʳ M` on the lexicographic multi-index basis: entry `(I, J)`
/// is the minor of `M` on rows `I` and columns `J`.
pub fn exterior_power(m: &Matrix, r: usize) -> Matrix {
    assert!(m.is_square());
    let basis = ExteriorBasis::new(m.rows(), r);
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (a, rows) in basis.iter().enumerate() {
        for (b, cols) in basis.iter().enumerate() {
            out[(a, b)] = m.select(rows.indices(), cols.indices()).det();
        }
    }
    out
}

/// Matrix of the derivation extending `M` to `Λʳ`:
/// `e_{j₁}∧…∧e_{jᵣ} ↦ Σ_t e_{j₁}∧…∧M e_{j_t}∧…∧e_{jᵣ}`.
pub fn exterior_derivation(m: &Matrix, r: usize) -> Matrix {
    assert!(m.is_square());
    let basis = ExteriorBasis::new(m.rows(), r);
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (b, source) in basis.iter().enumerate() {
        for (t, &jt) in source.indices().iter().enumerate() {
            let rest = source.without(t);
            for s in 0..m.rows() {
                let c = &m[(s, jt)];
                if c.is_zero() {
                    continue;
                }
                // e_s sits at position t: move it to the front, then sort in.
                let Some((neg, k)) = rest.insert_front(s) else { continue };
                let neg = neg ^ (t % 2 == 1);
                let a = basis.position(&k).expect("index in basis");
                if neg {
                    out[(a, b)] -= c;
                } else {
                    out[(a, b)] += c;
                }
            }
        }
    }
    out
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
