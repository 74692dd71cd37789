use proptest::prelude::*;

use foliate::algebra::ReductivePair;
use foliate::exterior::{self, ExteriorBasis, ExteriorElement};
use foliate::relative::{self, GkModule};
use foliate::scalar::{frac, int};
use foliate::tischler::{self, PeriodGroup, VerdictKind};
use foliate::{ce, CoefficientModule, LieAlgebra, Matrix, Scalar};

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small(), rows * cols).prop_map(move |xs| {
        Matrix::from_rows(xs.chunks(cols).map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    })
}

fn rref_rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

fn element(dim: usize, degree: usize) -> impl Strategy<Value = ExteriorElement> {
    let count = ExteriorBasis::new(dim, degree).len();
    prop::collection::vec(small(), count).prop_map(move |coefs| {
        let basis = ExteriorBasis::new(dim, degree);
        let mut acc = ExteriorElement::zero(dim, degree);
        for (idx, c) in basis.iter().zip(coefs) {
            let term = ExteriorElement::monomial(dim, idx.indices(), int(c)).unwrap();
            acc = acc.add(&term).unwrap();
        }
        acc
    })
}

/// `R ⋉_D R^k` with basis `T, e_1..e_k` and `[T, e_i] = D e_i`.
fn semidirect(d: &Matrix) -> LieAlgebra {
    let k = d.rows();
    let basis = std::iter::once("T".to_string()).chain((1..=k).map(|i| format!("e{i}"))).collect();
    let brackets: Vec<(usize, usize, Vec<Scalar>)> = (0..k)
        .map(|i| {
            let mut v = vec![int(0)];
            v.extend(d.column(i));
            (0, i + 1, v)
        })
        .collect();
    LieAlgebra::from_brackets("semidirect", basis, &brackets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_rank_matches_rref(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(m.rank(), rref_rank(&m));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn det_is_multiplicative(a in matrix(4, 4), b in matrix(4, 4)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        prop_assert_eq!(a.det() != int(0), a.inverse().is_some());
    }

    #[test]
    fn wedge_is_graded_commutative(
        (p, q, a, b) in (0usize..=3, 0usize..=3)
            .prop_flat_map(|(p, q)| (Just(p), Just(q), element(6, p), element(6, q))),
    ) {
        let ab = exterior::wedge(&a, &b).unwrap();
        let ba = exterior::wedge(&b, &a).unwrap();
        prop_assert!(exterior::wedge(&a, &ExteriorElement::zero(6, 4)).is_err() == (p > 2));
        let sign = if (p * q) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn q_rank_survives_scaling_and_row_operations(
        gens in prop::collection::vec(prop::collection::vec(small(), 3), 1..5),
        num in 1i64..9,
        den in 1i64..9,
        mult in small(),
    ) {
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let base: Vec<Vec<Scalar>> = gens.iter().map(|g| g.iter().map(|&x| int(x)).collect()).collect();
        let original = tischler::q_rank(&PeriodGroup::new(names.clone(), base.clone()).unwrap());
        let s = frac(num, den);
        let scaled: Vec<Vec<Scalar>> = base.iter().map(|g| g.iter().map(|x| x * &s).collect()).collect();
        prop_assert_eq!(tischler::q_rank(&PeriodGroup::new(names.clone(), scaled).unwrap()), original);
        let mut mixed = base.clone();
        if mixed.len() > 1 {
            let m = int(mult);
            let first = mixed[0].clone();
            for (x, y) in mixed[1].iter_mut().zip(&first) {
                *x += &m * y;
            }
        }
        prop_assert_eq!(tischler::q_rank(&PeriodGroup::new(names, mixed).unwrap()), original);
        prop_assert!(original <= 3);
    }

    #[test]
    fn carriere_family_fibers(m in 1i64..6, n in 1i64..6) {
        let a = Matrix::from_i64_rows(&[&[1 + m * n, m], &[n, 1]]);
        let data = tischler::carriere_profile(&a).unwrap();
        prop_assert!(!data.profile.g0_unimodular);
        prop_assert_eq!(data.trace.clone(), int(2 + m * n));
        let v = tischler::unimodularity_verdict(&data.profile);
        prop_assert_eq!(v.kind, VerdictKind::ManifoldFibers);
    }

    #[test]
    fn semidirect_products(d in (1usize..4).prop_flat_map(|k| matrix(k, k))) {
        let g = semidirect(&d);
        let trivial = CoefficientModule::trivial(&g);
        for v in [trivial.clone(), CoefficientModule::adjoint(&g), CoefficientModule::adjoint(&g).dual()] {
            prop_assert!(ce::ce_complex(&g, &v).squares_to_zero());
            prop_assert!(ce::ce_chain_complex(&g, &v).squares_to_zero());
        }
        let b = ce::betti(&g, &trivial);
        prop_assert_eq!(*b.numbers().last().unwrap() == 1, d.trace() == int(0));
        prop_assert_eq!(b.euler_characteristic(), 0);
        let pair = ReductivePair::trivial(g);
        for v in [GkModule::trivial(&pair), GkModule::adjoint(&pair)] {
            let report = relative::duality_check(&pair, &v).unwrap();
            prop_assert!(report.holds());
        }
    }
}
