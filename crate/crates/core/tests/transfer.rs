mod common;

use std::sync::Arc;

use common::*;
use massey::ainfty::*;
use massey::exactlin::{Matrix, Scalar};
use massey::galg::{validate_algebra, GradedAlgebra, Product};
use massey::hochschild::HochschildComplex;
use massey::transfer::*;
use massey::zoo::{rhom_cohomology_range, truncated_polynomial_rhom};

fn index_of_degree(h: &GradedAlgebra, d: i64) -> usize {
    let v = h.basis_in_degree(d);
    assert_eq!(v.len(), 1, "degree {d}");
    v[0]
}

/// `m_n(ε, …, ε) = c · t`; returns `c`.
fn top_coefficient(s: &MinimalAInfty, n: usize) -> Scalar {
    let h = s.algebra();
    let (e, t) = (index_of_degree(h, 1), index_of_degree(h, 2));
    let v = s.m(n).eval(&vec![e; n]).unwrap();
    assert!(v.iter().all(|(k, _)| *k == t));
    v.first().map(|x| x.1.clone()).unwrap_or_else(|| h.field().zero())
}

#[test]
fn ell_three_model_transfers_to_the_massey_product() {
    let d = 6;
    let dg = truncated_polynomial_rhom(3, d, qq()).unwrap();
    assert!(validate_algebra(dg.algebra()).is_empty());
    let (h, hd) = cohomology_algebra(&dg, Some(rhom_cohomology_range(d)), Complements::Pivot).unwrap();
    let dims: Vec<usize> = (0..=d).map(|k| h.basis_in_degree(k).len()).collect();
    assert_eq!(dims, vec![1; 7]);
    assert!(hd.violations(&dg).is_empty());
    let t = transfer_structure(&dg, &hd, &h, 5).unwrap();
    assert!(verify_upto(&t.structure, 5).unwrap().is_empty());
    assert!(verify_dg_morphism(&t.morphism, &t.structure, &dg, 5).unwrap().is_empty());
    let c = top_coefficient(&t.structure, 3);
    assert!(!c.is_zero());
    let cx = HochschildComplex::new(h.clone());
    assert!(!universal_massey(&cx, &t.structure).unwrap().is_zero());
}

fn hh_class_is_zero(s: &MinimalAInfty, n: usize) -> bool {
    let cx = HochschildComplex::new(s.algebra().clone());
    cx.reduce_to_class(&s.m(n)).unwrap().coords.iter().all(Scalar::is_zero)
}

#[test]
fn zero_differential_is_its_own_minimal_model() {
    let alg = Arc::new(massey::galg::build::truncated_polynomial(qq(), 3, 2));
    let dg = DGAlgebra::formal(alg.clone()).unwrap();
    let (h, hd) = cohomology_algebra(&dg, None, Complements::Pivot).unwrap();
    assert_eq!(h.dim(), 3);
    assert_eq!(h.degrees(), alg.degrees());
    let t = transfer_structure(&dg, &hd, &h, 5).unwrap();
    assert!(t.structure.higher().all(|(_, m)| m.is_zero()));
    assert!(t.morphism.components().all(|(n, f)| n == 1 || f.is_zero()));
}

/// `k × k⟨x⟩/(x²)` with `|x| = −1` and `dx = 1_2`: the second factor is contractible.
fn half_acyclic() -> DGAlgebra {
    let q = qq();
    let one = q.one();
    let p = |i, j, k| Product { i, j, k, coeff: one.clone() };
    let basis = vec![("e".to_string(), 0), ("f".to_string(), 0), ("x".to_string(), -1)];
    let products = [p(0, 0, 0), p(1, 1, 1), p(1, 2, 2), p(2, 1, 2)];
    let alg = GradedAlgebra::new(q, basis, &products, vec![one.clone(), one.clone(), q.zero()], None).unwrap();
    assert!(validate_algebra(&alg).is_empty());
    let d = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
    DGAlgebra::new(Arc::new(alg), &d).unwrap()
}

#[test]
fn acyclic_factor_drops_out() {
    let dg = half_acyclic();
    let (h, hd) = cohomology_algebra(&dg, None, Complements::Pivot).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(h.degree(0), 0);
    assert!(hd.violations(&dg).is_empty());
    let t = transfer_structure(&dg, &hd, &h, 4).unwrap();
    assert!(verify_dg_morphism(&t.morphism, &t.structure, &dg, 4).unwrap().is_empty());
    assert!(t.structure.higher().all(|(_, m)| m.is_zero()));
}

#[test]
fn leibniz_violation_is_rejected() {
    let q = qq();
    let alg = Arc::new(massey::galg::build::truncated_polynomial(q, 3, -1));
    let d = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert!(DGAlgebra::new(alg.clone(), &d).is_ok());
    // d(x²) = x, but Leibniz forces d(x·x) = 0
    let bad = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
    assert!(DGAlgebra::new(alg, &bad).is_err());
}

#[test]
fn random_splittings_satisfy_the_hodge_identities() {
    let d = 5;
    let dg = truncated_polynomial_rhom(3, d, qq()).unwrap();
    for seed in 1..=3u64 {
        let (h, hd) = cohomology_algebra(&dg, Some(rhom_cohomology_range(d)), Complements::Random(seed)).unwrap();
        assert!(hd.violations(&dg).is_empty(), "seed {seed}");
        let t = transfer_structure(&dg, &hd, &h, 5).unwrap();
        assert!(verify_upto(&t.structure, 5).unwrap().is_empty());
        assert!(verify_dg_morphism(&t.morphism, &t.structure, &dg, 5).unwrap().is_empty());
        assert!(!top_coefficient(&t.structure, 3).is_zero());
    }
}

#[test]
fn corrupted_second_component_fails_at_arity_two() {
    let dg = truncated_polynomial_rhom(3, 5, qq()).unwrap();
    let (h, hd) = cohomology_algebra(&dg, Some(rhom_cohomology_range(5)), Complements::Pivot).unwrap();
    let t = transfer_structure(&dg, &hd, &h, 4).unwrap();
    let a = dg.algebra();
    let e = index_of_degree(&h, 1);
    // d(y2) = y1·y1 ≠ 0, so adding y2 on (ε, ε) changes the arity-2 equation.
    let y2 = a.index_of("y2").unwrap();
    let mut c = massey::hochschild::Cochain::between(&h, a, 2, -1).unwrap();
    c.set(vec![e, e], vec![(y2, qq().one())]).unwrap();
    let comps = t
        .morphism
        .components()
        .map(|(n, f)| if n == 2 { f.add(&c) } else { f.clone() })
        .collect();
    let bad = AInftyMorphism::new(h.clone(), a.clone(), comps, 4).unwrap();
    let fails = verify_dg_morphism(&bad, &t.structure, &dg, 4).unwrap();
    assert_eq!(fails.first().map(|f| f.arity), Some(2));
}

#[test]
fn minimal_models_never_disagree() {
    let d = 5;
    let dg = truncated_polynomial_rhom(3, d, qq()).unwrap();
    let range = Some(rhom_cohomology_range(d));
    let same = minimal_models_agree(&dg, range, Complements::Pivot, Complements::Pivot, 5).unwrap();
    assert!(matches!(same, GaugeVerdict::Equivalent(_)));
    for seed in [3u64, 8] {
        let v = minimal_models_agree(&dg, range, Complements::Pivot, Complements::Random(seed), 5).unwrap();
        assert!(!matches!(v, GaugeVerdict::Distinct { .. }), "seed {seed}: {v:?}");
    }
    let f = DGAlgebra::formal(Arc::new(massey::galg::build::truncated_polynomial(qq(), 3, 2))).unwrap();
    let v = minimal_models_agree(&f, None, Complements::Pivot, Complements::Random(1), 4).unwrap();
    assert!(matches!(v, GaugeVerdict::Equivalent(_)));
}

#[test]
fn koszul_control_is_formal() {
    let d = 6;
    let dg = truncated_polynomial_rhom(2, d, qq()).unwrap();
    let (h, hd) = cohomology_algebra(&dg, Some(rhom_cohomology_range(d)), Complements::Pivot).unwrap();
    let t = transfer_structure(&dg, &hd, &h, 5).unwrap();
    assert!(verify_upto(&t.structure, 5).unwrap().is_empty());
    let cx = HochschildComplex::new(h.clone());
    let formal = MinimalAInfty::formal(h.clone(), 5).unwrap();
    let v = greedy_gauge_equiv(&cx, &t.structure, &formal, 5).unwrap();
    assert!(matches!(v, GaugeVerdict::Equivalent(_)), "{v:?}");
}

#[test]
fn ell_four_model_has_only_m4() {
    let d = 6;
    let dg = truncated_polynomial_rhom(4, d, qq()).unwrap();
    let (h, hd) = cohomology_algebra(&dg, Some(rhom_cohomology_range(d)), Complements::Pivot).unwrap();
    let dims: Vec<usize> = (0..=4).map(|k| h.basis_in_degree(k).len()).collect();
    assert_eq!(dims, vec![1; 5]);
    let t = transfer_structure(&dg, &hd, &h, 5).unwrap();
    assert!(verify_upto(&t.structure, 5).unwrap().is_empty());
    assert!(t.structure.m(3).is_zero());
    assert!(!top_coefficient(&t.structure, 4).is_zero());
    assert!(!hh_class_is_zero(&t.structure, 4));
}
