mod common;

use std::sync::Arc;

use common::*;
use massey::ainfty::bar::*;
use massey::ainfty::*;
use massey::galg::build::*;
use massey::galg::GradedAlgebra;
use massey::hochschild::*;
use rand_chacha::ChaCha8Rng;

fn arc(a: GradedAlgebra) -> Arc<GradedAlgebra> {
    Arc::new(a)
}

fn random_gauge(alg: &Arc<GradedAlgebra>, n_max: usize, r: &mut ChaCha8Rng) -> AInftyMorphism {
    let higher = (2..=n_max).map(|n| random_cochain(alg, n, 1 - n as i64, 0.4, r)).collect();
    AInftyMorphism::gauge(alg.clone(), higher, n_max).unwrap()
}

#[test]
fn bar_dictionary_intertwines_insertions() {
    let mut r = rng(21);
    for alg in [arc(epsilon_t(qq(), 5)), arc(exterior2(f101(), 1, -1)), arc(truncated_polynomial(qq(), 3, 1))] {
        for (p, q, s, t) in [(2, 0, 2, 0), (3, -1, 2, 0), (2, 0, 3, -1), (2, -1, 1, 0), (3, 0, 2, -1), (2, 1, 0, 1)] {
            if alg.window().is_some() && (q > 0 || t > 0) {
                continue;
            }
            let c1 = random_cochain(&alg, p, q, 0.6, &mut r);
            let c2 = random_cochain(&alg, s, t, 0.6, &mut r);
            for i in 1..=p {
                let lhs = to_bar(&insert_at(&c1, &c2, i).unwrap());
                let rhs = bar_insert(&to_bar(&c1), &to_bar(&c2), i).unwrap();
                assert_eq!(lhs, rhs, "({p},{q}) o_{i} ({s},{t})");
            }
        }
    }
}

#[test]
fn formal_structure_satisfies_mc() {
    for alg in [arc(epsilon_t(qq(), 6)), arc(exterior2(qq(), 1, 1))] {
        let s = MinimalAInfty::formal(alg, 6).unwrap();
        assert!(verify_upto(&s, 6).unwrap().is_empty());
    }
}

#[test]
fn gauge_transport_preserves_mc() {
    let mut r = rng(22);
    for alg in [arc(epsilon_t(qq(), 6)), arc(exterior2(f101(), 1, 0)), arc(truncated_polynomial(qq(), 3, 1))] {
        let s = MinimalAInfty::formal(alg.clone(), 5).unwrap();
        let f = random_gauge(&alg, 4, &mut r);
        let t = gauge_transport(&s, &f, 5).unwrap();
        assert!(t.higher().count() > 0);
        assert!(verify_upto(&t, 5).unwrap().is_empty(), "{:?}", verify_upto(&t, 5).unwrap());
        assert!(verify_morphism(&f, &s, &t, 5).unwrap().is_empty());
        // second transport of a non-formal structure
        let g = random_gauge(&alg, 4, &mut r);
        let u = gauge_transport(&t, &g, 5).unwrap();
        assert!(verify_upto(&u, 5).unwrap().is_empty());
        assert!(verify_morphism(&g, &t, &u, 5).unwrap().is_empty());
        let back = gauge_transport(&u, &gauge_inverse(&g, 5).unwrap(), 5).unwrap();
        assert!(back.cochain_eq(&t));
        let gf = compose(&g, &f, 5).unwrap();
        assert!(gauge_transport(&s, &gf, 5).unwrap().cochain_eq(&u));
    }
}

#[test]
fn identity_transport_is_trivial() {
    let alg = arc(epsilon_t(qq(), 6));
    let mut r = rng(23);
    let s = gauge_transport(&MinimalAInfty::formal(alg.clone(), 5).unwrap(), &random_gauge(&alg, 3, &mut r), 5).unwrap();
    let id = AInftyMorphism::identity(alg, 5).unwrap();
    assert!(gauge_transport(&s, &id, 5).unwrap().cochain_eq(&s));
}

mod classes {
    use super::*;
    use massey::exactlin::{Matrix, Scalar};
    use massey::galg::TwistedLaurentAlgebra;
    use massey::zoo::minimal_ell_model;

    #[test]
    fn ell_three_model() {
        let s = minimal_ell_model(qq(), 3, 6, 7).unwrap();
        assert!(verify_upto(&s, 7).unwrap().is_empty());
        assert!(square(&s.m(3)).unwrap().is_zero());
        let cx = HochschildComplex::new(s.algebra().clone());
        let ump = universal_massey(&cx, &s).unwrap();
        assert!(!ump.is_zero());
        let formal = MinimalAInfty::formal(s.algebra().clone(), 7).unwrap();
        assert!(universal_massey(&cx, &formal).unwrap().is_zero());
        // degree-0 part is k, so the restricted class lives in a zero group
        let res = restricted_massey(&cx, &s, 1).unwrap();
        assert!(res.coords.is_empty());
        match greedy_gauge_equiv(&cx, &formal, &s, 5).unwrap() {
            GaugeVerdict::Distinct { arity, .. } => assert_eq!(arity, 3),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn corrupted_structure_fails_at_five() {
        let s = minimal_ell_model(qq(), 3, 6, 6).unwrap();
        let mut bad = s.clone();
        // adding a coboundary-free cocycle keeps arity 4 but breaks the square
        let cx = HochschildComplex::new(s.algebra().clone());
        let g = cx.hh(3, -1).unwrap();
        let mut found = false;
        for rep in g.reps() {
            bad.set(s.m(3).add(rep)).unwrap();
            let fails = verify_upto(&bad, 6).unwrap();
            if let Some(f) = fails.first() {
                assert_eq!(f.arity, 5);
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn ump_is_gauge_invariant() {
        let mut r = rng(31);
        let s = minimal_ell_model(qq(), 3, 6, 5).unwrap();
        let alg = s.algebra().clone();
        let cx = HochschildComplex::new(alg.clone());
        let base = universal_massey(&cx, &s).unwrap();
        for _ in 0..3 {
            let f = random_gauge(&alg, 4, &mut r);
            let t = gauge_transport(&s, &f, 5).unwrap();
            assert!(!t.m(3).sub(&s.m(3)).is_zero() || f.component(2).is_zero());
            assert_eq!(universal_massey(&cx, &t).unwrap().coords, base.coords);
            match greedy_gauge_equiv(&cx, &s, &t, 5).unwrap() {
                GaugeVerdict::Equivalent(g) => {
                    assert!(gauge_transport(&s, &g, 5).unwrap().cochain_eq(&t));
                }
                v => panic!("{v:?}"),
            }
        }
    }

    #[test]
    fn obstruction_at_four_is_the_square() {
        let s = minimal_ell_model(qq(), 3, 6, 6).unwrap().truncated(3);
        let cx = HochschildComplex::new(s.algebra().clone());
        let ob = obstruction_class(&cx, &s, 4).unwrap();
        let ump = universal_massey(&cx, &s.truncated(3));
        let sq = cx.reduce_to_class(&square(&s.m(3)).unwrap()).unwrap();
        assert_eq!(ob.class.coords, sq.coords);
        assert!(ump.is_ok());
        let ext = extend_step(&cx, &s, 4).unwrap().unwrap();
        assert_eq!(ext.m(3), s.m(3));
        assert!(verify_upto(&ext, 5).unwrap().is_empty());
        // formal truncation extends by zero
        let f = MinimalAInfty::formal(s.algebra().clone(), 3).unwrap();
        let ob = obstruction_class(&cx, &f, 4).unwrap();
        assert!(ob.class.is_zero() && ob.solution.unwrap().is_zero());
    }

    #[test]
    fn laurent_round_trip() {
        // Λ = k[x]/(x²), 𝚲 = Λ(id, 2): hand-built m_4 from a chosen HH^{4,-2} cocycle
        let base = Arc::new(truncated_polynomial(qq(), 2, 0));
        let lam = TwistedLaurentAlgebra::new(base, Matrix::identity(qq(), 2), 2).unwrap();
        let alg = Arc::new(lam.truncated(4).unwrap());
        let cx = HochschildComplex::new(alg.clone());
        let g = cx.hh(4, -2).unwrap();
        assert!(g.dim() > 0);
        let eta = g.reps()[0].clone();
        let s = MinimalAInfty::new(alg.clone(), vec![eta.clone()], 4).unwrap();
        let cls = d_sparse_massey(&cx, &s, 2).unwrap();
        let mut unit = vec![qq().zero(); g.dim()];
        unit[0] = qq().one();
        assert_eq!(cls.coords, unit);
        let res = restricted_massey(&cx, &s, 2).unwrap();
        assert!(res.coords.iter().any(|c: &Scalar| !c.is_zero()));
        // naturality: restriction of a cohomologous cocycle gives the same class
        let mut r = rng(32);
        let b = random_cochain(&alg, 3, -2, 0.5, &mut r);
        let eta2 = eta.add(&hochschild_differential(&b).unwrap());
        let v = restrict_cochain(&eta2, &res.complex).unwrap();
        assert_eq!(res.complex.reduce(4, &v).unwrap().0, res.coords);
    }

    #[test]
    fn formality_criterion() {
        let cx = HochschildComplex::new(Arc::new(ground(qq())));
        assert!(intrinsic_formality_check(&cx, 4).unwrap().verdict().unwrap());
        let cx = HochschildComplex::new(Arc::new(epsilon_t(qq(), 6)));
        let rep = intrinsic_formality_check(&cx, 2).unwrap();
        assert!(!rep.verdict().unwrap());
        assert!(rep.nonzero().contains(&(3, -1)));
    }
}
