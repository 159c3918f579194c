mod common;

use std::sync::Arc;

use common::*;
use massey::exactlin::{Field, Scalar};
use massey::galg::build::*;
use massey::galg::GradedAlgebra;
use massey::hochschild::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn cocycle(cx: &HochschildComplex, p: usize, q: i64, r: &mut ChaCha8Rng) -> Cochain {
    let g = cx.hh(p, q).unwrap();
    let coords: Vec<Scalar> = (0..g.dim()).map(|_| small(cx.field(), r)).collect();
    let mut z = g.class_cochain(&coords);
    if p > 0 {
        let b = random_cochain(cx.algebra(), p - 1, q, 0.5, r);
        z = z.add(&hochschild_differential(&b).unwrap());
    }
    z
}

/// Asserts that `z` is a coboundary and checks the bounding certificate.
fn assert_coboundary(cx: &HochschildComplex, z: &Cochain) {
    let red = cx.reduce_to_class(z).unwrap();
    assert!(red.coords.iter().all(Scalar::is_zero), "nonzero class {:?}", red.coords);
    if z.arity() > 0 {
        let b = red.bounding.unwrap();
        assert_eq!(&hochschild_differential(&b).unwrap(), z);
    } else {
        assert!(z.is_zero());
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn fixtures() -> Vec<Arc<GradedAlgebra>> {
    vec![Arc::new(truncated_polynomial(qq(), 2, 0)), Arc::new(epsilon_t(qq(), 6))]
}

fn bidegree(alg: &GradedAlgebra, r: &mut ChaCha8Rng, max_p: usize) -> (usize, i64) {
    let p = r.gen_range(0..=max_p);
    let q = if alg.window().is_some() { -r.gen_range(0..=p as i64) } else { 0 };
    (p, q)
}

#[test]
fn cup_is_graded_commutative_in_cohomology() {
    let mut r = rng(11);
    for alg in fixtures() {
        let cx = HochschildComplex::new(alg.clone());
        for _ in 0..30 {
            let (p, q) = bidegree(&alg, &mut r, 2);
            let (s, t) = bidegree(&alg, &mut r, 2);
            let (c1, c2) = (cocycle(&cx, p, q, &mut r), cocycle(&cx, s, t, &mut r));
            let (tp, ts) = (p as i64 + q, s as i64 + t);
            let sign = odd(tp * ts);
            let defect = cup(&c1, &c2).unwrap().add_scaled(&qq().one().signed(!sign), &cup(&c2, &c1).unwrap());
            assert_coboundary(&cx, &defect);
        }
    }
}

#[test]
fn gerstenhaber_relation_in_cohomology() {
    let mut r = rng(12);
    for alg in fixtures() {
        let cx = HochschildComplex::new(alg.clone());
        for _ in 0..20 {
            let (p, q) = bidegree(&alg, &mut r, 2);
            let (s, t) = bidegree(&alg, &mut r, 2);
            let (u, v) = bidegree(&alg, &mut r, 1);
            let c1 = cocycle(&cx, p.max(1), q, &mut r);
            let (p, q) = c1.bidegree();
            let (c2, c3) = (cocycle(&cx, s, t, &mut r), cocycle(&cx, u, v, &mut r));
            let lhs = bracket(&c1, &cup(&c2, &c3).unwrap()).unwrap();
            let a = cup(&bracket(&c1, &c2).unwrap(), &c3).unwrap();
            let b = cup(&c2, &bracket(&c1, &c3).unwrap()).unwrap();
            let e = (p as i64 + q - 1) * (s as i64 + t);
            let defect = lhs.sub(&a).add_scaled(&qq().one().signed(!odd(e)), &b);
            assert_coboundary(&cx, &defect);
        }
    }
}


fn even_bidegree(alg: &GradedAlgebra, r: &mut ChaCha8Rng, max_p: usize, char2: bool) -> (usize, i64) {
    loop {
        let (p, q) = bidegree(alg, r, max_p);
        if char2 || (p as i64 + q) % 2 == 0 {
            return (p, q);
        }
    }
}

/// First two relations between square, bracket and cup, exactly on cochains.
#[test]
fn square_relations_on_cochains() {
    let mut r = rng(13);
    let f2 = Field::prime(2).unwrap();
    let algs = vec![
        (Arc::new(truncated_polynomial(qq(), 3, 0)), false),
        (Arc::new(epsilon_t(qq(), 6)), false),
        (Arc::new(exterior2(f101(), 0, 0)), false),
        (Arc::new(truncated_polynomial(f2, 2, 0)), true),
        (Arc::new(epsilon_t(f2, 5)), true),
    ];
    let mut cases = 0;
    for (alg, char2) in &algs {
        for _ in 0..16 {
            let (p, q) = even_bidegree(alg, &mut r, 3, *char2);
            let (p, q) = (p.max(1), if alg.window().is_some() { q.min(0) } else { q });
            if !char2 && (p as i64 + q) % 2 != 0 {
                continue;
            }
            let c1 = random_cochain(alg, p, q, 0.5, &mut r);
            let c2 = random_cochain(alg, p, q, 0.5, &mut r);
            let lhs = square(&c1.add(&c2)).unwrap();
            let rhs = square(&c1).unwrap().add(&square(&c2).unwrap()).add(&bracket(&c1, &c2).unwrap());
            assert_eq!(lhs, rhs);
            let (s, t) = bidegree(alg, &mut r, 2);
            let c3 = random_cochain(alg, s.max(1), t, 0.5, &mut r);
            let lhs = bracket(&square(&c1).unwrap(), &c3).unwrap();
            let rhs = bracket(&c1, &bracket(&c1, &c3).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            cases += 1;
        }
    }
    assert!(cases >= 50, "{cases}");
}

/// `Sq(c1·c2) = Sq(c1)·c2² + c1·[c1,c2]·c2 + c1²·Sq(c2)` in cohomology.
#[test]
fn square_of_cup_in_cohomology() {
    let mut r = rng(14);
    let f2 = Field::prime(2).unwrap();
    let algs = vec![
        (Arc::new(truncated_polynomial(qq(), 2, 0)), false),
        (Arc::new(epsilon_t(qq(), 6)), false),
        (Arc::new(truncated_polynomial(f2, 2, 0)), true),
    ];
    for (alg, char2) in &algs {
        let cx = HochschildComplex::new(alg.clone());
        for _ in 0..20 {
            let (p, q) = even_bidegree(alg, &mut r, 2, *char2);
            let (s, t) = even_bidegree(alg, &mut r, 2, *char2);
            if p == 0 || s == 0 {
                continue;
            }
            let c1 = cocycle(&cx, p, q, &mut r);
            let c2 = cocycle(&cx, s, t, &mut r);
            let cup2 = |a: &Cochain, b: &Cochain| cup(a, b).unwrap();
            let lhs = square(&cup2(&c1, &c2)).unwrap();
            let t1 = cup2(&square(&c1).unwrap(), &cup2(&c2, &c2));
            let t2 = cup2(&cup2(&c1, &bracket(&c1, &c2).unwrap()), &c2);
            let t3 = cup2(&cup2(&c1, &c1), &square(&c2).unwrap());
            let defect = lhs.sub(&t1).sub(&t2).sub(&t3);
            assert_coboundary(&cx, &defect);
        }
    }
}
