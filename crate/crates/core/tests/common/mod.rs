#![allow(dead_code)]

use std::sync::Arc;

use massey::exactlin::{Field, Matrix, Scalar};
use massey::galg::GradedAlgebra;
use massey::hochschild::{Cochain, CochainSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn qq() -> Field {
    Field::Rational
}

pub fn f101() -> Field {
    Field::prime(101).unwrap()
}

pub fn small<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// A random cochain of the given bidegree with roughly `density` of its coordinates nonzero.
pub fn random_cochain<R: Rng>(alg: &Arc<GradedAlgebra>, p: usize, q: i64, density: f64, rng: &mut R) -> Cochain {
    let space = CochainSpace::new(alg, p, q).unwrap();
    let field = alg.field();
    let v: Vec<Scalar> = (0..space.dim())
        .map(|_| if rng.gen_bool(density) { small(field, rng) } else { field.zero() })
        .collect();
    space.from_dense(&v)
}

/// Standard Hochschild complex `Hom(A^{⊗n}, A)` of an ungraded algebra, dense,
/// with `(δf)(a_1..a_{n+1}) = a_1 f(..) + Σ (−1)^i f(.., a_i a_{i+1}, ..) + (−1)^{n+1} f(..) a_{n+1}`.
pub fn standard_hochschild_dims(alg: &GradedAlgebra, max_p: usize) -> Vec<usize> {
    let n = alg.dim();
    let field = alg.field();
    let pow = |k: usize| n.pow(k as u32);
    let tuple = |mut idx: usize, k: usize| {
        let mut t = vec![0; k];
        for j in (0..k).rev() {
            t[j] = idx % n;
            idx /= n;
        }
        t
    };
    let index = |t: &[usize]| t.iter().fold(0, |a, &x| a * n + x);
    let prod = |i: usize, j: usize| alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)).unwrap();
    // coordinates of Hom(A^{⊗k}, A): (tuple index) * n + output
    let delta = |k: usize| -> Matrix {
        let mut m = Matrix::zeros(field, pow(k + 1) * n, pow(k) * n);
        for col_t in 0..pow(k) {
            for out in 0..n {
                let col = col_t * n + out;
                for row_t in 0..pow(k + 1) {
                    let x = tuple(row_t, k + 1);
                    // a_1 f(a_2..)
                    if index(&x[1..]) == col_t {
                        let v = prod(x[0], out);
                        for (r, c) in v.iter().enumerate() {
                            m.add_to(row_t * n + r, col, c);
                        }
                    }
                    if index(&x[..k]) == col_t {
                        let v = prod(out, x[k]).into_iter().map(|c| c.signed((k + 1) % 2 == 1));
                        for (r, c) in v.enumerate() {
                            m.add_to(row_t * n + r, col, &c);
                        }
                    }
                    for i in 1..=k {
                        let pv = prod(x[i - 1], x[i]);
                        for (y, c) in pv.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut t2 = x[..i - 1].to_vec();
                            t2.push(y);
                            t2.extend_from_slice(&x[i + 1..]);
                            if index(&t2) == col_t {
                                m.add_to(row_t * n + out, col, &c.clone().signed(i % 2 == 1));
                            }
                        }
                    }
                }
            }
        }
        m
    };
    let ranks: Vec<usize> = (0..=max_p).map(|k| delta(k).rank()).collect();
    (0..=max_p)
        .map(|k| pow(k) * n - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}
