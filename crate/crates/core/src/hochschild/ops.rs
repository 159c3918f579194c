//! Gerstenhaber operations on Hochschild cochains.
//!
//! The insertion `c1 ∘_i c2` carries the sign `(−1)^✠` with
//! `✠ = (s−1)(p−i) + t(p−1+Σ_{j<i}|x_j|)` for `c1 ∈ HC^{p,q}`, `c2 ∈ HC^{s,t}`;
//! the differential is `d = [m2, −]` and the square is `Sq(c) = {c}{c}`.

use std::sync::Arc;

use rayon::prelude::*;

use super::cochain::{Cochain, CochainSpace};
use crate::error::{Error, Result};
use crate::exactlin::{Accum, Scalar, SparseVec};
use crate::galg::GradedAlgebra;

fn same_algebra(a: &Cochain, b: &Cochain) -> Result<()> {
    if !Arc::ptr_eq(a.src(), b.src()) || !Arc::ptr_eq(a.dst(), a.src()) || !Arc::ptr_eq(b.dst(), b.src()) {
        return Err(Error::InvalidArgument("cochains on different algebras".into()));
    }
    Ok(())
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Evaluates `f` on every tuple of `space` in parallel and collects the values.
pub fn tabulate<F>(space: &CochainSpace, f: F) -> Result<Cochain>
where
    F: Fn(&[usize]) -> Result<SparseVec> + Sync,
{
    let vals: Vec<Result<SparseVec>> = space.tuples().par_iter().map(|t| f(t)).collect();
    let mut out = space.zero();
    for (t, v) in space.tuples().iter().zip(vals) {
        out.set_unchecked(t.clone(), v?);
    }
    Ok(out)
}

/// `c1 ∘_i c2` for `1 ≤ i ≤ arity(c1)`.
pub fn insert_at(c1: &Cochain, c2: &Cochain, i: usize) -> Result<Cochain> {
    same_algebra(c1, c2)?;
    let (p, q) = c1.bidegree();
    let (s, t) = c2.bidegree();
    if i == 0 || i > p {
        return Err(Error::InvalidArgument(format!("insertion slot {i} for arity {p}")));
    }
    let alg = c1.src().clone();
    let space = CochainSpace::new(&alg, p + s - 1, q + t)?;
    let base = (s as i64 - 1) * (p - i) as i64 + t * (p as i64 - 1);
    tabulate(&space, |x| {
        let before: i64 = x[..i - 1].iter().map(|&j| alg.degree(j)).sum();
        let sign = odd(base + t * before);
        let inner = c2.eval(&x[i - 1..i - 1 + s])?;
        let mut acc = Accum::new();
        let mut tuple = Vec::with_capacity(p);
        for (k, a) in &inner {
            tuple.clear();
            tuple.extend_from_slice(&x[..i - 1]);
            tuple.push(*k);
            tuple.extend_from_slice(&x[i - 1 + s..]);
            for (m, b) in c1.eval(&tuple)? {
                acc.add(m, (a * &b).signed(sign));
            }
        }
        Ok(acc.finish())
    })
}

/// `{c1}{c2} = Σ_i c1 ∘_i c2`.
pub fn pre_lie(c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
    same_algebra(c1, c2)?;
    let (p, q) = c1.bidegree();
    let (s, t) = c2.bidegree();
    let alg = c1.src().clone();
    if p == 0 {
        return Cochain::zero(&alg, s.saturating_sub(1), q + t);
    }
    let space = CochainSpace::new(&alg, p + s - 1, q + t)?;
    tabulate(&space, |x| {
        let mut acc = Accum::new();
        let mut tuple = Vec::with_capacity(p);
        let mut before = 0i64;
        for i in 1..=p {
            let sign = odd((s as i64 - 1) * (p - i) as i64 + t * (p as i64 - 1 + before));
            let inner = c2.eval(&x[i - 1..i - 1 + s])?;
            for (k, a) in &inner {
                tuple.clear();
                tuple.extend_from_slice(&x[..i - 1]);
                tuple.push(*k);
                tuple.extend_from_slice(&x[i - 1 + s..]);
                for (m, b) in c1.eval(&tuple)? {
                    acc.add(m, (a * &b).signed(sign));
                }
            }
            if i <= x.len() {
                before += alg.degree(x[i - 1]);
            }
        }
        Ok(acc.finish())
    })
}

/// `[c1, c2] = {c1}{c2} − (−1)^{(p+q−1)(s+t−1)} {c2}{c1}`.
pub fn bracket(c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
    let a = pre_lie(c1, c2)?;
    let b = pre_lie(c2, c1)?;
    let e = (c1.total_degree() - 1) * (c2.total_degree() - 1);
    let field = c1.field();
    Ok(a.add_scaled(&field.from_i64(if odd(e) { 1 } else { -1 }), &b))
}

/// `Sq(c) = {c}{c}`, of bidegree `(2p−1, 2q)`.
pub fn square(c: &Cochain) -> Result<Cochain> {
    pre_lie(c, c)
}

/// The multiplication as a cochain of bidegree `(2, 0)`.
pub fn mult_cochain(alg: &Arc<GradedAlgebra>) -> Result<Cochain> {
    let space = CochainSpace::new(alg, 2, 0)?;
    tabulate(&space, |x| Ok(alg.mul_basis(x[0], x[1])?.clone()))
}

/// The unit as a cochain of bidegree `(0, 0)`.
pub fn unit_cochain(alg: &Arc<GradedAlgebra>) -> Result<Cochain> {
    let mut c = Cochain::zero(alg, 0, 0)?;
    c.set(Vec::new(), crate::exactlin::sparse_from_dense(alg.unit()))?;
    Ok(c)
}

/// Cup product `(−1)^{p+q+1} (m2 ∘_1 c1) ∘_{p+1} c2`, i.e.
/// `(c1 ∪ c2)(x_1, …, x_{p+s}) = (−1)^{t(p + Σ_{j≤p}|x_j|)} c1(x_1, …, x_p) c2(x_{p+1}, …)`.
///
/// The factor `(−1)^{p+q+1}` cancels the sign of the first insertion; with it the
/// unit is `1`, `d` is a graded derivation and the product is graded commutative
/// in cohomology with respect to total degree.
pub fn cup(c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
    same_algebra(c1, c2)?;
    let (p, _) = c1.bidegree();
    let (s, t) = c2.bidegree();
    let alg = c1.src().clone();
    let space = CochainSpace::new(&alg, p + s, c1.degree() + t)?;
    tabulate(&space, |x| {
        let before: i64 = x[..p].iter().map(|&j| alg.degree(j)).sum();
        let sign = odd(t * (p as i64 + before));
        let a = c1.eval(&x[..p])?;
        if a.is_empty() {
            return Ok(Vec::new());
        }
        let b = c2.eval(&x[p..])?;
        let mut acc = Accum::new();
        for (i, u) in &a {
            for (j, v) in &b {
                let uv = u * v;
                for (k, w) in alg.mul_basis(*i, *j)? {
                    acc.add(*k, (&uv * w).signed(sign));
                }
            }
        }
        Ok(acc.finish())
    })
}

/// `d c = [m2, c]`, computed by the expanded formula
/// `(−1)^{t(1+|x_1|)} x_1 c(x_2,…) + (−1)^{s+t−1} c(…,x_s) x_{s+1} + Σ_i (−1)^{t+i} c(…, x_i x_{i+1}, …)`.
pub fn hochschild_differential(c: &Cochain) -> Result<Cochain> {
    let (s, t) = c.bidegree();
    let alg = c.src().clone();
    if !Arc::ptr_eq(&alg, c.dst()) {
        return Err(Error::InvalidArgument("differential of a cochain between different algebras".into()));
    }
    let space = CochainSpace::new(&alg, s + 1, t)?;
    tabulate(&space, |x| {
        let mut acc = Accum::new();
        let x1 = x[0];
        for (k, a) in c.eval(&x[1..])? {
            for (m, b) in alg.mul_basis(x1, k)? {
                acc.add(*m, (&a * b).signed(odd(t * (1 + alg.degree(x1)))));
            }
        }
        for (k, a) in c.eval(&x[..s])? {
            for (m, b) in alg.mul_basis(k, x[s])? {
                acc.add(*m, (&a * b).signed(odd(s as i64 + t - 1)));
            }
        }
        let mut tuple = Vec::with_capacity(s);
        for i in 1..=s {
            for (k, a) in alg.mul_basis(x[i - 1], x[i])? {
                tuple.clear();
                tuple.extend_from_slice(&x[..i - 1]);
                tuple.push(*k);
                tuple.extend_from_slice(&x[i + 1..]);
                for (m, b) in c.eval(&tuple)? {
                    acc.add(m, (a * &b).signed(odd(t + i as i64)));
                }
            }
        }
        Ok(acc.finish())
    })
}

/// Columns of the differential `HC^{p,q} → HC^{p+1,q}` in the coordinates of the two spaces.
pub fn differential_columns(from: &CochainSpace, to: &CochainSpace) -> Result<Vec<SparseVec>> {
    let alg = from.src.clone();
    let (s, t) = (from.arity, from.degree);
    assert_eq!((to.arity, to.degree), (s + 1, t));
    let per_tuple: Vec<Result<Vec<(usize, usize, Scalar)>>> = to
        .tuples()
        .par_iter()
        .map(|x| {
            let mut trip = Vec::new();
            let mut push = |col: usize, m: usize, v: Scalar| -> Result<()> {
                let row = to.coord(x, m).ok_or_else(|| Error::WindowOverflow(format!("no coordinate for {x:?}")))?;
                trip.push((row, col, v));
                Ok(())
            };
            let x1 = x[0];
            if let Some(ti) = from.tuple_index(&x[1..]) {
                for (pos, &k) in from.outputs(ti).iter().enumerate() {
                    for (m, b) in alg.mul_basis(x1, k)? {
                        push(from.offset(ti) + pos, *m, b.clone().signed(odd(t * (1 + alg.degree(x1)))))?;
                    }
                }
            }
            if let Some(ti) = from.tuple_index(&x[..s]) {
                for (pos, &k) in from.outputs(ti).iter().enumerate() {
                    for (m, b) in alg.mul_basis(k, x[s])? {
                        push(from.offset(ti) + pos, *m, b.clone().signed(odd(s as i64 + t - 1)))?;
                    }
                }
            }
            let mut tuple = Vec::with_capacity(s);
            for i in 1..=s {
                for (k, a) in alg.mul_basis(x[i - 1], x[i])? {
                    tuple.clear();
                    tuple.extend_from_slice(&x[..i - 1]);
                    tuple.push(*k);
                    tuple.extend_from_slice(&x[i + 1..]);
                    if let Some(ti) = from.tuple_index(&tuple) {
                        for (pos, &m) in from.outputs(ti).iter().enumerate() {
                            push(from.offset(ti) + pos, m, a.clone().signed(odd(t + i as i64)))?;
                        }
                    }
                }
            }
            Ok(trip)
        })
        .collect();
    let mut cols: Vec<Accum> = (0..from.dim()).map(|_| Accum::new()).collect();
    for r in per_tuple {
        for (row, col, v) in r? {
            cols[col].add(row, v);
        }
    }
    Ok(cols.into_iter().map(Accum::finish).collect())
}
