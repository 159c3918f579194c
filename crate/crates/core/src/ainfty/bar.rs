//! Bar-construction form of multilinear maps.
//!
//! `Φ(c)(sx_1, …, sx_p) = (−1)^{binom(p−1,2) + Σ_j (p−j)|x_j|} s c(x_1, …, x_p)` turns the
//! ✠-signed insertion into plain Koszul insertion
//! `(C1 ∘_i C2)(y) = (−1)^{|C2| Σ_{j<i} |y_j|} C1(…, C2(…), …)` with `|y_j| = |x_j| − 1`
//! and `|Φ(c)| = p + q − 1`. `Φ` only changes signs and is an involution, so bar maps are
//! stored as [`Cochain`]s with twisted values.
//!
//! Morphism components and homotopy-transfer trees are written in this form, where
//! degree-0 maps pick up no signs when applied side by side.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Accum, Scalar, SparseVec};
use crate::galg::GradedAlgebra;
use crate::hochschild::{tabulate, Cochain, CochainSpace};

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

pub(crate) fn phi_sign(src: &GradedAlgebra, tuple: &[usize]) -> bool {
    let p = tuple.len() as i64;
    let mut e = (p - 1) * (p - 2) / 2;
    for (j, &x) in tuple.iter().enumerate() {
        e += (p - 1 - j as i64) * src.degree(x);
    }
    odd(e)
}

/// `Φ(c)`; also its own inverse.
pub fn to_bar(c: &Cochain) -> Cochain {
    let src = c.src().clone();
    c.map_entries(|t, v| {
        if phi_sign(&src, t) {
            v.iter().map(|(k, x)| (*k, -x.clone())).collect()
        } else {
            v.clone()
        }
    })
}

/// Inverse of [`to_bar`].
pub fn from_bar(c: &Cochain) -> Cochain {
    to_bar(c)
}

/// Bar degree `p + q − 1`.
pub fn bar_degree(c: &Cochain) -> i64 {
    c.total_degree() - 1
}

/// Koszul insertion `C1 ∘_i C2` of bar maps, `C2: X^{⊗s} → X`, `C1: X^{⊗p} → Y`.
pub fn bar_insert(c1: &Cochain, c2: &Cochain, i: usize) -> Result<Cochain> {
    let (p, q) = c1.bidegree();
    let (s, t) = c2.bidegree();
    if i == 0 || i > p {
        return Err(Error::InvalidArgument(format!("insertion slot {i} for arity {p}")));
    }
    if !Arc::ptr_eq(c2.src(), c2.dst()) || !Arc::ptr_eq(c1.src(), c2.src()) {
        return Err(Error::InvalidArgument("bar insertion needs an endomorphism inner map".into()));
    }
    let x_alg = c1.src().clone();
    let space = CochainSpace::between(&x_alg, c1.dst(), p + s - 1, q + t)?;
    let deg2 = s as i64 + t - 1;
    tabulate(&space, |x| {
        let before: i64 = x[..i - 1].iter().map(|&j| x_alg.degree(j) - 1).sum();
        let sign = odd(deg2 * before);
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

/// `Σ_i C1 ∘_i C2` in bar form.
pub fn bar_pre_lie(c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
    let mut out: Option<Cochain> = None;
    for i in 1..=c1.arity() {
        let term = bar_insert(c1, c2, i)?;
        out = Some(match out {
            Some(o) => o.add(&term),
            None => term,
        });
    }
    match out {
        Some(o) => Ok(o),
        None => Cochain::between(c1.src(), c1.dst(), c2.arity().saturating_sub(1), c1.degree() + c2.degree()),
    }
}

/// All compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=n.saturating_sub(k - 1) {
            cur.push(first);
            rec(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `outer(F_{i_1}(x_{block 1}), …, F_{i_k}(x_{block k}))` for bar maps `F` of degree 0,
/// where `parts` lists the inner maps and `x` is split according to their arities.
pub fn apply_blocks(outer: &Cochain, parts: &[&Cochain], x: &[usize]) -> Result<SparseVec> {
    let mut start = 0;
    let mut vals: Vec<SparseVec> = Vec::with_capacity(parts.len());
    for f in parts {
        let v = f.eval(&x[start..start + f.arity()])?;
        if v.is_empty() {
            return Ok(Vec::new());
        }
        vals.push(v);
        start += f.arity();
    }
    debug_assert_eq!(start, x.len());
    let mut acc = Accum::new();
    let mut idx = vec![0usize; vals.len()];
    let mut tuple = vec![0usize; vals.len()];
    'outer: loop {
        let mut coeff: Option<Scalar> = None;
        for (j, v) in vals.iter().enumerate() {
            tuple[j] = v[idx[j]].0;
            coeff = Some(match coeff {
                Some(c) => &c * &v[idx[j]].1,
                None => v[idx[j]].1.clone(),
            });
        }
        let coeff = coeff.unwrap_or_else(|| outer.field().one());
        for (m, b) in outer.eval(&tuple)? {
            acc.add(m, &coeff * &b);
        }
        for j in (0..vals.len()).rev() {
            idx[j] += 1;
            if idx[j] < vals[j].len() {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    Ok(acc.finish())
}
