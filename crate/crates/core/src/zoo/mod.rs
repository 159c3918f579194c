//! Worked examples: the dg endomorphism algebra of `k` over `k[x]/(x^ℓ)` and its minimal model.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ainfty::MinimalAInfty;
use crate::error::{Error, Result};
use crate::exactlin::{zero_vector, Field, Matrix};
use crate::galg::build::epsilon_t;
use crate::galg::{GradedAlgebra, Product};
use crate::hochschild::{tabulate, CochainSpace};
use crate::transfer::DGAlgebra;

/// The minimal model of `RHom_{k[x]/(x^ℓ)}(k, k)` on `k[ε,t]/(ε²)` kept in degrees `[0, hi]`:
/// `m_ℓ(εt^{a_1}, …, εt^{a_ℓ}) = t^{1+Σa_i}`, zero on tuples with an ε-free entry, and no other
/// higher operations. Operations are known up to arity `max_arity`.
pub fn minimal_ell_model(field: Field, ell: usize, hi: i64, max_arity: usize) -> Result<MinimalAInfty> {
    if ell < 3 {
        return Err(Error::InvalidArgument("the minimal model needs ell >= 3".into()));
    }
    if hi < ell as i64 {
        return Err(Error::WindowOverflow(format!("window [0, {hi}] cannot hold m_{ell}(e, ..., e)")));
    }
    let alg: Arc<GradedAlgebra> = Arc::new(epsilon_t(field, hi));
    let space = CochainSpace::new(&alg, ell, 2 - ell as i64)?;
    let m = tabulate(&space, |x| {
        if x.iter().any(|&i| i % 2 == 0) {
            return Ok(Vec::new());
        }
        let a: usize = x.iter().map(|&i| i / 2).sum();
        Ok(vec![(2 * (1 + a), field.one())])
    })?;
    MinimalAInfty::new(alg, vec![m], max_arity.max(ell))
}

/// Degrees where [`truncated_polynomial_rhom`] computes `Ext_{k[x]/(x^ℓ)}(k, k)`: `[0, D]`.
pub fn rhom_cohomology_range(d: i64) -> (i64, i64) {
    (0, d)
}

/// Internal weight of the Ext class in degree `n`: `t^a` has weight `aℓ`, `εt^a` weight `aℓ + 1`
/// (for `ℓ = 2`, `y^n` has weight `n`).
pub fn ext_weight(ell: usize, n: i64) -> usize {
    if ell == 2 {
        return n as usize;
    }
    (n / 2) as usize * ell + (n % 2) as usize
}

/// A dg model of `RHom_{k[x]/(x^ℓ)}(k, k)`: the cobar construction of the dual coalgebra,
/// i.e. the free algebra on `y_1, …, y_{ℓ−1}` in degree 1 with `d(y_i) = Σ_{a+b=i} y_a y_b`,
/// modulo words of weight `Σ i > W`.
///
/// The weight is additive and preserved by `d`, so the quotient is an honest finite dg
/// algebra whose cohomology in weights `≤ W` is exactly that of the full cobar complex. With
/// `W` the weight of the Ext class in degree `D`, cohomology and transferred operations on
/// inputs of total degree `≤ D` are exact. `ℓ = 2` is the Koszul case, where Ext is `k[y]`.
pub fn truncated_polynomial_rhom(ell: usize, d: i64, field: Field) -> Result<DGAlgebra> {
    if ell < 2 {
        return Err(Error::InvalidArgument("ell must be at least 2".into()));
    }
    if d < 4 {
        return Err(Error::WindowOverflow(format!("D = {d} is too small; need D >= 4")));
    }
    let w_max = ext_weight(ell, d);
    // words over {1, …, ℓ−1} of weight ≤ W, ordered by length then lexicographically
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (w, wt) in &layer {
            for a in 1..ell {
                if wt + a <= w_max {
                    let mut v = w.clone();
                    v.push(a);
                    next.push((v, wt + a));
                }
            }
        }
        words.extend(next.iter().map(|(w, _)| w.clone()));
        layer = next;
    }
    let index: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let weight = |w: &[usize]| w.iter().sum::<usize>();
    let name = |w: &[usize]| -> String {
        if w.is_empty() {
            "1".into()
        } else {
            w.iter().map(|a| format!("y{a}")).collect::<Vec<_>>().join(".")
        }
    };
    let basis = words.iter().map(|w| (name(w), w.len() as i64)).collect();
    let mut products = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if weight(u) + weight(v) <= w_max {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                products.push(Product { i, j, k: index[&uv], coeff: field.one() });
            }
        }
    }
    let n = words.len();
    let mut unit = zero_vector(field, n);
    unit[0] = field.one();
    let alg = Arc::new(GradedAlgebra::new(field, basis, &products, unit, None)?);
    let mut diff = Matrix::zeros(field, n, n);
    for (col, w) in words.iter().enumerate() {
        for pos in 0..w.len() {
            let sign = field.from_i64(if pos % 2 == 0 { 1 } else { -1 });
            for b in 1..w[pos] {
                let mut v = w[..pos].to_vec();
                v.push(b);
                v.push(w[pos] - b);
                v.extend_from_slice(&w[pos + 1..]);
                diff.add_to(index[&v], col, &sign);
            }
        }
    }
    DGAlgebra::new(alg, &diff)
}
