//! Minimal models of dg algebras by homotopy transfer.
//!
//! Trees are accumulated recursively in bar form: with `F_1 = i`,
//! `G_n = Σ_{k+l=n} b_2(F_k ⊗ F_l)`, the transferred operations are `b'_n = p G_n` and the
//! components of the quasi-isomorphism `H → A` are `F_n = −h G_n`. Every output is re-checked
//! against the A∞ equations rather than trusted.

mod dga;
mod hodge;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use dga::DGAlgebra;
pub use hodge::{cohomology_algebra, Complements, HodgeData};

use crate::ainfty::bar::{from_bar, to_bar};
use crate::ainfty::{greedy_gauge_equiv, insertion_sum, AInftyMorphism, GaugeVerdict, McFailure, MinimalAInfty};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, Accum, Matrix, SparseVec};
use crate::galg::GradedAlgebra;
use crate::hochschild::{mult_cochain, tabulate, Cochain, CochainSpace, HochschildComplex};

/// A transferred minimal model with the quasi-isomorphism `i: H → A`.
#[derive(Clone, Debug)]
pub struct Transferred {
    pub structure: MinimalAInfty,
    pub morphism: AInftyMorphism,
}

fn b2_dg(alg: &GradedAlgebra, u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    let mut acc = Accum::new();
    for (i, x) in u {
        let odd = alg.degree(*i).rem_euclid(2) == 1;
        for (j, y) in v {
            for (k, z) in alg.mul_basis(*i, *j)? {
                acc.add(*k, (x * &(y * z)).signed(odd));
            }
        }
    }
    Ok(acc.finish())
}

/// `Σ_{k+l=n} b_2(F_k ⊗ F_l)` for bar components `F` from `h` into the dg algebra.
fn tree_sum(h: &Arc<GradedAlgebra>, a: &Arc<GradedAlgebra>, f: &BTreeMap<usize, Cochain>, n: usize) -> Result<Cochain> {
    let space = CochainSpace::between(h, a, n, 2 - n as i64)?;
    tabulate(&space, |x| {
        let mut acc = Vec::new();
        for k in 1..n {
            let u = f[&k].eval(&x[..k])?;
            if u.is_empty() {
                continue;
            }
            let v = f[&(n - k)].eval(&x[k..])?;
            if v.is_empty() {
                continue;
            }
            let w = b2_dg(a, &u, &v).map_err(|e| {
                Error::WindowOverflow(format!("tree b2(F_{k}, F_{}) on {x:?}: {e}", n - k))
            })?;
            acc = axpy(&acc, &a.field().one(), &w);
        }
        Ok(acc)
    })
}

fn post_compose(
    c: &Cochain,
    dst: &Arc<GradedAlgebra>,
    degree: i64,
    map: impl Fn(&SparseVec) -> Result<SparseVec>,
) -> Result<Cochain> {
    let mut out = Cochain::between(c.src(), dst, c.arity(), degree)?;
    for (t, v) in c.entries() {
        let w = map(v).map_err(|e| Error::WindowOverflow(format!("tree on {t:?}: {e}")))?;
        if !w.is_empty() {
            out.set(t.clone(), w)?;
        }
    }
    Ok(out)
}

/// Transfers the dg structure of `dg` to `h = H(dg)` (as produced by [`cohomology_algebra`])
/// up to arity `n_max`.
pub fn transfer_structure(dg: &DGAlgebra, hd: &HodgeData, h: &Arc<GradedAlgebra>, n_max: usize) -> Result<Transferred> {
    let a = dg.algebra();
    if h.dim() != hd.cohomology_dim() {
        return Err(Error::InvalidArgument("cohomology algebra does not match the splitting".into()));
    }
    let mut i1 = Cochain::between(h, a, 1, 0)?;
    for r in 0..h.dim() {
        i1.set(vec![r], hd.include(r).clone())?;
    }
    let mut f: BTreeMap<usize, Cochain> = BTreeMap::new();
    f.insert(1, i1);
    let mut structure = MinimalAInfty::formal(h.clone(), n_max)?;
    let m2 = mult_cochain(h)?;
    for n in 2..=n_max {
        let g = tree_sum(h, a, &f, n)?;
        let bn = post_compose(&g, h, 2 - n as i64, |v| hd.project(v))?;
        if n == 2 {
            if from_bar(&bn) != m2 {
                return Err(Error::Precondition("cohomology product does not match the splitting".into()));
            }
        } else {
            structure.set(from_bar(&bn))?;
        }
        let fneg = post_compose(&g, a, 1 - n as i64, |v| hd.homotopy(v))?.neg();
        f.insert(n, fneg);
    }
    let comps = f.values().map(from_bar).collect();
    let morphism = AInftyMorphism::new(h.clone(), a.clone(), comps, n_max)?;
    Ok(Transferred { structure, morphism })
}

/// Arities `1 ≤ n ≤ N` where `f: (H, m) → (A, d, μ)` fails the A∞-morphism equation
/// `Σ F(1 ⊗ b'_s ⊗ 1) = d F_n + Σ b_2(F_k ⊗ F_l)` (bar form).
pub fn verify_dg_morphism(f: &AInftyMorphism, s: &MinimalAInfty, dg: &DGAlgebra, n_max: usize) -> Result<Vec<McFailure>> {
    let h = s.algebra();
    let a = dg.algebra();
    if !Arc::ptr_eq(&f.src, h) || !Arc::ptr_eq(&f.dst, a) {
        return Err(Error::InvalidArgument("morphism does not match the structures".into()));
    }
    let fb: BTreeMap<usize, Cochain> = f.components().map(|(n, c)| (n, to_bar(c))).collect();
    let mut b: BTreeMap<usize, Cochain> = BTreeMap::new();
    b.insert(2, to_bar(&s.m(2)));
    for (n, m) in s.higher() {
        b.insert(n, to_bar(m));
    }
    let mut out = Vec::new();
    for n in 1..=n_max.min(f.max_arity) {
        let mut full = fb.clone();
        for k in 1..=n {
            full.entry(k).or_insert_with(|| Cochain::between(h, a, k, 1 - k as i64).expect("valid source"));
        }
        let lhs = insertion_sum(n, &full, &b, h, a, 2 - n as i64)?;
        let trees = if n >= 2 { tree_sum(h, a, &full, n)? } else { Cochain::between(h, a, 1, 1)? };
        let df = post_compose(&full[&n], a, 2 - n as i64, |v| dg.apply_d(v))?;
        let defect = lhs.sub(&trees).sub(&df);
        if let Some(w) = defect.witness() {
            out.push(McFailure { arity: n, witness: w });
        }
    }
    Ok(out)
}

/// Moves a structure along a degree-preserving linear isomorphism `φ: s.algebra() → target`
/// (columns are images of basis vectors), which must intertwine the products.
pub fn transport_linear(s: &MinimalAInfty, phi: &Matrix, target: &Arc<GradedAlgebra>) -> Result<MinimalAInfty> {
    let src = s.algebra();
    let inv = phi.inverse().ok_or_else(|| Error::InvalidArgument("φ is not invertible".into()))?;
    let cols = |m: &Matrix| -> Vec<SparseVec> {
        (0..m.cols())
            .map(|j| m.column(j).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect()
    };
    let (fwd, back) = (cols(phi), cols(&inv));
    let move_cochain = |c: &Cochain| -> Result<Cochain> {
        let space = CochainSpace::new(target, c.arity(), c.degree())?;
        tabulate(&space, |y| {
            let mut acc = Accum::new();
            let parts: Vec<&SparseVec> = y.iter().map(|&j| &back[j]).collect();
            let mut idx = vec![0usize; parts.len()];
            if parts.iter().any(|p| p.is_empty()) {
                return Ok(Vec::new());
            }
            loop {
                let tuple: Vec<usize> = idx.iter().zip(&parts).map(|(&i, p)| p[i].0).collect();
                let mut coeff = target.field().one();
                for (&i, p) in idx.iter().zip(&parts) {
                    coeff = &coeff * &p[i].1;
                }
                for (k, v) in c.eval(&tuple)? {
                    for (m, w) in &fwd[k] {
                        acc.add(*m, &coeff * &(&v * w));
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        return Ok(acc.finish());
                    }
                    idx[pos] += 1;
                    if idx[pos] < parts[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        })
    };
    if move_cochain(&mult_cochain(src)?)? != mult_cochain(target)? {
        return Err(Error::InvalidArgument("φ does not intertwine the products".into()));
    }
    let mut out = MinimalAInfty::formal(target.clone(), s.max_arity())?;
    for (_, m) in s.higher() {
        out.set(move_cochain(m)?)?;
    }
    Ok(out)
}

/// Transfers twice with different splittings and compares the two minimal models on the
/// second cohomology basis. Gauge-distinct answers would contradict uniqueness of minimal models.
pub fn minimal_models_agree(
    dg: &DGAlgebra,
    range: Option<(i64, i64)>,
    first: Complements,
    second: Complements,
    n_max: usize,
) -> Result<GaugeVerdict> {
    let (h1, hd1) = cohomology_algebra(dg, range, first)?;
    let (h2, hd2) = cohomology_algebra(dg, range, second)?;
    let t1 = transfer_structure(dg, &hd1, &h1, n_max)?;
    let t2 = transfer_structure(dg, &hd2, &h2, n_max)?;
    let field = dg.field();
    let cols: Vec<Vec<_>> = (0..h1.dim())
        .map(|r| {
            let v = hd2.project(hd1.include(r))?;
            let mut col = crate::exactlin::zero_vector(field, h2.dim());
            for (k, c) in v {
                col[k] = c;
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let phi = Matrix::from_columns(field, h2.dim(), &cols);
    let moved = transport_linear(&t1.structure, &phi, &h2)?;
    let cx = HochschildComplex::new(h2.clone());
    greedy_gauge_equiv(&cx, &moved, &t2.structure, n_max)
}
