use std::sync::Arc;

use super::structure::{gauge_transport, mc_defect, verify_upto, AInftyMorphism, MinimalAInfty};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, SparseVec, Vector};
use crate::galg::{component_as_bimodule, degree0_part, is_d_sparse, GradedAlgebra};
use crate::hochschild::{square, BimoduleHochschild, Cochain, HochschildComplex};

/// A Hochschild class: coordinates in the basis of `HH^{p,q}` chosen by the complex.
#[derive(Clone, Debug)]
pub struct HHClass {
    pub p: usize,
    pub q: i64,
    pub coords: Vector,
    pub cocycle: Cochain,
}

impl HHClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

fn class_of(cx: &HochschildComplex, z: &Cochain) -> Result<HHClass> {
    let red = cx.reduce_to_class(z)?;
    Ok(HHClass { p: z.arity(), q: z.degree(), coords: red.coords, cocycle: z.clone() })
}

fn check_complex(cx: &HochschildComplex, s: &MinimalAInfty) -> Result<()> {
    if !Arc::ptr_eq(cx.algebra(), s.algebra()) {
        return Err(Error::InvalidArgument("complex and structure live on different algebras".into()));
    }
    Ok(())
}

/// `⟨m_{d+2}⟩ ∈ HH^{d+2,−d}` for a d-sparse structure, checking that its square
/// vanishes in `HH^{2d+3,−2d}`.
pub fn d_sparse_massey(cx: &HochschildComplex, s: &MinimalAInfty, d: usize) -> Result<HHClass> {
    check_complex(cx, s)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    if !is_d_sparse(s.algebra(), d as i64) || !s.is_d_sparse(d as i64) {
        return Err(Error::Precondition(format!("the structure is not {d}-sparse")));
    }
    let n = d + 2;
    if s.max_arity() < n {
        return Err(Error::Precondition(format!("m_{n} is above the truncation level")));
    }
    for k in 3..=(n + 1).min(s.max_arity() + 1) {
        if !mc_defect(s, k)?.is_zero() {
            return Err(Error::NotAStructure(n, k));
        }
    }
    let m = s.m(n);
    let class = class_of(cx, &m)?;
    let sq = square(&m)?;
    if !cx.reduce_to_class(&sq)?.coords.iter().all(Scalar::is_zero) {
        return Err(Error::NotMaurerCartan);
    }
    Ok(class)
}

/// The universal Massey product `⟨m_3⟩ ∈ HH^{3,−1}`.
pub fn universal_massey(cx: &HochschildComplex, s: &MinimalAInfty) -> Result<HHClass> {
    d_sparse_massey(cx, s, 1)
}

/// Restricted universal Massey product `j^*⟨m_{d+2}⟩ ∈ HH^{d+2}(Λ; 𝚲^{−d})`, where `Λ` is the
/// degree-0 part. Returns the class coordinates in the coefficient complex basis.
pub struct RestrictedMassey {
    pub complex: BimoduleHochschild,
    pub coords: Vector,
    pub cocycle: SparseVec,
}

/// `res(c) = (−1)^{pq} c|_Λ` as a coordinate vector of `C^p(Λ; 𝚲^q)`; a chain map.
pub fn restrict_cochain(c: &Cochain, target: &BimoduleHochschild) -> Result<SparseVec> {
    let alg = c.src();
    let zero = degree0_part(alg)?;
    let comp = alg.basis_in_degree(c.degree());
    let dm = target.module().dim();
    if comp.len() != dm {
        return Err(Error::Dimension("coefficient module does not match the degree component".into()));
    }
    let p = c.arity();
    let sign = (p as i64 * c.degree()).rem_euclid(2) == 1;
    let n0 = zero.inclusion.len();
    let mut out = Vec::new();
    for ti in 0..n0.pow(p as u32) {
        let local = target.tuple(ti, p);
        let global: Vec<usize> = local.iter().map(|&i| zero.inclusion[i]).collect();
        for (k, v) in c.eval(&global)? {
            let m = comp.iter().position(|&x| x == k).expect("homogeneous value");
            out.push((ti * dm + m, v.signed(sign)));
        }
    }
    out.sort_unstable_by_key(|(i, _)| *i);
    Ok(out)
}

/// Coefficient complex `C^*(Λ; 𝚲^q)` for the degree-0 part `Λ` of a graded algebra.
pub fn coefficient_complex(alg: &Arc<GradedAlgebra>, q: i64) -> Result<BimoduleHochschild> {
    BimoduleHochschild::new(component_as_bimodule(alg, q)?)
}

pub fn restricted_massey(cx: &HochschildComplex, s: &MinimalAInfty, d: usize) -> Result<RestrictedMassey> {
    let class = d_sparse_massey(cx, s, d)?;
    let complex = coefficient_complex(s.algebra(), -(d as i64))?;
    let v = restrict_cochain(&class.cocycle, &complex)?;
    let (coords, _) = complex.reduce(d + 2, &v)?;
    Ok(RestrictedMassey { complex, coords, cocycle: v })
}

/// Obstruction to adjoining `m_N` to a structure known through arity `N − 1`: the class of
/// `Σ_{p+s=N+2; p,s≥3} {m_p}{m_s}` in `HH^{N+1, 2−N}`, with a solving `m_N` when it vanishes.
pub struct Obstruction {
    pub class: HHClass,
    pub solution: Option<Cochain>,
}

pub fn obstruction_class(cx: &HochschildComplex, s: &MinimalAInfty, n: usize) -> Result<Obstruction> {
    check_complex(cx, s)?;
    if n < 3 {
        return Err(Error::InvalidArgument("obstructions start at arity 3".into()));
    }
    let s = s.truncated(n - 1);
    for k in 3..=n {
        if !mc_defect(&s, k)?.is_zero() {
            return Err(Error::NotAStructure(n - 1, k));
        }
    }
    // with m_N absent this is exactly the part of the arity-(N+1) equation not involving m_N
    let o = mc_defect(&s, n + 1)?;
    let red = cx.reduce_to_class(&o)?;
    let class = HHClass { p: n + 1, q: 2 - n as i64, coords: red.coords.clone(), cocycle: o };
    let solution = if class.is_zero() {
        let b = red.bounding.expect("positive arity");
        Some(b.neg())
    } else {
        None
    };
    Ok(Obstruction { class, solution })
}

/// Adjoins a solved `m_N`, leaving lower operations untouched; returns the obstruction class if nonzero.
pub fn extend_step(cx: &HochschildComplex, s: &MinimalAInfty, n: usize) -> Result<std::result::Result<MinimalAInfty, HHClass>> {
    let ob = obstruction_class(cx, s, n)?;
    match ob.solution {
        Some(m) => {
            let mut t = s.truncated(n - 1);
            t.set(m)?;
            debug_assert!(verify_upto(&t, n + 1)?.is_empty());
            Ok(Ok(t))
        }
        None => Ok(Err(ob.class)),
    }
}

/// Outcome of [`greedy_gauge_equiv`].
#[derive(Clone, Debug)]
pub enum GaugeVerdict {
    Equivalent(AInftyMorphism),
    /// The structures agree below arity `n`, have no higher operations below it, and
    /// their `m_n` have different classes in `HH^{n,2−n}` (a gauge invariant).
    Distinct { arity: usize, left: Vector, right: Vector },
    Unknown { arity: usize },
}

/// Tries to gauge `s1` into `s2` arity by arity, killing each difference `m_n − m'_n`
/// by a gauge component in arity `n − 1` when it is a coboundary.
pub fn greedy_gauge_equiv(cx: &HochschildComplex, s1: &MinimalAInfty, s2: &MinimalAInfty, n_max: usize) -> Result<GaugeVerdict> {
    check_complex(cx, s1)?;
    check_complex(cx, s2)?;
    let alg = s1.algebra().clone();
    let n_max = n_max.min(s1.max_arity()).min(s2.max_arity());
    let mut gauge = AInftyMorphism::identity(alg.clone(), n_max)?;
    let mut cur = s1.truncated(n_max);
    let s2 = s2.truncated(n_max);
    for n in 3..=n_max {
        let diff = cur.m(n).sub(&s2.m(n));
        if diff.is_zero() {
            continue;
        }
        let red = match cx.reduce_to_class(&diff) {
            Ok(r) => r,
            Err(Error::NotCocycle { .. }) => return Ok(GaugeVerdict::Unknown { arity: n }),
            Err(e) => return Err(e),
        };
        let mut red = red;
        if red.coords.iter().any(|c| !c.is_zero()) {
            let lower_vanish = (3..n).all(|k| cur.m(k).is_zero() && s2.m(k).is_zero());
            if lower_vanish {
                let left = cx.reduce_to_class(&cur.m(n))?.coords;
                let right = cx.reduce_to_class(&s2.m(n))?.coords;
                return Ok(GaugeVerdict::Distinct { arity: n, left, right });
            }
            match cocycle_correction(cx, &cur, &s2, n, &red.coords)? {
                Some((step, next)) => {
                    gauge = super::structure::compose(&step, &gauge, n_max)?;
                    cur = next;
                    let diff = cur.m(n).sub(&s2.m(n));
                    if diff.is_zero() {
                        continue;
                    }
                    red = cx.reduce_to_class(&diff)?;
                }
                None => return Ok(GaugeVerdict::Unknown { arity: n }),
            }
        }
        let b = red.bounding.expect("positive arity");
        let mut fixed = false;
        for cand in [b.clone(), b.neg()] {
            let step = AInftyMorphism::gauge(alg.clone(), vec![cand], n_max)?;
            let next = gauge_transport(&cur, &step, n_max)?;
            if next.m(n) == s2.m(n) {
                gauge = super::structure::compose(&step, &gauge, n_max)?;
                cur = next;
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Ok(GaugeVerdict::Unknown { arity: n });
        }
    }
    let check = gauge_transport(&s1.truncated(n_max), &gauge, n_max)?;
    if check.cochain_eq(&s2) {
        Ok(GaugeVerdict::Equivalent(gauge))
    } else {
        Ok(GaugeVerdict::Unknown { arity: n_max })
    }
}

/// The gauge component in arity `n − 2` is only determined up to a cocycle, and that choice
/// moves the class of `m_n`. Solves for the cocycle linearly and keeps it only if it works.
fn cocycle_correction(
    cx: &HochschildComplex,
    cur: &MinimalAInfty,
    target: &MinimalAInfty,
    n: usize,
    coords: &[Scalar],
) -> Result<Option<(AInftyMorphism, MinimalAInfty)>> {
    if n < 4 {
        return Ok(None);
    }
    let alg = cur.algebra().clone();
    let n_max = cur.max_arity();
    let field = alg.field();
    let g = cx.hh(n - 2, 3 - n as i64)?;
    if g.dim() == 0 {
        return Ok(None);
    }
    let transport = |z: Cochain| -> Result<(AInftyMorphism, MinimalAInfty)> {
        let step = AInftyMorphism::gauge(alg.clone(), vec![z], n_max)?;
        let next = gauge_transport(cur, &step, n_max)?;
        Ok((step, next))
    };
    let mut cols = Vec::new();
    for z in g.reps() {
        let (_, next) = transport(z.clone())?;
        let moved = cx.reduce_to_class(&next.m(n).sub(&cur.m(n)))?;
        cols.push(moved.coords);
    }
    let m = Matrix::from_columns(field, coords.len(), &cols);
    let rhs: Vec<Scalar> = coords.iter().map(|c| -c.clone()).collect();
    let Some(x) = m.solve(&rhs)? else { return Ok(None) };
    let z = g.class_cochain(&x);
    let (step, next) = transport(z)?;
    if (3..n).any(|k| next.m(k) != target.m(k)) {
        return Ok(None);
    }
    let left = cx.reduce_to_class(&next.m(n).sub(&target.m(n)))?;
    Ok(left.coords.iter().all(Scalar::is_zero).then_some((step, next)))
}
