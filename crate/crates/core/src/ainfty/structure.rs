use std::collections::BTreeMap;
use std::sync::Arc;

use super::bar::{apply_blocks, bar_insert, compositions, from_bar, to_bar};
use crate::error::{Error, Result};
use crate::exactlin::Accum;
use crate::galg::GradedAlgebra;
use crate::hochschild::{mult_cochain, pre_lie, tabulate, Cochain, CochainSpace};

/// Minimal A∞-structure `(m_2, m_3, …, m_N)` on a graded algebra; `m_2` is the
/// multiplication and `m_n ∈ HC^{n, 2−n}`. Arities above `max_arity` are unknown,
/// arities up to it that are not stored are zero.
#[derive(Clone, Debug)]
pub struct MinimalAInfty {
    alg: Arc<GradedAlgebra>,
    m2: Cochain,
    ops: BTreeMap<usize, Cochain>,
    max_arity: usize,
}

impl MinimalAInfty {
    /// The formal structure `m_{≥3} = 0` up to `max_arity`.
    pub fn formal(alg: Arc<GradedAlgebra>, max_arity: usize) -> Result<MinimalAInfty> {
        let m2 = mult_cochain(&alg)?;
        Ok(MinimalAInfty { alg, m2, ops: BTreeMap::new(), max_arity: max_arity.max(2) })
    }

    /// Structure with the given higher operations.
    pub fn new(alg: Arc<GradedAlgebra>, ops: Vec<Cochain>, max_arity: usize) -> Result<MinimalAInfty> {
        let mut s = MinimalAInfty::formal(alg, max_arity)?;
        for m in ops {
            s.set(m)?;
        }
        Ok(s)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Stored higher operations, by arity.
    pub fn higher(&self) -> impl Iterator<Item = (usize, &Cochain)> {
        self.ops.iter().map(|(n, c)| (*n, c))
    }

    /// Adds or replaces `m_n` (`n ≥ 3`), raising the truncation level if needed.
    pub fn set(&mut self, m: Cochain) -> Result<()> {
        let n = m.arity();
        if n < 3 || m.degree() != 2 - n as i64 {
            return Err(Error::InvalidArgument(format!(
                "operation of bidegree {:?} is not of the form (n, 2-n) with n >= 3",
                m.bidegree()
            )));
        }
        if !Arc::ptr_eq(m.src(), &self.alg) {
            return Err(Error::InvalidArgument("operation on a different algebra".into()));
        }
        self.max_arity = self.max_arity.max(n);
        if m.is_zero() {
            self.ops.remove(&n);
        } else {
            self.ops.insert(n, m);
        }
        Ok(())
    }

    /// Drops operations of arity above `n`.
    pub fn truncated(&self, n: usize) -> MinimalAInfty {
        let mut s = self.clone();
        s.ops.retain(|k, _| *k <= n);
        s.max_arity = n.max(2);
        s
    }

    /// `m_n` (zero if not stored). Panics above the truncation level.
    pub fn m(&self, n: usize) -> Cochain {
        assert!(n <= self.max_arity, "m_{n} above the truncation level {}", self.max_arity);
        match n {
            2 => self.m2.clone(),
            _ => self
                .ops
                .get(&n)
                .cloned()
                .unwrap_or_else(|| CochainSpace::new(&self.alg, n, 2 - n as i64).expect("valid algebra").zero()),
        }
    }

    fn m_ref(&self, n: usize) -> Option<&Cochain> {
        match n {
            2 => Some(&self.m2),
            _ => self.ops.get(&n),
        }
    }

    /// Whether every stored `m_n` vanishes unless `2 − n ∈ dℤ`.
    pub fn is_d_sparse(&self, d: i64) -> bool {
        self.ops.keys().all(|&n| (2 - n as i64).rem_euclid(d) == 0)
    }

    pub fn cochain_eq(&self, o: &MinimalAInfty) -> bool {
        self.ops == o.ops
    }
}

/// `Σ_{p+s−1=n} {m_p}{m_s}` over the known operations; zero iff the arity-`n`
/// A∞-equation holds.
pub fn mc_defect(s: &MinimalAInfty, n: usize) -> Result<Cochain> {
    let mut out = CochainSpace::new(&s.alg, n, 3 - n as i64)?.zero();
    for p in 2..n {
        let q = n + 1 - p;
        if p > s.max_arity || q > s.max_arity {
            continue;
        }
        if let (Some(a), Some(b)) = (s.m_ref(p), s.m_ref(q)) {
            out = out.add(&pre_lie(a, b)?);
        }
    }
    Ok(out)
}

/// A violated A∞-equation.
#[derive(Clone, Debug)]
pub struct McFailure {
    pub arity: usize,
    pub witness: String,
}

/// Arities `3 ≤ n ≤ N` whose equation fails, with a witness tuple each.
/// Equations involving operations above the truncation level are skipped.
pub fn verify_upto(s: &MinimalAInfty, n_max: usize) -> Result<Vec<McFailure>> {
    let mut out = Vec::new();
    for n in 3..=n_max.min(s.max_arity + 1) {
        let d = mc_defect(s, n)?;
        if let Some(w) = d.witness() {
            out.push(McFailure { arity: n, witness: w });
        }
    }
    Ok(out)
}

/// A∞-morphism between minimal structures, components `f_n: Λ_1^{⊗n} → Λ_2` of degree
/// `1 − n` (bidegree `(n, 1−n)`), `n ≤ max_arity`.
#[derive(Clone, Debug)]
pub struct AInftyMorphism {
    pub src: Arc<GradedAlgebra>,
    pub dst: Arc<GradedAlgebra>,
    comps: BTreeMap<usize, Cochain>,
    pub max_arity: usize,
}

impl AInftyMorphism {
    pub fn new(src: Arc<GradedAlgebra>, dst: Arc<GradedAlgebra>, comps: Vec<Cochain>, max_arity: usize) -> Result<AInftyMorphism> {
        let mut f = AInftyMorphism { src, dst, comps: BTreeMap::new(), max_arity };
        for c in comps {
            f.set(c)?;
        }
        if !f.comps.contains_key(&1) {
            return Err(Error::InvalidArgument("a morphism needs a first component".into()));
        }
        Ok(f)
    }

    /// Gauge morphism with `f_1 = id` and the given higher components.
    pub fn gauge(alg: Arc<GradedAlgebra>, higher: Vec<Cochain>, max_arity: usize) -> Result<AInftyMorphism> {
        let id = identity_cochain(&alg)?;
        let mut comps = vec![id];
        comps.extend(higher);
        AInftyMorphism::new(alg.clone(), alg, comps, max_arity)
    }

    pub fn identity(alg: Arc<GradedAlgebra>, max_arity: usize) -> Result<AInftyMorphism> {
        AInftyMorphism::gauge(alg, Vec::new(), max_arity)
    }

    pub fn set(&mut self, c: Cochain) -> Result<()> {
        let n = c.arity();
        if n == 0 || c.degree() != 1 - n as i64 {
            return Err(Error::InvalidArgument(format!("component of bidegree {:?} is not (n, 1-n)", c.bidegree())));
        }
        if !Arc::ptr_eq(c.src(), &self.src) || !Arc::ptr_eq(c.dst(), &self.dst) {
            return Err(Error::InvalidArgument("component between the wrong algebras".into()));
        }
        self.max_arity = self.max_arity.max(n);
        self.comps.insert(n, c);
        Ok(())
    }

    pub fn component(&self, n: usize) -> Cochain {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| CochainSpace::between(&self.src, &self.dst, n, 1 - n as i64).expect("valid").zero())
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Cochain)> {
        self.comps.iter().map(|(n, c)| (*n, c))
    }

    /// Whether `f_1` is the identity of the same algebra.
    pub fn is_gauge(&self) -> Result<bool> {
        Ok(Arc::ptr_eq(&self.src, &self.dst) && self.component(1) == identity_cochain(&self.src)?)
    }

    pub(crate) fn bar_components(&self) -> BTreeMap<usize, Cochain> {
        self.comps.iter().map(|(n, c)| (*n, to_bar(c))).collect()
    }
}

pub fn identity_cochain(alg: &Arc<GradedAlgebra>) -> Result<Cochain> {
    let space = CochainSpace::new(alg, 1, 0)?;
    tabulate(&space, |x| Ok(vec![(x[0], alg.field().one())]))
}

/// `Σ_{k} Σ_{i_1+…+i_k = n} B_k(F_{i_1} ⊗ … ⊗ F_{i_k})` restricted to `k` in `ks`,
/// for bar maps `B_k` on the target and degree-0 bar components `F` into it.
pub(crate) fn composite_sum(
    src: &Arc<GradedAlgebra>,
    dst: &Arc<GradedAlgebra>,
    n: usize,
    degree: i64,
    outer: &BTreeMap<usize, Cochain>,
    inner: &BTreeMap<usize, Cochain>,
    ks: impl Iterator<Item = usize>,
) -> Result<Cochain> {
    let space = CochainSpace::between(src, dst, n, degree)?;
    let mut terms: Vec<(&Cochain, Vec<&Cochain>)> = Vec::new();
    for k in ks {
        let Some(b) = outer.get(&k) else { continue };
        for comp in compositions(n, k) {
            let parts: Option<Vec<&Cochain>> = comp.iter().map(|i| inner.get(i)).collect();
            if let Some(parts) = parts {
                terms.push((b, parts));
            }
        }
    }
    tabulate(&space, |x| {
        let mut acc = Accum::new();
        for (b, parts) in &terms {
            for (m, c) in apply_blocks(b, parts, x)? {
                acc.add(m, c);
            }
        }
        Ok(acc.finish())
    })
}

/// `Σ_{r+s+t=n, s≥2} F_{r+1+t}(1^r ⊗ B_s ⊗ 1^t)` in bar form.
pub(crate) fn insertion_sum(
    n: usize,
    f: &BTreeMap<usize, Cochain>,
    b: &BTreeMap<usize, Cochain>,
    src: &Arc<GradedAlgebra>,
    dst: &Arc<GradedAlgebra>,
    degree: i64,
) -> Result<Cochain> {
    let mut out = CochainSpace::between(src, dst, n, degree)?.zero();
    for (&s, bs) in b {
        if s > n || s < 2 {
            continue;
        }
        let Some(fk) = f.get(&(n + 1 - s)) else { continue };
        for i in 1..=fk.arity() {
            out = out.add(&bar_insert(fk, bs, i)?);
        }
    }
    Ok(out)
}

pub(crate) fn bar_ops(s: &MinimalAInfty) -> BTreeMap<usize, Cochain> {
    let mut out = BTreeMap::new();
    out.insert(2, to_bar(&s.m2));
    for (n, m) in &s.ops {
        out.insert(*n, to_bar(m));
    }
    out
}

/// Defect of the arity-`n` morphism equation
/// `Σ F(1 ⊗ b ⊗ 1) − Σ b'(F ⊗ … ⊗ F)` (bar form, zero iff it holds).
pub fn morphism_defect(f: &AInftyMorphism, s: &MinimalAInfty, t: &MinimalAInfty, n: usize) -> Result<Cochain> {
    let fb = f.bar_components();
    let lhs = insertion_sum(n, &fb, &bar_ops(s), &f.src, &f.dst, 2 - n as i64)?;
    let rhs = composite_sum(&f.src, &f.dst, n, 2 - n as i64, &bar_ops(t), &fb, 2..=n)?;
    Ok(lhs.sub(&rhs))
}

/// Arities `2 ≤ n ≤ N` whose morphism equation fails.
pub fn verify_morphism(f: &AInftyMorphism, s: &MinimalAInfty, t: &MinimalAInfty, n_max: usize) -> Result<Vec<McFailure>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let d = morphism_defect(f, s, t, n)?;
        if let Some(w) = d.witness() {
            out.push(McFailure { arity: n, witness: w });
        }
    }
    Ok(out)
}

/// Transports `s` along a gauge morphism: the unique `s'` with `f: s → s'` strict up to arity `N`.
pub fn gauge_transport(s: &MinimalAInfty, f: &AInftyMorphism, n_max: usize) -> Result<MinimalAInfty> {
    if !f.is_gauge()? || !Arc::ptr_eq(&f.src, &s.alg) {
        return Err(Error::Precondition("gauge transport needs f_1 = id on the structure's algebra".into()));
    }
    let alg = s.alg.clone();
    let fb = f.bar_components();
    let b = bar_ops(s);
    let mut out = MinimalAInfty::formal(alg.clone(), n_max)?;
    let mut bp: BTreeMap<usize, Cochain> = BTreeMap::new();
    bp.insert(2, b[&2].clone());
    for n in 3..=n_max {
        let lhs = insertion_sum(n, &fb, &b, &alg, &alg, 2 - n as i64)?;
        let rhs = composite_sum(&alg, &alg, n, 2 - n as i64, &bp, &fb, 2..n)?;
        let bn = lhs.sub(&rhs);
        out.set(from_bar(&bn))?;
        bp.insert(n, bn);
    }
    Ok(out)
}

/// `g ∘ f` up to arity `N`, for `f: A → B`, `g: B → C`.
pub fn compose(g: &AInftyMorphism, f: &AInftyMorphism, n_max: usize) -> Result<AInftyMorphism> {
    if !Arc::ptr_eq(&g.src, &f.dst) {
        return Err(Error::InvalidArgument("morphisms do not compose".into()));
    }
    let (fb, gb) = (f.bar_components(), g.bar_components());
    let mut comps = Vec::new();
    for n in 1..=n_max {
        let c = composite_sum(&f.src, &g.dst, n, 1 - n as i64, &gb, &fb, 1..=n)?;
        comps.push(from_bar(&c));
    }
    AInftyMorphism::new(f.src.clone(), g.dst.clone(), comps, n_max)
}

/// Inverse of a gauge morphism up to arity `N`.
pub fn gauge_inverse(f: &AInftyMorphism, n_max: usize) -> Result<AInftyMorphism> {
    if !f.is_gauge()? {
        return Err(Error::Precondition("not a gauge morphism".into()));
    }
    let alg = f.src.clone();
    let fb = f.bar_components();
    let mut gb: BTreeMap<usize, Cochain> = BTreeMap::new();
    gb.insert(1, fb[&1].clone());
    for n in 2..=n_max {
        let fn_ = fb.get(&n).cloned().unwrap_or_else(|| CochainSpace::new(&alg, n, 1 - n as i64).unwrap().zero());
        let rest = composite_sum(&alg, &alg, n, 1 - n as i64, &gb, &fb, 2..n)?;
        gb.insert(n, fn_.add(&rest).neg());
    }
    let comps = gb.values().map(from_bar).collect();
    AInftyMorphism::new(alg.clone(), alg, comps, n_max)
}
