use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, scale, Field, Scalar, SparseVec, Vector};
use crate::galg::GradedAlgebra;

/// A bihomogeneous multilinear map `src^{⊗p} → dst(q)`: the value on
/// `(x_1, …, x_p)` has degree `Σ|x_j| + q`.
///
/// Values are stored sparsely per input tuple of basis indices; absent tuples
/// are zero. On a windowed source only tuples in the *known region* (every
/// input, intermediate and output degree at most the window top) carry
/// information, and evaluating outside it is a window overflow. On a
/// truncated twisted Laurent algebra only degree-0 tuples are stored; other
/// inputs are reached by pulling powers of `ı` out to the right.
#[derive(Clone)]
pub struct Cochain {
    src: Arc<GradedAlgebra>,
    dst: Arc<GradedAlgebra>,
    arity: usize,
    degree: i64,
    values: BTreeMap<Vec<usize>, SparseVec>,
}

impl PartialEq for Cochain {
    fn eq(&self, o: &Cochain) -> bool {
        self.arity == o.arity && self.degree == o.degree && self.values == o.values
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain({}, {}) ", self.arity, self.degree)?;
        f.debug_map()
            .entries(self.values.iter().map(|(k, v)| {
                let names: Vec<&str> = k.iter().map(|&i| self.src.name(i)).collect();
                let val: Vec<String> = v.iter().map(|(i, c)| format!("{c}*{}", self.dst.name(*i))).collect();
                (names.join(","), val.join(" + "))
            }))
            .finish()
    }
}

fn check_source(src: &GradedAlgebra) -> Result<()> {
    if src.laurent().is_none() && src.window().is_some() && src.min_degree() < 0 {
        return Err(Error::InvalidAlgebra(
            "windowed cochains need a nonnegatively graded source".into(),
        ));
    }
    if let Some(info) = src.laurent() {
        if info.d % 2 != 0 {
            return Err(Error::Precondition("equivariant cochains on a Laurent algebra need even d".into()));
        }
        let id = crate::exactlin::Matrix::identity(src.field(), info.base_dim);
        if info.sigma_powers.get(1).is_some_and(|s| *s != id) {
            return Err(Error::Precondition(
                "equivariant cochains on a Laurent algebra need the identity twist".into(),
            ));
        }
    }
    Ok(())
}

impl Cochain {
    pub fn zero(alg: &Arc<GradedAlgebra>, arity: usize, degree: i64) -> Result<Cochain> {
        Cochain::between(alg, alg, arity, degree)
    }

    /// A multilinear map between two (possibly different) graded algebras.
    pub fn between(src: &Arc<GradedAlgebra>, dst: &Arc<GradedAlgebra>, arity: usize, degree: i64) -> Result<Cochain> {
        check_source(src)?;
        Ok(Cochain { src: src.clone(), dst: dst.clone(), arity, degree, values: BTreeMap::new() })
    }

    pub(crate) fn same_shape(&self) -> Cochain {
        Cochain { values: BTreeMap::new(), ..self.clone() }
    }

    pub fn src(&self) -> &Arc<GradedAlgebra> {
        &self.src
    }
    pub fn dst(&self) -> &Arc<GradedAlgebra> {
        &self.dst
    }
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.src
    }
    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn bidegree(&self) -> (usize, i64) {
        (self.arity, self.degree)
    }
    /// `p + q`.
    pub fn total_degree(&self) -> i64 {
        self.arity as i64 + self.degree
    }
    pub fn field(&self) -> Field {
        self.src.field()
    }
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.values.iter()
    }
    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn input_degree(&self, tuple: &[usize]) -> i64 {
        tuple.iter().map(|&i| self.src.degree(i)).sum()
    }

    /// Whether values on `tuple` are known (see the type-level docs).
    pub fn in_region(&self, tuple: &[usize]) -> bool {
        in_region(&self.src, &self.dst, self.degree, tuple)
    }

    /// Sets the value on a basis tuple. The value must be homogeneous of degree `Σ|x_j| + q`.
    pub fn set(&mut self, tuple: Vec<usize>, value: SparseVec) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::Dimension(format!("tuple of length {} for arity {}", tuple.len(), self.arity)));
        }
        if let Some(info) = self.src.laurent() {
            if tuple.iter().any(|&i| i >= info.base_dim) {
                return Err(Error::InvalidArgument("Laurent cochains are stored on degree-0 inputs".into()));
            }
        }
        if !self.in_region(&tuple) {
            return Err(Error::WindowOverflow(format!("tuple {tuple:?} lies outside the known region")));
        }
        let want = self.input_degree(&tuple) + self.degree;
        if let Some((k, _)) = value.iter().find(|(k, _)| self.dst.degree(*k) != want) {
            return Err(Error::InvalidArgument(format!(
                "value on {tuple:?} has a component on {} of degree {} (expected {want})",
                self.dst.name(*k),
                self.dst.degree(*k)
            )));
        }
        if value.is_empty() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, value);
        }
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, tuple: Vec<usize>, value: SparseVec) {
        if value.is_empty() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, value);
        }
    }

    /// Value on a tuple of basis indices.
    pub fn eval(&self, tuple: &[usize]) -> Result<SparseVec> {
        debug_assert_eq!(tuple.len(), self.arity);
        if let Some(info) = self.src.laurent() {
            let mut base = Vec::with_capacity(tuple.len());
            let mut shift = 0usize;
            for &x in tuple {
                let (i, a) = info.split(x);
                base.push(i);
                shift += a;
            }
            let Some(v) = self.values.get(&base) else { return Ok(Vec::new()) };
            if shift == 0 {
                return Ok(v.clone());
            }
            let dinfo = self.dst.laurent().unwrap_or(info);
            return v
                .iter()
                .map(|(k, c)| {
                    let (i, a) = dinfo.split(*k);
                    if a + shift > dinfo.max_power {
                        Err(Error::WindowOverflow(format!("power i^{} exceeds the truncation", a + shift)))
                    } else {
                        Ok((dinfo.join(i, a + shift), c.clone()))
                    }
                })
                .collect();
        }
        if !self.in_region(tuple) {
            let names: Vec<&str> = tuple.iter().map(|&i| self.src.name(i)).collect();
            return Err(Error::WindowOverflow(format!(
                "cochain of bidegree ({}, {}) evaluated on ({}) outside the known region",
                self.arity,
                self.degree,
                names.join(", ")
            )));
        }
        Ok(self.values.get(tuple).cloned().unwrap_or_default())
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        self.add_scaled(&self.field().one(), o)
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        self.add_scaled(&self.field().from_i64(-1), o)
    }

    /// `self + s·o`.
    pub fn add_scaled(&self, s: &Scalar, o: &Cochain) -> Cochain {
        assert_eq!(self.bidegree(), o.bidegree(), "adding cochains of different bidegrees");
        let mut out = self.clone();
        for (t, v) in &o.values {
            let cur = out.values.remove(t).unwrap_or_default();
            let nv = axpy(&cur, s, v);
            if !nv.is_empty() {
                out.values.insert(t.clone(), nv);
            }
        }
        out
    }

    pub fn scaled(&self, s: &Scalar) -> Cochain {
        let mut out = self.same_shape();
        if s.is_zero() {
            return out;
        }
        for (t, v) in &self.values {
            out.values.insert(t.clone(), scale(v, s));
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scaled(&self.field().from_i64(-1))
    }

    /// First tuple with a nonzero value, as basis names (for reports).
    pub fn witness(&self) -> Option<String> {
        self.values.iter().next().map(|(t, v)| {
            let names: Vec<&str> = t.iter().map(|&i| self.src.name(i)).collect();
            let val: Vec<String> = v.iter().map(|(i, c)| format!("{c}*{}", self.dst.name(*i))).collect();
            format!("({}) -> {}", names.join(", "), val.join(" + "))
        })
    }

    /// Applies `f(tuple, value) -> value` to every stored entry.
    pub fn map_entries<F: FnMut(&[usize], &SparseVec) -> SparseVec>(&self, mut f: F) -> Cochain {
        let mut out = self.same_shape();
        for (t, v) in &self.values {
            let nv = f(t, v);
            if !nv.is_empty() {
                out.values.insert(t.clone(), nv);
            }
        }
        out
    }
}

pub(crate) fn in_region(src: &GradedAlgebra, dst: &GradedAlgebra, q: i64, tuple: &[usize]) -> bool {
    if src.laurent().is_some() {
        return true;
    }
    let sum: i64 = tuple.iter().map(|&i| src.degree(i)).sum();
    if let Some((_, hi)) = src.window() {
        if sum > hi {
            return false;
        }
    }
    if let Some((_, hi)) = dst.window() {
        if dst.laurent().is_none() && sum + q > hi {
            return false;
        }
    }
    true
}

/// Coordinates on the space of cochains of a fixed bidegree restricted to the known region.
pub struct CochainSpace {
    pub src: Arc<GradedAlgebra>,
    pub dst: Arc<GradedAlgebra>,
    pub arity: usize,
    pub degree: i64,
    tuples: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
    dim: usize,
}

impl CochainSpace {
    pub fn new(alg: &Arc<GradedAlgebra>, arity: usize, degree: i64) -> Result<CochainSpace> {
        CochainSpace::between(alg, alg, arity, degree)
    }

    pub fn between(src: &Arc<GradedAlgebra>, dst: &Arc<GradedAlgebra>, arity: usize, degree: i64) -> Result<CochainSpace> {
        check_source(src)?;
        let inputs: Vec<usize> = match src.laurent() {
            Some(info) => (0..info.base_dim).collect(),
            None => (0..src.dim()).collect(),
        };
        let mut by_degree: HashMap<i64, Vec<usize>> = HashMap::new();
        for k in 0..dst.dim() {
            by_degree.entry(dst.degree(k)).or_default().push(k);
        }
        let limit = src.window().filter(|_| src.laurent().is_none()).map(|(_, hi)| hi);
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(arity);
        fn rec(
            src: &GradedAlgebra,
            inputs: &[usize],
            arity: usize,
            limit: Option<i64>,
            sum: i64,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == arity {
                out.push(cur.clone());
                return;
            }
            for &i in inputs {
                let s = sum + src.degree(i);
                if limit.is_some_and(|l| s > l) {
                    continue;
                }
                cur.push(i);
                rec(src, inputs, arity, limit, s, cur, out);
                cur.pop();
            }
        }
        rec(src, &inputs, arity, limit, 0, &mut cur, &mut tuples);
        let mut kept = Vec::new();
        let mut outputs = Vec::new();
        let mut offsets = Vec::new();
        let mut lookup = HashMap::new();
        let mut dim = 0;
        for t in tuples {
            if !in_region(src, dst, degree, &t) {
                continue;
            }
            let want = t.iter().map(|&i| src.degree(i)).sum::<i64>() + degree;
            let outs = by_degree.get(&want).cloned().unwrap_or_default();
            if outs.is_empty() {
                continue;
            }
            lookup.insert(t.clone(), kept.len());
            offsets.push(dim);
            dim += outs.len();
            outputs.push(outs);
            kept.push(t);
        }
        Ok(CochainSpace { src: src.clone(), dst: dst.clone(), arity, degree, tuples: kept, outputs, offsets, lookup, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn outputs(&self, t: usize) -> &[usize] {
        &self.outputs[t]
    }

    /// Coordinate index of `(tuple, output basis element)`.
    pub fn coord(&self, tuple: &[usize], out: usize) -> Option<usize> {
        let t = *self.lookup.get(tuple)?;
        let pos = self.outputs[t].iter().position(|&k| k == out)?;
        Some(self.offsets[t] + pos)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> Option<usize> {
        self.lookup.get(tuple).copied()
    }

    pub fn offset(&self, t: usize) -> usize {
        self.offsets[t]
    }

    /// `(tuple index, output)` of a coordinate.
    pub fn locate(&self, coord: usize) -> (usize, usize) {
        let t = match self.offsets.binary_search(&coord) {
            Ok(t) => t,
            Err(t) => t - 1,
        };
        (t, self.outputs[t][coord - self.offsets[t]])
    }

    pub fn zero(&self) -> Cochain {
        Cochain {
            src: self.src.clone(),
            dst: self.dst.clone(),
            arity: self.arity,
            degree: self.degree,
            values: BTreeMap::new(),
        }
    }

    pub fn to_sparse(&self, c: &Cochain) -> Result<SparseVec> {
        assert_eq!(c.bidegree(), (self.arity, self.degree));
        let mut out = Vec::new();
        for (t, v) in &c.values {
            for (k, x) in v {
                let idx = self.coord(t, *k).ok_or_else(|| {
                    Error::InvalidArgument(format!("cochain value on {t:?} outside its coordinate space"))
                })?;
                out.push((idx, x.clone()));
            }
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn to_dense(&self, c: &Cochain) -> Result<Vector> {
        Ok(crate::exactlin::sparse_to_dense(&self.to_sparse(c)?, self.dim, self.src.field()))
    }

    pub fn from_sparse(&self, v: &SparseVec) -> Cochain {
        let mut c = self.zero();
        let mut cur: Option<(usize, SparseVec)> = None;
        for (idx, x) in v {
            let (t, k) = self.locate(*idx);
            match &mut cur {
                Some((ct, vals)) if *ct == t => vals.push((k, x.clone())),
                _ => {
                    if let Some((ct, mut vals)) = cur.take() {
                        vals.sort_unstable_by_key(|(i, _)| *i);
                        c.set_unchecked(self.tuples[ct].clone(), vals);
                    }
                    cur = Some((t, vec![(k, x.clone())]));
                }
            }
        }
        if let Some((ct, mut vals)) = cur {
            vals.sort_unstable_by_key(|(i, _)| *i);
            c.set_unchecked(self.tuples[ct].clone(), vals);
        }
        c
    }

    pub fn from_dense(&self, v: &[Scalar]) -> Cochain {
        self.from_sparse(&crate::exactlin::sparse_from_dense(v))
    }

    /// The cochain with value `e_out` on `tuple` and zero elsewhere.
    pub fn basis_cochain(&self, coord: usize) -> Cochain {
        self.from_sparse(&vec![(coord, self.src.field().one())])
    }
}
