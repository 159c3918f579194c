use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::cochain::{Cochain, CochainSpace};
use super::ops::{bracket, differential_columns, hochschild_differential};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Field, Insert, Matrix, Scalar, SparseVec, Vector};
use crate::galg::GradedAlgebra;

/// Cohomology at the middle of `C_{-1} → C → C_{+1}`, given the columns of both maps,
/// with a fixed basis of representatives and a reducer for cocycles.
pub struct SubquotientData {
    pub reps: Vec<SparseVec>,
    pub cocycle_dim: usize,
    pub boundary_rank: usize,
    /// Tracked echelon over the incoming columns followed by the representatives.
    reducer: Echelon,
    boundary_gens: usize,
}

impl SubquotientData {
    pub fn new(field: Field, d_out: &[SparseVec], d_in: &[SparseVec]) -> SubquotientData {
        let mut kernel = Echelon::new(field, true);
        let mut cycles: Vec<SparseVec> = Vec::new();
        for col in d_out {
            if let Insert::Dependent(combo) = kernel.insert(col.clone()) {
                cycles.push(combo);
            }
        }
        let mut select = Echelon::new(field, false);
        for b in d_in {
            select.insert(b.clone());
        }
        let boundary_rank = select.rank();
        let mut reps = Vec::new();
        for z in &cycles {
            if let Insert::New(_) = select.insert(z.clone()) {
                reps.push(z.clone());
            }
        }
        // tracked indices past the boundary block are exactly the representatives
        let mut reducer = Echelon::new(field, true);
        for b in d_in {
            reducer.insert(b.clone());
        }
        for r in &reps {
            reducer.insert(r.clone());
        }
        SubquotientData { reps, cocycle_dim: cycles.len(), boundary_rank, reducer, boundary_gens: d_in.len() }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class coordinates and the combination of incoming columns bounding the rest;
    /// `None` if `v` is not in the span of boundaries and representatives.
    pub fn reduce(&self, v: SparseVec, field: Field) -> Option<(Vector, SparseVec)> {
        let (res, combo) = self.reducer.reduce(v);
        if !res.is_empty() {
            return None;
        }
        let mut coords = vec![field.zero(); self.reps.len()];
        let mut bvec: SparseVec = Vec::new();
        for (k, c) in combo {
            if k >= self.boundary_gens {
                coords[k - self.boundary_gens] = c;
            } else {
                bvec.push((k, c));
            }
        }
        Some((coords, bvec))
    }
}

/// `HH^{p,q}` with a fixed basis of class representatives.
pub struct HHGroup {
    pub p: usize,
    pub q: i64,
    space: Arc<CochainSpace>,
    prev: Option<Arc<CochainSpace>>,
    reps: Vec<Cochain>,
    data: SubquotientData,
}

/// Coordinates of a cocycle in the class basis, with a bounding cochain for the difference.
#[derive(Clone, Debug)]
pub struct ClassReduction {
    pub coords: Vector,
    /// `b` with `z − Σ coords_k rep_k = d b` (absent in arity 0).
    pub bounding: Option<Cochain>,
}

impl HHGroup {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    pub fn reps(&self) -> &[Cochain] {
        &self.reps
    }
    pub fn cocycle_dim(&self) -> usize {
        self.data.cocycle_dim
    }
    pub fn boundary_dim(&self) -> usize {
        self.data.boundary_rank
    }
    pub fn cochain_dim(&self) -> usize {
        self.space.dim()
    }
    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    /// Expresses the class of a cocycle `z` in the representative basis.
    pub fn reduce(&self, z: &Cochain) -> Result<ClassReduction> {
        if z.bidegree() != (self.p, self.q) {
            return Err(Error::InvalidArgument(format!(
                "cochain of bidegree {:?} reduced in HH^({}, {})",
                z.bidegree(),
                self.p,
                self.q
            )));
        }
        let dz = hochschild_differential(z)?;
        if let Some(w) = dz.witness() {
            return Err(Error::NotCocycle { witness: w });
        }
        let v = self.space.to_sparse(z)?;
        let (coords, bvec) = self
            .data
            .reduce(v, z.field())
            .ok_or_else(|| Error::NotCocycle { witness: "cocycle outside the span of cocycles".into() })?;
        let bounding = self.prev.as_ref().map(|sp| sp.from_sparse(&bvec));
        Ok(ClassReduction { coords, bounding })
    }

    /// `Σ coords_k rep_k`.
    pub fn class_cochain(&self, coords: &[Scalar]) -> Cochain {
        let mut out = self.space.zero();
        for (c, r) in coords.iter().zip(&self.reps) {
            if !c.is_zero() {
                out = out.add_scaled(c, r);
            }
        }
        out
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_trivial(&self, z: &Cochain) -> Result<bool> {
        Ok(self.reduce(z)?.coords.iter().all(Scalar::is_zero))
    }
}

/// Hochschild cochain complex `HC^{*,*}(Λ, Λ)` with cached spaces,
/// differentials and cohomology groups.
pub struct HochschildComplex {
    alg: Arc<GradedAlgebra>,
    spaces: Mutex<HashMap<(usize, i64), Arc<CochainSpace>>>,
    diffs: Mutex<HashMap<(usize, i64), Arc<Vec<SparseVec>>>>,
    groups: Mutex<HashMap<(usize, i64), Arc<HHGroup>>>,
}

impl HochschildComplex {
    pub fn new(alg: Arc<GradedAlgebra>) -> HochschildComplex {
        HochschildComplex {
            alg,
            spaces: Mutex::new(HashMap::new()),
            diffs: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn space(&self, p: usize, q: i64) -> Result<Arc<CochainSpace>> {
        if let Some(s) = self.spaces.lock().unwrap().get(&(p, q)) {
            return Ok(s.clone());
        }
        let s = Arc::new(CochainSpace::new(&self.alg, p, q)?);
        self.spaces.lock().unwrap().insert((p, q), s.clone());
        Ok(s)
    }

    /// Columns of `d: HC^{p,q} → HC^{p+1,q}`.
    pub fn differential(&self, p: usize, q: i64) -> Result<Arc<Vec<SparseVec>>> {
        if let Some(d) = self.diffs.lock().unwrap().get(&(p, q)) {
            return Ok(d.clone());
        }
        let d = Arc::new(differential_columns(&*self.space(p, q)?, &*self.space(p + 1, q)?)?);
        self.diffs.lock().unwrap().insert((p, q), d.clone());
        Ok(d)
    }

    pub fn hh(&self, p: usize, q: i64) -> Result<Arc<HHGroup>> {
        if let Some(g) = self.groups.lock().unwrap().get(&(p, q)) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.compute(p, q)?);
        self.groups.lock().unwrap().insert((p, q), g.clone());
        Ok(g)
    }

    pub fn hh_dim(&self, p: usize, q: i64) -> Result<usize> {
        Ok(self.hh(p, q)?.dim())
    }

    fn compute(&self, p: usize, q: i64) -> Result<HHGroup> {
        let space = self.space(p, q)?;
        let d = self.differential(p, q)?;
        let bgens = if p > 0 { self.differential(p - 1, q)?.as_ref().clone() } else { Vec::new() };
        let prev = if p > 0 { Some(self.space(p - 1, q)?) } else { None };
        let data = SubquotientData::new(self.field(), &d, &bgens);
        let reps = data.reps.iter().map(|v| space.from_sparse(v)).collect();
        Ok(HHGroup { p, q, space, prev, reps, data })
    }

    pub fn reduce_to_class(&self, z: &Cochain) -> Result<ClassReduction> {
        self.hh(z.arity(), z.degree())?.reduce(z)
    }
}

/// The map `[μ, −]: HH^{s,t} → HH^{s+d+1, t−d}` as a matrix in the class bases.
pub fn bracket_map(cx: &HochschildComplex, mu: &Cochain, s: usize, t: i64) -> Result<Matrix> {
    let src = cx.hh(s, t)?;
    let (pm, qm) = mu.bidegree();
    let dst = cx.hh(s + pm - 1, t + qm)?;
    let mut m = Matrix::zeros(cx.field(), dst.dim(), src.dim());
    for (j, h) in src.reps().iter().enumerate() {
        let b = bracket(mu, h)?;
        let red = dst.reduce(&b)?;
        for (i, c) in red.coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// One node of a Massey complex with its incoming and outgoing maps.
#[derive(Clone, Debug)]
pub struct MasseyNode {
    pub p: usize,
    pub q: i64,
    pub hh_dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub cohomology_dim: usize,
}

/// The complex `(HH^{*,*}, [μ, −])` along one diagonal, for `μ ∈ HH^{d+2,−d}`.
///
/// `start` is the first bidegree; nodes follow `(p, q) ↦ (p+d+1, q−d)` for `len` steps.
/// The maps are checked to compose to zero.
pub fn massey_complex(cx: &HochschildComplex, mu: &Cochain, start: (usize, i64), len: usize) -> Result<Vec<MasseyNode>> {
    let (pm, qm) = mu.bidegree();
    if pm < 2 || qm != 2 - pm as i64 {
        return Err(Error::InvalidArgument(format!("class of bidegree {:?} is not of the form (d+2, -d)", mu.bidegree())));
    }
    let sq = super::ops::square(mu)?;
    if !cx.hh(sq.arity(), sq.degree())?.is_trivial(&sq)? {
        return Err(Error::NotMaurerCartan);
    }
    let step = |(p, q): (usize, i64)| (p + pm - 1, q + qm);
    let mut coords = vec![start];
    for _ in 0..len {
        coords.push(step(*coords.last().unwrap()));
    }
    let mut maps = Vec::new();
    for w in coords.windows(2) {
        maps.push(bracket_map(cx, mu, w[0].0, w[0].1)?);
    }
    for w in maps.windows(2) {
        if !w[1].mul(&w[0])?.is_zero() {
            return Err(Error::Precondition("bracket with the class does not square to zero".into()));
        }
    }
    let mut nodes = Vec::new();
    for (k, &(p, q)) in coords.iter().enumerate().take(len) {
        let dim = cx.hh_dim(p, q)?;
        let rank_out = maps[k].rank();
        let rank_in = if k == 0 {
            if p + 1 >= pm {
                let pre = (p + 1 - pm, q - qm);
                bracket_map(cx, mu, pre.0, pre.1)?.rank()
            } else {
                0
            }
        } else {
            maps[k - 1].rank()
        };
        nodes.push(MasseyNode { p, q, hh_dim: dim, rank_out, rank_in, cohomology_dim: dim - rank_out - rank_in });
    }
    Ok(nodes)
}
