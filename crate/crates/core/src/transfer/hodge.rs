use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dga::DGAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, sparse_from_dense, zero_vector, Accum, Echelon, Field, Insert, Matrix, Scalar, SparseVec};
use crate::galg::{GradedAlgebra, Product};

/// How complements are chosen when splitting each degree into boundaries, harmonic part
/// and a complement of the cocycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complements {
    /// First available basis vectors; deterministic.
    Pivot,
    /// Random vectors from a seeded generator.
    Random(u64),
}

/// Deformation-retract data `(i, p, h)` from a dg algebra onto its cohomology:
/// `p i = id`, `id − i p = d h + h d`, `h i = 0`, `p h = 0`, `h h = 0`.
///
/// Maps are stored column by column; `None` marks degrees where they are not determined
/// (outside the known window, or outside the requested cohomology range for `p`).
#[derive(Clone, Debug)]
pub struct HodgeData {
    field: Field,
    range: (i64, i64),
    i_cols: Vec<SparseVec>,
    p_cols: Vec<Option<SparseVec>>,
    h_cols: Vec<Option<SparseVec>>,
}

struct Split {
    /// `C_{k}` basis vectors in local coordinates, with their images `d c` in degree `k+1`.
    complement: Vec<Vec<Scalar>>,
    harmonic: Vec<Vec<Scalar>>,
    /// local basis index ↦ (boundary coordinates, harmonic coordinates)
    coords: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

fn candidates(field: Field, n: usize, basis: &[Vec<Scalar>], choice: &mut Option<ChaCha8Rng>) -> Vec<Vec<Scalar>> {
    match choice {
        None => basis.to_vec(),
        Some(rng) => {
            let mut out = Vec::new();
            for _ in 0..basis.len() + 4 {
                let mut v = zero_vector(field, n);
                for b in basis {
                    let c = field.from_i64(rng.gen_range(-3..=3));
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += &(&c * y);
                    }
                }
                out.push(v);
            }
            // fall back to the plain basis so the span is always reached
            out.extend(basis.iter().cloned());
            out
        }
    }
}

fn extend_basis(field: Field, start: &[Vec<Scalar>], cands: Vec<Vec<Scalar>>, want: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(field, false);
    for v in start {
        ech.insert(sparse_from_dense(v));
    }
    let mut out = Vec::new();
    for v in cands {
        if ech.rank() == want {
            break;
        }
        if let Insert::New(_) = ech.insert(sparse_from_dense(&v)) {
            out.push(v);
        }
    }
    out
}

impl HodgeData {
    /// Splits every degree of `dg` where the cohomology is known.
    pub fn new(dg: &DGAlgebra, choice: Complements) -> Result<HodgeData> {
        let alg = dg.algebra();
        let field = alg.field();
        let n = alg.dim();
        let mut rng = match choice {
            Complements::Pivot => None,
            Complements::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let (lo, hi) = match alg.window() {
            Some(w) => w,
            None => (alg.min_degree(), alg.max_degree()),
        };
        let range = dg.known_range();
        let local: BTreeMap<i64, Vec<usize>> = (lo..=hi).map(|k| (k, alg.basis_in_degree(k))).collect();
        let unit = alg.unit();
        let mut prev_c: Option<(Vec<Vec<Scalar>>, Vec<SparseVec>)> = None;
        let mut splits: BTreeMap<i64, Split> = BTreeMap::new();
        let mut complements: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
        for k in lo..=hi {
            let idx = &local[&k];
            let nk = idx.len();
            let next = local.get(&(k + 1)).cloned().unwrap_or_default();
            let known_d = alg.window().is_none() || k < hi;
            // boundaries in degree k, as images of the previous complement
            let boundaries: Option<Vec<Vec<Scalar>>> = if alg.window().is_some() && k == lo {
                None
            } else {
                Some(match &prev_c {
                    Some((_, images)) => images
                        .iter()
                        .map(|v| {
                            let mut out = zero_vector(field, nk);
                            for (g, c) in v {
                                let pos = idx.iter().position(|x| x == g).expect("homogeneous differential");
                                out[pos] = c.clone();
                            }
                            out
                        })
                        .collect(),
                    None => Vec::new(),
                })
            };
            if !known_d {
                break;
            }
            let mut cols = Vec::with_capacity(nk);
            let mut images = Vec::with_capacity(nk);
            for &j in idx {
                let dj = dg.d_basis(j)?;
                let mut col = zero_vector(field, next.len());
                for (g, c) in dj {
                    let pos = next.iter().position(|x| x == g).expect("homogeneous differential");
                    col[pos] = c.clone();
                }
                cols.push(col);
                images.push(dj.clone());
            }
            let dk = Matrix::from_columns(field, next.len(), &cols);
            let (_, kernel) = dk.rank_and_kernel();
            let units: Vec<Vec<Scalar>> = (0..nk)
                .map(|r| {
                    let mut v = zero_vector(field, nk);
                    v[r] = field.one();
                    v
                })
                .collect();
            let c_basis = extend_basis(field, &kernel, candidates(field, nk, &units, &mut rng), nk);
            let c_images: Vec<SparseVec> = c_basis
                .iter()
                .map(|v| {
                    let mut acc = Vec::new();
                    for (r, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            acc = axpy(&acc, c, &images[r]);
                        }
                    }
                    acc
                })
                .collect();
            if let Some(b) = boundaries {
                let mut cands = Vec::new();
                if k == 0 {
                    cands.push(idx.iter().map(|&j| unit[j].clone()).collect());
                }
                cands.extend(candidates(field, nk, &kernel, &mut rng));
                let harmonic = extend_basis(field, &b, cands, kernel.len());
                let mut m_cols = b.clone();
                m_cols.extend(harmonic.iter().cloned());
                m_cols.extend(c_basis.iter().cloned());
                let m = Matrix::from_columns(field, nk, &m_cols);
                let inv = m.inverse().ok_or_else(|| Error::Precondition("degenerate splitting".into()))?;
                let (nb, nh) = (b.len(), harmonic.len());
                let coords = (0..nk)
                    .map(|r| {
                        let col = inv.column(r);
                        (col[..nb].to_vec(), col[nb..nb + nh].to_vec())
                    })
                    .collect();
                splits.insert(k, Split { complement: Vec::new(), harmonic, coords });
            }
            complements.insert(k, c_basis.clone());
            prev_c = Some((c_basis, c_images));
        }
        for (k, s) in splits.iter_mut() {
            s.complement = complements.get(&(k - 1)).cloned().unwrap_or_default();
        }
        let mut i_cols = Vec::new();
        let mut h_offset = BTreeMap::new();
        for (k, s) in &splits {
            h_offset.insert(*k, i_cols.len());
            let idx = &local[k];
            for v in &s.harmonic {
                i_cols.push(to_global(idx, v));
            }
        }
        let mut p_cols = vec![None; n];
        let mut h_cols = vec![None; n];
        for (k, s) in &splits {
            let idx = &local[k];
            let prev = local.get(&(k - 1)).cloned().unwrap_or_default();
            for (r, &j) in idx.iter().enumerate() {
                let (beta, eta) = &s.coords[r];
                let off = h_offset[k];
                p_cols[j] = Some(
                    eta.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (off + t, c.clone())).collect(),
                );
                let mut hv = zero_vector(field, prev.len());
                for (b, c) in beta.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in hv.iter_mut().zip(&s.complement[b]) {
                        *x += &(c * y);
                    }
                }
                h_cols[j] = Some(to_global(&prev, &hv));
            }
        }
        debug_assert!(splits.keys().next().is_none_or(|k| *k >= range.0));
        Ok(HodgeData { field, range, i_cols, p_cols, h_cols })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Degrees where the splitting is determined.
    pub fn range(&self) -> (i64, i64) {
        self.range
    }

    pub fn cohomology_dim(&self) -> usize {
        self.i_cols.len()
    }

    /// `i(h_r)` in the dg algebra.
    pub fn include(&self, r: usize) -> &SparseVec {
        &self.i_cols[r]
    }

    fn apply(cols: &[Option<SparseVec>], v: &SparseVec, what: &str) -> Result<SparseVec> {
        let mut acc = Accum::new();
        for (j, c) in v {
            let col = cols[*j]
                .as_ref()
                .ok_or_else(|| Error::WindowOverflow(format!("{what} is not determined on basis element {j}")))?;
            for (k, x) in col {
                acc.add(*k, c * x);
            }
        }
        Ok(acc.finish())
    }

    pub fn project(&self, v: &SparseVec) -> Result<SparseVec> {
        HodgeData::apply(&self.p_cols, v, "the projection")
    }

    pub fn homotopy(&self, v: &SparseVec) -> Result<SparseVec> {
        HodgeData::apply(&self.h_cols, v, "the homotopy")
    }

    pub fn include_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (r, c) in v {
            for (k, x) in &self.i_cols[*r] {
                acc.add(*k, c * x);
            }
        }
        acc.finish()
    }

    /// Failed identities among `p i = id`, `id − ip = dh + hd`, `hi = 0`, `ph = 0`, `hh = 0`,
    /// checked wherever all maps involved are determined.
    pub fn violations(&self, dg: &DGAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        let one = self.field.one();
        for r in 0..self.i_cols.len() {
            match self.project(&self.i_cols[r]) {
                Ok(v) if v == vec![(r, one.clone())] => {}
                _ => out.push(format!("p i differs from the identity on class {r}")),
            }
            if !matches!(self.homotopy(&self.i_cols[r]), Ok(v) if v.is_empty()) {
                out.push(format!("h i is nonzero on class {r}"));
            }
        }
        for j in 0..self.h_cols.len() {
            let Some(hj) = &self.h_cols[j] else { continue };
            if let Ok(v) = self.project(hj) {
                if !v.is_empty() {
                    out.push(format!("p h is nonzero on basis element {j}"));
                }
            }
            if let Ok(v) = self.homotopy(hj) {
                if !v.is_empty() {
                    out.push(format!("h h is nonzero on basis element {j}"));
                }
            }
            let ej = vec![(j, one.clone())];
            let (Ok(pj), Ok(dh), Ok(dj)) = (self.project(&ej), dg.apply_d(hj), dg.d_basis(j)) else { continue };
            let Ok(hd) = self.homotopy(dj) else { continue };
            let lhs = axpy(&ej, &-one.clone(), &self.include_vec(&pj));
            let rhs = axpy(&dh, &one, &hd);
            if lhs != rhs {
                out.push(format!("id − ip ≠ dh + hd on basis element {j}"));
            }
        }
        out
    }
}

fn to_global(idx: &[usize], v: &[Scalar]) -> SparseVec {
    let mut out: SparseVec = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (idx[r], c.clone())).collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// Cohomology of `dg` in degrees `range` (by default all known degrees) with its induced
/// product, and the splitting used to compute it.
pub fn cohomology_algebra(
    dg: &DGAlgebra,
    range: Option<(i64, i64)>,
    choice: Complements,
) -> Result<(Arc<GradedAlgebra>, HodgeData)> {
    let alg = dg.algebra();
    let known = dg.known_range();
    let (a, b) = range.unwrap_or(known);
    if a < known.0 || b > known.1 {
        return Err(Error::InconclusiveWindow(format!(
            "cohomology in degrees [{a}, {b}] needs the window to cover [{}, {}]",
            a - 1,
            b + 1
        )));
    }
    if !(a..=b).contains(&0) {
        return Err(Error::InvalidArgument("the cohomology range must contain degree 0".into()));
    }
    let mut hd = HodgeData::new(dg, choice)?;
    if let Some(v) = hd.violations(dg).first() {
        return Err(Error::Precondition(format!("splitting failed: {v}")));
    }
    // keep the classes in [a, b]
    let keep: Vec<usize> = (0..hd.i_cols.len())
        .filter(|&r| (a..=b).contains(&alg.degree(hd.i_cols[r][0].0)))
        .collect();
    let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    hd.i_cols = keep.iter().map(|&r| hd.i_cols[r].clone()).collect();
    for j in 0..alg.dim() {
        let deg = alg.degree(j);
        if !(a..=b).contains(&deg) {
            hd.p_cols[j] = None;
        } else if let Some(col) = &mut hd.p_cols[j] {
            *col = col.iter().map(|(r, c)| (renumber[r], c.clone())).collect();
        }
    }
    let degrees: Vec<i64> = hd.i_cols.iter().map(|v| alg.degree(v[0].0)).collect();
    let mut per: BTreeMap<i64, usize> = BTreeMap::new();
    for d in &degrees {
        *per.entry(*d).or_default() += 1;
    }
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    let basis: Vec<(String, i64)> = degrees
        .iter()
        .map(|&d| {
            let s = seen.entry(d).or_default();
            *s += 1;
            let name = if per[&d] == 1 { format!("h{d}") } else { format!("h{d}_{}", *s) };
            (name.replace('-', "m"), d)
        })
        .collect();
    let full = alg.window().is_none() && (a, b) == (alg.min_degree(), alg.max_degree());
    let window = (!full).then_some((a, b));
    let mut products = Vec::new();
    for x in 0..degrees.len() {
        for y in 0..degrees.len() {
            if !(a..=b).contains(&(degrees[x] + degrees[y])) {
                continue;
            }
            let prod = mul_sparse(alg, &hd.i_cols[x], &hd.i_cols[y])?;
            for (k, c) in hd.project(&prod)? {
                products.push(Product { i: x, j: y, k, coeff: c });
            }
        }
    }
    let unit_a = sparse_from_dense(alg.unit());
    let mut unit = zero_vector(alg.field(), degrees.len());
    for (k, c) in hd.project(&unit_a)? {
        unit[k] = c;
    }
    let h = GradedAlgebra::new(alg.field(), basis, &products, unit, window)?;
    Ok((Arc::new(h), hd))
}

pub(crate) fn mul_sparse(alg: &GradedAlgebra, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
    let mut acc = Accum::new();
    for (i, x) in a {
        for (j, y) in b {
            for (k, z) in alg.mul_basis(*i, *j)? {
                acc.add(*k, x * &(y * z));
            }
        }
    }
    Ok(acc.finish())
}
