//! Sparse vectors and an incremental row-echelon basis.
//!
//! Every rank, kernel, solve and subquotient computation in the crate goes
//! through [`Echelon`]. Pivots are the first nonzero coordinate of each
//! reduced vector, and vectors are processed in insertion order, so the bases
//! it returns are reproducible.

use std::collections::HashMap;

use super::scalar::{Field, Scalar};

/// Sorted `(index, coefficient)` pairs with no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a + s·b`.
pub fn axpy(a: &SparseVec, s: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let c = &a[i].1 + &(s * &b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, s * c)).collect()
}

/// Collects `(index, coefficient)` contributions (any order, repeats allowed).
#[derive(Default)]
pub struct Accum {
    map: HashMap<usize, Scalar>,
}

impl Accum {
    pub fn new() -> Self {
        Accum { map: HashMap::new() }
    }

    pub fn add(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(e) => *e += &c,
            None => {
                self.map.insert(i, c);
            }
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut v: SparseVec = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }
}

struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row-echelon basis of a growing set of vectors.
///
/// With tracking enabled, each stored row remembers which combination of the
/// inserted vectors produced it, which is what kernels and solves need.
pub struct Echelon {
    field: Field,
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Outcome of inserting a vector.
pub enum Insert {
    /// The vector was independent; its reduced form became row `usize`.
    New(usize),
    /// The vector was dependent. With tracking, the combination of inserted
    /// vectors (including the new one) that vanishes.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(field: Field, track: bool) -> Self {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_tracked(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut idx = 0;
        while idx < v.len() {
            let col = v[idx].0;
            if let Some(&r) = self.pivots.get(&col) {
                let s = -v[idx].1.clone();
                let row = &self.rows[r];
                v = axpy(&v, &s, &row.vec);
                if self.track {
                    combo = axpy(&combo, &s, &row.combo);
                }
            } else {
                idx += 1;
            }
        }
        (v, combo)
    }

    /// Reduces `v` against the basis. Returns the residual and, with tracking,
    /// the coefficients `c` (over inserted vectors) with `v = residual + Σ c_k w_k`.
    pub fn reduce(&self, v: SparseVec) -> (SparseVec, SparseVec) {
        let (res, combo) = self.reduce_tracked(v, Vec::new());
        let neg = scale(&combo, &self.field.from_i64(-1));
        (res, neg)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_tracked(v.clone(), Vec::new()).0.is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let k = self.inserted;
        self.inserted += 1;
        let start = if self.track { vec![(k, self.field.one())] } else { Vec::new() };
        let (res, combo) = self.reduce_tracked(v, start);
        if res.is_empty() {
            return Insert::Dependent(combo);
        }
        let inv = res[0].1.inv().expect("nonzero pivot");
        let vec = scale(&res, &inv);
        let combo = if self.track { scale(&combo, &inv) } else { combo };
        let r = self.rows.len();
        self.pivots.insert(vec[0].0, r);
        self.rows.push(Row { vec, combo });
        Insert::New(r)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.rows[r].vec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let q = Field::Rational;
        let a = vec![(0, q.one()), (3, q.from_i64(2))];
        let b = vec![(3, q.one()), (5, q.one())];
        let c = axpy(&a, &q.from_i64(-2), &b);
        assert_eq!(c, vec![(0, q.one()), (5, q.from_i64(-2))]);
    }

    #[test]
    fn reduce_reports_combination() {
        let q = Field::Rational;
        let mut e = Echelon::new(q, true);
        e.insert(vec![(0, q.one()), (1, q.one())]);
        e.insert(vec![(1, q.one())]);
        let (res, c) = e.reduce(vec![(0, q.from_i64(2)), (1, q.from_i64(5))]);
        assert!(res.is_empty());
        assert_eq!(c, vec![(0, q.from_i64(2)), (1, q.from_i64(3))]);
    }
}
