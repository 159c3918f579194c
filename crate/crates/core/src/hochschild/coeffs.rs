//! Hochschild complex `C^p(Λ; M) = Hom(Λ^{⊗p}, M)` of an ungraded algebra with
//! coefficients in a bimodule, with the standard differential
//! `(δf)(a_1,…,a_{p+1}) = a_1 f(a_2,…) + Σ_i (−1)^i f(…, a_i a_{i+1}, …) + (−1)^{p+1} f(…, a_p) a_{p+1}`.
//!
//! Its cohomology is `Ext^p_{Λ^e}(Λ, M)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::cohomology::SubquotientData;
use crate::error::{Error, Result};
use crate::exactlin::{Accum, Field, Scalar, SparseVec, Vector};
use crate::galg::{Bimodule, GradedAlgebra};

/// Cochains are coordinate vectors: index `tuple · dim M + m`, tuples in base-`n` order.
pub struct BimoduleHochschild {
    module: Bimodule,
    groups: Mutex<HashMap<usize, Arc<SubquotientData>>>,
    diffs: Mutex<HashMap<usize, Arc<Vec<SparseVec>>>>,
}

fn odd(n: usize) -> bool {
    n % 2 == 1
}

impl BimoduleHochschild {
    pub fn new(module: Bimodule) -> Result<BimoduleHochschild> {
        if module.algebra().degrees().iter().any(|&d| d != 0) {
            return Err(Error::InvalidArgument("coefficient complex needs an algebra in degree 0".into()));
        }
        Ok(BimoduleHochschild { module, groups: Mutex::new(HashMap::new()), diffs: Mutex::new(HashMap::new()) })
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.module.algebra()
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn cochain_dim(&self, p: usize) -> usize {
        self.algebra().dim().pow(p as u32) * self.module.dim()
    }

    pub fn tuple_index(&self, t: &[usize]) -> usize {
        let n = self.algebra().dim();
        t.iter().fold(0, |a, &x| a * n + x)
    }

    pub fn tuple(&self, mut idx: usize, p: usize) -> Vec<usize> {
        let n = self.algebra().dim();
        let mut t = vec![0; p];
        for j in (0..p).rev() {
            t[j] = idx % n;
            idx /= n;
        }
        t
    }

    /// Columns of `δ: C^p → C^{p+1}`.
    pub fn differential(&self, p: usize) -> Result<Arc<Vec<SparseVec>>> {
        if let Some(d) = self.diffs.lock().unwrap().get(&p) {
            return Ok(d.clone());
        }
        let alg = self.algebra().clone();
        let n = alg.dim();
        let dm = self.module.dim();
        let rows: Vec<Result<Vec<(usize, usize, Scalar)>>> = (0..n.pow(p as u32 + 1))
            .into_par_iter()
            .map(|ti| {
                let x = self.tuple(ti, p + 1);
                let mut trip = Vec::new();
                let src_first = self.tuple_index(&x[1..]);
                let l = self.module.left(x[0]);
                let src_last = self.tuple_index(&x[..p]);
                let r = self.module.right(x[p]);
                for m in 0..dm {
                    for row in 0..dm {
                        let a = l.get(row, m);
                        if !a.is_zero() {
                            trip.push((ti * dm + row, src_first * dm + m, a.clone()));
                        }
                        let b = r.get(row, m);
                        if !b.is_zero() {
                            trip.push((ti * dm + row, src_last * dm + m, b.clone().signed(odd(p + 1))));
                        }
                    }
                }
                let mut t2 = Vec::with_capacity(p);
                for i in 1..=p {
                    for (k, c) in alg.mul_basis(x[i - 1], x[i])? {
                        t2.clear();
                        t2.extend_from_slice(&x[..i - 1]);
                        t2.push(*k);
                        t2.extend_from_slice(&x[i + 1..]);
                        let src = self.tuple_index(&t2);
                        for m in 0..dm {
                            trip.push((ti * dm + m, src * dm + m, c.clone().signed(odd(i))));
                        }
                    }
                }
                Ok(trip)
            })
            .collect();
        let mut cols: Vec<Accum> = (0..self.cochain_dim(p)).map(|_| Accum::new()).collect();
        for r in rows {
            for (row, col, v) in r? {
                cols[col].add(row, v);
            }
        }
        let d = Arc::new(cols.into_iter().map(Accum::finish).collect::<Vec<_>>());
        self.diffs.lock().unwrap().insert(p, d.clone());
        Ok(d)
    }

    pub fn ext(&self, p: usize) -> Result<Arc<SubquotientData>> {
        if let Some(g) = self.groups.lock().unwrap().get(&p) {
            return Ok(g.clone());
        }
        let d = self.differential(p)?;
        let din = if p > 0 { self.differential(p - 1)?.as_ref().clone() } else { Vec::new() };
        let g = Arc::new(SubquotientData::new(self.field(), &d, &din));
        self.groups.lock().unwrap().insert(p, g.clone());
        Ok(g)
    }

    pub fn ext_dim(&self, p: usize) -> Result<usize> {
        Ok(self.ext(p)?.dim())
    }

    /// `δ f` of a coordinate vector.
    pub fn apply_differential(&self, p: usize, f: &SparseVec) -> Result<SparseVec> {
        let d = self.differential(p)?;
        let mut acc = Accum::new();
        for (j, c) in f {
            for (i, v) in &d[*j] {
                acc.add(*i, c * v);
            }
        }
        Ok(acc.finish())
    }

    /// Class coordinates of a cocycle and a bounding cochain for the remainder.
    pub fn reduce(&self, p: usize, f: &SparseVec) -> Result<(Vector, SparseVec)> {
        if let Some((i, _)) = self.apply_differential(p, f)?.first() {
            return Err(Error::NotCocycle { witness: format!("coordinate {i} of the differential") });
        }
        self.ext(p)?
            .reduce(f.clone(), self.field())
            .ok_or_else(|| Error::NotCocycle { witness: "outside the cocycle span".into() })
    }
}
