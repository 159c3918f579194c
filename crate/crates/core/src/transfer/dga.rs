use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, Accum, Field, Matrix, SparseVec};
use crate::galg::GradedAlgebra;

/// A dg algebra: a graded algebra with a degree +1 differential satisfying `d² = 0` and
/// `d(ab) = d(a)b + (−1)^{|a|} a d(b)`.
///
/// On a windowed algebra `[lo, hi]` the differential is only known below `hi`, so cohomology
/// is known on `[lo + 1, hi − 1]`.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    alg: Arc<GradedAlgebra>,
    diff: Vec<Option<SparseVec>>,
}

impl DGAlgebra {
    /// `diff` is `dim × dim`, column `j` holding `d(e_j)`; columns in the top window degree are ignored.
    pub fn new(alg: Arc<GradedAlgebra>, diff: &Matrix) -> Result<DGAlgebra> {
        let n = alg.dim();
        if diff.rows() != n || diff.cols() != n {
            return Err(Error::Dimension(format!("differential must be {n}×{n}")));
        }
        if alg.laurent().is_some() {
            return Err(Error::InvalidArgument("dg algebras over Laurent bookkeeping are not supported".into()));
        }
        let top = alg.window().map(|w| w.1);
        let cols = (0..n)
            .map(|j| {
                (top != Some(alg.degree(j))).then(|| {
                    diff.column(j)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect::<SparseVec>()
                })
            })
            .collect();
        let dg = DGAlgebra { alg, diff: cols };
        if let Some(v) = dg.violations().first() {
            return Err(Error::InvalidAlgebra(v.clone()));
        }
        Ok(dg)
    }

    /// Zero differential.
    pub fn formal(alg: Arc<GradedAlgebra>) -> Result<DGAlgebra> {
        let n = alg.dim();
        DGAlgebra::new(alg.clone(), &Matrix::zeros(alg.field(), n, n))
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    /// `d(e_j)`, or a window error in the top degree.
    pub fn d_basis(&self, j: usize) -> Result<&SparseVec> {
        self.diff[j].as_ref().ok_or_else(|| {
            Error::WindowOverflow(format!("the differential of {} leaves the window", self.alg.name(j)))
        })
    }

    pub fn apply_d(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (j, c) in v {
            out = axpy(&out, c, self.d_basis(*j)?);
        }
        Ok(out)
    }

    /// Degrees where cohomology is determined.
    pub fn known_range(&self) -> (i64, i64) {
        match self.alg.window() {
            Some((lo, hi)) => (lo + 1, hi - 1),
            None => (self.alg.min_degree(), self.alg.max_degree()),
        }
    }

    fn mul_sparse(&self, a: &SparseVec, b: &SparseVec) -> Option<SparseVec> {
        let mut acc = Accum::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, z) in self.alg.mul_basis(*i, *j).ok()? {
                    acc.add(*k, x * &(y * z));
                }
            }
        }
        Some(acc.finish())
    }

    /// Failed differential axioms, checked wherever every term is defined. The algebra itself
    /// is checked separately by [`crate::galg::validate_algebra`].
    pub fn violations(&self) -> Vec<String> {
        let alg = &self.alg;
        let mut out = Vec::new();
        let n = alg.dim();
        for j in 0..n {
            let Some(dj) = &self.diff[j] else { continue };
            if let Some((k, _)) = dj.iter().find(|(k, _)| alg.degree(*k) != alg.degree(j) + 1) {
                out.push(format!("d({}) has a component on {} of the wrong degree", alg.name(j), alg.name(*k)));
            }
            if let Ok(dd) = self.apply_d(dj) {
                if !dd.is_empty() {
                    out.push(format!("d∘d is nonzero on {}", alg.name(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let Ok(ab) = alg.mul_basis(i, j) else { continue };
                let (Ok(lhs), Ok(di), Ok(dj)) = (self.apply_d(ab), self.d_basis(i), self.d_basis(j)) else {
                    continue;
                };
                let ei = vec![(i, self.field().one())];
                let ej = vec![(j, self.field().one())];
                let (Some(t1), Some(t2)) = (self.mul_sparse(di, &ej), self.mul_sparse(&ei, dj)) else { continue };
                let sign = self.field().one().signed(alg.degree(i).rem_euclid(2) == 1);
                let rhs = axpy(&t1, &sign, &t2);
                if lhs != rhs {
                    out.push(format!("Leibniz rule fails on {}*{}", alg.name(i), alg.name(j)));
                }
            }
        }
        out
    }
}
