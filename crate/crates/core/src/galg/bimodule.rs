use std::sync::Arc;

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, Vector};

/// A finite-dimensional bimodule over an ungraded algebra, given by the
/// matrices of the left and right actions of each basis element.
///
/// `right[a]` is the matrix of `m ↦ m·e_a`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    algebra: Arc<GradedAlgebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(algebra: Arc<GradedAlgebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let n = algebra.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::Dimension("one action matrix per basis element required".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Bimodule { algebra, dim, left, right })
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Bimodule {
        let f = algebra.field();
        let n = algebra.dim();
        Bimodule { algebra, dim: 0, left: vec![Matrix::zeros(f, 0, 0); n], right: vec![Matrix::zeros(f, 0, 0); n] }
    }

    /// The algebra acting on itself from both sides.
    pub fn diagonal(algebra: Arc<GradedAlgebra>) -> Result<Bimodule> {
        Bimodule::twisted(algebra.clone(), &Matrix::identity(algebra.field(), algebra.dim()))
    }

    /// `Λ` with the right action twisted by `σ`: `m · a = m σ(a)`.
    pub fn twisted(algebra: Arc<GradedAlgebra>, sigma: &Matrix) -> Result<Bimodule> {
        let n = algebra.dim();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for a in 0..n {
            let e = algebra.basis_vector(a);
            left.push(algebra.left_mult(&e)?);
            right.push(algebra.right_mult(&sigma.column(a))?);
        }
        Bimodule::new(algebra, n, left, right)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn left(&self, a: usize) -> &Matrix {
        &self.left[a]
    }
    pub fn right(&self, a: usize) -> &Matrix {
        &self.right[a]
    }

    /// Left action of an arbitrary algebra element.
    pub fn left_of(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left[i].scaled(c));
            }
        }
        m
    }

    pub fn right_of(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.right[i].scaled(c));
            }
        }
        m
    }

    /// `a · m · b` on coordinate vectors.
    pub fn act(&self, a: usize, m: &[Scalar], b: usize) -> Vector {
        let x = self.right[b].mul_vec(m).expect("dimension");
        self.left[a].mul_vec(&x).expect("dimension")
    }

    /// Names the first failing bimodule axiom, if any.
    pub fn validate(&self) -> Option<String> {
        let alg = &self.algebra;
        let f = self.field();
        let id = Matrix::identity(f, self.dim);
        if self.left_of(alg.unit()) != id {
            return Some("left action is not unital".into());
        }
        if self.right_of(alg.unit()) != id {
            return Some("right action is not unital".into());
        }
        let n = alg.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = match alg.mul(&alg.basis_vector(a), &alg.basis_vector(b)) {
                    Ok(v) => v,
                    Err(e) => return Some(e.to_string()),
                };
                if self.left[a].mul(&self.left[b]).unwrap() != self.left_of(&ab) {
                    return Some(format!("left action not associative at ({a}, {b})"));
                }
                if self.right[b].mul(&self.right[a]).unwrap() != self.right_of(&ab) {
                    return Some(format!("right action not associative at ({a}, {b})"));
                }
                if self.left[a].mul(&self.right[b]).unwrap() != self.right[b].mul(&self.left[a]).unwrap() {
                    return Some(format!("actions of e{a} and e{b} do not commute"));
                }
            }
        }
        None
    }

    /// Checks that a linear map `self → other` (a `other.dim × self.dim` matrix)
    /// commutes with both actions.
    pub fn is_hom_to(&self, other: &Bimodule, f: &Matrix) -> bool {
        if f.rows() != other.dim || f.cols() != self.dim {
            return false;
        }
        (0..self.algebra.dim()).all(|a| {
            f.mul(&self.left[a]).unwrap() == other.left[a].mul(f).unwrap()
                && f.mul(&self.right[a]).unwrap() == other.right[a].mul(f).unwrap()
        })
    }

    /// Basis of the space of bimodule maps `self → other`, as matrices.
    pub fn hom_space(&self, other: &Bimodule) -> Vec<Matrix> {
        let (m, n) = (self.dim, other.dim);
        let f = self.field();
        let vars = m * n;
        if vars == 0 {
            return Vec::new();
        }
        // unknown X (n×m), entry (r,c) is variable r*m + c; equations X L_a - L'_a X = 0 etc.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let na = self.algebra.dim();
        for a in 0..na {
            for (src, dst) in [(&self.left[a], &other.left[a]), (&self.right[a], &other.right[a])] {
                for r in 0..n {
                    for c in 0..m {
                        let mut eq = vec![f.zero(); vars];
                        for k in 0..m {
                            eq[r * m + k] += src.get(k, c);
                        }
                        for k in 0..n {
                            eq[k * m + c] -= dst.get(r, k);
                        }
                        if eq.iter().any(|x| !x.is_zero()) {
                            rows.push(eq);
                        }
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..vars)
                .map(|i| {
                    let mut v = vec![f.zero(); vars];
                    v[i] = f.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(f, rows).unwrap().rank_and_kernel().1
        };
        kernel
            .into_iter()
            .map(|v| {
                let mut x = Matrix::zeros(f, n, m);
                for r in 0..n {
                    for c in 0..m {
                        x.set(r, c, v[r * m + c].clone());
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::build::truncated_polynomial;
    use super::*;

    #[test]
    fn diagonal_and_twist_are_bimodules() {
        let f = Field::Rational;
        let a = Arc::new(truncated_polynomial(f, 2, 0));
        let d = Bimodule::diagonal(a.clone()).unwrap();
        assert!(d.validate().is_none());
        let sigma = Matrix::from_i64(f, &[&[1, 0], &[0, -1]]);
        let t = Bimodule::twisted(a, &sigma).unwrap();
        assert!(t.validate().is_none());
        // End of the diagonal bimodule is the centre: 2-dimensional
        assert_eq!(d.hom_space(&d).len(), 2);
    }
}
