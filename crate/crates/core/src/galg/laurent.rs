use std::sync::Arc;

use super::{degree0_part, Bimodule, GradedAlgebra, Product};
use crate::error::{Error, Result};
use crate::exactlin::{zero_vector, Field, Matrix, Scalar, Vector};

/// `Λ⟨ı⟩ / (ı x − σ(x) ı)` with `|ı| = −d`.
///
/// Never materialised degreewise: an element of degree `−kd` is a pair
/// `(x, k)` standing for `x ı^k`.
#[derive(Clone, Debug)]
pub struct TwistedLaurentAlgebra {
    base: Arc<GradedAlgebra>,
    sigma: Matrix,
    sigma_inv: Matrix,
    d: i64,
}

/// Bookkeeping carried by a finite truncation `Λ[ı]/(ı^{K+1})` of a twisted
/// Laurent algebra. Basis index of `e_i ı^a` is `a · base_dim + i`.
#[derive(Clone, Debug)]
pub struct LaurentInfo {
    pub base_dim: usize,
    pub d: i64,
    pub max_power: usize,
    pub sigma_powers: Vec<Matrix>,
}

impl LaurentInfo {
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx % self.base_dim, idx / self.base_dim)
    }
    pub fn join(&self, i: usize, power: usize) -> usize {
        power * self.base_dim + i
    }
}

fn is_automorphism(base: &GradedAlgebra, sigma: &Matrix) -> Result<bool> {
    let n = base.dim();
    if sigma.rows() != n || sigma.cols() != n || sigma.inverse().is_none() {
        return Ok(false);
    }
    if sigma.mul_vec(base.unit())? != *base.unit() {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = sigma.mul_vec(&base.mul(&base.basis_vector(i), &base.basis_vector(j))?)?;
            let rhs = base.mul(&sigma.column(i), &sigma.column(j))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl TwistedLaurentAlgebra {
    pub fn new(base: Arc<GradedAlgebra>, sigma: Matrix, d: i64) -> Result<TwistedLaurentAlgebra> {
        if d <= 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        if base.degrees().iter().any(|&q| q != 0) {
            return Err(Error::InvalidAlgebra("base algebra must be concentrated in degree 0".into()));
        }
        if !is_automorphism(&base, &sigma)? {
            return Err(Error::InvalidArgument("sigma is not an algebra automorphism".into()));
        }
        let sigma_inv = sigma.inverse().expect("checked invertible");
        Ok(TwistedLaurentAlgebra { base, sigma, sigma_inv, d })
    }

    pub fn base(&self) -> &Arc<GradedAlgebra> {
        &self.base
    }
    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn field(&self) -> Field {
        self.base.field()
    }

    /// Matrix of `σ^k` for any integer `k`.
    pub fn sigma_power(&self, k: i64) -> Matrix {
        let f = self.field();
        let step = if k >= 0 { &self.sigma } else { &self.sigma_inv };
        let mut m = Matrix::identity(f, self.base.dim());
        for _ in 0..k.unsigned_abs() {
            m = step.mul(&m).unwrap();
        }
        m
    }

    /// `(x ı^a)(y ı^b) = x σ^a(y) ı^{a+b}`.
    pub fn multiply(&self, x: &[Scalar], a: i64, y: &[Scalar], b: i64) -> Result<(Vector, i64)> {
        let sy = self.sigma_power(a).mul_vec(y)?;
        Ok((self.base.mul(x, &sy)?, a + b))
    }

    pub fn degree_of_power(&self, k: i64) -> i64 {
        -k * self.d
    }

    /// The graded algebra `Λ[ı]/(ı^{K+1})` carrying the Laurent bookkeeping.
    /// Products reaching `ı^{K+1}` are undefined rather than zero.
    pub fn truncated(&self, max_power: usize) -> Result<GradedAlgebra> {
        let n = self.base.dim();
        let f = self.field();
        let mut basis = Vec::new();
        for a in 0..=max_power {
            for i in 0..n {
                let name = match a {
                    0 => self.base.name(i).to_string(),
                    1 => format!("{}*i", self.base.name(i)),
                    _ => format!("{}*i^{a}", self.base.name(i)),
                };
                basis.push((name, -(a as i64) * self.d));
            }
        }
        let powers: Vec<Matrix> = (0..=max_power).map(|a| self.sigma_power(a as i64)).collect();
        let mut products = Vec::new();
        for a in 0..=max_power {
            for b in 0..=max_power - a {
                for i in 0..n {
                    for j in 0..n {
                        let sy = powers[a].column(j);
                        let prod = self.base.mul(&self.base.basis_vector(i), &sy)?;
                        for (k, c) in prod.into_iter().enumerate() {
                            if !c.is_zero() {
                                products.push(Product { i: a * n + i, j: b * n + j, k: (a + b) * n + k, coeff: c });
                            }
                        }
                    }
                }
            }
        }
        let mut unit = zero_vector(f, n * (max_power + 1));
        for (i, c) in self.base.unit().iter().enumerate() {
            unit[i] = c.clone();
        }
        let window = Some((-(max_power as i64) * self.d, 0));
        let alg = GradedAlgebra::new(f, basis, &products, unit, window)?;
        Ok(alg.with_laurent(LaurentInfo { base_dim: n, d: self.d, max_power, sigma_powers: powers }))
    }

    /// The degree-`q` component `Λ ı^k` (`q = −kd`) as a `Λ`-bimodule:
    /// `a · (y ı^k) · b = a y σ^k(b) ı^k`. Zero when `q ∉ dℤ`.
    pub fn component_as_bimodule(&self, q: i64) -> Result<Bimodule> {
        if q.rem_euclid(self.d) != 0 {
            return Ok(Bimodule::zero(self.base.clone()));
        }
        let k = -q / self.d;
        Bimodule::twisted(self.base.clone(), &self.sigma_power(k))
    }
}

/// The degree-`q` component of a graded algebra as a bimodule over its degree-0 part.
pub fn component_as_bimodule(a: &GradedAlgebra, q: i64) -> Result<Bimodule> {
    let zero = degree0_part(a)?;
    let lam = zero.algebra.clone();
    let comp = a.basis_in_degree(q);
    let m = comp.len();
    let f = a.field();
    let pos = |k: usize| comp.iter().position(|&x| x == k).expect("homogeneous product");
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &z in &zero.inclusion {
        let mut l = Matrix::zeros(f, m, m);
        let mut r = Matrix::zeros(f, m, m);
        for (c, &y) in comp.iter().enumerate() {
            for (k, v) in a.mul_basis(z, y)? {
                l.set(pos(*k), c, v.clone());
            }
            for (k, v) in a.mul_basis(y, z)? {
                r.set(pos(*k), c, v.clone());
            }
        }
        left.push(l);
        right.push(r);
    }
    Bimodule::new(lam, m, left, right)
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::super::{is_d_sparse, validate_algebra};
    use super::*;

    fn kx2() -> Arc<GradedAlgebra> {
        Arc::new(truncated_polynomial(Field::Rational, 2, 0))
    }

    #[test]
    fn rejects_non_automorphism() {
        let f = Field::Rational;
        let bad = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert!(TwistedLaurentAlgebra::new(kx2(), bad, 2).is_err());
    }

    #[test]
    fn sign_twist_multiplication_table() {
        let f = Field::Rational;
        let sigma = Matrix::from_i64(f, &[&[1, 0], &[0, -1]]);
        let l = TwistedLaurentAlgebra::new(kx2(), sigma, 2).unwrap();
        let one = vec![f.one(), f.zero()];
        let x = vec![f.zero(), f.one()];
        // ı · x = σ(x) ı = −x ı
        let (v, k) = l.multiply(&one, 1, &x, 0).unwrap();
        assert_eq!((v, k), (vec![f.zero(), f.from_i64(-1)], 1));
        let (v, k) = l.multiply(&x, 0, &one, 1).unwrap();
        assert_eq!((v, k), (x.clone(), 1));
        // negative powers use σ^{-1}
        let (v, k) = l.multiply(&one, -1, &x, 1).unwrap();
        assert_eq!((v, k), (vec![f.zero(), f.from_i64(-1)], 0));
        let m = l.component_as_bimodule(-2).unwrap();
        assert!(m.validate().is_none());
        // right action of x is -x on Λ: R_x = −L_x
        assert_eq!(*m.right(1), m.left(1).scaled(&f.from_i64(-1)));
    }

    #[test]
    fn truncation_is_valid_and_sparse() {
        let f = Field::Rational;
        let sigma = Matrix::from_i64(f, &[&[1, 0], &[0, -1]]);
        let l = TwistedLaurentAlgebra::new(kx2(), sigma, 2).unwrap();
        let t = l.truncated(3).unwrap();
        assert!(validate_algebra(&t).is_empty());
        assert!(is_d_sparse(&t, 2));
        let z = degree0_part(&t).unwrap();
        assert_eq!(z.algebra.dim(), 2);
        let comp = component_as_bimodule(&t, -2).unwrap();
        let direct = l.component_as_bimodule(-2).unwrap();
        for a in 0..2 {
            assert_eq!(comp.left(a), direct.left(a));
            assert_eq!(comp.right(a), direct.right(a));
        }
        assert_eq!(l.component_as_bimodule(-1).unwrap().dim(), 0);
    }

    #[test]
    fn identity_twist_is_central() {
        let f = Field::Rational;
        let l = TwistedLaurentAlgebra::new(Arc::new(ground(f)), Matrix::identity(f, 1), 1).unwrap();
        let (v, k) = l.multiply(&[f.one()], 3, &[f.one()], -3).unwrap();
        assert_eq!((v, k), (vec![f.one()], 0));
        let lx = TwistedLaurentAlgebra::new(kx2(), Matrix::identity(f, 2), 2).unwrap();
        let m = lx.component_as_bimodule(-2).unwrap();
        let diag = Bimodule::diagonal(kx2()).unwrap();
        for a in 0..2 {
            assert_eq!(m.left(a), diag.left(a));
            assert_eq!(m.right(a), diag.right(a));
        }
    }
}
