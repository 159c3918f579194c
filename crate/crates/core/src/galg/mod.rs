//! Graded algebras given by structure constants, with their bimodules.
//!
//! A windowed algebra stores only the part of an infinite-dimensional graded
//! algebra living in a degree interval. Products whose degree leaves the
//! interval are *undefined* and asking for them is a [`Error::WindowOverflow`],
//! never a silent zero.

mod bimodule;
mod frobenius;
mod laurent;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, zero_vector, Accum, Field, Matrix, Scalar, SparseVec, Vector};

pub use bimodule::Bimodule;
pub use frobenius::{is_frobenius, FrobeniusVerdict};
pub use laurent::{component_as_bimodule, LaurentInfo, TwistedLaurentAlgebra};

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: Field,
    names: Vec<String>,
    degrees: Vec<i64>,
    /// Row-major `dim × dim`; `None` marks a product outside the window.
    table: Vec<Option<SparseVec>>,
    unit: Vector,
    window: Option<(i64, i64)>,
    laurent: Option<LaurentInfo>,
}

/// One structure constant `e_i · e_j ∋ coeff · e_k`.
#[derive(Clone, Debug)]
pub struct Product {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Homogeneity { i: usize, j: usize, k: usize },
    UndefinedInWindow { i: usize, j: usize },
    Unit { i: usize, left: bool },
    UnitDegree,
    Associativity { i: usize, j: usize, k: usize },
    WindowDegree { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Homogeneity { i, j, k } => {
                write!(f, "homogeneity: e{i}*e{j} has a component on e{k} of the wrong degree")
            }
            Violation::UndefinedInWindow { i, j } => write!(f, "window: e{i}*e{j} is undefined"),
            Violation::Unit { i, left } => {
                write!(f, "unit: {} unit law fails on e{i}", if *left { "left" } else { "right" })
            }
            Violation::UnitDegree => write!(f, "unit is not homogeneous of degree 0"),
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity: (e{i}e{j})e{k} != e{i}(e{j}e{k})")
            }
            Violation::WindowDegree { i } => write!(f, "window: e{i} has a degree outside the window"),
        }
    }
}

impl GradedAlgebra {
    /// Builds an algebra from basis, structure constants and unit expansion.
    ///
    /// Consistency (homogeneity, unit, associativity) is not checked here;
    /// see [`validate_algebra`].
    pub fn new(
        field: Field,
        basis: Vec<(String, i64)>,
        products: &[Product],
        unit: Vector,
        window: Option<(i64, i64)>,
    ) -> Result<GradedAlgebra> {
        let n = basis.len();
        let mut names = Vec::with_capacity(n);
        for (name, _) in &basis {
            if names.contains(name) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name {name:?}")));
            }
            names.push(name.clone());
        }
        let degrees: Vec<i64> = basis.iter().map(|b| b.1).collect();
        if unit.len() != n {
            return Err(Error::InvalidAlgebra("unit expansion has the wrong length".into()));
        }
        if let Some((lo, hi)) = window {
            if lo > hi {
                return Err(Error::InvalidAlgebra(format!("empty window [{lo}, {hi}]")));
            }
        }
        let defined = |i: usize, j: usize| match window {
            Some((lo, hi)) => (lo..=hi).contains(&(degrees[i] + degrees[j])),
            None => true,
        };
        let mut acc: Vec<Accum> = (0..n * n).map(|_| Accum::new()).collect();
        for p in products {
            if p.i >= n || p.j >= n || p.k >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant ({}, {}, {}) out of range",
                    p.i, p.j, p.k
                )));
            }
            if !defined(p.i, p.j) {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant for e{}*e{} lies outside the window",
                    p.i, p.j
                )));
            }
            acc[p.i * n + p.j].add(p.k, p.coeff.clone());
        }
        let table = acc
            .into_iter()
            .enumerate()
            .map(|(ij, a)| defined(ij / n, ij % n).then(|| a.finish()))
            .collect();
        Ok(GradedAlgebra { field, names, degrees, table, unit, window, laurent: None })
    }

    pub(crate) fn with_laurent(mut self, info: LaurentInfo) -> Self {
        self.laurent = Some(info);
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &Vector {
        &self.unit
    }
    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }
    pub fn laurent(&self) -> Option<&LaurentInfo> {
        self.laurent.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Basis indices of the given degree.
    pub fn basis_in_degree(&self, q: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == q).collect()
    }

    pub fn min_degree(&self) -> i64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// `e_i · e_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> Result<&SparseVec> {
        self.table[i * self.dim() + j].as_ref().ok_or_else(|| {
            Error::WindowOverflow(format!(
                "{}*{} has degree {} outside the window",
                self.names[i],
                self.names[j],
                self.degrees[i] + self.degrees[j]
            ))
        })
    }

    pub fn is_defined(&self, i: usize, j: usize) -> bool {
        self.table[i * self.dim() + j].is_some()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
        let mut out = zero_vector(self.field, self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mul_basis(i, j)? {
                    out[*k] += &(&xy * c);
                }
            }
        }
        Ok(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.field, self.dim());
        v[i] = self.field.one();
        v
    }

    /// Matrix of left multiplication by `a` (columns indexed by basis).
    pub fn left_mult(&self, a: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        let cols: Result<Vec<Vector>> = (0..n).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Ok(Matrix::from_columns(self.field, n, &cols?))
    }

    pub fn right_mult(&self, a: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        let cols: Result<Vec<Vector>> = (0..n).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Ok(Matrix::from_columns(self.field, n, &cols?))
    }

    pub fn products(&self) -> Vec<Product> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(v) = &self.table[i * n + j] {
                    for (k, c) in v {
                        out.push(Product { i, j, k: *k, coeff: c.clone() });
                    }
                }
            }
        }
        out
    }

    /// Same algebra in the basis given by the columns of `p` (old coordinates of new basis vectors).
    /// Degrees are kept, so `p` must be degree-preserving for the result to be graded.
    pub fn change_basis(&self, p: &Matrix) -> Result<GradedAlgebra> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("change of basis is singular".into()))?;
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&p.column(i), &p.column(j))?;
                let coords = pinv.mul_vec(&prod)?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        products.push(Product { i, j, k, coeff: c });
                    }
                }
            }
        }
        let unit = pinv.mul_vec(&self.unit)?;
        let basis = (0..n).map(|i| (format!("f{i}"), self.degrees[i])).collect();
        GradedAlgebra::new(self.field, basis, &products, unit, self.window)
    }
}

/// Lists violations of homogeneity, unit laws and associativity.
/// Associativity is checked on every triple whose iterated products are defined.
pub fn validate_algebra(a: &GradedAlgebra) -> Vec<Violation> {
    let n = a.dim();
    let mut out = Vec::new();
    if let Some((lo, hi)) = a.window {
        for i in 0..n {
            if !(lo..=hi).contains(&a.degrees[i]) {
                out.push(Violation::WindowDegree { i });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            match &a.table[i * n + j] {
                Some(v) => {
                    for (k, _) in v {
                        if a.degrees[*k] != a.degrees[i] + a.degrees[j] {
                            out.push(Violation::Homogeneity { i, j, k: *k });
                        }
                    }
                }
                None if a.laurent.is_none() && a.window.is_none() => {
                    out.push(Violation::UndefinedInWindow { i, j })
                }
                None => {}
            }
        }
    }
    if a.unit.iter().enumerate().any(|(i, c)| !c.is_zero() && a.degrees[i] != 0) {
        out.push(Violation::UnitDegree);
    }
    for i in 0..n {
        let e = a.basis_vector(i);
        match a.mul(&a.unit, &e) {
            Ok(v) if v == e => {}
            _ => out.push(Violation::Unit { i, left: true }),
        }
        match a.mul(&e, &a.unit) {
            Ok(v) if v == e => {}
            _ => out.push(Violation::Unit { i, left: false }),
        }
    }
    // sparse triple products; a side outside the window skips the triple
    let times = |v: &SparseVec, k: usize, left: bool| -> Option<SparseVec> {
        let mut acc = Accum::new();
        for (l, c) in v {
            let p = if left { a.mul_basis(*l, k) } else { a.mul_basis(k, *l) }.ok()?;
            for (m, d) in p {
                acc.add(*m, c * d);
            }
        }
        Some(acc.finish())
    };
    for i in 0..n {
        for j in 0..n {
            let Ok(ij) = a.mul_basis(i, j) else { continue };
            for k in 0..n {
                let Ok(jk) = a.mul_basis(j, k) else { continue };
                if ij.is_empty() && jk.is_empty() {
                    continue;
                }
                let (Some(l), Some(r)) = (times(ij, k, true), times(jk, i, false)) else {
                    continue;
                };
                if l != r {
                    out.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    out
}

pub fn is_d_sparse(a: &GradedAlgebra, d: i64) -> bool {
    assert!(d > 0, "sparseness step must be positive");
    a.degrees.iter().all(|q| q.rem_euclid(d) == 0)
}

/// Degree-0 subalgebra and the inclusion of its basis into the ambient basis.
#[derive(Clone, Debug)]
pub struct DegreeZero {
    pub algebra: Arc<GradedAlgebra>,
    pub inclusion: Vec<usize>,
}

pub fn degree0_part(a: &GradedAlgebra) -> Result<DegreeZero> {
    let inc = a.basis_in_degree(0);
    let pos = |k: usize| inc.iter().position(|&x| x == k);
    if a.unit.iter().enumerate().any(|(i, c)| !c.is_zero() && pos(i).is_none()) {
        return Err(Error::InvalidAlgebra("no unit in degree 0".into()));
    }
    if is_zero_vector(&a.unit) {
        return Err(Error::InvalidAlgebra("no unit in degree 0".into()));
    }
    let mut products = Vec::new();
    for (x, &i) in inc.iter().enumerate() {
        for (y, &j) in inc.iter().enumerate() {
            for (k, c) in a.mul_basis(i, j)? {
                let z = pos(*k).ok_or_else(|| {
                    Error::InvalidAlgebra("degree-0 product leaves degree 0".into())
                })?;
                products.push(Product { i: x, j: y, k: z, coeff: c.clone() });
            }
        }
    }
    let basis = inc.iter().map(|&i| (a.names[i].clone(), 0)).collect();
    let unit = inc.iter().map(|&i| a.unit[i].clone()).collect();
    let alg = GradedAlgebra::new(a.field, basis, &products, unit, None)?;
    Ok(DegreeZero { algebra: Arc::new(alg), inclusion: inc })
}

/// Basis-indexed helpers for writing algebras in code.
pub mod build {
    use super::*;

    /// `k[x]/(x^n)` with `x` in degree `deg`.
    pub fn truncated_polynomial(field: Field, n: usize, deg: i64) -> GradedAlgebra {
        let basis = (0..n)
            .map(|i| (if i == 0 { "1".to_string() } else if i == 1 { "x".into() } else { format!("x{i}") }, i as i64 * deg))
            .collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    products.push(Product { i, j, k: i + j, coeff: field.one() });
                }
            }
        }
        let mut unit = zero_vector(field, n);
        unit[0] = field.one();
        GradedAlgebra::new(field, basis, &products, unit, None).expect("well-formed")
    }

    /// The ground field in degree 0.
    pub fn ground(field: Field) -> GradedAlgebra {
        truncated_polynomial(field, 1, 0)
    }

    /// `k[ε,t]/(ε²)` with `|ε| = 1`, `|t| = 2`, kept in degrees `[0, hi]`.
    ///
    /// Basis: `t^a` (degree `2a`) and `ε t^a` (degree `2a+1`), ordered by degree,
    /// so the basis element of degree `n` has index `n`.
    pub fn epsilon_t(field: Field, hi: i64) -> GradedAlgebra {
        assert!(hi >= 0);
        let n = (hi + 1) as usize;
        let name = |k: usize| -> String {
            let (e, a) = (k % 2, k / 2);
            match (e, a) {
                (0, 0) => "1".into(),
                (0, 1) => "t".into(),
                (0, a) => format!("t{a}"),
                (_, 0) => "e".into(),
                (_, 1) => "et".into(),
                (_, a) => format!("et{a}"),
            }
        };
        let basis = (0..n).map(|k| (name(k), k as i64)).collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + j >= n || (i % 2 == 1 && j % 2 == 1) {
                    continue;
                }
                // ε and t commute (|t| even), so every product is +1 on the monomial.
                products.push(Product { i, j, k: i + j, coeff: field.one() });
            }
        }
        let mut unit = zero_vector(field, n);
        unit[0] = field.one();
        GradedAlgebra::new(field, basis, &products, unit, Some((0, hi))).expect("well-formed")
    }

    /// Upper-triangular 2×2 matrices: basis e11, e12, e22.
    pub fn upper_triangular(field: Field) -> GradedAlgebra {
        let one = field.one();
        let p = |i, j, k| Product { i, j, k, coeff: one.clone() };
        let products = vec![p(0, 0, 0), p(0, 1, 1), p(1, 2, 1), p(2, 2, 2)];
        let unit = vec![field.one(), field.zero(), field.one()];
        let basis = vec![("e11".into(), 0), ("e12".into(), 0), ("e22".into(), 0)];
        GradedAlgebra::new(field, basis, &products, unit, None).expect("well-formed")
    }

    /// `k × k`.
    pub fn product_of_fields(field: Field, copies: usize) -> GradedAlgebra {
        let products: Vec<Product> =
            (0..copies).map(|i| Product { i, j: i, k: i, coeff: field.one() }).collect();
        let unit = vec![field.one(); copies];
        let basis = (0..copies).map(|i| (format!("e{i}"), 0)).collect();
        GradedAlgebra::new(field, basis, &products, unit, None).expect("well-formed")
    }

    /// Exterior algebra on two generators of degrees `da`, `db` (basis 1, a, b, ab; `ba = −ab`).
    pub fn exterior2(field: Field, da: i64, db: i64) -> GradedAlgebra {
        let one = field.one();
        let p = |i, j, k, c: Scalar| Product { i, j, k, coeff: c };
        let mut products = vec![p(0, 0, 0, one.clone())];
        for i in 1..4 {
            products.push(p(0, i, i, one.clone()));
            products.push(p(i, 0, i, one.clone()));
        }
        products.push(p(1, 2, 3, one.clone()));
        products.push(p(2, 1, 3, -one));
        let basis = vec![("1".into(), 0), ("a".into(), da), ("b".into(), db), ("ab".into(), da + db)];
        let mut unit = zero_vector(field, 4);
        unit[0] = field.one();
        GradedAlgebra::new(field, basis, &products, unit, None).expect("well-formed")
    }

    /// `k[x, y]/(x, y)²` with generator degrees `dx`, `dy`.
    pub fn square_zero2(field: Field, dx: i64, dy: i64) -> GradedAlgebra {
        let one = field.one();
        let mut products = vec![Product { i: 0, j: 0, k: 0, coeff: one.clone() }];
        for i in 1..3 {
            products.push(Product { i: 0, j: i, k: i, coeff: one.clone() });
            products.push(Product { i, j: 0, k: i, coeff: one.clone() });
        }
        let basis = vec![("1".into(), 0), ("x".into(), dx), ("y".into(), dy)];
        let mut unit = zero_vector(field, 3);
        unit[0] = field.one();
        GradedAlgebra::new(field, basis, &products, unit, None).expect("well-formed")
    }

    /// Upper-triangular matrices with the off-diagonal entry in degree `g`.
    pub fn graded_upper_triangular(field: Field, g: i64) -> GradedAlgebra {
        let a = upper_triangular(field);
        let basis = vec![("e11".into(), 0), ("e12".into(), g), ("e22".into(), 0)];
        GradedAlgebra::new(field, basis, &a.products(), a.unit().clone(), None).expect("well-formed")
    }

    /// A random associative unital graded algebra of dimension at most 4 with
    /// basis degrees in `[−2, 2]`: one of a few small families, followed by a
    /// random degree-preserving change of basis.
    pub fn random_associative<R: rand::Rng>(field: Field, rng: &mut R) -> GradedAlgebra {
        let deg = |rng: &mut R, r: i64| rng.gen_range(-r..=r);
        let base = match rng.gen_range(0..6) {
            0 => truncated_polynomial(field, 2, deg(rng, 2)),
            1 => truncated_polynomial(field, 3, deg(rng, 1)),
            2 => truncated_polynomial(field, 4, 0),
            3 => {
                let da = deg(rng, 2);
                let db = rng.gen_range((-2 - da).max(-2)..=(2 - da).min(2));
                exterior2(field, da, db)
            }
            4 => square_zero2(field, deg(rng, 2), deg(rng, 2)),
            _ => graded_upper_triangular(field, deg(rng, 2)),
        };
        let n = base.dim();
        loop {
            let mut p = Matrix::zeros(field, n, n);
            for i in 0..n {
                for j in 0..n {
                    if base.degree(i) == base.degree(j) {
                        p.set(i, j, field.from_i64(rng.gen_range(-3..=3)));
                    }
                }
            }
            if p.inverse().is_some() {
                return base.change_basis(&p).expect("invertible");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn dual_numbers_valid() {
        assert!(validate_algebra(&truncated_polynomial(q(), 2, 0)).is_empty());
        assert!(validate_algebra(&epsilon_t(q(), 6)).is_empty());
        assert!(validate_algebra(&upper_triangular(q())).is_empty());
    }

    #[test]
    fn homogeneity_violation_named() {
        let f = q();
        let basis = vec![("1".into(), 0), ("a".into(), 1), ("b".into(), 1)];
        let one = f.one();
        let mut products: Vec<Product> = (0..3)
            .flat_map(|i| {
                [Product { i: 0, j: i, k: i, coeff: one.clone() }, Product { i, j: 0, k: i, coeff: one.clone() }]
            })
            .collect();
        products.dedup_by(|a, b| a.i == b.i && a.j == b.j);
        products.retain(|p| !(p.i == 0 && p.j == 0) || p.k == 0);
        products.push(Product { i: 1, j: 2, k: 1, coeff: one.clone() });
        let unit = vec![f.one(), f.zero(), f.zero()];
        let a = GradedAlgebra::new(f, basis, &products, unit, None).unwrap();
        let v = validate_algebra(&a);
        assert!(v.contains(&Violation::Homogeneity { i: 1, j: 2, k: 1 }), "{v:?}");
    }

    #[test]
    fn associativity_witness_matches_exhaustive_scan() {
        // k<a,b> truncated: a*b = c, b*a = 0, a*a = b. Then (aa)a = ba = 0 but a(aa) = ab = c.
        let f = q();
        let basis = vec![("1".into(), 0), ("a".into(), 0), ("b".into(), 0), ("c".into(), 0)];
        let one = f.one();
        let mut products = Vec::new();
        for i in 0..4 {
            products.push(Product { i: 0, j: i, k: i, coeff: one.clone() });
            if i > 0 {
                products.push(Product { i, j: 0, k: i, coeff: one.clone() });
            }
        }
        products.push(Product { i: 1, j: 2, k: 3, coeff: one.clone() });
        products.push(Product { i: 1, j: 1, k: 2, coeff: one.clone() });
        let unit = vec![f.one(), f.zero(), f.zero(), f.zero()];
        let a = GradedAlgebra::new(f, basis, &products, unit, None).unwrap();
        let found: Vec<_> = validate_algebra(&a)
            .into_iter()
            .filter(|v| matches!(v, Violation::Associativity { .. }))
            .collect();
        // oracle: brute-force triples
        let mut expected = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let l = a.mul(&a.mul(&a.basis_vector(i), &a.basis_vector(j)).unwrap(), &a.basis_vector(k)).unwrap();
                    let r = a.mul(&a.basis_vector(i), &a.mul(&a.basis_vector(j), &a.basis_vector(k)).unwrap()).unwrap();
                    if l != r {
                        expected.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        assert_eq!(found, expected);
        assert!(found.contains(&Violation::Associativity { i: 1, j: 1, k: 1 }));
    }

    #[test]
    fn sparseness() {
        let et = epsilon_t(q(), 6);
        assert!(is_d_sparse(&et, 1));
        assert!(!is_d_sparse(&et, 2));
    }

    #[test]
    fn degree_zero_parts() {
        let et = epsilon_t(q(), 6);
        let z = degree0_part(&et).unwrap();
        assert_eq!(z.algebra.dim(), 1);
        let kx = truncated_polynomial(q(), 2, 0);
        assert_eq!(degree0_part(&kx).unwrap().algebra.dim(), 2);
    }

    #[test]
    fn window_overflow_is_loud() {
        let et = epsilon_t(q(), 4);
        assert!(matches!(et.mul_basis(3, 2), Err(Error::WindowOverflow(_))));
        assert!(et.mul_basis(1, 1).unwrap().is_empty());
    }
}
