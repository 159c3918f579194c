use std::fmt;

use super::scalar::{Field, Scalar};
use super::sparse::{sparse_from_dense, sparse_to_dense, Echelon, Insert, SparseVec};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, data).expect("rectangular")
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} vs {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scaled(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    fn sparse_columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| sparse_from_dense(&self.column(j))).collect()
    }

    /// Rank and a basis of the right kernel `{x : Mx = 0}`.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let mut ech = Echelon::new(self.field, true);
        let mut kernel = Vec::new();
        for col in self.sparse_columns() {
            if let Insert::Dependent(combo) = ech.insert(col) {
                kernel.push(sparse_to_dense(&combo, self.cols, self.field));
            }
        }
        (ech.rank(), kernel)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, false);
        for col in self.sparse_columns() {
            ech.insert(col);
        }
        ech.rank()
    }

    /// Some `x` with `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs of length {} vs {} rows", b.len(), self.rows)));
        }
        let mut ech = Echelon::new(self.field, true);
        for col in self.sparse_columns() {
            ech.insert(col);
        }
        let (res, combo) = ech.reduce(sparse_from_dense(b));
        if !res.is_empty() {
            return Ok(None);
        }
        Ok(Some(sparse_to_dense(&combo, self.cols, self.field)))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = &a[r * n + c] * &inv;
                for j in c..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        let mut ech = Echelon::new(self.field, true);
        for col in self.sparse_columns() {
            if let Insert::Dependent(_) = ech.insert(col) {
                return None;
            }
        }
        for j in 0..n {
            let (res, combo) = ech.reduce(vec![(j, self.field.one())]);
            debug_assert!(res.is_empty());
            cols.push(sparse_to_dense(&combo, n, self.field));
        }
        Some(Matrix::from_columns(self.field, n, &cols))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `dim span(Z) - dim span(B)` together with lifts of a basis of `span(Z)/span(B)`.
///
/// Fails when some vector of `B` is not in `span(Z)`.
pub fn subquotient_dim(
    field: Field,
    z: &[Vec<Scalar>],
    b: &[Vec<Scalar>],
) -> Result<(usize, Vec<Vec<Scalar>>)> {
    let mut zs = Echelon::new(field, false);
    for v in z {
        zs.insert(sparse_from_dense(v));
    }
    if b.iter().any(|v| !zs.contains(&sparse_from_dense(v))) {
        return Err(Error::NotSubspace);
    }
    let mut ech = Echelon::new(field, false);
    for v in b {
        ech.insert(sparse_from_dense(v));
    }
    let mut classes = Vec::new();
    for v in z {
        if let Insert::New(_) = ech.insert(sparse_from_dense(v)) {
            classes.push(v.clone());
        }
    }
    Ok((classes.len(), classes))
}
