use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, sparse_from_dense, sparse_to_dense, Echelon, Field, Insert, Matrix, Scalar, Vector};
use crate::galg::GradedAlgebra;

fn ungraded(a: &GradedAlgebra) -> Result<()> {
    if a.degrees().iter().any(|&q| q != 0) {
        return Err(Error::Precondition("bimodule resolutions need an algebra concentrated in degree 0".into()));
    }
    if a.window().is_some() || a.laurent().is_some() {
        return Err(Error::Precondition("bimodule resolutions need a plain finite-dimensional algebra".into()));
    }
    Ok(())
}

/// Basis of the span of `vs` (in insertion order).
pub(crate) fn span_basis(field: Field, dim: usize, vs: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut ech = Echelon::new(field, false);
    let mut out = Vec::new();
    for v in vs {
        if let Insert::New(_) = ech.insert(sparse_from_dense(&v)) {
            out.push(v);
        }
    }
    debug_assert!(out.iter().all(|v| v.len() == dim));
    out
}

fn products_of(a: &GradedAlgebra, xs: &[Vector], ys: &[Vector]) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            out.push(a.mul(x, y)?);
        }
    }
    Ok(span_basis(a.field(), a.dim(), out))
}

/// Index of the first power of the ideal spanned by `ideal` that vanishes.
fn nilpotency_index(a: &GradedAlgebra, ideal: &[Vector]) -> Result<Option<usize>> {
    let mut power = ideal.to_vec();
    let mut k = 1;
    while !power.is_empty() {
        let next = products_of(a, &power, ideal)?;
        if next.len() == power.len() {
            return Ok(None);
        }
        power = next;
        k += 1;
    }
    Ok(Some(k))
}

/// The Jacobson radical as the kernel of the trace form `(a, b) ↦ tr(L_{ab})`.
///
/// The trace form detects the radical only in characteristic 0 or above
/// `dim Λ`; in small characteristic a radical must be supplied instead.
pub fn jacobson_radical(a: &GradedAlgebra) -> Result<Vec<Vector>> {
    ungraded(a)?;
    let n = a.dim();
    let field = a.field();
    if let Field::Prime(p) = field {
        if p as usize <= n {
            return Err(Error::Precondition(format!(
                "characteristic {p} does not exceed dim Λ = {n}; supply the radical explicitly"
            )));
        }
    }
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut tr = field.zero();
            for (k, c) in a.mul_basis(i, j)? {
                tr += &(c * &trace_of_left(a, *k)?);
            }
            gram.set(i, j, tr);
        }
    }
    let (_, kernel) = gram.rank_and_kernel();
    let rad = span_basis(field, n, kernel);
    if nilpotency_index(a, &rad)?.is_none() {
        return Err(Error::InvalidAlgebra("the trace-form kernel is not nilpotent".into()));
    }
    Ok(rad)
}

fn trace_of_left(a: &GradedAlgebra, k: usize) -> Result<Scalar> {
    let mut tr = a.field().zero();
    for j in 0..a.dim() {
        if let Some((_, c)) = a.mul_basis(k, j)?.iter().find(|(i, _)| *i == j) {
            tr += c;
        }
    }
    Ok(tr)
}

/// A basic algebra in degree 0 whose radical quotient is `𝕜 × ⋯ × 𝕜`, split by
/// a complete set of orthogonal primitive idempotents.
#[derive(Clone, Debug)]
pub struct SplitBasic {
    alg: Arc<GradedAlgebra>,
    idempotents: Vec<Vector>,
    radical: Vec<Vector>,
}

impl SplitBasic {
    /// Checks the idempotents and the radical. Without `radical` it is computed by
    /// [`jacobson_radical`]; a supplied one must be a nilpotent ideal with the right
    /// codimension, which forces it to be the radical.
    pub fn new(alg: Arc<GradedAlgebra>, idempotents: Vec<Vector>, radical: Option<Vec<Vector>>) -> Result<SplitBasic> {
        ungraded(&alg)?;
        let n = alg.dim();
        let field = alg.field();
        if idempotents.is_empty() || idempotents.iter().any(|e| e.len() != n || is_zero_vector(e)) {
            return Err(Error::InvalidArgument("idempotents must be nonzero vectors of length dim Λ".into()));
        }
        let mut sum = vec![field.zero(); n];
        for (i, e) in idempotents.iter().enumerate() {
            for (s, c) in sum.iter_mut().zip(e) {
                *s += c;
            }
            for (j, f) in idempotents.iter().enumerate() {
                let ef = alg.mul(e, f)?;
                let want = if i == j { e.clone() } else { vec![field.zero(); n] };
                if ef != want {
                    return Err(Error::InvalidArgument(format!("idempotents {i} and {j} are not orthogonal idempotents")));
                }
            }
        }
        if &sum != alg.unit() {
            return Err(Error::InvalidArgument("idempotents do not sum to 1".into()));
        }
        let radical = match radical {
            None => jacobson_radical(&alg)?,
            Some(r) => {
                let r = span_basis(field, n, r);
                let mut ech = Echelon::new(field, false);
                for v in &r {
                    ech.insert(sparse_from_dense(v));
                }
                for v in &r {
                    for b in 0..n {
                        let e = alg.basis_vector(b);
                        for w in [alg.mul(&e, v)?, alg.mul(v, &e)?] {
                            if !ech.contains(&sparse_from_dense(&w)) {
                                return Err(Error::InvalidArgument("the supplied radical is not an ideal".into()));
                            }
                        }
                    }
                }
                if nilpotency_index(&alg, &r)?.is_none() {
                    return Err(Error::InvalidArgument("the supplied radical is not nilpotent".into()));
                }
                r
            }
        };
        if n - radical.len() != idempotents.len() {
            return Err(Error::Precondition(format!(
                "Λ/rad has dimension {} but {} idempotents were given; Λ is not split basic over them",
                n - radical.len(),
                idempotents.len()
            )));
        }
        Ok(SplitBasic { alg, idempotents, radical })
    }

    /// A local algebra: the unit is the only idempotent.
    pub fn local(alg: Arc<GradedAlgebra>) -> Result<SplitBasic> {
        let unit = alg.unit().clone();
        SplitBasic::new(alg, vec![unit], None)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn radical(&self) -> &[Vector] {
        &self.radical
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.is_empty()
    }
}

/// Coordinates of vectors in a fixed basis of a subspace.
pub(crate) struct Coords {
    field: Field,
    ech: Echelon,
    basis_len: usize,
}

impl Coords {
    pub fn new(field: Field, basis: &[Vector]) -> Coords {
        let mut ech = Echelon::new(field, true);
        for v in basis {
            ech.insert(sparse_from_dense(v));
        }
        Coords { field, ech, basis_len: basis.len() }
    }

    pub fn of(&self, v: &[Scalar]) -> Option<Vector> {
        let (res, c) = self.ech.reduce(sparse_from_dense(v));
        res.is_empty().then(|| sparse_to_dense(&c, self.basis_len, self.field))
    }
}
