use std::sync::Arc;

use super::comparison::class_to_syzygy_map;
use super::radical::SplitBasic;
use super::resolution::{minimal_syzygies, Projective, Sides};
use crate::error::{Error, Result};
use crate::exactlin::{find_nonvanishing_point, Matrix, Scalar, SparseVec};
use crate::galg::{component_as_bimodule, degree0_part, is_d_sparse, is_frobenius, Bimodule, GradedAlgebra, TwistedLaurentAlgebra};
use crate::hochschild::BimoduleHochschild;

/// Seed for the random points tried before a certifying grid.
const ISO_SEED: u64 = 0x150_5eed;
const RANDOM_POINTS: usize = 100;

fn combination(basis: &[Matrix], x: &[Scalar], rows: usize, cols: usize) -> Matrix {
    let f = x.first().map(Scalar::field).unwrap_or_else(|| basis[0].field());
    let mut m = Matrix::zeros(f, rows, cols);
    for (b, c) in basis.iter().zip(x) {
        if !c.is_zero() {
            m = m.add(&b.scaled(c));
        }
    }
    m
}

/// An invertible bimodule map `M → N`, or `None` when none exists.
///
/// The determinant of a generic element of `Hom(M, N)` is a polynomial of degree at
/// most `dim M` in each coordinate, so "none" is certified by the grid search of
/// [`find_nonvanishing_point`]. A grid beyond the budget is an error, not a "false".
pub fn bimodule_iso_exists(m: &Bimodule, n: &Bimodule) -> Result<Option<Matrix>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let field = m.field();
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(field, 0, 0)));
    }
    let basis = m.hom_space(n);
    if basis.is_empty() {
        return Ok(None);
    }
    let d = m.dim();
    let found = find_nonvanishing_point(field, basis.len(), d, RANDOM_POINTS, ISO_SEED, |x| {
        combination(&basis, x, d, d).determinant()
    })?;
    Ok(found.map(|x| combination(&basis, &x, d, d)))
}

/// Whether `M` has a summand `Λe_i ⊗ e_jΛ`.
///
/// Needs `Λ` Frobenius: then each indecomposable projective bimodule is injective with
/// simple socle, and it splits off `M` exactly when some map from it into `M` is
/// nonzero on its socle.
pub fn has_projective_summand(input: &SplitBasic, m: &Bimodule) -> Result<bool> {
    let sides = Sides::new(input)?;
    let r = input.idempotents().len();
    let field = input.field();
    for i in 0..r {
        for j in 0..r {
            let p = Projective::new(input, &sides, vec![(i, j)])?;
            let pm = &p.module;
            let mut stacked: Vec<Vec<Scalar>> = Vec::new();
            for rad in input.radical() {
                for a in [pm.left_of(rad), pm.right_of(rad)] {
                    stacked.extend((0..a.rows()).map(|k| a.row(k).to_vec()));
                }
            }
            let socle = if stacked.is_empty() {
                (0..pm.dim())
                    .map(|k| {
                        let mut v = vec![field.zero(); pm.dim()];
                        v[k] = field.one();
                        v
                    })
                    .collect()
            } else {
                Matrix::from_rows(field, stacked)?.rank_and_kernel().1
            };
            if socle.len() != 1 {
                return Err(Error::Precondition(format!(
                    "the projective Λe_{i} ⊗ e_{j}Λ has a socle of dimension {}; Λ is not Frobenius",
                    socle.len()
                )));
            }
            let s = &socle[0];
            // m ↦ (generator ↦ m) evaluated on the socle, on m ∈ e_i M e_j
            let (ei, ej) = (&input.idempotents()[i], &input.idempotents()[j]);
            let proj = m.left_of(ei).mul(&m.right_of(ej))?;
            let mut t = Matrix::zeros(field, m.dim(), m.dim());
            for (k, c) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (_, b, cc) = p.locate(&sides, k);
                let u = &sides.left[i][b];
                let v = &sides.right[j][cc];
                t = t.add(&m.left_of(u).mul(&m.right_of(v))?.scaled(c));
            }
            if !t.mul(&proj)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The graded algebra `𝚲` whose degree `−d` part is compared with `Ω^{d+2}(Λ)`.
#[derive(Clone, Debug)]
pub enum DaicTarget {
    Laurent(TwistedLaurentAlgebra),
    Graded(Arc<GradedAlgebra>),
}

#[derive(Clone, Debug)]
pub struct DaicVerdict {
    pub holds: bool,
    /// `Ω^{d+2}(Λ) → 𝚲^{−d}` induced by `η` (absent for semisimple `Λ`).
    pub map: Option<Matrix>,
    pub syzygy_dim: usize,
    pub target_dim: usize,
}

fn same_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<bool> {
    if a.dim() != b.dim() || a.degrees() != b.degrees() || a.unit() != b.unit() || a.field() != b.field() {
        return Ok(false);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.mul_basis(i, j)? != b.mul_basis(i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether some `u ∈ 𝚲^d` is invertible, tested through `𝚲^{−d} → 𝚲^0` on both sides.
fn has_invertible_in_degree(a: &GradedAlgebra, d: i64) -> Result<bool> {
    let us = a.basis_in_degree(d);
    let vs = a.basis_in_degree(-d);
    let zs = a.basis_in_degree(0);
    if us.is_empty() || vs.len() != zs.len() {
        return Ok(false);
    }
    let field = a.field();
    let k = zs.len();
    let pos = |x: usize| zs.iter().position(|&z| z == x);
    let side = |x: &[Scalar], left: bool| -> Result<Matrix> {
        let mut m = Matrix::zeros(field, k, k);
        for (ui, c) in us.iter().zip(x).filter(|(_, c)| !c.is_zero()) {
            for (col, &v) in vs.iter().enumerate() {
                let prod = if left { a.mul_basis(*ui, v)? } else { a.mul_basis(v, *ui)? };
                for (z, w) in prod {
                    let row = pos(*z).ok_or_else(|| Error::InvalidAlgebra("inhomogeneous product".into()))?;
                    m.add_to(row, col, &(c * w));
                }
            }
        }
        Ok(m)
    };
    let found = find_nonvanishing_point(field, us.len(), 2 * k, RANDOM_POINTS, ISO_SEED, |x| {
        Ok(&side(x, true)?.determinant()? * &side(x, false)?.determinant()?)
    })?;
    Ok(found.is_some())
}

/// `𝚲^{−d}` as a bimodule over `input`'s algebra, after checking the preconditions on `𝚲`.
pub fn daic_target_module(input: &SplitBasic, target: &DaicTarget, d: i64) -> Result<Bimodule> {
    let lam = input.algebra();
    let m = match target {
        DaicTarget::Laurent(t) => {
            if t.d() != d {
                return Err(Error::Precondition(format!("the Laurent algebra has |ı| = −{}, not −{d}", t.d())));
            }
            if !same_algebra(t.base(), lam)? {
                return Err(Error::Precondition("the Laurent base is not Λ".into()));
            }
            t.component_as_bimodule(-d)?
        }
        DaicTarget::Graded(a) => {
            if !is_d_sparse(a, d) {
                return Err(Error::Precondition(format!("𝚲 is not {d}-sparse")));
            }
            if !has_invertible_in_degree(a, d)? {
                return Err(Error::Precondition(format!("𝚲 has no invertible element of degree {d}")));
            }
            if !same_algebra(&degree0_part(a)?.algebra, lam)? {
                return Err(Error::Precondition("the degree-0 part of 𝚲 is not Λ".into()));
            }
            component_as_bimodule(a, -d)?
        }
    };
    let n = lam.dim();
    let left = (0..n).map(|a| m.left(a).clone()).collect();
    let right = (0..n).map(|a| m.right(a).clone()).collect();
    Bimodule::new(lam.clone(), m.dim(), left, right)
}

/// Whether `η ∈ HH^{d+2}(Λ; 𝚲^{−d})` represents a stable isomorphism
/// `𝚲^{−d} ≅ Ω^{d+2}_{Λ^e}(Λ)`.
///
/// `Λ` must be Frobenius, so its syzygies have no projective summands, and `𝚲^{−d}`
/// must have none either; between such bimodules a map is a stable isomorphism exactly
/// when it is an isomorphism, which is what is decided. For semisimple `Λ` every
/// bimodule is projective and the answer is "true".
pub fn daic_criterion(input: &SplitBasic, target: &DaicTarget, d: i64, eta: &SparseVec) -> Result<DaicVerdict> {
    if d <= 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    if !is_frobenius(input.algebra())?.frobenius {
        return Err(Error::Precondition("Λ is not Frobenius".into()));
    }
    let m = daic_target_module(input, target, d)?;
    let cx = BimoduleHochschild::new(m.clone())?;
    let n = (d + 2) as usize;
    if let Some((i, _)) = cx.apply_differential(n, eta)?.first() {
        return Err(Error::NotCocycle { witness: format!("coordinate {i} of δη") });
    }
    if input.is_semisimple() {
        return Ok(DaicVerdict { holds: true, map: None, syzygy_dim: 0, target_dim: m.dim() });
    }
    if has_projective_summand(input, &m)? {
        return Err(Error::Precondition("𝚲^{−d} has a projective summand".into()));
    }
    let stages = minimal_syzygies(input, n)?;
    let phi = class_to_syzygy_map(input, &stages, &cx, n, eta)?;
    let syzygy_dim = stages[n].syzygy.dim();
    let holds = syzygy_dim == m.dim() && (syzygy_dim == 0 || !phi.determinant()?.is_zero());
    Ok(DaicVerdict { holds, map: Some(phi), syzygy_dim, target_dim: m.dim() })
}
