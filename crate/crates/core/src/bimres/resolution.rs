use std::sync::Arc;

use super::radical::{span_basis, Coords, SplitBasic};
use crate::error::{Error, Result};
use crate::exactlin::{sparse_from_dense, Echelon, Insert, Matrix, Vector};
use crate::galg::{Bimodule, GradedAlgebra};

/// Bases of `Λe_i` and `e_jΛ`, each starting with the idempotent itself.
#[derive(Clone, Debug)]
pub(crate) struct Sides {
    pub left: Vec<Vec<Vector>>,
    pub right: Vec<Vec<Vector>>,
}

impl Sides {
    pub fn new(input: &SplitBasic) -> Result<Sides> {
        let a = input.algebra();
        let n = a.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in input.idempotents() {
            let mut l = vec![e.clone()];
            let mut r = vec![e.clone()];
            for b in 0..n {
                let x = a.basis_vector(b);
                l.push(a.mul(&x, e)?);
                r.push(a.mul(e, &x)?);
            }
            left.push(span_basis(a.field(), n, l));
            right.push(span_basis(a.field(), n, r));
        }
        Ok(Sides { left, right })
    }
}

/// `⊕_s Λe_{i_s} ⊗ e_{j_s}Λ`. The basis of summand `s` is `u_b ⊗ v_c` for the bases
/// `u` of `Λe_i` and `v` of `e_jΛ`, with index `offset_s + b·|v| + c`; the generator
/// `e_i ⊗ e_j` is the first basis vector of its summand.
#[derive(Clone, Debug)]
pub struct Projective {
    pub summands: Vec<(usize, usize)>,
    pub offsets: Vec<usize>,
    pub module: Bimodule,
}

impl Projective {
    pub(crate) fn new(input: &SplitBasic, sides: &Sides, summands: Vec<(usize, usize)>) -> Result<Projective> {
        let a = input.algebra();
        let field = a.field();
        let mut offsets = Vec::new();
        let mut dim = 0;
        for &(i, j) in &summands {
            offsets.push(dim);
            dim += sides.left[i].len() * sides.right[j].len();
        }
        let na = a.dim();
        let mut left = vec![Matrix::zeros(field, dim, dim); na];
        let mut right = vec![Matrix::zeros(field, dim, dim); na];
        for (s, &(i, j)) in summands.iter().enumerate() {
            let (u, v) = (&sides.left[i], &sides.right[j]);
            let (cu, cv) = (Coords::new(field, u), Coords::new(field, v));
            for x in 0..na {
                let ex = a.basis_vector(x);
                for (b, ub) in u.iter().enumerate() {
                    let img = cu.of(&a.mul(&ex, ub)?).expect("Λe_i is a left ideal");
                    for (b2, c2) in img.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for c in 0..v.len() {
                            let (row, col) = (offsets[s] + b2 * v.len() + c, offsets[s] + b * v.len() + c);
                            left[x].set(row, col, c2.clone());
                        }
                    }
                }
                for (c, vc) in v.iter().enumerate() {
                    let img = cv.of(&a.mul(vc, &ex)?).expect("e_jΛ is a right ideal");
                    for (c2, k) in img.iter().enumerate().filter(|(_, k)| !k.is_zero()) {
                        for b in 0..u.len() {
                            let (row, col) = (offsets[s] + b * v.len() + c2, offsets[s] + b * v.len() + c);
                            right[x].set(row, col, k.clone());
                        }
                    }
                }
            }
        }
        let module = Bimodule::new(a.clone(), dim, left, right)?;
        Ok(Projective { summands, offsets, module })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `m[i][j]` = number of summands `Λe_i ⊗ e_jΛ`.
    pub fn multiplicities(&self, idempotents: usize) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; idempotents]; idempotents];
        for &(i, j) in &self.summands {
            m[i][j] += 1;
        }
        m
    }

    /// For basis index `k`: its summand, and the left and right factors `(b, c)`.
    pub(crate) fn locate(&self, sides: &Sides, k: usize) -> (usize, usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= k) - 1;
        let w = sides.right[self.summands[s].1].len();
        let r = k - self.offsets[s];
        (s, r / w, r % w)
    }
}

/// `rad(Λ^e)·M = rad·M + M·rad` as a list of spanning vectors.
pub(crate) fn radical_of(input: &SplitBasic, m: &Bimodule) -> Vec<Vector> {
    let mut out = Vec::new();
    for r in input.radical() {
        let (l, rr) = (m.left_of(r), m.right_of(r));
        for k in 0..m.dim() {
            out.push(l.column(k));
            out.push(rr.column(k));
        }
    }
    span_basis(input.field(), m.dim(), out)
}

/// The map `P → M` sending the generator of summand `s` to `gens[s]`.
pub(crate) fn map_from_projective(sides: &Sides, p: &Projective, m: &Bimodule, gens: &[Vector]) -> Matrix {
    let field = m.field();
    let mut out = Matrix::zeros(field, m.dim(), p.dim());
    for (s, &(i, j)) in p.summands.iter().enumerate() {
        let (u, v) = (&sides.left[i], &sides.right[j]);
        for (b, ub) in u.iter().enumerate() {
            let lb = m.left_of(ub);
            for (c, vc) in v.iter().enumerate() {
                let x = m.right_of(vc).mul_vec(&gens[s]).expect("dimension");
                let y = lb.mul_vec(&x).expect("dimension");
                let col = p.offsets[s] + b * v.len() + c;
                for (r, val) in y.into_iter().enumerate() {
                    out.set(r, col, val);
                }
            }
        }
    }
    out
}

/// Projective cover of `M`: the projective, generator images in `M`, and the map.
pub(crate) fn projective_cover(input: &SplitBasic, sides: &Sides, m: &Bimodule) -> Result<(Projective, Vec<Vector>, Matrix)> {
    let field = input.field();
    let mut ech = Echelon::new(field, false);
    for v in radical_of(input, m) {
        ech.insert(sparse_from_dense(&v));
    }
    let ids = input.idempotents();
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    for (i, ei) in ids.iter().enumerate() {
        for (j, ej) in ids.iter().enumerate() {
            let proj = m.left_of(ei).mul(&m.right_of(ej))?;
            for k in 0..m.dim() {
                let v = proj.column(k);
                if let Insert::New(_) = ech.insert(sparse_from_dense(&v)) {
                    summands.push((i, j));
                    gens.push(v);
                }
            }
        }
    }
    if ech.rank() != m.dim() {
        return Err(Error::Precondition("Λ/rad is not split over the given idempotents".into()));
    }
    let p = Projective::new(input, sides, summands)?;
    let map = map_from_projective(sides, &p, m, &gens);
    if map.rank() != m.dim() {
        return Err(Error::Precondition("the top of the module does not generate it".into()));
    }
    Ok((p, gens, map))
}

/// Kernel of a bimodule map `f: P → M` as a bimodule with its embedding into `P`.
pub(crate) fn kernel_bimodule(alg: &Arc<GradedAlgebra>, p: &Bimodule, f: &Matrix) -> Result<(Bimodule, Matrix)> {
    let field = p.field();
    let (_, ker) = f.rank_and_kernel();
    let k = ker.len();
    let emb = Matrix::from_columns(field, p.dim(), &ker);
    let coords = Coords::new(field, &ker);
    let restrict = |act: &Matrix| -> Result<Matrix> {
        let cols: Vec<Vector> = ker
            .iter()
            .map(|v| {
                coords
                    .of(&act.mul_vec(v)?)
                    .ok_or_else(|| Error::InvalidArgument("the kernel is not a sub-bimodule".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(field, k, &cols))
    };
    let n = alg.dim();
    let left = (0..n).map(|a| restrict(p.left(a))).collect::<Result<Vec<_>>>()?;
    let right = (0..n).map(|a| restrict(p.right(a))).collect::<Result<Vec<_>>>()?;
    Ok((Bimodule::new(alg.clone(), k, left, right)?, emb))
}

/// One stage of the minimal resolution `⋯ → P_1 → P_0 → Λ`.
///
/// `syzygy` is `Ω^n`, the image of `P_n`, realised inside `P_{n−1}` by `embedding`
/// (`Ω^0 = Λ` has none). `cover` is the surjection `P_n → Ω^n` and `differential`
/// the composite `P_n → P_{n−1}` (or `P_0 → Λ`).
#[derive(Clone, Debug)]
pub struct ResolutionStage {
    pub n: usize,
    pub syzygy: Bimodule,
    pub embedding: Option<Matrix>,
    pub projective: Projective,
    pub generators: Vec<Vector>,
    pub cover: Matrix,
    pub differential: Matrix,
}

/// The minimal projective bimodule resolution of `Λ` through stage `n_max`.
///
/// Each kernel is checked to lie in `rad(Λ^e)·P`, so every cover is minimal.
pub fn minimal_syzygies(input: &SplitBasic, n_max: usize) -> Result<Vec<ResolutionStage>> {
    let alg = input.algebra();
    let sides = Sides::new(input)?;
    let mut stages: Vec<ResolutionStage> = Vec::new();
    let mut omega = Bimodule::diagonal(alg.clone())?;
    let mut embedding: Option<Matrix> = None;
    for n in 0..=n_max {
        let (projective, generators, cover) = projective_cover(input, &sides, &omega)?;
        let differential = match &embedding {
            Some(e) => e.mul(&cover)?,
            None => cover.clone(),
        };
        let (next, next_emb) = kernel_bimodule(alg, &projective.module, &cover)?;
        let rad = radical_of(input, &projective.module);
        let mut ech = Echelon::new(input.field(), false);
        for v in &rad {
            ech.insert(sparse_from_dense(v));
        }
        for c in 0..next_emb.cols() {
            if !ech.contains(&sparse_from_dense(&next_emb.column(c))) {
                return Err(Error::InvalidArgument(format!("stage {n}: the kernel of the cover is not in rad·P")));
            }
        }
        stages.push(ResolutionStage { n, syzygy: omega, embedding, projective, generators, cover, differential });
        omega = next;
        embedding = Some(next_emb);
    }
    Ok(stages)
}

/// `Ω^n(Λ)` for `n` one past the last computed stage.
pub fn next_syzygy(input: &SplitBasic, last: &ResolutionStage) -> Result<(Bimodule, Matrix)> {
    kernel_bimodule(input.algebra(), &last.projective.module, &last.cover)
}
