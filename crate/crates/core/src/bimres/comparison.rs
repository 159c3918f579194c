use std::collections::HashMap;

use super::radical::SplitBasic;
use super::resolution::{ResolutionStage, Sides};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, SparseVec, Vector};
use crate::galg::{Bimodule, GradedAlgebra};
use crate::hochschild::BimoduleHochschild;

/// Element of the bar resolution `Λ^{⊗(k+2)}`, keyed by basis tuples.
type Bar = HashMap<Vec<usize>, Scalar>;

fn add_to(out: &mut Bar, t: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(t).or_insert_with(|| c.field().zero());
    *e += &c;
}

fn prune(mut b: Bar) -> Bar {
    b.retain(|_, c| !c.is_zero());
    b
}

fn nonzero(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// `a · x` or `x · a` on the outer factor.
fn act(alg: &GradedAlgebra, a: &[Scalar], x: &Bar, left: bool) -> Result<Bar> {
    let mut out = Bar::new();
    for (t, c) in x {
        for (i, ai) in nonzero(a) {
            let (l, r) = if left { (i, t[0]) } else { (*t.last().unwrap(), i) };
            for (k, v) in alg.mul_basis(l, r)? {
                let mut t2 = t.clone();
                if left {
                    t2[0] = *k;
                } else {
                    *t2.last_mut().unwrap() = *k;
                }
                add_to(&mut out, t2, &(c * ai) * v);
            }
        }
    }
    Ok(prune(out))
}

/// `s(y) = 1 ⊗ y`, a right-linear contraction of the augmented bar complex.
fn contract(alg: &GradedAlgebra, y: &Bar) -> Bar {
    let mut out = Bar::new();
    for (t, c) in y {
        for (u, cu) in nonzero(alg.unit()) {
            let mut t2 = Vec::with_capacity(t.len() + 1);
            t2.push(u);
            t2.extend_from_slice(t);
            add_to(&mut out, t2, c * cu);
        }
    }
    prune(out)
}

/// Images `g_k(e_i ⊗ e_j)` of the summand generators of `P_k` in the bar resolution,
/// for a chain map `g: P → Bar` over the identity of `Λ`.
struct Comparison<'a> {
    alg: &'a GradedAlgebra,
    sides: Sides,
    gens: Vec<Vec<Bar>>,
}

impl<'a> Comparison<'a> {
    fn new(input: &'a SplitBasic, stages: &[ResolutionStage], n: usize) -> Result<Comparison<'a>> {
        let alg = input.algebra().as_ref();
        let mut cmp = Comparison { alg, sides: Sides::new(input)?, gens: Vec::new() };
        for k in 0..=n {
            let st = &stages[k];
            let mut gk = Vec::new();
            for (s, &(i, _)) in st.projective.summands.iter().enumerate() {
                let col = st.differential.column(st.projective.offsets[s]);
                let target = if k == 0 {
                    let mut t = Bar::new();
                    for (x, c) in nonzero(&col) {
                        add_to(&mut t, vec![x], c.clone());
                    }
                    t
                } else {
                    cmp.apply(&stages[k - 1], k - 1, &col)?
                };
                let lifted = act(alg, &input.idempotents()[i], &contract(alg, &target), true)?;
                gk.push(lifted);
            }
            cmp.gens.push(gk);
        }
        Ok(cmp)
    }

    /// `g_k(p)` for `p ∈ P_k` in coordinates.
    fn apply(&self, st: &ResolutionStage, k: usize, p: &[Scalar]) -> Result<Bar> {
        let mut out = Bar::new();
        for (idx, c) in nonzero(p) {
            let (s, b, cc) = st.projective.locate(&self.sides, idx);
            let (i, j) = st.projective.summands[s];
            let u = &self.sides.left[i][b];
            let v = &self.sides.right[j][cc];
            let x = act(self.alg, v, &act(self.alg, u, &self.gens[k][s], true)?, false)?;
            for (t, w) in x {
                add_to(&mut out, t, c * &w);
            }
        }
        Ok(prune(out))
    }
}

/// `η̃(a_0 ⊗ x ⊗ a_{n+1}) = a_0 η(x) a_{n+1}` for a cochain in the coefficient complex.
fn evaluate(cx: &BimoduleHochschild, eta: &SparseVec, n: usize, x: &Bar, field: Field) -> Vector {
    let m = cx.module();
    let dm = m.dim();
    let mut dense = vec![field.zero(); cx.cochain_dim(n)];
    for (i, c) in eta {
        dense[*i] = c.clone();
    }
    let mut out = vec![field.zero(); dm];
    for (t, c) in x {
        let base = cx.tuple_index(&t[1..=n]) * dm;
        let val = &dense[base..base + dm];
        if val.iter().all(Scalar::is_zero) {
            continue;
        }
        let y = m.act(t[0], val, t[n + 1]);
        for (o, yv) in out.iter_mut().zip(y) {
            *o += &(c * &yv);
        }
    }
    out
}

/// The map `Ω^n(Λ) → M` determined by a Hochschild `n`-cocycle `η` with coefficients in `M`.
///
/// `η` is pulled back along a comparison map from the minimal resolution into the bar
/// resolution; the result vanishes on the image of `P_{n+1}` and so factors through
/// `P_n → Ω^n`. Cohomologous cocycles give maps differing by a map that factors through
/// `Ω^n ⊂ P_{n−1}`. `stages` must reach stage `n`.
pub fn class_to_syzygy_map(
    input: &SplitBasic,
    stages: &[ResolutionStage],
    cx: &BimoduleHochschild,
    n: usize,
    eta: &SparseVec,
) -> Result<Matrix> {
    if stages.len() <= n {
        return Err(Error::InvalidArgument(format!("the resolution stops before stage {n}")));
    }
    let m: &Bimodule = cx.module();
    if m.algebra().dim() != input.algebra().dim() {
        return Err(Error::InvalidArgument("coefficients over a different algebra".into()));
    }
    if let Some((i, _)) = cx.apply_differential(n, eta)?.first() {
        return Err(Error::NotCocycle { witness: format!("coordinate {i} of δη") });
    }
    let field = input.field();
    let cmp = Comparison::new(input, stages, n)?;
    let st = &stages[n];
    let dp = st.projective.dim();
    let psi: Vec<Vector> = (0..dp)
        .map(|k| {
            let mut e = vec![field.zero(); dp];
            e[k] = field.one();
            Ok(evaluate(cx, eta, n, &cmp.apply(st, n, &e)?, field))
        })
        .collect::<Result<_>>()?;
    let psi = Matrix::from_columns(field, m.dim(), &psi);
    let omega = st.syzygy.dim();
    let cover_t = st.cover.transpose();
    let mut phi = Matrix::zeros(field, m.dim(), omega);
    for r in 0..m.dim() {
        let row = cover_t
            .solve(psi.row(r))?
            .ok_or_else(|| Error::InvalidArgument("η does not factor through the syzygy".into()))?;
        for (c, v) in row.into_iter().enumerate() {
            phi.set(r, c, v);
        }
    }
    if !st.syzygy.is_hom_to(m, &phi) {
        return Err(Error::InvalidArgument("the induced map is not a bimodule map".into()));
    }
    Ok(phi)
}
