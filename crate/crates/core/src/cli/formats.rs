//! JSON file formats. Every coefficient is an exact string such as `"-3/4"`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ainfty::MinimalAInfty;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, SparseVec, Vector};
use crate::galg::{validate_algebra, GradedAlgebra, Product, TwistedLaurentAlgebra};
use crate::hochschild::{Cochain, CochainSpace};
use crate::transfer::DGAlgebra;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(Error::Parse(format!("field: unknown field {s:?} (use \"Q\" or {{\"Fp\": p}})"))),
            FieldSpec::Prime { p } => Field::prime(*p).map_err(|e| Error::Parse(format!("field: {e}"))),
        }
    }

    pub fn of(f: Field) -> FieldSpec {
        match f {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LaurentSpec {
    /// `|ı| = −d`.
    pub d: i64,
    /// Truncation `Λ[ı]/(ı^{K+1})`.
    pub max_power: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Flags {
    #[serde(default)]
    pub basic: bool,
}

/// An algebra file. With `laurent`, the file describes `Λ` and the algebra meant is
/// the truncated twisted Laurent algebra over it (twist `sigma`, identity if absent).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub basis: Vec<BasisEntry>,
    pub unit: Vec<String>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
    /// Rows of the matrix of `σ`, whose columns are images of basis vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laurent: Option<LaurentSpec>,
    #[serde(default)]
    pub flags: Flags,
}

pub fn scalar(field: Field, s: &str, at: &str) -> Result<Scalar> {
    field.parse(s).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn vector(field: Field, v: &[String], at: &str) -> Result<Vector> {
    v.iter().enumerate().map(|(i, s)| scalar(field, s, &format!("{at}[{i}]"))).collect()
}

pub fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

pub fn parse_matrix(field: Field, rows: &[Vec<String>], at: &str) -> Result<Matrix> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(r, row)| vector(field, row, &format!("{at}[{r}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

impl AlgebraFile {
    pub fn field(&self) -> Result<Field> {
        self.field.field()
    }

    /// The base algebra described by the records, validated.
    pub fn base(&self) -> Result<GradedAlgebra> {
        let field = self.field()?;
        let basis = self.basis.iter().map(|b| (b.name.clone(), b.degree)).collect();
        let products = self
            .products
            .iter()
            .enumerate()
            .map(|(n, p)| {
                Ok(Product { i: p.i, j: p.j, k: p.k, coeff: scalar(field, &p.coeff, &format!("products[{n}].coeff"))? })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = vector(field, &self.unit, "unit")?;
        let alg = GradedAlgebra::new(field, basis, &products, unit, self.window)?;
        if let Some(v) = validate_algebra(&alg).first() {
            return Err(Error::InvalidAlgebra(format!("{v:?}")));
        }
        Ok(alg)
    }

    pub fn sigma_matrix(&self) -> Result<Option<Matrix>> {
        let field = self.field()?;
        self.sigma.as_ref().map(|s| parse_matrix(field, s, "sigma")).transpose()
    }

    pub fn twisted_laurent(&self, d: i64) -> Result<TwistedLaurentAlgebra> {
        let base = Arc::new(self.base()?);
        let sigma = self.sigma_matrix()?.unwrap_or_else(|| Matrix::identity(base.field(), base.dim()));
        TwistedLaurentAlgebra::new(base, sigma, d)
    }

    /// The algebra the file stands for.
    pub fn algebra(&self) -> Result<Arc<GradedAlgebra>> {
        match &self.laurent {
            None => Ok(Arc::new(self.base()?)),
            Some(l) => Ok(Arc::new(self.twisted_laurent(l.d)?.truncated(l.max_power)?)),
        }
    }

    pub fn idempotent_vectors(&self) -> Result<Option<Vec<Vector>>> {
        let field = self.field()?;
        self.idempotents
            .as_ref()
            .map(|es| es.iter().enumerate().map(|(i, e)| vector(field, e, &format!("idempotents[{i}]"))).collect())
            .transpose()
    }

    pub fn from_algebra(a: &GradedAlgebra) -> AlgebraFile {
        AlgebraFile {
            field: FieldSpec::of(a.field()),
            basis: a.names().iter().zip(a.degrees()).map(|(n, &d)| BasisEntry { name: n.clone(), degree: d }).collect(),
            unit: strings(a.unit()),
            products: a
                .products()
                .into_iter()
                .map(|p| ProductEntry { i: p.i, j: p.j, k: p.k, coeff: p.coeff.to_string() })
                .collect(),
            window: a.window(),
            idempotents: None,
            sigma: None,
            laurent: None,
            flags: Flags::default(),
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Entry {
    pub inputs: Vec<usize>,
    /// `(basis index, coefficient)` pairs.
    pub value: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CochainRecord {
    pub arity: usize,
    pub degree: i64,
    pub entries: Vec<Entry>,
}

pub fn sparse_strings(v: &SparseVec) -> Vec<(usize, String)> {
    v.iter().map(|(i, c)| (*i, c.to_string())).collect()
}

pub fn parse_sparse(field: Field, v: &[(usize, String)], at: &str) -> Result<SparseVec> {
    let mut out: SparseVec = v
        .iter()
        .enumerate()
        .map(|(n, (i, s))| Ok((*i, scalar(field, s, &format!("{at}[{n}]"))?)))
        .collect::<Result<Vec<_>>>()?;
    out.retain(|(_, c)| !c.is_zero());
    out.sort_unstable_by_key(|(i, _)| *i);
    if out.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Parse(format!("{at}: repeated index")));
    }
    Ok(out)
}

impl CochainRecord {
    pub fn of(c: &Cochain) -> CochainRecord {
        let mut entries: Vec<Entry> = c
            .entries()
            .filter(|(_, v)| !v.is_empty())
            .map(|(t, v)| Entry { inputs: t.clone(), value: sparse_strings(v) })
            .collect();
        entries.sort_by(|a, b| a.inputs.cmp(&b.inputs));
        CochainRecord { arity: c.arity(), degree: c.degree(), entries }
    }

    pub fn cochain(&self, alg: &Arc<GradedAlgebra>, at: &str) -> Result<Cochain> {
        let mut c = CochainSpace::new(alg, self.arity, self.degree)?.zero();
        for (n, e) in self.entries.iter().enumerate() {
            let v = parse_sparse(alg.field(), &e.value, &format!("{at}.entries[{n}].value"))?;
            if v.iter().any(|(k, _)| *k >= alg.dim()) || e.inputs.iter().any(|&k| k >= alg.dim()) {
                return Err(Error::Parse(format!("{at}.entries[{n}]: basis index out of range")));
            }
            c.set(e.inputs.clone(), v).map_err(|err| Error::Parse(format!("{at}.entries[{n}]: {err}")))?;
        }
        Ok(c)
    }
}

/// A cochain together with its algebra.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CochainFile {
    pub algebra: AlgebraFile,
    pub cochain: CochainRecord,
}

/// A minimal A∞ structure: `m_2` is the product of the algebra, `ops` the higher operations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureFile {
    pub algebra: AlgebraFile,
    pub max_arity: usize,
    pub ops: Vec<CochainRecord>,
}

impl StructureFile {
    pub fn of(s: &MinimalAInfty) -> StructureFile {
        StructureFile {
            algebra: AlgebraFile::from_algebra(s.algebra()),
            max_arity: s.max_arity(),
            ops: s.higher().filter(|(_, m)| !m.is_zero()).map(|(_, m)| CochainRecord::of(m)).collect(),
        }
    }

    pub fn structure(&self) -> Result<MinimalAInfty> {
        let alg = self.algebra.algebra()?;
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(n, r)| r.cochain(&alg, &format!("ops[{n}]")))
            .collect::<Result<Vec<_>>>()?;
        MinimalAInfty::new(alg, ops, self.max_arity)
    }
}

/// A dg algebra: `differential[j]` is `d(e_j)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DGFile {
    pub algebra: AlgebraFile,
    pub differential: Vec<Vec<(usize, String)>>,
    /// Cohomological degrees kept by default when transferring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<(i64, i64)>,
}

impl DGFile {
    pub fn of(dg: &DGAlgebra) -> Result<DGFile> {
        let alg = dg.algebra();
        let differential = (0..alg.dim()).map(|j| dg.d_basis(j).map(sparse_strings).unwrap_or_default()).collect();
        Ok(DGFile { algebra: AlgebraFile::from_algebra(alg), differential, range: None })
    }

    pub fn dg(&self) -> Result<DGAlgebra> {
        let alg = self.algebra.algebra()?;
        let f = alg.field();
        let n = alg.dim();
        if self.differential.len() != n {
            return Err(Error::Parse(format!("differential: expected {n} columns")));
        }
        let mut m = Matrix::zeros(f, n, n);
        for (j, col) in self.differential.iter().enumerate() {
            for (k, c) in parse_sparse(f, col, &format!("differential[{j}]"))? {
                if k >= n {
                    return Err(Error::Parse(format!("differential[{j}]: index {k} out of range")));
                }
                m.set(k, j, c);
            }
        }
        DGAlgebra::new(alg, &m)
    }
}
