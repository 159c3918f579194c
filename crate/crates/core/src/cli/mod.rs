//! Command-line front end. Commands read and write the JSON files of [`formats`];
//! object-producing commands print the object so they can be chained through files
//! or pipes.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for errors.

pub mod formats;

use std::io::Read;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ainfty::{
    extend_step, greedy_gauge_equiv, intrinsic_formality_check, obstruction_class, restricted_massey,
    d_sparse_massey, verify_upto, GaugeVerdict, HHClass,
};
use crate::bimres::{daic_criterion, minimal_syzygies, DaicTarget, SplitBasic};
use crate::error::{Error, Result};
use crate::exactlin::{Field, SparseVec};
use crate::galg::{build, is_frobenius, validate_algebra};
use crate::hochschild::{bracket, cup, hochschild_differential, square, BimoduleHochschild, HochschildComplex};
use crate::transfer::{cohomology_algebra, transfer_structure, Complements};
use crate::zoo::{minimal_ell_model, rhom_cohomology_range, truncated_polynomial_rhom};
use formats::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "massey", version, about = "Exact Hochschild cohomology and minimal A-infinity algebras")]
pub struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the produced object here instead of printing it.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra file (homogeneity, unit, associativity).
    Validate {
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Dimensions of HH^{p,q}.
    Hh {
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Range `a..b` (inclusive) or a single arity.
        #[arg(long, default_value = "0..3")]
        p: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        q: i64,
    },
    /// Gerstenhaber bracket of two cochains.
    Bracket {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Cup product of two cochains.
    Cup {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Gerstenhaber square `c ∘ c`.
    Square {
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
    /// Hochschild differential of a cochain.
    Diff {
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
    /// Verify the A∞ equations through arity N.
    McCheck {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Class of `m_{d+2}` in `HH^{d+2,−d}` for a d-sparse structure.
    Massey {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Restriction of the Massey class to the degree-0 part.
    RestrictedMassey {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Obstruction class to adjoining `m_N`.
    Obstruction {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long = "N")]
        n: usize,
    },
    /// Solve for `m_N` when the obstruction vanishes.
    Extend {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long = "N")]
        n: usize,
    },
    /// Search for a gauge equivalence between two structures on the same algebra.
    Gauge {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long = "N")]
        n: usize,
    },
    /// Minimal model of a dg algebra by homotopy transfer.
    Transfer {
        #[arg(long)]
        dg: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        /// Cohomological degrees `lo..hi` to keep.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Random complements with this seed (pivot complements otherwise).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Intrinsic formality: do `HH^{p+2,−p}` vanish for `1 ≤ p ≤ P`?
    Formality {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        p: usize,
    },
    /// Frobenius test for an algebra in degree 0.
    Frobenius {
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Truncated twisted Laurent algebra `Λ[ı]/(ı^{K+1})`, `|ı| = −d`, twist from the file.
    Laurent {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 2)]
        max_power: usize,
    },
    /// Minimal bimodule resolution of Λ through stage N.
    Syzygy {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
    },
    /// Whether η ∈ HH^{d+2}(Λ; Λ_σ) represents a stable isomorphism with Ω^{d+2}(Λ).
    Daic {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        d: i64,
        /// Sparse cocycle file `[[index, "coeff"], …]`.
        #[arg(long)]
        eta: Option<PathBuf>,
        /// Use the k-th class representative of HH^{d+2} instead.
        #[arg(long)]
        rep: Option<usize>,
    },
    /// Print a fixture: `trunc-poly` (dg model), `ell-model` (structure), `eps-t`, `poly`, `ground` (algebras).
    Zoo {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[arg(long = "N")]
        n: Option<usize>,
        /// Prime for F_p coefficients (rationals otherwise).
        #[arg(long)]
        prime: Option<u64>,
    },
}

/// Result of running one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    used_stdin: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&PathBuf>) -> Result<String> {
        match path {
            Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
            _ => {
                if self.used_stdin {
                    return Err(Error::InvalidArgument("standard input can only be read once".into()));
                }
                self.used_stdin = true;
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: Option<&PathBuf>, what: &str) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{what} file: {e}")))
    }
}

/// What a command produced: a report, an optional object file and an exit code.
struct Report {
    code: i32,
    value: Value,
    text: String,
    object: Option<Value>,
}

impl Report {
    fn new(value: Value, text: String) -> Report {
        Report { code: 0, value, text, object: None }
    }

    fn verdict(mut self, v: bool) -> Report {
        self.code = if v { 0 } else { 1 };
        self
    }
}

fn class_json(c: &HHClass) -> Value {
    json!({ "p": c.p, "q": c.q, "coords": strings(&c.coords), "zero": c.is_zero() })
}

fn class_text(c: &HHClass) -> String {
    format!("HH^({},{}) class [{}]{}", c.p, c.q, strings(&c.coords).join(", "), if c.is_zero() { " (zero)" } else { "" })
}

fn range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidArgument(format!("expected a range lo..hi, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn split_basic(file: &AlgebraFile) -> Result<SplitBasic> {
    let alg = Arc::new(file.base()?);
    match file.idempotent_vectors()? {
        Some(ids) => SplitBasic::new(alg, ids, None),
        None => SplitBasic::local(alg),
    }
}

fn execute(cli: &Cli, io: &mut Io) -> Result<Report> {
    Ok(match &cli.command {
        Command::Validate { algebra } => {
            let file: AlgebraFile = io.json(algebra.as_ref(), "algebra")?;
            let field = file.field()?;
            let basis = file.basis.iter().map(|b| (b.name.clone(), b.degree)).collect();
            let products = file
                .products
                .iter()
                .enumerate()
                .map(|(n, p)| {
                    Ok(crate::galg::Product {
                        i: p.i,
                        j: p.j,
                        k: p.k,
                        coeff: scalar(field, &p.coeff, &format!("products[{n}].coeff"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let unit = file.unit.iter().enumerate().map(|(i, s)| scalar(field, s, &format!("unit[{i}]"))).collect::<Result<Vec<_>>>()?;
            let alg = crate::galg::GradedAlgebra::new(field, basis, &products, unit, file.window)?;
            let v: Vec<String> = validate_algebra(&alg).iter().map(|v| format!("{v:?}")).collect();
            let text = if v.is_empty() { format!("valid: dimension {}", alg.dim()) } else { format!("invalid:\n  {}", v.join("\n  ")) };
            Report::new(json!({ "valid": v.is_empty(), "dim": alg.dim(), "violations": v }), text).verdict(v.is_empty())
        }
        Command::Hh { algebra, p, q } => {
            let alg = io.json::<AlgebraFile>(algebra.as_ref(), "algebra")?.algebra()?;
            let (lo, hi) = range(p)?;
            if lo < 0 || hi < lo {
                return Err(Error::InvalidArgument(format!("bad arity range {p}")));
            }
            let cx = HochschildComplex::new(alg);
            let mut rows = Vec::new();
            let mut text = format!("{:>4} {:>4} {:>6}\n", "p", "q", "dim");
            for pp in lo as usize..=hi as usize {
                let d = cx.hh_dim(pp, *q)?;
                rows.push(json!({ "p": pp, "q": q, "dim": d }));
                text.push_str(&format!("{pp:>4} {q:>4} {d:>6}\n"));
            }
            Report::new(json!({ "groups": rows }), text.trim_end().to_string())
        }
        Command::Bracket { left, right } | Command::Cup { left, right } => {
            let l: CochainFile = io.json(Some(left), "cochain")?;
            let r: CochainFile = io.json(Some(right), "cochain")?;
            if l.algebra != r.algebra {
                return Err(Error::InvalidArgument("the cochains live on different algebras".into()));
            }
            let alg = l.algebra.algebra()?;
            let (a, b) = (l.cochain.cochain(&alg, "left")?, r.cochain.cochain(&alg, "right")?);
            let c = if matches!(cli.command, Command::Cup { .. }) { cup(&a, &b)? } else { bracket(&a, &b)? };
            cochain_report(l.algebra, &c)
        }
        Command::Square { cochain } | Command::Diff { cochain } => {
            let f: CochainFile = io.json(cochain.as_ref(), "cochain")?;
            let alg = f.algebra.algebra()?;
            let a = f.cochain.cochain(&alg, "cochain")?;
            let c = if matches!(cli.command, Command::Square { .. }) { square(&a)? } else { hochschild_differential(&a)? };
            cochain_report(f.algebra, &c)
        }
        Command::McCheck { structure, n } => {
            let s = io.json::<StructureFile>(structure.as_ref(), "structure")?.structure()?;
            let n = n.unwrap_or(s.max_arity() + 1);
            let fails = verify_upto(&s, n)?;
            let list: Vec<Value> = fails.iter().map(|f| json!({ "arity": f.arity, "witness": f.witness })).collect();
            let text = match fails.first() {
                None => format!("A-infinity equations hold through arity {n}"),
                Some(f) => format!("fails at arity {}: {}", f.arity, f.witness),
            };
            Report::new(json!({ "holds": fails.is_empty(), "through": n, "failures": list }), text).verdict(fails.is_empty())
        }
        Command::Massey { structure, d } => {
            let s = io.json::<StructureFile>(structure.as_ref(), "structure")?.structure()?;
            let cx = HochschildComplex::new(s.algebra().clone());
            let c = d_sparse_massey(&cx, &s, *d)?;
            Report::new(class_json(&c), class_text(&c))
        }
        Command::RestrictedMassey { structure, d } => {
            let s = io.json::<StructureFile>(structure.as_ref(), "structure")?.structure()?;
            let cx = HochschildComplex::new(s.algebra().clone());
            let r = restricted_massey(&cx, &s, *d)?;
            let zero = r.coords.iter().all(|c| c.is_zero());
            let text = format!("restricted class [{}]{}", strings(&r.coords).join(", "), if zero { " (zero)" } else { "" });
            Report::new(json!({ "p": d + 2, "coords": strings(&r.coords), "zero": zero }), text)
        }
        Command::Obstruction { structure, n } => {
            let s = io.json::<StructureFile>(structure.as_ref(), "structure")?.structure()?;
            let cx = HochschildComplex::new(s.algebra().clone());
            let ob = obstruction_class(&cx, &s, *n)?;
            Report::new(json!({ "N": n, "class": class_json(&ob.class) }), format!("obstruction to m_{n}: {}", class_text(&ob.class)))
        }
        Command::Extend { structure, n } => {
            let s = io.json::<StructureFile>(structure.as_ref(), "structure")?.structure()?;
            let cx = HochschildComplex::new(s.algebra().clone());
            match extend_step(&cx, &s, *n)? {
                Ok(t) => {
                    let mut r = Report::new(json!({ "extended": true, "N": n }), format!("solved for m_{n}"));
                    r.object = Some(serde_json::to_value(StructureFile::of(&t))?);
                    r
                }
                Err(c) => Report::new(json!({ "extended": false, "N": n, "class": class_json(&c) }), format!("obstructed: {}", class_text(&c)))
                    .verdict(false),
            }
        }
        Command::Gauge { structure, other, n } => {
            let a = io.json::<StructureFile>(Some(structure), "structure")?;
            let b = io.json::<StructureFile>(Some(other), "structure")?;
            if a.algebra != b.algebra {
                return Err(Error::InvalidArgument("the structures live on different algebras".into()));
            }
            let s1 = a.structure()?;
            let alg = s1.algebra().clone();
            let ops = b.ops.iter().enumerate().map(|(k, r)| r.cochain(&alg, &format!("ops[{k}]"))).collect::<Result<Vec<_>>>()?;
            let s2 = crate::ainfty::MinimalAInfty::new(alg.clone(), ops, b.max_arity)?;
            let cx = HochschildComplex::new(alg);
            match greedy_gauge_equiv(&cx, &s1, &s2, *n)? {
                GaugeVerdict::Equivalent(_) => {
                    Report::new(json!({ "verdict": "equivalent", "N": n }), format!("gauge equivalent through arity {n}"))
                }
                GaugeVerdict::Distinct { arity, left, right } => Report::new(
                    json!({ "verdict": "distinct", "arity": arity, "left": strings(&left), "right": strings(&right) }),
                    format!("distinct: the classes of m_{arity} differ"),
                )
                .verdict(false),
                GaugeVerdict::Unknown { arity } => {
                    let mut r = Report::new(json!({ "verdict": "unknown", "arity": arity }), format!("undecided at arity {arity}"));
                    r.code = 2;
                    r
                }
            }
        }
        Command::Transfer { dg, n, window, seed } => {
            let file: DGFile = io.json(dg.as_ref(), "dg algebra")?;
            let dga = file.dg()?;
            let range = match window {
                Some(w) => Some(range(w)?),
                None => file.range,
            };
            let choice = seed.map_or(Complements::Pivot, Complements::Random);
            let (h, hd) = cohomology_algebra(&dga, range, choice)?;
            let t = transfer_structure(&dga, &hd, &h, *n)?;
            let fails = verify_upto(&t.structure, *n)?;
            if let Some(f) = fails.first() {
                return Err(Error::NotAStructure(*n, f.arity));
            }
            let dims: Vec<(i64, usize)> = {
                let mut v: Vec<i64> = h.degrees().to_vec();
                v.dedup();
                v.into_iter().map(|q| (q, h.basis_in_degree(q).len())).collect()
            };
            let mut r = Report::new(
                json!({ "N": n, "cohomology": dims.iter().map(|(q, d)| json!({ "degree": q, "dim": d })).collect::<Vec<_>>() }),
                format!("transferred through arity {n}; cohomology dims {:?}", dims.iter().map(|x| x.1).collect::<Vec<_>>()),
            );
            r.object = Some(serde_json::to_value(StructureFile::of(&t.structure))?);
            r
        }
        Command::Formality { algebra, p } => {
            let alg = io.json::<AlgebraFile>(algebra.as_ref(), "algebra")?.algebra()?;
            let cx = HochschildComplex::new(alg);
            let rep = intrinsic_formality_check(&cx, *p)?;
            let verdict = rep.verdict()?;
            let groups: Vec<Value> = rep.groups.iter().map(|g| json!({ "p": g.0, "q": g.1, "dim": g.2 })).collect();
            let text = if verdict {
                "intrinsically formal".to_string()
            } else {
                format!("not intrinsically formal: nonzero {:?}", rep.nonzero())
            };
            Report::new(json!({ "formal": verdict, "groups": groups }), text).verdict(verdict)
        }
        Command::Frobenius { algebra } => {
            let alg = io.json::<AlgebraFile>(algebra.as_ref(), "algebra")?.algebra()?;
            let v = is_frobenius(&alg)?;
            let text = if v.frobenius { "Frobenius".to_string() } else { "not Frobenius".to_string() };
            Report::new(json!({ "frobenius": v.frobenius, "functional": v.functional.as_deref().map(strings) }), text)
                .verdict(v.frobenius)
        }
        Command::Laurent { algebra, d, max_power } => {
            let mut file: AlgebraFile = io.json(algebra.as_ref(), "algebra")?;
            let t = file.twisted_laurent(*d)?;
            let a = t.truncated(*max_power)?;
            file.laurent = Some(LaurentSpec { d: *d, max_power: *max_power });
            let mut r = Report::new(
                json!({ "d": d, "max_power": max_power, "dim": a.dim() }),
                format!("Λ[ı]/(ı^{}) with |ı| = -{d}: dimension {}", max_power + 1, a.dim()),
            );
            r.object = Some(serde_json::to_value(file)?);
            r
        }
        Command::Syzygy { algebra, n } => {
            let file: AlgebraFile = io.json(algebra.as_ref(), "algebra")?;
            let input = split_basic(&file)?;
            let r = input.idempotents().len();
            let stages = minimal_syzygies(&input, *n)?;
            let mut text = String::new();
            let dump: Vec<Value> = stages
                .iter()
                .map(|s| {
                    text.push_str(&format!(
                        "stage {}: P = {:?}, dim Ω^{} = {}\n",
                        s.n,
                        s.projective.multiplicities(r),
                        s.n,
                        s.syzygy.dim()
                    ));
                    json!({
                        "n": s.n,
                        "multiplicities": s.projective.multiplicities(r),
                        "syzygy_dim": s.syzygy.dim(),
                        "differential": matrix_rows(&s.differential),
                    })
                })
                .collect();
            Report::new(json!({ "stages": dump }), text.trim_end().to_string())
        }
        Command::Daic { algebra, d, eta, rep } => {
            let file: AlgebraFile = io.json(algebra.as_ref(), "algebra")?;
            let input = split_basic(&file)?;
            let target = DaicTarget::Laurent(file.twisted_laurent(*d)?);
            let m = crate::bimres::daic_target_module(&input, &target, *d)?;
            let p = usize::try_from(*d + 2).map_err(|_| Error::InvalidArgument("d must be positive".into()))?;
            let cocycle: SparseVec = match (eta, rep) {
                (Some(path), _) => {
                    let raw: Vec<(usize, String)> = io.json(Some(path), "eta")?;
                    parse_sparse(input.field(), &raw, "eta")?
                }
                (None, Some(k)) => {
                    let cx = BimoduleHochschild::new(m)?;
                    let g = cx.ext(p)?;
                    g.reps.get(*k).cloned().ok_or_else(|| {
                        Error::InvalidArgument(format!("HH^{p} has only {} class representatives", g.reps.len()))
                    })?
                }
                (None, None) => Vec::new(),
            };
            let v = daic_criterion(&input, &target, *d, &cocycle)?;
            let text = format!(
                "{}: dim Ω^{p} = {}, dim target = {}",
                if v.holds { "represents a stable isomorphism" } else { "does not represent a stable isomorphism" },
                v.syzygy_dim,
                v.target_dim
            );
            Report::new(
                json!({ "holds": v.holds, "syzygy_dim": v.syzygy_dim, "target_dim": v.target_dim, "map": v.map.as_ref().map(matrix_rows) }),
                text,
            )
            .verdict(v.holds)
        }
        Command::Zoo { family, ell, window, n, prime } => {
            let field = match prime {
                Some(p) => Field::prime(*p)?,
                None => Field::Rational,
            };
            let (object, text) = match family.as_str() {
                "trunc-poly" => {
                    let dg = truncated_polynomial_rhom(*ell, *window, field)?;
                    let mut f = DGFile::of(&dg)?;
                    f.range = Some(rhom_cohomology_range(*window));
                    (serde_json::to_value(f)?, format!("dg model of RHom(k, k) over k[x]/(x^{ell}), degrees 0..{window}"))
                }
                "ell-model" => {
                    let s = minimal_ell_model(field, *ell, *window, n.unwrap_or(ell + 1))?;
                    (serde_json::to_value(StructureFile::of(&s))?, format!("minimal model with m_{ell} on k[e,t]/(e^2)"))
                }
                "eps-t" => (serde_json::to_value(AlgebraFile::from_algebra(&build::epsilon_t(field, *window)))?, "k[e,t]/(e^2)".into()),
                "poly" => {
                    let mut f = AlgebraFile::from_algebra(&build::truncated_polynomial(field, *ell, 0));
                    f.flags.basic = true;
                    (serde_json::to_value(f)?, format!("k[x]/(x^{ell})"))
                }
                "ground" => {
                    let mut f = AlgebraFile::from_algebra(&build::ground(field));
                    f.flags.basic = true;
                    (serde_json::to_value(f)?, "k".into())
                }
                other => return Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
            };
            let mut r = Report::new(json!({ "family": family }), text);
            r.object = Some(object);
            r
        }
    })
}

fn cochain_report(algebra: AlgebraFile, c: &crate::hochschild::Cochain) -> Report {
    let rec = CochainRecord::of(c);
    let mut r = Report::new(
        json!({ "arity": c.arity(), "degree": c.degree(), "zero": c.is_zero() }),
        format!("cochain of bidegree ({}, {}){}", c.arity(), c.degree(), if c.is_zero() { ", zero" } else { "" }),
    );
    r.object = Some(serde_json::to_value(CochainFile { algebra, cochain: rec }).expect("serializable"));
    r
}

/// Parses arguments (including the program name) and runs one command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(t) = cli.threads {
        // a pool may already exist when several commands run in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut io = Io { stdin, used_stdin: false };
    match execute(&cli, &mut io) {
        Err(e) => {
            let stdout = match cli.format {
                Format::Machine => format!("{}\n", json!({ "error": e.to_string() })),
                Format::Text => String::new(),
            };
            Outcome { code: 2, stdout, stderr: format!("error: {e}\n") }
        }
        Ok(rep) => {
            let mut stdout = String::new();
            let mut stderr = String::new();
            let summary = match cli.format {
                Format::Machine => format!("{}\n", serde_json::to_string(&rep.value).expect("serializable")),
                Format::Text => format!("{}\n", rep.text),
            };
            match (&rep.object, &cli.output) {
                (Some(obj), Some(path)) => {
                    let body = serde_json::to_string_pretty(obj).expect("serializable");
                    if let Err(e) = std::fs::write(path, body + "\n") {
                        return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") };
                    }
                    stdout.push_str(&summary);
                }
                (Some(obj), None) => {
                    stdout.push_str(&serde_json::to_string_pretty(obj).expect("serializable"));
                    stdout.push('\n');
                    stderr.push_str(&summary);
                }
                (None, _) => stdout.push_str(&summary),
            }
            Outcome { code: rep.code, stdout, stderr }
        }
    }
}
