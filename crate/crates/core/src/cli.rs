//! Batch command-line front end.
//!
//! Every subcommand prints one JSON document (or key/value TSV with
//! `--tsv`). Exit codes: 0 success, 2 failed precondition, 3 failed
//! verification, 4 parse error. `ADDBASIS_THREADS` sets the worker count.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abgroup::Subgroup;
use crate::basis::{
    bound_audit, erdos_graham, essential_subsets, lemma_nn_audit, ord_star, removal_order,
    twobases_audit, witness_search, x1_cap, x2_cap, Budget, Target,
};
use crate::density::{density_lemma_audit, natural_density};
use crate::error::{Error, Result};
use crate::fpt::fpt_verify;
use crate::perset::literal::{parse, parse_in};
use crate::perset::PeriodicSet;
use crate::structure::{grothendieck, structure_decompose, validate_semigroup, SemigroupT};
use crate::verify::criteria::{run_all, run_criterion};

#[derive(Parser, Debug)]
#[command(
    name = "addbasis",
    version,
    about = "Exact computations with additive bases"
)]
pub struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Emit tab-separated key/value lines.
    #[arg(long, global = true)]
    pub tsv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SemigroupArg {
    /// The semigroup T as a set literal, e.g. "0+1N" or "C=2; (*)0+1N".
    #[arg(long = "T")]
    pub t: String,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    #[command(flatten)]
    pub t: SemigroupArg,
    /// The set A.
    #[arg(long = "A")]
    pub a: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis verdict and order ord*(A).
    Order(BasisArgs),
    /// A + B, or hA when --B is absent.
    Sumset {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: Option<String>,
        #[arg(long, default_value_t = 2)]
        h: u32,
    },
    /// Reservoir and essential subsets up to size kmax.
    Essential {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
    /// Whether A minus the finite set F still has differences spanning G.
    Regular {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long = "F")]
        f: String,
    },
    /// Order of A minus the finite set F.
    Remove {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long = "F")]
        f: String,
    },
    /// Structure decomposition T = R + xN up to finitely many elements.
    Classify(SemigroupArg),
    /// The group generated by T.
    Grothendieck(SemigroupArg),
    /// Natural density of S relative to T.
    Density {
        #[command(flatten)]
        t: SemigroupArg,
        #[arg(long = "S")]
        s: String,
    },
    /// Bound and lemma audits.
    Audit {
        #[command(subcommand)]
        kind: AuditKind,
    },
    /// Witness search for many essentials (E) or large removal orders (X).
    Search {
        #[arg(value_enum, ignore_case = true)]
        target: SearchTarget,
        #[command(flatten)]
        t: SemigroupArg,
        #[arg(long)]
        h: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        p_max: usize,
        #[arg(long, default_value_t = 12)]
        w_max: usize,
        #[arg(long, default_value_t = 4096)]
        cutoff: u64,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Essential hyperplane complements of the graded basis of F_p[t].
    FptVerify {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        h: usize,
        #[arg(long = "D")]
        d: usize,
    },
    /// Runs the acceptance suite.
    VerifyPaper {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AuditKind {
    /// h1 + 1 ⩽ ord*(F ∪ B) ⩽ h1 + h2.
    Twobases {
        #[command(flatten)]
        t: SemigroupArg,
        #[arg(long = "F")]
        f: String,
        #[arg(long = "B")]
        b_set: String,
        /// The base point b ∈ B, as an integer (or "c1,...,n" with torsion).
        #[arg(long = "b")]
        b: String,
    },
    /// B − b is a basis of T ∩ ⟨B − B⟩.
    Nn {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long = "F")]
        f: String,
    },
    /// Singleton removals: elements with order above 2h.
    S1 {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, default_value_t = 2)]
        tail_samples: usize,
    },
    /// Pair removals against twice the largest singleton order.
    S2 {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, default_value_t = 2)]
        tail_samples: usize,
    },
    /// Singleton removal cap, with an audit when --T and --A are given.
    X1 {
        #[arg(long)]
        h: u32,
        #[arg(long = "T", requires = "a")]
        t: Option<String>,
        #[arg(long = "A")]
        a: Option<String>,
    },
    /// Removal cap for sets of size k.
    X2 {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u32,
        #[arg(long = "T", requires = "a")]
        t: Option<String>,
        #[arg(long = "A")]
        a: Option<String>,
    },
    /// Random instances of each density lemma.
    DensityLemmas {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SearchTarget {
    E,
    X,
}

/// A command's output and whether its check (if any) succeeded.
pub struct Output {
    pub value: Value,
    pub ok: bool,
}

fn done(v: impl Serialize) -> Result<Output> {
    Ok(Output {
        value: serde_json::to_value(v).expect("serializable"),
        ok: true,
    })
}

fn checked(v: impl Serialize, ok: bool) -> Result<Output> {
    Ok(Output {
        value: serde_json::to_value(v).expect("serializable"),
        ok,
    })
}

fn semigroup(arg: &SemigroupArg) -> Result<SemigroupT> {
    validate_semigroup(&parse(&arg.t)?)
}

fn set_in(t: &SemigroupT, text: &str) -> Result<PeriodicSet> {
    parse_in(text, Some(t.ambient()))
}

fn basis(args: &BasisArgs) -> Result<(SemigroupT, PeriodicSet)> {
    let t = semigroup(&args.t)?;
    let a = set_in(&t, &args.a)?;
    Ok((t, a))
}

fn audit_pair(
    h: u32,
    t: &Option<String>,
    a: &Option<String>,
    k: usize,
) -> Result<Option<crate::basis::RemovalStudy>> {
    match (t, a) {
        (Some(t), Some(a)) => {
            let args = BasisArgs {
                t: SemigroupArg { t: t.clone() },
                a: a.clone(),
            };
            let (t, a) = basis(&args)?;
            let study = bound_audit(&a, &t, k, 2)?;
            if study.h > h {
                return Err(Error::precondition(
                    "ord*(A) ⩽ h",
                    format!("ord*(A) = {}", study.h),
                ));
            }
            Ok(Some(study))
        }
        _ => Ok(None),
    }
}

fn audit(kind: &AuditKind) -> Result<Output> {
    match kind {
        AuditKind::Twobases { t, f, b_set, b } => {
            let t = semigroup(t)?;
            let f = set_in(&t, f)?;
            let bs = set_in(&t, b_set)?;
            let coords: Vec<i64> = b
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse {
                    position: 0,
                    message: format!("base point: {e}"),
                })?;
            let (n, torsion) = coords.split_last().ok_or(Error::Parse {
                position: 0,
                message: "empty base point".into(),
            })?;
            let b = t.ambient().element(torsion, *n)?;
            let r = twobases_audit(&f, &bs, &b, &t)?;
            checked(&r, r.ok)
        }
        AuditKind::Nn { basis: args, f } => {
            let (t, a) = basis(args)?;
            let r = lemma_nn_audit(&a, &set_in(&t, f)?, &t)?;
            checked(&r, r.holds)
        }
        AuditKind::S1 {
            basis: args,
            tail_samples,
        }
        | AuditKind::S2 {
            basis: args,
            tail_samples,
        } => {
            let (t, a) = basis(args)?;
            let k = if matches!(kind, AuditKind::S1 { .. }) {
                1
            } else {
                2
            };
            let s = bound_audit(&a, &t, k, *tail_samples)?;
            let ok = s.violations.is_empty();
            checked(&s, ok)
        }
        AuditKind::X1 { h, t, a } => {
            let study = audit_pair(*h, t, a, 1)?;
            let ok = study.as_ref().is_none_or(|s| s.violations.is_empty());
            checked(
                json!({ "h": h, "cap": x1_cap(*h).to_string(), "audit": study }),
                ok,
            )
        }
        AuditKind::X2 { h, k, t, a } => {
            let study = audit_pair(*h, t, a, *k as usize)?;
            let ok = study.as_ref().is_none_or(|s| s.violations.is_empty());
            checked(
                json!({ "h": h, "k": k, "cap": x2_cap(*h, *k).to_string(), "audit": study }),
                ok,
            )
        }
        AuditKind::DensityLemmas { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let out = density_lemma_audit(&mut rng, *count)?;
            let ok = out.iter().all(|s| s.failures.is_empty());
            checked(&out, ok)
        }
    }
}

pub fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Order(args) => {
            let (t, a) = basis(args)?;
            done(ord_star(&a, &t)?)
        }
        Command::Sumset { a, b, h } => {
            let a = parse(a)?;
            let s = match b {
                Some(b) => a.minkowski_sum(&parse_in(b, Some(a.ambient()))?)?,
                None => a.h_fold(*h)?,
            };
            done(json!({ "set": s.to_string() }))
        }
        Command::Essential { basis: args, kmax } => {
            let (t, a) = basis(args)?;
            done(essential_subsets(&a, &t, *kmax)?)
        }
        Command::Regular { basis: args, f } => {
            let (t, a) = basis(args)?;
            let f = set_in(&t, f)?;
            let regular = erdos_graham(&a, &f, &t)?;
            let rest = a.difference(&f)?;
            let h = if rest.is_empty() {
                Subgroup::trivial(t.ambient())
            } else {
                Subgroup::differences_of(&rest)?
            };
            done(json!({
                "regular": regular,
                "subgroup": h,
                "index": h.index().map(|i| i.to_string()),
            }))
        }
        Command::Remove { basis: args, f } => {
            let (t, a) = basis(args)?;
            let f = set_in(&t, f)?;
            let out = removal_order(&a, &f, &t)?;
            let rest = a.difference(&f)?;
            done(
                json!({ "remainder": rest.to_string(), "regular": out.regular, "order": out.order }),
            )
        }
        Command::Classify(t) => done(structure_decompose(&semigroup(t)?)?),
        Command::Grothendieck(t) => {
            let g = grothendieck(&semigroup(t)?)?;
            done(json!({ "group": g, "quotient": g.quotient() }))
        }
        Command::Density { t, s } => {
            let t = semigroup(t)?;
            done(natural_density(&set_in(&t, s)?, &t)?)
        }
        Command::Audit { kind } => audit(kind),
        Command::Search {
            target,
            t,
            h,
            k,
            p_max,
            w_max,
            cutoff,
            samples,
            seed,
        } => {
            let t = semigroup(t)?;
            let budget = Budget {
                p_max: *p_max,
                w_max: *w_max,
                exhaustive_cutoff: *cutoff,
                random_samples: *samples,
                seed: *seed,
                ..Budget::default()
            };
            let target = match target {
                SearchTarget::E => Target::E,
                SearchTarget::X => Target::X,
            };
            let r = witness_search(&t, *h, *k, budget, target)?;
            let ok = r.grekos_violations.is_empty() && r.x_bound_violations.is_empty();
            checked(&r, ok)
        }
        Command::FptVerify { p, r, h, d } => {
            let rep = fpt_verify(*p, *r, *h, *d)?;
            let ok = rep.stable && rep.brute_force_agrees != Some(false) && rep.order.failures == 0;
            checked(&rep, ok)
        }
        Command::VerifyPaper { seed, only } => {
            let results = match only {
                Some(id) => vec![run_criterion(*id, *seed)],
                None => run_all(*seed),
            };
            let ok = results.iter().all(|r| r.passed);
            checked(&results, ok)
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Top-level fields as `key<TAB>value`; arrays of objects become a header
/// row and one row per element.
pub fn to_tsv(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                out += &format!("{k}\t{}\n", scalar(x));
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            out += &keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join("\t");
            out.push('\n');
            for r in rows {
                let cells: Vec<String> = keys.iter().map(|k| scalar(&r[k.as_str()])).collect();
                out += &cells.join("\t");
                out.push('\n');
            }
        }
        other => out += &format!("{}\n", scalar(other)),
    }
    out
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 4,
        Error::Certification(_) => 3,
        _ => 2,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ADDBASIS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses arguments, runs the command, prints the result and returns the
/// process exit code.
pub fn main() -> i32 {
    configure_threads();
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(out) => {
            if cli.tsv {
                print!("{}", to_tsv(&out.value));
            } else {
                println!("{}", out.value);
            }
            if out.ok {
                0
            } else {
                3
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
