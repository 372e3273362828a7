use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use bchlab::analysis::{bch_bound, distance_direct, distance_via_dual, is_dually_bch, Certificate};
use bchlab::codes::{CodeSpec, Family, LinearCodeModel};
use bchlab::cyclotomic::LeaderCache;
use bchlab::formulas::dually_bch_condition;
use bchlab::harness::{emit_report, evaluate_formula, run_suite, suite_ids, GridConfig, ReportFormat, DEFAULT_BUDGET, FORMULAS};
use bchlab::{Error, ExtensionField, PrimePower};

#[derive(Parser)]
#[command(name = "bchlab", version, about = "Cyclic and negacyclic BCH codes of length (q^m-1)/2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters and the canonical primitive modulus
    Field {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Also print the modulus as a polynomial
        #[arg(long)]
        print_modulus: bool,
    },
    /// Coset leaders and orbit sizes modulo N (disk cache in $BCHLAB_CACHE)
    Cosets {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        odd_only: bool,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build C_(n,lambda,delta,b) and print its parameters
    Code {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        print_gen: bool,
    },
    /// Exact weight enumerator and minimum distance
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Enumerate the dual and apply the MacWilliams transform
        #[arg(long)]
        via_dual: bool,
    },
    /// Whether C_(n,1,delta,2) is dually-BCH, by search and by the closed form
    Dualcheck {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u64,
    },
    /// Evaluate a closed form
    Formula {
        #[arg(long, required_unless_present = "list")]
        id: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long = "delta-a")]
        delta_a: Option<u64>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
        q_set: Vec<u64>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// neg or cyc
    #[arg(long)]
    family: Family,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value_t = 0)]
    b: u64,
}

impl CodeArgs {
    fn build(&self) -> Result<LinearCodeModel, Error> {
        let field = Arc::new(ExtensionField::from_q(self.q, self.m)?);
        let n = (field.size() - 1) / 2;
        LinearCodeModel::bch(field, CodeSpec::new(n, self.family, self.delta, self.b)?)
    }
}

/// A failed run versus bad input: exit 1 against exit 2.
enum Failure {
    Checks,
    Usage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn poly_text(coeffs_low_first: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs_low_first.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    terms.join(" + ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Field { q, m, print_modulus } => {
            let base = PrimePower::from_q(q)?;
            let field = ExtensionField::new(base, m)?;
            let modulus = field.modulus();
            let mut out = json!({
                "p": base.p(),
                "e": base.e(),
                "D": field.degree(),
                "modulus": modulus.iter().rev().collect::<Vec<_>>(),
                "alphaOrder": field.alpha_order(),
            });
            if print_modulus {
                out["modulusPolynomial"] = Value::String(poly_text(modulus));
            }
            print_json(&out);
        }
        Command::Cosets {
            modulus,
            q,
            odd_only,
            json: _,
            csv,
            budget,
        } => {
            let table = LeaderCache::from_env().get(modulus, q, budget)?;
            let rows: Vec<(u64, u32)> = table
                .leaders
                .iter()
                .zip(&table.sizes)
                .filter(|(t, _)| !odd_only || *t % 2 == 1)
                .map(|(&t, &s)| (t, s))
                .collect();
            if csv {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                w.write_record(["leader", "size"]).map_err(Error::from)?;
                for (t, s) in rows {
                    w.write_record([t.to_string(), s.to_string()]).map_err(Error::from)?;
                }
                w.flush().map_err(Error::from)?;
            } else {
                print_json(&json!({
                    "modulus": modulus,
                    "q": q,
                    "leaders": rows.iter().map(|&(t, s)| json!({"leader": t, "size": s})).collect::<Vec<_>>(),
                }));
            }
        }
        Command::Code { code, print_gen } => {
            let model = code.build()?;
            let mut out = json!({
                "code": model.describe(),
                "n": model.n(),
                "k": model.k(),
                "definingSetSize": model.defining_set().len(),
                "bchBound": bch_bound(model.defining_set()).min(model.n() + 1),
            });
            if print_gen {
                out["generator"] = json!(model.generator().coeffs());
            }
            print_json(&out);
        }
        Command::Weights { code, budget, via_dual } => {
            let model = code.build()?;
            let r = if via_dual {
                distance_via_dual(&model, budget)?
            } else {
                distance_direct(&model, budget)?
            };
            let weights: BTreeMap<String, Value> = r
                .enumerator
                .as_ref()
                .map(|w| {
                    w.nonzero()
                        .into_iter()
                        .map(|(k, v)| (k.to_string(), v.to_u64().map_or_else(|| v.to_string().into(), Value::from)))
                        .collect()
                })
                .unwrap_or_default();
            let certificate = match r.certificate {
                Certificate::ExactDirect => "exact-direct",
                Certificate::ExactViaDual => "exact-via-dual",
                Certificate::LowerBoundOnly => "lower-bound-only",
            };
            print_json(&json!({"n": model.n(), "k": model.k(), "weights": weights, "d": r.d, "certificate": certificate}));
        }
        Command::Dualcheck { q, m, delta } => {
            let field = Arc::new(ExtensionField::from_q(q, m)?);
            let n = (field.size() - 1) / 2;
            let model = LinearCodeModel::bch(field, CodeSpec::cyclic(n, delta, 2)?)?;
            let witness = is_dually_bch(&model)?;
            let predicted = dually_bch_condition(q, m, delta).ok();
            print_json(&json!({
                "code": model.describe(),
                "duallyBCH": witness.is_some(),
                "witness": witness.map(|(b, d)| json!({"b": b, "delta": d})),
                "closedForm": predicted,
            }));
        }
        Command::Formula {
            id,
            list,
            q,
            m,
            a,
            b,
            i,
            k,
            delta,
            delta_a,
        } => {
            if list {
                for (id, args, what) in FORMULAS {
                    println!("{id:<20} {args:<14} {what}");
                }
                return Ok(());
            }
            let args: BTreeMap<String, u64> = [
                ("q", q),
                ("m", m),
                ("a", a),
                ("b", b),
                ("i", i),
                ("k", k),
                ("delta", delta),
                ("deltaA", delta_a),
            ]
            .into_iter()
            .filter_map(|(name, v)| v.map(|v| (name.to_string(), v)))
            .collect();
            let v = evaluate_formula(id.as_deref().unwrap_or_default(), &args)?;
            print_json(&v);
        }
        Command::Verify {
            suite,
            q_set,
            m_max,
            budget,
            format,
            out,
        } => {
            if !suite_ids().contains(&suite) {
                return Err(Error::UnknownSuite(format!("{suite} (known: {})", suite_ids().join(", "))).into());
            }
            let format: ReportFormat = format.parse()?;
            let config = GridConfig {
                q_set,
                m_max,
                budget,
                cache_dir: Some(LeaderCache::from_env().dir().to_path_buf()),
            };
            let report = run_suite(&suite, &config)?;
            let bytes = emit_report(&report, format)?;
            match out {
                Some(path) => std::fs::write(path, &bytes).map_err(Error::from)?,
                None => std::io::stdout().write_all(&bytes).map_err(Error::from)?,
            }
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
