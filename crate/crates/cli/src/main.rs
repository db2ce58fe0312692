//! `redux`: build, check and reduce with reduction structures and marked sets.
//!
//! Exit codes: 0 pass or success, 1 fail verdict, 2 invalid input,
//! 3 step budget exhausted.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use redux::builders::{build, BorderOrder, BuilderKind, BuilderSpec};
use redux::coeff::Coefficient;
use redux::io;
use redux::marked::{
    confluence_test, family_equations, marked_basis_test, useful_pairs, BasisMethod, ConfluenceMethod, PairMethod,
    Strategy, DEFAULT_BUDGET,
};
use redux::monomial::infer_vars;
use redux::weights::{find_consistent_weight, Consistency};
use redux::{Error, MarkedSet, Mode, Polynomial, ReductionStructure, Status, TermOrder, Vars};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "redux", version, about = "Reduction structures and marked bases over the rationals")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Step budget for reductions; overrides REDUX_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check head distinctness, tails outside cones and cone coverage.
    Validate {
        file: PathBuf,
        /// Decide coverage exactly (default).
        #[arg(long, conflicts_with = "bound")]
        exact: bool,
        /// Enumerate up to this degree instead.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Report structural properties, optionally against a term order.
    Classify {
        file: PathBuf,
        #[arg(long)]
        order: Option<String>,
    },
    /// Build a reduction structure from a monomial ideal.
    Build(BuildArgs),
    /// Fully reduce a polynomial by a marked set.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// first-match, max-phi or random.
        #[arg(long, default_value = "first-match")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Classify the S-pairs of a marked set.
    Pairs {
        file: PathBuf,
        /// cone-filter or buchberger.
        #[arg(long, default_value = "buchberger")]
        method: String,
    },
    /// Decide whether a marked set is a marked basis.
    Basis {
        file: PathBuf,
        /// auto, spoly, stable or degree-bound.
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Decide whether the reduction of a marked set is confluent.
    Confluence {
        file: PathBuf,
        /// auto, disjoint, spoly or degree-bound.
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Search for a positive weight consistent with every head and tail.
    Weights { file: PathBuf },
    /// Equations on the tail coefficients cutting out the marked bases.
    Family {
        file: PathBuf,
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// groebner, groebner-reduced, staggered, janet, janet-like, pommaret, pommaret-free or border.
    kind: String,
    /// Comma-separated generators, e.g. "x^3,x*y,y^2".
    #[arg(long)]
    ideal: String,
    /// Comma-separated variable names, largest last; inferred when omitted.
    #[arg(long)]
    vars: Option<String>,
    #[arg(long, default_value = "deglex")]
    order: String,
    /// Term order or degree-then-input.
    #[arg(long, default_value = "lex")]
    border_order: String,
    /// Maximum tail degree for orders that do not compare degree first.
    #[arg(long)]
    tail_cap: Option<u32>,
    /// Fail instead of completing generators that are not complete.
    #[arg(long)]
    no_complete: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(Error),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            e => Failure::Input(e),
        }
    }
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Pass | Status::BoundedPass => 0,
        Status::Fail => 1,
        Status::BudgetExceeded => 3,
    }
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("REDUX_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(Error::Parse(format!("REDUX_BUDGET must be a natural number, got {s:?}")))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// A structure document, or the structure of a marked-set document.
fn load_structure(path: &Path) -> Result<ReductionStructure, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let v = io::parse_json(&text)?;
    if v.get("structure").is_some() {
        Ok(io::marked_set_from_json(&v, path.parent())?.structure().clone())
    } else {
        io::structure_from_json(&v)
    }
}

fn load_marked(path: &Path) -> Result<MarkedSet, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let v = io::parse_json(&text)?;
    if v.get("structure").is_some() {
        io::marked_set_from_json(&v, path.parent())
    } else {
        Ok(MarkedSet::monomial(io::structure_from_json(&v)?))
    }
}

fn run_build(args: &BuildArgs) -> Result<(Value, u8), Failure> {
    let kind = BuilderKind::parse(&args.kind)?;
    let vars = match &args.vars {
        Some(v) => Vars::new(v.split(',').map(|s| s.trim().to_string()).collect())?,
        None => infer_vars(args.ideal.split(','))?,
    };
    let mut spec = BuilderSpec::new(kind, vars.clone(), vars.parse_terms(&args.ideal)?)
        .with_order(TermOrder::parse(&args.order)?)
        .with_border_order(BorderOrder::parse(&args.border_order)?);
    spec.tail_cap = args.tail_cap;
    spec.complete = !args.no_complete;
    let rs = build(&spec)?;
    let doc = io::write_structure(&rs);
    match &args.output {
        Some(path) => {
            std::fs::write(path, &doc)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            Ok((json!({"output": path.display().to_string(), "entries": rs.len()}), 0))
        }
        None => {
            print!("{doc}");
            Ok((Value::Null, 0))
        }
    }
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    match &cli.command {
        Command::Validate { file, bound, .. } => {
            let rs = load_structure(file)?;
            let mode = bound.map_or(Mode::Exact, Mode::Bounded);
            let v = rs.validate(mode);
            Ok((report::verdict(rs.vars(), &v), exit_for(v.status)))
        }
        Command::Classify { file, order } => {
            let rs = load_structure(file)?;
            let order = order.as_deref().map(TermOrder::parse).transpose()?;
            let c = rs.classify(order.as_ref());
            Ok((report::classification(rs.vars(), &rs.heads(), &c), 0))
        }
        Command::Build(args) => run_build(args),
        Command::Reduce { file, poly, strategy, seed, trace } => {
            let ms = load_marked(file)?;
            let vars = ms.structure().vars().clone();
            let g = Polynomial::parse(&vars, poly)?;
            let strategy = match strategy.as_str() {
                "first-match" => Strategy::FirstMatch,
                "random" => Strategy::Random(*seed),
                "max-phi" => {
                    let cert = ms.structure().noetherian_certificate().ok_or_else(|| {
                        Error::MissingCertificate("max-phi needs a verified ordering certificate".into())
                    })?;
                    Strategy::MaxPhi(cert.function.clone())
                }
                s => return Err(Error::Parse(format!("unknown strategy {s:?}")).into()),
            };
            let budget = budget(cli.budget)?;
            let mut out = json!({
                "strategy": strategy.name(),
                "seed": seed,
                "budget": budget,
                "input": report::poly_text(&vars, &g),
            });
            let m = out.as_object_mut().unwrap();
            match ms.reduce(&g, &strategy, budget) {
                Ok(t) => {
                    m.insert("status".into(), json!("reduced"));
                    m.insert("steps".into(), json!(t.steps.len()));
                    m.insert("remainder".into(), report::remainder(&vars, &t.remainder));
                    if *trace {
                        m.insert("trace".into(), report::trace(&vars, &t));
                    }
                    Ok((out, 0))
                }
                Err(x) => {
                    m.insert("status".into(), json!(Status::BudgetExceeded.as_str()));
                    m.insert("steps".into(), json!(x.steps));
                    m.insert("current".into(), report::poly_text(&vars, &x.current));
                    Ok((out, 3))
                }
            }
        }
        Command::Pairs { file, method } => {
            let ms = load_marked(file)?;
            let method = PairMethod::parse(method).ok_or_else(|| Error::Parse(format!("unknown pair method {method:?}")))?;
            let rs = ms.structure();
            Ok((report::pairs(rs.vars(), &rs.heads(), &useful_pairs(rs, method)), 0))
        }
        Command::Basis { file, method, bound } => {
            let ms = load_marked(file)?;
            let out = marked_basis_test(&ms, BasisMethod::parse(method, *bound)?, budget(cli.budget)?)?;
            let vars = ms.structure().vars();
            let mut doc = json!({"basis": report::verdict(vars, &out.basis)});
            if let Some(c) = &out.confluence {
                doc.as_object_mut().unwrap().insert("confluence".into(), report::verdict(vars, c));
            }
            Ok((doc, exit_for(out.basis.status)))
        }
        Command::Confluence { file, method, bound } => {
            let ms = load_marked(file)?;
            let v = confluence_test(&ms, ConfluenceMethod::parse(method, *bound)?, budget(cli.budget)?)?;
            Ok((report::verdict(ms.structure().vars(), &v), exit_for(v.status)))
        }
        Command::Weights { file } => {
            let rs = load_structure(file)?;
            Ok(match find_consistent_weight(&rs) {
                Consistency::Weight(w) => {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    (json!({"consistent": true, "weight": w}), 0)
                }
                Consistency::Cycle(c) => (json!({"consistent": false, "cycle": c.format(rs.vars())}), 1),
            })
        }
        Command::Family { file, bound } => {
            let rs = load_structure(file)?;
            let fam = family_equations(&rs, *bound, budget(cli.budget)?)?;
            let eqs: Vec<String> = fam.equations.iter().map(|e| e.to_text(&fam.names)).collect();
            Ok((
                json!({"strategy": fam.strategy, "bound": fam.bound, "params": fam.names, "equations": eqs}),
                0,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            if !out.is_null() {
                let text = if cli.pretty { serde_json::to_string_pretty(&out) } else { serde_json::to_string(&out) };
                println!("{}", text.expect("JSON values always serialize"));
            }
            ExitCode::from(code)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
