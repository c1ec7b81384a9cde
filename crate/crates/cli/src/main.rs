use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ifg::algebra::{label, Element};
use ifg::calc::Calculator;
use ifg::enumeration::{count_table, dsuit_carrier};
use ifg::model::{Space, Structure, Team};
use ifg::semantics::{meaning_with, sentence_status_with, Evaluator, Limits};
use ifg::syntax::{parse, Formula};
use ifg::theorems::{run_suite, verify_all, VerificationReport, DEFAULT_SEED, DEFAULT_TRIALS};
use ifg::ualg::{
    enumerate_subuniverses, generate_subuniverse, is_simple, principal_congruence, FiniteAlgebra,
    Signature,
};
use ifg::Error;

#[derive(Parser, Debug)]
#[command(
    name = "ifg",
    version,
    about = "Trump semantics and IFG-cylindric set algebras"
)]
struct Cli {
    /// Builtin structure size (`1`..`16`) or path to a structure JSON file.
    #[arg(long, global = true, default_value = "2")]
    structure: String,

    /// Number of variables N.
    #[arg(long, global = true)]
    vars: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of valuations m^N a semantic computation may use.
    #[arg(long, global = true)]
    guard: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse { formula: String },
    /// Decide whether a team is a trump and whether it is a cotrump.
    Eval {
        formula: String,
        #[arg(long)]
        team: String,
    },
    /// Print the meaning of a formula.
    Meaning { formula: String },
    /// Print whether a sentence is true, false or undetermined.
    Status { formula: String },
    /// Evaluate an algebra expression.
    Algebra { expr: String },
    /// Count suits and double suits over one variable.
    CountSuits {
        #[arg(long, default_value_t = 4)]
        max_m: usize,
    },
    /// List the subuniverses of the double-suit algebra, or of the
    /// subalgebra generated by `--gen` expressions.
    Subalgebras {
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Principal congruence generated by a pair of elements.
    Congruence {
        x: String,
        y: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
}

enum Failure {
    Error(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn limits(cli: &Cli) -> Limits {
    match cli.guard {
        Some(g) => Limits {
            meaning: g,
            eval: g,
        },
        None => Limits::default(),
    }
}

fn formula(cli: &Cli, text: &str) -> Result<Formula, Error> {
    parse(text, cli.vars)
}

fn structure(cli: &Cli) -> Result<Structure, Error> {
    Structure::load(&cli.structure)
}

fn calculator(cli: &Cli) -> Result<Calculator, Error> {
    let a = structure(cli)?;
    let vars = cli.vars.unwrap_or(1);
    if let Some(g) = cli.guard {
        let size = Space::new(a.universe(), vars)?.size();
        if size > g {
            return Err(Error::Guard(format!(
                "{size} valuations exceeds --guard {g}"
            )));
        }
    }
    Calculator::with_structure(a, vars)
}

/// The double-suit algebra of the calculator's space, or the subalgebra
/// generated by the given expressions.
fn algebra(calc: &Calculator, generators: &[String]) -> Result<FiniteAlgebra, Error> {
    let space = calc.space();
    let sig = Signature::new(space);
    if generators.is_empty() {
        FiniteAlgebra::new(dsuit_carrier(space.base(), space.vars())?, sig)
    } else {
        let gens = generators
            .iter()
            .map(|g| calc.eval(g))
            .collect::<Result<Vec<Element>, Error>>()?;
        generate_subuniverse(&gens, &sig)
    }
}

fn labels(alg: &FiniteAlgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| alg.label(i)).collect()
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let text = cli.format == Format::Text;
    let out = match &cli.command {
        Command::Parse { formula: src } => {
            let phi = formula(cli, src)?;
            if text {
                phi.pretty()
            } else {
                json!({
                    "formula": phi.pretty(),
                    "desugared": phi.desugar().pretty(),
                    "vars": phi.vars,
                    "depth": phi.node.depth(),
                })
                .to_string()
            }
        }
        Command::Eval { formula: src, team } => {
            let a = structure(cli)?;
            let phi = formula(cli, src)?;
            let mut ev = Evaluator::with_limit(&a, &phi, limits(cli).eval)?;
            let space = ev.space();
            let v = Team::parse(team, &space)?;
            let (plus, minus) = (ev.plus(v)?, ev.minus(v)?);
            if text {
                format!("trump: {plus}\ncotrump: {minus}")
            } else {
                json!({ "team": v.format(&space), "trump": plus, "cotrump": minus }).to_string()
            }
        }
        Command::Meaning { formula: src } => {
            let a = structure(cli)?;
            let phi = formula(cli, src)?;
            let m = meaning_with(&a, &phi, limits(cli))?;
            let view = m.view();
            if text {
                let mut s = view.literal.clone();
                if view.label != view.literal {
                    s.push_str(&format!("\n= {}", view.label));
                }
                let flags: Vec<&str> = [
                    ("double suit", view.double_suit),
                    ("flat", view.flat),
                    ("perfect", view.perfect),
                ]
                .iter()
                .filter(|(_, on)| *on)
                .map(|(n, _)| *n)
                .collect();
                if !flags.is_empty() {
                    s.push_str(&format!("\n{}", flags.join(", ")));
                }
                s
            } else {
                serde_json::to_string(&view).map_err(Error::from)?
            }
        }
        Command::Status { formula: src } => {
            let a = structure(cli)?;
            let phi = formula(cli, src)?;
            let st = sentence_status_with(&a, &phi, limits(cli))?;
            if text {
                st.to_string()
            } else {
                json!({ "status": st }).to_string()
            }
        }
        Command::Algebra { expr } => {
            let e = calculator(cli)?.eval(expr)?;
            if text {
                label(&e)
            } else {
                serde_json::to_string(&e.view()).map_err(Error::from)?
            }
        }
        Command::CountSuits { max_m } => {
            let rows = count_table(*max_m)?;
            if text {
                let mut s = format!(
                    "{:>2} {:>6} {:>8} {:>12}",
                    "m", "teams", "suits", "double_suits"
                );
                for r in &rows {
                    s.push_str(&format!(
                        "\n{:>2} {:>6} {:>8} {:>12}",
                        r.m, r.teams, r.suits, r.double_suits
                    ));
                }
                s
            } else {
                serde_json::to_string(&rows).map_err(Error::from)?
            }
        }
        Command::Subalgebras { generators } => {
            let calc = calculator(cli)?;
            let alg = algebra(&calc, generators)?;
            let subs = enumerate_subuniverses(&alg)?;
            let mut rows = Vec::new();
            for u in &subs {
                let simple = is_simple(&alg.subalgebra(u)?)?.simple;
                rows.push((labels(&alg, u), simple));
            }
            let hs = rows.iter().all(|(_, s)| *s);
            if text {
                let mut s = String::new();
                for (ls, simple) in &rows {
                    let tag = if *simple { "simple" } else { "not simple" };
                    s.push_str(&format!("{:>3} {tag}: {{{}}}\n", ls.len(), ls.join(", ")));
                }
                s.push_str(&format!(
                    "{} subuniverses of a {}-element algebra; hereditarily simple: {}",
                    rows.len(),
                    alg.len(),
                    if hs { "yes" } else { "no" }
                ));
                s
            } else {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|(ls, simple)| json!({ "elements": ls, "simple": simple }))
                    .collect();
                json!({
                    "elements": alg.len(),
                    "subuniverses": list,
                    "hereditarily_simple": hs,
                })
                .to_string()
            }
        }
        Command::Congruence { x, y, generators } => {
            let calc = calculator(cli)?;
            let alg = algebra(&calc, generators)?;
            let find = |src: &str| -> Result<usize, Error> {
                let e = calc.eval(src)?;
                alg.index_of(&e)
                    .ok_or_else(|| Error::Invalid(format!("{} is not in the algebra", label(&e))))
            };
            let (ix, iy) = (find(x)?, find(y)?);
            let cg = principal_congruence(&alg, ix, iy);
            if text {
                let kind = if cg.is_total() {
                    "total"
                } else if cg.is_identity() {
                    "identity"
                } else {
                    "proper"
                };
                format!("{}\n{kind}, {} blocks", cg.format(&alg), cg.block_count())
            } else {
                let blocks: Vec<Vec<String>> =
                    cg.blocks().iter().map(|b| labels(&alg, b)).collect();
                json!({
                    "x": alg.label(ix),
                    "y": alg.label(iy),
                    "blocks": blocks,
                    "identity": cg.is_identity(),
                    "total": cg.is_total(),
                })
                .to_string()
            }
        }
        Command::Verify {
            suite,
            seed,
            trials,
        } => {
            let reports: Vec<VerificationReport> = if suite == "all" {
                verify_all(*seed, *trials)?
            } else {
                vec![run_suite(suite, *seed, *trials)?]
            };
            let out = if text {
                reports
                    .iter()
                    .map(VerificationReport::to_text)
                    .collect::<String>()
            } else {
                serde_json::to_string(&reports).map_err(Error::from)?
            };
            if reports.iter().all(|r| r.passed) {
                out.trim_end().to_string()
            } else {
                return Err(Failure::Verification(out.trim_end().to_string()));
            }
        }
    };
    Ok(out)
}

/// Prints to stdout, treating a closed pipe as a normal end of output.
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{out}").and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            emit(&out);
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Guard(_) => 3,
                _ => 2,
            })
        }
    }
}
