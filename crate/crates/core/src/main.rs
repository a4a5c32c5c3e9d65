use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use extshuffle::chen::fraction::{
    evaluate, panel_points, parse_assignment, variables, FractionLinComb, Point, DEFAULT_PANEL_SEED,
};
use extshuffle::chen::symbol::{symbol_product_lin, SymbolLinComb};
use extshuffle::convergence::first_divergent_index;
use extshuffle::relations::{enumerate_relations, RelationBounds};
use extshuffle::shuffle::stuffle::stuffle_lin;
use extshuffle::zeta::{ZetaConfig, ZetaEvaluator, DEFAULT_MAX_CUTOFF};
use extshuffle::{ext_shuffle_lin, ChenSymbol, Composition, Error, LinComb};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "extshuffle",
    version,
    about = "Extended shuffle products and convergent multiple zeta series"
)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for fraction evaluation panels.
    #[arg(long, global = true, default_value_t = DEFAULT_PANEL_SEED)]
    seed: u64,

    /// Largest cutoff for zeta truncations.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_CUTOFF)]
    max_n: u64,

    /// Numeric tolerance (defaults: zeta 1e-6, verify 1e-5, relations 1e-4).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extended shuffle product of two linear combinations.
    Shuffle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Stuffle (quasi-shuffle) product.
    Stuffle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Locality product of Chen symbols, e.g. '<[1];[1]>' '<[1];[2]>'.
    SymbolProduct {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Relabel the second argument with fresh labels first.
        #[arg(long)]
        fresh: bool,
    },
    /// Evaluate Chen fractions at `i=p/q` points, or on the seeded panel.
    FractionEval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        points: Vec<String>,
    },
    /// Exit 0 if the composition is convergent, 1 otherwise.
    Convergent {
        #[arg(allow_hyphen_values = true)]
        comp: String,
    },
    /// Numerically evaluate a convergent multiple zeta series.
    Zeta {
        #[arg(allow_hyphen_values = true)]
        comp: String,
    },
    /// Check zeta(a ⧢ b) = zeta(a) zeta(b).
    Verify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Enumerate numerically certified double-shuffle relations.
    Relations {
        #[arg(long, default_value_t = 1)]
        max_depth: usize,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        min_entry: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        max_entry: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass(out)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(out)) => {
            println!("{out}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e @ Error::Parse { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn lincomb(src: &str) -> Result<LinComb<Composition>, Error> {
    src.parse()
}

fn composition(src: &str) -> Result<Composition, Error> {
    src.parse()
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let render = |x: &LinComb<Composition>| if cli.json { x.to_json_string() } else { x.to_string() };
    let evaluator = || ZetaEvaluator::new(ZetaConfig::with_max_cutoff(cli.max_n));
    match &cli.command {
        Command::Shuffle { a, b } => Ok(Outcome::Pass(render(&ext_shuffle_lin(&lincomb(a)?, &lincomb(b)?)))),
        Command::Stuffle { a, b } => Ok(Outcome::Pass(render(&stuffle_lin(&lincomb(a)?, &lincomb(b)?)))),
        Command::SymbolProduct { a, b, fresh } => {
            let x: SymbolLinComb = a.parse()?;
            let mut y: SymbolLinComb = b.parse()?;
            if *fresh {
                let max = x.keys().flat_map(|s| s.labels().iter().copied()).max().unwrap_or(0);
                let anchor = ChenSymbol::with_labels_from(Composition::from([0]), max);
                y = y.map_basis(|s| anchor.relabel_fresh(s));
            }
            let p = symbol_product_lin(&x, &y)?;
            Ok(Outcome::Pass(if cli.json { p.to_json_string() } else { p.to_string() }))
        }
        Command::FractionEval { expr, points } => {
            let x: FractionLinComb = expr.parse()?;
            if points.is_empty() {
                let panel = panel_points(cli.seed, &variables(&x));
                let mut lines = Vec::new();
                let mut values = Vec::new();
                for p in &panel {
                    let v = evaluate(&x, p)?;
                    lines.push(format!("{} -> {v}", show_point(p)));
                    values.push(serde_json::json!({
                        "point": p.iter().map(|(k, q)| (k.to_string(), serde_json::Value::String(q.to_string()))).collect::<serde_json::Map<_, _>>(),
                        "value": v.to_string(),
                    }));
                }
                return Ok(Outcome::Pass(if cli.json {
                    serde_json::Value::Array(values).to_string()
                } else {
                    lines.join("\n")
                }));
            }
            let point: Point = points.iter().map(|s| parse_assignment(s)).collect::<Result<_, _>>()?;
            let v = evaluate(&x, &point)?;
            Ok(Outcome::Pass(if cli.json {
                serde_json::json!({ "value": v.to_string() }).to_string()
            } else {
                v.to_string()
            }))
        }
        Command::Convergent { comp } => {
            let c = composition(comp)?;
            match first_divergent_index(&c) {
                None => Ok(Outcome::Pass(if cli.json {
                    serde_json::json!({ "convergent": true }).to_string()
                } else {
                    "convergent".into()
                })),
                Some((j, w)) => Ok(Outcome::Fail(if cli.json {
                    serde_json::json!({ "convergent": false, "index": j, "weight": w }).to_string()
                } else {
                    format!("partial weight at j={j} is {w}, requires > {j}")
                })),
            }
        }
        Command::Zeta { comp } => {
            let c = composition(comp)?;
            let est = evaluator().zeta(&c, cli.tol.unwrap_or(1e-6))?;
            let text = if cli.json {
                serde_json::to_string(&est).expect("serializable")
            } else {
                format!(
                    "value = {:.12}\nest_error = {:.3e}\ncutoff = {}\nconverged = {}",
                    est.value, est.est_error, est.cutoff, est.converged
                )
            };
            Ok(if est.converged {
                Outcome::Pass(text)
            } else {
                Outcome::Fail(text)
            })
        }
        Command::Verify { a, b } => {
            let r = evaluator().verify_homomorphism(&composition(a)?, &composition(b)?, cli.tol.unwrap_or(1e-5))?;
            let text = if cli.json {
                r.to_json().to_string()
            } else {
                format!(
                    "product = {}\nzeta(a ⧢ b) = {:.12} (est_error {:.3e})\nzeta(a) zeta(b) = {:.12}\ndelta = {:.3e}\ntolerance = {:.3e}\n{}",
                    r.product,
                    r.expansion.value,
                    r.expansion.est_error,
                    r.factored,
                    r.delta,
                    r.tolerance,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            };
            Ok(if r.passed {
                Outcome::Pass(text)
            } else {
                Outcome::Fail(text)
            })
        }
        Command::Relations {
            max_depth,
            min_entry,
            max_entry,
            format,
        } => {
            let bounds = RelationBounds {
                max_depth: *max_depth,
                min_entry: *min_entry,
                max_entry: *max_entry,
            };
            let set = enumerate_relations(&bounds, cli.tol.unwrap_or(1e-4), &evaluator())?;
            let text = if cli.json || *format == Format::Json {
                set.to_json().to_string()
            } else {
                let mut lines: Vec<String> = set
                    .relations
                    .iter()
                    .map(|r| format!("{} {}: {} = 0  (residual {:.2e})", r.a, r.b, r.relation, r.residual))
                    .collect();
                lines.extend(
                    set.skipped
                        .iter()
                        .map(|s| format!("{} {}: skipped, divergent stuffle terms", s.a, s.b)),
                );
                lines.extend(
                    set.failed
                        .iter()
                        .map(|r| format!("{} {}: FAILED residual {:.2e}", r.a, r.b, r.residual)),
                );
                lines.push(format!(
                    "commutativity: {} of {} unordered pairs have a ⧢ b != b ⧢ a",
                    set.symmetry.asymmetric.len(),
                    set.symmetry.pairs
                ));
                lines.extend(
                    set.symmetry
                        .asymmetric
                        .iter()
                        .map(|(a, b)| format!("  {a} ⧢ {b} != {b} ⧢ {a}")),
                );
                lines.join("\n")
            };
            Ok(if set.failed.is_empty() {
                Outcome::Pass(text)
            } else {
                Outcome::Fail(text)
            })
        }
    }
}

fn show_point(p: &Point) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}
