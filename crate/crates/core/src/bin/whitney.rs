//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a verification failure or internal
//! violation, 2 on usage or input errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use whitney_core::characterize::{proof_trace, solve_characterization};
use whitney_core::derham::derham;
use whitney_core::render::{render_cochain, render_form, Style};
use whitney_core::verify::{dimension_table, verify, VerifyConfig, DEFAULT_CEILING, DEFAULT_SAMPLES};
use whitney_core::whitney::whitney;
use whitney_core::{io, AffineForm, Cochain, Error, Face};

#[derive(Parser)]
#[command(name = "whitney", version, about = "Exact Whitney forms on the standard simplex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Args)]
struct CochainInput {
    /// Cochain JSON file, or `-` for stdin.
    input: Option<PathBuf>,
    /// Inline cochain JSON.
    #[arg(long, conflicts_with = "input")]
    json: Option<String>,
    /// Use the basis cochain of a single face, e.g. `--basis 1,2` (requires --n).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["input", "json"])]
    basis: Option<Vec<usize>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Whitney form of a cochain.
    Whitney(CochainInput),
    /// Integrate a form over every face and print the resulting cochain.
    Derham {
        /// Form JSON file, or `-` for stdin.
        input: Option<PathBuf>,
        /// Inline form JSON.
        #[arg(long, conflicts_with = "input")]
        json: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recover the form from its defining conditions and compare with the Whitney form.
    Characterize(CochainInput),
    /// Run the full exact verification for all (n, k) up to --n-max.
    Verify {
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        n_max: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted --n-max.
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dimension count table for one n.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Replay the two-stage elimination and print the report as JSON.
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_violation() {
            Failure::Violation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read_text(path: &Option<PathBuf>, inline: &Option<String>) -> Result<String, Failure> {
    match (path, inline) {
        (_, Some(text)) => Ok(text.clone()),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(s)
        }
        (Some(p), None) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        (None, None) => Err(Failure::Input("no input given".into())),
    }
}

fn check_shape(what: &str, n: usize, k: usize, want_n: Option<usize>, want_k: Option<usize>) -> Result<(), Failure> {
    if want_n.is_some_and(|w| w != n) || want_k.is_some_and(|w| w != k) {
        return Err(Failure::Input(format!("{what} has (n, k) = ({n}, {k}), which does not match --n/--k")));
    }
    Ok(())
}

fn load_cochain(input: &CochainInput) -> Result<Cochain, Failure> {
    let c = if let Some(vertices) = &input.basis {
        let n = input.n.ok_or_else(|| Failure::Input("--basis needs --n".into()))?;
        Cochain::basis(&Face::new(n, vertices.clone())?)
    } else {
        io::cochain_from_json(&read_text(&input.input, &input.json)?)?
    };
    check_shape("cochain", c.n(), c.k(), input.n, input.k)?;
    Ok(c)
}

fn print_form(form: &AffineForm, format: Format) {
    match format {
        Format::Json => println!("{}", io::form_to_json(form)),
        Format::Text => println!("{}", render_form(form, Style::Text)),
        Format::Latex => println!("{}", render_form(form, Style::Latex)),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Whitney(input) => {
            let c = load_cochain(&input)?;
            print_form(&whitney(&c)?, input.format);
        }
        Command::Derham { input, json, n, k, format } => {
            let form = io::form_from_json(&read_text(&input, &json)?)?;
            check_shape("form", form.n(), form.degree(), n, k)?;
            let c = derham(&form)?;
            match format {
                Format::Json => println!("{}", io::cochain_to_json(&c)),
                Format::Text => println!("{}", render_cochain(&c, Style::Text)),
                Format::Latex => println!("{}", render_cochain(&c, Style::Latex)),
            }
        }
        Command::Characterize(input) => {
            let c = load_cochain(&input)?;
            let solved = solve_characterization(c.n(), c.k(), &c)?;
            let expected = whitney(&c)?;
            let matches = solved == expected;
            match input.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "form": solved, "whitney": expected, "matches_whitney": matches })
                ),
                f => {
                    print_form(&solved, f);
                    println!("matches whitney: {matches}");
                }
            }
            if !matches {
                return Err(Failure::Violation("characterization differs from the Whitney form".into()));
            }
        }
        Command::Verify { n_max, k, samples, seed, ceiling, format } => {
            if n_max == 0 || n_max > ceiling {
                return Err(Failure::Input(format!("--n-max must be in 1..={ceiling}")));
            }
            let report = verify(&VerifyConfig { n_max, k, samples, seed, ceiling })?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
                _ => print!("{}", report.to_table()),
            }
            if let Some((cell, check)) = report.first_failure() {
                let cx = serde_json::json!({ "n": cell.n, "k": cell.k, "check": check.name, "counterexample": check.counterexample });
                eprintln!("{cx}");
                return Err(Failure::Violation(format!("check {} failed for n={}, k={}", check.name, cell.n, cell.k)));
            }
        }
        Command::Dims { n, format } => {
            let rows = dimension_table(n)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
                _ => {
                    println!("{:>2} {:>12} {:>12} {:>8} {:>10}", "k", "unknowns", "constancy", "faces", "computed");
                    for r in &rows {
                        println!(
                            "{:>2} {:>12} {:>12} {:>8} {:>10}",
                            r.k, r.unknowns, r.constancy_conditions, r.faces, r.lambda_e_dimension
                        );
                    }
                }
            }
            if let Some(bad) = rows.iter().find(|r| !r.consistent()) {
                return Err(Failure::Violation(format!("dimension count fails at k={}", bad.k)));
            }
        }
        Command::Trace { n, k } => {
            println!("{}", proof_trace(n, k)?.to_json());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
