use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kpositivity::cli::{self, AnalyzeOptions, OutputFormat};
use kpositivity::{zoo, Error, SearchBudget, Tolerance};

#[derive(Parser)]
#[command(
    name = "kpositivity",
    version,
    about = "Positivity analysis of linear maps via the Choi matrix"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide hermiticity preservation, complete positivity and k-positivity.
    Analyze {
        /// Spec file, or `zoo:<name>:<n>[:<params>]`.
        input: String,
        /// Comma-separated ranks to test (default 1..=min(n, m)).
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 500)]
        max_iterations: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: String,
        /// Cap on n * m.
        #[arg(long, default_value_t = cli::DEFAULT_MAX_DIM)]
        max_dim: usize,
        /// Include per-stage wall-clock timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Exit with code 2 when the map is not completely positive.
        #[arg(long)]
        fail_on_violation: bool,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Schmidt decomposition of a vector in C^n ⊗ C^m.
    Schmidt {
        file: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// List the named maps or write one as a spec file.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
    Emit {
        name: String,
        n: usize,
        /// Comma-separated parameters.
        params: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn write_out(text: &str, path: Option<&str>) -> Result<(), i32> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {p}: {e}");
            cli::EXIT_INTERNAL
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: Args) -> Result<i32, Error> {
    match args.command {
        Command::Analyze {
            input,
            k,
            tol,
            restarts,
            max_iterations,
            seed,
            format,
            max_dim,
            timings,
            fail_on_violation,
            output,
        } => {
            let format: OutputFormat = format.parse()?;
            if restarts == 0 || max_iterations == 0 || tol.is_nan() || tol < 0.0 {
                return Err(Error::MalformedSpec(
                    "restarts and iterations must be positive, tol non-negative".into(),
                ));
            }
            let spec = cli::load_spec(&input)?;
            let opts = AnalyzeOptions {
                k_list: k.as_deref().map(cli::parse_list::<usize>).transpose()?,
                tol: Tolerance::new(tol, kpositivity::VERDICT_TOL.rel_eps),
                budget: SearchBudget::new(restarts, max_iterations),
                seed,
                max_dim,
                record_timings: timings,
            };
            let report = cli::analyze(&spec, &opts)?;
            let text = match format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json() + "\n",
            };
            if let Err(code) = write_out(&text, output.as_deref()) {
                return Ok(code);
            }
            Ok(if fail_on_violation && report.cp_violated() {
                cli::EXIT_VIOLATION
            } else {
                cli::EXIT_OK
            })
        }
        Command::Schmidt { file, n, m, tol } => {
            let v = cli::parse_vector(&cli::read_file(&file)?)?;
            let report = cli::schmidt_report(&v, n, m, &Tolerance::uniform(tol))?;
            print!("{}", report.to_text());
            Ok(cli::EXIT_OK)
        }
        Command::Zoo { action } => match action {
            ZooAction::List => {
                print!("{}", cli::zoo_listing());
                Ok(cli::EXIT_OK)
            }
            ZooAction::Emit {
                name,
                n,
                params,
                output,
            } => {
                let params = params.as_deref().map(cli::parse_list::<f64>).transpose()?;
                let spec = zoo(&name, n, &params.unwrap_or_default())?;
                Ok(write_out(&(spec.to_json() + "\n"), output.as_deref())
                    .err()
                    .unwrap_or(cli::EXIT_OK))
            }
        },
    }
}

fn main() -> ExitCode {
    // clap reports usage errors with code 2, which is reserved for violations here
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            let code = if err.use_stderr() {
                cli::EXIT_MALFORMED
            } else {
                cli::EXIT_OK
            };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            cli::exit_code(&err)
        }
    };
    ExitCode::from(code as u8)
}
