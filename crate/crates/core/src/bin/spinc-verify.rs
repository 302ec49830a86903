use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinc_localization::cl3::{extend_to_cl3, sign_report};
use spinc_localization::model::IndexModel;
use spinc_localization::suite::{self, RunConfig, Suite, DEFAULT_SEED};
use spinc_localization::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(version, about = "Exact checks of Clifford-module constructions and index identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tau {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: clifford, rep, cl3, localization, genus or all.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        tau: Tau,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow n > 0 (slow).
        #[arg(long)]
        allow_large_n: bool,
        /// Record wall-clock times (reports are then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate both indices of a model file and compare them.
    Index {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the squares of the extra generators next to the stated sign.
    ReportSigns {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        allow_large_n: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, n, tau, samples, seed, format, out, allow_large_n, timing } => {
            let taus = match tau {
                Tau::Zero => vec![0],
                Tau::One => vec![1],
                Tau::Both => vec![0, 1],
            };
            let config = RunConfig { n, taus, samples, seed, allow_large_n, timing, ..RunConfig::default() };
            verify(suite, &config, format, out)
        }
        Command::Index { model, format } => index(&model, format),
        Command::ReportSigns { n, allow_large_n } => report_signs(n, allow_large_n),
    }
}

fn verify(suite: Suite, config: &RunConfig, format: Format, out: Option<PathBuf>) -> ExitCode {
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let report = match suite::run(suite, config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("internal error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let body = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL);
            }
            let s = &report.summary;
            println!("{}: {} passed, {} failed, {} expected failures", suite, s.passed, s.failed, s.expected_failures);
        }
        None => print!("{body}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn index(path: &Path, format: Format) -> ExitCode {
    let model = match IndexModel::load(path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let c = model.evaluate();
    match format {
        Format::Text => {
            println!("index_X = {}", c.index_x);
            println!("index_Y = {}", c.index_y);
            println!("2·index_X = index_Y: {}", c.equality);
            for v in &c.violations {
                println!("hypothesis violated: {v}");
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&c).expect("serializable")),
    }
    if c.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn report_signs(n: usize, allow_large_n: bool) -> ExitCode {
    if n > 0 && !allow_large_n {
        eprintln!("error: n = {n} is beyond desk scale; pass --allow-large-n");
        return ExitCode::from(EXIT_USAGE);
    }
    println!("{:<3} {:<3} {:<10} {:<10} {:<9} {:<8} {:<10} anticommutant basis (squares)", "n", "τ", "ρ̃(η₁)²", "ρ̃(η₂)²", "signature", "stated", "verdict");
    for tau in [0u8, 1] {
        let row = match extend_to_cl3(n, tau).and_then(|ext| sign_report(&ext)) {
            Ok(r) => r,
            Err(e) => return internal(e),
        };
        let fmt = |s: &Option<_>| s.as_ref().map_or("-".to_string(), |q: &num_rational::BigRational| q.to_string());
        let basis: Vec<String> = row
            .anticommutant_basis
            .iter()
            .zip(&row.anticommutant_squares)
            .map(|(b, s)| format!("{b} ({})", fmt(s)))
            .collect();
        println!(
            "{:<3} {:<3} {:<10} {:<10} {:<9} {:<8} {:<10} {}",
            row.n,
            row.tau,
            fmt(&row.eta_squares[0]),
            fmt(&row.eta_squares[1]),
            format!("{:+}", row.signature_square),
            format!("{:+}", row.claimed),
            if row.eta_agrees_with_claim() { "agrees" } else { "disagrees" },
            basis.join(", ")
        );
    }
    ExitCode::SUCCESS
}

fn internal(e: Error) -> ExitCode {
    eprintln!("internal error: {e}");
    ExitCode::from(EXIT_INTERNAL)
}
