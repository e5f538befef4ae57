use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eigenbench::cli::{self, CliError, Format, SolverMethod, Table};
use eigenbench::numerics::{BigReal, Precision};

#[derive(Parser, Debug)]
#[command(
    name = "eigenbench",
    version,
    about = "High-precision benchmarks for coupled oscillators and harmonium"
)]
struct Args {
    /// Target significant digits.
    #[arg(long, global = true, default_value_t = 18)]
    digits: u32,

    /// Working precision in decimal digits [default: max(50, 3 x digits)].
    #[arg(long, global = true)]
    precision: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Rpm,
    Rr,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coupled harmonic oscillators.
    #[command(subcommand)]
    Osc(OscCommand),
    /// Harmonium ground state.
    #[command(subcommand)]
    Harmonium(HarmoniumCommand),
}

#[derive(Subcommand, Debug)]
enum OscCommand {
    /// Exact eigenvalues for j = 0..=j_max, n = 0..=n_max.
    Spectrum {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        j_max: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
    },
    /// Optimal Gaussian trial function and its energy.
    Variational {
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
enum HarmoniumCommand {
    /// Ground energy for one spring constant.
    Ground {
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Rpm)]
        method: MethodArg,
    },
    /// The fourteen-row benchmark table.
    Table1,
    /// Ground-energy curve on a log-spaced grid.
    Figure1 {
        #[arg(long, default_value = "0.0012")]
        k_min: String,
        #[arg(long, default_value = "0.25")]
        k_max: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Two-column `k,E0` CSV drawn dashed on the SVG.
        #[arg(long)]
        overlay: Option<PathBuf>,
        /// Write an SVG plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse(s: &str, p: Precision) -> Result<BigReal, CliError> {
    Ok(BigReal::parse(s.trim(), p)?)
}

fn run(args: &Args) -> Result<Vec<Table>, CliError> {
    let p = cli::working_precision(args.digits, args.precision)?;
    let digits = args.digits;
    match &args.command {
        Command::Osc(OscCommand::Spectrum {
            lambda,
            j_max,
            n_max,
        }) => {
            let report = cli::osc_report(&parse(lambda, p)?, *j_max, *n_max)?;
            Ok(vec![cli::spectrum_table(&report, digits)])
        }
        Command::Osc(OscCommand::Variational { lambda }) => {
            let report = cli::osc_report(&parse(lambda, p)?, 0, 0)?;
            Ok(vec![cli::variational_table(&report, digits)])
        }
        Command::Harmonium(HarmoniumCommand::Ground { k, method }) => {
            let method = match method {
                MethodArg::Rpm => SolverMethod::Rpm,
                MethodArg::Rr => SolverMethod::Rr,
            };
            let r = cli::ground_energy(&parse(k, p)?, method, digits, p)?;
            Ok(vec![cli::ground_table(k, &r, digits)])
        }
        Command::Harmonium(HarmoniumCommand::Table1) => {
            let rows = cli::table1(digits, p)?;
            let table = cli::table1_table(&rows, digits);
            let failure = rows
                .into_iter()
                .filter_map(|r| r.result.err().map(|e| (r.k_text, e)))
                .fold(None, |worst: Option<CliError>, (k, e)| {
                    eprintln!("k = {k}: {e}");
                    match worst {
                        Some(w) if w.exit_code() >= e.exit_code() => Some(w),
                        _ => Some(e),
                    }
                });
            match failure {
                None => Ok(vec![table]),
                Some(e) => {
                    print!("{}", table.render(format(args)));
                    Err(e)
                }
            }
        }
        Command::Harmonium(HarmoniumCommand::Figure1 {
            k_min,
            k_max,
            samples,
            overlay,
            svg,
        }) => {
            let fig = cli::figure1(
                &parse(k_min, p)?,
                &parse(k_max, p)?,
                *samples,
                overlay.as_deref(),
                p,
            )?;
            if let Some(path) = svg {
                std::fs::write(path, cli::render_svg(&fig)).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            Ok(vec![cli::figure_table(&fig)])
        }
    }
}

fn format(args: &Args) -> Format {
    match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(tables) => {
            let mut out = std::io::stdout().lock();
            for t in tables {
                if out.write_all(t.render(format(&args)).as_bytes()).is_err() {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
