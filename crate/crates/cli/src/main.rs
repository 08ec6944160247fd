use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comaxdom::commands::{self, CliError, ExitCode};
use comaxdom::output::{render, write_atomic, Format};
use comaxdom::svg::roots_svg;
use comaxdom_core::domination::Method;
use comaxdom_core::ringgraph::{build_blowup_spec, expand_blowup};

/// Domination polynomials of co-maximal graphs of Z_n.
#[derive(Parser)]
#[command(name = "comaxdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute D(Γ(Z_n), x) and its domination number.
    Compute {
        #[command(flatten)]
        common: Common,
        /// Write the expanded graph as an edge list.
        #[arg(long, value_name = "PATH")]
        edges: Option<PathBuf>,
    },
    /// Check every applicable formula and structural claim over a range of n.
    Verify {
        /// Inclusive range `a..b` within 2..200.
        #[arg(long)]
        range: String,
        /// Compare against subset enumeration for n <= 24.
        #[arg(long)]
        brute: bool,
        /// Enumerate G_2 directly for n = pqr when it has at most 24 vertices.
        #[arg(long = "brute-g2")]
        brute_g2: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Coefficient shape and Enestrom-Kakeya annulus.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Numerical roots with annulus and Vieta checks.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 5000)]
        max_iter: usize,
        /// Write a scatter plot of the roots.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Use the as-printed formula variants where they exist.
    #[arg(long)]
    published: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Blowup,
    ClosedPrime,
    ClosedPrimePower,
    ClosedPrimePowerPublished,
    ClosedPq,
    ClosedPqPowers,
    ClosedPqPowersPublished,
    G2PqrPublished,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Brute => Method::Brute,
            MethodArg::Blowup => Method::Blowup,
            MethodArg::ClosedPrime => Method::ClosedPrime,
            MethodArg::ClosedPrimePower => Method::ClosedPrimePower,
            MethodArg::ClosedPrimePowerPublished => Method::ClosedPrimePowerPublished,
            MethodArg::ClosedPq => Method::ClosedPq,
            MethodArg::ClosedPqPowers => Method::ClosedPqPowers,
            MethodArg::ClosedPqPowersPublished => Method::ClosedPqPowersPublished,
            MethodArg::G2PqrPublished => Method::G2PqrPublished,
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes())
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::invalid(format!("cannot write stdout: {e}")))
        }
    }
}

fn rendered<T: serde::Serialize>(report: &T, format: FormatArg) -> Result<String, CliError> {
    render(report, format.into()).map_err(CliError::invalid)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Compute { common, edges } => {
            let report = commands::compute(common.n, common.method.into(), common.published)?;
            let text = rendered(&report, common.format)?;
            if let Some(path) = edges {
                let spec = build_blowup_spec(common.n)?;
                let g = expand_blowup(&spec);
                let dump = g.edge_list(&format!("comaximal n={} order={}", common.n, g.order()));
                write_atomic(&path, dump.as_bytes()).map_err(|e| {
                    CliError::invalid(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            emit(&text, common.output.as_deref())?;
            Ok(ExitCode::Ok)
        }
        Command::Verify {
            range,
            brute,
            brute_g2,
            format,
            output,
        } => {
            let (a, b) = commands::parse_range(&range)?;
            let report = commands::verify(a, b, brute, brute_g2)?;
            emit(&rendered(&report, format)?, output.as_deref())?;
            Ok(if report.corrected_ok {
                ExitCode::Ok
            } else {
                ExitCode::Discrepancy
            })
        }
        Command::Analyze { common } => {
            let report = commands::analyze(common.n, common.method.into(), common.published)?;
            emit(&rendered(&report, common.format)?, common.output.as_deref())?;
            Ok(ExitCode::Ok)
        }
        Command::Roots {
            common,
            tol,
            max_iter,
            svg,
        } => {
            let run = commands::roots(
                common.n,
                common.method.into(),
                common.published,
                tol,
                max_iter,
            )?;
            let text = rendered(&run.report, common.format)?;
            if let Some(path) = svg {
                let title = format!("zeros of D(x) for n = {}", common.n);
                let figure = roots_svg(
                    &title,
                    &run.roots.roots,
                    run.bounds.r_f64(),
                    run.bounds.big_r_f64(),
                );
                write_atomic(&path, figure.as_bytes()).map_err(|e| {
                    CliError::invalid(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            emit(&text, common.output.as_deref())?;
            Ok(if run.roots.converged {
                ExitCode::Ok
            } else {
                ExitCode::NonConvergence
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code as i32),
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.code as i32);
        }
    }
}
