use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rule150_cli::commands::{self, BitmapFormat, CountMethod, CountMode, PlotFormat, QuotientSide};
use rule150_cli::xspec::{parse_point, parse_rational};
use rule150_cli::{run_suite, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "rule150",
    about = "Rule 150 automaton, its counts, and the singular function F"
)]
struct Cli {
    /// Print the tool version to stderr before running.
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ImageFormat {
    Pbm,
    PbmBinary,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Num,
    Cum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Matrix,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFmt {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Space-time diagram of rows 0..=steps from a single site.
    Simulate {
        #[arg(long, default_value_t = 150)]
        rule: u8,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "pbm")]
        format: ImageFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of num(n) or cum(n) for n = 0..=upto.
    Counts {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        upto: u64,
        #[arg(long, value_enum, default_value = "matrix")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F(x) as a decimal and an exact (p, q, d) triple, (p + q√5)/d.
    Eval {
        /// m/2^i, p/q, bits=<word>[(<period>)], or random=<seed>.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        /// Enclosure width for points with no closed form.
        #[arg(long, default_value = "1e-12")]
        eps: String,
    },
    /// F sampled at every dyadic of the given depth.
    PlotF {
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: PlotFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prefractal bitmap S(2^k - 1).
    Limitset {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "pbm")]
        format: ImageFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box-counting slope over scales jmin..=jmax, as JSON.
    Dimension {
        #[arg(long)]
        jmin: u32,
        #[arg(long)]
        jmax: u32,
    },
    /// Difference quotients of F at a point, as JSON.
    Quotients {
        #[arg(long)]
        x: String,
        #[arg(long)]
        mmax: u32,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
    /// Runs an invariant suite: eca, counting, singular, analysis, fractal, all.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

fn bitmap_format(f: ImageFormat) -> BitmapFormat {
    match f {
        ImageFormat::Pbm => BitmapFormat::Pbm,
        ImageFormat::PbmBinary => BitmapFormat::PbmBinary,
        ImageFormat::Csv => BitmapFormat::Csv,
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let err = |e: rule150::Error| e.to_string();
    let (bytes, out) = match cli.command {
        Command::Simulate {
            rule,
            steps,
            format,
            out,
        } => (
            commands::simulate(rule, steps, bitmap_format(format)).map_err(err)?,
            out,
        ),
        Command::Counts {
            mode,
            upto,
            method,
            out,
        } => {
            let mode = match mode {
                Mode::Num => CountMode::Num,
                Mode::Cum => CountMode::Cum,
            };
            let method = match method {
                Method::Direct => CountMethod::Direct,
                Method::Matrix => CountMethod::Matrix,
                Method::Closed => CountMethod::Closed,
            };
            (commands::counts(mode, upto, method).map_err(err)?, out)
        }
        Command::Eval { x, digits, eps } => {
            let point = parse_point(&x).map_err(err)?;
            let eps = parse_rational(&eps).map_err(err)?;
            (commands::eval(&x, &point, digits, &eps).map_err(err)?, None)
        }
        Command::PlotF { depth, format, out } => {
            let format = match format {
                PlotFmt::Csv => PlotFormat::Csv,
                PlotFmt::Svg => PlotFormat::Svg,
            };
            (commands::plot_f(depth, format).map_err(err)?, out)
        }
        Command::Limitset { k, format, out } => (
            commands::limitset(k, bitmap_format(format)).map_err(err)?,
            out,
        ),
        Command::Dimension { jmin, jmax } => (commands::dimension(jmin, jmax).map_err(err)?, None),
        Command::Quotients {
            x,
            mmax,
            side,
            digits,
        } => {
            let point = parse_point(&x).map_err(err)?;
            let side = match side {
                SideArg::Left => QuotientSide::Left,
                SideArg::Right => QuotientSide::Right,
                SideArg::Both => QuotientSide::Both,
                SideArg::Symmetric => QuotientSide::Symmetric,
            };
            (
                commands::quotients(&x, &point, mmax, side, digits).map_err(err)?,
                None,
            )
        }
        Command::Check { suite, format } => {
            let report = run_suite(&suite).ok_or_else(|| {
                format!(
                    "unknown suite {suite:?}; expected one of {}",
                    rule150_cli::check::SUITES.join(", ")
                )
            })?;
            let text = match format {
                ReportFormat::Text => report.render_text(),
                ReportFormat::Json => report.render_json(),
            };
            emit(text.as_bytes(), None)?;
            return Ok(ExitCode::from(report.exit_code as u8));
        }
    };
    emit(&bytes, out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.meta {
        eprintln!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    }
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
