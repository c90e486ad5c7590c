//! Argument parsing and subcommand dispatch for the `hawksteer` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hawksteer::{GridKind, Pair};

use crate::error::{CliError, Result};
use crate::plot::{self, Panel, SweepTable};
use crate::report::{self, Format};
use crate::sweep::{self, Measures, SweepConfig};
use crate::{selfcheck, threads};

const SUCCESS: u8 = 0;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(name = "hawksteer", version, about = "Fermionic steering of Dirac modes near a Schwarzschild black hole")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate steerabilities over a temperature grid
    Sweep(SweepArgs),
    /// Report the critical temperatures, closed form against root finder
    Critical {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Check the steering/concurrence monogamy identities
    Monogamy {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Temperatures, comma separated
        #[arg(long = "t", value_delimiter = ',', allow_negative_numbers = true, required = true)]
        t: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Draw one figure from a sweep CSV
    Plot {
        /// Sweep CSV produced by `sweep`
        input: PathBuf,
        /// Destination SVG
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        panel: PanelArg,
    },
    /// Run the oracle and consistency suites
    Selfcheck,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, default_value_t = 8.0)]
    t_max: f64,
    #[arg(long, default_value_t = 401)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = GridArg::Linear)]
    grid: GridArg,
    /// Any of AB, ABbar, BBbar, comma separated
    #[arg(long, value_delimiter = ',', default_value = "AB,ABbar,BBbar")]
    pairs: Vec<Pair>,
    #[arg(long, value_enum, default_value_t = MeasuresArg::Both)]
    measures: MeasuresArg,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    /// Write here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasuresArg {
    Entropy,
    Ent,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PanelArg {
    Fig1,
    Fig2,
    Fig3,
}

impl From<ReportFormat> for Format {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Text => Format::Text,
            ReportFormat::Csv => Format::Csv,
            ReportFormat::Json => Format::Json,
        }
    }
}

struct Streams<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Streams<'_> {
    fn print(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes()).and_then(|_| self.out.flush()).map_err(|e| CliError::io("<stdout>", e))
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "error: {text}");
    }
}

fn sweep_cmd(args: SweepArgs, io: &mut Streams<'_>) -> Result<u8> {
    let cfg = SweepConfig {
        omega: args.omega,
        t_min: args.t_min,
        t_max: args.t_max,
        steps: args.steps,
        grid: match args.grid {
            GridArg::Linear => GridKind::Linear,
            GridArg::Log => GridKind::Log,
        },
        pairs: args.pairs,
        measures: match args.measures {
            MeasuresArg::Entropy => Measures::Entropy,
            MeasuresArg::Ent => Measures::Ent,
            MeasuresArg::Both => Measures::Both,
        },
    };
    let pool = threads::pool_from_env()?;
    let records = sweep::run_sweep(&cfg, &pool)?;
    let mut buf = Vec::new();
    match args.format {
        DataFormat::Csv => sweep::write_csv(&records, &cfg.selected_pairs(), &mut buf)?,
        DataFormat::Json => sweep::write_json(&cfg, &records, &mut buf)?,
    }
    match args.output {
        Some(path) => {
            let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
            let mut w = BufWriter::new(file);
            w.write_all(&buf).and_then(|_| w.flush()).map_err(|e| CliError::io(&path, e))?;
        }
        None => io.out.write_all(&buf).and_then(|_| io.out.flush()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(SUCCESS)
}

fn critical_cmd(omega: f64, format: ReportFormat, io: &mut Streams<'_>) -> Result<u8> {
    let rep = report::critical_report(omega)?;
    io.print(&report::render_critical(&rep, format.into())?)?;
    let mut code = SUCCESS;
    for row in rep.failures() {
        io.warn(&format!("{}: {}", row.name, row.error.as_deref().unwrap_or_default()));
        code = FAILURE;
    }
    Ok(code)
}

fn monogamy_cmd(omega: f64, t: &[f64], format: ReportFormat, io: &mut Streams<'_>) -> Result<u8> {
    let rows = report::monogamy_rows(omega, t)?;
    io.print(&report::render_monogamy(&rows, format.into())?)?;
    let mut code = SUCCESS;
    for r in rows.iter().filter(|r| !r.pass) {
        io.warn(&format!("monogamy residual {:e} exceeds {:e} at T = {}", r.max_abs, report::MONOGAMY_TOL, r.t));
        code = FAILURE;
    }
    Ok(code)
}

fn plot_cmd(input: &Path, output: &Path, panel: PanelArg) -> Result<u8> {
    let file = File::open(input).map_err(|e| CliError::io(input, e))?;
    let table = SweepTable::read(io::BufReader::new(file))?;
    let panel = match panel {
        PanelArg::Fig1 => Panel::Fig1,
        PanelArg::Fig2 => Panel::Fig2,
        PanelArg::Fig3 => Panel::Fig3,
    };
    let svg = plot::render(&table, panel)?;
    std::fs::write(output, svg).map_err(|e| CliError::io(output, e))?;
    Ok(SUCCESS)
}

fn selfcheck_cmd(io: &mut Streams<'_>) -> Result<u8> {
    let checks = selfcheck::run()?;
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{c}\n"));
    }
    let failed = checks.iter().filter(|c| !c.pass()).count();
    text.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
    io.print(&text)?;
    if failed > 0 {
        io.warn(&format!("{failed} selfcheck(s) failed"));
        return Ok(FAILURE);
    }
    Ok(SUCCESS)
}

fn dispatch(cli: Cli, io: &mut Streams<'_>) -> Result<u8> {
    match cli.command {
        Command::Sweep(args) => sweep_cmd(args, io),
        Command::Critical { omega, format } => critical_cmd(omega, format, io),
        Command::Monogamy { omega, t, format } => monogamy_cmd(omega, &t, format, io),
        Command::Plot { input, output, panel } => plot_cmd(&input, &output, panel),
        Command::Selfcheck => selfcheck_cmd(io),
    }
}

/// Runs the command line `args` (program name first), writing data to `out`
/// and diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code() as u8;
        }
    };
    let mut io = Streams { out, err };
    match dispatch(cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            io.warn(&e.to_string());
            e.exit_code() as u8
        }
    }
}
