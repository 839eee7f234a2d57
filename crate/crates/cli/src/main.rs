use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use adlv_cli::commands::{
    cmd_conjecture, cmd_dim, cmd_enumerate, cmd_polygon, cmd_verify, DimArgs, EnumerateArgs,
    InstanceArgs, PolygonArgs, VerifyArgs,
};
use adlv_cli::{CliError, CliResult, RunReport};
use clap::{Parser, Subcommand};

/// Dimensions and charts for affine Deligne-Lusztig varieties of Res GL_h.
#[derive(Parser)]
#[command(name = "adlv", version)]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension by closed formula, by chart enumeration, or both.
    Dim(DimArgs),
    /// Every extended EL-chart for mu, one JSON document per line.
    Enumerate(EnumerateArgs),
    /// SVG of two polygons and the lattice points between them.
    Polygon(PolygonArgs),
    /// Run verification suites over a grid of instances.
    Verify(VerifyArgs),
    /// Counts around the minuscule component conjecture.
    Conjecture(InstanceArgs),
}

enum Channel {
    Stdout,
    Stderr,
}

fn run(cli: &Cli) -> CliResult<(RunReport, Channel)> {
    match &cli.command {
        Command::Dim(a) => cmd_dim(a).map(|r| (r, Channel::Stdout)),
        Command::Polygon(a) => cmd_polygon(a).map(|r| (r, Channel::Stdout)),
        Command::Conjecture(a) => cmd_conjecture(a).map(|r| (r, Channel::Stdout)),
        Command::Enumerate(a) => match &a.out {
            Some(path) => {
                let file =
                    File::create(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
                cmd_enumerate(a, &mut BufWriter::new(file)).map(|r| (r, Channel::Stdout))
            }
            None => {
                let stdout = io::stdout();
                cmd_enumerate(a, &mut BufWriter::new(stdout.lock())).map(|r| (r, Channel::Stderr))
            }
        },
        Command::Verify(a) => {
            let report = cmd_verify(a)?;
            Ok((report, Channel::Stdout))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok((mut report, channel)) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            let _ = match channel {
                Channel::Stdout => io::stdout().write_all(text.as_bytes()),
                Channel::Stderr => io::stderr().write_all(text.as_bytes()),
            };
            let failed = report.hard_failures();
            if failed > 0 {
                eprintln!("adlv: {}", CliError::SuiteFailed(failed));
                return ExitCode::from(CliError::SuiteFailed(failed).exit_code());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("adlv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
