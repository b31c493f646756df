use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use meridian::{EndpointKind, ManifoldSpec, SearchSpec};
use meridian_cli::{cmd_invariants, cmd_recognize, cmd_search, cmd_trace, cmd_validate, Outcome};

#[derive(Parser)]
#[command(
    name = "meridian",
    version,
    about = "(1,1)-knots and essential meridional surfaces"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every condition of a descriptor.
    Validate { file: PathBuf },
    /// Surface components with Euler characteristic, genus and boundary.
    Invariants { file: PathBuf },
    /// Level-event trace of a valid descriptor.
    Trace { file: PathBuf },
    /// Recover the piece decomposition from a trace file.
    Recognize {
        file: PathBuf,
        /// Surface at the bottom end: annuli or disks.
        #[arg(long, value_parser = parse_kind)]
        bottom: EndpointKind,
        /// Surface at the top end: annuli or disks.
        #[arg(long, value_parser = parse_kind)]
        top: EndpointKind,
    },
    /// Search for a construction and print its descriptor.
    Search {
        /// S3, S1xS2 or L(p,q).
        #[arg(long, value_parser = parse_manifold)]
        manifold: ManifoldSpec,
        #[arg(long)]
        genus: u32,
        /// Number of boundary circles.
        #[arg(long)]
        boundary: u32,
        #[arg(long, default_value_t = 3)]
        max_r: u32,
        #[arg(long, default_value_t = 5)]
        max_pieces: u32,
        #[arg(long, default_value_t = 5)]
        max_coeff: u32,
        #[arg(long, default_value_t = 6)]
        max_crossings: u32,
    },
}

fn parse_kind(s: &str) -> Result<EndpointKind, String> {
    s.parse().map_err(|e: meridian::Error| e.to_string())
}

fn parse_manifold(s: &str) -> Result<ManifoldSpec, String> {
    s.parse().map_err(|e: meridian::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out: Outcome = match cli.command {
        Command::Validate { file } => cmd_validate(&file, cli.json),
        Command::Invariants { file } => cmd_invariants(&file, cli.json),
        Command::Trace { file } => cmd_trace(&file, cli.json),
        Command::Recognize { file, bottom, top } => cmd_recognize(&file, bottom, top, cli.json),
        Command::Search {
            manifold,
            genus,
            boundary,
            max_r,
            max_pieces,
            max_coeff,
            max_crossings,
        } => cmd_search(
            &SearchSpec {
                manifold,
                target_genus: genus,
                target_boundary: boundary,
                max_r,
                max_pieces,
                max_slope_coeff: max_coeff,
                max_crossings,
            },
            cli.json,
        ),
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
