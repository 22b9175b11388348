//! Command line front end: exact counts and tables, exhaustive
//! enumeration and verification, conversions between the equivalent
//! descriptions of a map, and diagram rendering.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermono::brute::ScanOptions;
use hypermono::DEFAULT_SCAN_LIMIT;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "hypermono",
    version,
    about = "Exact counting, enumeration and cross-validation of reduced unicellular hypermonopoles",
    propagate_version = true
)]
struct Cli {
    /// Index base for parsing and printing point labels.
    #[arg(long, global = true, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    base: u8,

    /// Worker threads for scans: 0 uses every core, 1 forces serial.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Refuse scans with more points than this unless --force is given.
    #[arg(long, global = true, env = "HYPERMONO_SCAN_LIMIT", default_value_t = DEFAULT_SCAN_LIMIT)]
    limit: usize,

    /// Emit machine-readable JSON records instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact count: `count H n k`, `count r n k`, or `count u g`.
    Count {
        /// Family: H (unicellular monopoles by hyperedges), r (reduced), u (reduced by genus).
        kind: String,
        /// n and k for H and r; the genus g for u.
        args: Vec<u64>,
        /// Also run the exhaustive scan when feasible and compare.
        #[arg(long)]
        verify: bool,
        /// Scan even above the safety limit.
        #[arg(long)]
        force: bool,
    },
    /// Full triangle of H(n, k) or r(n, k) for n up to max_n.
    Table {
        /// Family: H or r.
        kind: String,
        max_n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Stream every reduced map of a given size or genus.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Compare scans against the closed formulas for every m up to max_m.
    Verify {
        max_m: usize,
        /// Scan even above the safety limit.
        #[arg(long)]
        force: bool,
    },
    /// Convert between face rotation, hyperedge rotation, cycle graph and gluing.
    Convert {
        /// Face rotation as a cycle string, like "(0 2 3 1 4)".
        #[arg(long)]
        pi: Option<String>,
        /// Hyperedge rotation as a cycle string, like "(0)(1 4 2)(3)".
        #[arg(long)]
        alpha: Option<String>,
        /// Point count, for --alpha inputs that omit trailing fixed points.
        #[arg(long)]
        m: Option<usize>,
        /// Gluing pairing as a comma-separated word, like "0,2,3,1,4".
        #[arg(long)]
        gluing: Option<String>,
        /// Target description.
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Draw a map: SVG of its polygon gluing or DOT of its cycle graph.
    Render {
        /// Face rotation as a cycle string.
        #[arg(long)]
        pi: String,
        #[arg(long, value_enum)]
        format: RenderFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a sequence as OEIS b-file lines ("index value").
    Oeis {
        /// Sequence: u (by genus), H-flat or r-flat (triangles read by rows).
        kind: String,
        /// Number of entries.
        count: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EnumerateWhat {
    /// All reduced maps with m points and k hyperedges.
    Nk {
        m: usize,
        k: usize,
        #[command(flatten)]
        opts: EnumerateOpts,
    },
    /// All reduced maps of genus g, across the whole window of sizes.
    Genus {
        g: usize,
        #[command(flatten)]
        opts: EnumerateOpts,
    },
}

#[derive(Args)]
struct EnumerateOpts {
    /// Per-map output format.
    #[arg(long, value_enum, default_value_t = StreamFormat::Text)]
    format: StreamFormat,
    /// Scan even above the safety limit.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StreamFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Alpha,
    Pi,
    Cyclegraph,
    Gluing,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Dot,
}

/// Failures mapped onto the documented exit codes: 1 for mismatches and
/// I/O, 2 for usage, 3 for feasibility refusals.
#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Refused(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) | CliError::Io(_) => 1,
            CliError::Refused(_) => 3,
        }
    }
}

impl From<hypermono::ScanError> for CliError {
    fn from(e: hypermono::ScanError) -> Self {
        CliError::Refused(e.to_string())
    }
}

/// Shared knobs handed to every command.
struct Ctx {
    base: usize,
    json: bool,
    scan: ScanOptions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        base: cli.base as usize,
        json: cli.json,
        scan: ScanOptions {
            limit: cli.limit,
            force: false,
            threads: cli.threads,
        },
    };
    let result = match cli.cmd {
        Cmd::Count {
            kind,
            args,
            verify,
            force,
        } => commands::count(&ctx, &kind, &args, verify, force),
        Cmd::Table {
            kind,
            max_n,
            format,
        } => commands::table(&ctx, &kind, max_n, format),
        Cmd::Enumerate { what } => match what {
            EnumerateWhat::Nk { m, k, opts } => commands::enumerate_nk(&ctx, m, k, &opts),
            EnumerateWhat::Genus { g, opts } => commands::enumerate_genus(&ctx, g, &opts),
        },
        Cmd::Verify { max_m, force } => commands::verify(&ctx, max_m, force),
        Cmd::Convert {
            pi,
            alpha,
            m,
            gluing,
            to,
        } => commands::convert(
            &ctx,
            pi.as_deref(),
            alpha.as_deref(),
            m,
            gluing.as_deref(),
            to,
        ),
        Cmd::Render { pi, format, out } => commands::render(&ctx, &pi, format, out.as_deref()),
        Cmd::Oeis { kind, count, out } => commands::oeis(&ctx, &kind, count, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
