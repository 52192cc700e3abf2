//! `hypercat`: counting, enumeration, series solving and identity checks for
//! subdigons and tubdigons.
//!
//! Exit codes: 0 success, 1 identity violated, 2 usage error, 3 bound exceeded.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::SeriesKind;

#[derive(Debug, Parser)]
#[command(name = "hypercat", version, about)]
struct Cli {
    /// Emit one JSON record on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count shapes of a type such as `0;3` or `1;1`.
    Count {
        /// Type literal `m1;m2,m3,...`.
        r#type: String,
        /// Always cross-check by enumeration, failing with exit 3 beyond this
        /// many edges.
        #[arg(long, value_name = "EDGES")]
        bound: Option<u64>,
    },
    /// Check sum over partitions of n into r parts of r!/(k1! k2! ...) = C(n-1, r-1).
    Fine {
        n: u64,
        /// Parts; when omitted, every r and the row sum 2^(n-1) are checked.
        r: Option<u64>,
    },
    /// Series root of c0 - c1 x + c2 x^2 + c3 x^3 + ... = 0.
    ///
    /// Coefficients are given in order c0 c1 c2 ..., with the sign convention
    /// 0 = c0 - c1 x + c2 x^2 + c3 x^3 + ...: the linear term carries a minus
    /// sign and every other term a plus sign. c1 must be nonzero. Integers and
    /// fractions such as -1/7 are exact; decimals switch to floating point.
    Solve {
        /// c0 c1 c2 ...
        #[arg(required = true, num_args = 2..)]
        coefficients: Vec<String>,
        /// Keep terms of edge grade at most N.
        #[arg(long, value_name = "N", default_value_t = 24)]
        order: u64,
        /// Print the partial sum and residual at every grade.
        #[arg(long)]
        profile: bool,
    },
    /// Monomials of M = sum of all u^k, grouped by k1 + 2 k2 + 3 k3 + ...
    Layers { n: u64 },
    /// Print every shape of a type in canonical encoding.
    Enumerate {
        r#type: String,
        /// Refuse types with more than this many edges.
        #[arg(long, value_name = "EDGES")]
        bound: Option<u64>,
    },
    /// Solve the generating series by fixed-point iteration.
    Series {
        kind: SeriesKind,
        #[arg(long, value_name = "N", default_value_t = 6)]
        order: u64,
        /// Largest k with a variable t_k (faces up to (k + 1)-gons); defaults to
        /// order + 1, which includes every t_k that can appear.
        #[arg(long, value_name = "G")]
        max_gonality: Option<u32>,
    },
}

/// Moves `solve` coefficients behind `--` so that literals such as `-1/7`
/// are not mistaken for flags, wherever they sit among the options.
fn separate_solve_coefficients(args: Vec<String>) -> Vec<String> {
    let Some(at) = args
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|i| i + 1)
        .filter(|&i| args[i] == "solve")
    else {
        return args;
    };
    if args[at + 1..].iter().any(|a| a == "--") {
        return args;
    }
    let mut head = args[..=at].to_vec();
    let mut coefficients = Vec::new();
    let mut rest = args[at + 1..].iter();
    while let Some(a) = rest.next() {
        let numeric =
            a.starts_with('-') && a[1..].starts_with(|c: char| c.is_ascii_digit() || c == '.');
        if !a.starts_with('-') || numeric {
            coefficients.push(a.clone());
        } else {
            head.push(a.clone());
            if a == "--order" {
                head.extend(rest.next().cloned());
            }
        }
    }
    head.push("--".into());
    head.extend(coefficients);
    head
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(separate_solve_coefficients(std::env::args().collect())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Count { r#type, bound } => commands::count(r#type, *bound),
        Command::Fine { n, r } => commands::fine(*n, *r),
        Command::Solve {
            coefficients,
            order,
            profile,
        } => commands::solve(coefficients, *order, *profile),
        Command::Layers { n } => commands::layers(*n),
        Command::Enumerate { r#type, bound } => commands::enumerate(r#type, *bound),
        Command::Series {
            kind,
            order,
            max_gonality,
        } => commands::series(*kind, *order, *max_gonality),
    };

    let mut report = match outcome {
        Ok(r) => r,
        Err(f) => {
            eprintln!("hypercat: {}", f.message());
            return ExitCode::from(f.exit_code());
        }
    };
    report.record.timing_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut out = std::io::stdout().lock();
    let written = if cli.json {
        serde_json::to_string_pretty(&report.record)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        report.lines.iter().try_for_each(|l| writeln!(out, "{l}"))
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("hypercat: {e}");
            return ExitCode::from(2);
        }
    }
    if !cli.json {
        for note in &report.notes {
            eprintln!("# {note}");
        }
        eprintln!("# {:.3} ms", report.record.timing_ms);
    }

    if report.holds {
        ExitCode::SUCCESS
    } else {
        eprintln!("hypercat: identity check FAILED");
        ExitCode::from(1)
    }
}
