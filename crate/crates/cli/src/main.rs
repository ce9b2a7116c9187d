use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use o2pres::report::{Report, Timing};

mod commands;

use commands::{Claim, Method, Which};

#[derive(Parser, Debug)]
#[command(name = "o2pres", version, about = "Machine checks for presentations of O(g, F2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Allow g = 7 coset enumeration and BFS closure for g >= 7
    #[arg(long, global = true)]
    slow: bool,

    /// Coset table limit (default: $O2PRES_MAX_COSETS or 5000000)
    #[arg(long, global = true)]
    max_cosets: Option<usize>,

    /// Element limit for BFS closure
    #[arg(long, global = true, default_value_t = o2pres::ortho::DEFAULT_CAP)]
    cap: usize,

    /// Include wall-clock time in the report (output is then no longer reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every relator of the genus-g presentation in the matrix group
    Verify {
        #[arg(long)]
        genus: usize,
    },
    /// Compute the group order by one method and compare with the formula
    Order {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Abelianization of the genus-g presentation
    H1 {
        #[arg(long)]
        genus: usize,
    },
    /// Relation matrix, kernel and x0 checks for the second homology generator
    Hopf {
        #[arg(long)]
        genus: usize,
    },
    /// Build and replay rewriting derivations
    Rewrite {
        #[arg(long, value_enum)]
        claim: Claim,
        /// Chain length for the chain-power identity
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
        /// Write the derivation moves as JSON
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Write a presentation as JSON
    Export {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        out: std::path::PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        slow: cli.slow,
        max_cosets: cli.max_cosets.unwrap_or_else(o2pres::coset::default_max_cosets),
        cap: cli.cap,
    };
    let start = Instant::now();
    let result = match cli.command {
        Command::Verify { genus } => commands::verify(genus),
        Command::Order { genus, method } => commands::order(genus, method, &opts),
        Command::H1 { genus } => commands::h1(genus),
        Command::Hopf { genus } => commands::hopf(genus),
        Command::Rewrite { claim, n, genus, out } => {
            commands::rewrite(claim, n, genus, out.as_deref())
        }
        Command::Export { genus, which, out } => commands::export(genus, which, &out),
    };
    let mut report: Report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        report.timing = Some(Timing { total_ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    ExitCode::from(report.exit_code() as u8)
}
