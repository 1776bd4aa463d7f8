use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use heckecat::cache::CacheStore;
use heckecat::commands::{self, CacheAction, CliConfig, KlBasis};
use heckecat::format::OutputFormat;
use heckecat_core::oracle::DEFAULT_SEED;
use heckecat_core::BasisTag;

/// Hecke algebra and category O Grothendieck group calculator for finite Weyl groups.
///
/// Elements are generator words such as 121, with e for the identity and w0
/// for the longest element.
#[derive(Debug, Parser)]
#[command(name = "heckecat", version)]
struct Cli {
    /// Output format
    #[arg(long, short, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Directory for cached KL tables [env: HECKECAT_CACHE; default: per-user data directory]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore cached KL tables and do not write any
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for randomized checks and cache validation
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, lengths, descents and the longest element
    Group {
        cartan: String,
        /// Also list every element
        #[arg(long)]
        table: bool,
    },
    /// KL polynomials, mu values, or an expansion of one KL-type basis element
    Kl {
        cartan: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Expand this basis element of --w in the standard basis
        #[arg(long, value_enum)]
        basis: Option<KlBasis>,
        #[arg(long)]
        w: Option<String>,
    },
    /// Write a class in another basis (all six if --to is omitted)
    Basis {
        cartan: String,
        /// e.g. "L[121]", "P[e] - delta[1]<1>"
        class: String,
        #[arg(long, alias = "basis", value_parser = parse_basis)]
        to: Option<BasisTag>,
    },
    /// Apply a functor word to a class, e.g. apply A2 "T[1]" "L[121]"
    Apply {
        cartan: String,
        /// T[w], C[w], theta[w], Z1[s], Z2[s]; a word applies right to left
        functor: String,
        class: String,
        /// Basis of the result (default: that of the first input term)
        #[arg(long, value_parser = parse_basis)]
        basis: Option<BasisTag>,
    },
    /// Run the identity battery; exit status 0 iff every selected check passes
    Verify {
        cartan: String,
        /// Comma-separated subset of checks
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Also write the report as JSON to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Inspect or manage the KL table cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

fn parse_basis(s: &str) -> Result<BasisTag, String> {
    s.parse().map_err(|_| format!("unknown basis {s:?} (Delta, Nabla, L, P, T, I)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = if cli.no_cache { None } else { CacheStore::resolve(cli.cache_dir.clone()) };
    let cfg = CliConfig { output: cli.output, cache, seed: cli.seed };
    let result = match &cli.command {
        Command::Group { cartan, table } => commands::cmd_group(&cfg, cartan, *table),
        Command::Kl { cartan, x, y, basis, w } => {
            commands::cmd_kl(&cfg, cartan, x.as_deref(), y.as_deref(), *basis, w.as_deref())
        }
        Command::Basis { cartan, class, to } => commands::cmd_basis(&cfg, cartan, class, *to),
        Command::Apply { cartan, functor, class, basis } => commands::cmd_apply(&cfg, cartan, functor, class, *basis),
        Command::Verify { cartan, checks, json } => commands::cmd_verify(&cfg, cartan, checks, json.clone()),
        Command::Cache { action } => commands::cmd_cache(&cfg, action),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            eprintln!("run `heckecat --help` for usage");
            ExitCode::from(2)
        }
    }
}
