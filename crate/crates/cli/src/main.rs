mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bott_core::Domain;

/// Cohomology rings, characteristic classes and classification of
/// generalized Bott towers.
#[derive(Parser)]
#[command(name = "bott", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis, relations and graded ranks of the cohomology ring.
    Ring {
        tower: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Total Chern, Pontrjagin, Wu and Stiefel-Whitney classes.
    Classes { tower: PathBuf },
    /// Whether the cohomology ring is that of a product of projective spaces.
    IsProduct { tower: PathBuf },
    /// Classify two height-2 towers.
    Classify2 { first: PathBuf, second: PathBuf },
    /// Classify two three-stage Bott towers.
    Classify3 {
        first: PathBuf,
        second: PathBuf,
        /// Largest absolute matrix entry tried by the isomorphism search.
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Search for a ring isomorphism with bounded integer entries.
    IsoSearch {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// Whether a sum of line bundles over a product of projective spaces is trivial.
    BundleTrivial { bundle: PathBuf },
    /// Run the ring-engine property checks on seeded random towers.
    Check {
        /// Seed for the random towers (defaults to BOTT_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct DomainArgs {
    /// Coefficients in Z/P.
    #[arg(long = "mod", value_name = "P")]
    modulus: Option<u32>,
    /// Rational coefficients.
    #[arg(long)]
    rational: bool,
}

/// Outcome of a subcommand: 0 when computed, 1 for a negative verdict.
pub enum Status {
    Computed,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Computed) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, String> {
    let out = report::Output { json: cli.json };
    match &cli.command {
        Command::Ring { tower, domain } => {
            let tower = input::load_tower(tower).map_err(|e| e.to_string())?;
            let domain = match (domain.modulus, domain.rational) {
                (Some(p), _) => Domain::modular(p).map_err(|e| e.to_string())?,
                (None, true) => Domain::Rational,
                (None, false) => Domain::Integer,
            };
            report::ring(&out, &tower, domain)
        }
        Command::Classes { tower } => {
            let tower = input::load_tower(tower).map_err(|e| e.to_string())?;
            report::classes(&out, &tower)
        }
        Command::IsProduct { tower } => {
            let tower = input::load_tower(tower).map_err(|e| e.to_string())?;
            report::is_product(&out, &tower)
        }
        Command::Classify2 { first, second } => {
            let t = input::load_tower(first).map_err(|e| e.to_string())?;
            let s = input::load_tower(second).map_err(|e| e.to_string())?;
            report::classify2(&out, &t, &s)
        }
        Command::Classify3 { first, second, bound } => {
            let t = input::load_tower(first).map_err(|e| e.to_string())?;
            let s = input::load_tower(second).map_err(|e| e.to_string())?;
            report::classify3(&out, &t, &s, *bound)
        }
        Command::IsoSearch { first, second, bound } => {
            let t = input::load_tower(first).map_err(|e| e.to_string())?;
            let s = input::load_tower(second).map_err(|e| e.to_string())?;
            report::iso_search(&out, &t, &s, *bound)
        }
        Command::BundleTrivial { bundle } => {
            let bundle = input::load_bundle(bundle).map_err(|e| e.to_string())?;
            report::bundle_trivial(&out, &bundle)
        }
        Command::Check { seed, count } => {
            let seed = match seed {
                Some(s) => *s,
                None => match std::env::var("BOTT_SEED") {
                    Ok(v) => v.parse().map_err(|_| format!("BOTT_SEED: invalid seed {v:?}"))?,
                    Err(_) => 0,
                },
            };
            report::check(&out, seed, *count)
        }
    }
}
