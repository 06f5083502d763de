//! `minbase`: bases, intersection numbers and base numbers from the command
//! line. Every command prints a certificate; `verify` re-checks one.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minbase::cert::Certificate;
use minbase::lattice::{DEFAULT_ORDER_CAP, HARD_ORDER_CAP};
use minbase::partition::base::{DEFAULT_BUDGET, DEFAULT_SEED};
use minbase::Error;

#[derive(Parser, Debug)]
#[command(
    name = "minbase",
    version,
    about = "Minimal bases and intersection numbers of finite groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print the certificate as JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Trial budget for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest group order for which a subgroup lattice is built.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: u64,
    /// Record wall-clock time in the certificate.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Exact,
    Upper,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Base of the theorem's size for S_ab (or A_ab) on partitions.
    PartitionBase {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        /// Work in the alternating group.
        #[arg(long)]
        alt: bool,
    },
    /// Base size on partitions, exact (n <= 12 or a pair) or an upper bound.
    BaseSize {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long)]
        alt: bool,
    },
    /// Stabilizer of a family of partitions, e.g. --partition "{1,2}|{3,4}".
    Stabilizer {
        #[arg(long = "partition", required = true)]
        partitions: Vec<String>,
        #[arg(long)]
        even: bool,
    },
    /// Intersection number of a group.
    Alpha { spec: String },
    /// Intersection number and base number of a group.
    Beta { spec: String },
    /// Evaluate the probabilistic bound for a family over a q-grid, or for
    /// every maximal subgroup of a concrete group.
    Qhat {
        #[arg(long, required_unless_present = "spec")]
        family: Option<String>,
        /// A range `lo..hi` (inclusive, invalid q skipped) or a comma list.
        #[arg(long, required_unless_present = "spec")]
        q: Option<String>,
        #[arg(long, default_value_t = 3)]
        c: u32,
        #[arg(long, conflicts_with_all = ["family", "q"])]
        spec: Option<String>,
    },
    /// Symplectic pair stabilizer (odd q) or the triple check with --triple.
    Sp4 {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        triple: bool,
    },
    /// Odd-dimensional orthogonal construction: exhaustive pair check for
    /// prime q, field-automorphism check otherwise.
    Orth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// alpha <= lambda and alpha <= delta for soluble groups.
    Soluble {
        #[arg(long, required_unless_present = "catalog")]
        spec: Option<String>,
        /// Run the whole soluble catalog.
        #[arg(long, conflicts_with = "spec")]
        catalog: bool,
    },
    /// Chief-factor bound for the intersection number.
    Theorem4 {
        #[arg(long)]
        spec: String,
    },
    /// Re-check a certificate file.
    Verify { file: std::path::PathBuf },
    /// List the built-in groups.
    Catalog,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Certificate(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if g.cap > HARD_ORDER_CAP {
        eprintln!("refused: --cap {} exceeds the hard limit {HARD_ORDER_CAP}", g.cap);
        return ExitCode::from(2);
    }
    if let Command::Verify { file } = &cli.command {
        return match commands::verify(file, g.json) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_for(&e))
            }
        };
    }
    if let Command::Catalog = &cli.command {
        commands::catalog(g.json);
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let result: minbase::Result<Certificate> = match &cli.command {
        Command::PartitionBase { a, b, alt } => commands::partition_base(*a, *b, *alt, g),
        Command::BaseSize { a, b, mode, alt } => commands::base_size(*a, *b, *mode, *alt, g),
        Command::Stabilizer { partitions, even } => commands::stabilizer(partitions, *even),
        Command::Alpha { spec } => commands::alpha(spec, g),
        Command::Beta { spec } => commands::beta(spec, g),
        Command::Qhat { family, q, c, spec } => match spec {
            Some(spec) => commands::qhat_group(spec, *c, g),
            None => commands::qhat_family(family.as_deref().unwrap_or(""), q.as_deref().unwrap_or(""), *c),
        },
        Command::Sp4 { q, triple } => commands::sp4(*q, *triple),
        Command::Orth { n, q } => commands::orth(*n, *q),
        Command::Soluble { spec, catalog } => commands::soluble(spec.as_deref(), *catalog, g),
        Command::Theorem4 { spec } => commands::theorem4(spec, g),
        Command::Verify { .. } | Command::Catalog => unreachable!(),
    };
    match result {
        Ok(mut cert) => {
            if g.timing {
                cert.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            if g.json {
                println!("{}", cert.to_json());
            } else {
                commands::print_human(&cert);
            }
            if cert.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = exit_for(&e);
            let label = if code == 1 { "fail" } else { "refused" };
            eprintln!("{label}: {e}");
            ExitCode::from(code)
        }
    }
}
