use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use assf_cli::commands::{self, AssfRequest, Format, RhoVariant, CACHE_ENV};
use assf_cli::suites::{run_suite, FamilyArg, Suite, SuiteConfig, SuiteReport};
use assf_core::cartan::Family;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "affine-stanley", version, about = "Affine Stanley symmetric functions of classical type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "B")]
    family: Family,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = Format::Table, value_enum)]
    format: Format,
}

#[derive(Clone, Copy)]
enum SuiteSel {
    All,
    One(Suite),
}

impl FromStr for SuiteSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SuiteSel::All);
        }
        Suite::from_str(s, true).map(SuiteSel::One)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monomial expansions of F_w, optionally with the dual kS_w in Schur Q functions.
    #[command(group = clap::ArgGroup::new("which").required(true).args(["word", "all"]))]
    Assf {
        #[command(flatten)]
        common: Common,
        /// Reduced word, space or comma separated; empty for the identity.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        /// Every Grassmannian element up to --max-degree.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        dual: bool,
        /// Also print the Schur P expansion.
        #[arg(long)]
        schur_p: bool,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        /// membership, relations, coproduct, typefree, covers, kernel, duality, positivity, typeD or all.
        suite: SuiteSel,
        #[arg(long, default_value = "B")]
        family: FamilyArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Upper rank for suites that sweep ranks.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// Element to test for membership, e.g. "2" or "1*2 0 + 2*1 0".
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = Format::Table, value_enum)]
        format: Format,
        /// Suites run concurrently with `all`.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// xi_{rho_i} xi_w in the Schubert basis.
    Pieri {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, conflicts_with = "rho2")]
        rho1: bool,
        #[arg(long)]
        rho2: bool,
    },
    /// Pieri factors with their support statistics.
    Factors {
        #[command(flatten)]
        common: Common,
    },
    /// The type D sign element.
    Epsilon {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn applicable(s: Suite, f: FamilyArg) -> bool {
    match (s, f) {
        (Suite::Typefree, _) => true,
        (_, FamilyArg::All) => false,
        (Suite::Duality | Suite::Positivity, FamilyArg::One(f)) => f == Family::B,
        (Suite::TypeD, FamilyArg::One(f)) => f == Family::D,
        (Suite::Relations | Suite::Coproduct | Suite::Covers, FamilyArg::One(f)) => matches!(f, Family::B | Family::D),
        (Suite::Membership | Suite::Kernel, _) => true,
    }
}

fn verify(sel: SuiteSel, cfg: &SuiteConfig, jobs: usize) -> assf_core::Result<Vec<SuiteReport>> {
    let suites: Vec<Suite> = match sel {
        SuiteSel::One(s) => vec![s],
        SuiteSel::All => Suite::ALL.into_iter().filter(|&s| applicable(s, cfg.family)).collect(),
    };
    let mut results: Vec<assf_core::Result<Vec<SuiteReport>>> = Vec::new();
    for chunk in suites.chunks(jobs.max(1)) {
        let done: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunk.iter().map(|&s| scope.spawn(move || run_suite(s, cfg))).collect();
            handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
        });
        results.extend(done);
    }
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(bool, String), assf_core::Error> {
    match cli.command {
        Command::Assf { common, word, all, dual, schur_p, max_degree, cache_dir } => {
            if max_degree > 2 * common.n {
                eprintln!("warning: --max-degree {max_degree} exceeds twice the rank");
            }
            let req = AssfRequest {
                family: common.family,
                n: common.n,
                word: if all { None } else { word },
                dual,
                schur_p,
                max_degree,
                format: common.format,
                cache_dir,
            };
            Ok((true, commands::cmd_assf(&req)?))
        }
        Command::Verify { suite, family, n, n_max, max_degree, element, format, jobs } => {
            let cfg = SuiteConfig { family, n, n_max, max_degree, element };
            Ok(commands::render_reports(verify(suite, &cfg, jobs)?, format))
        }
        Command::Pieri { common, i, word, rho1, rho2 } => {
            let variant = match (rho1, rho2) {
                (true, _) => Some(RhoVariant::First),
                (_, true) => Some(RhoVariant::Second),
                _ => None,
            };
            Ok((true, commands::cmd_pieri(common.family, common.n, i, &word, variant, common.format)?))
        }
        Command::Factors { common } => Ok((true, commands::cmd_factors(common.family, common.n, common.format)?)),
        Command::Epsilon { n } => Ok((true, commands::cmd_epsilon(n)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((passed, text)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
