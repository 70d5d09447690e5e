use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

mod cache;
mod commands;
mod error;
mod tuple;

use cache::{Cache, CacheKey, CachedRun};
use error::CliError;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAIL: i32 = 3;
pub const EXIT_CATALOG_GAP: i32 = 4;
pub const CACHE_ENV: &str = "BRIESKORN_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "brieskorn",
    version,
    about = "Index, spectral-sequence and idempotent bookkeeping for Brieskorn manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Cache directory (defaults to $BRIESKORN_CACHE_DIR; no caching if neither is set).
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Bypass the cache entirely.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Extra homology catalog files, loaded in order.
    #[arg(long, global = true, value_name = "FILE")]
    catalog: Vec<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Records,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Morse–Bott families with their indices and degree shifts.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        /// Largest period to list (default: lcm of the exponents).
        #[arg(long)]
        pmax: Option<i64>,
    },
    /// Strongly-ADC certificate for the quotient contact structure.
    Adc {
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
    },
    /// Bounds on dim SH⁰ per degree, with the E¹ page.
    ShBounds {
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "window")]
        degree: Option<i64>,
        /// Degree range LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// p = 0 column: `shift N` and `degree dim` lines.
        #[arg(long, value_name = "FILE")]
        zero_column: Option<PathBuf>,
    },
    /// Idempotent group of a finite ℤ₂-algebra.
    Idempotents {
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        /// Report the products R, R², …, Rᴺ.
        #[arg(long)]
        power: Option<usize>,
    },
    /// Exponent tuples (2,2,2,p₁..p_k) with Σ1/pᵢ = 1/2 and pᵢ > k+8.
    Search {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        bound: i64,
        /// Scan k = 1, 2, … (up to --k, default 32) for the first feasible k.
        #[arg(long)]
        minimal_k: bool,
    },
}

/// Input files, read once so their bytes feed both the cache key and the run.
#[derive(Debug, Default)]
pub struct Inputs {
    pub catalogs: Vec<(PathBuf, String)>,
    pub zero_column: Option<(PathBuf, String)>,
    pub algebra: Option<(PathBuf, String)>,
}

fn read(path: &PathBuf) -> Result<(PathBuf, String), CliError> {
    std::fs::read_to_string(path)
        .map(|s| (path.clone(), s))
        .map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })
}

fn load_inputs(cli: &Cli) -> Result<Inputs, CliError> {
    let mut inputs = Inputs {
        catalogs: cli
            .common
            .catalog
            .iter()
            .map(read)
            .collect::<Result<_, _>>()?,
        ..Default::default()
    };
    match &cli.command {
        Command::ShBounds {
            zero_column: Some(p),
            ..
        } => inputs.zero_column = Some(read(p)?),
        Command::Idempotents { algebra, .. } => inputs.algebra = Some(read(algebra)?),
        _ => {}
    }
    Ok(inputs)
}

fn cache_key(cli: &Cli, inputs: &Inputs) -> Result<CacheKey, CliError> {
    let canonical = |t: &str| tuple::parse_tuple(t).map(|t| t.canonical().compact());
    let mut key = match &cli.command {
        Command::Spectrum { tuple, pmax } => {
            let mut k = CacheKey::new("spectrum");
            k.push("tuple", canonical(tuple)?)
                .push("pmax", format!("{pmax:?}"));
            k
        }
        Command::Adc { tuple } => {
            let mut k = CacheKey::new("adc");
            k.push("tuple", canonical(tuple)?);
            k
        }
        Command::ShBounds {
            tuple,
            degree,
            window,
            ..
        } => {
            let mut k = CacheKey::new("sh-bounds");
            k.push("tuple", canonical(tuple)?)
                .push("degree", format!("{degree:?}"))
                .push("window", format!("{window:?}"));
            k
        }
        Command::Idempotents { power, .. } => {
            let mut k = CacheKey::new("idempotents");
            k.push("power", format!("{power:?}"));
            k
        }
        Command::Search {
            k: slots,
            bound,
            minimal_k,
        } => {
            let mut k = CacheKey::new("search");
            k.push("k", format!("{slots:?}"))
                .push("bound", bound.to_string())
                .push("minimal_k", minimal_k.to_string());
            k
        }
    };
    key.push("format", format!("{:?}", cli.common.format));
    for (_, text) in &inputs.catalogs {
        key.push("catalog", text);
    }
    if let Some((_, text)) = &inputs.zero_column {
        key.push("zero_column", text);
    }
    if let Some((_, text)) = &inputs.algebra {
        key.push("algebra", text);
    }
    Ok(key)
}

fn run(cli: &Cli) -> Result<CachedRun, CliError> {
    let inputs = load_inputs(cli)?;
    let cache = if cli.common.no_cache {
        None
    } else {
        cache::default_dir(cli.common.cache.as_deref()).map(Cache::new)
    };
    let key = match &cache {
        Some(_) => Some(cache_key(cli, &inputs)?),
        None => None,
    };
    if let (Some(cache), Some(key)) = (&cache, &key) {
        if let Some(hit) = cache.load(key) {
            info!("served from cache");
            return Ok(hit);
        }
    }
    let (output, exit_code) = commands::execute(&cli.command, cli.common.format, &inputs)?;
    let result = CachedRun {
        exit_code,
        output: output.into_bytes(),
    };
    if let (Some(cache), Some(key)) = (&cache, &key) {
        cache.store(key, &result);
    }
    Ok(result)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(&r.output).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(r.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
