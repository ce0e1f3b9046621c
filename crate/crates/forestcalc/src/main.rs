use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use forestcalc::commands::{Failure, TModel};
use forestcalc::formats::{self, InputError};
use forestcalc::{default_cache_dir, run, write_atomically, CapArgs, Command, Format, RunConfig, EXIT_FAIL, EXIT_INVALID};
use forestcalc_core::verify::{Level, Mutation};

#[derive(Parser)]
#[command(name = "forestcalc", version, about = "Partition calculus, coends of configuration powers and their homology")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: FormatArg,
    /// Write the envelope here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cache directory; defaults to $FORESTCALC_CACHE, then the user cache directory.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Record wall time in the envelope (makes envelopes differ between runs).
    #[arg(long, global = true)]
    timing: bool,
    /// Largest support size to enumerate partitions over.
    #[arg(long, global = true)]
    support_cap: Option<usize>,
    /// Largest simplex dimension built in products.
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    /// Largest excess n.
    #[arg(long, global = true)]
    n_cap: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Quotient,
    Suspension,
}

#[derive(Args)]
struct CoeffArg {
    /// Z, Q or F<p> for a prime p.
    #[arg(long, default_value = "Z")]
    coeff: String,
}

#[derive(Subcommand)]
enum Sub {
    /// Irreducible partitions of excess n and strict fusions between them.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only the objects with this many components.
        #[arg(long)]
        stratum: Option<usize>,
        /// Cross-check the class count against a non-skeletal enumeration.
        #[arg(long)]
        full: bool,
    },
    /// Good and bad diagonals relative to a partition.
    Goodness {
        /// Partition JSON, inline or a file path.
        #[arg(long)]
        lambda: String,
        #[arg(long, conflicts_with = "all")]
        delta: Option<String>,
        /// Every partition of the support (the default without --delta).
        #[arg(long)]
        all: bool,
    },
    /// Homology of the partition-poset complex of a partition.
    Tspace {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "quotient")]
        model: ModelArg,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// The coend and strata computing the n-th layer for a model of M.
    Layer {
        /// A builtin (points:k, interval, circle, wedge:k, polygon:k, path:k, rp2), inline JSON or a file.
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        coeff: CoeffArg,
        /// Include the cells of the coend.
        #[arg(long)]
        emit_cells: bool,
    },
    /// Whether a cube of subobjects is a homotopy pushout.
    CubeCheck {
        /// Cube JSON, inline or a file path.
        #[arg(long)]
        cube: String,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Run the named lemma checks.
    Verify {
        #[arg(long, conflicts_with = "exhaustive")]
        quick: bool,
        #[arg(long)]
        exhaustive: bool,
        /// Run only these checks.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Flip one strictness verdict to exercise the suite.
        #[arg(long, hide = true)]
        mutate: bool,
    },
}

fn build(cli: Cli) -> Result<RunConfig, InputError> {
    let (command, coeff) = match cli.command {
        Sub::Enumerate { n, stratum, full } => (Command::Enumerate { n, stratum, full }, None),
        Sub::Goodness { lambda, delta, all: _ } => {
            let lambda = formats::parse_partition("lambda", &formats::inline_or_file("lambda", &lambda)?)?;
            let delta = match delta {
                Some(d) => Some(formats::parse_partition("delta", &formats::inline_or_file("delta", &d)?)?),
                None => None,
            };
            (Command::Goodness { lambda, delta }, None)
        }
        Sub::Tspace { lambda, model, coeff } => {
            let lambda = formats::parse_partition("lambda", &formats::inline_or_file("lambda", &lambda)?)?;
            let model = match model {
                ModelArg::Quotient => TModel::Quotient,
                ModelArg::Suspension => TModel::Suspension,
            };
            (Command::TSpace { lambda, model }, Some(formats::parse_coefficients(&coeff.coeff)?))
        }
        Sub::Layer { m, n, coeff, emit_cells } => {
            let m = formats::parse_model_arg("m", &m)?;
            (Command::Layer { m, n, emit_cells }, Some(formats::parse_coefficients(&coeff.coeff)?))
        }
        Sub::CubeCheck { cube, coeff } => {
            let text = formats::inline_or_file("cube", &cube)?;
            let parsed = formats::parse_cube("cube", &text)?;
            let input: serde_json::Value = serde_json::from_str(&text).expect("parsed above");
            (Command::CubeCheck { cube: Box::new(parsed), input }, Some(formats::parse_coefficients(&coeff.coeff)?))
        }
        Sub::Verify { quick: _, exhaustive, checks, mutate } => {
            let level = if exhaustive { Level::Exhaustive } else { Level::Quick };
            (Command::Verify { level, checks, mutation: Mutation { flip_strictness: mutate } }, None)
        }
    };
    let caps = CapArgs { support: cli.support_cap, dimension: cli.dim_cap, n: cli.n_cap }.resolve(&command)?;
    Ok(RunConfig {
        command,
        caps,
        coeff,
        cache_dir: if cli.no_cache { None } else { default_cache_dir(cli.cache_dir) },
        out: cli.out,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        timing: cli.timing,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: invalid input: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let envelope = match run(&config) {
        Ok((envelope, _)) => envelope,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: invalid input: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
        Err(Failure::Computation(e)) => {
            eprintln!("error: computation failed: {e}");
            return ExitCode::from(EXIT_FAIL as u8);
        }
    };
    let text = envelope.render(config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, text.as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(envelope.exit_code() as u8)
}
