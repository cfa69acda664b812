//! `binop`: enumerations and verifications for groups of binary
//! operations on finite carriers.
//!
//! Every subcommand writes one JSON document to stdout and a one-line
//! summary to stderr (silenced by `--quiet`). Exit codes: 0 when all
//! checks pass, 1 when a property is violated (the payload then carries
//! at least one witness), 2 on input or format errors.

mod cmd;
mod groups;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmd::{EmbedKind, EnumerateMode, Outcome};

#[derive(Parser)]
#[command(name = "binop", version, about = "Groups of binary operations on finite carriers")]
struct Cli {
    /// Suppress the stderr summary line.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the invertible binary operations on n points.
    Enumerate {
        /// Carrier size (fast mode caps at 4, brute at 3).
        #[arg(long)]
        n: usize,
        /// fast walks permutation families; brute scans all n^(n*n) tables.
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
        /// Include every table in the payload.
        #[arg(long)]
        list: bool,
        /// Run both modes and verify they agree as sets (n <= 3).
        #[arg(long)]
        cross_check: bool,
    },
    /// Emit the Cayley table of the group of invertible operations.
    Cayley {
        /// Carrier size; the group has (n!)^n elements, capped at 1024.
        #[arg(long)]
        n: usize,
    },
    /// Generate fixture actions as JSON on stdout.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Verify the binary-action axioms of a JSON action file.
    CheckAction {
        /// Path to a binary-action JSON document.
        file: PathBuf,
    },
    /// Orbit and diagonal-set report for one carrier point.
    Orbit {
        /// Path to a binary-action JSON document.
        file: PathBuf,
        /// The carrier point.
        #[arg(long)]
        x: usize,
        /// Also report the two-argument set G(x, y) and its status.
        #[arg(long)]
        y: Option<usize>,
    },
    /// Enumerate invariant subsets, or survey small conjugation actions.
    Invariants(InvariantsArgs),
    /// Check distributivity and, if it holds, diagonal-set invariance.
    Distributive {
        /// Path to a binary-action JSON document.
        file: PathBuf,
    },
    /// Residual checks for the affine action of invertible matrices.
    #[command(subcommand)]
    Numeric(NumericCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fast,
    Brute,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The conjugation action of a group on itself.
    Conj {
        /// Group name: Z<m>, S<k>, D<m>, Q8, or products like Z2xZ4.
        #[arg(long)]
        group: String,
    },
    /// An ordinary action embedded as a binary action (constant tables).
    Embed {
        /// Group name: Z<m>, S<k>, D<m>, Q8, or products like Z2xZ4.
        #[arg(long)]
        group: String,
        /// Which ordinary action to embed.
        #[arg(long, value_enum)]
        action: Embed,
        /// Carrier size for the trivial action (defaults to the order).
        #[arg(long)]
        points: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Embed {
    /// Every element fixes every point.
    Trivial,
    /// Left translation on the group itself.
    Regular,
    /// The symmetric group permuting its letters (S<k> only).
    Natural,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Path to a binary-action JSON document.
    #[arg(required_unless_present = "sweep", conflicts_with = "sweep")]
    file: Option<PathBuf>,
    /// Survey conjugation actions of all groups up to --max-order.
    #[arg(long)]
    sweep: bool,
    /// Largest group order included in the sweep.
    #[arg(long, default_value_t = 8)]
    max_order: usize,
}

#[derive(Args)]
struct NumericFlags {
    /// Ambient dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Number of random samples.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed (recorded in the report).
    #[arg(long, default_value_t = cmd::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum NumericCommand {
    /// Composition and identity axioms of the affine action.
    Axioms {
        #[command(flatten)]
        flags: NumericFlags,
        /// Largest acceptable max-norm residual.
        #[arg(long, default_value_t = cmd::DEFAULT_TOL)]
        tol: f64,
    },
    /// Fixed-point check A(x, x) = x.
    Singleton {
        #[command(flatten)]
        flags: NumericFlags,
        /// Largest acceptable max-norm residual.
        #[arg(long, default_value_t = cmd::SINGLETON_TOL)]
        tol: f64,
    },
    /// The shift v -> v - base intertwines the actions induced at base
    /// and at the origin.
    Equivariance {
        #[command(flatten)]
        flags: NumericFlags,
        /// Largest acceptable max-norm residual.
        #[arg(long, default_value_t = cmd::DEFAULT_TOL)]
        tol: f64,
        /// Base point as comma-separated numbers (default: seeded draw).
        #[arg(long)]
        base: Option<String>,
    },
    /// Matrices witnessing that a two-point set is not invariant.
    UnionDemo {
        /// Ambient dimension.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// First point, comma-separated (default: the origin).
        #[arg(long)]
        x: Option<String>,
        /// Second point, comma-separated (default: first basis vector).
        #[arg(long)]
        y: Option<String>,
    },
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Enumerate {
            n,
            mode,
            list,
            cross_check,
        } => {
            let mode = match mode {
                Mode::Fast => EnumerateMode::Fast,
                Mode::Brute => EnumerateMode::Brute,
            };
            cmd::enumerate(n, mode, list, cross_check)
        }
        Command::Cayley { n } => cmd::cayley(n),
        Command::Gen(GenCommand::Conj { group }) => cmd::gen_conjugation(&group),
        Command::Gen(GenCommand::Embed {
            group,
            action,
            points,
        }) => {
            let kind = match action {
                Embed::Trivial => EmbedKind::Trivial,
                Embed::Regular => EmbedKind::Regular,
                Embed::Natural => EmbedKind::Natural,
            };
            cmd::gen_embedding(&group, kind, points)
        }
        Command::CheckAction { file } => cmd::check_action(&file),
        Command::Orbit { file, x, y } => cmd::orbit_report(&file, x, y),
        Command::Invariants(args) => match args.file {
            Some(file) => cmd::invariants_of_file(&file),
            None => cmd::invariants_sweep(args.max_order),
        },
        Command::Distributive { file } => cmd::distributive_report(&file),
        Command::Numeric(NumericCommand::Axioms { flags, tol }) => {
            cmd::numeric_axioms(flags.dim, flags.samples, flags.seed, tol)
        }
        Command::Numeric(NumericCommand::Singleton { flags, tol }) => {
            cmd::numeric_singleton(flags.dim, flags.samples, flags.seed, tol)
        }
        Command::Numeric(NumericCommand::Equivariance { flags, tol, base }) => {
            cmd::numeric_equivariance(flags.dim, flags.samples, flags.seed, tol, base.as_deref())
        }
        Command::Numeric(NumericCommand::UnionDemo { dim, x, y }) => {
            cmd::numeric_union_demo(dim, x.as_deref(), y.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.payload);
            if !cli.quiet {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
