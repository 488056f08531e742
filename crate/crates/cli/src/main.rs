mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use x1_core::matgroup::DEFAULT_CAP;

use crate::output::Format;

/// Matrix groups over Z/nZ, point degrees on X_1(n), level certificates and
/// sporadic-point checks.
#[derive(Parser)]
#[command(name = "x1", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest element set a group closure may build.
    #[arg(
        long,
        global = true,
        env = "X1_CLOSURE_CAP",
        default_value_t = DEFAULT_CAP as u64,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StandardKind {
    Gl2,
    Sl2,
    Borel,
    SplitCartan,
    Trivial,
}

/// Where a group comes from: a JSON group file or a standard family.
#[derive(Args, Debug)]
pub struct GroupSource {
    /// Group file `{"modulus": n, "generators": [[a,b,c,d], ...]}`.
    #[arg(
        long = "in",
        value_name = "FILE",
        conflicts_with = "standard",
        required_unless_present = "standard"
    )]
    pub input: Option<PathBuf>,

    /// Standard subgroup of GL2(Z/n) instead of a file.
    #[arg(long, value_enum, requires = "modulus")]
    pub standard: Option<StandardKind>,

    /// Modulus for `--standard`.
    #[arg(long)]
    pub modulus: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, index, SL2 containment, projections, kernels and Goursat data.
    Group {
        #[command(flatten)]
        source: GroupSource,
        /// Report the image mod M and whether the group is its full preimage.
        #[arg(long, value_name = "M")]
        project: Vec<u64>,
        /// Report the kernel of reduction mod M.
        #[arg(long, value_name = "M")]
        kernel: Vec<u64>,
        /// Goursat data along n = A * (n/A) with coprime factors.
        #[arg(long, value_name = "A")]
        goursat: Option<u64>,
        /// Print the group file instead of a summary.
        #[arg(long)]
        emit_group: bool,
    },
    /// Orbits on vectors of exact order n.
    Orbits {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = 1)]
        field_degree: u64,
        /// Compare degree growth along X_1(n) -> X_1(n/B) with the maximum.
        #[arg(long, value_name = "B")]
        growth: Option<u64>,
    },
    /// Degrees of closed points of X_1(n) above the image.
    Degrees {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = 1)]
        field_degree: u64,
        /// Compare degrees along X_1(n) -> X_1(A).
        #[arg(long, value_name = "A")]
        pushforward: Option<u64>,
    },
    /// Certify and minimize the level of a group.
    Level {
        #[command(flatten)]
        source: GroupSource,
        /// Stage s of the kernel check for a prime-power modulus l^k
        /// (default k - 1).
        #[arg(long)]
        stage: Option<u32>,
        /// Per-prime level data `l:t,l:t` for a composite modulus.
        #[arg(long, value_name = "DATA")]
        compose: Option<String>,
    },
    /// Valuation bound on the level of the m_S-adic image.
    LevelBound {
        /// Prime set S.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Only report this prime.
        #[arg(long)]
        prime: Option<u64>,
        /// Image order mod l, as `l=order`.
        #[arg(long, value_name = "L=ORDER")]
        image_order: Vec<String>,
        /// Explicit tau, as `l=tau`.
        #[arg(long, value_name = "L=TAU")]
        tau: Vec<String>,
        /// Single-prime level, as `l=level`.
        #[arg(long, value_name = "L=LEVEL")]
        single_level: Vec<String>,
    },
    /// Index, genus, cusps and gonality data of X_1(N).
    Curve { n: u64 },
    /// Index criterion for a point of degree d on X_1(N), plus the gonality
    /// criterion when a gonality is known or given.
    SporadicCheck {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        gonality: Option<u64>,
    },
    /// Threshold and point degree for the CM construction.
    Cm {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, requires = "w")]
        h: Option<u64>,
        #[arg(long, requires = "h")]
        w: Option<u64>,
        /// Prime to use instead of the smallest admissible one.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Run the classification on a Galois-image profile.
    Classify {
        /// Profile file.
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        #[arg(long)]
        n: u64,
        /// Level M of the image, for the target X_1(gcd(n, M)).
        #[arg(long)]
        level: Option<u64>,
        /// Set the assume_sz flag regardless of the profile.
        #[arg(long)]
        assume_sz: bool,
    },
    /// Built-in tables.
    Tables {
        #[arg(long, value_enum)]
        which: TableKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Classification,
    Gl2,
    M1,
    Sz,
    Gonality,
    ClassNumbers,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = usize::try_from(cli.cap).unwrap_or(usize::MAX);
    let result = match cli.command {
        Command::Group {
            source,
            project,
            kernel,
            goursat,
            emit_group,
        } => commands::group(&source, &project, &kernel, goursat, emit_group, cap),
        Command::Orbits {
            source,
            field_degree,
            growth,
        } => commands::orbits(&source, field_degree, growth, cap),
        Command::Degrees {
            source,
            field_degree,
            pushforward,
        } => commands::degrees(&source, field_degree, pushforward, cap),
        Command::Level {
            source,
            stage,
            compose,
        } => commands::level(&source, stage, compose.as_deref(), cap),
        Command::LevelBound {
            primes,
            prime,
            image_order,
            tau,
            single_level,
        } => commands::level_bound(&primes, prime, &image_order, &tau, &single_level),
        Command::Curve { n } => commands::curve(n),
        Command::SporadicCheck {
            level,
            degree,
            gonality,
        } => commands::sporadic_check(level, degree, gonality),
        Command::Cm { disc, h, w, ell } => commands::cm(disc, h.zip(w), ell),
        Command::Classify {
            profile,
            n,
            level,
            assume_sz,
        } => commands::classify(&profile, n, level, assume_sz),
        Command::Tables { which } => commands::tables(which),
    };
    match result.and_then(|o| Ok((o.report.render(cli.format)?, o.issued))) {
        Ok((text, issued)) => {
            print!("{text}");
            if issued == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
