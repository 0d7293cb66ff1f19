use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};

use humbert_cli::commands::{self, HilbertCommand, QuadraticPoint};
use humbert_cli::{golden, read_input, CliError, Output};
use humbert_core::humbert::DEFAULT_BUDGET;
use humbert_core::json::rational_at;

#[derive(Parser)]
#[command(name = "humbert", version, about = "Singular relations, Humbert invariants and modular embeddings for genus-2 period matrices")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 20240229, global = true)]
    seed: u64,
    /// Maximum number of states visited by searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: usize,
    /// Working precision in bits for interval computations.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Relation lattice, discriminant form and endomorphism classification of a Siegel point.
    Classify {
        /// Siegel point JSON: a file path, inline JSON, or `-` for stdin.
        input: String,
        /// Treat the abelian surface as CM when reporting the transcendence degree.
        #[arg(long)]
        cm: bool,
    },
    /// Igusa–Clebsch invariants of a sextic `{"coeffs": [...], "mode": "exact"|"interval"}`.
    Igusa { input: String },
    /// Symplectic matrix taking a relation to its normalized form `{"relation": [...], "point"?: ...}`.
    Normalize { input: String },
    /// Explicit embeddings of Shimura and modular curves.
    Embed {
        #[command(subcommand)]
        which: EmbedCmd,
    },
    /// Hilbert-modular embedding for a real quadratic field of discriminant `delta`.
    Hilbert {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[command(subcommand)]
        sub: HilbertSub,
    },
    /// Replays the worked examples; exits 0 iff all pass.
    VerifyPaper,
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Hashimoto's embedding of the Shimura curve X_0^D(N).
    Shimura {
        #[arg(long = "D")]
        d: i64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        /// Prime p = 1 mod 4 dividing a^2 D N + 1 (default: the smallest).
        #[arg(long)]
        p: Option<i64>,
        /// Evaluate at z = x + y*sqrt(z_d), given as `x,y`.
        #[arg(long, allow_hyphen_values = true, requires = "z_d")]
        z: Option<String>,
        #[arg(long = "z-d", allow_negative_numbers = true, requires = "z")]
        z_d: Option<i64>,
    },
    /// Kani's embedding of Y_0(N) with twist (a, b, c), bc - N a^2 = 1.
    Kani {
        #[arg(long = "N")]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: i64,
        /// `{"field": ..., "value": [...]}`: evaluate at this point of the upper half-plane.
        #[arg(long)]
        tau: Option<String>,
    },
}

#[derive(Subcommand)]
enum HilbertSub {
    /// `{"d": d, "z1": [x, y], "z2": [x, y]}` with `z = x + y*sqrt(d)`, or an explicit field with `sqrt_delta`.
    Embed { input: String },
    /// `{"point": ..., "sqrt_delta": [...]}`.
    Invert { input: String },
    /// `{"relation": [a, b, c, d, e]}` to a skew-hermitian form.
    ToHz { input: String },
    /// `{"relation": [a, b, c, d, e]}`: the quaternion-splitting obstruction.
    Obstruct { input: String },
}

fn parse_point(z: &str, d: i64) -> Result<QuadraticPoint, CliError> {
    let (x, y) = z.split_once(',').ok_or_else(|| CliError::Parse("--z expects `x,y`".into()))?;
    Ok(QuadraticPoint { d, x: rational_at(x, "--z")?, y: rational_at(y, "--z")? })
}

fn run(cli: &Cli) -> Result<(Output, bool), CliError> {
    let out = match &cli.cmd {
        Cmd::Classify { input, cm } => commands::classify_cmd(&read_input(input)?, *cm)?,
        Cmd::Igusa { input } => commands::igusa_cmd(&read_input(input)?, cli.precision)?,
        Cmd::Normalize { input } => commands::normalize_cmd(&read_input(input)?, cli.budget)?,
        Cmd::Embed { which: EmbedCmd::Shimura { d, n, a, p, z, z_d } } => {
            let pt = match (z, z_d) {
                (Some(z), Some(d)) => Some(parse_point(z, *d)?),
                _ => None,
            };
            commands::embed_shimura(*d, *n, *a, *p, pt)?
        }
        Cmd::Embed { which: EmbedCmd::Kani { n, a, b, c, tau } } => {
            let t = tau.as_deref().map(read_input).transpose()?;
            commands::embed_kani(*n, *a, *b, *c, t.as_deref())?
        }
        Cmd::Hilbert { delta, sub } => {
            let (cmd, input) = match sub {
                HilbertSub::Embed { input } => (HilbertCommand::Embed, input),
                HilbertSub::Invert { input } => (HilbertCommand::Invert, input),
                HilbertSub::ToHz { input } => (HilbertCommand::ToHz, input),
                HilbertSub::Obstruct { input } => (HilbertCommand::Obstruct, input),
            };
            commands::hilbert_cmd(*delta, cmd, &read_input(input)?)?
        }
        Cmd::VerifyPaper => {
            let checks = golden::verify_paper(cli.seed);
            let all = checks.iter().all(|c| c.passed);
            let text = checks
                .iter()
                .map(|c| {
                    if c.passed {
                        format!("PASS {}\n", c.name)
                    } else {
                        format!("FAIL {}: {}\n", c.name, c.detail)
                    }
                })
                .collect::<String>();
            let json = serde_json::json!({ "checks": checks, "all_passed": all });
            return Ok((Output { json, text }, all));
        }
    };
    Ok((out, true))
}

// A closed pipe (e.g. `| head`) is not an error worth reporting.
fn emit(mut w: impl Write, s: &str) {
    let _ = w.write_all(s.as_bytes()).and_then(|_| w.flush());
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            match cli.format {
                Format::Json => emit(io::stdout(), &format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap())),
                Format::Text => emit(io::stdout(), &out.text),
            }
            std::process::exit(if ok { 0 } else { 1 });
        }
        Err(e) => {
            match cli.format {
                Format::Json => emit(
                    io::stdout(),
                    &format!("{}\n", serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } })),
                ),
                Format::Text => emit(io::stderr(), &format!("error ({}): {}\n", e.kind(), e)),
            }
            std::process::exit(e.exit_code());
        }
    }
}
