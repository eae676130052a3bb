//! `intform`: batch front end for exact computations in `U(𝔤⊗A)`.
//!
//! Exit codes: 0 on success, 1 when a check fails (or a reduction leaves a
//! residual), 2 on usage, parse or configuration errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use intform_core::identities::Profile;
use intform_core::pbw::{PresetKind, Sign};

#[derive(Parser, Debug)]
#[command(
    name = "intform",
    version,
    about = "Integral forms of map-algebra hyperalgebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub session: SessionArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SessionArgs {
    /// Lie algebra. `check` falls back to each check's own presets when omitted.
    #[arg(long, global = true, value_parser = parse_preset)]
    pub algebra: Option<PresetKind>,

    /// Number of variables of the coefficient algebra [default: 1].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub vars: Option<u32>,

    /// Coefficient algebra: polynomial or Laurent polynomial labels [default: polynomial].
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for check instances; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Seed for randomly sampled check instances.
    #[arg(long, global = true, default_value_t = 24301)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Polynomial,
    Laurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate p, D, 𝔻 or a divided-power monomial.
    Eval(EvalArgs),
    /// Normalize an element given as JSON terms, in any factor order.
    Straighten {
        /// JSON file: a term list, or an object with an `element` field.
        file: PathBuf,
    },
    /// Expand an element over the integral basis.
    Reduce {
        /// JSON file: a term list, or an object with an `element` field.
        file: PathBuf,
    },
    /// List basis indices up to a total size and label degree.
    Basis {
        #[arg(long, default_value_t = 1)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        max_label_degree: u32,
    },
    /// Run identity checks by name, or `all`.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    P,
    #[value(name = "D")]
    D,
    #[value(name = "bbD")]
    Bbd,
    Xpow,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub object: Object,

    /// Arguments as a JSON object, e.g. `{"chi": "{[1]:2}"}`. Flags win.
    #[arg(long)]
    pub args: Option<String>,

    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long)]
    pub psi1: Option<String>,
    #[arg(long)]
    pub psi2: Option<String>,
    #[arg(long)]
    pub psi3: Option<String>,

    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    pub sign: Option<Sign>,

    /// Positive root for the embedding `Ω_α` (sl3 only).
    #[arg(long)]
    pub root: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(required = true)]
    pub names: Vec<String>,

    #[arg(long, env = "INTFORM_PROFILE", default_value = "desk", value_parser = parse_profile)]
    pub profile: Profile,

    /// Override a bound, as `key=value`; repeatable.
    #[arg(long = "bound", value_parser = parse_bound)]
    pub bounds: Vec<(String, u32)>,

    /// Use the literal reading of the partition ranges instead of the corrected one.
    #[arg(long)]
    pub literal: bool,
}

fn parse_preset(s: &str) -> Result<PresetKind, String> {
    s.parse().map_err(|e: intform_core::Error| e.to_string())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: intform_core::Error| e.to_string())
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: intform_core::Error| e.to_string())
}

fn parse_bound(s: &str) -> Result<(String, u32), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| format!("bound `{k}` needs a non-negative integer"))?;
    Ok((k.trim().to_string(), v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
