//! `braidforge`: verify braid representations and evaluate link invariants.
//!
//! Exit status is 0 when every check passes, 1 when a check or a Markov
//! variant fails, and 2 on a usage or configuration error.

mod build;
mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use braidforge::algebra::RelationSetId;
use braidforge::braid::BraidWord;
use clap::{Args, Parser, Subcommand};

use config::{
    parse_matrix_text, Command, InvariantKind, OutputFormat, Representation, RingKind, RunConfig, SchemeRule, Series,
    TensorKind, SEED_VAR,
};

/// Error surfaced to the user with exit status 2.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure(msg.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure(e.to_string())
            }
        }
    )*};
}

failure_from!(braidforge::Error, std::io::Error, serde_json::Error, csv::Error);

#[derive(Parser, Debug)]
#[command(name = "braidforge", version, about = "Exact braid-group representations and link invariants")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check relations, the braid equation, label relations, or Markov invariance
    Verify(VerifyArgs),
    /// Evaluate a link invariant on the closure of a braid
    Invariant(InvariantArgs),
    /// Evaluate an invariant over a fixture list and print CSV
    Table(TableArgs),
    /// Execute a JSON run configuration
    Run { config: PathBuf },
}

#[derive(Args, Debug)]
struct BraidArgs {
    /// Strand count; defaults to one more than the largest generator
    #[arg(long)]
    strands: Option<usize>,
    /// Signed generator indices separated by spaces or commas
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Args, Debug)]
struct RepArgs {
    /// Named block series
    #[arg(long, ignore_case = true)]
    series: Option<Series>,
    /// Entry ring for block matrices; Laurent when any entry mentions T
    #[arg(long)]
    ring: Option<RingKind>,
    /// Block A, rows separated by `;`, entries by `,`
    #[arg(long = "a", value_name = "MATRIX", allow_hyphen_values = true)]
    block_a: Option<String>,
    /// Block B, or the series parameter
    #[arg(long = "b", value_name = "MATRIX", allow_hyphen_values = true)]
    block_b: Option<String>,
    #[arg(long = "c", value_name = "MATRIX", allow_hyphen_values = true)]
    block_c: Option<String>,
    #[arg(long = "d", value_name = "MATRIX", allow_hyphen_values = true)]
    block_d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    tensor: Option<TensorKind>,
    /// Label rule for the G-braid invariants
    #[arg(long)]
    rule: Option<SchemeRule>,
    /// Scalar for `u = λ·I` in the conjugated rules
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Matrix size for tensors and label schemes
    #[arg(long, default_value_t = 2)]
    m: usize,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Random seed; wins over BRAIDFORGE_SEED
    #[arg(long)]
    seed: Option<u64>,
    /// Print the resolved run configuration as JSON instead of running
    #[arg(long)]
    dump_config: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    braid: BraidArgs,
    #[command(flatten)]
    rep: RepArgs,
    /// Relation set for block representations
    #[arg(long, default_value = "BRAID_ALGEBRA")]
    relations: String,
    /// Run the Markov suite for this invariant on the braid
    #[arg(long = "type", value_name = "INVARIANT")]
    invariant: Option<InvariantKind>,
    #[arg(long, default_value_t = config::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    t: i64,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[arg(long = "type", value_name = "INVARIANT")]
    invariant: InvariantKind,
    #[command(flatten)]
    braid: BraidArgs,
    #[command(flatten)]
    rep: RepArgs,
    /// Characteristic-polynomial power, or the bracket's modulus parameter
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    t: i64,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// CSV with columns name,strands,word,base
    #[arg(long)]
    fixtures: PathBuf,
    #[arg(long = "type", value_name = "INVARIANT")]
    invariant: InvariantKind,
    #[command(flatten)]
    rep: RepArgs,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    t: i64,
    #[command(flatten)]
    common: CommonArgs,
}

impl BraidArgs {
    fn resolve(&self) -> Result<Option<BraidWord>, Failure> {
        if self.word.is_none() && self.strands.is_none() {
            return Ok(None);
        }
        let text = self.word.as_deref().unwrap_or("");
        let strands = match self.strands {
            Some(n) => n,
            None => BraidWord::parse(text, usize::MAX)?
                .letters()
                .iter()
                .map(|l| l.unsigned_abs() as usize + 1)
                .max()
                .unwrap_or(1),
        };
        Ok(Some(BraidWord::parse(text, strands)?))
    }
}

impl RepArgs {
    fn resolve(&self) -> Result<Option<Representation>, Failure> {
        let texts = [&self.block_a, &self.block_b, &self.block_c, &self.block_d, &self.alpha, &self.beta];
        let ring = self.ring.unwrap_or(if texts.iter().any(|t| t.as_deref().is_some_and(|s| s.contains('T'))) {
            RingKind::Laurent
        } else {
            RingKind::Rational
        });
        let mat = |s: &Option<String>| s.as_deref().map(parse_matrix_text);
        if let Some(tensor) = self.tensor {
            return Ok(Some(Representation::Tensor { tensor, m: self.m }));
        }
        if let Some(series) = self.series {
            return Ok(Some(Representation::Series {
                series,
                ring,
                b: mat(&self.block_b),
                alpha: self.alpha.clone(),
                beta: self.beta.clone(),
            }));
        }
        if self.block_a.is_some() || self.block_c.is_some() || self.block_d.is_some() {
            let need = |s: &Option<String>, name: &str| {
                mat(s).ok_or_else(|| Failure::config(format!("raw blocks need --{name} as well")))
            };
            return Ok(Some(Representation::Blocks {
                ring,
                a: need(&self.block_a, "a")?,
                b: need(&self.block_b, "b")?,
                c: need(&self.block_c, "c")?,
                d: need(&self.block_d, "d")?,
            }));
        }
        if let Some(rule) = self.rule {
            return Ok(Some(Representation::Scheme { rule, m: self.m, lambda: self.lambda.clone() }));
        }
        Ok(None)
    }
}

fn json_format(json: bool) -> OutputFormat {
    if json {
        OutputFormat::Json
    } else {
        OutputFormat::Text
    }
}

/// Fills in the representation an invariant needs when none was given.
fn with_default_rep(mut config: RunConfig, m: usize) -> RunConfig {
    if let (None, Some(kind)) = (&config.representation, config.invariant) {
        config.representation = Some(build::default_representation(kind, m));
    }
    config
}

fn seed_of(common: &CommonArgs, env: Option<String>, config: &mut RunConfig) -> Result<(), String> {
    match common.seed {
        Some(s) => config.seed = s,
        None => config.apply_seed_override(env)?,
    }
    Ok(())
}

/// Resolved configuration and whether to dump it instead of running.
fn resolve(cmd: Cmd, env_seed: Option<String>) -> Result<(RunConfig, bool), Failure> {
    Ok(match cmd {
        Cmd::Verify(a) => {
            let relations: RelationSetId = a.relations.parse()?;
            let mut c = RunConfig {
                invariant: a.invariant,
                representation: a.rep.resolve()?,
                braid: a.braid.resolve()?,
                relations: Some(relations),
                t: a.t,
                trials: a.trials,
                format: json_format(a.json),
                ..RunConfig::new(Command::Verify)
            };
            seed_of(&a.common, env_seed, &mut c).map_err(Failure)?;
            (with_default_rep(c, a.rep.m), a.common.dump_config)
        }
        Cmd::Invariant(a) => {
            let mut c = RunConfig {
                invariant: Some(a.invariant),
                representation: a.rep.resolve()?,
                braid: a.braid.resolve()?,
                t: a.t,
                format: json_format(a.json),
                ..RunConfig::new(Command::Invariant)
            };
            seed_of(&a.common, env_seed, &mut c).map_err(Failure)?;
            (with_default_rep(c, a.rep.m), a.common.dump_config)
        }
        Cmd::Table(a) => {
            let mut c = RunConfig {
                invariant: Some(a.invariant),
                representation: a.rep.resolve()?,
                fixtures: Some(a.fixtures),
                t: a.t,
                format: OutputFormat::Csv,
                ..RunConfig::new(Command::Table)
            };
            seed_of(&a.common, env_seed, &mut c).map_err(Failure)?;
            (with_default_rep(c, a.rep.m), a.common.dump_config)
        }
        Cmd::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure(format!("cannot read {}: {e}", config.display())))?;
            let mut c = RunConfig::from_json(&text).map_err(Failure)?;
            c.apply_seed_override(env_seed).map_err(Failure)?;
            (c, false)
        }
    })
}

fn execute(config: &RunConfig) -> Result<(String, bool), Failure> {
    match config.command {
        Command::Verify => commands::verify(config),
        Command::Invariant => commands::invariant(config),
        Command::Table => commands::table(config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(cli.command, std::env::var(SEED_VAR).ok()).and_then(|(config, dump)| {
        if dump {
            Ok((config.to_json() + "\n", true))
        } else {
            execute(&config)
        }
    });
    match outcome {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
