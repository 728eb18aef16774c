//! Run configuration. Every subcommand resolves its flags into a [`RunConfig`],
//! which can be dumped as JSON and replayed with `braidforge run`.

use std::path::PathBuf;

use braidforge::algebra::RelationSetId;
use braidforge::braid::BraidWord;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Environment variable that replaces the seed stored in a config file.
pub const SEED_VAR: &str = "BRAIDFORGE_SEED";

pub const DEFAULT_TRIALS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Invariant,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    TensorTrace,
    CharpolyClass,
    CharpolyFamily,
    GroupTrace,
    Bracket,
}

impl InvariantKind {
    pub fn id(self) -> &'static str {
        match self {
            InvariantKind::TensorTrace => "tensor-trace",
            InvariantKind::CharpolyClass => "charpoly-class",
            InvariantKind::CharpolyFamily => "charpoly-family",
            InvariantKind::GroupTrace => "group-trace",
            InvariantKind::Bracket => "bracket",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    #[default]
    Rational,
    Laurent,
}

/// Roman-numeral series names.
#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Series {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
    #[value(name = "VI")]
    VI,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TensorKind {
    Identity,
    Swap,
    /// `T[i1][i2][j1][j2] = b[i1][j2]·a[i2][j1]` with `a` random and `b = T·a⁻¹`.
    Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeRule {
    Inverse,
    TInverse,
    ConjugatedU,
    ConjugatedUVerbatim,
}

/// Matrix entries as rows of ring elements in canonical text.
pub type MatrixText = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Representation {
    /// One of the named block constructions.
    Series {
        series: Series,
        ring: RingKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<MatrixText>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
    },
    /// Raw blocks; they need not form a nondegenerate operator.
    Blocks {
        ring: RingKind,
        #[serde(rename = "A")]
        a: MatrixText,
        #[serde(rename = "B")]
        b: MatrixText,
        #[serde(rename = "C")]
        c: MatrixText,
        #[serde(rename = "D")]
        d: MatrixText,
    },
    Tensor {
        tensor: TensorKind,
        m: usize,
    },
    /// Label scheme for the G-braid invariants. `lambda` sets `u = λ·I` for
    /// the conjugated rules.
    Scheme {
        rule: SchemeRule,
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant: Option<InvariantKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<Representation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<BraidWord>,
    /// Relation set checked by `verify` against block representations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationSetId>,
    /// Fixture CSV for `table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<PathBuf>,
    /// Power for the characteristic-polynomial invariants, modulus parameter
    /// for the bracket.
    #[serde(default = "one")]
    pub t: i64,
    /// Markov trials run by `verify`.
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub format: OutputFormat,
}

fn one() -> i64 {
    1
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            invariant: None,
            representation: None,
            braid: None,
            relations: None,
            fixtures: None,
            t: 1,
            trials: DEFAULT_TRIALS,
            seed: 0,
            format: OutputFormat::Text,
        }
    }

    /// Replaces the seed with `BRAIDFORGE_SEED` when that variable is set.
    pub fn apply_seed_override(&mut self, var: Option<String>) -> Result<(), String> {
        if let Some(text) = var {
            self.seed = text.trim().parse().map_err(|_| format!("{SEED_VAR}=`{text}` is not an unsigned integer"))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }
}

/// Rows separated by `;`, entries by `,`: `"1,T;0,1"`.
pub fn parse_matrix_text(text: &str) -> MatrixText {
    text.split(';').map(|row| row.split(',').map(|e| e.trim().to_string()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full() -> RunConfig {
        RunConfig {
            command: Command::Verify,
            invariant: Some(InvariantKind::Bracket),
            representation: Some(Representation::Series {
                series: Series::II,
                ring: RingKind::Laurent,
                b: Some(vec![vec!["T".into()]]),
                alpha: None,
                beta: None,
            }),
            braid: Some(BraidWord::new(3, vec![1, -2, 1, -2]).unwrap()),
            relations: Some(RelationSetId::BraidAlgebra),
            fixtures: Some("fixtures/links.csv".into()),
            t: 2,
            trials: 7,
            seed: 42,
            format: OutputFormat::Json,
        }
    }

    #[test]
    fn json_round_trip() {
        let mut configs = vec![full(), RunConfig::new(Command::Table)];
        for rep in [
            Representation::Blocks {
                ring: RingKind::Rational,
                a: vec![vec!["1".into()]],
                b: vec![vec!["1".into()]],
                c: vec![vec!["1".into()]],
                d: vec![vec!["1".into()]],
            },
            Representation::Tensor { tensor: TensorKind::Family, m: 2 },
            Representation::Scheme { rule: SchemeRule::ConjugatedU, m: 2, lambda: Some("3".into()) },
        ] {
            configs.push(RunConfig { representation: Some(rep), ..RunConfig::new(Command::Invariant) });
        }
        for c in configs {
            let back = RunConfig::from_json(&c.to_json()).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), c.to_json());
        }
    }

    #[test]
    fn wire_names() {
        let json = full().to_json();
        assert!(json.contains(r#""kind": "series""#));
        assert!(json.contains(r#""series": "II""#));
        assert!(json.contains(r#""relations": "BRAID_ALGEBRA""#));
        assert!(json.contains(r#""invariant": "bracket""#));
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let c = RunConfig::from_json(r#"{"command": "table"}"#).unwrap();
        assert_eq!(c, RunConfig::new(Command::Table));
        assert!(RunConfig::from_json(r#"{"command": "table", "invariant": "jones"}"#).is_err());
        assert!(RunConfig::from_json(r#"{"command": "table", "colour": 1}"#).is_err());
    }

    #[test]
    fn seed_override() {
        let mut c = full();
        c.apply_seed_override(None).unwrap();
        assert_eq!(c.seed, 42);
        c.apply_seed_override(Some(" 9 ".into())).unwrap();
        assert_eq!(c.seed, 9);
        assert!(c.apply_seed_override(Some("-1".into())).is_err());
    }

    #[test]
    fn matrix_text() {
        assert_eq!(parse_matrix_text("1, T ;0,1"), vec![vec!["1", "T"], vec!["0", "1"]]);
    }
}
