//! Invariant values, reports, and the Markov-move harness.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, Ring};
use crate::braid::{random_markov_perturbation, BraidWord};
use crate::error::Result;

/// Exact invariant value. Ring elements are held in canonical text form, so
/// comparing text is comparing values.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantValue {
    Scalar {
        value: String,
    },
    Sequence {
        values: Vec<String>,
    },
    /// A sorted multiset of coefficient lists.
    Multiset {
        classes: Vec<Vec<String>>,
    },
    /// A value declared modulo `modulus`.
    Residue {
        value: Rational,
        modulus: Rational,
    },
}

impl InvariantValue {
    pub fn scalar<R: Ring>(x: &R) -> Self {
        InvariantValue::Scalar { value: x.to_string() }
    }

    pub fn sequence<R: Ring>(xs: &[R]) -> Self {
        InvariantValue::Sequence { values: xs.iter().map(R::to_string).collect() }
    }

    pub fn multiset<R: Ring>(classes: &[Vec<R>]) -> Self {
        let mut classes: Vec<Vec<String>> = classes.iter().map(|c| c.iter().map(R::to_string).collect()).collect();
        classes.sort();
        InvariantValue::Multiset { classes }
    }

    /// Residues reduced into `[0, |modulus|)`; other values unchanged. Equal
    /// values have equal canonical forms.
    pub fn canonical(&self) -> Self {
        match self {
            InvariantValue::Residue { value, modulus } if !modulus.is_zero() => {
                let m = modulus.abs();
                let q = value.div_exact(&m).expect("nonzero modulus").floor();
                InvariantValue::Residue { value: value.sub(&q.mul(&m)), modulus: modulus.clone() }
            }
            other => other.clone(),
        }
    }
}

impl PartialEq for InvariantValue {
    fn eq(&self, other: &Self) -> bool {
        use InvariantValue::*;
        match (self, other) {
            (Scalar { value: a }, Scalar { value: b }) => a == b,
            (Sequence { values: a }, Sequence { values: b }) => a == b,
            (Multiset { classes: a }, Multiset { classes: b }) => a == b,
            (Residue { value: a, modulus: m }, Residue { value: b, modulus: n }) => {
                m == n && a.sub(b).div_exact(m).is_some_and(|q| q.is_integer())
            }
            _ => false,
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Scalar { value } => write!(f, "{value}"),
            InvariantValue::Sequence { values } => write!(f, "[{}]", values.join(", ")),
            InvariantValue::Multiset { classes } => {
                let parts: Vec<String> = classes.iter().map(|c| format!("[{}]", c.join(", "))).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            InvariantValue::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

/// What the CLI prints for one evaluation. Reports compare by value only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub invariant: String,
    pub value: InvariantValue,
    pub braid: BraidWord,
    pub parameters: BTreeMap<String, String>,
}

impl PartialEq for InvariantReport {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

/// A function of braid words that should only depend on the closure.
pub trait LinkInvariant {
    fn id(&self) -> &str;
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue>;
}

impl<F> LinkInvariant for F
where
    F: Fn(&BraidWord) -> Result<InvariantValue>,
{
    fn id(&self) -> &str {
        "custom"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        self(w)
    }
}

/// Random Markov moves applied per trial.
pub const MOVES_PER_TRIAL: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteFailure {
    pub trial: usize,
    pub perturbed: BraidWord,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub invariant: String,
    pub braid: BraidWord,
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates the invariant on `w` and on `trials` independent perturbations of
/// [`MOVES_PER_TRIAL`] random Markov moves each.
pub fn markov_invariance_suite<I: LinkInvariant + ?Sized>(
    invariant: &I,
    w: &BraidWord,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let base = invariant.evaluate(w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let perturbed = random_markov_perturbation(w, MOVES_PER_TRIAL, rng.gen());
        let value = invariant.evaluate(&perturbed)?;
        if value != base {
            failures.push(SuiteFailure { trial, perturbed, expected: base.to_string(), got: value.to_string() });
        }
    }
    Ok(SuiteReport { invariant: invariant.id().to_string(), braid: w.clone(), trials, seed, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_compare_modulo() {
        let r = |v: i64| InvariantValue::Residue { value: Rational::new(v, 2), modulus: Rational::from_int(2) };
        assert_eq!(r(1), r(5));
        assert_ne!(r(1), r(3));
        assert_eq!(r(5).canonical().to_string(), "1/2 mod 2");
        assert_eq!(r(-7).canonical().to_string(), "1/2 mod 2");
    }

    #[test]
    fn zero_trials_pass() {
        let inv = |_: &BraidWord| -> Result<InvariantValue> { Ok(InvariantValue::scalar(&Rational::one())) };
        let report = markov_invariance_suite(&inv, &BraidWord::empty(2), 0, 1).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn strand_count_is_not_invariant() {
        let inv = |w: &BraidWord| -> Result<InvariantValue> {
            Ok(InvariantValue::scalar(&Rational::from_int(w.strands() as i64)))
        };
        let report = markov_invariance_suite(&inv, &BraidWord::new(3, vec![1, 2]).unwrap(), 10, 4).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn value_json() {
        let v = InvariantValue::sequence(&[Rational::new(1, 2), Rational::from_int(-3)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"kind":"sequence","values":["1/2","-3"]}"#);
    }
}
