//! The three commands. Each returns the text to print and whether every check passed.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;

use braidforge::algebra::{check_relation_set, BlockRep, RelationSetId};
use braidforge::arith::{LaurentPoly, Rational, RingMatrix};
use braidforge::braid::BraidWord;
use braidforge::invariants::{markov_invariance_suite, InvariantReport, InvariantValue};
use braidforge::tensor::check_braid_equation;
use serde::{Deserialize, Serialize};

use crate::build::{self, Elem};
use crate::config::{OutputFormat, Representation, RingKind, RunConfig, SchemeRule};
use crate::Failure;

/// Violating index tuples listed per braid-equation check.
const MAX_LISTED: usize = 20;
/// Consecutive label pairs checked for a scheme.
const SCHEME_PAIRS: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
}

impl Check {
    fn new(check: &str, subject: impl Into<String>, passed: bool, detail: Vec<String>) -> Self {
        Check { check: check.into(), subject: subject.into(), passed, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn relation_checks<R: Elem>(
    assignment: &BTreeMap<String, RingMatrix<R>>,
    set: RelationSetId,
) -> Result<Vec<Check>, Failure> {
    let failed = check_relation_set(assignment, set)?;
    let mut labels: Vec<&str> = Vec::new();
    for (label, _) in set.relations() {
        if !labels.contains(label) {
            labels.push(label);
        }
    }
    // labels outside the identity table, e.g. unit requirements
    for f in &failed {
        if !labels.contains(&f.as_str()) {
            labels.push(f);
        }
    }
    Ok(labels
        .into_iter()
        .map(|l| Check::new("relation", format!("{set} {l}"), !failed.iter().any(|f| f == l), Vec::new()))
        .collect())
}

fn block_assignment<R: Elem>(rep: &Representation) -> Result<BTreeMap<String, RingMatrix<R>>, Failure> {
    match rep {
        Representation::Series { series, b, alpha, beta, .. } => {
            Ok(build::series_rep::<R>(*series, b.as_ref(), alpha.as_deref(), beta.as_deref())?.slots())
        }
        Representation::Blocks { a, b, c, d, .. } => {
            let slots = [("A", a), ("B", b), ("C", c), ("D", d)];
            let mut out: BTreeMap<String, RingMatrix<R>> = BTreeMap::new();
            for (name, m) in slots {
                out.insert(name.into(), build::matrix(m)?);
            }
            // a nondegenerate operator also gets its inverse blocks
            if let Ok(rep) = BlockRep::new(out["A"].clone(), out["B"].clone(), out["C"].clone(), out["D"].clone()) {
                out = rep.slots();
            }
            Ok(out)
        }
        _ => unreachable!("only block representations carry an assignment"),
    }
}

fn scheme_check<R: Elem>(rule: SchemeRule, m: usize, lambda: Option<&str>, seed: u64) -> Result<Check, Failure> {
    let scheme = build::scheme::<R>(rule, m, lambda, seed)?;
    Ok(match scheme.pairs(SCHEME_PAIRS) {
        Ok(_) => Check::new("label-relation", "3.3(i)", true, Vec::new()),
        Err(braidforge::Error::RelationViolated { index }) => {
            Check::new("label-relation", "3.3(i)", false, vec![format!("fails at s = {index}")])
        }
        Err(e) => return Err(e.into()),
    })
}

pub fn verify(config: &RunConfig) -> Result<(String, bool), Failure> {
    let mut checks = Vec::new();
    match &config.representation {
        Some(rep @ (Representation::Series { ring, .. } | Representation::Blocks { ring, .. })) => {
            let set = config.relations.unwrap_or(RelationSetId::BraidAlgebra);
            checks.extend(match ring {
                RingKind::Rational => relation_checks(&block_assignment::<Rational>(rep)?, set)?,
                RingKind::Laurent => relation_checks(&block_assignment::<LaurentPoly>(rep)?, set)?,
            });
        }
        Some(Representation::Tensor { tensor, m }) => {
            let t = build::tensor(*tensor, *m, config.seed)?;
            let violations = check_braid_equation(&t, None)?;
            let mut detail: Vec<String> =
                violations.iter().take(MAX_LISTED).map(|v| format!("{:?}", v.indices)).collect();
            if violations.len() > MAX_LISTED {
                detail.push(format!("{} more", violations.len() - MAX_LISTED));
            }
            checks.push(Check::new("braid-equation", "2.2(viii)", violations.is_empty(), detail));
        }
        Some(Representation::Scheme { rule, m, lambda }) => {
            checks.push(if *rule == SchemeRule::TInverse {
                scheme_check::<LaurentPoly>(*rule, *m, lambda.as_deref(), config.seed)?
            } else {
                scheme_check::<Rational>(*rule, *m, lambda.as_deref(), config.seed)?
            });
        }
        None => {}
    }
    if config.invariant.is_some() {
        let braid = config.braid.as_ref().ok_or_else(|| Failure::config("the Markov suite needs a braid"))?;
        let built = build::invariant(config)?;
        let suite = markov_invariance_suite(built.invariant.as_ref(), braid, config.trials, config.seed)?;
        for trial in 0..suite.trials {
            let failure = suite.failures.iter().find(|f| f.trial == trial);
            let detail = failure
                .map(|f| vec![format!("{} on {}: expected {}", f.got, f.perturbed, f.expected)])
                .unwrap_or_default();
            checks.push(Check::new("markov", format!("{} trial {trial}", suite.invariant), failure.is_none(), detail));
        }
    }
    if checks.is_empty() {
        return Err(Failure::config("nothing to verify: give a representation or an invariant and a braid"));
    }
    let report = VerifyReport { passed: checks.iter().all(|c| c.passed), checks };
    let text = match config.format {
        OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => {
            let mut out = String::new();
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                out += &format!("{mark} {} {}\n", c.check, c.subject);
                for d in &c.detail {
                    out += &format!("    {d}\n");
                }
            }
            out += if report.passed { "verdict: PASS\n" } else { "verdict: FAIL\n" };
            out
        }
    };
    Ok((text, report.passed))
}

pub fn invariant_report(config: &RunConfig, braid: &BraidWord) -> Result<InvariantReport, Failure> {
    let built = build::invariant(config)?;
    Ok(InvariantReport {
        invariant: built.invariant.id().to_string(),
        value: built.invariant.evaluate(braid)?,
        braid: braid.clone(),
        parameters: built.parameters,
    })
}

pub fn invariant(config: &RunConfig) -> Result<(String, bool), Failure> {
    let braid = config.braid.as_ref().ok_or_else(|| Failure::config("no braid given"))?;
    let report = invariant_report(config, braid)?;
    let text = match config.format {
        OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => format!("{}\n", report.value.canonical()),
    };
    Ok((text, true))
}

/// One line of the fixture file; `base` names the row this one is a Markov variant of.
#[derive(Clone, Debug, Deserialize)]
struct Fixture {
    name: String,
    strands: usize,
    word: String,
    #[serde(default)]
    base: String,
}

pub const TABLE_HEADER: [&str; 7] = ["name", "strands", "word", "base", "invariant", "value", "matches_base"];

pub fn table(config: &RunConfig) -> Result<(String, bool), Failure> {
    let path = config.fixtures.as_ref().ok_or_else(|| Failure::config("no fixture file given"))?;
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Failure::config(format!("cannot read fixtures {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let fixtures = reader.deserialize().collect::<Result<Vec<Fixture>, _>>()?;

    let built = build::invariant(config)?;
    let mut values: Vec<InvariantValue> = Vec::with_capacity(fixtures.len());
    for f in &fixtures {
        let braid =
            BraidWord::parse(&f.word, f.strands).map_err(|e| Failure::config(format!("fixture `{}`: {e}", f.name)))?;
        values.push(built.invariant.evaluate(&braid)?);
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(TABLE_HEADER)?;
    let mut all_match = true;
    for (f, value) in fixtures.iter().zip(&values) {
        let matches = if f.base.is_empty() {
            String::new()
        } else {
            let i = fixtures
                .iter()
                .position(|g| g.name == f.base)
                .ok_or_else(|| Failure::config(format!("fixture `{}` names unknown base `{}`", f.name, f.base)))?;
            let ok = values[i] == *value;
            all_match &= ok;
            ok.to_string()
        };
        let strands = f.strands.to_string();
        let cell = value.canonical().to_string();
        writer.write_record([
            f.name.as_str(),
            strands.as_str(),
            f.word.as_str(),
            f.base.as_str(),
            built.invariant.id(),
            cell.as_str(),
            matches.as_str(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::config(e.to_string()))?;
    Ok((String::from_utf8(bytes).expect("csv output is UTF-8"), all_match))
}
