//! Polynomial identities in named operator slots.
//!
//! Each identity is written in a tiny whitespace-separated language:
//! a side is a signed sum of terms, a term is a product of slot names,
//! and `1` / `0` stand for the identity and zero matrices.
//! For example `C B - B C = A D A - D A D`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{Ring, RingMatrix};
use crate::error::{Error, Result};

/// Named relation lists for the braid algebra and its quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationSetId {
    /// Braid algebra, slots `A B C D`.
    BraidAlgebra,
    /// Period-2 braid algebra, slots `A1 B1 C1 D1 A2 B2 C2 D2`.
    Period2,
    /// Triangle algebra, slots `x y`.
    Triangle,
    /// Simplified braid algebra, slots `A B D`.
    Simplified,
    /// Commutative braid algebra, slots `x y z t`.
    Commutative,
    /// Simplified commutative braid algebra, slots `x y t`.
    SimplifiedCommutative,
    /// Quotient by `AD = 0`, slots `A B C D`.
    AdZero,
    /// Relations between consecutive generators of a non-periodic sequence,
    /// slots `A_i B_i C_i D_i A_i+1 B_i+1 C_i+1 D_i+1`.
    #[serde(rename = "SEQUENCE_21")]
    Sequence21,
}

impl RelationSetId {
    pub const ALL: [RelationSetId; 8] = [
        RelationSetId::BraidAlgebra,
        RelationSetId::Period2,
        RelationSetId::Triangle,
        RelationSetId::Simplified,
        RelationSetId::Commutative,
        RelationSetId::SimplifiedCommutative,
        RelationSetId::AdZero,
        RelationSetId::Sequence21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationSetId::BraidAlgebra => "BRAID_ALGEBRA",
            RelationSetId::Period2 => "PERIOD2",
            RelationSetId::Triangle => "TRIANGLE",
            RelationSetId::Simplified => "SIMPLIFIED",
            RelationSetId::Commutative => "COMMUTATIVE",
            RelationSetId::SimplifiedCommutative => "SIMPLIFIED_COMMUTATIVE",
            RelationSetId::AdZero => "AD_ZERO",
            RelationSetId::Sequence21 => "SEQUENCE_21",
        }
    }

    /// `(label, identity)` pairs.
    pub fn relations(self) -> &'static [(&'static str, &'static str)] {
        match self {
            RelationSetId::BraidAlgebra => BRAID_ALGEBRA,
            RelationSetId::Period2 => PERIOD2,
            RelationSetId::Triangle => TRIANGLE,
            RelationSetId::Simplified => SIMPLIFIED,
            RelationSetId::Commutative => COMMUTATIVE,
            RelationSetId::SimplifiedCommutative => SIMPLIFIED_COMMUTATIVE,
            RelationSetId::AdZero => AD_ZERO,
            RelationSetId::Sequence21 => SEQUENCE_21,
        }
    }

    /// Slots that must be invertible, with the label reported if not.
    fn unit_slots(self) -> &'static [(&'static str, &'static str)] {
        match self {
            RelationSetId::Triangle => &[("2.4(x unit)", "x")],
            _ => &[],
        }
    }

    pub fn slots(self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for (_, rel) in self.relations() {
            for tok in rel.split_whitespace() {
                if is_slot(tok) && !out.contains(&tok) {
                    out.push(tok);
                }
            }
        }
        out
    }
}

impl fmt::Display for RelationSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationSetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        RelationSetId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown relation set `{s}`")))
    }
}

const BRAID_ALGEBRA: &[(&str, &str)] = &[
    ("2.2(i)", "A A + B A C = A"),
    ("2.2(ii)", "D D + C D B = D"),
    ("2.2(iii)", "C B - B C = A D A - D A D"),
    ("2.2(iv)", "B A - A B = B A D"),
    ("2.2(v)", "A C - C A = D A C"),
    ("2.2(vi)", "D B - B D = A D B"),
    ("2.2(vii)", "C D - D C = C D A"),
];

const SEQUENCE_21: &[(&str, &str)] = &[
    ("2.1(i)", "A_i A_i + B_i A_i+1 C_i = A_i"),
    ("2.1(ii)", "D_i+1 D_i+1 + C_i+1 D_i B_i+1 = D_i+1"),
    ("2.1(iii)", "A_i+1 C_i - C_i A_i = D_i A_i+1 C_i"),
    ("2.1(iv)", "B_i A_i+1 - A_i B_i = B_i A_i+1 D_i"),
    ("2.1(v)", "C_i B_i - B_i+1 C_i+1 = A_i+1 D_i A_i+1 - D_i A_i+1 D_i"),
    ("2.1(vi)", "C_i+1 D_i - D_i+1 C_i+1 = C_i+1 D_i A_i+1"),
    ("2.1(vii)", "D_i B_i+1 - B_i+1 D_i+1 = A_i+1 D_i B_i+1"),
];

const PERIOD2: &[(&str, &str)] = &[
    ("2.3(i)", "A1 A1 + B1 A2 C1 = A1"),
    ("2.3(ii)", "A2 A2 + B2 A1 C2 = A2"),
    ("2.3(iii)", "D2 D2 + C2 D1 B2 = D2"),
    ("2.3(iv)", "D1 D1 + C1 D2 B1 = D1"),
    ("2.3(v)", "D1 B2 - B2 D2 = A2 D1 B2"),
    ("2.3(vi)", "C1 D2 - D1 C1 = C1 D2 A1"),
    ("2.3(vii)", "A2 C1 - C1 A1 = D1 A2 C1"),
    ("2.3(viii)", "A1 C2 - C2 A2 = D2 A1 C2"),
    ("2.3(ix)", "B1 A2 - A1 B1 = B1 A2 D1"),
    ("2.3(x)", "B2 A1 - A2 B2 = B2 A1 D2"),
    ("2.3(xi)", "C2 D1 - D2 C2 = C2 D1 A2"),
    ("2.3(xii)", "D2 B1 - B1 D1 = A1 D2 B1"),
    ("2.3(xiii)", "C1 B1 - B2 C2 = A2 D1 A2 - D1 A2 D1"),
    ("2.3(xiv)", "C2 B2 - B1 C1 = A1 D2 A1 - D2 A1 D2"),
];

const TRIANGLE: &[(&str, &str)] = &[("2.4", "y y + x y = y"), ("2.4(comm)", "x y = y x")];

const SIMPLIFIED: &[(&str, &str)] = &[
    ("2.7(i)", "A A + B A = A"),
    ("2.7(ii)", "D D + D B = D"),
    ("2.7(iii)", "B A - A B = B A D"),
    ("2.7(iv)", "D B - B D = A D B"),
    ("2.7(v)", "D A = 0"),
];

const COMMUTATIVE: &[(&str, &str)] = &[
    ("2.8(i)", "x x + x y z = x"),
    ("2.8(ii)", "t t + t y z = t"),
    ("2.8(iii)", "x z t = 0"),
    ("2.8(iv)", "x y t = 0"),
    ("2.8(comm x,y)", "x y = y x"),
    ("2.8(comm x,z)", "x z = z x"),
    ("2.8(comm x,t)", "x t = t x"),
    ("2.8(comm y,z)", "y z = z y"),
    ("2.8(comm y,t)", "y t = t y"),
    ("2.8(comm z,t)", "z t = t z"),
];

const SIMPLIFIED_COMMUTATIVE: &[(&str, &str)] = &[
    ("2.9(i)", "x x + x y = x"),
    ("2.9(ii)", "t t + t y = t"),
    ("2.9(iii)", "x t = 0"),
    ("2.9(comm x,y)", "x y = y x"),
    ("2.9(comm x,t)", "x t = t x"),
    ("2.9(comm y,t)", "y t = t y"),
];

const AD_ZERO: &[(&str, &str)] = &[
    ("2.11(i)", "A A + B A C = A"),
    ("2.11(ii)", "D D + C D B = D"),
    ("2.11(iii)", "C B = B C"),
    ("2.11(iv)", "A B = B A"),
    ("2.11(v)", "A C - C A = D A C"),
    ("2.11(vi)", "C D - D C = C D A"),
    ("2.11(vii)", "A D = 0"),
];

/// Right- and left-inverse identities between the blocks and the inverse blocks.
pub(crate) const BLOCK_INVERSE: &[(&str, &str)] = &[
    ("3.9(viii)", "A A1 + B C1 = 1"),
    ("3.9(ix)", "C A1 + D C1 = 0"),
    ("3.9(x)", "A B1 + B D1 = 0"),
    ("3.9(xi)", "C B1 + D D1 = 1"),
    ("3.9(xii)", "A1 A + B1 C = 1"),
    ("3.9(xii)", "A1 B + B1 D = 0"),
    ("3.9(xii)", "C1 A + D1 C = 0"),
    ("3.9(xii)", "C1 B + D1 D = 1"),
];

fn is_slot(tok: &str) -> bool {
    !matches!(tok, "+" | "-" | "=" | "0" | "1")
}

/// Evaluate one side of an identity.
fn eval_side<R: Ring>(side: &str, slots: &BTreeMap<String, RingMatrix<R>>, n: usize) -> Result<RingMatrix<R>> {
    let mut acc = RingMatrix::zeros(n, n);
    let mut sign_negative = false;
    let mut term: Option<RingMatrix<R>> = None;
    let flush = |term: &mut Option<RingMatrix<R>>, neg: bool, acc: &mut RingMatrix<R>| -> Result<()> {
        if let Some(t) = term.take() {
            *acc = if neg { acc.sub(&t)? } else { acc.add(&t)? };
        }
        Ok(())
    };
    for tok in side.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(&mut term, sign_negative, &mut acc)?;
                sign_negative = tok == "-";
            }
            _ => {
                let factor = match tok {
                    "1" => RingMatrix::identity(n),
                    "0" => RingMatrix::zeros(n, n),
                    name => slots.get(name).cloned().ok_or_else(|| Error::MissingSlot(name.into()))?,
                };
                term = Some(match term {
                    None => factor,
                    Some(t) => t.mul(&factor)?,
                });
            }
        }
    }
    flush(&mut term, sign_negative, &mut acc)?;
    Ok(acc)
}

/// Labels of the identities in `relations` that fail for the given slot values.
pub fn check_relations<R: Ring>(
    assignment: &BTreeMap<String, RingMatrix<R>>,
    relations: &[(&str, &str)],
) -> Result<Vec<String>> {
    let mut size = None;
    for (name, m) in assignment {
        if !m.is_square() || size.is_some_and(|s| s != m.rows()) {
            return Err(Error::DimensionMismatch(format!(
                "slot `{name}` is {}x{}; all slots must be square of one size",
                m.rows(),
                m.cols()
            )));
        }
        size = Some(m.rows());
    }
    let n = size.unwrap_or(0);
    let mut failed: Vec<String> = Vec::new();
    for (label, rel) in relations {
        let (lhs, rhs) = rel.split_once('=').expect("relation tables contain `=`");
        let ok = eval_side(lhs, assignment, n)? == eval_side(rhs, assignment, n)?;
        if !ok && !failed.iter().any(|f| f == label) {
            failed.push(label.to_string());
        }
    }
    Ok(failed)
}

/// Check `assignment` against a named relation set; an empty result means
/// every identity holds exactly.
pub fn check_relation_set<R: Ring>(
    assignment: &BTreeMap<String, RingMatrix<R>>,
    set: RelationSetId,
) -> Result<Vec<String>> {
    for slot in set.slots() {
        if !assignment.contains_key(slot) {
            return Err(Error::MissingSlot(slot.into()));
        }
    }
    let mut failed = check_relations(assignment, set.relations())?;
    for (label, slot) in set.unit_slots() {
        if assignment[*slot].inverse().is_err() {
            failed.push(label.to_string());
        }
    }
    Ok(failed)
}

/// Build an assignment map from `(slot, matrix)` pairs.
pub fn assignment<R: Ring, S: Into<String>>(
    pairs: impl IntoIterator<Item = (S, RingMatrix<R>)>,
) -> BTreeMap<String, RingMatrix<R>> {
    pairs.into_iter().map(|(k, v)| (k.into(), v)).collect()
}
