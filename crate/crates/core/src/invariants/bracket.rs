//! The trace bracket of a block representation and the bounded check that the
//! representation is "simple" enough for the bracket to be a link invariant.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::report::{InvariantValue, LinkInvariant};
use crate::algebra::{rep_from_word, BlockRep};
use crate::arith::{Rational, Ring, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Monomial length used when the bracket is computed without an explicit bound.
pub const DEFAULT_MAX_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    A,
    A1,
    B,
    B1,
    C,
    C1,
    D,
    D1,
}

impl Letter {
    const ALL: [Letter; 8] =
        [Letter::A, Letter::A1, Letter::B, Letter::B1, Letter::C, Letter::C1, Letter::D, Letter::D1];

    fn name(self) -> &'static str {
        match self {
            Letter::A => "A",
            Letter::A1 => "A1",
            Letter::B => "B",
            Letter::B1 => "B1",
            Letter::C => "C",
            Letter::C1 => "C1",
            Letter::D => "D",
            Letter::D1 => "D1",
        }
    }

    fn matrix(self, rep: &BlockRep<Rational>) -> &RingMatrix<Rational> {
        match self {
            Letter::A => rep.a(),
            Letter::A1 => rep.a1(),
            Letter::B => rep.b(),
            Letter::B1 => rep.b1(),
            Letter::C => rep.c(),
            Letter::C1 => rep.c1(),
            Letter::D => rep.d(),
            Letter::D1 => rep.d1(),
        }
    }

    fn is_d(self) -> bool {
        matches!(self, Letter::D | Letter::D1)
    }

    fn is_b(self) -> bool {
        matches!(self, Letter::B | Letter::B1)
    }

    fn is_c(self) -> bool {
        matches!(self, Letter::C | Letter::C1)
    }

    /// Contribution to the prefix balance `#C − #B`.
    fn balance(self) -> i32 {
        i32::from(self.is_c()) - i32::from(self.is_b())
    }
}

/// Words in `D, D1` alone (the empty word is `X = 1`), or `G1 S1 M S2 G2` with
/// `S1 ∈ {C, C1}`, `S2 ∈ {B, B1}`, `G1, G2` words in `D, D1`, and `M` holding as
/// many `B`'s as `C`'s.
fn admissible(word: &[Letter]) -> bool {
    let Some(first) = word.iter().position(|l| !l.is_d()) else {
        return true;
    };
    let last = word.iter().rposition(|l| !l.is_d()).expect("some letter is not D");
    if first == last || !word[first].is_c() || !word[last].is_b() {
        return false;
    }
    word[first + 1..last].iter().map(|l| l.balance()).sum::<i32>() == 0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityWitness {
    /// `"A"` or `"A1"`: which condition failed.
    pub condition: String,
    pub monomial: String,
    /// `tr(·X) − tr(X)`, which should have been in `tℤ`.
    pub difference: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityVerdict {
    pub max_len: usize,
    pub checked: usize,
    pub failures: Vec<SimplicityWitness>,
}

impl SimplicityVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS ({} monomials up to length {})", self.checked, self.max_len)
        } else {
            let w = &self.failures[0];
            write!(
                f,
                "FAIL at X = {} ({} condition, difference {}; {} failures)",
                w.monomial,
                w.condition,
                w.difference,
                self.failures.len()
            )
        }
    }
}

fn in_multiples(x: &Rational, t: &Rational) -> bool {
    x.div_exact(t).is_some_and(|q| q.is_integer())
}

/// Enumerates admissible monomials up to `max_len` whose proper prefixes keep
/// `#C − #B ≥ 0`, and checks `tr(A·X) − tr(X) ∈ tℤ` and `tr(A1·X) − tr(X) ∈ tℤ`.
/// Passing is a bounded certificate only.
pub fn simplicity_check(rep: &BlockRep<Rational>, t: &Rational, max_len: usize) -> Result<SimplicityVerdict> {
    if t.is_zero() {
        return Err(Error::InvalidSpec("t must be nonzero".into()));
    }
    let mut verdict = SimplicityVerdict { max_len, checked: 0, failures: Vec::new() };
    let mut word = Vec::with_capacity(max_len);
    let id = RingMatrix::identity(rep.k());
    visit(rep, t, max_len, &mut word, &id, 0, &mut verdict)?;
    Ok(verdict)
}

fn visit(
    rep: &BlockRep<Rational>,
    t: &Rational,
    max_len: usize,
    word: &mut Vec<Letter>,
    product: &RingMatrix<Rational>,
    balance: i32,
    verdict: &mut SimplicityVerdict,
) -> Result<()> {
    if admissible(word) {
        verdict.checked += 1;
        let tr_x = product.trace();
        for (name, op) in [("A", rep.a()), ("A1", rep.a1())] {
            let diff = op.mul(product)?.trace().sub(&tr_x);
            if !in_multiples(&diff, t) {
                let monomial = if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|l| l.name()).collect::<Vec<_>>().join("·")
                };
                verdict.failures.push(SimplicityWitness { condition: name.into(), monomial, difference: diff });
            }
        }
    }
    // a longer word has the current one as a proper prefix
    if word.len() == max_len || balance < 0 {
        return Ok(());
    }
    for l in Letter::ALL {
        word.push(l);
        let next = product.mul(l.matrix(rep))?;
        visit(rep, t, max_len, word, &next, balance + l.balance(), verdict)?;
        word.pop();
    }
    Ok(())
}

/// `S(β) = 2·tr π′(β) + exp(β)·(tr D1 − tr D) − n·(tr D1 + tr D)`, meaningful
/// modulo `2t`.
pub fn bracket_value(rep: &BlockRep<Rational>, w: &BraidWord) -> Result<Rational> {
    let tr = rep_from_word(rep, w, None)?.trace();
    let (d, d1) = (rep.d().trace(), rep.d1().trace());
    let exp = Rational::from_int(w.exponent_sum());
    let n = Rational::from_int(w.strands() as i64);
    Ok(tr.add(&tr).add(&exp.mul(&d1.sub(&d))).sub(&n.mul(&d1.add(&d))))
}

/// Bracket of a representation that passed [`simplicity_check`].
#[derive(Clone, Debug)]
pub struct Bracket {
    rep: BlockRep<Rational>,
    t: Rational,
    verdict: SimplicityVerdict,
}

impl Bracket {
    pub fn new(rep: BlockRep<Rational>, t: Rational, max_len: usize) -> Result<Self> {
        let verdict = simplicity_check(&rep, &t, max_len)?;
        if !verdict.passed() {
            return Err(Error::SimplicityUnverified(verdict.to_string()));
        }
        Ok(Bracket { rep, t, verdict })
    }

    pub fn modulus(&self) -> Rational {
        self.t.add(&self.t)
    }

    pub fn verdict(&self) -> &SimplicityVerdict {
        &self.verdict
    }

    pub fn value(&self, w: &BraidWord) -> Result<Rational> {
        bracket_value(&self.rep, w)
    }

    pub fn parameters(&self) -> BTreeMap<String, String> {
        BTreeMap::from([("t".to_string(), self.t.to_string()), ("simplicity".to_string(), self.verdict.to_string())])
    }
}

impl LinkInvariant for Bracket {
    fn id(&self) -> &str {
        "bracket"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        Ok(InvariantValue::Residue { value: self.value(w)?, modulus: self.modulus() })
    }
}

/// Bracket after a simplicity check up to [`DEFAULT_MAX_LEN`].
pub fn bracket_invariant(rep: &BlockRep<Rational>, w: &BraidWord, t: &Rational) -> Result<Rational> {
    Bracket::new(rep.clone(), t.clone(), DEFAULT_MAX_LEN)?.value(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{series_constructor, SeriesParams};
    use crate::invariants::report::markov_invariance_suite;

    fn scalar(x: i64) -> RingMatrix<Rational> {
        RingMatrix::scalar(1, Rational::from_int(x))
    }

    fn w(strands: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    #[test]
    fn shapes() {
        use Letter::*;
        assert!(admissible(&[]));
        assert!(admissible(&[D, D1, D]));
        assert!(admissible(&[D, C, B1, D1]));
        assert!(admissible(&[C1, A, C, B, B]));
        assert!(!admissible(&[C, B, B]));
        assert!(!admissible(&[A]));
        assert!(!admissible(&[B, C]));
        assert!(!admissible(&[C, A]));
    }

    #[test]
    fn max_len_zero_checks_only_one() {
        let rep = series_constructor(SeriesParams::I(scalar(1))).unwrap();
        let v = simplicity_check(&rep, &Rational::one(), 0).unwrap();
        assert_eq!(v.checked, 1);
        assert!(v.passed());
    }

    #[test]
    fn fails_at_x_equal_one() {
        // series II with B = [2]: tr A − tr 1 = −2 and tr A1 − 1 = −1/2
        let rep = series_constructor(SeriesParams::II(scalar(2))).unwrap();
        let v = simplicity_check(&rep, &Rational::one(), 4).unwrap();
        assert!(!v.passed());
        assert_eq!(v.failures[0].monomial, "1");
        assert!(matches!(bracket_invariant(&rep, &w(2, &[1]), &Rational::one()), Err(Error::SimplicityUnverified(_))));
    }

    #[test]
    fn fails_first_at_length_three() {
        let rep = BlockRep::new(scalar(-1), scalar(1), scalar(2), scalar(0)).unwrap();
        let t = Rational::new(1, 4);
        assert!(simplicity_check(&rep, &t, 2).unwrap().passed());
        let v = simplicity_check(&rep, &t, 3).unwrap();
        assert!(!v.passed());
        assert!(v.failures.iter().any(|f| f.monomial == "D1·D1·D1"));
    }

    #[test]
    fn empty_braid() {
        let rep = series_constructor(SeriesParams::II(scalar(-1))).unwrap();
        let s = bracket_value(&rep, &BraidWord::empty(1)).unwrap();
        let k = Rational::from_int(2 * rep.k() as i64);
        assert_eq!(s, k.sub(&rep.d1().trace().add(&rep.d().trace())));
    }

    #[test]
    fn conjugation_is_exact_and_stabilization_congruent() {
        for (b, t) in [(1, 1), (-1, 1)] {
            let params = if b > 0 { SeriesParams::I(scalar(b)) } else { SeriesParams::II(scalar(b)) };
            let rep = series_constructor(params).unwrap();
            let br = Bracket::new(rep, Rational::from_int(t), DEFAULT_MAX_LEN).unwrap();
            let base = w(3, &[1, -2, 1, 1]);
            let g = w(3, &[2, 1]);
            let conj = g.concat(&base).unwrap().concat(&g.inverse()).unwrap();
            assert_eq!(br.value(&base).unwrap(), br.value(&conj).unwrap());
            assert!(markov_invariance_suite(&br, &base, 10, 5).unwrap().passed());
        }
    }
}
