//! Braid words, their permutations and closures, and Markov moves.
//!
//! Letters are listed in application order: the permutation of `t_1 t_2`
//! applies `t_1` first. Strand positions are 0-based throughout the API;
//! generator indices are 1-based as in the usual notation `t_i`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in `t_1, ..., t_{n-1}` and their inverses. Letter `k > 0` is
/// `t_k`, letter `k < 0` is `t_{-k}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

#[derive(Deserialize)]
struct RawBraid {
    strands: usize,
    letters: Vec<i64>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::IndexOutOfRange { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        BraidWord { strands, letters: Vec::new() }
    }

    /// Parse signed integers separated by spaces and/or commas.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let letters = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<i64>()
                    .ok()
                    .filter(|&k| k != 0)
                    .ok_or_else(|| Error::Parse(format!("bad braid letter `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    /// Uniformly random letters over all generators and signs.
    pub fn random<G: Rng + ?Sized>(rng: &mut G, strands: usize, len: usize) -> Self {
        if strands < 2 {
            return Self::empty(strands.max(1));
        }
        let top = strands as i64 - 1;
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=top);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| -l).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch(format!("braids on {} and {} strands", self.strands, other.strands)));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            p = p.then(&Permutation::transposition(self.strands, l.unsigned_abs() as usize - 1));
        }
        p
    }

    /// Cycles of the permutation, one per component of the closure.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        self.permutation().cycles()
    }

    pub fn apply_move(&self, mv: &MarkovMove) -> Result<Self> {
        match mv {
            MarkovMove::Conjugate(g) => g.concat(self)?.concat(&g.inverse()),
            MarkovMove::Stabilize(sign) => {
                let n = self.strands as i64;
                let mut letters = Vec::with_capacity(self.len() + 1);
                letters.push(if *sign < 0 { -n } else { n });
                letters.extend_from_slice(&self.letters);
                Ok(BraidWord { strands: self.strands + 1, letters })
            }
            MarkovMove::Destabilize => {
                if self.strands < 2 {
                    return Err(Error::NotDestabilizable);
                }
                let top = self.strands as u64 - 1;
                let hits: Vec<usize> = (0..self.len()).filter(|&p| self.letters[p].unsigned_abs() == top).collect();
                match hits.as_slice() {
                    [p] if *p == 0 || *p + 1 == self.len() => {
                        let mut letters = self.letters.clone();
                        letters.remove(*p);
                        Ok(BraidWord { strands: self.strands - 1, letters })
                    }
                    _ => Err(Error::NotDestabilizable),
                }
            }
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "[{}]@B_{}", body.join(" "), self.strands)
    }
}

pub fn parse_braid_word(text: &str, strands: usize) -> Result<BraidWord> {
    BraidWord::parse(text, strands)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkovMove {
    /// `w ↦ γ w γ^{-1}`
    Conjugate(BraidWord),
    /// `w ↦ t_n^{±1} w` on one more strand; the sign is taken from the argument.
    Stabilize(i8),
    /// Inverse of stabilization when the top generator occurs once, at either end.
    Destabilize,
}

pub fn markov_move(w: &BraidWord, mv: &MarkovMove) -> Result<BraidWord> {
    w.apply_move(mv)
}

/// Knobs for [`random_markov_perturbation_with`].
#[derive(Clone, Debug)]
pub struct PerturbationOptions {
    /// Longest random conjugator.
    pub max_conjugator_len: usize,
    /// Stabilizations stop once the strand count exceeds the original by this much.
    pub max_extra_strands: usize,
}

impl Default for PerturbationOptions {
    fn default() -> Self {
        PerturbationOptions { max_conjugator_len: 3, max_extra_strands: 3 }
    }
}

pub fn random_markov_perturbation(w: &BraidWord, steps: usize, seed: u64) -> BraidWord {
    random_markov_perturbation_with(w, steps, seed, &PerturbationOptions::default())
}

/// Apply `steps` seeded random moves: conjugation by a short word,
/// stabilization (prepended or appended, either sign), or destabilization.
pub fn random_markov_perturbation_with(
    w: &BraidWord,
    steps: usize,
    seed: u64,
    opts: &PerturbationOptions,
) -> BraidWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = w.strands + opts.max_extra_strands;
    let mut cur = w.clone();
    for _ in 0..steps {
        let can_conjugate = cur.strands >= 2 && opts.max_conjugator_len > 0;
        let can_stabilize = cur.strands < cap;
        let destab = cur.apply_move(&MarkovMove::Destabilize).ok();
        let mut choices = Vec::with_capacity(4);
        if can_conjugate {
            choices.push(0);
        }
        if can_stabilize {
            choices.extend([1, 2]);
        }
        if destab.is_some() {
            choices.push(3);
        }
        if choices.is_empty() {
            break;
        }
        cur = match choices[rng.gen_range(0..choices.len())] {
            0 => {
                let len = rng.gen_range(1..=opts.max_conjugator_len);
                let g = BraidWord::random(&mut rng, cur.strands, len);
                cur.apply_move(&MarkovMove::Conjugate(g)).expect("same strand count")
            }
            1 => {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                cur.apply_move(&MarkovMove::Stabilize(sign)).expect("stabilize never fails")
            }
            2 => {
                // w t_n^{±1}, conjugate to the prepended form
                let n = cur.strands as i64;
                let mut letters = cur.letters.clone();
                letters.push(if rng.gen_bool(0.5) { n } else { -n });
                BraidWord { strands: cur.strands + 1, letters }
            }
            _ => destab.expect("checked above"),
        };
    }
    cur
}

/// Permutation of `0..n`, stored as the image of each position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Swap of positions `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation { images: self.images.iter().map(|&j| other.images[j]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (j, &x) in self.images.iter().enumerate() {
            inv[x] = j;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| j == x)
    }

    /// Cycles, each starting at its smallest position, ordered by that position.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths; two permutations are conjugate iff these agree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(w("1 1 1", 2).letters(), &[1, 1, 1]);
        assert_eq!(w("1, 2,-1", 3).letters(), &[1, 2, -1]);
        assert!(w("", 3).is_empty());
        assert_eq!(BraidWord::parse("3", 3), Err(Error::IndexOutOfRange { index: 3, strands: 3 }));
        assert!(matches!(BraidWord::parse("1 x", 3), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("0", 3), Err(Error::Parse(_))));
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("1 -2 1", 3).exponent_sum(), 1);
        assert_eq!(w("", 2).exponent_sum(), 0);
        assert_eq!(w("1 1 1", 2).exponent_sum(), 3);
    }

    #[test]
    fn permutations_and_components() {
        assert_eq!(w("1", 2).permutation().images(), &[1, 0]);
        assert!(w("1 1", 2).permutation().is_identity());
        // strand 0 -> 1 -> 2
        assert_eq!(w("1 2", 3).permutation().images(), &[2, 0, 1]);
        assert_eq!(w("1", 2).closure_components().len(), 1);
        assert_eq!(w("", 3).closure_components().len(), 3);
        assert_eq!(w("1 1", 2).closure_components().len(), 2);
    }

    #[test]
    fn moves() {
        let s = w("1", 2).apply_move(&MarkovMove::Stabilize(1)).unwrap();
        assert_eq!(s, w("2 1", 3));
        assert_eq!(s.apply_move(&MarkovMove::Destabilize).unwrap(), w("1", 2));
        let c = w("1 2", 3).apply_move(&MarkovMove::Conjugate(BraidWord::empty(3))).unwrap();
        assert_eq!(c, w("1 2", 3));
        assert_eq!(w("2 1 2", 3).apply_move(&MarkovMove::Destabilize), Err(Error::NotDestabilizable));
        assert_eq!(w("1 -2", 3).apply_move(&MarkovMove::Destabilize).unwrap(), w("1", 2));
    }

    #[test]
    fn perturbation_is_deterministic() {
        let base = w("1 1 1", 2);
        assert_eq!(random_markov_perturbation(&base, 0, 7), base);
        let a = random_markov_perturbation(&base, 5, 7);
        assert_eq!(a, random_markov_perturbation(&base, 5, 7));
        assert!(a.strands() <= 5);
    }

    #[test]
    fn json_shape() {
        let b = w("1 -2", 3);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"strands":3,"letters":[1,-2]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&s).unwrap(), b);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"letters":[2]}"#).is_err());
    }
}
