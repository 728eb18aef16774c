//! Braids with a group label on every strand, and label schemes `t_i ↦ t̃_i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{sample, Ring, RingMatrix};
use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};

/// A permutation of the strands with an invertible matrix on each strand.
/// `labels[j]` belongs to the strand running from `j` to `perm(j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GBraid<R: Ring> {
    perm: Permutation,
    labels: Vec<RingMatrix<R>>,
}

impl<R: Ring> GBraid<R> {
    pub fn new(perm: Permutation, labels: Vec<RingMatrix<R>>) -> Result<Self> {
        if perm.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!("{} strands but {} labels", perm.len(), labels.len())));
        }
        Ok(GBraid { perm, labels })
    }

    pub fn identity(strands: usize, m: usize) -> Self {
        GBraid { perm: Permutation::identity(strands), labels: vec![RingMatrix::identity(m); strands] }
    }

    /// `t̃_i` (1-based `index`) with `a` on strand `i` and `b` on strand `i+1`.
    pub fn generator(strands: usize, index: usize, a: &RingMatrix<R>, b: &RingMatrix<R>) -> Self {
        let mut g = Self::identity(strands, a.rows());
        g.perm = Permutation::transposition(strands, index - 1);
        g.labels[index - 1] = a.clone();
        g.labels[index] = b.clone();
        g
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn labels(&self) -> &[RingMatrix<R>] {
        &self.labels
    }

    /// `self` first, then `other`. A strand picks up the later label on the left.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.strands() != other.strands() {
            return Err(Error::DimensionMismatch(format!(
                "G-braids on {} and {} strands",
                self.strands(),
                other.strands()
            )));
        }
        let labels = (0..self.strands())
            .map(|j| other.labels[self.perm.apply(j)].mul(&self.labels[j]))
            .collect::<Result<_>>()?;
        Ok(GBraid { perm: self.perm.then(&other.perm), labels })
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut labels = self.labels.clone();
        for (j, g) in self.labels.iter().enumerate() {
            labels[self.perm.apply(j)] = g.inverse()?;
        }
        Ok(GBraid { perm: self.perm.inverse(), labels })
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.labels.iter().all(RingMatrix::is_identity)
    }
}

/// Where the matrices `a_1, a_2, …` come from.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSource<R: Ring> {
    Explicit(Vec<RingMatrix<R>>),
    Constant(RingMatrix<R>),
    /// Invertible matrices with small random rational entries, drawn in order
    /// from a seeded stream so that every prefix is stable.
    Random {
        m: usize,
        seed: u64,
        bound: i64,
    },
}

impl<R: Ring> SequenceSource<R> {
    pub fn dim(&self) -> Result<usize> {
        match self {
            SequenceSource::Explicit(v) => {
                v.first().map(RingMatrix::rows).ok_or_else(|| Error::InvalidSpec("empty label sequence".into()))
            }
            SequenceSource::Constant(a) => Ok(a.rows()),
            SequenceSource::Random { m, .. } => Ok(*m),
        }
    }

    /// `a_1 .. a_count`.
    pub fn take(&self, count: usize) -> Result<Vec<RingMatrix<R>>> {
        match self {
            SequenceSource::Explicit(v) => {
                if v.len() < count {
                    return Err(Error::InvalidSpec(format!("need {count} labels, have {}", v.len())));
                }
                Ok(v[..count].to_vec())
            }
            SequenceSource::Constant(a) => Ok(vec![a.clone(); count]),
            SequenceSource::Random { m, seed, bound } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..count).map(|_| sample::invertible(&mut rng, *m, *bound)).collect())
            }
        }
    }
}

/// How `b_s` is derived from the `a`'s.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelRule<R: Ring> {
    /// `b_s = a_s⁻¹`
    Inverse,
    /// `b_s = c·a_s⁻¹` for a central scalar `c`; `c = T` gives the `T_INVERSE` scheme.
    ScaledInverse(R),
    /// `b_s = g_{s−1} u g_{s−1}⁻¹ a_s⁻¹` with `g_s = a_s ⋯ a_1`.
    ConjugatedU(RingMatrix<R>),
    /// The printed form `b_s = g_{s−1} u g_s⁻¹ a_s⁻¹`, kept for comparison.
    ConjugatedUVerbatim(RingMatrix<R>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelScheme<R: Ring> {
    pub source: SequenceSource<R>,
    pub rule: LabelRule<R>,
}

impl<R: Ring> LabelScheme<R> {
    pub fn new(source: SequenceSource<R>, rule: LabelRule<R>) -> Self {
        LabelScheme { source, rule }
    }

    pub fn dim(&self) -> Result<usize> {
        self.source.dim()
    }

    /// `(a_s, b_s)` for `s = 1..=count`, with `a_s b_s = b_{s+1} a_{s+1}` checked
    /// on every consecutive pair.
    pub fn pairs(&self, count: usize) -> Result<Vec<(RingMatrix<R>, RingMatrix<R>)>> {
        let a = self.source.take(count)?;
        let m = self.dim()?;
        let mut out = Vec::with_capacity(count);
        let mut g = RingMatrix::identity(m);
        for a_s in a {
            let a_inv = a_s.inverse()?;
            let b_s = match &self.rule {
                LabelRule::Inverse => a_inv,
                LabelRule::ScaledInverse(c) => a_inv.scale(c),
                LabelRule::ConjugatedU(u) => g.mul(u)?.mul(&g.inverse()?)?.mul(&a_inv)?,
                LabelRule::ConjugatedUVerbatim(u) => {
                    let g_next = a_s.mul(&g)?;
                    g.mul(u)?.mul(&g_next.inverse()?)?.mul(&a_inv)?
                }
            };
            g = a_s.mul(&g)?;
            out.push((a_s, b_s));
        }
        for s in 1..out.len() {
            let lhs = out[s - 1].0.mul(&out[s - 1].1)?;
            let rhs = out[s].1.mul(&out[s].0)?;
            if lhs != rhs {
                return Err(Error::RelationViolated { index: s });
            }
        }
        Ok(out)
    }
}

/// Image of `w` under `t_i ↦ t̃_i`.
pub fn gbraid_from_braid<R: Ring>(w: &BraidWord, scheme: &LabelScheme<R>) -> Result<GBraid<R>> {
    let n = w.strands();
    let m = scheme.dim()?;
    let pairs = scheme.pairs(n - 1)?;
    let mut gens = Vec::with_capacity(pairs.len());
    for (i, (a, b)) in pairs.iter().enumerate() {
        let g = GBraid::generator(n, i + 1, a, b);
        let inv = g.inverse()?;
        gens.push([g, inv]);
    }
    let mut acc = GBraid::identity(n, m);
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        acc = acc.then(&gens[i][usize::from(l < 0)])?;
    }
    Ok(acc)
}

/// For each closure component, the labels multiplied along it from its
/// smallest position, later labels on the left.
pub fn component_products<R: Ring>(g: &GBraid<R>) -> Vec<RingMatrix<R>> {
    g.perm
        .cycles()
        .into_iter()
        .map(|cycle| {
            let mut p = g.labels[cycle[0]].clone();
            for &j in &cycle[1..] {
                p = g.labels[j].mul(&p).expect("labels share a size");
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentPoly, Rational};
    use rand::Rng;

    fn random_scheme(rule: LabelRule<Rational>, seed: u64) -> LabelScheme<Rational> {
        LabelScheme::new(SequenceSource::Random { m: 2, seed, bound: 5 }, rule)
    }

    /// Wreath-product multiplication written out from scratch: follow each
    /// strand through every letter.
    fn brute_force(w: &BraidWord, pairs: &[(RingMatrix<Rational>, RingMatrix<Rational>)]) -> GBraid<Rational> {
        let n = w.strands();
        let m = pairs[0].0.rows();
        let mut images = Vec::new();
        let mut labels = Vec::new();
        for start in 0..n {
            let mut pos = start;
            let mut label = RingMatrix::identity(m);
            for &l in w.letters() {
                let i = l.unsigned_abs() as usize - 1;
                let (a, b) = &pairs[i];
                let step = if l > 0 {
                    match pos {
                        p if p == i => Some((a.clone(), i + 1)),
                        p if p == i + 1 => Some((b.clone(), i)),
                        _ => None,
                    }
                } else {
                    // the inverse sends i+1 back along the strand that carried a
                    match pos {
                        p if p == i + 1 => Some((a.inverse().unwrap(), i)),
                        p if p == i => Some((b.inverse().unwrap(), i + 1)),
                        _ => None,
                    }
                };
                if let Some((g, next)) = step {
                    label = g.mul(&label).unwrap();
                    pos = next;
                }
            }
            images.push(pos);
            labels.push(label);
        }
        GBraid::new(Permutation::from_images(images).unwrap(), labels).unwrap()
    }

    #[test]
    fn single_generator() {
        let a = RingMatrix::<Rational>::from_ints(&[&[2, 1], &[1, 1]]);
        let scheme = LabelScheme::new(SequenceSource::Constant(a.clone()), LabelRule::Inverse);
        let g = gbraid_from_braid(&BraidWord::new(3, vec![1]).unwrap(), &scheme).unwrap();
        assert_eq!(g.perm().images(), &[1, 0, 2]);
        assert_eq!(g.labels()[0], a);
        assert_eq!(g.labels()[1], a.inverse().unwrap());
        assert!(g.labels()[2].is_identity());
    }

    #[test]
    fn inverse_letters_cancel() {
        let scheme = random_scheme(LabelRule::ScaledInverse(Rational::from_int(3)), 1);
        let g = gbraid_from_braid(&BraidWord::new(3, vec![1, -1, -2, 2]).unwrap(), &scheme).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn matches_brute_force_wreath_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for rule in [LabelRule::Inverse, LabelRule::ScaledInverse(Rational::new(-2, 3))] {
            let scheme = random_scheme(rule, 4);
            for _ in 0..10 {
                let w = BraidWord::random(&mut rng, 4, 7);
                let pairs = scheme.pairs(3).unwrap();
                assert_eq!(gbraid_from_braid(&w, &scheme).unwrap(), brute_force(&w, &pairs));
            }
        }
        let square = BraidWord::new(2, vec![1, 1]).unwrap();
        let scheme = random_scheme(LabelRule::Inverse, 9);
        let g = gbraid_from_braid(&square, &scheme).unwrap();
        assert!(g.perm().is_identity());
        assert_eq!(g, brute_force(&square, &scheme.pairs(1).unwrap()));
    }

    #[test]
    fn homomorphism_kills_relators() {
        let u = RingMatrix::<Rational>::from_ints(&[&[1, 2], &[0, 3]]);
        let schemes = [
            random_scheme(LabelRule::Inverse, 3),
            random_scheme(LabelRule::ScaledInverse(Rational::from_int(5)), 3),
            random_scheme(LabelRule::ConjugatedU(u), 3),
        ];
        let relators = [vec![1, 2, 1, -2, -1, -2], vec![2, 3, 2, -3, -2, -3], vec![1, 3, -1, -3]];
        for scheme in &schemes {
            for r in &relators {
                let g = gbraid_from_braid(&BraidWord::new(4, r.clone()).unwrap(), scheme).unwrap();
                assert!(g.is_identity(), "relator {r:?}");
            }
        }
    }

    #[test]
    fn concatenation_is_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let scheme = random_scheme(LabelRule::ScaledInverse(Rational::from_int(2)), 6);
        for _ in 0..5 {
            let x = BraidWord::random(&mut rng, 4, 5);
            let y = BraidWord::random(&mut rng, 4, 5);
            let gx = gbraid_from_braid(&x, &scheme).unwrap();
            let gy = gbraid_from_braid(&y, &scheme).unwrap();
            let gxy = gbraid_from_braid(&x.concat(&y).unwrap(), &scheme).unwrap();
            assert_eq!(gxy, gx.then(&gy).unwrap());
        }
    }

    #[test]
    fn conjugated_u_forms() {
        let u = RingMatrix::<Rational>::from_ints(&[&[2, 1], &[1, 1]]);
        assert!(random_scheme(LabelRule::ConjugatedU(u.clone()), 2).pairs(5).is_ok());
        assert_eq!(
            random_scheme(LabelRule::ConjugatedUVerbatim(u.clone()), 2).pairs(5),
            Err(Error::RelationViolated { index: 1 })
        );
        let constant = LabelScheme::new(
            SequenceSource::Constant(RingMatrix::from_ints(&[&[1, 1], &[0, 1]])),
            LabelRule::ConjugatedUVerbatim(u),
        );
        assert!(constant.pairs(5).is_ok());
    }

    #[test]
    fn laurent_scheme() {
        let scheme = LabelScheme::new(
            SequenceSource::<LaurentPoly>::Random { m: 2, seed: 1, bound: 4 },
            LabelRule::ScaledInverse(LaurentPoly::t()),
        );
        let pairs = scheme.pairs(3).unwrap();
        let t_id = RingMatrix::scalar(2, LaurentPoly::t());
        for (a, b) in &pairs {
            assert_eq!(a.mul(b).unwrap(), t_id);
        }
    }

    #[test]
    fn products_along_components() {
        let scheme = random_scheme(LabelRule::Inverse, 8);
        let g = gbraid_from_braid(&BraidWord::new(2, vec![1]).unwrap(), &scheme).unwrap();
        let p = component_products(&g);
        assert_eq!(p.len(), 1);
        assert!(p[0].is_identity());

        let id = GBraid::<Rational>::identity(3, 2);
        assert!(component_products(&id).iter().all(RingMatrix::is_identity));
        assert_eq!(component_products(&id).len(), 3);
    }

    #[test]
    fn other_start_points_give_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let scheme = random_scheme(LabelRule::ScaledInverse(Rational::from_int(3)), 2);
        for _ in 0..10 {
            let w = BraidWord::random(&mut rng, 4, 6);
            let g = gbraid_from_braid(&w, &scheme).unwrap();
            for (cycle, product) in g.perm().cycles().iter().zip(component_products(&g)) {
                let start = cycle[rng.gen_range(0..cycle.len())];
                let mut p = g.labels()[start].clone();
                let mut j = g.perm().apply(start);
                while j != start {
                    p = g.labels()[j].mul(&p).unwrap();
                    j = g.perm().apply(j);
                }
                assert_eq!(p.char_poly().unwrap(), product.char_poly().unwrap());
            }
        }
    }

    #[test]
    fn short_explicit_sequence() {
        let scheme =
            LabelScheme::new(SequenceSource::Explicit(vec![RingMatrix::<Rational>::identity(2)]), LabelRule::Inverse);
        assert!(gbraid_from_braid(&BraidWord::new(2, vec![1]).unwrap(), &scheme).is_ok());
        assert!(matches!(gbraid_from_braid(&BraidWord::new(3, vec![1]).unwrap(), &scheme), Err(Error::InvalidSpec(_))));
    }
}
