//! Block representations `[[A, B], [C, D]]` and the braid-group matrices they generate.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::relations::{check_relation_set, check_relations, RelationSetId, BLOCK_INVERSE};
use crate::arith::{Ring, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Blocks of a nondegenerate 2k×2k operator together with the blocks of its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockRep<R: Ring> {
    k: usize,
    a: RingMatrix<R>,
    b: RingMatrix<R>,
    c: RingMatrix<R>,
    d: RingMatrix<R>,
    a1: RingMatrix<R>,
    b1: RingMatrix<R>,
    c1: RingMatrix<R>,
    d1: RingMatrix<R>,
}

impl<R: Ring> BlockRep<R> {
    /// Fails with `SingularInput` if the block operator is not invertible over the ring.
    pub fn new(a: RingMatrix<R>, b: RingMatrix<R>, c: RingMatrix<R>, d: RingMatrix<R>) -> Result<Self> {
        let op = RingMatrix::from_blocks(&a, &b, &c, &d)?;
        let inv = op.inverse().map_err(|e| match e {
            Error::NonUnitDeterminant(det) => Error::SingularInput(format!("block operator has determinant {det}")),
            other => other,
        })?;
        let k = a.rows();
        Ok(BlockRep {
            k,
            a1: inv.submatrix(0, 0, k, k),
            b1: inv.submatrix(0, k, k, k),
            c1: inv.submatrix(k, 0, k, k),
            d1: inv.submatrix(k, k, k, k),
            a,
            b,
            c,
            d,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> &RingMatrix<R> {
        &self.a
    }
    pub fn b(&self) -> &RingMatrix<R> {
        &self.b
    }
    pub fn c(&self) -> &RingMatrix<R> {
        &self.c
    }
    pub fn d(&self) -> &RingMatrix<R> {
        &self.d
    }
    pub fn a1(&self) -> &RingMatrix<R> {
        &self.a1
    }
    pub fn b1(&self) -> &RingMatrix<R> {
        &self.b1
    }
    pub fn c1(&self) -> &RingMatrix<R> {
        &self.c1
    }
    pub fn d1(&self) -> &RingMatrix<R> {
        &self.d1
    }

    /// The 2k×2k operator `[[A, B], [C, D]]`.
    pub fn operator(&self) -> RingMatrix<R> {
        RingMatrix::from_blocks(&self.a, &self.b, &self.c, &self.d).expect("blocks share a size")
    }

    /// The 2k×2k operator `[[A1, B1], [C1, D1]]`.
    pub fn inverse_operator(&self) -> RingMatrix<R> {
        RingMatrix::from_blocks(&self.a1, &self.b1, &self.c1, &self.d1).expect("blocks share a size")
    }

    /// Slots `A B C D A1 B1 C1 D1`.
    pub fn slots(&self) -> BTreeMap<String, RingMatrix<R>> {
        [
            ("A", &self.a),
            ("B", &self.b),
            ("C", &self.c),
            ("D", &self.d),
            ("A1", &self.a1),
            ("B1", &self.b1),
            ("C1", &self.c1),
            ("D1", &self.d1),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
    }

    /// Violated braid-algebra relations.
    pub fn braid_algebra_violations(&self) -> Vec<String> {
        check_relation_set(&self.slots(), RelationSetId::BraidAlgebra).expect("all slots present")
    }

    /// Violated identities between the blocks and the inverse blocks.
    pub fn inverse_violations(&self) -> Vec<String> {
        check_relations(&self.slots(), BLOCK_INVERSE).expect("all slots present")
    }

    /// 2k×2k block for `t_i^{sign}`.
    fn signed_operator(&self, sign: i64) -> RingMatrix<R> {
        if sign > 0 {
            self.operator()
        } else {
            self.inverse_operator()
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "R: Ring + Serialize", deserialize = "R: Ring + Deserialize<'de>"))]
struct RawBlockRep<R: Ring> {
    k: usize,
    #[serde(rename = "A")]
    a: RingMatrix<R>,
    #[serde(rename = "B")]
    b: RingMatrix<R>,
    #[serde(rename = "C")]
    c: RingMatrix<R>,
    #[serde(rename = "D")]
    d: RingMatrix<R>,
    #[serde(rename = "A1", default, skip_serializing_if = "Option::is_none")]
    a1: Option<RingMatrix<R>>,
    #[serde(rename = "B1", default, skip_serializing_if = "Option::is_none")]
    b1: Option<RingMatrix<R>>,
    #[serde(rename = "C1", default, skip_serializing_if = "Option::is_none")]
    c1: Option<RingMatrix<R>>,
    #[serde(rename = "D1", default, skip_serializing_if = "Option::is_none")]
    d1: Option<RingMatrix<R>>,
}

impl<R: Ring + Serialize> Serialize for BlockRep<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawBlockRep {
            k: self.k,
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
            a1: Some(self.a1.clone()),
            b1: Some(self.b1.clone()),
            c1: Some(self.c1.clone()),
            d1: Some(self.d1.clone()),
        }
        .serialize(s)
    }
}

/// The inverse blocks are optional on input; when present they must match.
impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for BlockRep<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawBlockRep::<R>::deserialize(d)?;
        let rep = BlockRep::new(raw.a, raw.b, raw.c, raw.d).map_err(D::Error::custom)?;
        if rep.k != raw.k {
            return Err(D::Error::custom(format!("k = {} but blocks are {}x{}", raw.k, rep.k, rep.k)));
        }
        for (given, actual, name) in
            [(&raw.a1, &rep.a1, "A1"), (&raw.b1, &rep.b1, "B1"), (&raw.c1, &rep.c1, "C1"), (&raw.d1, &rep.d1, "D1")]
        {
            if given.as_ref().is_some_and(|g| g != actual) {
                return Err(D::Error::custom(format!("{name} is not the inverse block")));
            }
        }
        Ok(rep)
    }
}

/// Matrix of `t_i` (1-based `index`) acting on `strands` copies of the block space.
/// With `period2`, even indices use the second representation.
pub fn block_generator_matrix<R: Ring>(
    rep: &BlockRep<R>,
    strands: usize,
    index: usize,
    period2: Option<&BlockRep<R>>,
) -> Result<RingMatrix<R>> {
    signed_generator_matrix(rep, strands, index as i64, period2)
}

fn rep_for_index<'a, R: Ring>(rep: &'a BlockRep<R>, index: usize, period2: Option<&'a BlockRep<R>>) -> &'a BlockRep<R> {
    match period2 {
        Some(p) if index.is_multiple_of(2) => p,
        _ => rep,
    }
}

fn check_period2<R: Ring>(rep: &BlockRep<R>, period2: Option<&BlockRep<R>>) -> Result<()> {
    match period2 {
        Some(p) if p.k != rep.k => {
            Err(Error::DimensionMismatch(format!("period-2 blocks have sizes {} and {}", rep.k, p.k)))
        }
        _ => Ok(()),
    }
}

/// Matrix of the letter `t_{|letter|}^{sign(letter)}`.
pub fn signed_generator_matrix<R: Ring>(
    rep: &BlockRep<R>,
    strands: usize,
    letter: i64,
    period2: Option<&BlockRep<R>>,
) -> Result<RingMatrix<R>> {
    check_period2(rep, period2)?;
    let i = letter.unsigned_abs() as usize;
    if letter == 0 || i >= strands {
        return Err(Error::IndexOutOfRange { index: letter, strands });
    }
    let k = rep.k;
    let mut m = RingMatrix::identity(strands * k);
    let block = rep_for_index(rep, i, period2).signed_operator(letter);
    m.set_submatrix((i - 1) * k, (i - 1) * k, &block);
    Ok(m)
}

/// Product of the generator matrices of `w` in word order.
pub fn rep_from_word<R: Ring>(
    rep: &BlockRep<R>,
    w: &BraidWord,
    period2: Option<&BlockRep<R>>,
) -> Result<RingMatrix<R>> {
    check_period2(rep, period2)?;
    let k = rep.k;
    let n = w.strands() * k;
    let ops = [rep, period2.unwrap_or(rep)];
    let blocks: Vec<[RingMatrix<R>; 2]> = ops.iter().map(|r| [r.operator(), r.inverse_operator()]).collect();
    let mut acc = RingMatrix::identity(n);
    for &letter in w.letters() {
        let i = letter.unsigned_abs() as usize;
        let which = usize::from(period2.is_some() && i.is_multiple_of(2));
        let block = &blocks[which][usize::from(letter < 0)];
        acc = mul_block_columns(&acc, block, (i - 1) * k)?;
    }
    Ok(acc)
}

/// `m · (I ⊕ block ⊕ I)` where the block starts at column `offset`; only those columns change.
fn mul_block_columns<R: Ring>(m: &RingMatrix<R>, block: &RingMatrix<R>, offset: usize) -> Result<RingMatrix<R>> {
    let w = block.rows();
    let strip = m.submatrix(0, offset, m.rows(), w).mul(block)?;
    let mut out = m.clone();
    out.set_submatrix(0, offset, &strip);
    Ok(out)
}

/// True iff the block operator `t` of a 1×1 series-II representation with
/// `B = [q]` satisfies `t² − (1−q)·t − q·I = 0`.
pub fn burau_quadratic_check<R: Ring>(rep: &BlockRep<R>) -> bool {
    if rep.k != 1 {
        return false;
    }
    let q = rep.b.get(0, 0).clone();
    let t = rep.operator();
    let Ok(sq) = t.mul(&t) else { return false };
    let lin = t.scale(&R::one().sub(&q));
    let rhs = lin.add(&RingMatrix::scalar(2, q)).expect("same shape");
    sq == rhs
}

/// Parameters for the named constructions.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesParams<R: Ring> {
    /// `A = 0, D = 0, C = I`.
    I(RingMatrix<R>),
    /// `A = 0, C = I, D = I − B`.
    II(RingMatrix<R>),
    /// `A = I − B, C = I, D = 0`.
    III(RingMatrix<R>),
    /// The 2×2 family with `x, y, t` acting on a Jordan block.
    VI { alpha: R, beta: R },
    /// Three n×n matrices placed in the top-right corner of 2n×2n zero matrices.
    SquareZero { a: RingMatrix<R>, b: RingMatrix<R>, c: RingMatrix<R> },
}

pub fn series_constructor<R: Ring>(params: SeriesParams<R>) -> Result<BlockRep<R>> {
    match params {
        SeriesParams::I(b) => {
            let k = square_size(&b)?;
            BlockRep::new(RingMatrix::zeros(k, k), b, RingMatrix::identity(k), RingMatrix::zeros(k, k))
        }
        SeriesParams::II(b) => {
            let k = square_size(&b)?;
            let d = RingMatrix::identity(k).sub(&b)?;
            BlockRep::new(RingMatrix::zeros(k, k), b, RingMatrix::identity(k), d)
        }
        SeriesParams::III(b) => {
            let k = square_size(&b)?;
            let a = RingMatrix::identity(k).sub(&b)?;
            BlockRep::new(a, b, RingMatrix::identity(k), RingMatrix::zeros(k, k))
        }
        SeriesParams::VI { alpha, beta } => {
            if alpha.is_zero() {
                return Err(Error::SingularInput("series VI needs alpha != 0".into()));
            }
            let (z, o) = (R::zero(), R::one());
            let x = RingMatrix::from_rows(vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]])?;
            let y = RingMatrix::from_rows(vec![vec![o.clone(), beta], vec![z.clone(), o]])?;
            let t = RingMatrix::from_rows(vec![vec![z.clone(), alpha], vec![z.clone(), z]])?;
            BlockRep::new(x, y, RingMatrix::identity(2), t)
        }
        SeriesParams::SquareZero { a, b, c } => {
            let n = square_size(&a)?;
            if square_size(&b)? != n || square_size(&c)? != n {
                return Err(Error::DimensionMismatch("square-zero inputs differ in size".into()));
            }
            let corner = |m: &RingMatrix<R>| {
                let mut out = RingMatrix::zeros(2 * n, 2 * n);
                out.set_submatrix(0, n, m);
                out
            };
            let y = RingMatrix::identity(2 * n).add(&corner(&c))?;
            BlockRep::new(corner(&a), y, RingMatrix::identity(2 * n), corner(&b))
        }
    }
}

fn square_size<R: Ring>(m: &RingMatrix<R>) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("expected a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

/// Slots `x y t` of the simplified commutative algebra for a rep with `C = I`.
pub fn simplified_commutative_slots<R: Ring>(rep: &BlockRep<R>) -> BTreeMap<String, RingMatrix<R>> {
    [("x", rep.a.clone()), ("y", rep.b.clone()), ("t", rep.d.clone())]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentPoly, Rational};

    type Q = RingMatrix<Rational>;

    fn burau() -> BlockRep<LaurentPoly> {
        series_constructor(SeriesParams::II(RingMatrix::scalar(1, LaurentPoly::t()))).unwrap()
    }

    #[test]
    fn burau_operator_and_quadratic() {
        let rep = burau();
        let t = LaurentPoly::t();
        let expected = RingMatrix::from_rows(vec![
            vec![LaurentPoly::zero(), t.clone()],
            vec![LaurentPoly::one(), LaurentPoly::one().sub(&t)],
        ])
        .unwrap();
        assert_eq!(rep.operator(), expected);
        assert!(burau_quadratic_check(&rep));
        assert!(rep.braid_algebra_violations().is_empty());
        assert!(rep.inverse_violations().is_empty());
    }

    #[test]
    fn series_i_is_not_quadratic() {
        let rep = series_constructor(SeriesParams::I(RingMatrix::scalar(1, LaurentPoly::t()))).unwrap();
        assert!(!burau_quadratic_check(&rep));
        let one = series_constructor(SeriesParams::II(Q::identity(1))).unwrap();
        assert!(burau_quadratic_check(&one));
    }

    #[test]
    fn series_vi_matches_printed_operator() {
        let rep =
            series_constructor(SeriesParams::VI { alpha: Rational::from_int(5), beta: Rational::from_int(7) }).unwrap();
        assert_eq!(rep.operator(), Q::from_ints(&[&[0, 1, 1, 7], &[0, 0, 0, 1], &[1, 0, 0, 5], &[0, 1, 0, 0]]));
        assert!(rep.braid_algebra_violations().is_empty());
    }

    #[test]
    fn swap_generator() {
        let rep = series_constructor(SeriesParams::I(Q::identity(1))).unwrap();
        assert_eq!(rep.operator(), Q::from_ints(&[&[0, 1], &[1, 0]]));
        let m = block_generator_matrix(&rep, 3, 1, None).unwrap();
        assert_eq!(m, Q::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert!(matches!(block_generator_matrix(&rep, 3, 3, None), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn singular_series_rejected() {
        assert!(matches!(series_constructor(SeriesParams::I(Q::zeros(1, 1))), Err(Error::SingularInput(_))));
    }

    #[test]
    fn word_product_matches_generator_product() {
        let rep = burau();
        let w = BraidWord::parse("1 -2 1 2 -1", 3).unwrap();
        let mut expected = RingMatrix::identity(3);
        for &l in w.letters() {
            expected = expected.mul(&signed_generator_matrix(&rep, 3, l, None).unwrap()).unwrap();
        }
        assert_eq!(rep_from_word(&rep, &w, None).unwrap(), expected);
        let inv = rep_from_word(&rep, &w.inverse(), None).unwrap();
        assert!(expected.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn json_round_trip() {
        let rep = burau();
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains(r#""B":[["1*T^1"]]"#));
        let back: BlockRep<LaurentPoly> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        let bad = s.replace(r#""D1":[["0"]]"#, r#""D1":[["1"]]"#);
        assert!(serde_json::from_str::<BlockRep<LaurentPoly>>(&bad).is_err());
    }
}
