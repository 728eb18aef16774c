//! Mutually annihilating operator pairs and the triangle-algebra data they induce.
//!
//! Operators act on the right of row vectors: row `r` of a matrix holds the
//! coordinates of the image of basis vector `r`.

use std::collections::HashMap;

use super::block::BlockRep;
use crate::arith::{Ring, RingMatrix};
use crate::error::{Error, Result};

/// Operators `p1, p2` with `p1 p2 = p2 p1 = 0`, both nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct PairOperators<R: Ring> {
    p1: RingMatrix<R>,
    p2: RingMatrix<R>,
}

impl<R: Ring> PairOperators<R> {
    pub fn new(p1: RingMatrix<R>, p2: RingMatrix<R>) -> Result<Self> {
        if !p1.is_square() || p1.rows() != p2.rows() || p1.cols() != p2.cols() {
            return Err(Error::DimensionMismatch("pair operators must be square of one size".into()));
        }
        if p1.is_zero() || p2.is_zero() {
            return Err(Error::InvalidSpec("both operators must be nonzero".into()));
        }
        if !p1.mul(&p2)?.is_zero() || !p2.mul(&p1)?.is_zero() {
            return Err(Error::InvalidSpec("operators do not annihilate each other".into()));
        }
        Ok(PairOperators { p1, p2 })
    }

    pub fn dim(&self) -> usize {
        self.p1.rows()
    }

    pub fn p1(&self) -> &RingMatrix<R> {
        &self.p1
    }

    pub fn p2(&self) -> &RingMatrix<R> {
        &self.p2
    }

    pub fn is_nilpotent(&self) -> (bool, bool) {
        (is_nilpotent(&self.p1), is_nilpotent(&self.p2))
    }
}

pub fn is_nilpotent<R: Ring>(m: &RingMatrix<R>) -> bool {
    m.pow(m.rows() as u32).is_ok_and(|p| p.is_zero())
}

/// `(x, y) = (p2 − p1 + I, p1)`, a solution of `y² + xy = y` with `x` invertible.
pub fn pair_to_triangle_rep<R: Ring>(p: &PairOperators<R>) -> Result<(RingMatrix<R>, RingMatrix<R>)> {
    if p.is_nilpotent() != (true, true) {
        return Err(Error::NotNilpotent);
    }
    let x = p.p2.sub(&p.p1)?.add(&RingMatrix::identity(p.dim()))?;
    Ok((x, p.p1.clone()))
}

/// Block representation `A = 0, B = x, C = I, D = y` of a triangle-algebra solution.
pub fn triangle_block_rep<R: Ring>(x: &RingMatrix<R>, y: &RingMatrix<R>) -> Result<BlockRep<R>> {
    let k = x.rows();
    BlockRep::new(RingMatrix::zeros(k, k), x.clone(), RingMatrix::identity(k), y.clone())
}

/// Sparse row vector over basis indices.
type Row<R> = Vec<(usize, R)>;

fn fill<R: Ring>(dim: usize, images: &[Row<R>]) -> RingMatrix<R> {
    let mut m = RingMatrix::<R>::zeros(dim, dim);
    for (r, row) in images.iter().enumerate() {
        for (c, v) in row {
            let cur = m.get(r, *c).add(v);
            m.set(r, *c, cur);
        }
    }
    m
}

/// First-type pair from `(k_α, l_α)`, α = 1..n.
///
/// Basis, per α in order: `v_α π1^k` for k = 0..k_α, then `v_α π2^l` for
/// l = 1..l_α−1, and finally `v_n π2^{l_n}` when l_n ≥ 1. The vector
/// `v_α π2^{l_α}` (α < n) is the same as `v_{α+1} π1^{k_{α+1}}`.
pub fn type_i_pair<R: Ring>(spec: &[(usize, usize)]) -> Result<PairOperators<R>> {
    let n = spec.len();
    if n == 0 {
        return Err(Error::InvalidSpec("empty sequence".into()));
    }
    for (a, &(k, l)) in spec.iter().enumerate() {
        if a > 0 && k == 0 {
            return Err(Error::InvalidSpec(format!("k_{} must be positive", a + 1)));
        }
        if a + 1 < n && l == 0 {
            return Err(Error::InvalidSpec(format!("l_{} must be positive", a + 1)));
        }
    }
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Vec1 {
        P1(usize, usize),
        P2(usize, usize),
    }
    let mut index = HashMap::new();
    let mut order = Vec::new();
    for (a, &(k, l)) in spec.iter().enumerate() {
        for p in 0..=k {
            index.insert(Vec1::P1(a, p), order.len());
            order.push(Vec1::P1(a, p));
        }
        for p in 1..l {
            index.insert(Vec1::P2(a, p), order.len());
            order.push(Vec1::P2(a, p));
        }
    }
    let (_, ln) = spec[n - 1];
    if ln >= 1 {
        index.insert(Vec1::P2(n - 1, ln), order.len());
        order.push(Vec1::P2(n - 1, ln));
    }
    let dim = order.len();
    // v_α π2^p, resolved through the identifications; None means zero
    let pi2_power = |a: usize, p: usize| -> Option<usize> {
        let (_, l) = spec[a];
        if p < l {
            Some(index[&Vec1::P2(a, p)])
        } else if p == l && a + 1 < n {
            Some(index[&Vec1::P1(a + 1, spec[a + 1].0)])
        } else if p == l && l >= 1 {
            Some(index[&Vec1::P2(a, p)])
        } else {
            None
        }
    };
    let one = R::one();
    let mut img1 = vec![Vec::new(); dim];
    let mut img2 = vec![Vec::new(); dim];
    for (r, v) in order.iter().enumerate() {
        match *v {
            Vec1::P1(a, p) => {
                let (k, _) = spec[a];
                if p < k {
                    img1[r].push((index[&Vec1::P1(a, p + 1)], one.clone()));
                }
                if p == 0 {
                    if let Some(c) = pi2_power(a, 1) {
                        img2[r].push((c, one.clone()));
                    }
                }
            }
            Vec1::P2(a, p) => {
                if let Some(c) = pi2_power(a, p + 1).filter(|_| p < spec[a].1) {
                    img2[r].push((c, one.clone()));
                }
            }
        }
    }
    PairOperators::new(fill(dim, &img1), fill(dim, &img2))
}

/// True if the sequence repeats with some proper period dividing its length.
pub fn is_periodic(spec: &[(usize, usize)]) -> bool {
    let q = spec.len();
    (1..q).filter(|d| q.is_multiple_of(*d)).any(|d| (0..q).all(|i| spec[i] == spec[i % d]))
}

/// Second-type pair from `(r_μ, s_μ)`, μ = 1..q, and `f(x) = x^t − b_1 x^{t−1} − … − b_t`
/// given as `[b_1, …, b_t]`.
///
/// Basis, per (μ, ν) in lexicographic order: `v_{μν} π1^r` for r = 0..r_μ,
/// then `v_{μν} π2^s` for s = 1..s_μ−1.
pub fn type_ii_pair<R: Ring>(spec: &[(usize, usize)], f_coeffs: &[R]) -> Result<PairOperators<R>> {
    let q = spec.len();
    let t = f_coeffs.len();
    if q == 0 {
        return Err(Error::InvalidSpec("empty sequence".into()));
    }
    if spec.iter().any(|&(r, s)| r == 0 || s == 0) {
        return Err(Error::InvalidSpec("all r_mu and s_mu must be positive".into()));
    }
    if is_periodic(spec) {
        return Err(Error::PeriodicSpec);
    }
    let Some(bt_inv) = f_coeffs.last().and_then(Ring::unit_inverse) else {
        return Err(Error::InvalidPolynomial("need t >= 1 and b_t invertible".into()));
    };
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Vec2 {
        P1(usize, usize, usize),
        P2(usize, usize, usize),
    }
    let mut index = HashMap::new();
    let mut order = Vec::new();
    for (mu, &(r, s)) in spec.iter().enumerate() {
        for nu in 0..t {
            for p in 0..=r {
                index.insert(Vec2::P1(mu, nu, p), order.len());
                order.push(Vec2::P1(mu, nu, p));
            }
            for p in 1..s {
                index.insert(Vec2::P2(mu, nu, p), order.len());
                order.push(Vec2::P2(mu, nu, p));
            }
        }
    }
    let dim = order.len();
    let top1 = |mu: usize, nu: usize| index[&Vec2::P1(mu, nu, spec[mu].0)];
    // v_{μν} π2^{s_μ} in terms of basis vectors
    let top2 = |mu: usize, nu: usize| -> Row<R> {
        if mu + 1 < q {
            vec![(top1(mu + 1, nu), R::one())]
        } else if nu + 1 < t {
            vec![(top1(0, nu + 1), R::one())]
        } else {
            let mut row = vec![(top1(0, 0), bt_inv.clone())];
            for (j, b) in f_coeffs[..t - 1].iter().enumerate() {
                row.push((top1(0, j + 1), b.mul(&bt_inv).neg()));
            }
            row
        }
    };
    let pi2_power = |mu: usize, nu: usize, p: usize| -> Row<R> {
        if p < spec[mu].1 {
            vec![(index[&Vec2::P2(mu, nu, p)], R::one())]
        } else {
            top2(mu, nu)
        }
    };
    let mut img1 = vec![Vec::new(); dim];
    let mut img2 = vec![Vec::new(); dim];
    for (row, v) in order.iter().enumerate() {
        match *v {
            Vec2::P1(mu, nu, p) => {
                if p < spec[mu].0 {
                    img1[row].push((index[&Vec2::P1(mu, nu, p + 1)], R::one()));
                }
                if p == 0 {
                    img2[row] = pi2_power(mu, nu, 1);
                }
            }
            Vec2::P2(mu, nu, p) => img2[row] = pi2_power(mu, nu, p + 1),
        }
    }
    PairOperators::new(fill(dim, &img1), fill(dim, &img2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relations::{assignment, check_relation_set, RelationSetId};
    use crate::arith::Rational;

    type Q = RingMatrix<Rational>;

    #[test]
    fn type_i_single_pair() {
        let p = type_i_pair::<Rational>(&[(1, 1)]).unwrap();
        assert_eq!(p.dim(), 3);
        // basis v1, v1π1, v1π2
        assert_eq!(p.p1(), &Q::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(p.p2(), &Q::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn type_i_degenerate_and_invalid() {
        assert!(matches!(type_i_pair::<Rational>(&[(1, 0)]), Err(Error::InvalidSpec(_))));
        assert!(matches!(type_i_pair::<Rational>(&[(1, 1), (0, 1)]), Err(Error::InvalidSpec(_))));
        assert!(matches!(type_i_pair::<Rational>(&[(1, 0), (1, 1)]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn type_i_two_pairs_glue() {
        let p = type_i_pair::<Rational>(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(p.dim(), 5);
        // basis v1, v1π1, v2, v2π1, v2π2; v1π2 is v2π1
        assert_eq!(p.p2().get(0, 3), &Rational::from_int(1));
        assert_eq!(p.is_nilpotent(), (true, true));
    }

    #[test]
    fn type_ii_smallest() {
        let p = type_ii_pair::<Rational>(&[(1, 1)], &[Rational::from_int(1)]).unwrap();
        let e01 = Q::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(p.p1(), &e01);
        assert_eq!(p.p2(), &e01);
        assert!(matches!(
            type_ii_pair::<Rational>(&[(1, 1), (1, 1)], &[Rational::from_int(1)]),
            Err(Error::PeriodicSpec)
        ));
        assert!(matches!(
            type_ii_pair::<Rational>(&[(1, 1)], &[Rational::from_int(1), Rational::from_int(0)]),
            Err(Error::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn type_ii_larger_cases() {
        let f = [Rational::from_int(2), Rational::new(-1, 3)];
        let p = type_ii_pair::<Rational>(&[(2, 1), (1, 3)], &f).unwrap();
        assert_eq!(p.dim(), 2 * (3 + 4));
        assert_eq!(p.is_nilpotent(), (true, true));
        let g = [Rational::from_int(5)];
        assert!(type_ii_pair::<Rational>(&[(1, 2), (2, 1), (1, 1)], &g).is_ok());
    }

    #[test]
    fn triangle_from_three_dim_pair() {
        let mut p1 = Q::zeros(3, 3);
        p1.set(0, 2, Rational::from_int(1));
        let mut p2 = Q::zeros(3, 3);
        p2.set(1, 2, Rational::from_int(1));
        let pair = PairOperators::new(p1.clone(), p2.clone()).unwrap();
        let (x, y) = pair_to_triangle_rep(&pair).unwrap();
        assert_eq!(y, p1);
        assert_eq!(x, p2.sub(&p1).unwrap().add(&Q::identity(3)).unwrap());
        let a = assignment([("x", x.clone()), ("y", y.clone())]);
        assert!(check_relation_set(&a, RelationSetId::Triangle).unwrap().is_empty());
        let rep = triangle_block_rep(&x, &y).unwrap();
        assert!(rep.braid_algebra_violations().is_empty());
    }

    #[test]
    fn non_nilpotent_pair_rejected() {
        let p1 = Q::from_ints(&[&[1, 0], &[0, 0]]);
        let p2 = Q::from_ints(&[&[0, 0], &[0, 1]]);
        let pair = PairOperators::new(p1, p2).unwrap();
        assert_eq!(pair_to_triangle_rep(&pair), Err(Error::NotNilpotent));
    }
}
