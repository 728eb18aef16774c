//! Seeded random rationals and matrices, used to specialize indeterminates.

use rand::Rng;

use super::{Rational, Ring, RingMatrix};

/// A small random rational `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn rational<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(p, q)
}

pub fn nonzero_rational<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn matrix<R: Ring, G: Rng + ?Sized>(rng: &mut G, rows: usize, cols: usize, bound: i64) -> RingMatrix<R> {
    RingMatrix::from_fn(rows, cols, |_, _| R::from_rational(rational(rng, bound)))
}

/// Random invertible matrix with rational entries; singular draws are rejected.
pub fn invertible<R: Ring, G: Rng + ?Sized>(rng: &mut G, n: usize, bound: i64) -> RingMatrix<R> {
    loop {
        let m: RingMatrix<Rational> = matrix(rng, n, n, bound);
        if !m.det().expect("square").is_zero() {
            return m.map(|x| R::from_rational(x.clone()));
        }
    }
}
