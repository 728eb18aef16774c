//! Property tests for the exact arithmetic, braid words, and representations.

use braidforge::algebra::{rep_from_word, series_constructor, SeriesParams};
use braidforge::arith::{LaurentPoly, Rational, Ring, RingMatrix};
use braidforge::braid::{random_markov_perturbation, BraidWord};
use braidforge::invariants::{gbraid_from_braid, LabelRule, LabelScheme, SequenceSource};
use braidforge::tensor::{tensor_from_matrix_pair, TensorRep};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, rational()), 0..4).prop_map(LaurentPoly::from_terms)
}

fn rational_matrix(n: usize) -> impl Strategy<Value = RingMatrix<Rational>> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| RingMatrix::from_vec(n, n, v).unwrap())
}

fn laurent_matrix(n: usize) -> impl Strategy<Value = RingMatrix<LaurentPoly>> {
    prop::collection::vec(laurent(), n * n).prop_map(move |v| RingMatrix::from_vec(n, n, v).unwrap())
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let top = n as i64 - 1;
        prop::collection::vec((1..=top, any::<bool>()), 0..=max_len).prop_map(move |ls| {
            BraidWord::new(n, ls.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
    }

    #[test]
    fn laurent_division_and_roots(a in laurent(), b in laurent()) {
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        }
        let sq = a.mul(&a);
        let root = sq.sqrt_exact().expect("a square has a root");
        prop_assert_eq!(root.mul(&root), sq);
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn determinant_is_multiplicative(a in rational_matrix(3), b in rational_matrix(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
    }

    #[test]
    fn laurent_determinant_is_multiplicative(a in laurent_matrix(2), b in laurent_matrix(2)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
    }

    #[test]
    fn cayley_hamilton(a in rational_matrix(4), b in laurent_matrix(2)) {
        prop_assert!(a.eval_poly(&a.char_poly().unwrap()).unwrap().is_zero());
        prop_assert!(b.eval_poly(&b.char_poly().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn charpoly_ends_in_det_and_trace(a in rational_matrix(3)) {
        let p = a.char_poly().unwrap();
        prop_assert_eq!(&p[0], &a.det().unwrap().neg());
        prop_assert_eq!(&p[2], &a.trace().neg());
    }

    #[test]
    fn inverse_is_two_sided(a in rational_matrix(3)) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn laurent_inverse_when_det_is_a_unit(a in rational_matrix(2), e in -3i64..=3) {
        // a scaled by a power of T has determinant c·T^{2e}
        prop_assume!(!a.det().unwrap().is_zero());
        let m = a.map(|x| LaurentPoly::monomial(x.clone(), e));
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn kron_mixed_product(a in rational_matrix(2), b in rational_matrix(2), c in rational_matrix(2), d in rational_matrix(2)) {
        let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_inverse_and_permutation(w in braid(5, 10), v in braid(5, 10)) {
        let ww = w.concat(&w.inverse()).unwrap();
        prop_assert!(ww.permutation().is_identity());
        prop_assert_eq!(ww.exponent_sum(), 0);
        if v.strands() == w.strands() {
            let wv = w.concat(&v).unwrap();
            prop_assert_eq!(wv.permutation(), w.permutation().then(&v.permutation()));
        }
    }

    #[test]
    fn perturbation_preserves_component_count(w in braid(4, 8), seed in any::<u64>()) {
        let p = random_markov_perturbation(&w, 5, seed);
        prop_assert_eq!(p.closure_components().len(), w.closure_components().len());
    }

    #[test]
    fn block_rep_is_a_homomorphism(w in braid(4, 6), v in braid(4, 6), q in rational()) {
        prop_assume!(!q.is_zero() && w.strands() == v.strands());
        let rep = series_constructor(SeriesParams::II(RingMatrix::scalar(1, q))).unwrap();
        let wv = rep_from_word(&rep, &w.concat(&v).unwrap(), None).unwrap();
        let prod = rep_from_word(&rep, &w, None).unwrap().mul(&rep_from_word(&rep, &v, None).unwrap()).unwrap();
        prop_assert_eq!(wv, prod);
        let id = rep_from_word(&rep, &w.concat(&w.inverse()).unwrap(), None).unwrap();
        prop_assert!(id.is_identity());
    }

    #[test]
    fn gbraid_is_a_homomorphism(w in braid(4, 6), v in braid(4, 6), seed in any::<u64>()) {
        prop_assume!(w.strands() == v.strands());
        let scheme = LabelScheme::new(
            SequenceSource::<Rational>::Random { m: 2, seed, bound: 4 },
            LabelRule::ScaledInverse(Rational::new(2, 3)),
        );
        let gw = gbraid_from_braid(&w, &scheme).unwrap();
        let gv = gbraid_from_braid(&v, &scheme).unwrap();
        prop_assert_eq!(gbraid_from_braid(&w.concat(&v).unwrap(), &scheme).unwrap(), gw.then(&gv).unwrap());
    }

    #[test]
    fn tensor_trace_is_a_class_function(w in braid(3, 5), g in braid(3, 3), a in rational_matrix(2)) {
        prop_assume!(w.strands() == g.strands() && !a.det().unwrap().is_zero());
        let a = a.map(|x| LaurentPoly::constant(x.clone()));
        let b = a.inverse().unwrap().scale(&LaurentPoly::t());
        let rep = TensorRep::single(tensor_from_matrix_pair(&a, &b).unwrap()).unwrap();
        let conj = g.concat(&w).unwrap().concat(&g.inverse()).unwrap();
        prop_assert_eq!(rep.trace(&w).unwrap(), rep.trace(&conj).unwrap());
    }
}
