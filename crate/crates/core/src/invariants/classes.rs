//! Invariants read off the conjugacy classes of component products.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gbraid::{component_products, gbraid_from_braid, LabelRule, LabelScheme};
use super::report::{InvariantValue, LinkInvariant};
use crate::arith::{sample, LaurentPoly, Ring, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

fn component_powers<R: Ring>(w: &BraidWord, scheme: &LabelScheme<R>, t: i64) -> Result<Vec<RingMatrix<R>>> {
    let g = gbraid_from_braid(w, scheme)?;
    component_products(&g).iter().map(|p| p.pow_signed(t)).collect()
}

/// Characteristic polynomials (constant term first) of the `t`-th powers of the
/// component products, sorted. Meant for the `Inverse` rule.
pub fn charpoly_class_invariant<R: Ring>(w: &BraidWord, scheme: &LabelScheme<R>, t: i64) -> Result<Vec<Vec<R>>> {
    let mut polys = component_powers(w, scheme, t)?.iter().map(RingMatrix::char_poly).collect::<Result<Vec<_>>>()?;
    polys.sort_by_cached_key(|p| p.iter().map(R::to_string).collect::<Vec<_>>());
    Ok(polys)
}

/// `P_l = T^{t(l−m)·exp} · ∏_c [X^l] charpoly(P_c^t)` for `l = 0..m`. Meant for
/// `b_s = T·a_s⁻¹`.
pub fn charpoly_family_invariant(w: &BraidWord, scheme: &LabelScheme<LaurentPoly>, t: i64) -> Result<Vec<LaurentPoly>> {
    let m = scheme.dim()?;
    let polys = component_powers(w, scheme, t)?.iter().map(RingMatrix::char_poly).collect::<Result<Vec<_>>>()?;
    let exp = w.exponent_sum();
    Ok((0..m)
        .map(|l| {
            let shift = t * (l as i64 - m as i64) * exp;
            polys.iter().fold(LaurentPoly::t_pow(shift), |acc, p| Ring::mul(&acc, &p[l]))
        })
        .collect())
}

/// Scalars with `Tr(u x) = λ1·Tr(x)` and `Tr(u⁻¹ x) = λ2·Tr(x)`, and the chosen
/// `V` with `V² = λ2/λ1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCalibration<R: Ring> {
    pub lambda1: R,
    pub lambda2: R,
    pub v: R,
}

/// Finds `λ1, λ2` from random samples `x` and checks them on every sample.
/// `negative_root` picks `−√(λ2/λ1)`.
pub fn calibrate_trace<R: Ring>(
    u: &RingMatrix<R>,
    samples: usize,
    seed: u64,
    negative_root: bool,
) -> Result<TraceCalibration<R>> {
    let m = u.rows();
    let u_inv = u.inverse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<RingMatrix<R>> = (0..samples.max(1)).map(|_| sample::invertible(&mut rng, m, 6)).collect();
    let ratio = |op: &RingMatrix<R>, name: &str| -> Result<R> {
        let base = xs
            .iter()
            .find(|x| !x.trace().is_zero())
            .ok_or_else(|| Error::TraceConditionFailed("every sample has zero trace".into()))?;
        let lambda = op
            .mul(base)?
            .trace()
            .div_exact(&base.trace())
            .ok_or_else(|| Error::TraceConditionFailed(format!("Tr({name} x) / Tr(x) is not in the ring")))?;
        for x in &xs {
            if op.mul(x)?.trace() != lambda.mul(&x.trace()) {
                return Err(Error::TraceConditionFailed(format!("Tr({name} x) ≠ {lambda}·Tr(x) for x = {x}")));
            }
        }
        Ok(lambda)
    };
    let lambda1 = ratio(u, "u")?;
    let lambda2 = ratio(&u_inv, "u⁻¹")?;
    if lambda1.mul(&lambda2).is_zero() {
        return Err(Error::TraceConditionFailed("λ1·λ2 = 0".into()));
    }
    let q = lambda2
        .div_exact(&lambda1)
        .ok_or_else(|| Error::TraceConditionFailed(format!("{lambda2} / {lambda1} is not in the ring")))?;
    let root = q.sqrt_exact().ok_or_else(|| Error::NoExactRoot(q.to_string()))?;
    let v = if negative_root { root.neg() } else { root };
    Ok(TraceCalibration { lambda1, lambda2, v })
}

fn inverse_of<R: Ring>(x: &R) -> Result<R> {
    x.unit_inverse().ok_or_else(|| Error::NotUnit(x.to_string()))
}

/// `k_n·V^{exp}·∏ Tr(γ_c)` with `k_n = (V·λ1)^{−(n−1)}`.
pub fn group_trace_invariant<R: Ring>(
    w: &BraidWord,
    scheme: &LabelScheme<R>,
    calibration: &TraceCalibration<R>,
) -> Result<R> {
    let g = gbraid_from_braid(w, scheme)?;
    let traces = component_products(&g).iter().fold(R::one(), |acc, p| acc.mul(&p.trace()));
    let step = calibration.v.mul(&calibration.lambda1);
    let k_n = inverse_of(&step)?.pow(w.strands() as u32 - 1);
    let v_exp = calibration.v.pow_signed(w.exponent_sum()).ok_or_else(|| Error::NotUnit(calibration.v.to_string()))?;
    Ok(k_n.mul(&v_exp).mul(&traces))
}

/// Builders bundling a scheme with its parameters, for the harness and the CLI.
#[derive(Clone, Debug)]
pub struct CharpolyClass<R: Ring> {
    pub scheme: LabelScheme<R>,
    pub power: i64,
}

impl<R: Ring> LinkInvariant for CharpolyClass<R> {
    fn id(&self) -> &str {
        "charpoly-class"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        Ok(InvariantValue::multiset(&charpoly_class_invariant(w, &self.scheme, self.power)?))
    }
}

#[derive(Clone, Debug)]
pub struct CharpolyFamily {
    pub scheme: LabelScheme<LaurentPoly>,
    pub power: i64,
}

impl LinkInvariant for CharpolyFamily {
    fn id(&self) -> &str {
        "charpoly-family"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        Ok(InvariantValue::sequence(&charpoly_family_invariant(w, &self.scheme, self.power)?))
    }
}

#[derive(Clone, Debug)]
pub struct GroupTrace<R: Ring> {
    pub scheme: LabelScheme<R>,
    pub calibration: TraceCalibration<R>,
}

impl<R: Ring> GroupTrace<R> {
    /// Calibrates against the `u` of a conjugated-u scheme.
    pub fn new(scheme: LabelScheme<R>, samples: usize, seed: u64, negative_root: bool) -> Result<Self> {
        let u = match &scheme.rule {
            LabelRule::ConjugatedU(u) | LabelRule::ConjugatedUVerbatim(u) => u.clone(),
            _ => return Err(Error::InvalidSpec("group trace needs a conjugated-u scheme".into())),
        };
        let calibration = calibrate_trace(&u, samples, seed, negative_root)?;
        Ok(GroupTrace { scheme, calibration })
    }

    pub fn parameters(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("lambda1".to_string(), self.calibration.lambda1.to_string()),
            ("lambda2".to_string(), self.calibration.lambda2.to_string()),
            ("V".to_string(), self.calibration.v.to_string()),
        ])
    }
}

impl<R: Ring> LinkInvariant for GroupTrace<R> {
    fn id(&self) -> &str {
        "group-trace"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        Ok(InvariantValue::scalar(&group_trace_invariant(w, &self.scheme, &self.calibration)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::invariants::gbraid::SequenceSource;
    use crate::invariants::report::markov_invariance_suite;

    fn inverse_scheme(seed: u64) -> LabelScheme<Rational> {
        LabelScheme::new(SequenceSource::Random { m: 2, seed, bound: 5 }, LabelRule::Inverse)
    }

    fn t_inverse_scheme(seed: u64) -> LabelScheme<LaurentPoly> {
        LabelScheme::new(SequenceSource::Random { m: 2, seed, bound: 5 }, LabelRule::ScaledInverse(LaurentPoly::t()))
    }

    fn w(strands: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    #[test]
    fn unknot_class_is_unipotent() {
        let one = vec![Rational::one(), Rational::from_int(-2), Rational::one()];
        for word in [w(2, &[1]), BraidWord::empty(1), w(3, &[1, -2])] {
            assert_eq!(charpoly_class_invariant(&word, &inverse_scheme(3), 1).unwrap(), vec![one.clone()]);
        }
    }

    #[test]
    fn class_invariant_only_sees_the_permutation() {
        // t_i ↦ t̃_i with b = a⁻¹ squares to the identity
        let scheme = LabelScheme::new(
            SequenceSource::Constant(RingMatrix::<Rational>::from_ints(&[&[2, 1], &[1, 1]])),
            LabelRule::Inverse,
        );
        let trefoil = w(2, &[1, 1, 1]);
        let one_crossing = w(2, &[1]);
        assert_eq!(
            charpoly_class_invariant(&trefoil, &scheme, 2).unwrap(),
            charpoly_class_invariant(&one_crossing, &scheme, 2).unwrap()
        );
    }

    #[test]
    fn family_on_empty_braid() {
        let p = charpoly_family_invariant(&BraidWord::empty(1), &t_inverse_scheme(1), 1).unwrap();
        assert_eq!(p, vec![LaurentPoly::one(), LaurentPoly::from_int(-2)]);
    }

    #[test]
    fn family_zeroth_power_counts_components() {
        let p = charpoly_family_invariant(&w(2, &[1, 1]), &t_inverse_scheme(2), 0).unwrap();
        // two components, each contributing (X−1)²
        assert_eq!(p, vec![LaurentPoly::one(), LaurentPoly::from_int(4)]);
    }

    #[test]
    fn two_strand_products_are_powers_of_t() {
        // a_1 and b_1 alternate along the single component, so its product is T^k·I
        let scheme = t_inverse_scheme(5);
        let g = gbraid_from_braid(&w(2, &[1, 1, 1]), &scheme).unwrap();
        assert_eq!(component_products(&g), vec![RingMatrix::scalar(2, LaurentPoly::t_pow(3))]);
        assert_eq!(
            charpoly_family_invariant(&w(2, &[1, 1, 1]), &scheme, 1).unwrap(),
            charpoly_family_invariant(&w(2, &[1]), &scheme, 1).unwrap()
        );
    }

    #[test]
    fn invariants_survive_markov_moves() {
        let word = w(3, &[1, -2, 1, 1, 2]);
        let class = CharpolyClass { scheme: inverse_scheme(4), power: 2 };
        assert!(markov_invariance_suite(&class, &word, 8, 1).unwrap().passed());
        let family = CharpolyFamily { scheme: t_inverse_scheme(4), power: 1 };
        assert!(markov_invariance_suite(&family, &word, 8, 2).unwrap().passed());
    }

    #[test]
    fn scalar_u_calibration() {
        let u = RingMatrix::scalar(2, Rational::from_int(3));
        let c = calibrate_trace(&u, 4, 0, false).unwrap();
        assert_eq!(c.lambda1, Rational::from_int(3));
        assert_eq!(c.lambda2, Rational::new(1, 3));
        assert_eq!(c.v, Rational::new(1, 3));
        assert_eq!(calibrate_trace(&u, 4, 0, true).unwrap().v, Rational::new(-1, 3));
    }

    #[test]
    fn non_scalar_u_fails_calibration() {
        let u = RingMatrix::<Rational>::from_ints(&[&[1, 1], &[0, 2]]);
        assert!(matches!(calibrate_trace(&u, 6, 0, false), Err(Error::TraceConditionFailed(_))));
    }

    #[test]
    fn group_trace_unknots_agree() {
        let scheme = LabelScheme::new(
            SequenceSource::Random { m: 2, seed: 7, bound: 5 },
            LabelRule::ConjugatedU(RingMatrix::scalar(2, Rational::from_int(3))),
        );
        let inv = GroupTrace::new(scheme, 4, 1, false).unwrap();
        let a = inv.evaluate(&w(2, &[1])).unwrap();
        assert_eq!(a, inv.evaluate(&BraidWord::empty(1)).unwrap());
        assert_eq!(a, inv.evaluate(&w(3, &[1, -2])).unwrap());
        assert!(markov_invariance_suite(&inv, &w(3, &[1, 1, -2, 1]), 8, 3).unwrap().passed());
    }

    #[test]
    fn identity_u_reduces_to_plain_traces() {
        let a = RingMatrix::<Rational>::from_ints(&[&[2, 1], &[1, 1]]);
        let scheme = LabelScheme::new(SequenceSource::Constant(a), LabelRule::ConjugatedU(RingMatrix::identity(2)));
        let c = calibrate_trace(&RingMatrix::identity(2), 3, 0, false).unwrap();
        assert_eq!(c.v, Rational::one());
        let word = w(3, &[1, 2, -1]);
        let g = gbraid_from_braid(&word, &scheme).unwrap();
        let expected = component_products(&g).iter().fold(Rational::one(), |acc, p| acc.mul(&p.trace()));
        assert_eq!(group_trace_invariant(&word, &scheme, &c).unwrap(), expected);
    }

    #[test]
    fn verbatim_form_breaks_stabilization() {
        let u = RingMatrix::scalar(2, Rational::from_int(3));
        let scheme = LabelScheme::new(
            SequenceSource::Constant(RingMatrix::from_ints(&[&[2, 1], &[1, 1]])),
            LabelRule::ConjugatedUVerbatim(u),
        );
        let inv = GroupTrace::new(scheme, 4, 1, false).unwrap();
        let base = inv.evaluate(&w(2, &[1, 1, 1])).unwrap();
        let stabilized = inv.evaluate(&w(3, &[1, 1, 1, 2])).unwrap();
        assert_ne!(base, stabilized);
    }
}
