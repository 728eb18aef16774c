//! Normalized traces of tensor representations.

use std::collections::BTreeMap;

use super::report::{InvariantValue, LinkInvariant};
use crate::arith::Ring;
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::tensor::{partial_trace_scalars, BraidTensor, TensorRep};

/// `I(w) = k_n·V^{exp w}·tr π(w)`, with `V² = α2/α1` and
/// `k_1 = 1, k_{j+1} = k_j·V⁻¹·α1(j)⁻¹`.
#[derive(Clone, Debug)]
pub struct TensorTrace<R: Ring> {
    rep: TensorRep<R>,
    alpha1: Vec<R>,
    alpha2: Vec<R>,
    v: R,
}

fn inverse_of<R: Ring>(x: &R) -> Result<R> {
    x.unit_inverse().ok_or_else(|| Error::NotUnit(x.to_string()))
}

impl<R: Ring> TensorTrace<R> {
    pub fn new(rep: TensorRep<R>) -> Result<Self> {
        let mut alpha1 = Vec::new();
        let mut alpha2 = Vec::new();
        for t in rep.tensors() {
            let (a1, a2) = partial_trace_scalars(t)?;
            alpha1.push(a1);
            alpha2.push(a2);
        }
        let ratio = |i: usize| -> Result<R> { Ok(alpha2[i].mul(&inverse_of(&alpha1[i])?)) };
        let q = ratio(0)?;
        for i in 1..alpha1.len() {
            if ratio(i)? != q {
                return Err(Error::InvalidSpec(format!("α2/α1 differs between tensors 1 and {}", i + 1)));
            }
        }
        let v = q.sqrt_exact().ok_or_else(|| Error::NoExactRoot(q.to_string()))?;
        Ok(TensorTrace { rep, alpha1, alpha2, v })
    }

    pub fn single(t: BraidTensor<R>) -> Result<Self> {
        Self::new(TensorRep::single(t)?)
    }

    pub fn rep(&self) -> &TensorRep<R> {
        &self.rep
    }

    pub fn v(&self) -> &R {
        &self.v
    }

    /// `k_n` from the recurrence, with `α1` taken cyclically along the sequence.
    pub fn k(&self, strands: usize) -> Result<R> {
        let mut k = R::one();
        for j in 1..strands {
            let a1 = &self.alpha1[(j - 1) % self.alpha1.len()];
            k = k.mul(&inverse_of(&self.v.mul(a1))?);
        }
        Ok(k)
    }

    /// `k_n·V^{exp}`
    pub fn prefactor(&self, w: &BraidWord) -> Result<R> {
        let v_exp = self.v.pow_signed(w.exponent_sum()).ok_or_else(|| Error::NotUnit(self.v.to_string()))?;
        Ok(self.k(w.strands())?.mul(&v_exp))
    }

    pub fn value(&self, w: &BraidWord) -> Result<R> {
        Ok(self.prefactor(w)?.mul(&self.rep.trace(w)?))
    }

    pub fn parameters(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("alpha1".to_string(), self.alpha1[0].to_string()),
            ("alpha2".to_string(), self.alpha2[0].to_string()),
            ("V".to_string(), self.v.to_string()),
            ("m".to_string(), self.rep.m().to_string()),
        ])
    }
}

impl<R: Ring> LinkInvariant for TensorTrace<R> {
    fn id(&self) -> &str {
        "tensor-trace"
    }
    fn evaluate(&self, w: &BraidWord) -> Result<InvariantValue> {
        Ok(InvariantValue::scalar(&self.value(w)?))
    }
}

/// One-shot form of [`TensorTrace::value`] for a single tensor.
pub fn tensor_trace_invariant<R: Ring>(t: &BraidTensor<R>, w: &BraidWord) -> Result<R> {
    TensorTrace::single(t.clone())?.value(w)
}
