//! Four-index braid tensors and the representations they induce on `V^{⊗n}`.
//!
//! Upper indices are outputs and lower indices are inputs, so `T[i1][i2][j1][j2]`
//! is the entry in row `i1·m+i2`, column `j1·m+j2`. Tensors act on column vectors
//! of the n-fold product, whose basis index is `Σ i_k m^{n−k}` (first factor most
//! significant, as in `kron`).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Ring, RingMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BraidTensor<R: Ring> {
    m: usize,
    entries: Vec<R>,
}

impl<R: Ring> BraidTensor<R> {
    /// Builds a tensor from `f(i1, i2, j1, j2)`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(m.pow(4));
        for i1 in 0..m {
            for i2 in 0..m {
                for j1 in 0..m {
                    for j2 in 0..m {
                        entries.push(f(i1, i2, j1, j2));
                    }
                }
            }
        }
        BraidTensor { m, entries }
    }

    /// `δ^{i1}_{j1} δ^{i2}_{j2}`
    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, |i1, i2, j1, j2| delta(i1 == j1 && i2 == j2))
    }

    /// `δ^{i1}_{j2} δ^{i2}_{j1}`
    pub fn swap(m: usize) -> Self {
        Self::from_fn(m, |i1, i2, j1, j2| delta(i1 == j2 && i2 == j1))
    }

    /// Refolds an m²×m² matrix.
    pub fn from_matrix(mat: &RingMatrix<R>) -> Result<Self> {
        let n = mat.rows();
        let m = (n as f64).sqrt().round() as usize;
        if !mat.is_square() || m * m != n {
            return Err(Error::DimensionMismatch(format!("{}x{} is not an m²×m² matrix", mat.rows(), mat.cols())));
        }
        Ok(BraidTensor { m, entries: mat.entries().to_vec() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i1: usize, i2: usize, j1: usize, j2: usize) -> &R {
        let m = self.m;
        &self.entries[((i1 * m + i2) * m + j1) * m + j2]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn to_matrix(&self) -> RingMatrix<R> {
        let n = self.m * self.m;
        RingMatrix::from_vec(n, n, self.entries.clone()).expect("m⁴ entries")
    }

    /// Tensor of the inverse m²×m² matrix.
    pub fn inverse(&self) -> Result<Self> {
        Self::from_matrix(&self.to_matrix().inverse()?)
    }
}

fn delta<R: Ring>(b: bool) -> R {
    if b {
        R::one()
    } else {
        R::zero()
    }
}

pub fn tensor_to_matrix<R: Ring>(t: &BraidTensor<R>) -> RingMatrix<R> {
    t.to_matrix()
}

/// `T^{i1 i2}_{j1 j2} = b^{i1}_{j2} a^{i2}_{j1}`, i.e. the matrix `(b ⊗ a)·swap`.
pub fn tensor_from_matrix_pair<R: Ring>(a: &RingMatrix<R>, b: &RingMatrix<R>) -> Result<BraidTensor<R>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "expected two square matrices of one size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    for (name, x) in [("a", a), ("b", b)] {
        if x.inverse().is_err() {
            return Err(Error::SingularInput(format!("{name} = {x} is not invertible")));
        }
    }
    Ok(BraidTensor::from_fn(a.rows(), |i1, i2, j1, j2| b.get(i1, j2).mul(a.get(i2, j1))))
}

/// One failed instance of a braid-equation relation, indices `(i1, i2, i3, j1, j2, j3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationViolation {
    pub relation: String,
    pub indices: [usize; 6],
}

fn on_first_two<R: Ring>(t: &BraidTensor<R>) -> RingMatrix<R> {
    t.to_matrix().kron(&RingMatrix::identity(t.m))
}

fn on_last_two<R: Ring>(t: &BraidTensor<R>) -> RingMatrix<R> {
    RingMatrix::identity(t.m).kron(&t.to_matrix())
}

/// Checks `T12·U23·T12 = U23·T12·U23` entrywise (`U` defaults to `T`). With a
/// second tensor the relation for the other parity is checked too.
pub fn check_braid_equation<R: Ring>(t: &BraidTensor<R>, u: Option<&BraidTensor<R>>) -> Result<Vec<EquationViolation>> {
    if let Some(u) = u {
        if u.m != t.m {
            return Err(Error::DimensionMismatch(format!("tensors have m = {} and m = {}", t.m, u.m)));
        }
    }
    let m = t.m;
    let u_or_t = u.unwrap_or(t);
    let (label_xv, label_xvi) = match u {
        None => ("2.2(viii)", "2.2(viii)"),
        Some(_) => ("2.3(xv)", "2.3(xvi)"),
    };

    let t12 = on_first_two(t);
    let u23 = on_last_two(u_or_t);
    let lhs = &(&t12 * &u23) * &t12;
    let rhs = &(&u23 * &t12) * &u23;
    let mut out = Vec::new();
    let idx = |r: usize| [r / (m * m), (r / m) % m, r % m];
    for r in 0..m * m * m {
        for c in 0..m * m * m {
            if lhs.get(r, c) != rhs.get(r, c) {
                let (i, j) = (idx(r), idx(c));
                out.push(EquationViolation {
                    relation: label_xv.to_string(),
                    indices: [i[0], i[1], i[2], j[0], j[1], j[2]],
                });
            }
        }
    }

    if let Some(u) = u {
        // transcribed by direct summation, with its own index pattern
        let range = || 0..m;
        for i1 in range() {
            for i2 in range() {
                for i3 in range() {
                    for j1 in range() {
                        for j2 in range() {
                            for j3 in range() {
                                let mut lhs = R::zero();
                                let mut rhs = R::zero();
                                for k1 in range() {
                                    for k2 in range() {
                                        for k3 in range() {
                                            lhs.add_mul(
                                                &u.get(i2, i3, k1, k3).mul(t.get(k3, i1, k2, j1)),
                                                u.get(k1, k2, j2, j3),
                                            );
                                            rhs.add_mul(
                                                &t.get(i3, i1, k1, k3).mul(u.get(i2, k1, j2, k2)),
                                                t.get(k2, k3, j3, j1),
                                            );
                                        }
                                    }
                                }
                                if lhs != rhs {
                                    out.push(EquationViolation {
                                        relation: label_xvi.to_string(),
                                        indices: [i1, i2, i3, j1, j2, j3],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Scalars `(λ1, λ2)` with `Σ_j T^{i1 j}_{i2 j} = λ1·I` and the same for the
/// inverse tensor with `λ2`.
pub fn partial_trace_scalars<R: Ring>(t: &BraidTensor<R>) -> Result<(R, R)> {
    let inv = t.inverse()?;
    Ok((partial_trace_scalar(t)?, partial_trace_scalar(&inv)?))
}

fn partial_trace_scalar<R: Ring>(t: &BraidTensor<R>) -> Result<R> {
    let m = t.m;
    let gamma = RingMatrix::from_fn(m, m, |i1, i2| {
        let mut acc = R::zero();
        for j in 0..m {
            acc = acc.add(t.get(i1, j, i2, j));
        }
        acc
    });
    let s = gamma.as_scalar().ok_or(Error::NotScalar)?;
    if s.is_zero() {
        return Err(Error::ZeroScalar);
    }
    Ok(s)
}

/// A sequence of tensors `T(1), T(2), …` used cyclically: generator `t_i` acts
/// by `T((i−1) mod d)`. Inverses are computed once.
#[derive(Clone, Debug)]
pub struct TensorRep<R: Ring> {
    forward: Vec<BraidTensor<R>>,
    inverse: Vec<BraidTensor<R>>,
}

impl<R: Ring> TensorRep<R> {
    pub fn new(tensors: Vec<BraidTensor<R>>) -> Result<Self> {
        let Some(first) = tensors.first() else {
            return Err(Error::DimensionMismatch("empty tensor sequence".into()));
        };
        let m = first.m;
        if let Some(bad) = tensors.iter().find(|t| t.m != m) {
            return Err(Error::DimensionMismatch(format!("tensors have m = {m} and m = {}", bad.m)));
        }
        let inverse = tensors.iter().map(BraidTensor::inverse).collect::<Result<_>>()?;
        Ok(TensorRep { forward: tensors, inverse })
    }

    pub fn single(t: BraidTensor<R>) -> Result<Self> {
        Self::new(vec![t])
    }

    pub fn m(&self) -> usize {
        self.forward[0].m
    }

    pub fn tensors(&self) -> &[BraidTensor<R>] {
        &self.forward
    }

    fn tensor_for(&self, letter: i64) -> &BraidTensor<R> {
        let i = (letter.unsigned_abs() as usize - 1) % self.forward.len();
        if letter > 0 {
            &self.forward[i]
        } else {
            &self.inverse[i]
        }
    }

    /// Operator of `t_{|letter|}^{sign}` on the `strands`-fold product.
    pub fn generator(&self, strands: usize, letter: i64) -> Result<GeneratorOperator<'_, R>> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= strands {
            return Err(Error::IndexOutOfRange { index: letter, strands });
        }
        Ok(GeneratorOperator { tensor: self.tensor_for(letter), strands, index: i })
    }

    /// Trace of the word's operator, applying the letters to each basis vector
    /// in turn.
    pub fn trace(&self, w: &BraidWord) -> Result<R> {
        let n = w.strands();
        let ops = w.letters().iter().map(|&l| self.generator(n, l)).collect::<Result<Vec<_>>>()?;
        let dim = self.m().pow(n as u32);
        let mut total = R::zero();
        let mut scratch = vec![R::zero(); dim];
        for b in 0..dim {
            let mut v = vec![R::zero(); dim];
            v[b] = R::one();
            for op in &ops {
                op.apply_into(&v, &mut scratch);
                std::mem::swap(&mut v, &mut scratch);
            }
            total = total.add(&v[b]);
        }
        Ok(total)
    }

    /// The word's operator as a dense m^n×m^n matrix (column action, product in
    /// application order).
    pub fn dense_matrix(&self, w: &BraidWord) -> Result<RingMatrix<R>> {
        let n = w.strands();
        let mut acc = RingMatrix::identity(self.m().pow(n as u32));
        for &l in w.letters() {
            acc = self.generator(n, l)?.dense().mul(&acc)?;
        }
        Ok(acc)
    }
}

/// A tensor acting on factors `(index, index+1)` (1-based) and as the identity
/// elsewhere.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorOperator<'a, R: Ring> {
    tensor: &'a BraidTensor<R>,
    strands: usize,
    index: usize,
}

impl<R: Ring> GeneratorOperator<'_, R> {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dim(&self) -> usize {
        self.tensor.m.pow(self.strands as u32)
    }

    /// Strides of the two acted-on factors and of everything to their right.
    fn layout(&self) -> (usize, usize) {
        let m = self.tensor.m;
        let inner = m.pow((self.strands - self.index - 1) as u32);
        (inner * m * m, inner)
    }

    /// `out = op · v`, never materializing the full matrix.
    pub fn apply_into(&self, v: &[R], out: &mut [R]) {
        let m = self.tensor.m;
        let (block, inner) = self.layout();
        let dim = self.dim();
        for o in out.iter_mut() {
            *o = R::zero();
        }
        for outer in (0..dim).step_by(block) {
            for rest in 0..inner {
                let base = outer + rest;
                for j1 in 0..m {
                    for j2 in 0..m {
                        let x = &v[base + (j1 * m + j2) * inner];
                        if x.is_zero() {
                            continue;
                        }
                        for i1 in 0..m {
                            for i2 in 0..m {
                                out[base + (i1 * m + i2) * inner].add_mul(self.tensor.get(i1, i2, j1, j2), x);
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); v.len()];
        self.apply_into(v, &mut out);
        out
    }

    /// `I ⊗ T ⊗ I` as a dense matrix. Only sensible for small `strands`.
    pub fn dense(&self) -> RingMatrix<R> {
        let m = self.tensor.m;
        let left = RingMatrix::identity(m.pow((self.index - 1) as u32));
        let right = RingMatrix::identity(m.pow((self.strands - self.index - 1) as u32));
        left.kron(&self.tensor.to_matrix()).kron(&right)
    }
}

/// Operator of `t_index` on `strands` factors.
pub fn tensor_generator_operator<R: Ring>(
    rep: &TensorRep<R>,
    strands: usize,
    index: usize,
) -> Result<GeneratorOperator<'_, R>> {
    rep.generator(strands, index as i64)
}

/// `tr π(w)` for the representation of a single tensor.
pub fn tensor_rep_trace<R: Ring>(t: &BraidTensor<R>, w: &BraidWord) -> Result<R> {
    TensorRep::single(t.clone())?.trace(w)
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "R: Serialize", deserialize = "R: Deserialize<'de>"))]
struct RawTensor<R: Ring> {
    m: usize,
    entries: Vec<Vec<Vec<Vec<R>>>>,
    ring: String,
}

impl<R: Ring + Serialize> Serialize for BraidTensor<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.m;
        let entries = (0..m)
            .map(|i1| {
                (0..m)
                    .map(|i2| (0..m).map(|j1| (0..m).map(|j2| self.get(i1, i2, j1, j2).clone()).collect()).collect())
                    .collect()
            })
            .collect();
        RawTensor::<R> { m, entries, ring: R::NAME.to_string() }.serialize(s)
    }
}

impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for BraidTensor<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTensor::<R>::deserialize(d)?;
        if raw.ring != R::NAME {
            return Err(D::Error::custom(format!("expected ring \"{}\", got \"{}\"", R::NAME, raw.ring)));
        }
        let m = raw.m;
        let mut entries = Vec::with_capacity(m.pow(4));
        let shape_err = || D::Error::custom(format!("entries must have shape {m}x{m}x{m}x{m}"));
        if raw.entries.len() != m {
            return Err(shape_err());
        }
        for a in raw.entries {
            if a.len() != m {
                return Err(shape_err());
            }
            for b in a {
                if b.len() != m {
                    return Err(shape_err());
                }
                for c in b {
                    if c.len() != m {
                        return Err(shape_err());
                    }
                    entries.extend(c);
                }
            }
        }
        Ok(BraidTensor { m, entries })
    }
}
