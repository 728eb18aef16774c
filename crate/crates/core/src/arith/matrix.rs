use std::fmt;
use std::ops;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact commutative ring.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RingMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures; panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| R::from_int(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, s: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn diag(entries: Vec<R>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|c| c.to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// `Some(s)` if the matrix equals `s·I`.
    pub fn as_scalar(&self) -> Option<R> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(R::zero());
        }
        let s = self.get(0, 0).clone();
        (*self == Self::scalar(self.rows, s.clone())).then_some(s)
    }

    fn check_same_shape(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "add")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "sub")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map(|x| x.scale(q))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, p) = (self.rows, rhs.cols);
        let mut out = Self::zeros(n, p);
        for i in 0..n {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * p..(k + 1) * p];
                for (j, b) in row.iter().enumerate() {
                    out.data[i * p + j].add_mul(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        self.require_square("pow")?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Signed power; negative exponents invert first.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        base.pow(e.unsigned_abs() as u32)
    }

    /// Kronecker product; entry ((i1, i2), (j1, j2)) sits at row `i1*rhs.rows + i2`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        Self::from_fn(r, c, |i, j| {
            let a = self.get(i / rhs.rows, j / rhs.cols);
            if a.is_zero() {
                R::zero()
            } else {
                a.mul(rhs.get(i % rhs.rows, j % rhs.cols))
            }
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Assemble `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let k = a.rows;
        for m in [a, b, c, d] {
            if m.rows != k || m.cols != k {
                return Err(Error::DimensionMismatch("blocks must share one square size".into()));
            }
        }
        let mut out = Self::zeros(2 * k, 2 * k);
        out.set_submatrix(0, 0, a);
        out.set_submatrix(0, k, b);
        out.set_submatrix(k, 0, c);
        out.set_submatrix(k, k, d);
        Ok(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<R> {
        self.require_square("det")?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.data.clone();
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return Ok(R::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i * n + j].mul(&pivot).sub(&m[i * n + k].mul(&m[k * n + j]));
                    m[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact over an integral domain");
                }
                m[i * n + k] = R::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    /// Coefficients of det(X·I − self), constant term first, via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<Vec<R>> {
        Ok(self.faddeev_leverrier()?.0)
    }

    /// Returns the char poly coefficients and the last auxiliary matrix `M_n`,
    /// for which `self · M_n = -c_0 · I`.
    fn faddeev_leverrier(&self) -> Result<(Vec<R>, Self)> {
        self.require_square("char_poly")?;
        let n = self.rows;
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = R::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m)?;
            for i in 0..n {
                let d = next.get(i, i).add(&coeffs[n - k + 1]);
                next.set(i, i, d);
            }
            let am = self.mul(&next)?;
            let q = Rational::new(-1, k as i64);
            coeffs[n - k] = am.trace().scale(&q);
            m = next;
        }
        Ok((coeffs, m))
    }

    /// Exact inverse; fails unless the determinant is a unit of the ring.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        if R::IS_FIELD {
            self.gauss_jordan_inverse()
        } else {
            self.adjugate_inverse()
        }
    }

    fn gauss_jordan_inverse(&self) -> Result<Self> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Err(Error::NonUnitDeterminant("0".into()));
            };
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let piv = a.get(col, col).unit_inverse().expect("nonzero field element");
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j].mul(&piv);
                inv.data[col * n + j] = inv.data[col * n + j].mul(&piv);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.data[r * n + j].sub(&f.mul(&a.data[col * n + j]));
                    a.data[r * n + j] = x;
                    let y = inv.data[r * n + j].sub(&f.mul(&inv.data[col * n + j]));
                    inv.data[r * n + j] = y;
                }
            }
        }
        Ok(inv)
    }

    fn adjugate_inverse(&self) -> Result<Self> {
        let n = self.rows;
        if n == 0 {
            return Ok(Self::identity(0));
        }
        let (coeffs, m) = self.faddeev_leverrier()?;
        // A · M_n = -c_0 I, so A^{-1} = M_n / (-c_0)
        let c0 = coeffs[0].neg();
        let Some(c0_inv) = c0.unit_inverse() else {
            let det = if n.is_multiple_of(2) { coeffs[0].clone() } else { coeffs[0].neg() };
            return Err(Error::NonUnitDeterminant(det.to_string()));
        };
        Ok(m.scale(&c0_inv))
    }

    /// Evaluate a polynomial (constant term first) at this matrix.
    pub fn eval_poly(&self, coeffs: &[R]) -> Result<Self> {
        self.require_square("eval_poly")?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?.add(&Self::scalar(n, c.clone()))?;
        }
        Ok(acc)
    }
}

impl<R: Ring> ops::Mul for &RingMatrix<R> {
    type Output = RingMatrix<R>;

    /// Panics on a dimension mismatch; use [`RingMatrix::mul`] for a checked product.
    fn mul(self, rhs: &RingMatrix<R>) -> RingMatrix<R> {
        RingMatrix::mul(self, rhs).expect("matrix dimension mismatch")
    }
}

impl<R: Ring> ops::Add for &RingMatrix<R> {
    type Output = RingMatrix<R>;

    fn add(self, rhs: &RingMatrix<R>) -> RingMatrix<R> {
        RingMatrix::add(self, rhs).expect("matrix dimension mismatch")
    }
}

impl<R: Ring> ops::Sub for &RingMatrix<R> {
    type Output = RingMatrix<R>;

    fn sub(self, rhs: &RingMatrix<R>) -> RingMatrix<R> {
        RingMatrix::sub(self, rhs).expect("matrix dimension mismatch")
    }
}

impl<R: fmt::Display> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<R: fmt::Display> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

impl<R: Serialize> Serialize for RingMatrix<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for RingMatrix<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<R>>::deserialize(d)?;
        RingMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPoly;

    type Q = RingMatrix<Rational>;
    type L = RingMatrix<LaurentPoly>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn burau_block() -> L {
        let t = LaurentPoly::t();
        let one = LaurentPoly::one();
        L::from_rows(vec![vec![LaurentPoly::zero(), t.clone()], vec![one.clone(), one.sub(&t)]]).unwrap()
    }

    #[test]
    fn burau_square_is_linear_in_the_block() {
        let m = burau_block();
        let t = LaurentPoly::t();
        let lhs = m.mul(&m).unwrap();
        let rhs = m.scale(&LaurentPoly::one().sub(&t)).add(&L::scalar(2, t)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn burau_block_det_and_inverse() {
        let m = burau_block();
        let t = LaurentPoly::t();
        assert_eq!(m.det().unwrap(), t.neg());
        let tinv = LaurentPoly::t_pow(-1);
        let expected = L::from_rows(vec![
            vec![LaurentPoly::one().sub(&tinv), LaurentPoly::one()],
            vec![tinv, LaurentPoly::zero()],
        ])
        .unwrap();
        assert_eq!(m.inverse().unwrap(), expected);
    }

    #[test]
    fn laurent_diagonal_inverse() {
        let m = L::diag(vec![LaurentPoly::t(), LaurentPoly::t_pow(-1)]);
        assert_eq!(m.inverse().unwrap(), L::diag(vec![LaurentPoly::t_pow(-1), LaurentPoly::t()]));
    }

    #[test]
    fn non_monomial_det_is_rejected() {
        let one = LaurentPoly::one();
        let m = L::diag(vec![one.add(&LaurentPoly::t()), one]);
        assert!(matches!(m.inverse(), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn singular_rational_is_rejected() {
        let m = Q::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.inverse(), Err(Error::NonUnitDeterminant(_))));
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(Q::zeros(2, 2).char_poly().unwrap(), vec![q(0, 1), q(0, 1), q(1, 1)]);
        let d = Q::diag(vec![q(2, 1), q(3, 1)]);
        assert_eq!(d.char_poly().unwrap(), vec![q(6, 1), q(-5, 1), q(1, 1)]);
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Q::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(m.det().unwrap(), q(-1, 1));
    }

    #[test]
    fn kron_identities() {
        assert_eq!(Q::identity(2).kron(&Q::identity(3)), Q::identity(6));
        let a = Q::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Q::from_ints(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        assert_eq!(k.get(1, 2), &q(12, 1));
        assert_eq!(k.trace(), a.trace() * b.trace());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Q::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(a.det().is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = burau_block();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["0","1*T^1"],["1","1 + -1*T^1"]]"#);
        let back: L = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
