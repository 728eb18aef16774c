//! Single-variable Laurent polynomials over ℚ in the indeterminate `T`.
//!
//! The canonical text form lists terms by increasing exponent as `c*T^e`
//! (or just `c` for `e = 0`) joined by `" + "`, e.g. `-1/2*T^-1 + 3*T^2`.
//! The zero polynomial prints as `0`.

use std::fmt;
use std::ops;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // sorted by exponent, no zero coefficients
    terms: Vec<(i64, Rational)>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        if Ring::is_zero(&c) {
            LaurentPoly::default()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// The indeterminate `T`.
    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut terms: Vec<(i64, Rational)> = it.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        Self::normalize_sorted(terms)
    }

    fn normalize_sorted(terms: Vec<(i64, Rational)>) -> Self {
        let mut out: Vec<(i64, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !Ring::is_zero(c));
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The rational value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Exact square root, normalized so the highest-degree coefficient is
    /// positive.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(LaurentPoly::default());
        }
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        if lo % 2 != 0 || (hi - lo) % 2 != 0 {
            return None;
        }
        // dense coefficients of the polynomial part, highest degree first
        let deg = (hi - lo) as usize;
        let f: Vec<Rational> = (0..=deg).rev().map(|i| self.coeff(lo + i as i64)).collect();
        let half = deg / 2;
        let mut g: Vec<Rational> = Vec::with_capacity(half + 1);
        g.push(f[0].sqrt_exact()?);
        let two_g0 = g[0].add(&g[0]);
        for k in 1..=half {
            // coefficient k of g² equals f[k]
            let mut acc = f[k].clone();
            for i in 1..k {
                acc = acc.sub(&g[i].mul(&g[k - i]));
            }
            g.push(acc.div_exact(&two_g0)?);
        }
        let root = LaurentPoly::from_terms(g.into_iter().enumerate().map(|(i, c)| (lo / 2 + (half - i) as i64, c)));
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }

    /// Polynomial long division of `num` by `den`, both dense with index =
    /// degree. Returns the quotient when the remainder vanishes.
    fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Option<Vec<Rational>> {
        let dn = den.len() - 1;
        if num.len() < den.len() {
            return if num.iter().all(Ring::is_zero) { Some(vec![]) } else { None };
        }
        let mut rem = num.to_vec();
        let lead_inv = den[dn].recip()?;
        let mut quot = vec![Rational::zero(); num.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dn].mul(&lead_inv);
            if !Ring::is_zero(&c) {
                for (j, dj) in den.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dj));
                }
            }
            quot[k] = c;
        }
        if rem.iter().all(Ring::is_zero) {
            Some(quot)
        } else {
            None
        }
    }

    fn dense(&self) -> (i64, Vec<Rational>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }
}

impl Ring for LaurentPoly {
    const IS_FIELD: bool = false;
    const NAME: &'static str = "laurent";

    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }
    fn from_rational(q: Rational) -> Self {
        LaurentPoly::constant(q)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !Ring::is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return LaurentPoly::default();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return LaurentPoly { terms: self.terms.iter().map(|(e2, c2)| (e + e2, c2.mul(c))).collect() };
        }
        if self.terms.len() == 1 {
            return rhs.mul(self);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                terms.push((ea + eb, ca.mul(cb)));
            }
        }
        terms.sort_by_key(|t| t.0);
        LaurentPoly::normalize_sorted(terms)
    }

    fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    fn scale(&self, q: &Rational) -> Self {
        if Ring::is_zero(q) {
            return LaurentPoly::default();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.mul(q))).collect() }
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.terms.is_empty() {
            return None;
        }
        if self.terms.is_empty() {
            return Some(LaurentPoly::default());
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            let inv = c.recip()?;
            return Some(LaurentPoly { terms: self.terms.iter().map(|(e2, c2)| (e2 - e, c2.mul(&inv))).collect() });
        }
        let (lo_a, a) = self.dense();
        let (lo_b, b) = rhs.dense();
        let q = Self::poly_div_exact(&a, &b)?;
        Some(LaurentPoly::from_terms(q.into_iter().enumerate().map(|(i, c)| (lo_a - lo_b + i as i64, c))))
    }

    /// Units of ℚ[T, T⁻¹] are exactly the nonzero monomials.
    fn unit_inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(e, c)] => Some(LaurentPoly::monomial(c.recip()?, -e)),
            _ => None,
        }
    }

    fn sqrt_exact(&self) -> Option<Self> {
        LaurentPoly::sqrt_exact(self)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.terms.is_empty() || b.terms.is_empty() {
            return;
        }
        *self = Ring::add(self, &Ring::mul(a, b));
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*T^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts the canonical form plus the usual shorthands: `T`, `-T^2`,
/// `3*T`, `2 - T^-1`, with or without spaces.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        // split into signed terms; a sign directly after '^' belongs to the exponent
        let mut raw_terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('+') | Some('-')) {
                raw_terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        raw_terms.push(cur);

        let mut terms = Vec::new();
        for raw in raw_terms {
            let mut body = raw.as_str();
            let mut negate = false;
            loop {
                if let Some(rest) = body.strip_prefix('+') {
                    body = rest;
                } else if let Some(rest) = body.strip_prefix('-') {
                    negate = !negate;
                    body = rest;
                } else {
                    break;
                }
            }
            let bad = || Error::Parse(format!("invalid Laurent term `{raw}`"));
            let (coef_str, var_str) = match body.find('T') {
                Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
                None => (body, None),
            };
            let coef = match coef_str.strip_suffix('*').unwrap_or(coef_str) {
                "" if var_str.is_some() => Rational::one(),
                "" => return Err(bad()),
                c => c.parse::<Rational>().map_err(|_| bad())?,
            };
            let exp = match var_str {
                None => 0,
                Some("") => 1,
                Some(v) => v.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?,
            };
            terms.push((exp, if negate { coef.neg() } else { coef }));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(q: Rational) -> Self {
        LaurentPoly::constant(q)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        Ring::add(self, rhs)
    }
}

impl ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        Ring::sub(self, rhs)
    }
}

impl ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        Ring::mul(self, rhs)
    }
}

impl ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Ring::neg(self)
    }
}
