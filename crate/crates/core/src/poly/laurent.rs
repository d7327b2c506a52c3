//! Multivariate Laurent polynomials over ℤ.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::UPoly;
use crate::error::{Error, Result};

pub type Exp = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(BigInt::one(), vec![0; nvars])
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: BigInt, e: Exp) -> Self {
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { nvars, terms }
    }

    /// The `i`-th variable.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut p = Laurent::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    /// Univariate Laurent polynomial `sum c_i t^(i + shift)`.
    pub fn from_upoly(p: &UPoly, shift: i64) -> Self {
        Self::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as i64 + shift], c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// A unit is `±x^a`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(c.clone(), e.iter().map(|x| -x).collect()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiply by `x^a`.
    pub fn shift(&self, a: &[i64]) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(a).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn min_exponents(&self) -> Exp {
        let mut m = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &x) in m.iter_mut().zip(e) {
                *mi = (*mi).min(x);
            }
        }
        if self.is_zero() {
            m.fill(0);
        }
        m
    }

    pub fn max_exponents(&self) -> Exp {
        let mut m = vec![i64::MIN; self.nvars];
        for e in self.terms.keys() {
            for (mi, &x) in m.iter_mut().zip(e) {
                *mi = (*mi).max(x);
            }
        }
        if self.is_zero() {
            m.fill(0);
        }
        m
    }

    /// Shift so every variable's minimum exponent is 0.
    pub fn shifted_to_polynomial(&self) -> (Self, Exp) {
        let m = self.min_exponents();
        let neg: Exp = m.iter().map(|x| -x).collect();
        (self.shift(&neg), m)
    }

    /// Minimum exponents at 0 and the lexicographically first term positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (p, _) = self.shifted_to_polynomial();
        if p.terms.values().next().unwrap().is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Lexicographically largest exponent and its coefficient.
    pub fn leading_term(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Substitute `x_i -> u^(a_i)`; the result is `(poly, shift)` with
    /// `sum c_k u^(k + shift)`.
    pub fn specialize(&self, a: &[i64]) -> Result<(UPoly, i64)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k: i64 = e.iter().zip(a).map(|(x, y)| x * y).sum();
            *acc.entry(k).or_insert_with(BigInt::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let lo = acc.keys().next().copied().unwrap_or(0);
        let hi = acc.keys().next_back().copied().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in acc {
            v[(k - lo) as usize] = c;
        }
        Ok((UPoly::new(v), lo))
    }

    /// Length of the image of the Newton polytope under `a`.
    pub fn newton_norm(&self, a: &[i64]) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let vals = self.terms.keys().map(|e| e.iter().zip(a).map(|(x, y)| x * y).sum::<i64>());
        let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(l, h), v| (l.min(v), h.max(v)));
        Ok(hi - lo)
    }

    /// `sum_i c_i x_i ∂/∂x_i`, applied termwise.
    pub fn euler_derivative(&self, c: &[i64]) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, k)| {
                let w: i64 = e.iter().zip(c).map(|(x, y)| x * y).sum();
                (e.clone(), k * BigInt::from(w))
            }),
        )
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
                c.to_f64().unwrap_or(f64::NAN) * m
            })
            .sum()
    }

    /// Substitute `x_i -> x^(M_i)` for an integer matrix with `nvars` rows.
    pub fn monomial_change(&self, m: &[Vec<i64>]) -> Self {
        let k = m.first().map_or(0, |r| r.len());
        Self::from_terms(
            k,
            self.terms.iter().map(|(e, c)| {
                let ne: Exp = (0..k).map(|j| e.iter().zip(m).map(|(x, row)| x * row[j]).sum()).collect();
                (ne, c.clone())
            }),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(self.clone());
        }
        let (dp, dm) = d.shifted_to_polynomial();
        let (pp, pm) = self.shifted_to_polynomial();
        let q = poly_div_exact(&pp, &dp)?;
        let s: Exp = pm.iter().zip(&dm).map(|(a, b)| a - b).collect();
        Some(q.shift(&s))
    }

    /// Same as the polynomial up to a unit `±x^a`.
    pub fn associate(&self, other: &Laurent) -> bool {
        self.normalized() == other.normalized()
    }

    /// `p(x_1^-1, …, x_n^-1)`.
    pub fn reciprocal(&self) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Univariate view for `nvars == 1`: `(poly, shift)`.
    pub fn to_upoly(&self) -> (UPoly, i64) {
        assert_eq!(self.nvars, 1);
        if self.is_zero() {
            return (UPoly::zero(), 0);
        }
        self.specialize(&[1]).unwrap()
    }
}

/// Exact division of polynomials (nonnegative exponents) using lex leading terms.
fn poly_div_exact(p: &Laurent, d: &Laurent) -> Option<Laurent> {
    let nv = p.nvars;
    let (de, dc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
    let dmax = d.max_exponents();
    let pmax = p.max_exponents();
    if pmax.iter().zip(&dmax).any(|(a, b)| a < b) {
        return None;
    }
    let mut r = p.clone();
    let mut q = Laurent::zero(nv);
    while let Some((re, rc)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        let qe: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
        if qe.iter().any(|&x| x < 0) {
            return None;
        }
        let (qc, rem) = rc.div_rem(&dc);
        if !rem.is_zero() {
            return None;
        }
        for (e, c) in &d.terms {
            let ne: Exp = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
            r.add_term(ne, -(c * &qc));
        }
        q.add_term(qe, qc);
    }
    Some(q)
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut acc: HashMap<Exp, BigInt> = HashMap::with_capacity(self.len() * o.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Exp = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += x * y;
            }
        }
        Laurent {
            nvars: self.nvars.max(o.nvars),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for Laurent {
    /// `c1*x^(e11)*y^(e12) + …`, terms in lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
        let name = |i: usize| {
            if self.nvars == 1 {
                "t".to_string()
            } else if i < NAMES.len() {
                NAMES[i].to_string()
            } else {
                format!("x{i}")
            }
        };
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", c.abs())?;
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    write!(f, "*{}^({x})", name(i))?;
                }
            }
        }
        Ok(())
    }
}
