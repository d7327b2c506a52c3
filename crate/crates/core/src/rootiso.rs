//! Real root isolation for integer polynomials by Sturm sequences, with exact
//! rational enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::UPoly;

/// An interval `(lo, hi]` holding exactly one root of a square-free `poly`.
/// `lo == hi` means the root is exactly `lo`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure {
    pub poly: UPoly,
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Approx {
    pub lo: f64,
    pub hi: f64,
}

impl RootEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> f64 {
        rat_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    pub fn approx(&self) -> Approx {
        Approx { lo: rat_to_f64(&self.lo), hi: rat_to_f64(&self.hi) }
    }

    /// One bisection step; the width at least halves.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        match self.poly.sign_at(&self.hi) {
            0 => self.lo = self.hi.clone(),
            // A simple root strictly between mid and hi would flip the sign.
            sh if sh == sm => self.hi = mid,
            _ => self.lo = mid,
        }
    }

    pub fn refine(&mut self, eps: &BigRational) {
        while self.width() > *eps {
            self.bisect();
        }
    }

    /// Enclosure of `root^k` for a positive root.
    pub fn pow_bounds(&self, k: u32) -> (BigRational, BigRational) {
        assert!(!self.lo.is_negative(), "power bounds need a nonnegative enclosure");
        (num_traits::pow(self.lo.clone(), k as usize), num_traits::pow(self.hi.clone(), k as usize))
    }
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rational approximation of a positive tolerance.
pub fn eps_rat(eps: f64) -> BigRational {
    BigRational::from_float(eps).unwrap_or_else(|| BigRational::new(1.into(), BigInt::from(10).pow(9)))
}

/// Remainder of `a` by `b` up to a positive factor.
fn positive_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let r = a.prem(b);
    let k = a.deg() + 1 - b.deg();
    if b.lead().is_negative() && k % 2 == 1 {
        -&r
    } else {
        r
    }
}

fn positive_primitive(p: &UPoly) -> UPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.content();
    UPoly::new(p.coeffs().iter().map(|x| x / &c).collect())
}

pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), positive_primitive(&p.derivative())];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().deg() > 0 {
        let n = seq.len();
        let r = positive_rem(&seq[n - 2], &seq[n - 1]);
        seq.push(positive_primitive(&-&r));
    }
    if seq.last().unwrap().is_zero() {
        seq.pop();
    }
    seq
}

fn sign_changes(seq: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots(seq: &[UPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// All real roots lie in `(-bound, bound)`.
pub fn cauchy_bound(p: &UPoly) -> BigRational {
    let lead = p.lead().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::new(&lead + &m, lead) + BigRational::one()
}

/// Disjoint isolating intervals in increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free();
    if sf.deg() == 0 {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&sf);
    let b = cauchy_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&seq, &lo, &hi) {
            0 => {}
            1 => out.push(RootEnclosure { poly: sf.clone(), lo, hi }),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

pub fn largest_real_root(p: &UPoly, eps: f64) -> Result<RootEnclosure> {
    let mut r = isolate_real_roots(p)?
        .pop()
        .ok_or_else(|| Error::NoRealRoot(p.to_string()))?;
    r.refine(&eps_rat(eps));
    Ok(r)
}
