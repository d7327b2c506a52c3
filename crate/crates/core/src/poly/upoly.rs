//! Dense univariate polynomials over ℤ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<BigInt>);

impl UPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    /// `self(x)·x^-k` when `x^k` divides, dropping the low zero coefficients.
    pub fn strip_x(&self) -> (Self, usize) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (UPoly(self.0[k.min(self.0.len())..].to_vec()), k)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1)·a mod b`.
    pub fn prem(&self, b: &UPoly) -> UPoly {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let db = b.deg();
        let lb = b.lead();
        let mut r = self.clone();
        if r.is_zero() || r.deg() < db {
            return r;
        }
        let mut steps = r.deg() - db + 1;
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let lr = r.lead();
            r = &r.scale(&lb) - &b.scale(&lr).shift(k);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lb, steps));
        }
        r
    }

    /// Exact quotient if `b` divides `self` over ℤ.
    pub fn div_exact(&self, b: &UPoly) -> Option<UPoly> {
        assert!(!b.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lead();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let (qq, rem) = c.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[k + i] -= &qq * bc;
            }
            q[k] = qq;
        }
        r.iter().all(|c| c.is_zero()).then(|| UPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient (integer content included).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.primitive().scale(&c)
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn square_free(&self) -> UPoly {
        if self.deg() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g.primitive()).expect("gcd divides").primitive()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut r = BigRational::zero();
        for c in self.0.iter().rev() {
            r = r * x + BigRational::from_integer(c.clone());
        }
        r
    }

    /// Sign of the value at a rational point, computed from the integer
    /// `q^d·p(a/q) = sum c_i a^i q^(d-i)`.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (a, q) = (x.numer(), x.denom());
        let mut it = self.0.iter().rev();
        let mut acc = it.next().unwrap().clone();
        let mut qpow = q.clone();
        for c in it {
            acc = acc * a + c * &qpow;
            qpow *= q;
        }
        sign_of(&acc)
    }

    /// `x^d p(1/x)`.
    pub fn reversed(&self) -> UPoly {
        let mut v = self.0.clone();
        v.reverse();
        UPoly::new(v)
    }

    /// `p(-x)`.
    pub fn negate_x(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`.
    pub fn inflate(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[i * k] = c.clone();
        }
        UPoly(v)
    }

    /// `p(a·x + b)`.
    pub fn compose_affine(&self, a: &BigInt, b: &BigInt) -> UPoly {
        let lin = UPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
