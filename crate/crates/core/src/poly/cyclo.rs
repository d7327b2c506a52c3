//! Cyclotomic polynomials and their removal.

use num_bigint::BigInt;
use num_traits::One;

use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `Φ_k = ∏_{d | k} (x^d - 1)^μ(k/d)`.
pub fn cyclotomic(k: usize) -> UPoly {
    assert!(k > 0);
    let xd1 = |d: usize| &UPoly::monomial(BigInt::one(), d) - &UPoly::one();
    let divs: Vec<usize> = (1..=k).filter(|d| k % d == 0).collect();
    let mut num = UPoly::one();
    for &d in &divs {
        if mobius(k / d) == 1 {
            num = &num * &xd1(d);
        }
    }
    for &d in &divs {
        if mobius(k / d) == -1 {
            num = num.div_exact(&xd1(d)).expect("cyclotomic identity");
        }
    }
    num
}

fn mobius(mut k: usize) -> i32 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if k > 1 {
        r = -r;
    }
    r
}

fn euler_phi(mut k: usize) -> usize {
    let mut r = k;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if k > 1 {
        r -= r / k;
    }
    r
}

/// Divides out every cyclotomic factor, with multiplicity. The low power of `x` is
/// dropped as well, so the result has a nonzero constant term.
pub fn remove_cyclotomic_factors(p: &UPoly) -> Result<UPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut q, _) = p.strip_x();
    let d = q.deg();
    // φ(k) ≤ d forces k ≤ 2d² (φ(k) ≥ √(k/2)).
    let kmax = (2 * d * d).max(2);
    for k in (1..=kmax).filter(|&k| euler_phi(k) <= d) {
        let c = cyclotomic(k);
        while q.deg() >= c.deg() {
            match q.div_exact(&c) {
                Some(r) => q = r,
                None => break,
            }
        }
    }
    Ok(q.primitive())
}
