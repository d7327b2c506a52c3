//! Tetrahedron-count bounds as functions of the normalized dilatation `P`.

use serde::Serialize;

use crate::error::{Error, Result};

fn check_gt_one(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("normalized dilatation must exceed 1, got {p}")))
    }
}

/// `½P²`.
pub fn single_hook(p: f64) -> Result<f64> {
    check_gt_one(p)?;
    Ok(0.5 * p * p)
}

/// `¼P² + 1`.
pub fn double_hook(p: f64) -> Result<f64> {
    check_gt_one(p)?;
    Ok(0.25 * p * p + 1.0)
}

/// `(P³ - 1)/2 · (2 log P³ / log(2P⁻³ + 1) - 1)`.
pub fn agol_tsang(p: f64) -> Result<f64> {
    check_gt_one(p)?;
    let p3 = p.powi(3);
    Ok((p3 - 1.0) / 2.0 * (2.0 * p3.ln() / (2.0 / p3 + 1.0).ln() - 1.0))
}

/// Maximizes a unimodal function on `[lo, hi]` by golden-section search.
/// Returns `(argmax, max)`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

pub fn f1_integrand(x: f64, u: f64) -> f64 {
    0.5 * x * x - 0.5 * x * (u + 1.0 / u) - 1.5f64.powf(4.0 / 3.0) * u.powf(2.0 / 3.0) + 2.0
        - 0.5 / x
}

pub fn f2_integrand(x: f64, a: f64) -> f64 {
    let r = (a / (a + 1.0)).sqrt();
    0.5 * x * x - 0.5 * x * (r + 1.0 / r) - 0.5 * a - 1.0 / a + 2.0 - 0.5 / x
}

/// Maximizer and value of `f1(x, ·)` over `0 < u ≤ 1`.
pub fn f1_argmax(x: f64) -> Result<(f64, f64)> {
    check_gt_one(x)?;
    Ok(golden_max(|u| f1_integrand(x, u), 1e-9, 1.0, 1e-10))
}

/// Maximizer and value of `f2(x, ·)` over `a ≥ 1`. The maximizer is bracketed by
/// doubling until the integrand decreases.
pub fn f2_argmax(x: f64) -> Result<(f64, f64)> {
    check_gt_one(x)?;
    let mut hi = 2.0;
    while f2_integrand(x, hi) > f2_integrand(x, hi / 2.0) && hi < 1e12 {
        hi *= 2.0;
    }
    Ok(golden_max(|a| f2_integrand(x, a), 1.0, hi, 1e-10))
}

pub fn f1(x: f64) -> Result<f64> {
    f1_argmax(x).map(|r| r.1)
}

pub fn f2(x: f64) -> Result<f64> {
    f2_argmax(x).map(|r| r.1)
}

/// The seven components of the one-cusp bound and their maximum.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OneCuspBound {
    pub third: f64,
    pub half_minus_p: f64,
    pub cube_roots: f64,
    pub sqrt_term: f64,
    pub f1: f64,
    pub f2: f64,
    pub log3: f64,
    pub max: f64,
}

/// Valid for `4√2 ≤ P < 8`.
pub fn one_cusp(p: f64) -> Result<OneCuspBound> {
    if !(4.0 * 2f64.sqrt() - 1e-12..8.0).contains(&p) {
        return Err(Error::Domain(format!("one-cusp bound needs 4√2 ≤ P < 8, got {p}")));
    }
    let p2 = p * p;
    let third = p2 / 3.0 + 0.5;
    let half_minus_p = 0.5 * p2 - p;
    let cube_roots = 0.5 * (p2 - p.powf(4.0 / 3.0) - p.powf(2.0 / 3.0) + 3.0);
    let sqrt_term = 0.5 * p2 - (p2 + 4.0 * p).sqrt() + 2.0;
    let f1 = f1(p)?;
    let f2 = f2(p)?;
    let log3 = 8.0 * p.ln() / 3f64.ln();
    let max = [third, half_minus_p, cube_roots, sqrt_term, f1, f2, log3]
        .into_iter()
        .fold(f64::MIN, f64::max);
    Ok(OneCuspBound { third, half_minus_p, cube_roots, sqrt_term, f1, f2, log3, max })
}

/// All evaluators at once; components outside their domain are `None`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AllBounds {
    pub p: f64,
    pub single_hook: f64,
    pub double_hook: f64,
    pub agol_tsang: f64,
    pub f1: f64,
    pub f2: f64,
    pub one_cusp: Option<OneCuspBound>,
}

pub fn all_bounds(p: f64) -> Result<AllBounds> {
    Ok(AllBounds {
        p,
        single_hook: single_hook(p)?,
        double_hook: double_hook(p)?,
        agol_tsang: agol_tsang(p)?,
        f1: f1(p)?,
        f2: f2(p)?,
        one_cusp: one_cusp(p).ok(),
    })
}
