//! Real solutions of bivariate polynomial systems by repeated leading-coefficient
//! elimination, back-substitution, and interval verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::mgcd::poly_gcd;
use crate::poly::{Laurent, UPoly};
use crate::rootiso::{count_roots, eps_rat, isolate_real_roots, rat_to_f64, sturm_sequence, RootEnclosure};

/// Polynomial in `x, y` stored by powers of `y` with coefficients in `ℤ[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    c: Vec<UPoly>,
}

impl BiPoly {
    pub fn new(mut c: Vec<UPoly>) -> Self {
        while c.last().is_some_and(UPoly::is_zero) {
            c.pop();
        }
        BiPoly { c }
    }

    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    /// From `(i, j, c)` triples meaning `c·x^i·y^j`.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let dy = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let dx = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut m = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for &(i, j, c) in terms {
            m[j][i] += c;
        }
        Self::new(m.into_iter().map(UPoly::new).collect())
    }

    /// Two-variable Laurent polynomial shifted to nonnegative exponents.
    pub fn from_laurent(p: &Laurent) -> Self {
        assert_eq!(p.nvars(), 2);
        if p.is_zero() {
            return Self::zero();
        }
        let (q, _) = p.shifted_to_polynomial();
        let mx = q.max_exponents();
        let mut m = vec![vec![BigInt::zero(); mx[0] as usize + 1]; mx[1] as usize + 1];
        for (e, c) in q.terms() {
            m[e[1] as usize][e[0] as usize] += c;
        }
        Self::new(m.into_iter().map(UPoly::new).collect())
    }

    pub fn to_laurent(&self) -> Laurent {
        let mut out = Laurent::zero(2);
        for (j, cj) in self.c.iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(vec![i as i64, j as i64], c.clone());
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree in `y`; `0` for the zero polynomial.
    pub fn deg_y(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.c.iter().filter(|p| !p.is_zero()).map(UPoly::deg).max().unwrap_or(0)
    }

    pub fn coeff_y(&self, j: usize) -> UPoly {
        self.c.get(j).cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn lead_y(&self) -> UPoly {
        self.c.last().cloned().unwrap_or_else(UPoly::zero)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        let dx = self.deg_x();
        let mut m = vec![vec![BigInt::zero(); self.c.len()]; dx + 1];
        for (j, cj) in self.c.iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                m[i][j] = c.clone();
            }
        }
        Self::new(m.into_iter().map(UPoly::new).collect())
    }

    /// Gcd in `ℤ[x]` of the `y`-coefficients, integer content included.
    pub fn x_content(&self) -> UPoly {
        self.c.iter().fold(UPoly::zero(), |g, p| g.gcd(p))
    }

    /// Divides out the `x`-content; returns the primitive part and the content.
    pub fn primitive_part(&self) -> (Self, UPoly) {
        if self.is_zero() {
            return (self.clone(), UPoly::one());
        }
        let mut g = self.x_content();
        if g.lead().is_negative() {
            g = -&g;
        }
        let q = self.c.iter().map(|p| p.div_exact(&g).expect("content divides")).collect();
        (Self::new(q), g)
    }

    fn mul_upoly_shift(&self, p: &UPoly, k: usize) -> Self {
        let mut c = vec![UPoly::zero(); k];
        c.extend(self.c.iter().map(|q| q * p));
        Self::new(c)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|j| &self.coeff_y(j) - &o.coeff_y(j)).collect())
    }

    /// `p(x0, y)` scaled to integer coefficients.
    pub fn at_x(&self, x0: &BigRational) -> UPoly {
        let vals: Vec<BigRational> = self.c.iter().map(|p| p.eval_rat(x0)).collect();
        let den = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        UPoly::new(vals.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect())
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, p| acc * y + p.eval_f64(x))
    }

    /// Interval enclosure of the values on a box.
    pub fn eval_box(&self, x: &Interval, y: &Interval) -> Interval {
        let mut acc = Interval::point(BigRational::zero());
        for p in self.c.iter().rev() {
            let mut px = Interval::point(BigRational::zero());
            for c in p.coeffs().iter().rev() {
                px = px.mul(x).add(&Interval::point(BigRational::from_integer(c.clone())));
            }
            acc = acc.mul(y).add(&px);
        }
        acc
    }
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// One elimination step: with `deg_y a ≥ deg_y b`, returns `p·a - q·y^(da-db)·b`
/// where `p`, `q` are the leading `y`-coefficients of `b` and `a` divided by their
/// common factor. Every common zero of `a` and `b` is a zero of the result.
pub fn lead_eliminate(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    let (a, b) = if a.deg_y() >= b.deg_y() { (a, b) } else { (b, a) };
    if a.is_zero() || b.is_zero() {
        return Err(Error::Solver("elimination with a zero polynomial".into()));
    }
    if a.deg_y() == 0 && b.deg_y() == 0 {
        return Err(Error::Solver("both polynomials are free of y".into()));
    }
    let (la, lb) = (a.lead_y(), b.lead_y());
    let g = la.gcd(&lb);
    let p = lb.div_exact(&g).expect("gcd divides");
    let q = la.div_exact(&g).expect("gcd divides");
    Ok(a.mul_upoly_shift(&p, 0).sub(&b.mul_upoly_shift(&q, a.deg_y() - b.deg_y())))
}

/// Verified real solution with rational enclosures.
#[derive(Clone, Debug)]
pub struct Solution {
    pub x: Interval,
    pub y: Interval,
    /// Residual enclosures of the two input polynomials on the box.
    pub residuals: [Interval; 2],
}

impl Solution {
    pub fn approx(&self) -> (f64, f64) {
        let mid = |i: &Interval| rat_to_f64(&((&i.lo + &i.hi) / BigRational::from_integer(2.into())));
        (mid(&self.x), mid(&self.y))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveReport {
    pub solutions: Vec<Solution>,
    /// Nonconstant common factors split off along the way.
    pub common_factors: Vec<BiPoly>,
    /// Candidates whose box residuals excluded zero.
    pub rejected: usize,
}

/// Residual width required of every returned solution.
pub const RESIDUAL_WIDTH: f64 = 1e-8;

struct Chain {
    /// Polynomial free of `y` whose roots contain every solution's `x`.
    resolvent: UPoly,
    /// Chain polynomials of positive `y`-degree, lowest degree first, then the
    /// inputs. Back-substitution uses the first one whose leading coefficient
    /// survives at the `x` root.
    backs: Vec<BiPoly>,
}

fn eliminate_chain(a: &BiPoly, b: &BiPoly) -> std::result::Result<Chain, ()> {
    let (mut a, ca) = a.primitive_part();
    let (mut b, cb) = b.primitive_part();
    let mut resolvent = &ca * &cb;
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut backs: Vec<BiPoly> = [&a, &b].into_iter().filter(|p| p.deg_y() > 0).cloned().collect();
    let inputs = backs.len();
    if inputs == 0 {
        return Err(());
    }
    while b.deg_y() > 0 {
        let n = lead_eliminate(&a, &b).map_err(|_| ())?;
        if n.is_zero() {
            return Err(());
        }
        let (n, cn) = n.primitive_part();
        resolvent = &resolvent * &cn;
        a = b;
        b = n;
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg_y() > 0 {
            backs.push(b.clone());
        }
    }
    backs[inputs..].sort_by_key(BiPoly::deg_y);
    backs.rotate_left(inputs);
    let n = backs.len();
    backs[n - inputs..].sort_by_key(BiPoly::deg_y);
    // `b` is free of y: its single coefficient joins the resolvent.
    resolvent = &resolvent * &b.coeff_y(0);
    Ok(Chain { resolvent, backs })
}

fn widen(r: &RootEnclosure, pad: &BigRational) -> Interval {
    Interval { lo: &r.lo - pad, hi: &r.hi + pad }
}

fn bipoly_div(a: &BiPoly, g: &BiPoly) -> BiPoly {
    BiPoly::from_laurent_full(&a.to_laurent().div_exact(&g.to_laurent()).expect("gcd divides"))
}

impl BiPoly {
    /// Like [`BiPoly::from_laurent`] but keeps the exponents as they are; they must be
    /// nonnegative.
    fn from_laurent_full(p: &Laurent) -> Self {
        let mut m: Vec<Vec<BigInt>> = Vec::new();
        for (e, c) in p.terms() {
            let (i, j) = (e[0] as usize, e[1] as usize);
            if m.len() <= j {
                m.resize(j + 1, Vec::new());
            }
            if m[j].len() <= i {
                m[j].resize(i + 1, BigInt::zero());
            }
            m[j][i] += c;
        }
        Self::new(m.into_iter().map(UPoly::new).collect())
    }
}

/// Real solutions of `{a = 0, b = 0}` passing `keep`, verified on boxes. The
/// variable of smaller degree is eliminated. A common factor is split off and
/// the cofactor system is solved instead.
pub fn solve_bivariate(a: &BiPoly, b: &BiPoly, keep: &dyn Fn(f64, f64) -> bool) -> Result<SolveReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dy = a.deg_y().max(b.deg_y());
    let dx = a.deg_x().max(b.deg_x());
    if dx < dy {
        let keep_sw = |u: f64, v: f64| keep(v, u);
        let mut r = solve_oriented(&a.swap(), &b.swap(), &keep_sw)?;
        for s in r.solutions.iter_mut() {
            std::mem::swap(&mut s.x, &mut s.y);
        }
        r.common_factors = r.common_factors.iter().map(BiPoly::swap).collect();
        return Ok(r);
    }
    solve_oriented(a, b, keep)
}

fn solve_oriented(a: &BiPoly, b: &BiPoly, keep: &dyn Fn(f64, f64) -> bool) -> Result<SolveReport> {
    let chain = match eliminate_chain(a, b) {
        Ok(c) => c,
        Err(()) => {
            let g = poly_gcd(&a.to_laurent(), &b.to_laurent());
            let g = BiPoly::from_laurent_full(&g);
            if g.deg_x() == 0 && g.deg_y() == 0 {
                return Err(Error::Solver("elimination vanished without a common factor".into()));
            }
            let (a2, b2) = (bipoly_div(a, &g), bipoly_div(b, &g));
            let mut r = solve_oriented(&a2, &b2, keep)?;
            r.common_factors.push(g);
            return Ok(r);
        }
    };
    let mut report = SolveReport::default();
    if chain.resolvent.is_zero() {
        return Err(Error::Solver("zero resolvent".into()));
    }
    if chain.resolvent.deg() == 0 {
        return Ok(report);
    }
    let xs = isolate_real_roots(&chain.resolvent)?;
    for xr in xs {
        let back = choose_back(&chain.backs, &xr);
        verify_candidates(a, b, back, xr, keep, &mut report)?;
    }
    Ok(report)
}

/// Whether the root enclosed by `xr` is also a root of `p`.
fn vanishes_at(p: &UPoly, xr: &RootEnclosure) -> bool {
    let g = xr.poly.gcd(p);
    if g.deg() == 0 {
        return false;
    }
    if xr.is_exact() {
        return g.sign_at(&xr.lo) == 0;
    }
    count_roots(&sturm_sequence(&g.square_free()), &xr.lo, &xr.hi) > 0
}

fn choose_back<'a>(backs: &'a [BiPoly], xr: &RootEnclosure) -> &'a BiPoly {
    backs.iter().find(|p| !vanishes_at(&p.lead_y(), xr)).unwrap_or(&backs[backs.len() - 1])
}

fn verify_candidates(
    a: &BiPoly,
    b: &BiPoly,
    back: &BiPoly,
    mut xr: RootEnclosure,
    keep: &dyn Fn(f64, f64) -> bool,
    report: &mut SolveReport,
) -> Result<()> {
    let tol = eps_rat(RESIDUAL_WIDTH);
    let mut eps_exp = 30;
    // Candidates surviving the previous precision, as approximate y values.
    let mut pending: Option<Vec<f64>> = None;
    loop {
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(eps_exp));
        let pad = &eps * BigRational::from_integer(BigInt::from(10).pow(6));
        xr.refine(&eps);
        let xbox = widen(&xr, &BigRational::zero());
        let x0 = (&xr.lo + &xr.hi) / BigRational::from_integer(2.into());
        let g = back.at_x(&x0);
        let ys = if g.is_zero() || g.deg() == 0 { Vec::new() } else { isolate_real_roots(&g)? };
        let mut retry = Vec::new();
        for mut yr in ys {
            yr.refine(&eps_rat(1e-12));
            let (xf, yf) = (rat_to_f64(&x0), yr.midpoint());
            if !keep(xf, yf) {
                continue;
            }
            if let Some(p) = &pending {
                if !p.iter().any(|&q| (q - yf).abs() <= 1e-6 * (1.0 + q.abs())) {
                    continue;
                }
            }
            yr.refine(&eps);
            let ybox = widen(&yr, &pad);
            let ra = a.eval_box(&xbox, &ybox);
            let rb = b.eval_box(&xbox, &ybox);
            if !(ra.contains_zero() && rb.contains_zero()) {
                report.rejected += 1;
                continue;
            }
            if ra.width() <= tol && rb.width() <= tol {
                report.solutions.push(Solution { x: xbox.clone(), y: ybox, residuals: [ra, rb] });
            } else {
                retry.push(yf);
            }
        }
        if retry.is_empty() {
            return Ok(());
        }
        if eps_exp > 600 {
            return Err(Error::Solver("residual enclosure did not shrink".into()));
        }
        eps_exp *= 2;
        pending = Some(retry);
    }
}
