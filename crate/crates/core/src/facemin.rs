//! Fibered cones and dilatation pipelines.

use num_integer::Integer;
use serde::Serialize;

use crate::branched::DualGraph;
use crate::error::{Error, Result};
use crate::invariants::{Homology, Invariants};
use crate::poly::{remove_cyclotomic_factors, Laurent};
use num_rational::BigRational;

use crate::rootiso::{count_roots, eps_rat, largest_real_root, rat_to_f64, sturm_sequence, Approx, RootEnclosure};
use crate::sysolve::{solve_bivariate, BiPoly, Interval};
use crate::veer::VeeringTriangulation;

/// Every simple directed cycle of Γ, as lists of faces.
pub fn gamma_cycles(g: &DualGraph) -> Vec<Vec<usize>> {
    let n = g.n_vertices;
    let mut out = Vec::new();
    for s in 0..n {
        let mut on = vec![false; n];
        let mut path: Vec<usize> = Vec::new();
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        on[s] = true;
        while let Some(top) = stack.last_mut() {
            let (u, i) = *top;
            if i == 2 {
                on[u] = false;
                stack.pop();
                path.pop();
                continue;
            }
            top.1 += 1;
            let f = g.outs[u][i];
            let w = g.head[f];
            if w == s {
                let mut c = path.clone();
                c.push(f);
                out.push(c);
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(f);
                stack.push((w, 0));
            }
        }
    }
    out
}

/// Classes of every simple Γ-cycle and every branch cycle.
pub fn cycle_classes(v: &VeeringTriangulation, h: &Homology) -> Vec<Vec<i64>> {
    let g = DualGraph::new(v);
    let mut cs: Vec<Vec<i64>> = gamma_cycles(&g).iter().map(|c| h.cycle_class(c)).collect();
    cs.extend(g.branch_cycles().iter().map(|c| h.cycle_class(c)));
    cs.sort();
    cs.dedup();
    cs
}

fn primitive(a: [i64; 2]) -> [i64; 2] {
    let g = a[0].gcd(&a[1]);
    [a[0] / g, a[1] / g]
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// The cone dual to the Γ-cycle classes.
#[derive(Clone, Debug, Serialize)]
pub enum FiberedCone {
    /// `b1 = 1`: the generator `±1` pairing positively with every cycle.
    Ray(i64),
    Face(FiberedFace),
}

/// Two-dimensional fibered cone. The norm-one face is parametrized by
/// `a(t) = (1 - t) r1/‖r1‖ + t r2/‖r2‖`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberedFace {
    pub rays: [[i64; 2]; 2],
    pub norms: [i64; 2],
    /// Extreme cycle classes; `rays[0]` annihilates `extremes[0]`.
    pub extremes: [[i64; 2]; 2],
}

impl FiberedFace {
    pub fn point(&self, t: f64) -> [f64; 2] {
        let [r1, r2] = self.rays;
        let [n1, n2] = self.norms.map(|n| n as f64);
        [0, 1].map(|i| (1.0 - t) * r1[i] as f64 / n1 + t * r2[i] as f64 / n2)
    }

    /// Integral direction of `a'(t)`: `‖r1‖ r2 - ‖r2‖ r1`.
    pub fn direction(&self) -> [i64; 2] {
        let [r1, r2] = self.rays;
        let [n1, n2] = self.norms;
        [n1 * r2[0] - n2 * r1[0], n1 * r2[1] - n2 * r1[1]]
    }

    /// Primitive integral class through `a(1/2)`.
    pub fn mid_ray(&self) -> [i64; 2] {
        let [r1, r2] = self.rays;
        let [n1, n2] = self.norms;
        primitive([n2 * r1[0] + n1 * r2[0], n2 * r1[1] + n1 * r2[1]])
    }

    /// Norm of a class in the cone; the norm is linear there.
    pub fn norm_of(&self, a: [f64; 2]) -> f64 {
        let (al, be) = self.coords(a);
        al * self.norms[0] as f64 + be * self.norms[1] as f64
    }

    /// `a = α r1 + β r2`.
    pub fn coords(&self, a: [f64; 2]) -> (f64, f64) {
        let [r1, r2] = self.rays.map(|r| r.map(|x| x as f64));
        let det = r1[0] * r2[1] - r1[1] * r2[0];
        ((a[0] * r2[1] - a[1] * r2[0]) / det, (r1[0] * a[1] - r1[1] * a[0]) / det)
    }

    /// Face parameter of the ray through `a`.
    pub fn param_of(&self, a: [f64; 2]) -> f64 {
        let (al, be) = self.coords(a);
        let (w1, w2) = (al * self.norms[0] as f64, be * self.norms[1] as f64);
        w2 / (w1 + w2)
    }
}

pub fn fibered_cone(v: &VeeringTriangulation, inv: &Invariants) -> Result<FiberedCone> {
    let h = &inv.homology;
    let cs = cycle_classes(v, h);
    match h.b1 {
        1 => {
            let pos = cs.iter().all(|c| c[0] > 0);
            let neg = cs.iter().all(|c| c[0] < 0);
            match (pos, neg) {
                (true, _) => Ok(FiberedCone::Ray(1)),
                (_, true) => Ok(FiberedCone::Ray(-1)),
                _ => Err(Error::DegenerateCone("cycle classes of both signs".into())),
            }
        }
        2 => {
            if cs.iter().any(|c| c.iter().all(|x| *x == 0)) {
                return Err(Error::DegenerateCone("null-homologous cycle".into()));
            }
            let mut lo = cs[0].clone();
            let mut hi = cs[0].clone();
            for c in &cs {
                if cross(&lo, c) < 0 {
                    lo = c.clone();
                }
                if cross(&hi, c) > 0 {
                    hi = c.clone();
                }
            }
            let convex = cross(&lo, &hi) > 0
                && cs.iter().all(|c| cross(&lo, c) >= 0 && cross(c, &hi) >= 0);
            if !convex {
                return Err(Error::DegenerateCone("cycle classes do not span a proper cone".into()));
            }
            let mut r1 = primitive([lo[1], -lo[0]]);
            if dot(&r1, &hi) < 0 {
                r1 = [-r1[0], -r1[1]];
            }
            let mut r2 = primitive([hi[1], -hi[0]]);
            if dot(&r2, &lo) < 0 {
                r2 = [-r2[0], -r2[1]];
            }
            let norms = [inv.alexander.newton_norm(&r1)?, inv.alexander.newton_norm(&r2)?];
            if norms.iter().any(|n| *n <= 0) {
                return Err(Error::DegenerateCone("spanning ray of zero norm".into()));
            }
            Ok(FiberedCone::Face(FiberedFace {
                rays: [r1, r2],
                norms,
                extremes: [[lo[0], lo[1]], [hi[0], hi[1]]],
            }))
        }
        b => Err(Error::WrongBetti { expected: 2, found: b }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Largest root of a one-variable specialization.
    Exact,
    Midpoint,
    Solver,
    Sampling,
}

#[derive(Clone, Debug, Serialize)]
pub struct DilatationReport {
    pub b1: usize,
    pub method: Method,
    /// Dilatation at the fibered class where the value is attained.
    pub lambda: Approx,
    /// Fiber Euler characteristic (`b1 = 1`).
    pub chi: Option<i64>,
    /// Enclosure of the normalized dilatation.
    pub normalized: Approx,
    /// Gcd of the spanning-ray norms (`b1 = 2`).
    pub gcd_norms: Option<i64>,
    /// Face parameter of the minimizer (`b1 = 2`).
    pub t: Option<f64>,
    pub warning: Option<String>,
}

impl DilatationReport {
    pub fn value(&self) -> f64 {
        0.5 * (self.normalized.lo + self.normalized.hi)
    }

    /// χ for `b1 = 1`, the gcd of ray norms otherwise.
    pub fn extra(&self) -> i64 {
        self.chi.or(self.gcd_norms).unwrap_or(0)
    }
}

/// Whitespace-separated compile line with the value to four places.
pub fn format_compile_line(r: &DilatationReport, index: u64, sig: &str) -> String {
    format!("{index} {sig} {:.4} {}", r.value(), r.extra())
}

/// Largest root of the taut polynomial specialized at an integral class, after
/// removing cyclotomic factors.
pub fn specialized_dilatation(taut: &Laurent, a: &[i64], eps: f64) -> Result<RootEnclosure> {
    let (p, _) = taut.specialize(a)?;
    let q = remove_cyclotomic_factors(&p)?;
    let r = largest_real_root(&q, eps)?;
    if r.lo < BigRational::from_integer(1.into()) && r.midpoint() <= 1.0 {
        return Err(Error::NoRealRoot(format!("no root above 1 for {q}")));
    }
    Ok(r)
}

fn power_enclosure(r: &RootEnclosure, k: u32) -> Approx {
    let (lo, hi) = r.pow_bounds(k);
    Approx { lo: rat_to_f64(&lo), hi: rat_to_f64(&hi) }
}

/// `b1 = 1` pipeline.
pub fn dilatation_b1(v: &VeeringTriangulation, tol: f64) -> Result<DilatationReport> {
    let inv = Invariants::compute(v);
    dilatation_b1_with(v, &inv, tol)
}

pub fn dilatation_b1_with(v: &VeeringTriangulation, inv: &Invariants, tol: f64) -> Result<DilatationReport> {
    let b1 = inv.homology.b1;
    if b1 != 1 {
        return Err(Error::WrongBetti { expected: 1, found: b1 });
    }
    let FiberedCone::Ray(s) = fibered_cone(v, inv)? else { unreachable!() };
    let span = inv.alexander.newton_norm(&[1])?;
    let chi = -(span - 1);
    if chi >= 0 {
        return Err(Error::Domain(format!("fiber Euler characteristic {chi} is not negative")));
    }
    let k = (-chi) as u32;
    let mut lam = specialized_dilatation(&inv.taut, &[s], tol)?;
    // Enough precision that the k-th power meets the tolerance.
    let hi = lam.midpoint().max(1.0);
    lam.refine(&eps_rat(tol / (k as f64 * hi.powi(k as i32))));
    Ok(DilatationReport {
        b1,
        method: Method::Exact,
        lambda: lam.approx(),
        chi: Some(chi),
        normalized: power_enclosure(&lam, k),
        gcd_norms: None,
        t: None,
        warning: None,
    })
}

/// Largest real root `s` of `Σ c_h e^(s a·h)`, so that `λ(a) = e^s`. Returns `None`
/// when there is no positive root.
pub fn log_dilatation(taut: &Laurent, a: [f64; 2]) -> Option<f64> {
    let mut terms: Vec<(f64, f64)> = taut
        .terms()
        .map(|(e, c)| (e[0] as f64 * a[0] + e[1] as f64 * a[1], num_traits::ToPrimitive::to_f64(c).unwrap()))
        .collect();
    terms.sort_by(|x, y| y.0.total_cmp(&x.0));
    let top = terms[0].0;
    // Merge numerically tied exponents.
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (e, c) in terms {
        match merged.last_mut() {
            Some(last) if (last.0 - e).abs() < 1e-12 * (1.0 + top.abs()) => last.1 += c,
            _ => merged.push((e, c)),
        }
    }
    merged.retain(|t| t.1 != 0.0);
    let (top, ctop) = merged[0];
    let f = |s: f64| merged.iter().map(|(e, c)| c * (s * (e - top)).exp()).sum::<f64>();
    let gap = merged.get(1).map_or(1.0, |t| top - t.0);
    let rest: f64 = merged[1..].iter().map(|t| t.1.abs()).sum();
    let smax = ((rest / ctop.abs()).max(1.0).ln() / gap).max(0.0) + 1.0;
    let sign_top = ctop.signum();
    let steps = 20_000;
    let h = smax / steps as f64;
    let mut hi = smax;
    for i in 1..=steps {
        let lo = smax - i as f64 * h;
        if f(lo) * sign_top <= 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(m) * sign_top <= 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        hi = lo;
    }
    None
}

/// Normalized dilatation at face parameter `t`.
pub fn face_value(taut: &Laurent, face: &FiberedFace, t: f64) -> Option<f64> {
    log_dilatation(taut, face.point(t)).map(f64::exp)
}

/// Grid samples of the normalized dilatation on the open face.
pub fn face_samples(taut: &Laurent, face: &FiberedFace, grid: usize) -> Vec<(f64, f64)> {
    (1..grid)
        .filter_map(|i| {
            let t = i as f64 / grid as f64;
            face_value(taut, face, t).map(|p| (t, p))
        })
        .collect()
}

/// Sampling oracle: grid minimum refined by golden-section search on the bracketing
/// cells (the function is convex on the face). Returns `(t, value)`.
pub fn face_sample_min(taut: &Laurent, face: &FiberedFace, grid: usize) -> Result<(f64, f64)> {
    let s = face_samples(taut, face, grid);
    let (i, _) = s
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .ok_or_else(|| Error::Solver("no sample has a dilatation".into()))?;
    let lo = if i == 0 { 1e-9 } else { s[i - 1].0 };
    let hi = if i + 1 == s.len() { 1.0 - 1e-9 } else { s[i + 1].0 };
    let f = |t: f64| -face_value(taut, face, t).unwrap_or(f64::INFINITY);
    let (t, v) = crate::bounds::golden_max(f, lo, hi, 1e-10);
    Ok((t, -v))
}

/// Unimodular change of exponent coordinates that minimizes the degree in the first
/// new variable, then in the second. Rows of the returned matrix map old exponents
/// to new ones.
pub fn reduce_exponent_lattice(support: &[Vec<i64>]) -> [[i64; 2]; 2] {
    let range = |w: [i64; 2]| {
        let vals = support.iter().map(|e| w[0] * e[0] + w[1] * e[1]);
        let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(l, h), v| (l.min(v), h.max(v)));
        hi - lo
    };
    const W: i64 = 64;
    let mut best = ([1, 0], range([1, 0]));
    for a in -W..=W {
        for b in 0..=W {
            if (a, b) == (0, 0) || a.gcd(&b) != 1 {
                continue;
            }
            let r = range([a, b]);
            if r < best.1 {
                best = ([a, b], r);
            }
        }
    }
    let w = best.0;
    // Complete w to a unimodular matrix.
    let e = i64::extended_gcd(&w[0], &w[1]);
    let mut u = [-e.y, e.x];
    if w[0] * u[1] - w[1] * u[0] < 0 {
        u = [-u[0], -u[1]];
    }
    let mut bu = (u, range(u));
    for k in -400..=400 {
        let cand = [u[0] + k * w[0], u[1] + k * w[1]];
        let r = range(cand);
        if r < bu.1 {
            bu = (cand, r);
        }
    }
    [w, bu.0]
}

/// Taut and critical polynomials in reduced coordinates. `log x_old = map · log X_new`.
pub struct CriticalSystem {
    pub theta: BiPoly,
    pub crit: BiPoly,
    pub map: [[f64; 2]; 2],
}

pub fn critical_system(taut: &Laurent, dir: [i64; 2]) -> CriticalSystem {
    let crit = taut.euler_derivative(&dir);
    let support: Vec<Vec<i64>> = taut.terms().map(|(e, _)| e.clone()).collect();
    let m = reduce_exponent_lattice(&support);
    // monomial_change uses rows indexed by old variables.
    let mt = vec![vec![m[0][0], m[1][0]], vec![m[0][1], m[1][1]]];
    let (t2, _) = taut.monomial_change(&mt).shifted_to_polynomial();
    let (c2, _) = crit.monomial_change(&mt).shifted_to_polynomial();
    // Divide exponents by their per-variable gcd.
    let g: Vec<i64> = (0..2)
        .map(|j| {
            t2.terms().chain(c2.terms()).fold(0i64, |g, (e, _)| g.gcd(&e[j])).max(1)
        })
        .collect();
    let scale = |p: &Laurent| {
        Laurent::from_terms(2, p.terms().map(|(e, c)| (vec![e[0] / g[0], e[1] / g[1]], c.clone())))
    };
    let (t3, c3) = (scale(&t2), scale(&c2));
    // x_old_i = Π_j X_j^{m[j][i]}, X_j = Z_j^{1/g_j}.
    let map = [0, 1].map(|i| [0, 1].map(|j| m[j][i] as f64 / g[j] as f64));
    CriticalSystem { theta: BiPoly::from_laurent(&t3), crit: BiPoly::from_laurent(&c3), map }
}

/// Whether the largest root of the mid-ray specialization is a critical point.
fn midpoint_is_critical(taut: &Laurent, face: &FiberedFace, lam: &RootEnclosure) -> Result<bool> {
    let m = face.mid_ray();
    let crit = taut.euler_derivative(&face.direction());
    if crit.is_zero() {
        return Ok(true);
    }
    let (tp, _) = taut.specialize(&m)?;
    let (cp, _) = crit.specialize(&m)?;
    let g = tp.gcd(&cp).strip_x().0;
    if g.deg() == 0 {
        return Ok(false);
    }
    let g = g.square_free();
    if lam.is_exact() {
        return Ok(g.sign_at(&lam.lo) == 0);
    }
    let seq = sturm_sequence(&g);
    Ok(count_roots(&seq, &lam.lo, &lam.hi) == 1)
}

/// Sampling grid used by the oracle inside [`min_dilatation_b2`].
pub const ORACLE_GRID: usize = 400;

pub fn min_dilatation_b2(v: &VeeringTriangulation, tol: f64) -> Result<DilatationReport> {
    let inv = Invariants::compute(v);
    min_dilatation_b2_with(v, &inv, tol)
}

pub fn min_dilatation_b2_with(v: &VeeringTriangulation, inv: &Invariants, tol: f64) -> Result<DilatationReport> {
    let b1 = inv.homology.b1;
    if b1 != 2 {
        return Err(Error::WrongBetti { expected: 2, found: b1 });
    }
    let FiberedCone::Face(face) = fibered_cone(v, inv)? else { unreachable!() };
    minimize_on_face(&inv.taut, &face, tol)
}

/// Minimum of the normalized dilatation over a fibered face.
pub fn minimize_on_face(taut: &Laurent, face: &FiberedFace, tol: f64) -> Result<DilatationReport> {
    let gcd_norms = face.norms[0].gcd(&face.norms[1]);
    let base = DilatationReport {
        b1: 2,
        method: Method::Midpoint,
        lambda: Approx { lo: 0.0, hi: 0.0 },
        chi: None,
        normalized: Approx { lo: 0.0, hi: 0.0 },
        gcd_norms: Some(gcd_norms),
        t: Some(0.5),
        warning: None,
    };
    let m = face.mid_ray();
    let norm_m = (face.norm_of([m[0] as f64, m[1] as f64])).round() as u32;
    if let Ok(mut lam) = specialized_dilatation(taut, &m, tol) {
        if midpoint_is_critical(taut, face, &lam)? {
            let hi = lam.midpoint().max(1.0);
            lam.refine(&eps_rat(tol / (norm_m as f64 * hi.powi(norm_m as i32))));
            return Ok(DilatationReport { lambda: lam.approx(), normalized: power_enclosure(&lam, norm_m), ..base });
        }
    }
    let sys = critical_system(taut, face.direction());
    let keep = |x: f64, y: f64| x > 0.0 && y > 0.0;
    let mut best: Option<(f64, f64, Approx)> = None;
    let mut warning = None;
    match solve_bivariate(&sys.theta, &sys.crit, &keep) {
        Ok(rep) => {
            for s in &rep.solutions {
                let ln = |i: &Interval| [rat_to_f64(&i.lo).ln(), rat_to_f64(&i.hi).ln()];
                let mut vals = Vec::new();
                for a in ln(&s.x) {
                    for b in ln(&s.y) {
                        vals.push([0, 1].map(|i| sys.map[i][0] * a + sys.map[i][1] * b));
                    }
                }
                let l = vals[0];
                let (al, be) = face.coords(l);
                if al <= 0.0 || be <= 0.0 {
                    continue;
                }
                let logp = face.norm_of(l);
                let t = face.param_of(l);
                // The root must be the dilatation, the largest one.
                let Some(s_true) = log_dilatation(taut, face.point(t)) else { continue };
                if (s_true - logp).abs() > 1e-6 * (1.0 + logp.abs()) {
                    continue;
                }
                let ps: Vec<f64> = vals.iter().map(|l| face.norm_of(*l).exp()).collect();
                let lo = ps.iter().copied().fold(f64::INFINITY, f64::min) * (1.0 - 1e-13);
                let hi = ps.iter().copied().fold(f64::NEG_INFINITY, f64::max) * (1.0 + 1e-13);
                if best.as_ref().is_none_or(|b| logp < b.0) {
                    best = Some((logp, t, Approx { lo, hi }));
                }
            }
        }
        Err(e) => warning = Some(format!("solver failed: {e}")),
    }
    match best {
        Some((_, t, normalized)) => Ok(DilatationReport {
            method: Method::Solver,
            lambda: normalized,
            normalized,
            t: Some(t),
            ..base
        }),
        None => {
            let (t, p) = face_sample_min(taut, face, ORACLE_GRID)?;
            Ok(DilatationReport {
                method: Method::Sampling,
                lambda: Approx { lo: p, hi: p },
                normalized: Approx { lo: p, hi: p },
                t: Some(t),
                warning: Some(warning.unwrap_or_else(|| "no admissible critical point; sampled minimum".into())),
                ..base
            })
        }
    }
}
