//! Independent oracles shared by several test targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use veerdil::invariants::fox_derivative;
use veerdil::poly::lmat::determinant;
use veerdil::poly::{Laurent, UPoly};
use veerdil::rootiso::{count_roots, eps_rat, isolate_real_roots, sturm_sequence};
use veerdil::sysolve::{solve_bivariate, BiPoly, Solution};

pub fn up(c: &[i64]) -> UPoly {
    UPoly::from_i64(c)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---- Root counting ----

pub fn grid(k: i64) -> BigRational {
    rat(2 * k + 1, 120)
}

/// Product of `(q x - p)^m` over `(p, q, m)`, times `x² + x + 3` when `quad`.
/// Returns the polynomial and its distinct real roots.
pub fn build_with_roots(roots: &[(i64, i64, u32)], quad: bool) -> (UPoly, Vec<BigRational>) {
    let mut p = UPoly::one();
    let mut distinct: Vec<BigRational> = Vec::new();
    for &(n, d, m) in roots {
        for _ in 0..m {
            p = &p * &up(&[-n, d]);
        }
        let r = rat(n, d);
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    if quad {
        p = &p * &up(&[3, 1, 1]);
    }
    distinct.sort();
    (p, distinct)
}

/// Sturm counts on `(grid(a), grid(a + w)]` against sign changes on the grid and
/// against the known roots; isolation against the known roots.
pub fn check_sturm(p: &UPoly, distinct: &[BigRational], a: i64, w: i64) -> Result<(), String> {
    let (lo, hi) = (grid(a), grid(a + w));
    let sf = p.square_free();
    let sturm = count_roots(&sturm_sequence(&sf), &lo, &hi);
    // Grid spacing 1/60 is below the least gap 1/20 between distinct roots,
    // so each cell holds at most one root and a sign change marks it.
    let sampled = (a..a + w).filter(|&k| sf.sign_at(&grid(k)) != sf.sign_at(&grid(k + 1))).count();
    let known = distinct.iter().filter(|r| **r > lo && **r <= hi).count();
    if sturm != sampled || sturm != known {
        return Err(format!("{p}: sturm {sturm}, sampled {sampled}, known {known}"));
    }
    let iso = isolate_real_roots(p).map_err(|e| e.to_string())?;
    if iso.len() != distinct.len() {
        return Err(format!("{p}: isolated {} roots, expected {}", iso.len(), distinct.len()));
    }
    for (e, r) in iso.iter().zip(distinct) {
        if !(e.lo <= *r && *r <= e.hi) {
            return Err(format!("{p}: enclosure misses {r}"));
        }
    }
    if iso.windows(2).any(|w| w[0].hi > w[1].lo) {
        return Err(format!("{p}: overlapping enclosures"));
    }
    Ok(())
}

pub fn random_root_case(rng: &mut ChaCha8Rng) -> (Vec<(i64, i64, u32)>, bool) {
    loop {
        let k = rng.gen_range(1..=4);
        let roots: Vec<(i64, i64, u32)> =
            (0..k).map(|_| (rng.gen_range(-15..=15), rng.gen_range(1..=5), rng.gen_range(1..=2))).collect();
        let quad = rng.gen_bool(0.5);
        if roots.iter().map(|r| r.2 as usize).sum::<usize>() + 2 * usize::from(quad) <= 8 {
            return (roots, quad);
        }
    }
}

// ---- Fox calculus ----

pub fn class_of(w: &[(usize, i32)], classes: &[Vec<i64>]) -> Vec<i64> {
    let mut c = vec![0; classes[0].len()];
    for &(g, s) in w {
        for (x, y) in c.iter_mut().zip(&classes[g]) {
            *x += s as i64 * y;
        }
    }
    c
}

pub fn mono(e: Vec<i64>) -> Laurent {
    Laurent::monomial(BigInt::from(1), e)
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Vec<(usize, i32)> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })).collect()
}

/// Product rule, inverse cancellation, and the fundamental formula
/// `Σ ∂w/∂g (g - 1) = w - 1` for the word `uv`.
pub fn check_fox(u: &[(usize, i32)], v: &[(usize, i32)], classes: &[Vec<i64>]) -> Result<(), String> {
    let nv = classes[0].len();
    let one = Laurent::one(nv);
    let uv: Vec<(usize, i32)> = u.iter().chain(v).copied().collect();
    let inv: Vec<(usize, i32)> = u.iter().rev().map(|&(g, s)| (g, -s)).collect();
    let uu: Vec<(usize, i32)> = u.iter().chain(&inv).copied().collect();
    let mut fundamental = Laurent::zero(nv);
    for g in 0..classes.len() {
        let lhs = fox_derivative(&uv, g, classes);
        let rhs = &fox_derivative(u, g, classes) + &(&mono(class_of(u, classes)) * &fox_derivative(v, g, classes));
        if lhs != rhs {
            return Err(format!("product rule fails for u={u:?} v={v:?}"));
        }
        if !fox_derivative(&uu, g, classes).is_zero() {
            return Err(format!("u u⁻¹ has a nonzero derivative for u={u:?}"));
        }
        fundamental = &fundamental + &(&lhs * &(&mono(classes[g].clone()) - &one));
    }
    if fundamental != &mono(class_of(&uv, classes)) - &one {
        return Err(format!("fundamental formula fails for u={u:?} v={v:?}"));
    }
    Ok(())
}

// ---- Spanning trees ----

/// Reversed order plus three shuffles of the faces.
pub fn face_orders(m: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<usize>> = vec![(0..m).rev().collect()];
    for _ in 0..3 {
        let mut o: Vec<usize> = (0..m).collect();
        o.shuffle(&mut rng);
        out.push(o);
    }
    out
}

// ---- Bivariate systems ----

/// Sylvester-matrix resultant with respect to `y`, a polynomial in `x`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> UPoly {
    let (m, n) = (a.deg_y(), b.deg_y());
    let size = m + n;
    let entry = |p: &BiPoly, j: usize| Laurent::from_upoly(&p.coeff_y(j), 0);
    let mut rows: Vec<Vec<Laurent>> = Vec::with_capacity(size);
    for (p, deg, count) in [(a, m, n), (b, n, m)] {
        for r in 0..count {
            let mut row = vec![Laurent::zero(1); size];
            for k in 0..=deg {
                row[r + k] = entry(p, deg - k);
            }
            rows.push(row);
        }
    }
    let d = determinant(rows, 1);
    if d.is_zero() {
        return UPoly::zero();
    }
    let (u, s) = d.to_upoly();
    assert!(s >= 0);
    &u * &UPoly::monomial(BigInt::from(1), s as usize)
}

pub fn real_roots(p: &UPoly) -> Vec<f64> {
    isolate_real_roots(p)
        .unwrap()
        .into_iter()
        .map(|mut r| {
            r.refine(&eps_rat(1e-15));
            r.midpoint()
        })
        .collect()
}

/// Value of `p` at `(x, y)` relative to the size of its terms there.
pub fn relative_residual(p: &BiPoly, x: f64, y: f64) -> f64 {
    let mut scale = 0.0;
    for j in 0..=p.deg_y() {
        for (i, c) in p.coeff_y(j).coeffs().iter().enumerate() {
            let c: f64 = num_traits::ToPrimitive::to_f64(c).unwrap();
            scale += c.abs() * x.abs().powi(i as i32) * y.abs().powi(j as i32);
        }
    }
    p.eval_f64(x, y).abs() / scale.max(1.0)
}

/// Real roots of both resultants, paired by substitution. `None` when a
/// resultant vanishes identically.
pub fn resultant_oracle(a: &BiPoly, b: &BiPoly) -> Option<Vec<(f64, f64)>> {
    let rx = resultant_y(a, b);
    let ry = resultant_y(&a.swap(), &b.swap());
    if rx.is_zero() || ry.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for &x in &real_roots(&rx) {
        for &y in &real_roots(&ry) {
            if relative_residual(a, x, y) < 1e-9 && relative_residual(b, x, y) < 1e-9 {
                out.push((x, y));
            }
        }
    }
    Some(out)
}

pub fn random_bipoly(rng: &mut ChaCha8Rng, deg: usize) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if rng.gen_bool(0.7) {
                terms.push((i, j, rng.gen_range(-6i64..=6)));
            }
        }
    }
    terms.push((0, deg, rng.gen_range(1i64..=4)));
    terms.push((deg, 0, rng.gen_range(1i64..=4)));
    BiPoly::from_terms(&terms)
}

pub fn sorted(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    v
}

/// Draws random systems with `deg_a · deg_b ≤ 9` until `count` of them have a
/// finite solution set, comparing the solver with the resultant oracle within
/// `tol`. Returns the total number of solutions compared.
pub fn compare_solver_with_oracle(seed: u64, count: usize, tol: f64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut total = 0;
    while checked < count {
        let (da, db) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        if da * db > 9 {
            continue;
        }
        let a = random_bipoly(&mut rng, da);
        let b = random_bipoly(&mut rng, db);
        let Some(want) = resultant_oracle(&a, &b) else { continue };
        let got = solve_bivariate(&a, &b, &|_, _| true).map_err(|e| e.to_string())?;
        if !got.common_factors.is_empty() {
            continue;
        }
        let got: Vec<(f64, f64)> = got.solutions.iter().map(Solution::approx).collect();
        let (want, got) = (sorted(want), sorted(got));
        if got.len() != want.len() {
            return Err(format!("a={a:?} b={b:?}: got {got:?}, want {want:?}"));
        }
        for (g, w) in got.iter().zip(&want) {
            if (g.0 - w.0).abs() >= tol || (g.1 - w.1).abs() >= tol {
                return Err(format!("a={a:?} b={b:?}: {g:?} vs {w:?}"));
            }
        }
        total += got.len();
        checked += 1;
    }
    Ok(total)
}
