//! Multivariate gcd over ℤ by recursive primitive remainder sequences.

use num_integer::Integer;
use num_traits::{One, Signed};

use super::laurent::{Exp, Laurent};

/// Coefficients of `p` as a polynomial in variable `v`, indexed by degree.
/// Assumes nonnegative exponents in `v`.
fn coeffs_in(p: &Laurent, v: usize) -> Vec<Laurent> {
    let nv = p.nvars();
    let deg = p.terms().map(|(e, _)| e[v]).max().unwrap_or(0) as usize;
    let mut out = vec![Laurent::zero(nv); deg + 1];
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        let k = e2[v] as usize;
        e2[v] = 0;
        out[k].add_term(e2, c.clone());
    }
    out
}

fn from_coeffs(cs: &[Laurent], v: usize, nv: usize) -> Laurent {
    let mut out = Laurent::zero(nv);
    for (k, c) in cs.iter().enumerate() {
        for (e, x) in c.terms() {
            let mut e2: Exp = e.clone();
            e2[v] += k as i64;
            out.add_term(e2, x.clone());
        }
    }
    out
}

fn degree_in(p: &Laurent, v: usize) -> i64 {
    p.terms().map(|(e, _)| e[v]).max().unwrap_or(-1)
}

/// Makes the lexicographically largest term positive.
fn sign_normalize(p: Laurent) -> Laurent {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}

/// Gcd of polynomials with nonnegative exponents, leading term positive.
pub fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    let nv = a.nvars().max(b.nvars());
    if a.is_zero() {
        return sign_normalize(b.clone());
    }
    if b.is_zero() {
        return sign_normalize(a.clone());
    }
    // The recursion works up to unit monomials; put back the monomial part of the gcd.
    let g = gcd_rec(a, b, nv).shifted_to_polynomial().0;
    let m: Vec<i64> = a.min_exponents().iter().zip(b.min_exponents()).map(|(x, y)| (*x).min(y)).collect();
    sign_normalize(g.shift(&m))
}

fn gcd_rec(a: &Laurent, b: &Laurent, nv: usize) -> Laurent {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (am, bm) = (a.min_exponents(), b.min_exponents());
    if am.iter().chain(&bm).any(|&x| x != 0) {
        let mono: Exp = am.iter().zip(&bm).map(|(x, y)| *x.min(y)).collect();
        let a = a.shift(&am.iter().map(|x| -x).collect::<Vec<_>>());
        let b = b.shift(&bm.iter().map(|x| -x).collect::<Vec<_>>());
        return gcd_rec(&a, &b, nv).shift(&mono);
    }
    if a.is_monomial() || b.is_monomial() {
        return Laurent::constant(nv, a.content().gcd(&b.content()));
    }
    // Cheap divisibility checks catch the common case of nested factors.
    if b.len() <= a.len() && a.div_exact(b).is_some() {
        return b.clone();
    }
    if a.len() < b.len() && b.div_exact(a).is_some() {
        return a.clone();
    }
    let var = (0..nv)
        .filter(|&v| degree_in(a, v) > 0 && degree_in(b, v) > 0)
        .max_by_key(|&v| degree_in(a, v).min(degree_in(b, v)));
    let var = match var {
        Some(v) => v,
        None => {
            // Some variable appears in only one input: gcd lives among the coefficients.
            match (0..nv).find(|&v| degree_in(a, v) > 0 || degree_in(b, v) > 0) {
                None => return Laurent::constant(nv, a.content().gcd(&b.content())),
                Some(v) => {
                    let (x, y) = if degree_in(a, v) > 0 { (a, b) } else { (b, a) };
                    let mut g = y.clone();
                    for c in coeffs_in(x, v) {
                        if c.is_zero() {
                            continue;
                        }
                        g = gcd_rec(&g, &c, nv);
                        if g.is_monomial() && g.content().is_one() {
                            break;
                        }
                    }
                    return g;
                }
            }
        }
    };
    let (ca, pa) = split_content(a, var, nv);
    let (cb, pb) = split_content(b, var, nv);
    let c = gcd_rec(&ca, &cb, nv);
    let (mut p, mut q) = (pa, pb);
    if degree_in(&p, var) < degree_in(&q, var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if degree_in(&q, var) == 0 {
            // q is free of var and primitive in var, so it is ±1 times a content.
            p = Laurent::one(nv);
            break;
        }
        let r = pseudo_rem(&p, &q, var, nv);
        p = q;
        q = if r.is_zero() { r } else { split_content(&r, var, nv).1 };
    }
    let p = split_content(&p, var, nv).1;
    &c * &sign_normalize(p)
}

/// Content in `var` (a polynomial in the other variables) and the primitive part.
fn split_content(p: &Laurent, var: usize, nv: usize) -> (Laurent, Laurent) {
    let cs = coeffs_in(p, var);
    let mut g = Laurent::zero(nv);
    for c in cs.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c, nv);
        if g.is_unit() {
            break;
        }
    }
    let g = sign_normalize(g);
    if g.is_unit() {
        return (g.clone(), p.div_exact(&g).unwrap());
    }
    let prim = p.div_exact(&g).expect("content divides");
    (g, prim)
}

fn pseudo_rem(a: &Laurent, b: &Laurent, var: usize, nv: usize) -> Laurent {
    let mut r = coeffs_in(a, var);
    let bc = coeffs_in(b, var);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<Laurent> = r.iter().map(|c| c * &lb).collect();
        for (i, c) in bc.iter().enumerate() {
            next[k + i] = &next[k + i] - &(c * &lr);
        }
        while next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        r = next;
    }
    from_coeffs(&r, var, nv)
}

/// Gcd in the Laurent ring, normalized.
pub fn laurent_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let (pa, _) = a.shifted_to_polynomial();
    let (pb, _) = b.shifted_to_polynomial();
    poly_gcd(&pa, &pb).normalized()
}

/// Gcd of a list, skipping full gcds when the running gcd already divides.
pub fn laurent_gcd_all<'a>(items: impl IntoIterator<Item = &'a Laurent>) -> Option<Laurent> {
    let mut g: Option<Laurent> = None;
    for p in items {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.normalized(),
            Some(g) => {
                if g.is_unit() || p.div_exact(&g).is_some() {
                    g
                } else {
                    laurent_gcd(&g, p)
                }
            }
        });
        if let Some(x) = &g {
            if x.is_unit() {
                break;
            }
        }
    }
    g
}
