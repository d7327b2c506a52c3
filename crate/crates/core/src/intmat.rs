//! Dense integer matrices with Smith and Hermite normal forms.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rows * cols);
        IMat { rows, cols, data: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let x = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += x;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = x;
        }
    }

    /// Replaces rows (a, b) by (s·a + t·b, u·a + v·b).
    fn combine_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * &x + v * &y;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = s * &x + t * &y;
            self.data[i * self.cols + b] = u * &x + v * &y;
        }
    }

    pub fn rank(&self) -> usize {
        hermite(self).rank
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IMat {
    type Output = IMat;
    fn mul(self, o: &IMat) -> IMat {
        assert_eq!(self.cols, o.rows);
        let mut m = IMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m[(i, j)] += a * &o[(k, j)];
                }
            }
        }
        m
    }
}

impl fmt::Display for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(" "))?;
        }
        Ok(())
    }
}

/// `p·a·q = d` with `d` diagonal, diagonal entries nonnegative and dividing each other.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub p: IMat,
    pub q: IMat,
    pub rank: usize,
}

pub fn smith(a: &IMat) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = IMat::identity(m);
    let mut q = IMat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the remaining block.
        let piv = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&x, &y| d[x].abs().cmp(&d[y].abs()));
        let Some((pi, pj)) = piv else { break };
        d.swap_rows(t, pi);
        p.swap_rows(t, pi);
        d.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if d[(i, t)].is_multiple_of(&d[(t, t)]) {
                    let k = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &k);
                    p.add_row(i, t, &k);
                    continue;
                }
                let (g, s, u) = ext_gcd(&d[(t, t)], &d[(i, t)]);
                let (a0, b0) = (&d[(t, t)] / &g, &d[(i, t)] / &g);
                d.combine_rows(t, i, &s, &u, &-&b0, &a0);
                p.combine_rows(t, i, &s, &u, &-&b0, &a0);
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if d[(t, j)].is_multiple_of(&d[(t, t)]) {
                    let k = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &k);
                    q.add_col(j, t, &k);
                    continue;
                }
                let (g, s, u) = ext_gcd(&d[(t, t)], &d[(t, j)]);
                let (a0, b0) = (&d[(t, t)] / &g, &d[(t, j)] / &g);
                d.combine_cols(t, j, &s, &u, &-&b0, &a0);
                q.combine_cols(t, j, &s, &u, &-&b0, &a0);
                dirty = true;
            }
            if dirty && (t + 1..m).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // Enforce divisibility into the rest of the block.
            let pv = d[(t, t)].clone();
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&ij| !d[ij].is_multiple_of(&pv));
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    p.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    Smith { diag, p, q, rank }
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b) > 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite form `u·a = h`: pivots positive, entries above a pivot reduced into
/// `[0, pivot)`, zero rows last.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IMat,
    pub u: IMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite(a: &IMat) -> Hermite {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IMat::identity(m);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let (g, s, t) = ext_gcd(&h[(r, c)], &h[(i, c)]);
            let (a0, b0) = (&h[(r, c)] / &g, &h[(i, c)] / &g);
            h.combine_rows(r, i, &s, &t, &-&b0, &a0);
            u.combine_rows(r, i, &s, &t, &-&b0, &a0);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pv = h[(r, c)].clone();
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&pv);
            h.add_row(i, r, &k);
            u.add_row(i, r, &k);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, rank: r, pivots }
}

/// Basis of the integer kernel `{x : a·x = 0}` as columns.
pub fn kernel_basis(a: &IMat) -> IMat {
    // Column operations on `a` are row operations on its transpose.
    let hf = hermite(&a.transpose());
    let k = a.cols - hf.rank;
    let mut out = IMat::zeros(a.cols, k);
    for (c, i) in (hf.rank..a.cols).enumerate() {
        for j in 0..a.cols {
            out[(j, c)] = hf.u[(i, j)].clone();
        }
    }
    out
}
