//! Matrices over a Laurent polynomial ring and their Fitting ideals.

use itertools::Itertools;

use super::laurent::Laurent;
use super::mgcd::laurent_gcd_all;

/// Rows are relations, columns are generators.
#[derive(Clone, Debug)]
pub struct LMat {
    nvars: usize,
    pub rows: Vec<Vec<Laurent>>,
    cols: usize,
}

impl LMat {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        LMat { nvars, rows: vec![vec![Laurent::zero(nvars); cols]; rows], cols }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.rows[i][j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Laurent) {
        self.rows[i][j] = &self.rows[i][j] + x;
    }

    /// Eliminates unit pivots one at a time, each time choosing the pivot with the
    /// smallest fill-in estimate. Fitting ideals are unchanged in the shifted sense:
    /// `Fitt_k` of the result equals `Fitt_k` of the input. Returns the number removed.
    pub fn eliminate_units(&mut self) -> usize {
        let mut removed = 0;
        loop {
            self.rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let col_nnz: Vec<usize> = (0..self.cols)
                .map(|j| self.rows.iter().filter(|r| !r[j].is_zero()).count())
                .collect();
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                let rn = r.iter().filter(|x| !x.is_zero()).count();
                for (j, x) in r.iter().enumerate() {
                    if x.is_unit() {
                        let cost = (rn - 1) * (col_nnz[j] - 1);
                        if best.is_none_or(|b| cost < b.2) {
                            best = Some((i, j, cost));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { return removed };
            let inv = self.rows[pi][pj].unit_inverse().unwrap();
            let prow = self.rows.swap_remove(pi);
            for r in self.rows.iter_mut() {
                if r[pj].is_zero() {
                    continue;
                }
                let k = &r[pj] * &inv;
                for (j, x) in prow.iter().enumerate() {
                    if j != pj && !x.is_zero() {
                        r[j] = &r[j] - &(&k * x);
                    }
                }
                r[pj] = Laurent::zero(self.nvars);
            }
            for r in self.rows.iter_mut() {
                r.remove(pj);
            }
            self.cols -= 1;
            removed += 1;
        }
    }

    /// Generator of the smallest principal ideal containing `Fitt_k`: the gcd of the
    /// minors of size `cols - k`. `None` when every such minor vanishes.
    pub fn fitting_gcd(&self, k: usize) -> Option<Laurent> {
        let mut m = self.clone();
        m.eliminate_units();
        let Some(s) = m.cols.checked_sub(k) else {
            return Some(Laurent::one(self.nvars));
        };
        if s == 0 {
            return Some(Laurent::one(self.nvars));
        }
        if m.rows.len() < s {
            return None;
        }
        let minors = (0..m.rows.len()).combinations(s).flat_map(|rs| {
            let m = &m;
            (0..m.cols).combinations(s).map(move |cs| m.minor(&rs, &cs))
        });
        let minors: Vec<Laurent> = minors.filter(|d| !d.is_zero()).collect();
        laurent_gcd_all(minors.iter())
    }

    pub fn minor(&self, rs: &[usize], cs: &[usize]) -> Laurent {
        let sub: Vec<Vec<Laurent>> = rs
            .iter()
            .map(|&i| cs.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        determinant(sub, self.nvars)
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut a: Vec<Vec<Laurent>>, nvars: usize) -> Laurent {
    let n = a.len();
    if n == 0 {
        return Laurent::one(nvars);
    }
    let mut sign = false;
    let mut prev = Laurent::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Laurent::zero(nvars);
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}
