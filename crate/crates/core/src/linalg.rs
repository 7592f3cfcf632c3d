//! Exact rank of integer matrices.
//!
//! Rank modulo a prime is a lower bound for the rank over `Q`; when it already
//! equals `min(rows, cols)` it is exact. Otherwise fraction-free (Bareiss)
//! elimination over big integers decides.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Mersenne prime `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

/// Row-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(d: &[Vec<i64>]) -> Self {
        let rows = d.len();
        let cols = d.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows, cols);
        for (r, row) in d.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, v);
            }
        }
        m
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        if v == 0 {
            return;
        }
        let row = &mut self.data[r];
        match row.iter_mut().find(|(cc, _)| *cc == c) {
            Some(e) => e.1 += v,
            None => row.push((c, v)),
        }
        row.retain(|&(_, x)| x != 0);
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r]
            .iter()
            .find(|(cc, _)| *cc == c)
            .map_or(0, |e| e.1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                d[r][c] = v;
            }
        }
        d
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                t.data[c].push((r, v));
            }
        }
        t
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn to_mod(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Rank modulo the prime `p` by dense elimination.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    // Eliminate along the shorter side.
    let m = if m.cols < m.rows {
        m.transpose()
    } else {
        m.clone()
    };
    let mut rows: Vec<Vec<u64>> = m
        .data
        .iter()
        .map(|row| {
            let mut d = vec![0u64; m.cols];
            for &(c, v) in row {
                d[c] = to_mod(v, p);
            }
            d
        })
        .collect();
    let mut rank = 0;
    let ncols = m.cols;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for c in col..ncols {
                if pivot_row[c] != 0 {
                    let sub = mul_mod(f, pivot_row[c], p);
                    row[c] = (row[c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Q` by fraction-free Gaussian elimination.
pub fn rank_bareiss(m: &SparseMatrix) -> usize {
    let m = if m.cols < m.rows {
        m.transpose()
    } else {
        m.clone()
    };
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let nrows = a.len();
    let ncols = m.cols;
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let f = row[col].clone();
            for c in col + 1..ncols {
                let v = (&pv * &row[c] - &f * &pivot_row[c]) / &prev;
                row[c] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Full rank modulo a prime.
    ModularFull,
    /// Fraction-free elimination over the integers.
    Bareiss,
    /// Empty matrix.
    Trivial,
}

/// Exact rank together with how it was certified.
pub fn exact_rank(m: &SparseMatrix) -> (usize, RankMethod) {
    if m.rows == 0 || m.cols == 0 || m.nnz() == 0 {
        return (0, RankMethod::Trivial);
    }
    let r = rank_mod_p(m, PRIME);
    if r == m.rows.min(m.cols) {
        (r, RankMethod::ModularFull)
    } else {
        (rank_bareiss(m), RankMethod::Bareiss)
    }
}
