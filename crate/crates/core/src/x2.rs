//! Euler-level sweep on `X₂ = P_{Gr(2,V)}(Λ²Q̃^∨)`.
//!
//! Only Euler characteristics are computed here; nothing is certified.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bwb::{cohomology, BundleExpr, EquivariantSummand, GradedRep};
use crate::schur::{plethysm_sym_wedge2, SchurMultiset, Weight};
use crate::x1::X1Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X2Model {
    pub n: usize,
    pub big_n: usize,
    /// `rk Q̃ = 2n − 2`.
    pub base_rank: usize,
    /// `C(2n−2, 2)`.
    pub fiber_rank: usize,
    /// `C(2n−1, 2)`, the block count borrowed from `X₁`.
    pub x1_fiber_rank: usize,
}

impl X2Model {
    pub fn new(n: usize) -> Result<Self, X1Error> {
        if !(2..=3).contains(&n) {
            return Err(X1Error::Range(format!("X₂ sweep supports n ∈ {{2, 3}}, got {n}")));
        }
        let q = 2 * n - 2;
        Ok(X2Model {
            n,
            big_n: 2 * n,
            base_rank: q,
            fiber_rank: q * (q - 1) / 2,
            x1_fiber_rank: (q + 1) * q / 2,
        })
    }

    fn column(&self, k: usize) -> SchurMultiset {
        let mut m = SchurMultiset::new(self.base_rank);
        if k <= self.base_rank {
            m.add(Weight::column(k, self.base_rank).expect("k ≤ rank"), 1);
        }
        m
    }

    /// `π̃_*O(kH̃)` with its cohomological degree.
    fn pushforward(&self, k: i64) -> (i64, SchurMultiset) {
        let q = self.base_rank;
        let r = self.fiber_rank as i64;
        if k >= 0 {
            (0, plethysm_sym_wedge2(k as usize, q))
        } else if k > -r {
            (0, SchurMultiset::new(q))
        } else {
            let kp = (-k - r) as usize;
            (
                r - 1,
                plethysm_sym_wedge2(kp, q).dual().shift(-(q as i64 - 1)),
            )
        }
    }

    /// `RΓ(Gr(2,V), M)` for a character `M` of `Q̃`.
    fn cohomology(&self, m: &SchurMultiset) -> Result<GradedRep, X1Error> {
        let mut e = BundleExpr::new(self.big_n, 2);
        for (w, c) in m.dual().iter() {
            e.push(EquivariantSummand::new(Weight::zero(2), w.clone(), c.clone()));
        }
        Ok(cohomology(&e)?)
    }

    /// Constituents `(degree, H̃-twist, Q̃-part)` of `L̃_i`.
    fn l_terms(&self, i: usize) -> Vec<(i64, i64, SchurMultiset)> {
        let n = self.n;
        let mut out = Vec::new();
        let src = self.column(2 * n - i);
        if !src.is_zero() {
            out.push((-1, -((n - i) as i64), src));
        }
        out.push((0, 0, self.column(i)));
        out
    }

    /// `χ(L̃_i, L̃_j(−kH̃))` over constituent pairs.
    pub fn euler(&self, i: usize, j: usize, k: i64) -> Result<BigInt, X1Error> {
        let mut total = BigInt::zero();
        for (dx, ax, x) in self.l_terms(i) {
            for (dy, ay, y) in self.l_terms(j) {
                let (deg, p) = self.pushforward(ay - k - ax);
                if p.is_zero() {
                    continue;
                }
                let m = p.tensor(&y)?.tensor(&x.dual())?;
                let chi = self.cohomology(&m)?.shifted(deg).euler();
                if (dx + dy).rem_euclid(2) == 0 {
                    total += chi;
                } else {
                    total -= chi;
                }
            }
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X2Entry {
    pub i: usize,
    pub j: usize,
    pub k: i64,
    #[serde(with = "crate::schur::big_int_serde")]
    pub euler: BigInt,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X2Report {
    pub model: X2Model,
    pub label: String,
    pub entries: Vec<X2Entry>,
}

/// `χ(L̃_i, L̃_j(−kH̃))` for all `i, j ∈ [0, n−1]` and `k ∈ [0, C(2n−1,2) + n − 2]`.
pub fn x2_explore(model: &X2Model) -> Result<X2Report, X1Error> {
    let n = model.n;
    let top = (model.x1_fiber_rank + n - 2) as i64;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..=top {
                let euler = model.euler(i, j, k)?;
                entries.push(X2Entry {
                    i,
                    j,
                    k,
                    vanishes: euler.is_zero(),
                    euler,
                });
            }
        }
    }
    Ok(X2Report {
        model: *model,
        label: "EXPLORATION".into(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let m = X2Model::new(2).unwrap();
        assert_eq!(m.fiber_rank, 1);
        assert_eq!(m.euler(0, 0, 0).unwrap(), BigInt::from(1));
        assert_eq!(m.euler(1, 0, 0).unwrap(), BigInt::from(0));
        let m3 = X2Model::new(3).unwrap();
        assert_eq!(m3.fiber_rank, 6);
        assert_eq!(m3.euler(0, 0, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn table_is_complete() {
        let m = X2Model::new(2).unwrap();
        let r = x2_explore(&m).unwrap();
        // Two indices squared times twists 0..=3.
        assert_eq!(r.entries.len(), 2 * 2 * 4);
        assert_eq!(r, x2_explore(&m).unwrap());
        assert!(X2Model::new(4).is_err());
    }
}
