//! Borel–Weil–Bott on the Grassmannian `Gr(k, N)` of `k`-dimensional subspaces.
//!
//! A homogeneous bundle `Σ^λU^∨ ⊗ Σ^μQ^∨` has cohomology in at most one
//! degree, given by sorting `(λ, μ) + ρ`. Output weights index `Σ^•V^∨`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::schur::{SchurError, SchurMultiset, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BwbError {
    #[error("malformed weights for Gr({k},{n}): |λ| = {u_len}, |μ| = {q_len}")]
    Malformed {
        n: usize,
        k: usize,
        u_len: usize,
        q_len: usize,
    },
    #[error("virtual bundle has no cohomology")]
    Virtual,
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// `mult · Σ^{u_weight}U^∨ ⊗ Σ^{q_weight}Q^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSummand {
    pub u_weight: Weight,
    pub q_weight: Weight,
    #[serde(with = "crate::schur::big_int_serde")]
    pub mult: BigInt,
}

impl EquivariantSummand {
    pub fn new(u_weight: Weight, q_weight: Weight, mult: impl Into<BigInt>) -> Self {
        EquivariantSummand {
            u_weight,
            q_weight,
            mult: mult.into(),
        }
    }

    /// `O(d) ⊗ Σ^μQ^∨` on a projective space.
    pub fn on_projective(d: i64, q_weight: Weight, mult: impl Into<BigInt>) -> Self {
        EquivariantSummand::new(Weight::constant(1, d), q_weight, mult)
    }

    /// Serre dual `E^∨ ⊗ ω` with the sub and quotient blocks of rank `k` and `N − k`.
    pub fn serre_dual(&self) -> EquivariantSummand {
        let k = self.u_weight.len() as i64;
        let q = self.q_weight.len() as i64;
        EquivariantSummand {
            u_weight: self.u_weight.dual().shift(-q),
            q_weight: self.q_weight.dual().shift(k),
            mult: self.mult.clone(),
        }
    }
}

/// Formal sum of homogeneous bundles on `Gr(k, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleExpr {
    pub n: usize,
    pub k: usize,
    pub summands: Vec<EquivariantSummand>,
}

impl BundleExpr {
    pub fn new(n: usize, k: usize) -> Self {
        BundleExpr {
            n,
            k,
            summands: Vec::new(),
        }
    }

    pub fn push(&mut self, s: EquivariantSummand) {
        self.summands.push(s);
    }

    /// `O(d) ⊗ (Σ mult Σ^μ Q^∨)` on `P^{N−1}`.
    pub fn projective(n: usize, d: i64, q_dual_part: &SchurMultiset) -> Self {
        let mut e = BundleExpr::new(n, 1);
        for (w, m) in q_dual_part.iter() {
            e.push(EquivariantSummand::on_projective(d, w.clone(), m.clone()));
        }
        e
    }
}

/// Cohomology graded by degree; weights index `Σ^•V^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRep {
    pub rank: usize,
    pub by_degree: BTreeMap<i64, SchurMultiset>,
}

impl GradedRep {
    pub fn zero(rank: usize) -> Self {
        GradedRep {
            rank,
            by_degree: BTreeMap::new(),
        }
    }

    pub fn concentrated(degree: i64, rep: SchurMultiset) -> Self {
        let mut g = GradedRep::zero(rep.len());
        g.add(degree, &rep);
        g
    }

    pub fn add(&mut self, degree: i64, rep: &SchurMultiset) {
        if rep.is_zero() {
            return;
        }
        let slot = self
            .by_degree
            .entry(degree)
            .or_insert_with(|| SchurMultiset::new(self.rank));
        slot.add_all(rep);
        if slot.is_zero() {
            self.by_degree.remove(&degree);
        }
    }

    pub fn add_graded(&mut self, other: &GradedRep) {
        for (d, m) in &other.by_degree {
            self.add(*d, m);
        }
    }

    /// `G[−s]`: moves degree `d` to `d + s`.
    pub fn shifted(&self, s: i64) -> GradedRep {
        GradedRep {
            rank: self.rank,
            by_degree: self
                .by_degree
                .iter()
                .map(|(d, m)| (d + s, m.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    pub fn dim_in(&self, degree: i64) -> BigInt {
        self.by_degree
            .get(&degree)
            .map(SchurMultiset::dim)
            .unwrap_or_default()
    }

    /// Dimension per degree.
    pub fn dims(&self) -> BTreeMap<i64, BigInt> {
        self.by_degree
            .iter()
            .map(|(d, m)| (*d, m.dim()))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    pub fn euler(&self) -> BigInt {
        self.by_degree
            .iter()
            .map(|(d, m)| if d % 2 == 0 { m.dim() } else { -m.dim() })
            .sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.by_degree.keys().copied().collect()
    }
}

/// `(ℓ(σ), σ(α+ρ) − ρ)`, or `None` when `α + ρ` has a repeated entry.
pub fn bwb(n: usize, k: usize, lambda: &Weight, mu: &Weight) -> Result<Option<(usize, Weight)>, BwbError> {
    if k == 0 || k > n || lambda.len() != k || mu.len() != n - k {
        return Err(BwbError::Malformed {
            n,
            k,
            u_len: lambda.len(),
            q_len: mu.len(),
        });
    }
    let beta: Vec<i64> = lambda
        .concat(mu)
        .into_iter()
        .enumerate()
        .map(|(i, a)| a + (n - i) as i64)
        .collect();
    let mut sorted = beta.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            if beta[i] < beta[j] {
                inversions += 1;
            }
        }
    }
    let nu: Vec<i64> = sorted
        .into_iter()
        .enumerate()
        .map(|(i, b)| b - (n - i) as i64)
        .collect();
    Ok(Some((inversions, Weight::new(nu)?)))
}

/// Summand-wise Borel–Weil–Bott.
pub fn cohomology(expr: &BundleExpr) -> Result<GradedRep, BwbError> {
    if expr.summands.iter().any(|s| s.mult.is_negative()) {
        return Err(BwbError::Virtual);
    }
    cohomology_linear(expr)
}

/// Same as [`cohomology`] but extended linearly to virtual sums.
pub fn cohomology_linear(expr: &BundleExpr) -> Result<GradedRep, BwbError> {
    let mut out = GradedRep::zero(expr.n);
    for s in &expr.summands {
        if let Some((deg, w)) = bwb(expr.n, expr.k, &s.u_weight, &s.q_weight)? {
            let mut m = SchurMultiset::new(expr.n);
            m.add(w, s.mult.clone());
            out.add(deg as i64, &m);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variance {
    Q,
    QDual,
}

/// Row-count criterion for `O(−d) ⊗ Σ^λ(Q or Q^∨)` on `P^{N−1}` to be acyclic.
pub fn acyclic_by_shortcut(n: usize, d: usize, lambda: &Partition, variance: Variance) -> bool {
    let ht = lambda.height();
    if d == 0 || ht >= n {
        return false;
    }
    match variance {
        Variance::QDual => ht < d && d < n,
        Variance::Q => ht + d < n,
    }
}

/// The summand that [`acyclic_by_shortcut`] speaks about.
pub fn shortcut_summand(n: usize, d: usize, lambda: &Partition, variance: Variance) -> Result<EquivariantSummand, SchurError> {
    let w = Weight::from_partition(lambda, n - 1)?;
    let q = match variance {
        Variance::QDual => w,
        Variance::Q => w.dual(),
    };
    Ok(EquivariantSummand::on_projective(-(d as i64), q, 1))
}

/// Tally of a bulk self-test.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestOutcome {
    pub checked: usize,
    pub nonzero: usize,
    pub failures: Vec<String>,
}

fn random_weight(rng: &mut impl rand::Rng, len: usize, bound: i64) -> Weight {
    let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Weight::new(v).unwrap()
}

/// Serre duality on random summands of `Gr(k, N)` with `N ≤ max_n`: degree
/// `i ↦ k(N−k) − i` and weight `ν ↦ −rev ν`.
pub fn serre_selftest(samples: usize, seed: u64, max_n: usize) -> SelfTestOutcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = SelfTestOutcome::default();
    for _ in 0..samples {
        let n = rng.gen_range(2..=max_n.max(2));
        let k = rng.gen_range(1..n);
        let bound = n as i64 + 2;
        let s = EquivariantSummand::new(
            random_weight(&mut rng, k, bound),
            random_weight(&mut rng, n - k, bound),
            1,
        );
        let d = s.serre_dual();
        let a = bwb(n, k, &s.u_weight, &s.q_weight).unwrap();
        let b = bwb(n, k, &d.u_weight, &d.q_weight).unwrap();
        out.checked += 1;
        let ok = match (&a, &b) {
            (None, None) => true,
            (Some((i, nu)), Some((j, nu2))) => {
                out.nonzero += 1;
                *j == k * (n - k) - i && *nu2 == nu.dual()
            }
            _ => false,
        };
        if !ok {
            out.failures.push(format!(
                "Gr({k},{n}) λ={} μ={}: {a:?} vs dual {b:?}",
                s.u_weight, s.q_weight
            ));
        }
    }
    out
}

/// Every shortcut-acyclic summand with `ht(λ) ≤ max_ht`, `N ≤ max_n`, `d ≤ max_d`
/// and row lengths at most `max_width` is checked against full BWB.
pub fn shortcut_soundness(max_n: usize, max_d: usize, max_ht: usize, max_width: u32) -> SelfTestOutcome {
    let mut out = SelfTestOutcome::default();
    for n in 2..=max_n {
        let rows = max_ht.min(n - 1);
        let lambdas: Vec<Partition> = (0..=rows * max_width as usize)
            .flat_map(|size| crate::partition::partitions_bounded(size, rows, max_width as usize))
            .collect();
        for d in 1..=max_d {
            for lambda in &lambdas {
                for variance in [Variance::Q, Variance::QDual] {
                    if !acyclic_by_shortcut(n, d, lambda, variance) {
                        continue;
                    }
                    out.checked += 1;
                    let s = shortcut_summand(n, d, lambda, variance).unwrap();
                    if bwb(n, 1, &s.u_weight, &s.q_weight).unwrap().is_some() {
                        out.failures
                            .push(format!("N={n} d={d} λ={lambda} {variance:?}"));
                    }
                }
            }
        }
    }
    out
}
