//! Exact matrix oracle for `φ_{n,i,m}: Λ^{2n−i} ⊗ Sym^m(Λ²) → Λ^i ⊗ Sym^{m+n−i}(Λ²)`.
//!
//! Bases are monomial: `e_S ⊗ x_M` with `S` a sorted `(2n−i)`-subset of
//! `{0..N}` and `M` a multiset of pairs `a < b`. The image of a basis vector
//! sums over `i`-subsets `T ⊂ S` and perfect matchings of `S ∖ T`, signed by
//! the permutation that lists `T` first and then the matched pairs. The
//! constant `(n−i)!` from ordering the pairs is dropped.
//!
//! The map is torus-equivariant, so it splits into blocks by weight, and Weyl
//! symmetry makes dominant blocks sufficient. The kernel and cokernel are
//! decomposed from their dominant characters.
//!
//! The transposed flavor is the image of `φ` under the involution that swaps
//! `Λ` and `Sym`: `Sym^{2n−i} ⊗ Sym^m(Sym²) → Sym^i ⊗ Sym^{m+n−i}(Sym²)`, given by
//! the same position-level formula without signs and with loops allowed. Its
//! kernel consists of the transposes of the diagrams of the kernel of `φ`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{exact_rank, RankMethod, SparseMatrix};
use crate::partition::{partitions_bounded, Partition};
use crate::schur::{decompose, plethysm_sym_wedge2, DominantCharacter, SchurError, SchurMultiset, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("decomposition failed: {0}")]
    Decomposition(#[from] SchurError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhiSpec {
    pub n: usize,
    pub i: usize,
    pub m: usize,
    /// Dimension of the test space.
    pub dim: usize,
}

impl PhiSpec {
    pub fn new(n: usize, i: usize, m: usize, dim: usize) -> Result<Self, PhiError> {
        let s = PhiSpec { n, i, m, dim };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), PhiError> {
        if self.n == 0 || self.i > self.n || self.dim == 0 {
            return Err(PhiError::Invalid(format!(
                "need n ≥ 1, 0 ≤ i ≤ n, N ≥ 1; got n={}, i={}, N={}",
                self.n, self.i, self.dim
            )));
        }
        if self.dim > 64 {
            return Err(PhiError::Invalid("dimension above 64".into()));
        }
        Ok(())
    }

    /// Total polynomial degree `2m + 2n − i`.
    pub fn degree(&self) -> usize {
        2 * self.m + 2 * self.n - self.i
    }

    pub fn source_column(&self) -> usize {
        2 * self.n - self.i
    }

    pub fn target_sym(&self) -> usize {
        self.m + self.n - self.i
    }
}

/// Which side of the `Λ ↔ Sym` involution the matrix is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Exterior,
    Transposed,
}

/// Basis vector `e_S ⊗ x_M`: `S` as sorted indices, `M` as counts per pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub column: Vec<u8>,
    pub pairs: Vec<u8>,
}

struct PairLayout {
    n: usize,
    loops: bool,
    table: Vec<usize>,
    count: usize,
}

impl PairLayout {
    fn new(n: usize, flavor: Flavor) -> Self {
        let loops = flavor == Flavor::Transposed;
        let mut table = vec![usize::MAX; n * n];
        let mut count = 0;
        for a in 0..n {
            for b in a..n {
                if a == b && !loops {
                    continue;
                }
                table[a * n + b] = count;
                count += 1;
            }
        }
        PairLayout {
            n,
            loops,
            table,
            count,
        }
    }

    fn index(&self, a: u8, b: u8) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.table[a as usize * self.n + b as usize]
    }
}

/// Column parts of weight at most `w`: subsets for `Λ`, multisets for `Sym`.
fn column_parts(w: &[u32], size: usize, flavor: Flavor) -> Vec<Vec<u8>> {
    fn rec(w: &[u32], idx: usize, left: usize, flavor: Flavor, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if idx == w.len() {
            return;
        }
        let cap = match flavor {
            Flavor::Exterior => w[idx].min(1),
            Flavor::Transposed => w[idx],
        } as usize;
        for take in (0..=cap.min(left)).rev() {
            for _ in 0..take {
                cur.push(idx as u8);
            }
            rec(w, idx + 1, left - take, flavor, cur, out);
            for _ in 0..take {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(w, 0, size, flavor, &mut Vec::new(), &mut out);
    out
}

/// Multigraphs on `deg.len()` vertices with the given degrees, as pair counts.
fn multigraphs(deg: &[u32], layout: &PairLayout) -> Vec<Vec<u8>> {
    fn rec(deg: &mut [u32], a: usize, layout: &PairLayout, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let n = deg.len();
        let Some(a) = (a..n).find(|&v| deg[v] > 0) else {
            out.push(cur.clone());
            return;
        };
        let rest: u32 = deg[a + 1..].iter().sum();
        let need = deg[a];
        let max_loops = if layout.loops { need / 2 } else { 0 };
        for l in 0..=max_loops {
            let left = need - 2 * l;
            if left > rest {
                continue;
            }
            let loop_idx = if l > 0 { Some(layout.index(a as u8, a as u8)) } else { None };
            if let Some(li) = loop_idx {
                cur[li] += l as u8;
            }
            deg[a] = 0;
            distribute(deg, a, a + 1, left, layout, cur, out);
            deg[a] = need;
            if let Some(li) = loop_idx {
                cur[li] -= l as u8;
            }
        }
    }
    fn distribute(
        deg: &mut [u32],
        a: usize,
        b: usize,
        left: u32,
        layout: &PairLayout,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let n = deg.len();
        if left == 0 {
            rec(deg, a + 1, layout, cur, out);
            return;
        }
        if b == n {
            return;
        }
        let rest: u32 = deg[b + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        let hi = left.min(deg[b]);
        if lo > hi {
            return;
        }
        let pi = layout.index(a as u8, b as u8);
        for x in lo..=hi {
            cur[pi] += x as u8;
            deg[b] -= x;
            distribute(deg, a, b + 1, left - x, layout, cur, out);
            deg[b] += x;
            cur[pi] -= x as u8;
        }
    }
    let total: u32 = deg.iter().sum();
    if total % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut d = deg.to_vec();
    rec(&mut d, 0, layout, &mut vec![0u8; layout.count], &mut out);
    out
}

/// Basis of `column^{size} ⊗ Sym^{edges}(pairs)` in weight `w`.
fn basis_in_weight(w: &[u32], size: usize, edges: usize, flavor: Flavor, layout: &PairLayout) -> Vec<BasisLabel> {
    let total: u32 = w.iter().sum();
    if total as usize != size + 2 * edges {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in column_parts(w, size, flavor) {
        let mut rest = w.to_vec();
        for &a in &s {
            rest[a as usize] -= 1;
        }
        for g in multigraphs(&rest, layout) {
            out.push(BasisLabel {
                column: s.clone(),
                pairs: g,
            });
        }
    }
    out
}

/// Perfect matchings of `0..len` as position pairs.
fn matchings(len: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for j in 0..free.len() {
            let b = free.remove(j);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(j, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..len).collect(), &mut Vec::new(), &mut out);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Precomputed position-level expansion: `(T positions, matched pairs, sign)`.
struct Expansion {
    terms: Vec<(Vec<usize>, Vec<(usize, usize)>, i64)>,
}

impl Expansion {
    fn new(spec: &PhiSpec, flavor: Flavor) -> Self {
        let len = spec.source_column();
        let mut terms = Vec::new();
        for t in combinations(len, spec.i) {
            let rest: Vec<usize> = (0..len).filter(|x| !t.contains(x)).collect();
            for mt in matchings(rest.len()) {
                let pairs: Vec<(usize, usize)> = mt.iter().map(|&(a, b)| (rest[a], rest[b])).collect();
                let sign = match flavor {
                    Flavor::Exterior => {
                        let mut perm = t.clone();
                        for &(a, b) in &pairs {
                            perm.push(a);
                            perm.push(b);
                        }
                        permutation_sign(&perm)
                    }
                    Flavor::Transposed => 1,
                };
                terms.push((t.clone(), pairs, sign));
            }
        }
        Expansion { terms }
    }
}

/// Image of one basis vector.
fn apply_with(exp: &Expansion, layout: &PairLayout, x: &BasisLabel) -> BTreeMap<BasisLabel, i64> {
    let mut out: BTreeMap<BasisLabel, i64> = BTreeMap::new();
    for (t, pairs, sign) in &exp.terms {
        let column: Vec<u8> = t.iter().map(|&p| x.column[p]).collect();
        let mut g = x.pairs.clone();
        for &(a, b) in pairs {
            g[layout.index(x.column[a], x.column[b])] += 1;
        }
        *out.entry(BasisLabel { column, pairs: g }).or_default() += sign;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Image of a basis vector of `φ(k^N)` in the monomial basis.
pub fn apply_phi(spec: &PhiSpec, flavor: Flavor, x: &BasisLabel) -> BTreeMap<BasisLabel, i64> {
    let layout = PairLayout::new(spec.dim, flavor);
    apply_with(&Expansion::new(spec, flavor), &layout, x)
}

/// Pair indices of a layout, for reading labels.
pub fn pair_list(dim: usize, flavor: Flavor) -> Vec<(u8, u8)> {
    let layout = PairLayout::new(dim, flavor);
    let mut out = vec![(0u8, 0u8); layout.count];
    for a in 0..dim {
        for b in a..dim {
            let idx = layout.table[a * dim + b];
            if idx != usize::MAX {
                out[idx] = (a as u8, b as u8);
            }
        }
    }
    out
}

/// One torus-weight block with explicit basis labels.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub weight: Vec<u32>,
    pub domain: Vec<BasisLabel>,
    pub codomain: Vec<BasisLabel>,
    /// Rows indexed by domain vectors, columns by codomain vectors.
    pub matrix: SparseMatrix,
}

#[derive(Clone, Debug)]
pub struct WeightBlockMatrix {
    pub spec: PhiSpec,
    pub flavor: Flavor,
    pub blocks: BTreeMap<Vec<u32>, WeightBlock>,
}

impl WeightBlockMatrix {
    pub fn domain_dim(&self) -> usize {
        self.blocks.values().map(|b| b.domain.len()).sum()
    }

    pub fn codomain_dim(&self) -> usize {
        self.blocks.values().map(|b| b.codomain.len()).sum()
    }
}

fn build_block(spec: &PhiSpec, flavor: Flavor, exp: &Expansion, layout: &PairLayout, w: &[u32]) -> WeightBlock {
    let domain = basis_in_weight(w, spec.source_column(), spec.m, flavor, layout);
    let codomain = basis_in_weight(w, spec.i, spec.target_sym(), flavor, layout);
    let index: HashMap<&BasisLabel, usize> = codomain.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut matrix = SparseMatrix::new(domain.len(), codomain.len());
    for (r, x) in domain.iter().enumerate() {
        for (y, c) in apply_with(exp, layout, x) {
            matrix.data[r].push((index[&y], c));
        }
    }
    WeightBlock {
        weight: w.to_vec(),
        domain,
        codomain,
        matrix,
    }
}

/// All weight vectors of length `n` summing to `d`.
fn compositions(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(d as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=d {
            cur.push(x as u32);
            rec(n, d - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn dominant_weights(n: usize, d: usize) -> Vec<Vec<u32>> {
    partitions_bounded(d, n, d)
        .into_iter()
        .map(|p| {
            let mut v = p.rows().to_vec();
            v.resize(n, 0);
            v
        })
        .collect()
}

/// The full matrix of `φ_{n,i,m}(k^N)`, every weight block.
pub fn build_phi_matrix(spec: &PhiSpec) -> Result<WeightBlockMatrix, PhiError> {
    build_phi_matrix_flavored(spec, Flavor::Exterior)
}

pub fn build_phi_matrix_flavored(spec: &PhiSpec, flavor: Flavor) -> Result<WeightBlockMatrix, PhiError> {
    spec.validate()?;
    let layout = PairLayout::new(spec.dim, flavor);
    let exp = Expansion::new(spec, flavor);
    let mut blocks = BTreeMap::new();
    for w in compositions(spec.dim, spec.degree()) {
        let b = build_block(spec, flavor, &exp, &layout, &w);
        if !b.domain.is_empty() || !b.codomain.is_empty() {
            blocks.insert(w, b);
        }
    }
    Ok(WeightBlockMatrix {
        spec: *spec,
        flavor,
        blocks,
    })
}

/// Per-block rank data for a dominant weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRank {
    pub weight: Vec<u32>,
    pub domain: usize,
    pub codomain: usize,
    pub rank: usize,
    pub method: RankMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiAnalysis {
    pub spec: PhiSpec,
    pub flavor: Flavor,
    pub rank: u64,
    pub domain_dim: u64,
    pub codomain_dim: u64,
    pub ker_char: SchurMultiset,
    pub coker_char: SchurMultiset,
    pub blocks: Vec<BlockRank>,
}

impl PhiAnalysis {
    pub fn ker_dim(&self) -> BigInt {
        self.ker_char.dim()
    }

    pub fn coker_dim(&self) -> BigInt {
        self.coker_char.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.ker_char.is_zero()
    }
}

fn orbit_size(w: &[u32]) -> u64 {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
    }
    let fact = |k: u64| (1..=k).product::<u64>();
    counts.values().fold(fact(w.len() as u64), |acc, &c| acc / fact(c))
}

/// Exact rank and kernel/cokernel characters of `φ_{n,i,m}(k^N)`.
pub fn analyze_phi(spec: &PhiSpec) -> Result<PhiAnalysis, PhiError> {
    analyze_phi_flavored(spec, Flavor::Exterior)
}

pub fn analyze_phi_flavored(spec: &PhiSpec, flavor: Flavor) -> Result<PhiAnalysis, PhiError> {
    spec.validate()?;
    let layout = PairLayout::new(spec.dim, flavor);
    let exp = Expansion::new(spec, flavor);
    let weights = dominant_weights(spec.dim, spec.degree());
    let blocks: Vec<BlockRank> = weights
        .par_iter()
        .map(|w| {
            let b = build_block(spec, flavor, &exp, &layout, w);
            let (rank, method) = exact_rank(&b.matrix);
            BlockRank {
                weight: w.clone(),
                domain: b.domain.len(),
                codomain: b.codomain.len(),
                rank,
                method,
            }
        })
        .collect();
    let mut ker = DominantCharacter::new(spec.dim);
    let mut coker = DominantCharacter::new(spec.dim);
    let (mut rank, mut dd, mut cd) = (0u64, 0u64, 0u64);
    for b in &blocks {
        let w = Weight::new(b.weight.iter().map(|&x| x as i64).collect()).unwrap();
        ker.add(w.clone(), BigUint::from(b.domain - b.rank));
        coker.add(w, BigUint::from(b.codomain - b.rank));
        let o = orbit_size(&b.weight);
        rank += b.rank as u64 * o;
        dd += b.domain as u64 * o;
        cd += b.codomain as u64 * o;
    }
    Ok(PhiAnalysis {
        spec: *spec,
        flavor,
        rank,
        domain_dim: dd,
        codomain_dim: cd,
        ker_char: decompose(&ker)?,
        coker_char: decompose(&coker)?,
        blocks,
    })
}

/// Schur decomposition of the domain `Λ^{2n−i} ⊗ Sym^m(Λ²)` at rank `N`.
pub fn domain_character(spec: &PhiSpec) -> SchurMultiset {
    plethysm_sym_wedge2(spec.m, spec.dim).pieri_linear(spec.source_column())
}

/// Schur decomposition of the codomain `Λ^i ⊗ Sym^{m+n−i}(Λ²)` at rank `N`.
pub fn codomain_character(spec: &PhiSpec) -> SchurMultiset {
    plethysm_sym_wedge2(spec.target_sym(), spec.dim).pieri_linear(spec.i)
}

/// How the universal multisets were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StableRoute {
    /// `analyze_phi` at the stable dimension `2m + 2n − i`.
    Direct,
    /// Transposed map at dimension `m + 1`, diagrams transposed back.
    Transposed,
}

/// Universal kernel and cokernel multisets, as weights of length `2m+2n−i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableCone {
    pub n: usize,
    pub i: usize,
    pub m: usize,
    pub route: StableRoute,
    pub ker: SchurMultiset,
    pub coker: SchurMultiset,
}

/// Degrees up to which the direct route is used.
pub const DIRECT_STABLE_DEGREE: usize = 8;

fn transpose_multiset(m: &SchurMultiset, len: usize) -> Result<SchurMultiset, PhiError> {
    let mut out = SchurMultiset::new(len);
    for (w, c) in m.iter() {
        let p = w
            .to_partition()
            .ok_or_else(|| PhiError::Invalid(format!("non-polynomial kernel weight {w}")))?;
        out.add(Weight::from_partition(&p.conjugate(), len)?, c.clone());
    }
    Ok(out)
}

pub fn stable_cone_decomposition(n: usize, i: usize, m: usize) -> Result<StableCone, PhiError> {
    let d = 2 * m + 2 * n - i;
    let route = if d <= DIRECT_STABLE_DEGREE {
        StableRoute::Direct
    } else {
        StableRoute::Transposed
    };
    stable_cone_via(n, i, m, route)
}

pub fn stable_cone_via(n: usize, i: usize, m: usize, route: StableRoute) -> Result<StableCone, PhiError> {
    let d = 2 * m + 2 * n - i;
    let len = d.max(1);
    match route {
        StableRoute::Direct => {
            let a = analyze_phi(&PhiSpec::new(n, i, m, len)?)?;
            Ok(StableCone {
                n,
                i,
                m,
                route,
                ker: a.ker_char,
                coker: a.coker_char,
            })
        }
        StableRoute::Transposed => {
            let spec = PhiSpec::new(n, i, m, m + 1)?;
            let a = analyze_phi_flavored(&spec, Flavor::Transposed)?;
            let ker = transpose_multiset(&a.ker_char, len)?;
            let full = PhiSpec { dim: len, ..spec };
            let coker = ker.sub(&domain_character(&full)).clone();
            let mut coker = coker;
            coker.add_all(&codomain_character(&full));
            if !coker.is_genuine() {
                return Err(PhiError::Invalid(format!(
                    "cokernel of φ_{{{n},{i},{m}}} is not genuine: {coker}"
                )));
            }
            Ok(StableCone {
                n,
                i,
                m,
                route,
                ker,
                coker,
            })
        }
    }
}

/// Kernel zero and cokernel equal to codomain minus domain, valid whenever
/// `N ≤ 2n` because the map is then injective.
pub fn injective_cone(spec: &PhiSpec) -> Result<SchurMultiset, PhiError> {
    if spec.dim > 2 * spec.n {
        return Err(PhiError::Invalid(format!(
            "injectivity needs N ≤ 2n, got N = {} and n = {}",
            spec.dim, spec.n
        )));
    }
    let coker = codomain_character(spec).sub(&domain_character(spec));
    if !coker.is_genuine() {
        return Err(PhiError::Invalid(format!("codomain minus domain is virtual: {coker}")));
    }
    Ok(coker)
}

/// Total dimension of a character as a plain integer, for reporting.
pub fn dim_u64(m: &SchurMultiset) -> u64 {
    m.dim().to_u64().unwrap_or(u64::MAX)
}

/// Partition form of the weights of a polynomial multiset.
pub fn diagrams(m: &SchurMultiset) -> Vec<(Partition, BigInt)> {
    m.iter()
        .filter_map(|(w, c)| w.to_partition().map(|p| (p, c.clone())))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(len: usize, terms: &[&[u32]]) -> SchurMultiset {
        let mut m = SchurMultiset::new(len);
        for t in terms {
            m.add(Weight::from_partition(&Partition::new(t.to_vec()).unwrap(), len).unwrap(), 1);
        }
        m
    }

    #[test]
    fn identity_cases() {
        let a = build_phi_matrix(&PhiSpec::new(1, 0, 0, 3).unwrap()).unwrap();
        assert_eq!((a.domain_dim(), a.codomain_dim()), (3, 3));
        for b in a.blocks.values() {
            assert_eq!(b.matrix.to_dense(), vec![vec![1]]);
        }
        let a = build_phi_matrix(&PhiSpec::new(2, 2, 1, 4).unwrap()).unwrap();
        assert_eq!(a.domain_dim(), 36);
        for b in a.blocks.values() {
            assert_eq!(b.domain, b.codomain);
            for (r, row) in b.matrix.data.iter().enumerate() {
                assert_eq!(row, &vec![(r, 1)]);
            }
        }
    }

    #[test]
    fn top_exterior_power_block() {
        let a = build_phi_matrix(&PhiSpec::new(2, 0, 0, 4).unwrap()).unwrap();
        assert_eq!((a.domain_dim(), a.codomain_dim()), (1, 21));
        let nonzero: Vec<_> = a.blocks.values().filter(|b| !b.domain.is_empty()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].weight, vec![1, 1, 1, 1]);
        // Pfaffian expansion: three perfect matchings of four points.
        assert_eq!(nonzero[0].matrix.nnz(), 3);
    }

    #[test]
    fn analysis_examples() {
        let a = analyze_phi(&PhiSpec::new(2, 1, 0, 4).unwrap()).unwrap();
        assert_eq!(a.rank, 4);
        assert!(a.ker_char.is_zero());
        assert_eq!(a.coker_char, ms(4, &[&[2, 1]]));
        assert_eq!(a.coker_dim(), BigInt::from(20));

        let a = analyze_phi(&PhiSpec::new(2, 0, 0, 4).unwrap()).unwrap();
        assert_eq!(a.rank, 1);
        assert!(a.ker_char.is_zero());
        assert_eq!(a.coker_char, ms(4, &[&[2, 2]]));

        let a = analyze_phi(&PhiSpec::new(1, 0, 0, 3).unwrap()).unwrap();
        assert_eq!(a.rank, 3);
        assert!(a.ker_char.is_zero() && a.coker_char.is_zero());
    }

    #[test]
    fn stable_examples() {
        let s = stable_cone_decomposition(1, 0, 0).unwrap();
        assert!(s.ker.is_zero() && s.coker.is_zero());
        let s = stable_cone_decomposition(2, 0, 0).unwrap();
        assert!(s.ker.is_zero());
        assert_eq!(s.coker, ms(4, &[&[2, 2]]));
        let s = stable_cone_decomposition(2, 1, 0).unwrap();
        assert!(s.ker.is_zero());
        assert_eq!(s.coker, ms(3, &[&[2, 1]]));
    }

    #[test]
    fn exterior_square_of_exterior_square_is_kernel() {
        // φ_{1,0,1}: Λ² ⊗ Λ² → Sym²(Λ²) kills Λ²(Λ²) = Σ^{(2,1,1)}.
        let s = stable_cone_via(1, 0, 1, StableRoute::Direct).unwrap();
        assert_eq!(s.ker, ms(4, &[&[2, 1, 1]]));
        let t = stable_cone_via(1, 0, 1, StableRoute::Transposed).unwrap();
        assert_eq!(t, StableCone { route: StableRoute::Transposed, ..s });
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&[1, 1, 0, 0]), 6);
        assert_eq!(orbit_size(&[2, 1, 0]), 6);
        assert_eq!(orbit_size(&[3]), 1);
    }

    #[test]
    fn multigraph_counts() {
        // Degree (2,2,2) loopless: the triangle, (01)^2 impossible with 2 left at 2.
        let l = PairLayout::new(3, Flavor::Exterior);
        assert_eq!(multigraphs(&[2, 2, 2], &l).len(), 1);
        let l = PairLayout::new(2, Flavor::Transposed);
        // Degree (2,2) with loops: {aa,bb} or {ab,ab}.
        assert_eq!(multigraphs(&[2, 2], &l).len(), 2);
    }
}
