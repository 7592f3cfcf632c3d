//! Characters of GL_N in the Schur basis.
//!
//! Weights are weakly decreasing integer vectors of a fixed length. A
//! [`SchurMultiset`] is a finite integer combination of weights of one length,
//! i.e. a (possibly virtual) representation. Products reduce to Pieri
//! products with exterior powers.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{partitions_bounded, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("weight entries must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("weight length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{rows} rows do not fit in rank {rank}")]
    TooManyRows { rows: usize, rank: usize },
    #[error("tensor of virtual character unsupported")]
    Virtual,
    #[error("not a genuine character: multiplicity of {0} went negative")]
    NotGenuine(Weight),
    #[error("unsupported tensor product: {0}")]
    Unsupported(String),
}

/// Weakly decreasing integer vector indexing `Σ^λ` on a space of rank `len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self, SchurError> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::NotDecreasing(entries));
        }
        Ok(Weight { entries })
    }

    pub fn zero(len: usize) -> Self {
        Weight {
            entries: vec![0; len],
        }
    }

    /// `det^c` on a space of rank `len`.
    pub fn constant(len: usize, c: i64) -> Self {
        Weight {
            entries: vec![c; len],
        }
    }

    /// Pads a partition with zeros up to `len` rows.
    pub fn from_partition(p: &Partition, len: usize) -> Result<Self, SchurError> {
        if p.height() > len {
            return Err(SchurError::TooManyRows {
                rows: p.height(),
                rank: len,
            });
        }
        let mut entries: Vec<i64> = p.rows().iter().map(|&r| r as i64).collect();
        entries.resize(len, 0);
        Ok(Weight { entries })
    }

    /// Exterior power `Λ^k` on a space of rank `len`.
    pub fn column(k: usize, len: usize) -> Result<Self, SchurError> {
        Weight::from_partition(&Partition::column(k), len)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// The partition of a polynomial weight.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_polynomial() {
            return None;
        }
        Partition::new(self.entries.iter().map(|&e| e as u32).collect()).ok()
    }

    /// Number of nonzero rows of a polynomial weight.
    pub fn height(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Tensoring with `det^c`.
    pub fn shift(&self, c: i64) -> Weight {
        Weight {
            entries: self.entries.iter().map(|e| e + c).collect(),
        }
    }

    /// `(−λ)_i = −λ_{N+1−i}`: the weight of the dual representation.
    pub fn dual(&self) -> Weight {
        Weight {
            entries: self.entries.iter().rev().map(|e| -e).collect(),
        }
    }

    pub fn concat(&self, other: &Weight) -> Vec<i64> {
        self.entries.iter().chain(&other.entries).copied().collect()
    }

    /// Weight of `Σ^λ ⊗ Λ^k` terms: add one to `k` distinct entries, keeping monotonicity.
    pub fn pieri(&self, k: usize) -> Vec<Weight> {
        fn rec(w: &[i64], idx: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if idx == w.len() {
                if left == 0 {
                    out.push(Weight {
                        entries: cur.clone(),
                    });
                }
                return;
            }
            if w.len() - idx < left {
                return;
            }
            if left > 0 && (idx == 0 || w[idx] < cur[idx - 1]) {
                cur.push(w[idx] + 1);
                rec(w, idx + 1, left - 1, cur, out);
                cur.pop();
            }
            cur.push(w[idx]);
            rec(w, idx + 1, left, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        rec(&self.entries, 0, k, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = SchurError;
    fn try_from(v: Vec<i64>) -> Result<Self, SchurError> {
        Weight::new(v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.entries
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(−λ)`: negated and reversed. `n` must equal the weight length.
pub fn dualize(lambda: &Weight, n: usize) -> Result<Weight, SchurError> {
    if lambda.len() != n {
        return Err(SchurError::LengthMismatch {
            expected: n,
            got: lambda.len(),
        });
    }
    Ok(lambda.dual())
}

/// Finite integer combination of weights of a single length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SchurMultiset {
    len: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl SchurMultiset {
    pub fn new(len: usize) -> Self {
        SchurMultiset {
            len,
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(w: Weight) -> Self {
        let mut m = SchurMultiset::new(w.len());
        m.add(w, BigInt::one());
        m
    }

    /// The trivial representation of `GL_len`.
    pub fn trivial(len: usize) -> Self {
        SchurMultiset::singleton(Weight::zero(len))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&mut self, w: Weight, c: impl Into<BigInt>) {
        assert_eq!(w.len(), self.len, "weight length mismatch");
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_all(&mut self, other: &SchurMultiset) {
        self.add_scaled(other, &BigInt::one());
    }

    pub fn add_scaled(&mut self, other: &SchurMultiset, c: &BigInt) {
        for (w, m) in &other.terms {
            self.add(w.clone(), m * c);
        }
    }

    pub fn sub(&self, other: &SchurMultiset) -> SchurMultiset {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1));
        out
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in lexicographically descending weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys().rev()
    }

    pub fn is_genuine(&self) -> bool {
        self.terms.values().all(|m| m.is_positive())
    }

    /// `Σ mult · dim Σ^w(k^len)`.
    pub fn dim(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(w, m)| m * BigInt::from(weyl_dim(w, self.len)))
            .sum()
    }

    /// Tensor with `det^c`.
    pub fn shift(&self, c: i64) -> SchurMultiset {
        self.map_weights(|w| w.shift(c))
    }

    /// Dual representation.
    pub fn dual(&self) -> SchurMultiset {
        self.map_weights(Weight::dual)
    }

    fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> SchurMultiset {
        let mut out = SchurMultiset::new(self.len);
        for (w, m) in &self.terms {
            out.add(f(w), m.clone());
        }
        out
    }

    /// Re-reads polynomial weights at another rank; rows past the new rank vanish.
    pub fn at_rank(&self, len: usize) -> Result<SchurMultiset, SchurError> {
        let mut out = SchurMultiset::new(len);
        for (w, m) in &self.terms {
            let p = w.to_partition().ok_or_else(|| {
                SchurError::Unsupported(format!("rank change of non-polynomial weight {w}"))
            })?;
            if p.height() <= len {
                out.add(Weight::from_partition(&p, len)?, m.clone());
            }
        }
        Ok(out)
    }

    /// Largest row count among weights.
    pub fn max_height(&self) -> usize {
        self.terms.keys().map(Weight::height).max().unwrap_or(0)
    }

    /// Componentwise minimum with another multiset (the part common to both).
    pub fn common_with(&self, other: &SchurMultiset) -> SchurMultiset {
        let mut out = SchurMultiset::new(self.len);
        for (w, m) in &self.terms {
            let o = other.get(w);
            let c = if *m < o { m.clone() } else { o };
            if c.is_positive() {
                out.add(w.clone(), c);
            }
        }
        out
    }

    /// Linear Pieri product with `Λ^k`, virtual input allowed.
    pub fn pieri_linear(&self, k: usize) -> SchurMultiset {
        let mut out = SchurMultiset::new(self.len);
        if k > self.len {
            return out;
        }
        for (w, m) in &self.terms {
            for v in w.pieri(k) {
                out.add(v, m.clone());
            }
        }
        out
    }

    /// Tensor with `Λ^k` of the dual space: `Λ^k V^∨ = Λ^{N−k} V ⊗ det^{−1}`.
    pub fn pieri_dual_linear(&self, k: usize) -> SchurMultiset {
        if k > self.len {
            return SchurMultiset::new(self.len);
        }
        self.pieri_linear(self.len - k).shift(-1)
    }

    /// A single term `det^c ⊗ Λ^k` when the multiset has that shape.
    pub fn as_column(&self) -> Option<(usize, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, m) = self.terms.iter().next().unwrap();
        if !m.is_one() {
            return None;
        }
        let low = *w.entries().last()?;
        let k = w.entries().iter().filter(|&&e| e == low + 1).count();
        let ok = w.entries().iter().all(|&e| e == low || e == low + 1);
        ok.then_some((k, low))
    }

    /// Tensor product; Pieri when one factor is a twisted exterior power.
    pub fn tensor(&self, other: &SchurMultiset) -> Result<SchurMultiset, SchurError> {
        if self.len != other.len {
            return Err(SchurError::LengthMismatch {
                expected: self.len,
                got: other.len,
            });
        }
        if let Some((k, c)) = other.as_column() {
            return Ok(self.pieri_linear(k).shift(c));
        }
        if let Some((k, c)) = self.as_column() {
            return Ok(other.pieri_linear(k).shift(c));
        }
        let mut out = SchurMultiset::new(self.len);
        for (w, m) in other.iter() {
            out.add_scaled(&self.tensor_weight(w), m);
        }
        Ok(out)
    }

    /// Tensor with a single `Σ^w` through the dual Jacobi–Trudi determinant
    /// `s_λ = det(e_{λ'_a − a + b})`.
    fn tensor_weight(&self, w: &Weight) -> SchurMultiset {
        fn rec(
            acc: &SchurMultiset,
            parts: &[i64],
            row: usize,
            used: &mut Vec<bool>,
            sign: i64,
            out: &mut SchurMultiset,
        ) {
            if row == parts.len() {
                out.add_scaled(acc, &BigInt::from(sign));
                return;
            }
            for b in 0..parts.len() {
                if used[b] {
                    continue;
                }
                let t = parts[row] - row as i64 + b as i64;
                if t < 0 || t > acc.len as i64 {
                    continue;
                }
                let inv = (0..b).filter(|&c| !used[c]).count();
                used[b] = true;
                let next = acc.pieri_linear(t as usize);
                if !next.is_zero() {
                    let s = if inv % 2 == 0 { sign } else { -sign };
                    rec(&next, parts, row + 1, used, s, out);
                }
                used[b] = false;
            }
        }
        let low = w.entries().last().copied().unwrap_or(0);
        let p = w
            .shift(-low)
            .to_partition()
            .expect("shifted weight is polynomial");
        let parts: Vec<i64> = p.conjugate().rows().iter().map(|&x| x as i64).collect();
        let mut out = SchurMultiset::new(self.len);
        rec(self, &parts, 0, &mut vec![false; parts.len()], 1, &mut out);
        out.shift(low)
    }
}

impl fmt::Display for SchurMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SchurMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rank {}] {}", self.len, self)
    }
}

/// [`big_int_serde`] for optional values.
pub mod opt_big_int_serde {
    use super::*;

    #[derive(Deserialize)]
    struct Wrap(#[serde(with = "super::big_int_serde")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => super::big_int_serde::serialize(b, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Serializes an arbitrary-precision integer as a JSON number when it fits in
/// 64 bits and as a decimal string otherwise.
pub mod big_int_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(BigInt::from(x)),
            Repr::Str(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    weight: Weight,
    #[serde(with = "big_int_serde")]
    mult: BigInt,
}

#[derive(Serialize, Deserialize)]
struct MultisetRepr {
    rank: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SchurMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MultisetRepr {
            rank: self.len,
            terms: self
                .iter()
                .map(|(w, m)| TermRepr {
                    weight: w.clone(),
                    mult: m.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MultisetRepr::deserialize(d)?;
        let mut out = SchurMultiset::new(repr.rank);
        for t in repr.terms {
            if t.weight.len() != repr.rank {
                return Err(de::Error::custom("weight length differs from rank"));
            }
            out.add(t.weight, t.mult);
        }
        Ok(out)
    }
}

/// `Λ^k ⊗ Σ^μ` on a space of rank `max_rows`.
pub fn pieri(mu: &Partition, k: usize, max_rows: usize) -> SchurMultiset {
    match Weight::from_partition(mu, max_rows) {
        Ok(w) => SchurMultiset::singleton(w).pieri_linear(k),
        Err(_) => SchurMultiset::new(max_rows),
    }
}

/// `Sym^m(Λ²)` on a space of rank `max_rows`: all even-column diagrams of `2m` boxes.
pub fn plethysm_sym_wedge2(m: usize, max_rows: usize) -> SchurMultiset {
    let mut out = SchurMultiset::new(max_rows);
    for nu in partitions_bounded(m, max_rows / 2, m) {
        let mut rows: Vec<u32> = nu.rows().iter().flat_map(|&r| [r, r]).collect();
        rows.resize(max_rows, 0);
        let w = Weight::new(rows.into_iter().map(i64::from).collect()).unwrap();
        out.add(w, 1);
    }
    out
}

/// Termwise Pieri product of a genuine character with `Λ^k`.
pub fn tensor_by_exterior(
    c: &SchurMultiset,
    k: usize,
    max_rows: usize,
) -> Result<SchurMultiset, SchurError> {
    if !c.is_genuine() {
        return Err(SchurError::Virtual);
    }
    let c = if c.len() == max_rows {
        c.clone()
    } else {
        c.at_rank(max_rows)?
    };
    Ok(c.pieri_linear(k))
}

/// `dim Σ^λ(k^N)` by the Weyl product formula.
pub fn weyl_dim(lambda: &Weight, n: usize) -> BigUint {
    let mut e = lambda.entries().to_vec();
    if e.len() > n {
        if e[n..].iter().any(|&x| x != 0) {
            return BigUint::zero();
        }
        e.truncate(n);
    }
    e.resize(n, 0);
    if e.windows(2).any(|w| w[0] < w[1]) {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (e[i] - e[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    num / den
}

/// Dominant-weight multiplicities of a representation of `GL_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominantCharacter {
    pub dim_n: usize,
    pub weights: BTreeMap<Weight, BigUint>,
}

impl DominantCharacter {
    pub fn new(dim_n: usize) -> Self {
        DominantCharacter {
            dim_n,
            weights: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, w: Weight, c: BigUint) {
        assert_eq!(w.len(), self.dim_n);
        if c.is_zero() {
            return;
        }
        *self.weights.entry(w).or_default() += c;
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dominant character of a genuine Schur multiset.
    pub fn of_multiset(m: &SchurMultiset) -> Result<Self, SchurError> {
        if !m.is_genuine() {
            return Err(SchurError::Virtual);
        }
        let mut out = DominantCharacter::new(m.len());
        for (w, c) in m.iter() {
            let ch = dominant_char_of_weight(w);
            for (mu, k) in ch.weights {
                out.add(mu, k * c.magnitude());
            }
        }
        Ok(out)
    }
}

thread_local! {
    static KOSTKA: RefCell<HashMap<(Vec<u32>, Vec<u32>), BigUint>> = RefCell::new(HashMap::new());
}

/// `μ ⊴ λ` in dominance order, both of equal size.
fn dominated(mu: &[u32], lambda: &[u32]) -> bool {
    let mut a = 0u64;
    let mut b = 0u64;
    for i in 0..mu.len().max(lambda.len()) {
        a += *mu.get(i).unwrap_or(&0) as u64;
        b += *lambda.get(i).unwrap_or(&0) as u64;
        if a > b {
            return false;
        }
    }
    true
}

/// Kostka number `K_{λμ}`: semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> BigUint {
    if lambda.size() != mu.size() || !dominated(mu.rows(), lambda.rows()) {
        return BigUint::zero();
    }
    kostka_rows(lambda.rows(), mu.rows())
}

fn kostka_rows(lambda: &[u32], mu: &[u32]) -> BigUint {
    if mu.is_empty() {
        return if lambda.is_empty() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if lambda.len() > mu.len() {
        return BigUint::zero();
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = KOSTKA.with(|t| t.borrow().get(&key).cloned()) {
        return v;
    }
    // The boxes holding the largest letter form a horizontal strip.
    let (&last, rest) = mu.split_last().unwrap();
    let mut total = BigUint::zero();
    let mut kappa = lambda.to_vec();
    fn rec(
        lambda: &[u32],
        idx: usize,
        left: u32,
        kappa: &mut Vec<u32>,
        rest: &[u32],
        total: &mut BigUint,
    ) {
        if idx == lambda.len() {
            if left == 0 {
                let mut k = kappa.clone();
                while k.last() == Some(&0) {
                    k.pop();
                }
                *total += kostka_rows(&k, rest);
            }
            return;
        }
        let lower = lambda.get(idx + 1).copied().unwrap_or(0);
        let max_remove = (lambda[idx] - lower).min(left);
        for r in 0..=max_remove {
            kappa[idx] = lambda[idx] - r;
            rec(lambda, idx + 1, left - r, kappa, rest, total);
        }
        kappa[idx] = lambda[idx];
    }
    rec(lambda, 0, last, &mut kappa, rest, &mut total);
    KOSTKA.with(|t| t.borrow_mut().insert(key, total.clone()));
    total
}

/// Dominant-weight multiplicities of `Σ^λ(k^N)`.
pub fn dominant_char_of_irrep(lambda: &Partition, n: usize) -> DominantCharacter {
    let mut out = DominantCharacter::new(n);
    if lambda.height() > n {
        return out;
    }
    for mu in partitions_bounded(lambda.size(), n, lambda.width() as usize) {
        let k = kostka(lambda, &mu);
        if !k.is_zero() {
            out.add(Weight::from_partition(&mu, n).unwrap(), k);
        }
    }
    out
}

/// Dominant character of an arbitrary weight, via a determinant shift.
pub fn dominant_char_of_weight(w: &Weight) -> DominantCharacter {
    let n = w.len();
    let low = w.entries().last().copied().unwrap_or(0);
    let p = w.shift(-low).to_partition().unwrap();
    let ch = dominant_char_of_irrep(&p, n);
    let mut out = DominantCharacter::new(n);
    for (mu, k) in ch.weights {
        out.add(mu.shift(low), k);
    }
    out
}

/// Inverse of the Kostka matrix by greedy subtraction at the lex-max weight.
pub fn decompose(c: &DominantCharacter) -> Result<SchurMultiset, SchurError> {
    let n = c.dim_n;
    let mut rem: BTreeMap<Weight, BigInt> = c
        .weights
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(w, m)| (w.clone(), BigInt::from(m.clone())))
        .collect();
    let mut out = SchurMultiset::new(n);
    while let Some((top, m)) = rem.iter().next_back().map(|(w, m)| (w.clone(), m.clone())) {
        if m.is_negative() {
            return Err(SchurError::NotGenuine(top));
        }
        for (mu, k) in dominant_char_of_weight(&top).weights {
            let e = rem.entry(mu.clone()).or_default();
            *e -= &m * BigInt::from(k);
            if e.is_zero() {
                rem.remove(&mu);
            } else if e.is_negative() {
                return Err(SchurError::NotGenuine(mu));
            }
        }
        out.add(top, m);
    }
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn w(e: &[i64]) -> Weight {
        Weight::new(e.to_vec()).unwrap()
    }

    fn ms(len: usize, terms: &[&[u32]]) -> SchurMultiset {
        let mut m = SchurMultiset::new(len);
        for t in terms {
            m.add(Weight::from_partition(&p(t), len).unwrap(), 1);
        }
        m
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri(&p(&[1]), 1, 4), ms(4, &[&[2], &[1, 1]]));
        assert_eq!(
            pieri(&p(&[1, 1, 1]), 2, 5),
            ms(5, &[&[2, 2, 1], &[2, 1, 1, 1], &[1, 1, 1, 1, 1]])
        );
        assert!(pieri(&Partition::empty(), 3, 2).is_zero());
    }

    #[test]
    fn plethysm_examples() {
        assert_eq!(plethysm_sym_wedge2(2, 4), ms(4, &[&[2, 2], &[1, 1, 1, 1]]));
        assert_eq!(plethysm_sym_wedge2(0, 3), SchurMultiset::trivial(3));
        assert_eq!(plethysm_sym_wedge2(1, 4), ms(4, &[&[1, 1]]));
    }

    #[test]
    fn tensor_by_exterior_examples() {
        let c = ms(4, &[&[1, 1]]);
        assert_eq!(
            tensor_by_exterior(&c, 1, 4).unwrap(),
            ms(4, &[&[2, 1], &[1, 1, 1]])
        );
        assert_eq!(tensor_by_exterior(&c, 0, 4).unwrap(), c);
        let c = ms(5, &[&[2, 2], &[1, 1, 1, 1]]);
        assert_eq!(
            tensor_by_exterior(&c, 1, 5).unwrap(),
            ms(5, &[&[3, 2], &[2, 2, 1], &[2, 1, 1, 1], &[1, 1, 1, 1, 1]])
        );
        let virt = ms(4, &[&[1]]).sub(&ms(4, &[&[2]]));
        assert_eq!(tensor_by_exterior(&virt, 1, 4), Err(SchurError::Virtual));
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(weyl_dim(&w(&[1, 1]), 4), BigUint::from(6u32));
        assert_eq!(weyl_dim(&w(&[2, 2]), 4), BigUint::from(20u32));
        assert_eq!(weyl_dim(&w(&[1, 1, 1, 1, 1]), 4), BigUint::zero());
        assert_eq!(weyl_dim(&w(&[0, -1, -1]), 3), BigUint::from(3u32));
    }

    #[test]
    fn kostka_examples() {
        let ch = dominant_char_of_irrep(&p(&[1, 1]), 2);
        assert_eq!(ch.weights.len(), 1);
        let ch = dominant_char_of_irrep(&p(&[2, 1]), 3);
        assert_eq!(ch.weights[&w(&[2, 1, 0])], BigUint::from(1u32));
        assert_eq!(ch.weights[&w(&[1, 1, 1])], BigUint::from(2u32));
        assert_eq!(ch.weights.len(), 2);
        let ch = dominant_char_of_irrep(&p(&[2]), 2);
        assert_eq!(ch.weights[&w(&[2, 0])], BigUint::from(1u32));
        assert_eq!(ch.weights[&w(&[1, 1])], BigUint::from(1u32));
    }

    #[test]
    fn decompose_examples() {
        let ch = dominant_char_of_irrep(&p(&[2, 1]), 3);
        assert_eq!(decompose(&ch).unwrap(), ms(3, &[&[2, 1]]));
        let prod = pieri(&p(&[1, 1]), 1, 4);
        let ch = DominantCharacter::of_multiset(&prod).unwrap();
        assert_eq!(decompose(&ch).unwrap(), ms(4, &[&[2, 1], &[1, 1, 1]]));
        assert!(decompose(&DominantCharacter::new(3)).unwrap().is_zero());
        let mut bad = DominantCharacter::new(2);
        bad.add(w(&[2, 0]), BigUint::one());
        assert!(matches!(decompose(&bad), Err(SchurError::NotGenuine(_))));
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize(&w(&[1, 0, 0]), 3).unwrap(), w(&[0, 0, -1]));
        assert_eq!(dualize(&w(&[0]), 1).unwrap(), w(&[0]));
        assert_eq!(dualize(&w(&[2, 1, 0, 0]), 4).unwrap(), w(&[0, 0, -1, -2]));
    }

    #[test]
    fn column_detection() {
        let c = SchurMultiset::singleton(w(&[0, -1, -1]));
        assert_eq!(c.as_column(), Some((1, -1)));
        let c = SchurMultiset::singleton(w(&[2, 2, 2]));
        assert_eq!(c.as_column(), Some((0, 2)));
        assert_eq!(SchurMultiset::singleton(w(&[2, 0, 0])).as_column(), None);
    }

    #[test]
    fn serde_round_trip() {
        let mut m = ms(3, &[&[2, 1], &[1, 1, 1]]);
        m.add(w(&[3, 0, 0]), BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap());
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with(r#"{"rank":3,"terms":[{"weight":[3,0,0],"mult":"1234"#));
        let back: SchurMultiset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }
}
