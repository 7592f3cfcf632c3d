//! Young diagrams, profiles and the even-column subdiagram calculus.
//!
//! A [`Partition`] is stored in row form with trailing zeros trimmed. The
//! central quantity here is `mult(λ, k)`: the number of subdiagrams `μ ⊂ λ`
//! with even columns such that `λ/μ` is a vertical strip of `k` boxes. It is
//! available both by direct enumeration ([`enumerate_diags`]) and through the
//! profile reduction ([`evenize`] followed by [`even_profile_count`]).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("rows must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("rows must be non-negative: {0:?}")]
    Negative(Vec<i64>),
    #[error("profile is already even")]
    AlreadyEven,
    #[error("duplicated odd column in {0}")]
    DuplicatedOddColumn(Partition),
    #[error("profile has an odd segment: {0}")]
    OddSegment(Profile),
    #[error("{sub} is not contained in {parent} as a vertical strip")]
    NotVerticalStrip { parent: Partition, sub: Partition },
}

/// A Young diagram in canonical row form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    pub fn new(rows: Vec<u32>) -> Result<Self, PartitionError> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(
                rows.iter().map(|&r| r as i64).collect(),
            ));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Partition { rows })
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// Single column of height `k`.
    pub fn column(k: usize) -> Self {
        Partition { rows: vec![1; k] }
    }

    /// Single row of length `k`.
    pub fn row(k: u32) -> Self {
        Partition::new(vec![k]).unwrap()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Row `i`, zero past the last row.
    pub fn row_len(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes `|λ|`.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    /// Number of non-empty rows.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> u32 {
        self.row_len(0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.column_lengths();
        Partition {
            rows: cols.into_iter().map(|c| c as u32).collect(),
        }
    }

    /// Column lengths, longest first.
    pub fn column_lengths(&self) -> Vec<usize> {
        (0..self.width())
            .map(|c| self.rows.iter().take_while(|&&r| r > c).count())
            .collect()
    }

    pub fn has_even_columns(&self) -> bool {
        self.column_lengths().iter().all(|c| c % 2 == 0)
    }

    pub fn odd_column_count(&self) -> usize {
        self.column_lengths().iter().filter(|c| *c % 2 == 1).count()
    }

    /// No odd column length occurs twice.
    pub fn is_mildly_odd(&self) -> bool {
        let cols = self.column_lengths();
        let mut seen = BTreeSet::new();
        cols.into_iter()
            .filter(|c| c % 2 == 1)
            .all(|c| seen.insert(c))
    }

    /// Runs of equal row lengths, read top to bottom (the rightmost run first).
    pub fn profile(&self) -> Profile {
        let mut segments: Vec<u32> = Vec::new();
        let mut prev = None;
        for &r in &self.rows {
            if prev == Some(r) {
                *segments.last_mut().unwrap() += 1;
            } else {
                segments.push(1);
                prev = Some(r);
            }
        }
        Profile { segments }
    }

    /// Rowwise containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.height() <= self.height()
            && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;

    fn try_from(rows: Vec<i64>) -> Result<Self, Self::Error> {
        if rows.iter().any(|&r| r < 0) {
            return Err(PartitionError::Negative(rows));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(rows));
        }
        Partition::new(rows.into_iter().map(|r| r as u32).collect())
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Segment lengths of the rightmost-box runs. Zero segments are kept: the
/// evenization step can produce them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile {
    segments: Vec<u32>,
}

impl Profile {
    pub fn new(segments: Vec<u32>) -> Self {
        Profile { segments }
    }

    pub fn segments(&self) -> &[u32] {
        &self.segments
    }

    pub fn total(&self) -> u32 {
        self.segments.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        self.segments.iter().all(|s| s % 2 == 0)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.segments)
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Certificate that `parent/sub` is a vertical strip of `size` boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalStripWitness {
    parent: Partition,
    sub: Partition,
    size: usize,
}

impl VerticalStripWitness {
    /// Removed boxes must sit in distinct rows: `0 ≤ parent_i − sub_i ≤ 1`.
    pub fn new(parent: Partition, sub: Partition) -> Result<Self, PartitionError> {
        let ok = parent.contains(&sub)
            && (0..parent.height()).all(|i| parent.row_len(i) - sub.row_len(i) <= 1);
        if !ok {
            return Err(PartitionError::NotVerticalStrip { parent, sub });
        }
        let size = parent.size() - sub.size();
        Ok(VerticalStripWitness { parent, sub, size })
    }

    pub fn parent(&self) -> &Partition {
        &self.parent
    }

    pub fn sub(&self) -> &Partition {
        &self.sub
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// The conjugate partition read as column lengths.
pub fn column_lengths(lambda: &Partition) -> Vec<usize> {
    lambda.column_lengths()
}

pub fn has_even_columns(lambda: &Partition) -> bool {
    lambda.has_even_columns()
}

pub fn is_mildly_odd(lambda: &Partition) -> bool {
    lambda.is_mildly_odd()
}

pub fn profile(lambda: &Partition) -> Profile {
    lambda.profile()
}

/// All subdiagrams `μ` of `λ` such that `λ/μ` is a vertical strip of `k` boxes.
pub fn vertical_strip_removals(lambda: &Partition, k: usize) -> Vec<Partition> {
    fn rec(
        rows: &[u32],
        idx: usize,
        left: usize,
        prev: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if idx == rows.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
            }
            return;
        }
        // Not enough rows remain to remove `left` boxes.
        if rows.len() - idx < left {
            return;
        }
        let r = rows[idx];
        if r <= prev {
            cur.push(r);
            rec(rows, idx + 1, left, r, cur, out);
            cur.pop();
        }
        if left > 0 && r >= 1 && r - 1 <= prev {
            cur.push(r - 1);
            rec(rows, idx + 1, left - 1, r - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda.rows(), 0, k, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// The set `diags(λ, k)` of even-column subdiagrams with a vertical strip complement.
pub fn enumerate_diags(lambda: &Partition, k: usize) -> BTreeSet<Partition> {
    vertical_strip_removals(lambda, k)
        .into_iter()
        .filter(|mu| mu.has_even_columns())
        .collect()
}

/// How [`mult_with`] evaluates the count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultMethod {
    /// Profile reduction; zero without work for diagrams that are not mildly odd.
    Profile,
    /// Exhaustive subdiagram enumeration.
    Enumerate,
}

pub fn mult(lambda: &Partition, k: usize) -> u64 {
    mult_with(lambda, k, MultMethod::Profile)
}

pub fn mult_with(lambda: &Partition, k: usize, method: MultMethod) -> u64 {
    match method {
        MultMethod::Enumerate => enumerate_diags(lambda, k).len() as u64,
        MultMethod::Profile => match evenize(lambda) {
            Err(_) => 0,
            Ok((even, odd)) => {
                if k < odd {
                    0
                } else {
                    even_profile_count(&even, (k - odd) as i64).unwrap()
                }
            }
        },
    }
}

/// One evenization step at the first odd segment.
pub fn evenize_step(h: &Profile) -> Result<Profile, PartitionError> {
    let seg = h.segments();
    let i = seg
        .iter()
        .position(|s| s % 2 == 1)
        .ok_or(PartitionError::AlreadyEven)?;
    let mut out = seg.to_vec();
    out[i] -= 1;
    if i + 1 < out.len() {
        out[i + 1] -= 1;
    }
    Ok(Profile::new(out))
}

/// Evenized profile of a mildly odd diagram together with the step count.
pub fn evenize(lambda: &Partition) -> Result<(Profile, usize), PartitionError> {
    if !lambda.is_mildly_odd() {
        return Err(PartitionError::DuplicatedOddColumn(lambda.clone()));
    }
    let mut h = lambda.profile();
    let mut steps = 0;
    while !h.is_even() {
        h = evenize_step(&h)?;
        steps += 1;
    }
    Ok((h, steps))
}

/// Number of tuples of even `y_i` with `0 ≤ y_i ≤ h_i` and `Σ y_i = k`.
pub fn even_profile_count(h: &Profile, k: i64) -> Result<u64, PartitionError> {
    if !h.is_even() {
        return Err(PartitionError::OddSegment(h.clone()));
    }
    if k < 0 || k % 2 == 1 {
        return Ok(0);
    }
    let target = (k / 2) as usize;
    // Convolution of the indicator functions of [0, h_i / 2].
    let mut counts = vec![0u64; target + 1];
    counts[0] = 1;
    for &s in h.segments() {
        let half = (s / 2) as usize;
        let mut next = vec![0u64; target + 1];
        for (t, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for y in 0..=half.min(target - t) {
                next[t + y] += c;
            }
        }
        counts = next;
    }
    Ok(counts[target])
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, n)
}

/// Partitions of `n` with at most `max_parts` rows and rows at most `max_part`.
pub fn partitions_bounded(n: usize, max_parts: usize, max_part: usize) -> Vec<Partition> {
    fn rec(n: usize, max_parts: usize, max_part: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { rows: cur.clone() });
            return;
        }
        if max_parts == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            // Remaining parts are at most p each.
            if p * max_parts < n {
                break;
            }
            cur.push(p as u32);
            rec(n - p, max_parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `max_boxes` boxes.
pub fn partitions_up_to(max_boxes: usize) -> Vec<Partition> {
    (0..=max_boxes).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form_trims_zeros() {
        assert_eq!(p(&[3, 1, 0, 0]).rows(), &[3, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::try_from(vec![2, -1]).is_err());
    }

    #[test]
    fn column_length_examples() {
        assert_eq!(column_lengths(&p(&[2, 2])), vec![2, 2]);
        assert_eq!(column_lengths(&p(&[2, 1])), vec![2, 1]);
        assert_eq!(column_lengths(&p(&[4, 4, 3, 2, 2, 2, 1])), vec![7, 6, 3, 2]);
    }

    #[test]
    fn parity_predicates() {
        assert!(has_even_columns(&p(&[2, 2])));
        assert!(!has_even_columns(&p(&[2, 1])));
        assert!(has_even_columns(&Partition::empty()));
        assert!(is_mildly_odd(&p(&[2, 1])));
        assert!(is_mildly_odd(&p(&[2, 2])));
        assert!(!is_mildly_odd(&p(&[3, 1])));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(&p(&[4, 4, 3, 2, 2, 2, 1])).segments(), &[2, 1, 3, 1]);
        assert_eq!(profile(&p(&[1])).segments(), &[1]);
        assert_eq!(profile(&p(&[2, 2])).segments(), &[2]);
        assert!(profile(&Partition::empty()).segments().is_empty());
    }

    #[test]
    fn diags_examples() {
        let d = enumerate_diags(&p(&[2, 2]), 2);
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![p(&[1, 1])]);
        let d = enumerate_diags(&p(&[1, 1]), 0);
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![p(&[1, 1])]);
        assert!(enumerate_diags(&p(&[2, 1]), 3).is_empty());
    }

    #[test]
    fn diags_are_vertical_strips() {
        let lambda = p(&[4, 3, 3, 1, 1]);
        for k in 0..=lambda.height() {
            for mu in enumerate_diags(&lambda, k) {
                let w = VerticalStripWitness::new(lambda.clone(), mu.clone()).unwrap();
                assert_eq!(w.size(), k);
                assert!(mu.has_even_columns());
            }
        }
    }

    #[test]
    fn witness_rejects_horizontal_strip() {
        assert!(VerticalStripWitness::new(p(&[2]), Partition::empty()).is_err());
        assert!(VerticalStripWitness::new(p(&[1, 1]), Partition::empty()).is_ok());
    }

    #[test]
    fn mult_examples() {
        assert_eq!(mult(&p(&[2, 1]), 1), 1);
        assert_eq!(mult(&p(&[2, 1]), 0), 0);
        for k in 0..6 {
            assert_eq!(mult(&p(&[3, 1]), k), 0);
            assert_eq!(mult_with(&p(&[3, 1]), k, MultMethod::Enumerate), 0);
        }
    }

    #[test]
    fn evenize_step_examples() {
        let step = |s: &[u32]| evenize_step(&Profile::new(s.to_vec())).unwrap();
        assert_eq!(step(&[1, 1]).segments(), &[0, 0]);
        assert_eq!(step(&[3]).segments(), &[2]);
        assert_eq!(step(&[2, 1]).segments(), &[2, 0]);
        assert_eq!(
            evenize_step(&Profile::new(vec![2, 4])),
            Err(PartitionError::AlreadyEven)
        );
    }

    #[test]
    fn evenize_examples() {
        let (h, s) = evenize(&p(&[2, 1])).unwrap();
        assert_eq!((h.segments(), s), (&[0u32, 0][..], 1));
        let (h, s) = evenize(&p(&[2, 2])).unwrap();
        assert_eq!((h.segments(), s), (&[2u32][..], 0));
        let (h, s) = evenize(&p(&[1])).unwrap();
        assert_eq!((h.segments(), s), (&[0u32][..], 1));
        assert!(matches!(
            evenize(&p(&[3, 1])),
            Err(PartitionError::DuplicatedOddColumn(_))
        ));
    }

    #[test]
    fn even_profile_count_examples() {
        let c = |s: &[u32], k| even_profile_count(&Profile::new(s.to_vec()), k).unwrap();
        assert_eq!(c(&[2], 0), 1);
        assert_eq!(c(&[2, 2], 2), 2);
        assert_eq!(c(&[0, 0], 1), 0);
        assert_eq!(c(&[4, 2], -2), 0);
        assert!(even_profile_count(&Profile::new(vec![1]), 0).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_bounded(6, 2, 6).len(), 4);
    }

    #[test]
    fn serde_form() {
        let lambda = p(&[4, 4, 3, 2, 2, 2, 1]);
        assert_eq!(serde_json::to_string(&lambda).unwrap(), "[4,4,3,2,2,2,1]");
        let back: Partition = serde_json::from_str("[3,1,0]").unwrap();
        assert_eq!(back, p(&[3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
