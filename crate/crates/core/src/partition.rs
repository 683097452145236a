//! Integer partitions and multipartitions indexed by the irreducibles of a
//! finite group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the unique partition of zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse(format!(
                "{parts:?} is not a weakly decreasing sequence of positive integers"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or `∅` when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// First row length; 0 for `∅`.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Prepends a first row of length `first`; `None` if that row would be
    /// shorter than the current first row.
    pub fn with_first_row(&self, first: usize) -> Option<Partition> {
        if first < self.first() {
            return None;
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        if first > 0 {
            parts.push(first);
        }
        parts.extend_from_slice(&self.parts);
        Some(Partition { parts })
    }

    /// Removes the first row.
    pub fn without_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn standard_tableaux(&self) -> u128 {
        let n = self.size();
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.parts[j] - i - 1) as u128;
            }
        }
        factorial(n) / hooks
    }

    /// Multiplicities `m_r` of each part size `r`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Order of the centralizer in `S_n` of a permutation with this cycle type.
    pub fn centralizer_order(&self) -> u128 {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(r, &m)| (r as u128).pow(m as u32) * factorial(m))
            .product()
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, &mut current, &mut out);
        out
    }
}

fn fill_partitions(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for p in (1..=remaining.min(max)).rev() {
        current.push(p);
        fill_partitions(remaining - p, p, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// The hook `(n-k, 1^k)`, for `0 <= k <= n-1`.
pub fn hook(n: usize, k: usize) -> Result<Partition> {
    if n == 0 || k >= n {
        return Err(Error::InvalidHook { n, k });
    }
    let mut parts = vec![n - k];
    parts.extend(std::iter::repeat_n(1, k));
    Ok(Partition::from_sorted(parts))
}

/// The two-row shape `(n-k, k)`, for `0 <= k <= n/2`.
pub fn two_row(n: usize, k: usize) -> Result<Partition> {
    if n == 0 || 2 * k > n {
        return Err(Error::InvalidTwoRow { n, k });
    }
    let mut parts = vec![n - k];
    if k > 0 {
        parts.push(k);
    }
    Ok(Partition::from_sorted(parts))
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `(3,1)`, `3,1`, `()`, `∅` and the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() || inner == "∅" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A partition for each irreducible of the ambient group, in the group's
/// declared irreducible order. Entry 0 belongs to the unit object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiPartition {
    entries: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(entries: Vec<Partition>) -> Self {
        assert!(!entries.is_empty(), "a multipartition needs at least the unit entry");
        MultiPartition { entries }
    }

    /// The all-`∅` label over `m` irreducibles.
    pub fn empty(m: usize) -> Self {
        Self::new(vec![Partition::empty(); m])
    }

    /// Label with a single nonempty entry.
    pub fn single(m: usize, index: usize, p: Partition) -> Self {
        let mut entries = vec![Partition::empty(); m];
        entries[index] = p;
        Self::new(entries)
    }

    /// The trivial representation `λ(1) = (n)` of `S_n(G)`.
    pub fn trivial(m: usize, n: usize) -> Self {
        Self::single(m, 0, Partition::row(n))
    }

    pub fn entries(&self) -> &[Partition] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> &Partition {
        &self.entries[index]
    }

    pub fn unit(&self) -> &Partition {
        &self.entries[0]
    }

    pub fn num_irreducibles(&self) -> usize {
        self.entries.len()
    }

    /// `|λ| = Σ_U |λ(U)|`.
    pub fn size(&self) -> usize {
        self.entries.iter().map(Partition::size).sum()
    }

    /// Padding map `λ ↦ λ_n`: a first row of length `n - |λ|` is added to the
    /// unit entry. `None` stands for the zero object, which occurs when that
    /// row would be shorter than `λ(1)_1`.
    pub fn pad(&self, n: usize) -> Option<MultiPartition> {
        let size = self.size();
        if n < size {
            return None;
        }
        let unit = self.entries[0].with_first_row(n - size)?;
        let mut entries = self.entries.clone();
        entries[0] = unit;
        Some(MultiPartition { entries })
    }

    /// Inverse of [`pad`](Self::pad): drops the first row of the unit entry.
    pub fn stable_label(&self) -> MultiPartition {
        let mut entries = self.entries.clone();
        entries[0] = entries[0].without_first_row();
        MultiPartition { entries }
    }

    /// All multipartitions over `m` irreducibles of total size `n`, in the
    /// canonical order: size vectors in reverse lexicographic order (mass on
    /// the unit first), then entries by [`Partition::all`].
    pub fn all(m: usize, n: usize) -> Vec<MultiPartition> {
        let mut out = Vec::new();
        for sizes in compositions(n, m) {
            let choices: Vec<Vec<Partition>> = sizes.iter().map(|&s| Partition::all(s)).collect();
            let mut idx = vec![0usize; m];
            'outer: loop {
                out.push(MultiPartition::new(
                    idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
                ));
                for slot in (0..m).rev() {
                    idx[slot] += 1;
                    if idx[slot] < choices[slot].len() {
                        continue 'outer;
                    }
                    idx[slot] = 0;
                }
                break;
            }
        }
        out
    }
}

/// Weak compositions of `n` into `m` parts, reverse lexicographic.
pub fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 1 {
            current.push(n);
            out.push(current.clone());
            current.pop();
            return;
        }
        for first in (0..=n).rev() {
            current.push(first);
            go(n - first, m - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, m, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a label over `m` irreducibles. With `m = 1` a bare partition such
/// as `(3,1)` is accepted; otherwise a tuple of `m` partitions such as
/// `((1),(1))` or `(∅,(1,1))`.
pub fn parse_multipartition(s: &str, m: usize) -> Result<MultiPartition> {
    let s = s.trim();
    if m == 1 {
        let inner = s
            .strip_prefix("((")
            .and_then(|t| t.strip_suffix("))"))
            .map(|t| format!("({t})"));
        let p = match inner {
            Some(t) => t.parse::<Partition>()?,
            None => s.parse::<Partition>()?,
        };
        return Ok(MultiPartition::new(vec![p]));
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a tuple of {m} partitions, got {s:?}")))?;
    let mut entries = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?
            }
            ',' if depth == 0 => {
                entries.push(inner[start..i].parse::<Partition>()?);
                start = i + 1;
            }
            _ => {}
        }
    }
    entries.push(inner[start..].parse::<Partition>()?);
    if entries.len() != m {
        return Err(Error::Parse(format!(
            "label {s:?} has {} entries, expected {m}",
            entries.len()
        )));
    }
    Ok(MultiPartition::new(entries))
}
