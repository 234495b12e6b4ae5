//! Permutations in one-line notation and the elementary operations every
//! other module builds on.
//!
//! All positions and values in the public API are 1-based, matching the usual
//! combinatorial convention: `π = π_1 π_2 … π_n` with each `π_i ∈ [n]`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Longest permutation representable (entries are stored as `u8`).
pub const MAX_LEN: usize = u8::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    TooLong(usize),
    OutOfRange { value: usize, len: usize },
    Duplicate(usize),
    IndexOutOfRange { index: usize, len: usize },
    Parse(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::TooLong(n) => write!(f, "permutation of length {n} exceeds {MAX_LEN}"),
            PermError::OutOfRange { value, len } => {
                write!(f, "value {value} is outside 1..={len}")
            }
            PermError::Duplicate(v) => write!(f, "duplicate value {v}"),
            PermError::IndexOutOfRange { index, len } => {
                write!(f, "index {index} is outside the valid range for length {len}")
            }
            PermError::Parse(s) => write!(f, "cannot parse permutation: {s}"),
        }
    }
}

impl core::error::Error for PermError {}

/// A permutation of `1..=n` in one-line notation. The empty permutation is a
/// valid value and is the identity of [`direct_sum`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Validates that `entries` is a rearrangement of `1..=n`.
    pub fn new(entries: Vec<u8>) -> Result<Self, PermError> {
        let n = entries.len();
        if n > MAX_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut seen = [false; MAX_LEN + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, len: n });
            }
            if seen[v] {
                return Err(PermError::Duplicate(v));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    /// Same as [`Permutation::new`] but for arbitrary integer input.
    pub fn from_values(values: &[usize]) -> Result<Self, PermError> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut entries = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, len: n });
            }
            entries.push(v as u8);
        }
        Permutation::new(entries)
    }

    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    /// The permutation order-isomorphic to a sequence of distinct values.
    pub fn standardize(seq: &[u8]) -> Self {
        let mut present = [false; MAX_LEN + 1];
        for &v in seq {
            present[v as usize] = true;
        }
        let mut rank = [0u8; MAX_LEN + 1];
        let mut next = 0u8;
        for v in 0..=MAX_LEN {
            if present[v] {
                next += 1;
                rank[v] = next;
            }
        }
        Permutation::from_raw(seq.iter().map(|&v| rank[v as usize]).collect())
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Permutation::from_raw((1..=n as u8).collect())
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One-line notation as a 0-indexed slice of 1-based values.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    /// `π_i` for a 1-based position.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn first(&self) -> Option<usize> {
        self.entries.first().map(|&v| v as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.entries.last().map(|&v| v as usize)
    }

    /// `π^{-1}_v`: the 1-based position holding value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.entries
            .iter()
            .position(|&x| x as usize == v)
            .map(|p| p + 1)
            .expect("value outside permutation")
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation::from_raw(inv)
    }

    /// `rc(π)_i = n + 1 − π_{n+1−i}`: the plot rotated by 180 degrees.
    pub fn reverse_complement(&self) -> Self {
        let n = self.len() as u8;
        Permutation::from_raw(self.entries.iter().rev().map(|&v| n + 1 - v).collect())
    }

    pub fn inversion_count(&self) -> usize {
        inversion_count(&self.entries)
    }

    /// Left- and right-inversions of position `i`:
    /// `left = |{j < i : π_j > π_i}|`, `right = |{j > i : π_j < π_i}|`.
    pub fn inversions_at(&self, i: usize) -> Result<(usize, usize), PermError> {
        if i == 0 || i > self.len() {
            return Err(PermError::IndexOutOfRange { index: i, len: self.len() });
        }
        let v = self.entries[i - 1];
        let left = self.entries[..i - 1].iter().filter(|&&x| x > v).count();
        let right = self.entries[i..].iter().filter(|&&x| x < v).count();
        Ok((left, right))
    }

    pub fn inversion_table(&self) -> InversionTable {
        let values = (1..=self.len())
            .map(|i| self.entries[i..].iter().filter(|&&x| x < self.entries[i - 1]).count())
            .collect();
        InversionTable { values }
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        if pattern.entries == [1, 3, 2, 4] {
            contains_1324(&self.entries)
        } else {
            contains_pattern(&self.entries, &pattern.entries)
        }
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn avoids_1324(&self) -> bool {
        !contains_1324(&self.entries)
    }

    /// `self ⊕ other`.
    pub fn oplus(&self, other: &Permutation) -> Self {
        direct_sum([self, other])
    }

    /// The unique decomposition into indecomposable summands, left to right.
    pub fn components(&self) -> Vec<Permutation> {
        let mut parts = Vec::new();
        let mut start = 0usize;
        for end in component_ends(&self.entries) {
            parts.push(Permutation::from_raw(
                self.entries[start..end].iter().map(|&v| v - start as u8).collect(),
            ));
            start = end;
        }
        parts
    }

    pub fn component_count(&self) -> usize {
        component_count(&self.entries)
    }

    /// Length of the first component (0 for the empty permutation).
    pub fn first_component_len(&self) -> usize {
        let mut max = 0u8;
        for (i, &v) in self.entries.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                return i + 1;
            }
        }
        0
    }

    /// `π ∖ S`: removes the entries whose values lie in `values` and
    /// standardizes what is left.
    pub fn delete(&self, values: &[usize]) -> Result<Self, PermError> {
        let n = self.len();
        let mut drop = [false; MAX_LEN + 1];
        for &v in values {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, len: n });
            }
            drop[v] = true;
        }
        let kept: Vec<u8> = self
            .entries
            .iter()
            .copied()
            .filter(|&v| !drop[v as usize])
            .collect();
        Ok(Permutation::standardize(&kept))
    }

    /// `π ∖ v` for a single value.
    pub fn delete_value(&self, v: usize) -> Result<Self, PermError> {
        self.delete(&[v])
    }

    /// Inserts `value` at 1-based `position`; existing entries `>= value`
    /// move up by one. Inverse of [`Permutation::delete_value`].
    pub fn insert(&self, position: usize, value: usize) -> Result<Self, PermError> {
        let n = self.len();
        if n + 1 > MAX_LEN {
            return Err(PermError::TooLong(n + 1));
        }
        if position == 0 || position > n + 1 {
            return Err(PermError::IndexOutOfRange { index: position, len: n });
        }
        if value == 0 || value > n + 1 {
            return Err(PermError::OutOfRange { value, len: n + 1 });
        }
        let value = value as u8;
        let mut out = Vec::with_capacity(n + 1);
        out.extend(self.entries.iter().map(|&x| if x >= value { x + 1 } else { x }));
        out.insert(position - 1, value);
        Ok(Permutation::from_raw(out))
    }
}

/// Concatenation with value offsets: `(σ ⊕ τ)(i) = σ(i)` for `i ≤ |σ|`,
/// `|σ| + τ(i − |σ|)` otherwise.
pub fn direct_sum<'a, I>(parts: I) -> Permutation
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut out = Vec::new();
    for p in parts {
        let offset = out.len() as u8;
        out.extend(p.entries.iter().map(|&v| v + offset));
    }
    assert!(out.len() <= MAX_LEN);
    Permutation::from_raw(out)
}

pub(crate) fn inversion_count(seq: &[u8]) -> usize {
    let mut count = 0;
    for (i, &a) in seq.iter().enumerate() {
        count += seq[i + 1..].iter().filter(|&&b| b < a).count();
    }
    count
}

/// Exclusive end offsets of the components of a permutation slice.
fn component_ends(seq: &[u8]) -> impl Iterator<Item = usize> + '_ {
    let mut max = 0u8;
    seq.iter().enumerate().filter_map(move |(i, &v)| {
        max = max.max(v);
        (max as usize == i + 1).then_some(i + 1)
    })
}

pub(crate) fn component_count(seq: &[u8]) -> usize {
    component_ends(seq).count()
}

/// O(n²) test for 1324: an inverted pair `b < c`, `π_b > π_c`, that has a
/// smaller entry before `b` and a larger entry after `c`.
pub fn contains_1324(seq: &[u8]) -> bool {
    let n = seq.len();
    if n < 4 {
        return false;
    }
    // prefix_min[i] = min(seq[..i]), suffix_max[i] = max(seq[i..])
    let mut prefix_min = vec![u8::MAX; n + 1];
    for i in 0..n {
        prefix_min[i + 1] = prefix_min[i].min(seq[i]);
    }
    let mut suffix_max = vec![0u8; n + 1];
    for i in (0..n).rev() {
        suffix_max[i] = suffix_max[i + 1].max(seq[i]);
    }
    for b in 1..n - 2 {
        for c in b + 1..n - 1 {
            if seq[b] > seq[c] && prefix_min[b] < seq[c] && suffix_max[c + 1] > seq[b] {
                return true;
            }
        }
    }
    false
}

/// Generic containment by backtracking over increasing index tuples.
pub fn contains_pattern(seq: &[u8], pattern: &[u8]) -> bool {
    let mut chosen = Vec::with_capacity(pattern.len());
    extend_occurrence(seq, pattern, 0, &mut chosen, seq.len())
}

/// Whether `seq` has an occurrence of `pattern` that uses its last entry.
pub(crate) fn contains_pattern_at_last(seq: &[u8], pattern: &[u8]) -> bool {
    let (m, n) = (pattern.len(), seq.len());
    if m == 0 || n < m {
        return false;
    }
    let mut chosen = Vec::with_capacity(m);
    extend_with_last(seq, pattern, 0, &mut chosen)
}

fn extend_with_last(seq: &[u8], pattern: &[u8], start: usize, chosen: &mut Vec<usize>) -> bool {
    let last = seq.len() - 1;
    let remaining = pattern.len() - 1 - chosen.len();
    if remaining == 0 {
        return consistent(seq, pattern, chosen, last);
    }
    if start + remaining > last {
        return false;
    }
    for j in start..=last - remaining {
        if consistent(seq, pattern, chosen, j) {
            chosen.push(j);
            if extend_with_last(seq, pattern, j + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn extend_occurrence(
    seq: &[u8],
    pattern: &[u8],
    start: usize,
    chosen: &mut Vec<usize>,
    limit: usize,
) -> bool {
    let a = chosen.len();
    if a == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - a;
    if limit < remaining {
        return false;
    }
    for j in start..=limit - remaining {
        if consistent(seq, pattern, chosen, j) {
            chosen.push(j);
            if extend_occurrence(seq, pattern, j + 1, chosen, limit) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[inline]
fn consistent(seq: &[u8], pattern: &[u8], chosen: &[usize], j: usize) -> bool {
    let a = chosen.len();
    chosen
        .iter()
        .enumerate()
        .all(|(b, &ib)| (seq[j] > seq[ib]) == (pattern[a] > pattern[b]))
}

/// `b_i = |{j > i : π_j < π_i}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionTable {
    values: Vec<usize>,
}

impl InversionTable {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    /// The table with trailing zeros removed; a partition of the total when
    /// the table is weakly decreasing.
    pub fn nonzero_prefix(&self) -> &[usize] {
        let end = self.values.iter().rposition(|&b| b != 0).map_or(0, |p| p + 1);
        &self.values[..end]
    }
}

/// Compact digits for `n ≤ 9`, comma-separated values otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
        } else {
            for (i, &v) in self.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts compact digit strings (`"245169783"`) and comma- or
/// whitespace-separated values (`"10,1,2,…"`).
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let separated = s.contains(|c: char| c == ',' || c.is_whitespace());
        let mut values = Vec::new();
        if separated {
            for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v = tok
                    .parse::<usize>()
                    .map_err(|_| PermError::Parse(String::from(tok)))?;
                values.push(v);
            }
        } else {
            for c in s.chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| PermError::Parse(String::from(s)))?;
                values.push(d as usize);
            }
        }
        Permutation::from_values(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction_and_validation() {
        assert_eq!(p("245169783").entries(), &[2, 4, 5, 1, 6, 9, 7, 8, 3]);
        assert_eq!(Permutation::new(vec![]).unwrap().len(), 0);
        assert_eq!(Permutation::new(vec![1, 1]), Err(PermError::Duplicate(1)));
        assert!(matches!(Permutation::new(vec![1, 3]), Err(PermError::OutOfRange { .. })));
        assert!(matches!(Permutation::from_values(&[0]), Err(PermError::OutOfRange { .. })));
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn textual_format() {
        let long = Permutation::from_values(&[10, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(long.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert_eq!(p("3,1,2"), p("312"));
        assert_eq!(p("312").to_string(), "312");
        assert_eq!(p(""), Permutation::empty());
    }

    #[test]
    fn inverse_and_rc() {
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("3612745").inverse(), p("3416725"));
        assert_eq!(p("245169783").inverse().inverse(), p("245169783"));
        assert_eq!(p("35126874").reverse_complement(), p("52137846"));
        assert_eq!(Permutation::identity(6).reverse_complement(), Permutation::identity(6));
        let q = p("3612745");
        assert_eq!(q.reverse_complement().reverse_complement(), q);
    }

    #[test]
    fn inversions() {
        assert_eq!(Permutation::identity(9).inversion_count(), 0);
        assert_eq!(p("3612745").inversion_count(), 8);
        assert_eq!(p("3517264").inversion_count(), 9);
        assert_eq!(Permutation::identity(4).inversions_at(2), Ok((0, 0)));
        assert_eq!(p("3612745").inversions_at(2), Ok((0, 4)));
        assert_eq!(p("3612745").inversions_at(7), Ok((2, 0)));
        assert!(p("3612745").inversions_at(0).is_err());
        assert!(p("3612745").inversions_at(8).is_err());
    }

    #[test]
    fn inversion_tables() {
        assert_eq!(Permutation::identity(3).inversion_table().values(), &[0, 0, 0]);
        let t = p("321").inversion_table();
        assert_eq!(t.values(), &[2, 1, 0]);
        assert!(t.is_weakly_decreasing());
        let t = p("3612745").inversion_table();
        assert_eq!(t.values(), &[2, 4, 0, 0, 2, 0, 0]);
        assert_eq!(t.total(), 8);
        assert_eq!(t.nonzero_prefix(), &[2, 4, 0, 0, 2]);
    }

    #[test]
    fn containment() {
        assert!(p("214365").contains(&p("1324")));
        assert!(!p("2143").contains(&p("1324")));
        assert!(p("54321").contains(&p("1")));
        assert!(p("1").contains(&Permutation::empty()));
        assert!(!Permutation::empty().contains(&p("1")));
        assert!(p("2413").contains(&p("213")));
        assert!(!p("2413").contains(&p("321")));
    }

    #[test]
    fn pattern_at_last() {
        assert!(contains_pattern_at_last(&[1, 3, 2, 4], &[1, 3, 2, 4]));
        // occurrence exists but avoids the last entry
        assert!(!contains_pattern_at_last(&[2, 4, 3, 5, 1], &[1, 3, 2, 4]));
        assert!(contains_pattern_at_last(&[2, 1], &[2, 1]));
        assert!(!contains_pattern_at_last(&[1, 2], &[2, 1]));
    }

    #[test]
    fn sums_and_components() {
        assert_eq!(direct_sum([&p("231"), &p("21")]), p("23154"));
        assert_eq!(Permutation::empty().oplus(&p("312")), p("312"));
        assert_eq!(direct_sum([&p("1"), &p("1"), &p("1")]), p("123"));
        assert_eq!(p("23415867").components(), vec![p("2341"), p("1"), p("312")]);
        assert_eq!(Permutation::identity(4).components(), vec![p("1"); 4]);
        assert_eq!(p("245169783").components(), vec![p("245169783")]);
        assert_eq!(p("245169783").component_count(), 1);
        assert_eq!(p("23415867").first_component_len(), 4);
        assert!(Permutation::empty().components().is_empty());
    }

    #[test]
    fn delete_and_insert() {
        let q = p("245169783");
        assert_eq!(q.delete(&[1]).unwrap(), p("13458672"));
        assert_eq!(q.delete(&[3]).unwrap(), p("23415867"));
        assert_eq!(q.delete(&[]).unwrap(), q);
        assert_eq!(q.delete(&[1]).unwrap().components(), vec![p("1"), p("2347561")]);
        assert!(q.delete(&[10]).is_err());
        assert_eq!(p("123465").insert(1, 5).unwrap(), p("5123476"));
        assert_eq!(Permutation::empty().insert(1, 1).unwrap(), p("1"));
        assert_eq!(p("21").insert(2, 1).unwrap(), p("312"));
        assert!(p("21").insert(4, 1).is_err());
        assert!(p("21").insert(1, 4).is_err());
    }

    #[test]
    fn specialised_1324_matches_generic() {
        for q in crate::enumerator::all_permutations(7) {
            assert_eq!(
                contains_1324(q.entries()),
                contains_pattern(q.entries(), &[1, 3, 2, 4]),
                "{q}"
            );
        }
    }
}
