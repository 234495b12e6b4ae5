use alloc::vec;
use alloc::vec::Vec;

use crate::perm::{contains_1324, contains_pattern, contains_pattern_at_last, inversion_count, Permutation};

/// Longest permutation the searches can build (used values live in a `u64`).
pub const MAX_SEARCH_LEN: usize = 63;

/// Per-shard accumulator. Shards are folded independently and merged in
/// shard order, so a merge only has to be associative for the result to be
/// independent of how shards were scheduled.
pub trait Tally: Default + Send {
    fn merge(&mut self, other: Self);
}

/// A search space split into disjoint shards. Every leaf is reported as
/// `(entries, inversions)` exactly once across all shards.
pub trait Search: Sync {
    type Shard: Send + Sync;

    fn shards(&self) -> Vec<Self::Shard>;

    fn visit_shard(&self, shard: &Self::Shard, visit: &mut dyn FnMut(&[u8], usize));
}

/// Runs a [`Search`], folding each shard into a [`Tally`].
pub trait Driver {
    fn fold<S, T, F>(&self, search: &S, fold: F) -> T
    where
        S: Search,
        T: Tally,
        F: Fn(&mut T, &[u8], usize) + Sync;
}

/// Runs shards one after the other on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Driver for Sequential {
    fn fold<S, T, F>(&self, search: &S, fold: F) -> T
    where
        S: Search,
        T: Tally,
        F: Fn(&mut T, &[u8], usize) + Sync,
    {
        let mut acc = T::default();
        for shard in search.shards() {
            let mut part = T::default();
            search.visit_shard(&shard, &mut |seq, inv| fold(&mut part, seq, inv));
            acc.merge(part);
        }
        acc
    }
}

/// Number of leaves at each inversion count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InversionCounts(pub Vec<u64>);

impl InversionCounts {
    pub fn add(&mut self, inv: usize) {
        if self.0.len() <= inv {
            self.0.resize(inv + 1, 0);
        }
        self.0[inv] += 1;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Tally for InversionCounts {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

/// Plain collection of leaves, in visiting order.
#[derive(Debug, Clone, Default)]
pub struct Collect(pub Vec<(Permutation, usize)>);

impl Tally for Collect {
    fn merge(&mut self, mut other: Self) {
        self.0.append(&mut other.0);
    }
}

#[derive(Debug, Clone)]
enum Containment {
    Nothing,
    Everything,
    Special1324,
    Generic(Vec<u8>),
}

impl Containment {
    fn of(pattern: Option<&Permutation>) -> Self {
        match pattern {
            None => Containment::Nothing,
            Some(p) if p.is_empty() => Containment::Everything,
            Some(p) if p.entries() == [1, 3, 2, 4] => Containment::Special1324,
            Some(p) => Containment::Generic(p.entries().to_vec()),
        }
    }

    fn full_check(&self, seq: &[u8]) -> bool {
        match self {
            Containment::Nothing => false,
            Containment::Everything => true,
            Containment::Special1324 => contains_1324(seq),
            Containment::Generic(p) => contains_pattern(seq, p),
        }
    }
}

/// Left-to-right construction of the avoiders of a pattern with at most
/// `budget` inversions.
///
/// Appending value `v` adds exactly as many inversions as there are unused
/// values below `v`, so candidates are tried in increasing order and the loop
/// stops at the first one that overshoots the budget. A prefix that already
/// contains the pattern is abandoned. For 1324 the check is incremental: the
/// smallest value that plays the `3` of some `132` in the prefix is carried
/// along, and a new entry above it would complete a `1324`.
#[derive(Debug, Clone)]
pub struct AvoiderSearch {
    n: usize,
    budget: usize,
    containment: Containment,
    shard_depth: usize,
}

/// A fixed prefix of the search tree together with its incremental state.
#[derive(Debug, Clone)]
pub struct PrefixShard {
    prefix: Vec<u8>,
    used: u64,
    inv: usize,
    min_three: u8,
}

impl PrefixShard {
    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }
}

const NO_132: u8 = u8::MAX;

impl AvoiderSearch {
    pub fn new(pattern: &Permutation, n: usize, budget: Option<usize>) -> Self {
        Self::build(Some(pattern), n, budget)
    }

    /// Every permutation of length `n` (with at most `budget` inversions).
    pub fn unrestricted(n: usize, budget: Option<usize>) -> Self {
        Self::build(None, n, budget)
    }

    fn build(pattern: Option<&Permutation>, n: usize, budget: Option<usize>) -> Self {
        assert!(n <= MAX_SEARCH_LEN, "search length {n} exceeds {MAX_SEARCH_LEN}");
        AvoiderSearch {
            n,
            budget: budget.unwrap_or(usize::MAX),
            containment: Containment::of(pattern),
            shard_depth: 3,
        }
    }

    pub fn with_shard_depth(mut self, depth: usize) -> Self {
        self.shard_depth = depth;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> Option<usize> {
        (self.budget != usize::MAX).then_some(self.budget)
    }

    fn walk(
        &self,
        buf: &mut [u8; MAX_SEARCH_LEN + 1],
        len: usize,
        used: u64,
        inv: usize,
        min_three: u8,
        stop: usize,
        leaf: &mut dyn FnMut(&[u8], u64, usize, u8),
    ) {
        if len == stop {
            leaf(&buf[..len], used, inv, min_three);
            return;
        }
        let mut rank = 0usize;
        for v in 1..=self.n as u8 {
            let bit = 1u64 << (v - 1);
            if used & bit != 0 {
                continue;
            }
            let next_inv = inv + rank;
            rank += 1;
            if next_inv > self.budget {
                break;
            }
            let mut next_three = min_three;
            match &self.containment {
                Containment::Nothing => {}
                Containment::Everything => return,
                Containment::Special1324 => {
                    if v > min_three {
                        break;
                    }
                    let mut run_min = u8::MAX;
                    for &y in &buf[..len] {
                        if run_min < v && y > v && y < next_three {
                            next_three = y;
                        }
                        run_min = run_min.min(y);
                    }
                }
                Containment::Generic(p) => {
                    buf[len] = v;
                    if contains_pattern_at_last(&buf[..=len], p) {
                        continue;
                    }
                }
            }
            buf[len] = v;
            self.walk(buf, len + 1, used | bit, next_inv, next_three, stop, leaf);
        }
    }
}

impl Search for AvoiderSearch {
    type Shard = PrefixShard;

    fn shards(&self) -> Vec<PrefixShard> {
        if matches!(self.containment, Containment::Everything) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut buf = [0u8; MAX_SEARCH_LEN + 1];
        let depth = self.shard_depth.min(self.n);
        self.walk(&mut buf, 0, 0, 0, NO_132, depth, &mut |prefix, used, inv, min_three| {
            out.push(PrefixShard { prefix: prefix.to_vec(), used, inv, min_three });
        });
        out
    }

    fn visit_shard(&self, shard: &PrefixShard, visit: &mut dyn FnMut(&[u8], usize)) {
        let mut buf = [0u8; MAX_SEARCH_LEN + 1];
        buf[..shard.prefix.len()].copy_from_slice(&shard.prefix);
        self.walk(
            &mut buf,
            shard.prefix.len(),
            shard.used,
            shard.inv,
            shard.min_three,
            self.n,
            &mut |seq, _, inv, _| visit(seq, inv),
        );
    }
}

/// Generates every permutation of length `n` and filters. Shares nothing
/// with [`AvoiderSearch`] beyond the containment routines, which makes it
/// the reference the pruned search is checked against.
#[derive(Debug, Clone)]
pub struct BruteSearch {
    n: usize,
    budget: usize,
    containment: Containment,
}

impl BruteSearch {
    pub fn new(pattern: &Permutation, n: usize, budget: Option<usize>) -> Self {
        Self::build(Some(pattern), n, budget)
    }

    pub fn unrestricted(n: usize, budget: Option<usize>) -> Self {
        Self::build(None, n, budget)
    }

    fn build(pattern: Option<&Permutation>, n: usize, budget: Option<usize>) -> Self {
        assert!(n <= crate::perm::MAX_LEN);
        BruteSearch {
            n,
            budget: budget.unwrap_or(usize::MAX),
            containment: Containment::of(pattern),
        }
    }
}

impl Search for BruteSearch {
    type Shard = Vec<u8>;

    fn shards(&self) -> Vec<Vec<u8>> {
        let n = self.n as u8;
        match self.n {
            0 => vec![Vec::new()],
            1 => vec![vec![1]],
            _ => (1..=n)
                .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| vec![a, b]))
                .collect(),
        }
    }

    fn visit_shard(&self, shard: &Vec<u8>, visit: &mut dyn FnMut(&[u8], usize)) {
        let mut seq = shard.clone();
        seq.extend((1..=self.n as u8).filter(|v| !shard.contains(v)));
        let fixed = shard.len();
        loop {
            let inv = inversion_count(&seq);
            if inv <= self.budget && !self.containment.full_check(&seq) {
                visit(&seq, inv);
            }
            if !next_permutation(&mut seq[fixed..]) {
                break;
            }
        }
    }
}

/// Rearranges into the lexicographically next ordering; `false` once the
/// slice is in descending order.
pub fn next_permutation(seq: &mut [u8]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut state = Some((1..=n as u8).collect::<Vec<u8>>());
    core::iter::from_fn(move || {
        let current = state.take()?;
        let mut next = current.clone();
        if next_permutation(&mut next) {
            state = Some(next);
        }
        Some(Permutation::new(current).expect("valid by construction"))
    })
}

/// Calls `sink` on every avoider of `pattern` of length `n` with at most
/// `budget` inversions, in lexicographic order, and returns how many there
/// were.
pub fn enumerate_avoiders(
    pattern: &Permutation,
    n: usize,
    budget: Option<usize>,
    sink: &mut dyn FnMut(&Permutation, usize),
) -> u64 {
    let search = AvoiderSearch::new(pattern, n, budget);
    let mut count = 0u64;
    for shard in search.shards() {
        search.visit_shard(&shard, &mut |seq, inv| {
            count += 1;
            sink(&Permutation::new(seq.to_vec()).expect("search yields permutations"), inv);
        });
    }
    count
}
