use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigUint, Sign};

use super::search::{AvoiderSearch, BruteSearch, Driver, InversionCounts};
use crate::perm::Permutation;
use crate::series;

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    /// Every permutation generated and filtered.
    Brute,
    /// Inversion-budgeted search with prefix pruning.
    Pruned,
    /// The closed form, 1324 only, inside its regime.
    Closed,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Pruned => "pruned",
            Engine::Closed => "closed",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Engine::Brute),
            "pruned" => Ok(Engine::Pruned),
            "closed" => Ok(Engine::Closed),
            _ => Err(EnumError::UnknownEngine),
        }
    }
}

/// Largest inversion count stored per row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Budget {
    #[default]
    Full,
    Max(usize),
}

impl Budget {
    pub fn as_option(self) -> Option<usize> {
        match self {
            Budget::Full => None,
            Budget::Max(b) => Some(b),
        }
    }

    /// Highest `k` stored for length `n`.
    pub fn k_max(self, n: usize) -> usize {
        let all = n * n.saturating_sub(1) / 2;
        match self {
            Budget::Full => all,
            Budget::Max(b) => b.min(all),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Full => f.write_str("full"),
            Budget::Max(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Budget {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "full" {
            return Ok(Budget::Full);
        }
        s.parse().map(Budget::Max).map_err(|_| EnumError::BadBudget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    UnknownEngine,
    BadBudget,
    /// The closed engine only knows the pattern 1324.
    ClosedPattern,
    ClosedOutOfRegime { n: usize, k: usize },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::UnknownEngine => f.write_str("engine must be one of brute, pruned, closed"),
            EnumError::BadBudget => f.write_str("budget must be a nonnegative integer or `full`"),
            EnumError::ClosedPattern => f.write_str("the closed engine only supports pattern 1324"),
            EnumError::ClosedOutOfRegime { n, k } => {
                write!(f, "closed form is not valid at n = {n}, k = {k}")
            }
        }
    }
}

impl core::error::Error for EnumError {}

fn is_1324(p: &Permutation) -> bool {
    p.entries() == [1, 3, 2, 4]
}

/// Highest `k` for which the closed engine answers at length `n`.
pub fn closed_k_max(n: usize) -> Option<usize> {
    (0..=n * n.saturating_sub(1) / 2).take_while(|&k| series::closed_form_valid(n, k)).last()
}

/// `av_n^k(pattern)` for `k = 0..=min(k_max, C(n,2))`.
pub fn count_by_inversions<D: Driver>(
    pattern: &Permutation,
    n: usize,
    k_max: Option<usize>,
    engine: Engine,
    driver: &D,
) -> Result<Vec<BigUint>, EnumError> {
    let top = Budget::from_option(k_max).k_max(n);
    let counts: InversionCounts = match engine {
        Engine::Brute => driver.fold(&BruteSearch::new(pattern, n, Some(top)), |t: &mut InversionCounts, _, inv| t.add(inv)),
        Engine::Pruned => {
            driver.fold(&AvoiderSearch::new(pattern, n, Some(top)), |t: &mut InversionCounts, _, inv| t.add(inv))
        }
        Engine::Closed => {
            if !is_1324(pattern) {
                return Err(EnumError::ClosedPattern);
            }
            if let Some(k) = (0..=top).find(|&k| !series::closed_form_valid(n, k)) {
                return Err(EnumError::ClosedOutOfRegime { n, k });
            }
            return Ok((0..=top).map(|k| closed_count(n, k)).collect());
        }
    };
    Ok((0..=top)
        .map(|k| BigUint::from(counts.0.get(k).copied().unwrap_or(0)))
        .collect())
}

fn closed_count(n: usize, k: usize) -> BigUint {
    let v = series::av_closed(n, k).value;
    match v.sign() {
        Sign::Minus => unreachable!("closed form is nonnegative in its regime"),
        _ => v.magnitude().clone(),
    }
}

impl Budget {
    fn from_option(b: Option<usize>) -> Self {
        b.map_or(Budget::Full, Budget::Max)
    }
}

/// Exact counts `av_n^k(pattern)` keyed by `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pattern: Permutation,
    engine: Engine,
    budget: Budget,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub fn new(pattern: Permutation, engine: Engine, budget: Budget) -> Self {
        CountTable { pattern, engine, budget, entries: BTreeMap::new() }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn insert(&mut self, n: usize, k: usize, count: BigUint) {
        self.entries.insert((n, k), count);
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.entries.get(&(n, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by `(n, k)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(n, k), c)| (n, k, c))
    }

    /// Distinct row lengths present, ascending.
    pub fn rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.entries.keys().map(|&(n, _)| n).collect();
        rows.dedup();
        rows
    }

    /// Stored entries of row `n` as `(k, count)`, ascending in `k`.
    pub fn row_entries(&self, n: usize) -> Vec<(usize, &BigUint)> {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(&(_, k), c)| (k, c))
            .collect()
    }

    /// Row `n` for `k = 0..=C(n,2)` if every entry is present.
    pub fn full_row(&self, n: usize) -> Option<Vec<BigUint>> {
        let top = n * n.saturating_sub(1) / 2;
        (0..=top).map(|k| self.get(n, k).cloned()).collect()
    }

    /// Adds every entry of `other`; entries present in both must agree.
    pub fn merge(&mut self, other: CountTable) -> Result<(), (usize, usize)> {
        for ((n, k), c) in other.entries {
            if let Some(existing) = self.entries.get(&(n, k)) {
                if *existing != c {
                    return Err((n, k));
                }
            }
            self.entries.insert((n, k), c);
        }
        Ok(())
    }
}

/// Rows `1..=n_max` of `av_n^k(pattern)` for `k ≤ budget`. The closed engine
/// only fills the cells where the closed form is valid.
pub fn build_table<D: Driver>(
    pattern: &Permutation,
    n_max: usize,
    budget: Budget,
    engine: Engine,
    driver: &D,
) -> Result<CountTable, EnumError> {
    if engine == Engine::Closed && !is_1324(pattern) {
        return Err(EnumError::ClosedPattern);
    }
    let mut table = CountTable::new(pattern.clone(), engine, budget);
    for n in 1..=n_max {
        let top = match engine {
            Engine::Closed => match closed_k_max(n) {
                Some(c) => c.min(budget.k_max(n)),
                None => continue,
            },
            _ => budget.k_max(n),
        };
        let row = count_by_inversions(pattern, n, Some(top), engine, driver)?;
        for (k, c) in row.into_iter().enumerate() {
            table.insert(n, k, c);
        }
    }
    Ok(table)
}
