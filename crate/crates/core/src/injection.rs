//! The length-increasing maps `g` (decomposable avoiders) and `f`
//! (almost-decomposable avoiders), the partial inverse `h`, and the
//! remainder `Av_{n+1}^k ∖ (g(D_n^k) ∪ f(A_n^k))`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::enumerator::{AvoiderSearch, Collect, Driver};
use crate::perm::Permutation;
use crate::series::{self, RegimeValue};
use crate::structure::{is_decomposable, sum_form_1324, SumFormError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QViolation {
    Contains1324,
    TooManyComponents,
    MaxFirst,
    MaxSecond,
    OneLast,
    TwoLast,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectionError {
    Indecomposable,
    Contains1324,
    NotAlmostDecomposable,
    TooFewComponents,
    /// The second component of a `g`-image was not a singleton.
    NonSingletonSecond,
    NotInQ(QViolation),
    /// No boundary deletion with at least three components was found.
    NoThreeComponentDeletion,
    TooShort,
    BadClassDInput,
}

impl fmt::Display for InjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InjectionError::Indecomposable => f.write_str("permutation is indecomposable"),
            InjectionError::Contains1324 => f.write_str("permutation contains 1324"),
            InjectionError::NotAlmostDecomposable => {
                f.write_str("permutation is neither decomposable nor almost decomposable")
            }
            InjectionError::TooFewComponents => f.write_str("fewer than three components"),
            InjectionError::NonSingletonSecond => f.write_str("second component is not a singleton"),
            InjectionError::NotInQ(v) => write!(f, "outside the domain of h: {v:?}"),
            InjectionError::NoThreeComponentDeletion => {
                f.write_str("no boundary deletion has three or more components")
            }
            InjectionError::TooShort => f.write_str("permutation is too short"),
            InjectionError::BadClassDInput => {
                f.write_str("input must be a decomposable 1324-avoider of length n - 2")
            }
        }
    }
}

impl core::error::Error for InjectionError {}

/// Which clause of the definition of `f` (or `h`) was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FCase {
    /// Remove the first entry, apply `g`, put it back.
    FirstEntry,
    /// Conjugate by inversion.
    Inverse,
    /// Conjugate by reverse-complement.
    ReverseComplement,
}

impl FCase {
    pub fn label(self) -> &'static str {
        match self {
            FCase::FirstEntry => "first-entry",
            FCase::Inverse => "inverse",
            FCase::ReverseComplement => "rc",
        }
    }
}

/// Inserts a singleton component right after the first component.
pub fn g(pi: &Permutation) -> Result<Permutation, InjectionError> {
    if !is_decomposable(pi) {
        return Err(InjectionError::Indecomposable);
    }
    if !pi.avoids_1324() {
        return Err(InjectionError::Contains1324);
    }
    Ok(insert_after_first_component(pi))
}

fn insert_after_first_component(pi: &Permutation) -> Permutation {
    let a = pi.first_component_len();
    pi.insert(a + 1, a + 1).expect("in range")
}

/// Removes the second component, which must be a singleton.
pub fn g_inverse(sigma: &Permutation) -> Result<Permutation, InjectionError> {
    if !sigma.avoids_1324() {
        return Err(InjectionError::Contains1324);
    }
    remove_second_component(sigma)
}

fn remove_second_component(sigma: &Permutation) -> Result<Permutation, InjectionError> {
    if sigma.component_count() < 3 {
        return Err(InjectionError::TooFewComponents);
    }
    let a = sigma.first_component_len();
    if sigma.at(a + 1) != a + 1 {
        return Err(InjectionError::NonSingletonSecond);
    }
    Ok(sigma.delete_value(a + 1).expect("in range"))
}

fn f_case(pi: &Permutation, allow_rc: bool) -> Result<(Permutation, FCase), InjectionError> {
    let first = pi.first().ok_or(InjectionError::NotAlmostDecomposable)?;
    let without_first = pi.delete_value(first).expect("in range");
    if is_decomposable(&without_first) {
        let image = insert_after_first_component(&without_first);
        return Ok((image.insert(1, first).expect("in range"), FCase::FirstEntry));
    }
    if is_decomposable(&pi.delete_value(1).expect("in range")) {
        let (inv_image, _) = f_case(&pi.inverse(), false)?;
        return Ok((inv_image.inverse(), FCase::Inverse));
    }
    if allow_rc {
        let (rc_image, _) = f_case(&pi.reverse_complement(), false)?;
        return Ok((rc_image.reverse_complement(), FCase::ReverseComplement));
    }
    Err(InjectionError::NotAlmostDecomposable)
}

/// `f` on an indecomposable, almost-decomposable 1324-avoider, with the
/// clause that fired.
pub fn f_with_case(pi: &Permutation) -> Result<(Permutation, FCase), InjectionError> {
    if is_decomposable(pi) {
        return Err(InjectionError::NotAlmostDecomposable);
    }
    if !pi.avoids_1324() {
        return Err(InjectionError::Contains1324);
    }
    f_case(pi, true)
}

pub fn f(pi: &Permutation) -> Result<Permutation, InjectionError> {
    f_with_case(pi).map(|(p, _)| p)
}

/// Checks membership in the domain of `h`: a 1324-avoider of length `N`
/// with at most two components, `σ_1, σ_2 ≠ N` and `σ_N ∉ {1, 2}`.
pub fn q_violation(sigma: &Permutation) -> Option<QViolation> {
    let n = sigma.len();
    if !sigma.avoids_1324() {
        return Some(QViolation::Contains1324);
    }
    if sigma.component_count() > 2 {
        return Some(QViolation::TooManyComponents);
    }
    if n >= 1 && sigma.at(1) == n {
        return Some(QViolation::MaxFirst);
    }
    if n >= 2 && sigma.at(2) == n {
        return Some(QViolation::MaxSecond);
    }
    if n >= 1 && sigma.at(n) == 1 {
        return Some(QViolation::OneLast);
    }
    if n >= 1 && sigma.at(n) == 2 {
        return Some(QViolation::TwoLast);
    }
    None
}

fn h_case(sigma: &Permutation, allow_rc: bool) -> Result<(Permutation, FCase), InjectionError> {
    let first = sigma.at(1);
    let without_first = sigma.delete_value(first).expect("in range");
    if without_first.component_count() >= 3 {
        let reduced = remove_second_component(&without_first)?;
        return Ok((reduced.insert(1, first).expect("in range"), FCase::FirstEntry));
    }
    if sigma.delete_value(1).expect("in range").component_count() >= 3 {
        let (inv_pre, _) = h_case(&sigma.inverse(), false)?;
        return Ok((inv_pre.inverse(), FCase::Inverse));
    }
    if allow_rc {
        let (rc_pre, _) = h_case(&sigma.reverse_complement(), false)?;
        return Ok((rc_pre.reverse_complement(), FCase::ReverseComplement));
    }
    Err(InjectionError::NoThreeComponentDeletion)
}

/// The left inverse of `f`, defined on the larger domain checked by
/// [`q_violation`].
pub fn h_with_case(sigma: &Permutation) -> Result<(Permutation, FCase), InjectionError> {
    if sigma.len() < 2 {
        return Err(InjectionError::TooShort);
    }
    if let Some(v) = q_violation(sigma) {
        return Err(InjectionError::NotInQ(v));
    }
    h_case(sigma, true)
}

pub fn h(sigma: &Permutation) -> Result<Permutation, InjectionError> {
    h_with_case(sigma).map(|(p, _)| p)
}

/// Which map produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mapping {
    G,
    F(FCase),
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mapping::G => f.write_str("g"),
            Mapping::F(c) => write!(f, "f ({})", c.label()),
        }
    }
}

/// `g(π)` if `π` is decomposable, otherwise `f(π)`.
pub fn image(pi: &Permutation) -> Result<(Permutation, Mapping), InjectionError> {
    if !pi.avoids_1324() {
        return Err(InjectionError::Contains1324);
    }
    if is_decomposable(pi) {
        Ok((insert_after_first_component(pi), Mapping::G))
    } else {
        f_case(pi, true).map(|(p, c)| (p, Mapping::F(c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemainderClass {
    /// `σ_1 = N` or `σ_N = 1`.
    A,
    /// `σ_2 = N` or `σ_N = 2`.
    B,
    /// Everything else.
    D,
}

impl RemainderClass {
    pub fn key(self) -> &'static str {
        match self {
            RemainderClass::A => "a",
            RemainderClass::B => "b",
            RemainderClass::D => "d",
        }
    }
}

/// Class of a remainder element `σ` of length `N = n + 1`, by its boundary values.
pub fn classify_remainder(sigma: &Permutation) -> RemainderClass {
    let n = sigma.len();
    if n == 0 {
        return RemainderClass::D;
    }
    if sigma.at(1) == n || sigma.at(n) == 1 {
        RemainderClass::A
    } else if (n >= 2 && sigma.at(2) == n) || sigma.at(n) == 2 {
        RemainderClass::B
    } else {
        RemainderClass::D
    }
}

/// Whether every boundary deletion of `σ` has at most two components.
pub fn all_deletions_at_most_two(sigma: &Permutation) -> bool {
    crate::structure::BoundaryDeletion::ALL
        .iter()
        .all(|t| t.apply(sigma).is_none_or(|d| d.component_count() <= 2))
}

/// The elements of `Av_{n+1}^k(1324)` missed by both `g` and `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderSet {
    pub n: usize,
    pub k: usize,
    /// Whether `k ≤ 2n − 7`; outside it the set is still exact but the
    /// counting identity is not expected to hold.
    pub in_regime: bool,
    /// Sorted.
    pub members: Vec<Permutation>,
}

/// Members split by class. `c` holds the members whose four boundary
/// deletions all have at most two components, and is expected to be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassifiedRemainder {
    pub a: Vec<Permutation>,
    pub b: Vec<Permutation>,
    pub c: Vec<Permutation>,
    pub d: Vec<Permutation>,
}

impl RemainderSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.members.binary_search(sigma).is_ok()
    }

    /// Class of `σ`, or `None` if it is not a member.
    pub fn class_of(&self, sigma: &Permutation) -> Option<RemainderClass> {
        self.contains(sigma).then(|| classify_remainder(sigma))
    }

    pub fn classify(&self) -> ClassifiedRemainder {
        let mut out = ClassifiedRemainder::default();
        for s in &self.members {
            match classify_remainder(s) {
                RemainderClass::A => out.a.push(s.clone()),
                RemainderClass::B => out.b.push(s.clone()),
                RemainderClass::D => {
                    if all_deletions_at_most_two(s) {
                        out.c.push(s.clone());
                    } else {
                        out.d.push(s.clone());
                    }
                }
            }
        }
        out
    }
}

/// Every 1324-avoider of length `n` with exactly `k` inversions, sorted.
pub fn avoiders_with_inversions<D: Driver>(n: usize, k: usize, driver: &D) -> Vec<Permutation> {
    let search = AvoiderSearch::new(&pattern_1324(), n, Some(k));
    let collected: Collect = driver.fold(&search, |acc: &mut Collect, seq, inv| {
        if inv == k {
            acc.0.push((Permutation::standardize(seq), inv));
        }
    });
    let mut out: Vec<Permutation> = collected.0.into_iter().map(|(p, _)| p).collect();
    out.sort();
    out
}

fn pattern_1324() -> Permutation {
    Permutation::new(alloc::vec![1, 3, 2, 4]).expect("valid")
}

pub fn remainder_set<D: Driver>(n: usize, k: usize, driver: &D) -> RemainderSet {
    let images: BTreeSet<Permutation> = avoiders_with_inversions(n, k, driver)
        .iter()
        .filter_map(|pi| image(pi).ok().map(|(p, _)| p))
        .collect();
    let members = avoiders_with_inversions(n + 1, k, driver)
        .into_iter()
        .filter(|s| !images.contains(s))
        .collect();
    RemainderSet { n, k, in_regime: series::in_theorem_regime(n, k), members }
}

/// Builds the length-`n` avoider `π` with `π∖{π_1, π_n} = τ` whose first
/// and last entries sit just above the singleton run of `τ`, with `π_1`
/// above `π_n`. The result is flagged out of regime when
/// `inv(τ) + n − 1 > 2n − 7`.
pub fn build_class_d(tau: &Permutation, n: usize) -> Result<RegimeValue<Permutation>, InjectionError> {
    if n < 2 || tau.len() + 2 != n {
        return Err(InjectionError::BadClassDInput);
    }
    let form = sum_form_1324(tau).map_err(|e| match e {
        SumFormError::Contains1324 => InjectionError::Contains1324,
        _ => InjectionError::BadClassDInput,
    })?;
    let low = form.head.len() + form.middle;
    let mut entries = Vec::with_capacity(n);
    entries.push((low + 2) as u8);
    entries.extend(tau.entries().iter().map(|&v| if (v as usize) <= low { v } else { v + 2 }));
    entries.push((low + 1) as u8);
    let pi = Permutation::new(entries).expect("valid by construction");
    let k = tau.inversion_count() + n - 1;
    Ok(RegimeValue { value: pi, in_regime: series::in_theorem_regime(n, k) })
}
