//! Exhaustive audits of the structural statements about small
//! 1324-avoiders. Each audit walks a search space through a [`Driver`] and
//! tallies, per named property, how many inputs it applied to and which
//! inputs broke it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::enumerator::{AvoiderSearch, Driver, Tally};
use crate::injection::{self, classify_remainder, FCase, RemainderClass};
use crate::perm::Permutation;
use crate::series;
use crate::structure::{
    classify_boundary, decomposable_deletions, has_corner_order, is_decomposable, region_report,
    BoundaryDeletion, StructureClass,
};

/// Violations kept per property; the count is always exact.
pub const MAX_KEPT: usize = 32;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub checked: u64,
    pub violation_count: u64,
    /// The first [`MAX_KEPT`] offenders in search order.
    pub violations: Vec<Permutation>,
}

/// Per-property tallies plus the first example found for each named
/// existence claim.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub examples: BTreeMap<&'static str, Permutation>,
}

impl Audit {
    /// Records one application of `name`.
    pub fn check(&mut self, name: &'static str, ok: bool, subject: &Permutation) {
        let t = self.checks.entry(name).or_default();
        t.checked += 1;
        if !ok {
            t.violation_count += 1;
            if t.violations.len() < MAX_KEPT {
                t.violations.push(subject.clone());
            }
        }
    }

    /// Keeps the smallest witness seen for `name`.
    pub fn example(&mut self, name: &'static str, subject: &Permutation) {
        match self.examples.get(name) {
            Some(old) if (old.len(), old) <= (subject.len(), subject) => {}
            _ => {
                self.examples.insert(name, subject.clone());
            }
        }
    }

    /// Declares a property so it shows up with zero applications.
    pub fn declare(&mut self, name: &'static str) {
        self.checks.entry(name).or_default();
    }

    pub fn total_violations(&self) -> u64 {
        self.checks.values().map(|t| t.violation_count).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    /// The first violating property and its first offender.
    pub fn first_violation(&self) -> Option<(&'static str, &Permutation)> {
        self.checks
            .iter()
            .find_map(|(name, t)| t.violations.first().map(|p| (*name, p)))
    }
}

impl Tally for Audit {
    fn merge(&mut self, other: Self) {
        for (name, t) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.checked += t.checked;
            mine.violation_count += t.violation_count;
            let room = MAX_KEPT.saturating_sub(mine.violations.len());
            mine.violations.extend(t.violations.into_iter().take(room));
        }
        for (name, p) in other.examples {
            self.example(name, &p);
        }
    }
}

fn p1324() -> Permutation {
    Permutation::new(alloc::vec![1, 3, 2, 4]).expect("valid")
}

fn p132() -> Permutation {
    Permutation::new(alloc::vec![1, 3, 2]).expect("valid")
}

/// `2n − c` as a budget, or `None` when it is negative.
fn budget(n: usize, c: usize) -> Option<usize> {
    (2 * n).checked_sub(c)
}

/// Outcome of checking that every indecomposable `π ∈ Av_n^k(1324)` with
/// `k ≤ 2n − 7` is almost decomposable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RemovepointReport {
    pub n: usize,
    /// `2n − 7`, possibly negative.
    pub k_max: i64,
    pub violations: Vec<Permutation>,
    /// Avoiders with `k = 2n − 6` that are neither decomposable nor almost
    /// decomposable.
    pub boundary_neither: Vec<Permutation>,
    /// Avoiders inspected (all `k ≤ 2n − 6`).
    pub checked: u64,
}

#[derive(Default)]
struct NeitherTally {
    checked: u64,
    below: Vec<Permutation>,
    boundary: Vec<Permutation>,
}

impl Tally for NeitherTally {
    fn merge(&mut self, other: Self) {
        self.checked += other.checked;
        self.below.extend(other.below);
        self.boundary.extend(other.boundary);
    }
}

pub fn removepoint<D: Driver>(n: usize, driver: &D) -> RemovepointReport {
    let k_max = 2 * n as i64 - 7;
    let mut report = RemovepointReport { n, k_max, ..Default::default() };
    let Some(top) = budget(n, 6) else { return report };
    let search = AvoiderSearch::new(&p1324(), n, Some(top));
    let t: NeitherTally = driver.fold(&search, |t: &mut NeitherTally, seq, inv| {
        t.checked += 1;
        let pi = Permutation::standardize(seq);
        if classify_boundary(&pi) == StructureClass::Neither {
            if inv == top {
                t.boundary.push(pi);
            } else {
                t.below.push(pi);
            }
        }
    });
    report.checked = t.checked;
    report.violations = t.below;
    report.boundary_neither = t.boundary;
    report.violations.sort();
    report.boundary_neither.sort();
    report
}

const CORNER_EXISTENCE: &str = "corner-existence";
const CORNER_EXCLUSION: &str = "corner-exclusion";
const SIDE_EXCLUSION: &str = "side-exclusion";
const SIDE_EXCLUSION_TWO: &str = "side-exclusion-two-anchors";
const CENTRAL_EMPTY: &str = "central-empty";
const FIRST_LAST_DELETION: &str = "first-above-last-deletion";
const BOUNDARY_132: &str = "avoid-132-boundary";
const FORBIDDEN_PAIRS: &str = "forbidden-witness-pairs";

/// Names of the four permitted witness pairs, in the order of
/// [`allowed_pairs`].
pub const PAIR_NAMES: [&str; 4] = [
    "pair-min-max",
    "pair-min-last-entry",
    "pair-first-entry-max",
    "pair-first-entry-last-entry",
];

pub fn allowed_pairs() -> [(BoundaryDeletion, BoundaryDeletion); 4] {
    use BoundaryDeletion::*;
    [
        (DelMinValue, DelMaxValue),
        (DelMinValue, DelLastEntry),
        (DelFirstEntry, DelMaxValue),
        (DelFirstEntry, DelLastEntry),
    ]
}

fn region_lemmas(audit: &mut Audit, pi: &Permutation, inv: usize) {
    let n = pi.len();
    if !has_corner_order(pi) {
        if n >= 2 && pi.at(1) > pi.at(n) && inv + 5 <= 2 * n {
            let w = decomposable_deletions(pi);
            audit.check(
                FIRST_LAST_DELETION,
                w.contains(BoundaryDeletion::DelFirstEntry) || w.contains(BoundaryDeletion::DelLastEntry),
                pi,
            );
        }
        return;
    }
    let report = region_report(pi).expect("corner order holds");
    if !is_decomposable(pi) {
        audit.check(
            CORNER_EXISTENCE,
            !report.northwest.is_empty() || !report.southeast.is_empty(),
            pi,
        );
    }
    if inv + 6 <= 2 * n {
        audit.check(CORNER_EXCLUSION, report.northwest.is_empty() || report.southeast.is_empty(), pi);
    }
    for (_, sides) in &report.sides {
        audit.check(CENTRAL_EMPTY, sides.central.is_empty(), pi);
        if inv + 7 <= 2 * n {
            audit.check(SIDE_EXCLUSION, sides.southern.is_empty() || sides.eastern.is_empty(), pi);
        }
    }
    if inv + 7 <= 2 * n {
        for (i1, s1) in &report.sides {
            for (i2, s2) in &report.sides {
                if pi.at(*i1) < pi.at(*i2) {
                    audit.check(SIDE_EXCLUSION_TWO, s1.southern.is_empty() || s2.eastern.is_empty(), pi);
                }
            }
        }
    }
}

fn witness_pairs(audit: &mut Audit, pi: &Permutation) {
    use BoundaryDeletion::*;
    if is_decomposable(pi) || pi.len() < 2 {
        return;
    }
    let w = decomposable_deletions(pi);
    let forbidden = (w.contains(DelMinValue) && w.contains(DelFirstEntry))
        || (w.contains(DelMaxValue) && w.contains(DelLastEntry));
    audit.check(FORBIDDEN_PAIRS, !forbidden, pi);
    for (name, (a, b)) in PAIR_NAMES.iter().zip(allowed_pairs()) {
        if w.contains(a) && w.contains(b) {
            audit.example(name, pi);
        }
    }
}

/// The region lemmas and witness-pair statements at length `n`.
///
/// Region lemmas run over all of `Av_n(1324)`, the witness-pair statements
/// over all of `S_n`, and the 132 boundary statement over
/// `Av_n^{≤2n−5}(132)`.
pub fn lemmas<D: Driver>(n: usize, driver: &D) -> Audit {
    let avoiders = AvoiderSearch::new(&p1324(), n, None);
    let mut audit: Audit = driver.fold(&avoiders, |a: &mut Audit, seq, inv| {
        region_lemmas(a, &Permutation::standardize(seq), inv);
    });
    let all = AvoiderSearch::unrestricted(n, None);
    audit.merge(driver.fold(&all, |a: &mut Audit, seq, _| {
        witness_pairs(a, &Permutation::standardize(seq));
    }));
    if let Some(top) = budget(n, 5) {
        let avoid_132 = AvoiderSearch::new(&p132(), n, Some(top));
        audit.merge(driver.fold(&avoid_132, |a: &mut Audit, seq, _| {
            let pi = Permutation::standardize(seq);
            if !is_decomposable(&pi) {
                let ok = pi.at(1) == n || pi.at(n) == 1;
                a.check(BOUNDARY_132, ok, &pi);
            }
        }));
    }
    for name in [
        CORNER_EXISTENCE,
        CORNER_EXCLUSION,
        SIDE_EXCLUSION,
        SIDE_EXCLUSION_TWO,
        CENTRAL_EMPTY,
        FIRST_LAST_DELETION,
        BOUNDARY_132,
        FORBIDDEN_PAIRS,
    ] {
        audit.declare(name);
    }
    audit
}

/// Witness pairs never realised by any permutation in the audit.
pub fn unrealised_pairs(audit: &Audit) -> Vec<&'static str> {
    PAIR_NAMES.iter().copied().filter(|n| !audit.examples.contains_key(n)).collect()
}

const G_INVERSIONS: &str = "g-inversions";
const G_COMPONENTS: &str = "g-components";
const G_ROUND_TRIP: &str = "g-round-trip";
const F_DEFINED: &str = "f-defined";
const F_AVOIDS: &str = "f-avoids-1324";
const F_INVERSIONS: &str = "f-inversions";
const F_COMPONENTS: &str = "f-components";
const H_LEFT_INVERSE: &str = "h-left-inverse";
const EDGE_LAST: &str = "edge-value-last-entry";
const EDGE_MAX: &str = "edge-value-max-position";
const FIXED_FIRST: &str = "fixed-points-first-entry";
const FIXED_RC: &str = "fixed-points-rc";
const STABILITY: &str = "stability";
const THREE_COMPONENTS: &str = "three-component-deletion";
const FIVE_COMPONENTS: &str = "five-component-deletion";

fn injection_checks(a: &mut Audit, pi: &Permutation, inv: usize) {
    let n = pi.len();
    if n == 0 {
        return;
    }
    if is_decomposable(pi) {
        let img = injection::g(pi).expect("decomposable avoider");
        a.check(G_INVERSIONS, img.inversion_count() == inv, pi);
        a.check(G_COMPONENTS, img.component_count() >= 3 && img.avoids_1324(), pi);
        a.check(G_ROUND_TRIP, injection::g_inverse(&img).as_ref() == Ok(pi), pi);
        return;
    }
    let w = decomposable_deletions(pi);
    if w.is_empty() {
        return;
    }
    let Ok((img, case)) = injection::f_with_case(pi) else {
        a.check(F_DEFINED, false, pi);
        return;
    };
    a.check(F_DEFINED, img.len() == n + 1, pi);
    a.check(F_AVOIDS, img.avoids_1324(), pi);
    a.check(F_INVERSIONS, img.inversion_count() == inv, pi);
    a.check(F_COMPONENTS, img.component_count() <= 2, pi);
    a.check(H_LEFT_INVERSE, injection::h(&img).as_ref() == Ok(pi), pi);

    if case == FCase::ReverseComplement {
        if w.contains(BoundaryDeletion::DelLastEntry) {
            a.check(EDGE_LAST, img.at(n + 1) == pi.at(n) + 1, pi);
            for i in 1..=n {
                if pi.at(i) < pi.at(n) {
                    a.check(FIXED_RC, img.at(i) == pi.at(i), pi);
                }
            }
        }
        if w.contains(BoundaryDeletion::DelMaxValue) {
            a.check(EDGE_MAX, img.position_of(n + 1) == pi.position_of(n) + 1, pi);
        }
    }
    if case == FCase::FirstEntry {
        for i in 1..=n {
            if pi.at(i) > pi.at(1) {
                a.check(FIXED_FIRST, img.at(i + 1) == pi.at(i) + 1, pi);
            }
        }
    }
    if !w.contains(BoundaryDeletion::DelFirstEntry) {
        let rest = img.delete_value(img.at(1)).expect("in range");
        a.check(STABILITY, rest.component_count() <= 2, pi);
    }
}

fn deletion_component_counts(sigma: &Permutation) -> [usize; 4] {
    BoundaryDeletion::ALL.map(|t| t.apply(sigma).map_or(0, |d| d.component_count()))
}

fn component_lemmas(a: &mut Audit, sigma: &Permutation) {
    let [del_min, del_max, del_first, del_last] = deletion_component_counts(sigma);
    if sigma.component_count() <= 2 {
        let ok = del_min.max(del_max).max(del_first).max(del_last) >= 3;
        a.check(THREE_COMPONENTS, ok, sigma);
    }
    // Only holds for indecomposable σ: 231 ⊕ 2341 has σ∖σ_1 with two
    // components but σ∖σ_m and σ∖m with fewer than five.
    if del_first == 2 && !is_decomposable(sigma) {
        a.check(FIVE_COMPONENTS, del_last >= 5 || del_max >= 5, sigma);
    }
}

/// Properties of `g`, `f` and `h` over all of `Av_n(1324)`.
pub fn injection_suite<D: Driver>(n: usize, driver: &D) -> Audit {
    let search = AvoiderSearch::new(&p1324(), n, None);
    let mut audit: Audit = driver.fold(&search, |a: &mut Audit, seq, inv| {
        injection_checks(a, &Permutation::standardize(seq), inv);
    });
    for name in [
        G_INVERSIONS, G_COMPONENTS, G_ROUND_TRIP, F_DEFINED, F_AVOIDS, F_INVERSIONS, F_COMPONENTS,
        H_LEFT_INVERSE, EDGE_LAST, EDGE_MAX, FIXED_FIRST, FIXED_RC, STABILITY,
    ] {
        audit.declare(name);
    }
    audit
}

/// The three- and five-component statements over `Av_m^{≤2m−9}(1324)`.
pub fn component_suite<D: Driver>(m: usize, driver: &D) -> Audit {
    let mut audit = Audit::default();
    if let Some(top) = budget(m, 9) {
        let search = AvoiderSearch::new(&p1324(), m, Some(top));
        audit = driver.fold(&search, |a: &mut Audit, seq, _| {
            component_lemmas(a, &Permutation::standardize(seq));
        });
    }
    audit.declare(THREE_COMPONENTS);
    audit.declare(FIVE_COMPONENTS);
    audit
}

/// Class sizes `(a, b, c, d)`.
pub type ClassCounts = (usize, usize, usize, usize);

/// One `(n, k)` cell of the remainder audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceRow {
    pub n: usize,
    pub k: usize,
    pub remainder: usize,
    /// `[x^k] R_n`.
    pub predicted: usize,
    pub classes: ClassCounts,
    /// `(2[x^{k−n}]P², 2[x^{k−n+1}]P², 0, 2[x^{k−n+1}]P²)`.
    pub predicted_classes: ClassCounts,
    /// `g` and `f` images are distinct and all lie in `Av_{n+1}^k(1324)`.
    pub images_injective: bool,
    /// `av_{n+1}^k = |g(D_n^k)| + |f(A_n^k)| + |R_{n+1}^k|`.
    pub census_ok: bool,
    /// Number of class-d builder outputs (one per `τ ∈ Av_{n−2}^{k−n+1}`).
    pub class_d_built: usize,
    /// `{h(σ) : σ in class d}` equals `rc(B) ∪ rc(B)⁻¹`, a disjoint union,
    /// where `B` is the set of builder outputs.
    pub class_d_match: bool,
}

impl DifferenceRow {
    pub fn is_clean(&self) -> bool {
        self.remainder == self.predicted
            && self.classes == self.predicted_classes
            && self.images_injective
            && self.census_ok
            && self.class_d_match
    }
}

fn to_usize(v: num_bigint::BigInt) -> usize {
    use num_traits::ToPrimitive;
    v.to_usize().expect("small nonnegative coefficient")
}

/// Audits `R_{n+1}^k` for one cell of the theorem regime.
pub fn difference_row<D: Driver>(n: usize, k: usize, driver: &D) -> DifferenceRow {
    let lower = injection::avoiders_with_inversions(n, k, driver);
    let upper = injection::avoiders_with_inversions(n + 1, k, driver);
    let upper_set: BTreeSet<&Permutation> = upper.iter().collect();

    let images: Vec<Permutation> = lower.iter().filter_map(|p| injection::image(p).ok().map(|(i, _)| i)).collect();
    let image_set: BTreeSet<&Permutation> = images.iter().collect();
    let images_injective = image_set.len() == images.len() && images.iter().all(|i| upper_set.contains(i));

    let set = injection::remainder_set(n, k, driver);
    let census_ok = upper.len() == images.len() + set.len();
    let split = set.classify();
    let classes = (split.a.len(), split.b.len(), split.c.len(), split.d.len());

    let p2 = series::partition_squared(k + 1);
    let coeff = |e: i64| to_usize(p2.coeff_at(e));
    let (kk, nn) = (k as i64, n as i64);
    let predicted_classes = (2 * coeff(kk - nn), 2 * coeff(kk - nn + 1), 0, 2 * coeff(kk - nn + 1));
    let predicted = to_usize(series::diff_closed(n, k).value);

    let built: BTreeSet<Permutation> = match (k + 1).checked_sub(n) {
        Some(tk) if n >= 2 => injection::avoiders_with_inversions(n - 2, tk, driver)
            .iter()
            .filter_map(|t| injection::build_class_d(t, n).ok().map(|r| r.value))
            .collect(),
        _ => BTreeSet::new(),
    };
    let rc: BTreeSet<Permutation> = built.iter().map(Permutation::reverse_complement).collect();
    let rc_inv: BTreeSet<Permutation> = rc.iter().map(Permutation::inverse).collect();
    let preimages: Result<BTreeSet<Permutation>, _> = split.d.iter().map(injection::h).collect();
    let class_d_match = match preimages {
        Ok(pre) => {
            rc.is_disjoint(&rc_inv)
                && pre.len() == split.d.len()
                && pre == rc.union(&rc_inv).cloned().collect::<BTreeSet<_>>()
        }
        Err(_) => false,
    };
    debug_assert!(split.a.iter().all(|s| classify_remainder(s) == RemainderClass::A));

    DifferenceRow {
        n,
        k,
        remainder: set.len(),
        predicted,
        classes,
        predicted_classes,
        images_injective,
        census_ok,
        class_d_built: built.len(),
        class_d_match,
    }
}

/// [`difference_row`] for every `k ≤ 2n − 7`.
pub fn difference_suite<D: Driver>(n: usize, driver: &D) -> Vec<DifferenceRow> {
    match budget(n, 7) {
        Some(top) => (0..=top).map(|k| difference_row(n, k, driver)).collect(),
        None => Vec::new(),
    }
}
