//! Decomposability, almost-decomposability and the plot regions used to
//! reason about them.

use alloc::vec::Vec;
use core::fmt;

use crate::perm::{direct_sum, Permutation};

/// One of the four boundary entries whose removal can make an
/// indecomposable permutation decomposable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryDeletion {
    /// `π∖1`
    DelMinValue,
    /// `π∖n`
    DelMaxValue,
    /// `π∖π_1`
    DelFirstEntry,
    /// `π∖π_n`
    DelLastEntry,
}

impl BoundaryDeletion {
    pub const ALL: [BoundaryDeletion; 4] = [
        BoundaryDeletion::DelMinValue,
        BoundaryDeletion::DelMaxValue,
        BoundaryDeletion::DelFirstEntry,
        BoundaryDeletion::DelLastEntry,
    ];

    /// The value this tag removes from `π`, or `None` for the empty permutation.
    pub fn value_in(self, pi: &Permutation) -> Option<usize> {
        match self {
            BoundaryDeletion::DelMinValue => (!pi.is_empty()).then_some(1),
            BoundaryDeletion::DelMaxValue => (!pi.is_empty()).then(|| pi.len()),
            BoundaryDeletion::DelFirstEntry => pi.first(),
            BoundaryDeletion::DelLastEntry => pi.last(),
        }
    }

    pub fn apply(self, pi: &Permutation) -> Option<Permutation> {
        let v = self.value_in(pi)?;
        Some(pi.delete_value(v).expect("boundary value is in range"))
    }

    pub fn label(self) -> &'static str {
        match self {
            BoundaryDeletion::DelMinValue => "del-min",
            BoundaryDeletion::DelMaxValue => "del-max",
            BoundaryDeletion::DelFirstEntry => "del-first-entry",
            BoundaryDeletion::DelLastEntry => "del-last-entry",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for BoundaryDeletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A set of [`BoundaryDeletion`] tags.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WitnessSet(u8);

impl WitnessSet {
    pub fn empty() -> Self {
        WitnessSet(0)
    }

    pub fn from_tags(tags: &[BoundaryDeletion]) -> Self {
        let mut set = WitnessSet::empty();
        for &t in tags {
            set.insert(t);
        }
        set
    }

    pub fn insert(&mut self, tag: BoundaryDeletion) {
        self.0 |= tag.bit();
    }

    pub fn contains(self, tag: BoundaryDeletion) -> bool {
        self.0 & tag.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Tags in declaration order.
    pub fn iter(self) -> impl Iterator<Item = BoundaryDeletion> {
        BoundaryDeletion::ALL.into_iter().filter(move |&t| self.contains(t))
    }
}

impl fmt::Debug for WitnessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureClass {
    Decomposable(Vec<Permutation>),
    AlmostDecomposable(WitnessSet),
    Neither,
}

impl StructureClass {
    pub fn name(&self) -> &'static str {
        match self {
            StructureClass::Decomposable(_) => "Decomposable",
            StructureClass::AlmostDecomposable(_) => "AlmostDecomposable",
            StructureClass::Neither => "Neither",
        }
    }
}

pub fn is_decomposable(pi: &Permutation) -> bool {
    pi.component_count() >= 2
}

/// Every boundary deletion of `π` whose result is decomposable.
pub fn decomposable_deletions(pi: &Permutation) -> WitnessSet {
    let mut set = WitnessSet::empty();
    for tag in BoundaryDeletion::ALL {
        if tag.apply(pi).is_some_and(|d| is_decomposable(&d)) {
            set.insert(tag);
        }
    }
    set
}

pub fn classify_boundary(pi: &Permutation) -> StructureClass {
    let comps = pi.components();
    if comps.len() >= 2 {
        return StructureClass::Decomposable(comps);
    }
    let witnesses = decomposable_deletions(pi);
    if witnesses.is_empty() {
        StructureClass::Neither
    } else {
        StructureClass::AlmostDecomposable(witnesses)
    }
}

/// `π = head ⊕ 1 ⊕ … ⊕ 1 ⊕ tail` with `middle` singletons, head and tail
/// indecomposable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumForm {
    pub head: Permutation,
    pub middle: usize,
    pub tail: Permutation,
}

impl SumForm {
    pub fn rebuild(&self) -> Permutation {
        let one = Permutation::identity(1);
        let mut parts: Vec<&Permutation> = Vec::with_capacity(self.middle + 2);
        parts.push(&self.head);
        parts.extend(core::iter::repeat(&one).take(self.middle));
        parts.push(&self.tail);
        direct_sum(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumFormError {
    Indecomposable,
    Contains1324,
    /// A middle component has length above one. Cannot happen for a
    /// 1324-avoider, so this signals a bug upstream.
    NonSingletonMiddle(usize),
}

impl fmt::Display for SumFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumFormError::Indecomposable => f.write_str("permutation is indecomposable"),
            SumFormError::Contains1324 => f.write_str("permutation contains 1324"),
            SumFormError::NonSingletonMiddle(i) => {
                write!(f, "middle component {i} is not a singleton")
            }
        }
    }
}

impl core::error::Error for SumFormError {}

/// Splits a decomposable 1324-avoider into its first component, the run of
/// singleton components, and its last component.
pub fn sum_form_1324(pi: &Permutation) -> Result<SumForm, SumFormError> {
    let mut comps = pi.components();
    if comps.len() < 2 {
        return Err(SumFormError::Indecomposable);
    }
    if !pi.avoids_1324() {
        return Err(SumFormError::Contains1324);
    }
    let tail = comps.pop().unwrap();
    let head = comps.remove(0);
    if let Some(i) = comps.iter().position(|c| c.len() != 1) {
        return Err(SumFormError::NonSingletonMiddle(i + 2));
    }
    Ok(SumForm { head, middle: comps.len(), tail })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionError {
    /// Regions need `π_1 < π_n` and `π^{-1}_1 < π^{-1}_n`.
    BoundaryOrder,
    /// The anchor is not in the northwestern region.
    NotNorthwest(usize),
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::BoundaryOrder => {
                f.write_str("regions need π_1 < π_n and π^-1_1 < π^-1_n")
            }
            RegionError::NotNorthwest(i) => write!(f, "index {i} is not in the northwestern region"),
        }
    }
}

impl core::error::Error for RegionError {}

/// Whether `π_1 < π_n` and `π^{-1}_1 < π^{-1}_n`.
pub fn has_corner_order(pi: &Permutation) -> bool {
    let n = pi.len();
    n >= 2 && pi.at(1) < pi.at(n) && pi.position_of(1) < pi.position_of(n)
}

/// Indices (1-based) in the northwestern and southeastern regions.
pub fn corner_regions(pi: &Permutation) -> Result<(Vec<usize>, Vec<usize>), RegionError> {
    if !has_corner_order(pi) {
        return Err(RegionError::BoundaryOrder);
    }
    let n = pi.len();
    let (first, last) = (pi.at(1), pi.at(n));
    let (pos_min, pos_max) = (pi.position_of(1), pi.position_of(n));
    let northwest = (1..=n).filter(|&i| i < pos_min && pi.at(i) > last).collect();
    let southeast = (1..=n).filter(|&i| i > pos_max && pi.at(i) < first).collect();
    Ok((northwest, southeast))
}

/// Index sets around a northwestern anchor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SideRegions {
    pub southern: Vec<usize>,
    pub eastern: Vec<usize>,
    pub central: Vec<usize>,
}

pub fn side_regions(pi: &Permutation, anchor: usize) -> Result<SideRegions, RegionError> {
    let (northwest, _) = corner_regions(pi)?;
    if !northwest.contains(&anchor) {
        return Err(RegionError::NotNorthwest(anchor));
    }
    let n = pi.len();
    let (first, last) = (pi.at(1), pi.at(n));
    let pos_max = pi.position_of(n);
    let mut out = SideRegions::default();
    for j in 1..=n {
        let v = pi.at(j);
        let before_max = anchor < j && j < pos_max;
        if before_max && 1 < v && v < first {
            out.southern.push(j);
        }
        if pos_max < j && j < n && first < v && v < last {
            out.eastern.push(j);
        }
        if before_max && first < v && v < last {
            out.central.push(j);
        }
    }
    Ok(out)
}

/// All corner and side regions of `π` at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    pub northwest: Vec<usize>,
    pub southeast: Vec<usize>,
    /// `(anchor, regions)` for every northwestern anchor.
    pub sides: Vec<(usize, SideRegions)>,
}

pub fn region_report(pi: &Permutation) -> Result<RegionReport, RegionError> {
    let (northwest, southeast) = corner_regions(pi)?;
    let sides = northwest
        .iter()
        .map(|&i| (i, side_regions(pi, i).expect("anchor is northwestern")))
        .collect();
    Ok(RegionReport { northwest, southeast, sides })
}
