use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dominates, ObjectiveVector};
use crate::placement::Layout;

/// Objective vectors closer than this in both coordinates are treated as equal.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArchiveEntry {
    pub layout: Layout,
    pub objectives: ObjectiveVector,
}

/// Mutually non-dominated solutions found so far, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Would `objectives` be accepted by [`Self::insert`]?
    pub fn admits(&self, objectives: &ObjectiveVector) -> bool {
        !self
            .entries
            .iter()
            .any(|e| dominates(&e.objectives, objectives) || e.objectives.approx_eq(objectives, EQUALITY_TOLERANCE))
    }

    /// Inserts the candidate unless an entry dominates or equals it, evicting every
    /// entry it dominates. Returns whether it was inserted.
    pub fn insert(&mut self, layout: &Layout, objectives: ObjectiveVector) -> bool {
        if !self.admits(&objectives) {
            return false;
        }
        self.entries.retain(|e| !dominates(&objectives, &e.objectives));
        self.entries.push(ArchiveEntry {
            layout: layout.clone(),
            objectives,
        });
        true
    }

    /// Lexicographic best: lowest heat, then lowest wire length, then earliest inserted.
    pub fn recommended(&self) -> Result<&ArchiveEntry> {
        select_recommended(&self.entries)
    }
}

/// Lexicographic minimum of `(heat, wire_mm)` with [`EQUALITY_TOLERANCE`] ties; the
/// first entry wins remaining ties.
pub fn select_recommended(entries: &[ArchiveEntry]) -> Result<&ArchiveEntry> {
    let mut iter = entries.iter();
    let mut best = iter.next().ok_or(Error::EmptyArchive)?;
    for e in iter {
        let (a, b) = (&e.objectives, &best.objectives);
        let better_heat = a.heat < b.heat - EQUALITY_TOLERANCE;
        let tied_heat = (a.heat - b.heat).abs() <= EQUALITY_TOLERANCE;
        if better_heat || (tied_heat && a.wire_mm < b.wire_mm - EQUALITY_TOLERANCE) {
            best = e;
        }
    }
    Ok(best)
}
