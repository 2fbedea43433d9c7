//! Exhaustive enumeration of every permutation, giving the exact Pareto front of
//! small instances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component, ObjectiveVector};
use crate::objectives::{evaluate, EvaluationContext};
use crate::placement::Layout;
use crate::psa::{ArchiveEntry, EQUALITY_TOLERANCE};

pub const DEFAULT_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleFront {
    /// Sorted by `(heat, wire_mm)`; one representative layout per objective vector.
    pub entries: Vec<ArchiveEntry>,
    pub enumerated_count: u64,
}

impl OracleFront {
    /// The lexicographic optimum (first entry).
    pub fn best(&self) -> &ArchiveEntry {
        &self.entries[0]
    }

    /// Does some front member dominate `v` by more than the equality tolerance?
    pub fn dominates(&self, v: &ObjectiveVector) -> bool {
        let tol = EQUALITY_TOLERANCE;
        self.entries.iter().any(|f| {
            let f = &f.objectives;
            f.heat <= v.heat + tol
                && f.wire_mm <= v.wire_mm + tol
                && (f.heat < v.heat - tol || f.wire_mm < v.wire_mm - tol)
        })
    }
}

/// Evaluates all `n!` layouts and returns the non-dominated set.
pub fn enumerate_pareto(components: &[Component], cabinet: &CabinetSpec, max_n: usize) -> Result<OracleFront> {
    let n = components.len();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let ctx = EvaluationContext::new(components, cabinet)?;

    let mut all: Vec<(ObjectiveVector, Vec<usize>)> = Vec::new();
    let mut order: Vec<usize> = (1..=n).collect();
    loop {
        let layout = Layout::new(order.clone())?;
        all.push((evaluate(&layout, &ctx)?, order.clone()));
        if !next_permutation(&mut order) {
            break;
        }
    }
    let enumerated_count = all.len() as u64;

    all.sort_by(|a, b| {
        a.0.heat
            .total_cmp(&b.0.heat)
            .then(a.0.wire_mm.total_cmp(&b.0.wire_mm))
            .then_with(|| a.1.cmp(&b.1))
    });

    // Skyline sweep: a point survives only if its wire length beats every point
    // with lower or equal heat.
    let mut entries: Vec<ArchiveEntry> = Vec::new();
    let mut best_wire = f64::INFINITY;
    for (objectives, order) in all {
        if objectives.wire_mm < best_wire - EQUALITY_TOLERANCE {
            best_wire = objectives.wire_mm;
            entries.push(ArchiveEntry {
                layout: Layout::new(order)?,
                objectives,
            });
        }
    }
    Ok(OracleFront {
        entries,
        enumerated_count,
    })
}

/// Lexicographic next permutation in place; false once the last one is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0].cmp(&w[1]) == Ordering::Less) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
