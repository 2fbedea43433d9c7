//! Core value types: components, cabinet dimensions, wires and objective vectors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cabinet element as listed in a component description table.
///
/// `index` is the 1-based identity used by layouts; `id` is catalog metadata and
/// may repeat across components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub index: usize,
    pub id: String,
    pub width_mm: f64,
    pub height_mm: f64,
    /// Carried for completeness; placement is a 2-D front-panel model.
    pub depth_mm: f64,
    pub connects_to: Vec<usize>,
    pub is_hot: bool,
}

impl Component {
    pub fn new(index: usize, id: impl Into<String>, width_mm: f64, height_mm: f64, depth_mm: f64) -> Self {
        Self {
            index,
            id: id.into(),
            width_mm,
            height_mm,
            depth_mm,
            connects_to: Vec::new(),
            is_hot: false,
        }
    }

    pub fn connected_to(mut self, targets: impl IntoIterator<Item = usize>) -> Self {
        self.connects_to.extend(targets);
        self
    }

    pub fn hot(mut self, is_hot: bool) -> Self {
        self.is_hot = is_hot;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CabinetSpec {
    pub usable_width_mm: f64,
    /// Vertical gap between consecutive rails.
    pub row_gap_mm: f64,
    pub name: String,
}

impl CabinetSpec {
    pub const DEFAULT_WIDTH_MM: f64 = 600.0;
    pub const DEFAULT_ROW_GAP_MM: f64 = 40.0;

    pub fn new(name: impl Into<String>, usable_width_mm: f64, row_gap_mm: f64) -> Self {
        Self {
            usable_width_mm,
            row_gap_mm,
            name: name.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.usable_width_mm.is_finite() && self.usable_width_mm > 0.0) {
            return Err(Error::InvalidCabinet(format!(
                "usable width must be positive, got {}",
                self.usable_width_mm
            )));
        }
        if !(self.row_gap_mm.is_finite() && self.row_gap_mm >= 0.0) {
            return Err(Error::InvalidCabinet(format!(
                "row gap must be non-negative, got {}",
                self.row_gap_mm
            )));
        }
        Ok(())
    }
}

impl Default for CabinetSpec {
    fn default() -> Self {
        Self::new("cabinet", Self::DEFAULT_WIDTH_MM, Self::DEFAULT_ROW_GAP_MM)
    }
}

/// An undirected wire between two components, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    /// Returns `None` for a self loop.
    pub fn new(x: usize, y: usize) -> Option<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Self { a: x, b: y }),
            std::cmp::Ordering::Greater => Some(Self { a: y, b: x }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// Objective values of one layout. Both are minimized.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ObjectiveVector {
    pub heat: f64,
    pub wire_mm: f64,
}

impl ObjectiveVector {
    pub const LEN: usize = 2;

    pub fn new(heat: f64, wire_mm: f64) -> Self {
        Self { heat, wire_mm }
    }

    pub fn as_array(&self) -> [f64; Self::LEN] {
        [self.heat, self.wire_mm]
    }

    /// Both coordinates within `tol` of `other`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.heat - other.heat).abs() <= tol && (self.wire_mm - other.wire_mm).abs() <= tol
    }
}

/// Pareto dominance under minimization.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.heat <= b.heat && a.wire_mm <= b.wire_mm && (a.heat < b.heat || a.wire_mm < b.wire_mm)
}

/// Checks component invariants and returns the components ordered by index.
pub fn validate_components(components: &[Component]) -> Result<Vec<Component>> {
    if components.is_empty() {
        return Err(Error::EmptyComponentList);
    }
    let n = components.len();
    let mut seen = vec![false; n + 1];
    for c in components {
        if c.index == 0 || c.index > n {
            return Err(Error::IndexOutOfRange { index: c.index, n });
        }
        if seen[c.index] {
            return Err(Error::DuplicateIndex(c.index));
        }
        seen[c.index] = true;
        for (field, value) in [("width", c.width_mm), ("height", c.height_mm), ("depth", c.depth_mm)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveDimension { index: c.index, field });
            }
        }
        for &target in &c.connects_to {
            if target == c.index {
                return Err(Error::SelfConnection(c.index));
            }
            if target == 0 || target > n {
                return Err(Error::DanglingConnection { index: c.index, target });
            }
        }
    }
    let mut sorted = components.to_vec();
    sorted.sort_by_key(|c| c.index);
    Ok(sorted)
}

/// Collapses directed `connects_to` lists into a sorted, deduplicated set of wires.
pub fn normalize_edges(components: &[Component]) -> Vec<Edge> {
    let set: BTreeSet<Edge> = components
        .iter()
        .flat_map(|c| c.connects_to.iter().filter_map(move |&t| Edge::new(c.index, t)))
        .collect();
    set.into_iter().collect()
}
