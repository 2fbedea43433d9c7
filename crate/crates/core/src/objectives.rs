//! Heat-placement penalty and wire length of a layout.

use crate::error::Result;
use crate::model::{normalize_edges, validate_components, CabinetSpec, Component, Edge, ObjectiveVector};
use crate::placement::{pack, Layout, Placement};

/// Heat units per millimetre of center depth.
pub const HEAT_SCALE_MM: f64 = 100.0;

/// Validated components, cabinet and wires, ready for repeated evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationContext {
    components: Vec<Component>,
    cabinet: CabinetSpec,
    edges: Vec<Edge>,
}

impl EvaluationContext {
    pub fn new(components: &[Component], cabinet: &CabinetSpec) -> Result<Self> {
        cabinet.validate()?;
        let components = validate_components(components)?;
        let edges = normalize_edges(&components);
        Ok(Self {
            components,
            cabinet: cabinet.clone(),
            edges,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn cabinet(&self) -> &CabinetSpec {
        &self.cabinet
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn pack(&self, layout: &Layout) -> Result<Placement> {
        pack(layout, &self.components, &self.cabinet)
    }
}

/// Sum of Manhattan distances between the centers of wired components.
pub fn wire_length(placement: &Placement, edges: &[Edge]) -> f64 {
    edges
        .iter()
        .map(|e| {
            let (ax, ay) = placement.components[e.a - 1].center();
            let (bx, by) = placement.components[e.b - 1].center();
            (ax - bx).abs() + (ay - by).abs()
        })
        .sum()
}

/// Sum over hot components of center depth below the cabinet top, in units of
/// [`HEAT_SCALE_MM`]. Lower means hot components sit higher.
pub fn heat_level(placement: &Placement, components: &[Component]) -> f64 {
    components
        .iter()
        .filter(|c| c.is_hot)
        .map(|c| placement.components[c.index - 1].center().1 / HEAT_SCALE_MM)
        .sum()
}

pub fn evaluate(layout: &Layout, ctx: &EvaluationContext) -> Result<ObjectiveVector> {
    let placement = ctx.pack(layout)?;
    Ok(objectives_of(&placement, ctx))
}

pub(crate) fn objectives_of(placement: &Placement, ctx: &EvaluationContext) -> ObjectiveVector {
    ObjectiveVector::new(heat_level(placement, &ctx.components), wire_length(placement, &ctx.edges))
}
