use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::model::ObjectiveVector;

/// Per-solution objective weights; they sum to one and stay above a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WeightVector {
    pub heat: f64,
    pub wire: f64,
}

impl WeightVector {
    pub fn new(heat: f64, wire: f64) -> Self {
        Self { heat, wire }
    }

    pub fn uniform() -> Self {
        Self::new(0.5, 0.5)
    }

    /// Each weight drawn uniformly on `[floor, 1 - floor]`, then normalized.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, floor: f64) -> Self {
        let heat = rng.gen_range(floor..=1.0 - floor);
        let wire = rng.gen_range(floor..=1.0 - floor);
        Self::new(heat, wire).normalized(floor)
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.heat, self.wire]
    }

    pub fn sum(&self) -> f64 {
        self.heat + self.wire
    }

    /// Scale to unit sum, clamp into `[floor, 1 - floor]`, scale again.
    pub fn normalized(self, floor: f64) -> Self {
        let s = self.sum();
        let clamp = |w: f64| w.clamp(floor, 1.0 - floor);
        let clamped = Self::new(clamp(self.heat / s), clamp(self.wire / s));
        let s = clamped.sum();
        Self::new(clamped.heat / s, clamped.wire / s)
    }
}

/// Weight adaptation after an improving move: an objective that did not improve
/// (`new >= old`) has its weight multiplied by `c`, otherwise divided by `c`.
pub fn update_weights(
    weights: WeightVector,
    current: &ObjectiveVector,
    candidate: &ObjectiveVector,
    c: f64,
    floor: f64,
) -> WeightVector {
    let adapt = |w: f64, old: f64, new: f64| if new >= old { w * c } else { w / c };
    WeightVector::new(
        adapt(weights.heat, current.heat, candidate.heat),
        adapt(weights.wire, current.wire_mm, candidate.wire_mm),
    )
    .normalized(floor)
}

/// Weighted Boltzmann acceptance for moving from `current` to `candidate`:
/// `min(1, exp(sum_k w_k (current_k - candidate_k) / T))`.
pub fn acceptance_probability(
    current: &ObjectiveVector,
    candidate: &ObjectiveVector,
    weights: &WeightVector,
    temperature: f64,
) -> f64 {
    let exponent = (weights.heat * (current.heat - candidate.heat)
        + weights.wire * (current.wire_mm - candidate.wire_mm))
        / temperature;
    if exponent >= 0.0 {
        1.0
    } else {
        exponent.exp()
    }
}
