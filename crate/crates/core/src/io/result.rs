use serde::{Deserialize, Serialize};

use super::FORMAT_VERSION;
use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component, ObjectiveVector};
use crate::objectives::EvaluationContext;
use crate::oracle::OracleFront;
use crate::placement::{total_configurations, Placement, PlacedComponent, Row};
use crate::psa::{OptimizationResult, PsaConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionDoc {
    pub order: Vec<usize>,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlacementDoc {
    pub total_height_mm: f64,
    pub rows: Vec<Row>,
    pub components: Vec<PlacedComponent>,
}

impl From<&Placement> for PlacementDoc {
    fn from(p: &Placement) -> Self {
        Self {
            total_height_mm: p.total_height_mm,
            rows: p.rows.clone(),
            components: p.components.clone(),
        }
    }
}

impl From<&PlacementDoc> for Placement {
    fn from(p: &PlacementDoc) -> Self {
        Self {
            components: p.components.clone(),
            rows: p.rows.clone(),
            total_height_mm: p.total_height_mm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecommendedDoc {
    pub order: Vec<usize>,
    pub objectives: ObjectiveVector,
    pub placement: PlacementDoc,
}

/// The JSON written for a finished optimization or oracle run. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResultDocument {
    pub format_version: u32,
    /// `psa` or `oracle`.
    pub algorithm: String,
    pub seed: Option<u64>,
    pub config: Option<PsaConfig>,
    pub warm_start: bool,
    pub component_count: usize,
    pub recommended: RecommendedDoc,
    pub archive: Vec<SolutionDoc>,
    pub iterations: u64,
    /// `n!` as a decimal string; it overflows every fixed-width integer past n = 20.
    pub total_configurations: String,
    pub fraction_of_space: f64,
    /// Mean objectives of the initial generating set (improvement baseline).
    pub initial_mean: Option<ObjectiveVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl ResultDocument {
    pub fn from_psa(result: &OptimizationResult) -> Self {
        let n = result.recommended.layout.len();
        Self {
            format_version: FORMAT_VERSION,
            algorithm: "psa".into(),
            seed: Some(result.config.rng_seed),
            config: Some(result.config.clone()),
            warm_start: result.warm_start,
            component_count: n,
            recommended: RecommendedDoc {
                order: result.recommended.layout.order().to_vec(),
                objectives: result.recommended.objectives,
                placement: (&result.recommended.placement).into(),
            },
            archive: result
                .archive
                .entries()
                .iter()
                .map(|e| SolutionDoc {
                    order: e.layout.order().to_vec(),
                    objectives: e.objectives,
                })
                .collect(),
            iterations: result.iterations,
            total_configurations: total_configurations(n).to_string(),
            fraction_of_space: result.fraction_of_space,
            initial_mean: Some(result.initial_mean),
            wall_time_seconds: Some(result.wall_time.as_secs_f64()),
        }
    }

    pub fn from_oracle(front: &OracleFront, components: &[Component], cabinet: &CabinetSpec) -> Result<Self> {
        let ctx = EvaluationContext::new(components, cabinet)?;
        let best = front.best();
        let placement = ctx.pack(&best.layout)?;
        Ok(Self {
            format_version: FORMAT_VERSION,
            algorithm: "oracle".into(),
            seed: None,
            config: None,
            warm_start: false,
            component_count: ctx.len(),
            recommended: RecommendedDoc {
                order: best.layout.order().to_vec(),
                objectives: best.objectives,
                placement: (&placement).into(),
            },
            archive: front
                .entries
                .iter()
                .map(|e| SolutionDoc {
                    order: e.layout.order().to_vec(),
                    objectives: e.objectives,
                })
                .collect(),
            iterations: front.enumerated_count,
            total_configurations: total_configurations(ctx.len()).to_string(),
            fraction_of_space: 1.0,
            initial_mean: None,
            wall_time_seconds: None,
        })
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_time_seconds = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize") + "\n"
    }
}

pub fn write_result_json(result: &OptimizationResult) -> String {
    ResultDocument::from_psa(result).to_json()
}

pub fn parse_result_json(text: &str) -> Result<ResultDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        reason: e.to_string(),
    })
}
