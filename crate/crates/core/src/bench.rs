//! Seed sweeps over initial temperatures, reporting `Initial / Final` improvement
//! ratios per objective.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component, ObjectiveVector};
use crate::psa::{run, PsaConfig};

pub const INITIAL_DEFINITION: &str = "mean objectives of the run's initial generating set";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Improvement {
    pub heat: f64,
    pub wire: f64,
}

/// `initial / final`; equal values give 1 and a zero final value gives infinity.
pub fn improvement_ratio(initial: f64, final_value: f64) -> f64 {
    if initial == final_value {
        1.0
    } else {
        initial / final_value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchmarkCell {
    pub initial_temperature: f64,
    pub seed: u64,
    pub initial: ObjectiveVector,
    #[serde(rename = "final")]
    pub final_objectives: ObjectiveVector,
    pub improvement: Improvement,
    pub iterations: u64,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        let n = values.len().max(1) as f64;
        Self {
            mean: values.iter().sum::<f64>() / n,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TemperatureSummary {
    pub initial_temperature: f64,
    pub runs: usize,
    pub heat_improvement: Stats,
    pub wire_improvement: Stats,
    pub final_heat: Stats,
    pub final_wire_mm: Stats,
    pub mean_iterations: f64,
    pub mean_wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchmarkReport {
    pub scenario: String,
    pub initial_definition: String,
    pub summaries: Vec<TemperatureSummary>,
    pub cells: Vec<BenchmarkCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkPlan {
    pub initial_temperatures: Vec<f64>,
    pub runs: usize,
    pub seed_base: u64,
    /// Every field except temperature and seed is taken from here.
    pub base: PsaConfig,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
}

impl Default for BenchmarkPlan {
    fn default() -> Self {
        Self {
            initial_temperatures: vec![100.0, 1000.0, 10_000.0],
            runs: 10,
            seed_base: 1,
            base: PsaConfig::default(),
            threads: None,
        }
    }
}

/// Runs every (temperature, seed) cell as an independent engine run.
pub fn run_benchmark(
    plan: &BenchmarkPlan,
    scenario: &str,
    components: &[Component],
    cabinet: &CabinetSpec,
) -> Result<BenchmarkReport> {
    if plan.runs == 0 || plan.initial_temperatures.is_empty() {
        return Err(Error::InvalidConfig("benchmark needs at least one run and one temperature".into()));
    }
    let configs: Vec<PsaConfig> = plan
        .initial_temperatures
        .iter()
        .flat_map(|&t0| {
            (0..plan.runs as u64).map(move |k| {
                plan.base
                    .clone()
                    .with_initial_temperature(t0)
                    .with_seed(plan.seed_base + k)
            })
        })
        .collect();
    for c in &configs {
        c.validate()?;
    }

    let cell = |config: &PsaConfig| -> Result<BenchmarkCell> {
        let r = run(config, components, cabinet)?;
        let fin = r.recommended.objectives;
        Ok(BenchmarkCell {
            initial_temperature: config.initial_temperature,
            seed: config.rng_seed,
            initial: r.initial_mean,
            final_objectives: fin,
            improvement: Improvement {
                heat: improvement_ratio(r.initial_mean.heat, fin.heat),
                wire: improvement_ratio(r.initial_mean.wire_mm, fin.wire_mm),
            },
            iterations: r.iterations,
            wall_time_seconds: r.wall_time.as_secs_f64(),
        })
    };
    let cells: Vec<BenchmarkCell> = match plan.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(|| configs.par_iter().map(cell).collect::<Result<_>>())?,
        None => configs.par_iter().map(cell).collect::<Result<_>>()?,
    };

    let summaries = plan
        .initial_temperatures
        .iter()
        .map(|&t0| {
            let group: Vec<&BenchmarkCell> = cells.iter().filter(|c| c.initial_temperature == t0).collect();
            TemperatureSummary {
                initial_temperature: t0,
                runs: group.len(),
                heat_improvement: Stats::of(group.iter().map(|c| c.improvement.heat)),
                wire_improvement: Stats::of(group.iter().map(|c| c.improvement.wire)),
                final_heat: Stats::of(group.iter().map(|c| c.final_objectives.heat)),
                final_wire_mm: Stats::of(group.iter().map(|c| c.final_objectives.wire_mm)),
                mean_iterations: group.iter().map(|c| c.iterations as f64).sum::<f64>() / group.len() as f64,
                mean_wall_time_seconds: group.iter().map(|c| c.wall_time_seconds).sum::<f64>() / group.len() as f64,
            }
        })
        .collect();

    Ok(BenchmarkReport {
        scenario: scenario.to_string(),
        initial_definition: INITIAL_DEFINITION.into(),
        summaries,
        cells,
    })
}

impl BenchmarkReport {
    /// Plain-text table, one line per initial temperature.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {} (initial = {})", self.scenario, self.initial_definition);
        let _ = writeln!(
            s,
            "{:>8} {:>4} {:>12} {:>22} {:>22} {:>10}",
            "T0", "runs", "iterations", "heat impr mean[min,max]", "wire impr mean[min,max]", "time (s)"
        );
        for t in &self.summaries {
            let fmt = |st: &Stats| format!("{:.2} [{:.2},{:.2}]", st.mean, st.min, st.max);
            let _ = writeln!(
                s,
                "{:>8} {:>4} {:>12.0} {:>22} {:>22} {:>10.3}",
                t.initial_temperature,
                t.runs,
                t.mean_iterations,
                fmt(&t.heat_improvement),
                fmt(&t.wire_improvement),
                t.mean_wall_time_seconds
            );
        }
        s
    }
}
