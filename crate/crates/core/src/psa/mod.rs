//! Pareto simulated annealing over component permutations.
//!
//! A generating set of solutions walks the permutation space in parallel sweeps.
//! Every candidate is offered to a [`ParetoArchive`]; a candidate that dominates its
//! parent adapts the parent's objective weights, and the walk moves to the candidate
//! with the weighted Boltzmann probability of [`acceptance_probability`]. The
//! temperature is multiplied by the cooling rate after every
//! `steps_per_temperature` sweeps until it reaches 1.
//!
//! All randomness comes from one ChaCha8 stream seeded with `rng_seed`, drawn in a
//! fixed order: initial layouts; then per candidate the move draws, the random
//! weight draws (first improvement of that solution only) and one acceptance draw.

mod archive;
mod moves;
mod weights;

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use archive::{select_recommended, ArchiveEntry, ParetoArchive, EQUALITY_TOLERANCE};
pub use moves::{neighbor, random_layout, repair_layout, shift_move, swap_move};
pub use weights::{acceptance_probability, update_weights, WeightVector};

use crate::error::{Error, Result};
use crate::model::{dominates, CabinetSpec, Component, ObjectiveVector};
use crate::objectives::{evaluate, EvaluationContext};
use crate::placement::{total_configurations, Layout, Placement};

/// Warm starts run at this fraction of the configured initial temperature.
pub const WARM_TEMPERATURE_DIVISOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PsaConfig {
    pub initial_temperature: f64,
    /// Geometric cooling factor in `(0, 1)`.
    pub cooling_rate: f64,
    /// Sweeps over the generating set per temperature level.
    pub steps_per_temperature: usize,
    pub generating_set_size: usize,
    /// Weight adaptation constant `c > 1`.
    pub weight_constant: f64,
    pub weight_floor: f64,
    pub swap_probability: f64,
    pub rng_seed: u64,
}

impl Default for PsaConfig {
    fn default() -> Self {
        Self {
            initial_temperature: 1000.0,
            cooling_rate: 0.999,
            steps_per_temperature: 1,
            generating_set_size: 8,
            weight_constant: 1.05,
            weight_floor: 0.01,
            swap_probability: 0.8,
            rng_seed: 1,
        }
    }
}

impl PsaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_initial_temperature(mut self, t0: f64) -> Self {
        self.initial_temperature = t0;
        self
    }

    /// Picks the cooling rate so that a run performs at least `evaluations`
    /// candidate evaluations at the current initial temperature.
    pub fn with_evaluation_budget(mut self, evaluations: u64) -> Self {
        let per_level = (self.steps_per_temperature * self.generating_set_size).max(1) as u64;
        let levels = evaluations.div_ceil(per_level).max(1) as f64;
        // Aim half a level past the target so rounding can only add a level.
        self.cooling_rate = (-self.initial_temperature.ln() / (levels + 0.5)).exp();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.initial_temperature.is_finite() && self.initial_temperature > 1.0) {
            return bad(format!("initial temperature must exceed 1, got {}", self.initial_temperature));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return bad(format!("cooling rate must be in (0, 1), got {}", self.cooling_rate));
        }
        if self.steps_per_temperature == 0 {
            return bad("steps per temperature must be at least 1".into());
        }
        if self.generating_set_size == 0 {
            return bad("generating set size must be at least 1".into());
        }
        if !(self.weight_constant.is_finite() && self.weight_constant > 1.0) {
            return bad(format!("weight constant must exceed 1, got {}", self.weight_constant));
        }
        if !(self.weight_floor > 0.0 && self.weight_floor < 0.5) {
            return bad(format!("weight floor must be in (0, 0.5), got {}", self.weight_floor));
        }
        if !(0.0..=1.0).contains(&self.swap_probability) {
            return bad(format!("swap probability must be in [0, 1], got {}", self.swap_probability));
        }
        Ok(())
    }

    /// Number of temperature levels above 1, using the same arithmetic as the run loop.
    pub fn temperature_levels(&self) -> u64 {
        let mut t = self.initial_temperature;
        let mut levels = 0;
        while t > 1.0 {
            levels += 1;
            t *= self.cooling_rate;
        }
        levels
    }

    /// Candidate evaluations a run with this configuration performs.
    pub fn planned_iterations(&self) -> u64 {
        self.temperature_levels() * (self.steps_per_temperature * self.generating_set_size) as u64
    }
}

/// One member of the generating set.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSolution {
    pub layout: Layout,
    pub objectives: ObjectiveVector,
    pub weights: WeightVector,
    pub weights_initialized: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recommended {
    pub layout: Layout,
    pub objectives: ObjectiveVector,
    pub placement: Placement,
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub archive: ParetoArchive,
    pub recommended: Recommended,
    /// Candidate (neighbor) evaluations performed.
    pub iterations: u64,
    pub wall_time: Duration,
    /// `iterations / n!`, capped at 1.
    pub fraction_of_space: f64,
    /// Mean objectives of the initial generating set.
    pub initial_mean: ObjectiveVector,
    /// Configuration the loop actually ran with.
    pub config: PsaConfig,
    pub warm_start: bool,
}

/// `size` random layouts, each evaluated; weights start unset.
pub fn init_generating_set<R: Rng + ?Sized>(
    ctx: &EvaluationContext,
    size: usize,
    rng: &mut R,
) -> Result<Vec<GeneratingSolution>> {
    (0..size)
        .map(|_| solution(ctx, random_layout(ctx.len(), rng)))
        .collect()
}

fn solution(ctx: &EvaluationContext, layout: Layout) -> Result<GeneratingSolution> {
    let objectives = evaluate(&layout, ctx)?;
    Ok(GeneratingSolution {
        layout,
        objectives,
        weights: WeightVector::uniform(),
        weights_initialized: false,
    })
}

pub fn run(config: &PsaConfig, components: &[Component], cabinet: &CabinetSpec) -> Result<OptimizationResult> {
    config.validate()?;
    let ctx = EvaluationContext::new(components, cabinet)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let set = init_generating_set(&ctx, config.generating_set_size, &mut rng)?;
    anneal(config.clone(), &ctx, set, rng, start, false)
}

/// Re-optimizes from a previous layout after the component set was edited.
///
/// The generating set is the repaired `previous` layout plus perturbations of it
/// (1 to 3 random moves each), and the initial temperature is divided by
/// [`WARM_TEMPERATURE_DIVISOR`].
pub fn run_warm(
    config: &PsaConfig,
    components: &[Component],
    cabinet: &CabinetSpec,
    previous: &[usize],
) -> Result<OptimizationResult> {
    config.validate()?;
    let ctx = EvaluationContext::new(components, cabinet)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    let seed_layout = repair_layout(previous, ctx.len());
    let mut set = vec![solution(&ctx, seed_layout.clone())?];
    for _ in 1..config.generating_set_size {
        let moves = rng.gen_range(1..=3);
        let mut layout = seed_layout.clone();
        for _ in 0..moves {
            layout = neighbor(&layout, config.swap_probability, &mut rng);
        }
        set.push(solution(&ctx, layout)?);
    }

    let mut warm = config.clone();
    warm.initial_temperature /= WARM_TEMPERATURE_DIVISOR;
    anneal(warm, &ctx, set, rng, start, true)
}

fn anneal(
    config: PsaConfig,
    ctx: &EvaluationContext,
    mut set: Vec<GeneratingSolution>,
    mut rng: ChaCha8Rng,
    start: Instant,
    warm_start: bool,
) -> Result<OptimizationResult> {
    let mut archive = ParetoArchive::new();
    for s in &set {
        archive.insert(&s.layout, s.objectives);
    }
    let initial_mean = mean_objectives(&set);

    let mut iterations: u64 = 0;
    let mut temperature = config.initial_temperature;
    while temperature > 1.0 {
        for _ in 0..config.steps_per_temperature {
            for s in set.iter_mut() {
                let candidate = neighbor(&s.layout, config.swap_probability, &mut rng);
                let objectives = evaluate(&candidate, ctx)?;
                iterations += 1;

                archive.insert(&candidate, objectives);
                if dominates(&objectives, &s.objectives) {
                    if s.weights_initialized {
                        s.weights = update_weights(
                            s.weights,
                            &s.objectives,
                            &objectives,
                            config.weight_constant,
                            config.weight_floor,
                        );
                    } else {
                        s.weights = WeightVector::random(&mut rng, config.weight_floor);
                        s.weights_initialized = true;
                    }
                }

                let p = acceptance_probability(&s.objectives, &objectives, &s.weights, temperature);
                if rng.gen::<f64>() < p {
                    s.layout = candidate;
                    s.objectives = objectives;
                }
            }
        }
        temperature *= config.cooling_rate;
    }

    let best = archive.recommended()?.clone();
    let placement = ctx.pack(&best.layout)?;
    let space = total_configurations(ctx.len()).to_f64().unwrap_or(f64::INFINITY);
    Ok(OptimizationResult {
        archive,
        recommended: Recommended {
            layout: best.layout,
            objectives: best.objectives,
            placement,
        },
        iterations,
        wall_time: start.elapsed(),
        fraction_of_space: (iterations as f64 / space).min(1.0),
        initial_mean,
        config,
        warm_start,
    })
}

fn mean_objectives(set: &[GeneratingSolution]) -> ObjectiveVector {
    let n = set.len() as f64;
    let (h, w) = set
        .iter()
        .fold((0.0, 0.0), |(h, w), s| (h + s.objectives.heat, w + s.objectives.wire_mm));
    ObjectiveVector::new(h / n, w / n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    fn quick() -> PsaConfig {
        PsaConfig {
            initial_temperature: 100.0,
            cooling_rate: 0.99,
            ..PsaConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(PsaConfig::default().validate().is_ok());
        for bad in [
            PsaConfig { cooling_rate: 1.5, ..PsaConfig::default() },
            PsaConfig { cooling_rate: 1.0, ..PsaConfig::default() },
            PsaConfig { initial_temperature: 1.0, ..PsaConfig::default() },
            PsaConfig { weight_constant: 1.0, ..PsaConfig::default() },
            PsaConfig { weight_floor: 0.5, ..PsaConfig::default() },
            PsaConfig { generating_set_size: 0, ..PsaConfig::default() },
            PsaConfig { steps_per_temperature: 0, ..PsaConfig::default() },
            PsaConfig { swap_probability: -0.1, ..PsaConfig::default() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))), "{bad:?}");
        }
        let doc = datasets::sample15();
        let bad = PsaConfig { cooling_rate: 1.5, ..PsaConfig::default() };
        assert!(matches!(run(&bad, &doc.components, &doc.cabinet), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn budget_reaches_target() {
        for target in [1_000u64, 77_777, 1_000_000] {
            let c = PsaConfig::default().with_initial_temperature(10_000.0).with_evaluation_budget(target);
            let planned = c.planned_iterations();
            assert!(planned >= target && planned <= target + 16, "{target} -> {planned}");
        }
    }

    #[test]
    fn larger_t0_means_more_iterations() {
        let it = |t0| PsaConfig::default().with_initial_temperature(t0).planned_iterations();
        assert!(it(100.0) < it(1000.0) && it(1000.0) < it(10_000.0));
    }

    #[test]
    fn single_component_run() {
        let c = vec![Component::new(1, "x", 10.0, 10.0, 10.0).hot(true)];
        let r = run(&quick(), &c, &CabinetSpec::default()).unwrap();
        assert_eq!(r.archive.len(), 1);
        assert_eq!(r.recommended.layout, Layout::identity(1));
        assert_eq!(r.fraction_of_space, 1.0);
    }

    #[test]
    fn init_set_is_seeded() {
        let doc = datasets::sample15();
        let ctx = EvaluationContext::new(&doc.components, &doc.cabinet).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            init_generating_set(&ctx, 8, &mut rng)
                .unwrap()
                .into_iter()
                .map(|s| s.layout)
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        for seed in 0..100 {
            assert_ne!(draw(2 * seed), draw(2 * seed + 1));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let single = EvaluationContext::new(&[Component::new(1, "x", 1.0, 1.0, 1.0)], &CabinetSpec::default()).unwrap();
        for s in init_generating_set(&single, 4, &mut rng).unwrap() {
            assert_eq!(s.layout.order(), &[1]);
            assert!(!s.weights_initialized);
        }
    }

    #[test]
    fn recommended_is_in_archive_and_consistent() {
        let doc = datasets::sample15();
        let r = run(&quick().with_seed(3), &doc.components, &doc.cabinet).unwrap();
        assert!(r.archive.entries().iter().any(|e| e.layout == r.recommended.layout));
        let ctx = EvaluationContext::new(&doc.components, &doc.cabinet).unwrap();
        assert_eq!(evaluate(&r.recommended.layout, &ctx).unwrap(), r.recommended.objectives);
        assert_eq!(r.iterations, quick().planned_iterations());
    }

    #[test]
    fn warm_run_repairs_previous_layout() {
        let doc = datasets::sample15();
        let r = run_warm(&quick(), &doc.components, &doc.cabinet, &[15, 14, 99, 1]).unwrap();
        assert!(r.warm_start);
        assert_eq!(r.config.initial_temperature, 10.0);
        assert_eq!(r.recommended.layout.len(), 15);
    }

    #[test]
    fn too_wide_component_is_reported() {
        let mut doc = datasets::sample15();
        doc.components[7].width_mm = 700.0;
        assert!(matches!(
            run(&quick(), &doc.components, &doc.cabinet),
            Err(Error::ComponentTooWide { index: 8, .. })
        ));
    }
}
