//! Runs a fixed evaluation budget on the largest synthetic cabinet
//! (41 components, 12 hot, 88 wires) for several seeds.
//!
//!     cargo run --release -p cabinet-psa --example synthetic_scale -- [evaluations] [seeds]

use cabinet_psa::datasets::{self, Scenario};
use cabinet_psa::psa::{run, PsaConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let budget = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1_000_000);
    let seeds: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);

    let doc = datasets::synthetic(Scenario::C);
    for seed in 1..=seeds {
        let config = PsaConfig::default()
            .with_initial_temperature(10_000.0)
            .with_evaluation_budget(budget)
            .with_seed(seed);
        let r = run(&config, &doc.components, &doc.cabinet)?;
        println!(
            "seed {seed}: {} evaluations in {:.2} s, heat {:.2} -> {:.2}, wire {:.0} -> {:.0} mm, fraction {:.3e}",
            r.iterations,
            r.wall_time.as_secs_f64(),
            r.initial_mean.heat,
            r.recommended.objectives.heat,
            r.initial_mean.wire_mm,
            r.recommended.objectives.wire_mm,
            r.fraction_of_space
        );
    }
    Ok(())
}
