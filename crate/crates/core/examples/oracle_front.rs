//! Compares the annealer's archive with the exact Pareto front of a truncated
//! reference cabinet (all k! layouts enumerated).
//!
//!     cargo run --release -p cabinet-psa --example oracle_front -- [k] [seeds]

use std::time::Instant;

use cabinet_psa::datasets;
use cabinet_psa::oracle::{enumerate_pareto, DEFAULT_MAX_N};
use cabinet_psa::psa::{run, PsaConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let seeds: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);

    let doc = datasets::sample_truncated(k);
    let start = Instant::now();
    let front = enumerate_pareto(&doc.components, &doc.cabinet, DEFAULT_MAX_N)?;
    println!(
        "exact front over {} layouts in {:.2} s:",
        front.enumerated_count,
        start.elapsed().as_secs_f64()
    );
    for e in &front.entries {
        println!("  heat {:>7.3}  wire {:>8.1}  {:?}", e.objectives.heat, e.objectives.wire_mm, e.layout.order());
    }

    for seed in 1..=seeds {
        let r = run(&PsaConfig::default().with_seed(seed), &doc.components, &doc.cabinet)?;
        let dominated = r.archive.entries().iter().filter(|e| front.dominates(&e.objectives)).count();
        let best_heat_matches = (r.recommended.objectives.heat - front.best().objectives.heat).abs() <= 1e-9;
        println!(
            "seed {seed:>2}: archive {} entries, {dominated} dominated by the exact front, best heat {} ({:.2} s)",
            r.archive.len(),
            if best_heat_matches { "matches" } else { "differs" },
            r.wall_time.as_secs_f64()
        );
    }
    Ok(())
}
