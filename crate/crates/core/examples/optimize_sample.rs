//! Optimizes the bundled 15-component reference cabinet and prints the recommended
//! layout row by row.
//!
//!     cargo run -p cabinet-psa --example optimize_sample -- [seed] [t0]

use cabinet_psa::datasets;
use cabinet_psa::psa::{run, PsaConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let t0 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10_000.0);

    let doc = datasets::sample15();
    let config = PsaConfig::default().with_seed(seed).with_initial_temperature(t0);
    let result = run(&config, &doc.components, &doc.cabinet)?;

    let best = &result.recommended;
    println!(
        "initial mean: heat {:.3}, wire {:.1} mm",
        result.initial_mean.heat, result.initial_mean.wire_mm
    );
    println!(
        "recommended:  heat {:.3}, wire {:.1} mm ({} archive entries, {} iterations, {:.3} s)",
        best.objectives.heat,
        best.objectives.wire_mm,
        result.archive.len(),
        result.iterations,
        result.wall_time.as_secs_f64()
    );
    for (k, row) in best.placement.rows.iter().enumerate() {
        println!("row {k} (top {:>6.1} mm): {:?}", row.y_mm, best.placement.row_members(k));
    }
    println!("pareto archive:");
    for e in result.archive.entries() {
        println!("  heat {:>7.3}  wire {:>8.1}", e.objectives.heat, e.objectives.wire_mm);
    }
    Ok(())
}
