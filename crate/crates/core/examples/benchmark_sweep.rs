//! Seed sweep over initial temperatures on a bundled cabinet, printing the
//! `Initial / Final` improvement table.
//!
//!     cargo run --release -p cabinet-psa --example benchmark_sweep -- [sample|a|b|c] [runs]

use cabinet_psa::bench::{run_benchmark, BenchmarkPlan};
use cabinet_psa::datasets::{self, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let doc = match args.next().as_deref() {
        None | Some("sample") => datasets::sample15(),
        Some("a") => datasets::synthetic(Scenario::A),
        Some("b") => datasets::synthetic(Scenario::B),
        Some("c") => datasets::synthetic(Scenario::C),
        Some(other) => return Err(format!("unknown cabinet `{other}`").into()),
    };
    let runs = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let plan = BenchmarkPlan {
        runs,
        ..BenchmarkPlan::default()
    };
    let report = run_benchmark(&plan, &doc.cabinet.name, &doc.components, &doc.cabinet)?;
    print!("{}", report.table());
    for s in &report.summaries {
        println!(
            "T0 {:>6}: mean final heat {:.3}, mean final wire {:.1} mm",
            s.initial_temperature, s.final_heat.mean, s.final_wire_mm.mean
        );
    }
    Ok(())
}
