//! Regenerates the bundled synthetic cabinets and the JSON copy of the reference table.
//!
//!     cargo run -p cabinet-psa --example write_datasets

use std::path::Path;

use cabinet_psa::datasets::{self, Scenario};
use cabinet_psa::io::{write_components_csv, write_components_json};

fn main() -> std::io::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::write(data.join("sample15.json"), write_components_json(&datasets::sample15()))?;
    for s in Scenario::ALL {
        let doc = datasets::synthetic(s);
        let path = data.join(format!("{}.csv", s.name()));
        std::fs::write(&path, write_components_csv(&doc))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
