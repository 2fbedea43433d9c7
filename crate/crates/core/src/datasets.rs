//! Bundled cabinets: the 15-component reference table and seeded synthetic
//! scenarios sized like the three benchmark cabinets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::{parse_components_csv, CabinetDocument};
use crate::model::{CabinetSpec, Component};

pub const SAMPLE15_CSV: &str = include_str!("../data/sample15.csv");

/// Hot components of the reference table.
pub const SAMPLE15_HOT: [usize; 3] = [1, 2, 5];

pub fn sample15() -> CabinetDocument {
    parse_components_csv(SAMPLE15_CSV).expect("bundled table is valid")
}

/// The first `k` components of the reference table, with wires to dropped
/// components removed.
pub fn sample_truncated(k: usize) -> CabinetDocument {
    let mut doc = sample15();
    doc.components.truncate(k);
    for c in &mut doc.components {
        c.connects_to.retain(|&t| t <= k);
    }
    doc.cabinet.name = format!("sample-15-first-{k}");
    doc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    A,
    B,
    C,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::A, Scenario::B, Scenario::C];

    /// (components, hot components, wires)
    pub fn counts(self) -> (usize, usize, usize) {
        match self {
            Scenario::A => (14, 4, 5),
            Scenario::B => (21, 6, 22),
            Scenario::C => (41, 12, 88),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::A => "synthetic-a",
            Scenario::B => "synthetic-b",
            Scenario::C => "synthetic-c",
        }
    }

    fn seed(self) -> u64 {
        match self {
            Scenario::A => 0xA,
            Scenario::B => 0xB,
            Scenario::C => 0xC,
        }
    }

    pub fn bundled_csv(self) -> &'static str {
        match self {
            Scenario::A => include_str!("../data/synthetic-a.csv"),
            Scenario::B => include_str!("../data/synthetic-b.csv"),
            Scenario::C => include_str!("../data/synthetic-c.csv"),
        }
    }
}

/// Random cabinet with the scenario's counts. Widths are 100-180 mm, heights
/// 140-180 mm (0.1 mm resolution); wires are distinct random pairs.
pub fn synthetic(scenario: Scenario) -> CabinetDocument {
    let (n, hot, wires) = scenario.counts();
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed());
    let tenth = |rng: &mut ChaCha8Rng, lo: u32, hi: u32| rng.gen_range(lo * 10..=hi * 10) as f64 / 10.0;

    let mut components: Vec<Component> = (1..=n)
        .map(|i| {
            let w = tenth(&mut rng, 100, 180);
            let h = tenth(&mut rng, 140, 180);
            Component::new(i, format!("S{:03}", i), w, h, 200.0)
        })
        .collect();
    for i in sample(&mut rng, n, hot) {
        components[i].is_hot = true;
    }
    let mut pairs = std::collections::BTreeSet::new();
    while pairs.len() < wires {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a != b && pairs.insert((a.min(b), a.max(b))) {
            components[a - 1].connects_to.push(b);
        }
    }
    CabinetDocument::new(CabinetSpec::new(scenario.name(), 600.0, 40.0), components)
}
