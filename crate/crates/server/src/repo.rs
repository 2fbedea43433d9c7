use std::collections::BTreeMap;

use cabinet_psa::io::CabinetDocument;
use serde::{Deserialize, Serialize};

/// Every version of one cabinet; the last is current.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CabinetVersions {
    pub versions: Vec<CabinetDocument>,
}

impl CabinetVersions {
    pub fn current(&self) -> (usize, &CabinetDocument) {
        let v = self.versions.len();
        (v, &self.versions[v - 1])
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Repository {
    cabinets: BTreeMap<String, CabinetVersions>,
    next_id: u64,
}

impl Repository {
    /// Stores a new cabinet under a fresh id; identical bodies get distinct ids.
    pub fn insert(&mut self, doc: CabinetDocument) -> String {
        self.next_id += 1;
        let id = format!("cab-{}", self.next_id);
        self.cabinets.insert(id.clone(), CabinetVersions { versions: vec![doc] });
        id
    }

    pub fn get(&self, id: &str) -> Option<&CabinetVersions> {
        self.cabinets.get(id)
    }

    /// Appends a version and returns its 1-based number.
    pub fn push_version(&mut self, id: &str, doc: CabinetDocument) -> Option<usize> {
        let entry = self.cabinets.get_mut(id)?;
        entry.versions.push(doc);
        Some(entry.versions.len())
    }
}
