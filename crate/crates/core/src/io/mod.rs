//! File formats: component tables (CSV and JSON), result JSON and SVG drawings.

mod csv;
mod json;
mod result;
mod svg;

use serde::{Deserialize, Serialize};

pub use self::csv::{parse_components_csv, write_components_csv, CSV_HEADER};
pub use self::json::{parse_components_json, write_components_json};
pub use self::result::{parse_result_json, write_result_json, PlacementDoc, RecommendedDoc, ResultDocument, SolutionDoc};
pub use self::svg::render_svg;

use crate::error::{Error, Result};
use crate::model::{validate_components, CabinetSpec, Component};

pub const FORMAT_VERSION: u32 = 1;

/// A cabinet description: rail geometry plus its components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CabinetDocument {
    pub format_version: u32,
    pub cabinet: CabinetSpec,
    pub components: Vec<Component>,
}

impl CabinetDocument {
    pub fn new(cabinet: CabinetSpec, components: Vec<Component>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            cabinet,
            components,
        }
    }

    /// Validates the cabinet and components, ordering components by index.
    pub fn validated(mut self) -> Result<Self> {
        self.cabinet.validate()?;
        self.components = validate_components(&self.components)?;
        Ok(self)
    }
}

/// Loads a document, choosing the parser from an explicit format or the file extension.
pub fn load_document(path: &std::path::Path, format: Option<&str>) -> std::result::Result<CabinetDocument, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(path.display().to_string(), e.to_string()))?;
    let format = format
        .map(str::to_ascii_lowercase)
        .or_else(|| path.extension().map(|e| e.to_string_lossy().to_ascii_lowercase()))
        .unwrap_or_else(|| "csv".into());
    let doc = match format.as_str() {
        "json" => parse_components_json(&text),
        "csv" => parse_components_csv(&text),
        other => return Err(LoadError::UnknownFormat(other.to_string())),
    }?;
    Ok(doc)
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("unknown input format `{0}` (expected csv or json)")]
    UnknownFormat(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}
