//! Component replacement edits, as used for interactive re-optimization.

use crate::error::{Error, Result};
use crate::model::{validate_components, Component};

#[derive(Debug, Clone, PartialEq)]
pub enum FieldEdit {
    Width(f64),
    Height(f64),
    Depth(f64),
    Hot(bool),
    ConnectsTo(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentEdit {
    pub index: usize,
    pub edit: FieldEdit,
}

impl FieldEdit {
    /// Parses one `field=value` pair. Field names follow the JSON keys, with the
    /// `Mm` suffix optional: `width`, `height`, `depth`, `isHot`, `connectsTo`.
    pub fn parse(field: &str, value: &str) -> Result<Self> {
        let value = value.trim();
        let dimension = |name: &str| -> Result<f64> {
            match value.parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
                _ => Err(Error::InvalidValue {
                    field: name.into(),
                    reason: format!("`{value}` is not a positive length"),
                }),
            }
        };
        match field.trim() {
            "width" | "widthMm" => Ok(FieldEdit::Width(dimension("width")?)),
            "height" | "heightMm" => Ok(FieldEdit::Height(dimension("height")?)),
            "depth" | "depthMm" => Ok(FieldEdit::Depth(dimension("depth")?)),
            "isHot" => match value {
                "1" | "true" => Ok(FieldEdit::Hot(true)),
                "0" | "false" => Ok(FieldEdit::Hot(false)),
                _ => Err(Error::InvalidValue {
                    field: "isHot".into(),
                    reason: format!("`{value}` is not 0 or 1"),
                }),
            },
            "connectsTo" => value
                .trim_start_matches('[')
                .trim_end_matches(']')
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::InvalidValue {
                        field: "connectsTo".into(),
                        reason: format!("`{s}` is not an index"),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(FieldEdit::ConnectsTo),
            other => Err(Error::UnknownField(other.to_string())),
        }
    }

    fn apply(&self, c: &mut Component) {
        match self {
            FieldEdit::Width(v) => c.width_mm = *v,
            FieldEdit::Height(v) => c.height_mm = *v,
            FieldEdit::Depth(v) => c.depth_mm = *v,
            FieldEdit::Hot(v) => c.is_hot = *v,
            FieldEdit::ConnectsTo(v) => c.connects_to = v.clone(),
        }
    }
}

/// Parses `<index>:<field>=<value>[,...]`, e.g. `8:width=200,6:isHot=1`.
pub fn parse_replacements(spec: &str) -> Result<Vec<ComponentEdit>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let malformed = || Error::InvalidValue {
                field: item.trim().to_string(),
                reason: "expected <index>:<field>=<value>".into(),
            };
            let (index, assignment) = item.split_once(':').ok_or_else(malformed)?;
            let (field, value) = assignment.split_once('=').ok_or_else(malformed)?;
            let index = index.trim().parse::<usize>().map_err(|_| malformed())?;
            Ok(ComponentEdit {
                index,
                edit: FieldEdit::parse(field, value)?,
            })
        })
        .collect()
}

/// Applies edits to a copy of `components` and re-validates the result.
pub fn apply_edits(components: &[Component], edits: &[ComponentEdit]) -> Result<Vec<Component>> {
    let mut out = components.to_vec();
    for e in edits {
        let c = out
            .iter_mut()
            .find(|c| c.index == e.index)
            .ok_or(Error::UnknownComponent(e.index))?;
        e.edit.apply(c);
    }
    validate_components(&out)
}
