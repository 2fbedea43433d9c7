use serde_json::{Map, Value};

use super::{CabinetDocument, FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component};

fn at(path: &str, reason: impl Into<String>) -> Error {
    Error::JsonParse {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| at(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<(&'a Value, String)> {
    let p = if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match obj.get(key) {
        Some(v) => Ok((v, p)),
        None => Err(at(&p, "missing field")),
    }
}

fn number(obj: &Map<String, Value>, path: &str, key: &str) -> Result<f64> {
    let (v, p) = field(obj, path, key)?;
    v.as_f64().ok_or_else(|| at(&p, "expected a number"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|i| usize::try_from(i).ok())
        .ok_or_else(|| at(path, "expected a non-negative integer"))
}

/// `isHot` accepts `true`/`false` or `0`/`1`.
pub(crate) fn hot_flag(v: &Value, path: &str) -> Result<bool> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
        _ => Err(at(path, "expected a boolean or 0/1")),
    }
}

pub(crate) fn index_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| at(path, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(k, t)| index(t, &format!("{path}[{k}]")))
        .collect()
}

fn component(v: &Value, path: &str) -> Result<Component> {
    let obj = object(v, path)?;
    let (idx, p) = field(obj, path, "index")?;
    let index = index(idx, &p)?;
    let (id, p) = field(obj, path, "id")?;
    let id = match id {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(at(&p, "expected a string")),
    };
    let (connects, p) = field(obj, path, "connectsTo")?;
    let connects_to = index_list(connects, &p)?;
    let (hot, p) = field(obj, path, "isHot")?;
    Ok(Component {
        index,
        id,
        width_mm: number(obj, path, "widthMm")?,
        height_mm: number(obj, path, "heightMm")?,
        depth_mm: number(obj, path, "depthMm")?,
        connects_to,
        is_hot: hot_flag(hot, &p)?,
    })
}

pub(crate) fn cabinet_spec(v: &Value, path: &str) -> Result<CabinetSpec> {
    let obj = object(v, path)?;
    let name = match obj.get("name") {
        None => CabinetSpec::default().name,
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(at(&format!("{path}.name"), "expected a string")),
    };
    Ok(CabinetSpec {
        usable_width_mm: number(obj, path, "usableWidthMm")?,
        row_gap_mm: number(obj, path, "rowGapMm")?,
        name,
    })
}

/// Parses a document from an already decoded JSON value.
pub(crate) fn document_from_value(root: &Value) -> Result<CabinetDocument> {
    let obj = object(root, "$")?;
    let (version, p) = field(obj, "", "formatVersion")?;
    let format_version = version
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| at(&p, "expected an integer"))?;
    if format_version != FORMAT_VERSION {
        return Err(at(&p, format!("unsupported version {format_version}")));
    }
    let (cab, p) = field(obj, "", "cabinet")?;
    let cabinet = cabinet_spec(cab, &p)?;
    let (list, p) = field(obj, "", "components")?;
    let components = list
        .as_array()
        .ok_or_else(|| at(&p, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(k, c)| component(c, &format!("components[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    CabinetDocument {
        format_version,
        cabinet,
        components,
    }
    .validated()
}

/// Parses a JSON cabinet document; errors name the JSON path of the offending value.
pub fn parse_components_json(text: &str) -> Result<CabinetDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        reason: e.to_string(),
    })?;
    document_from_value(&root)
}

pub fn write_components_json(doc: &CabinetDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    #[test]
    fn round_trip_sample() {
        let doc = datasets::sample15();
        let back = parse_components_json(&write_components_json(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn keys_match_schema() {
        let text = write_components_json(&datasets::sample15());
        let v: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["formatVersion", "cabinet", "components"]);
        let c: Vec<&String> = v["components"][0].as_object().unwrap().keys().collect();
        assert_eq!(c, ["index", "id", "widthMm", "heightMm", "depthMm", "connectsTo", "isHot"]);
        let cab: Vec<&String> = v["cabinet"].as_object().unwrap().keys().collect();
        assert_eq!(cab, ["usableWidthMm", "rowGapMm", "name"]);
    }

    #[test]
    fn missing_width_reports_path() {
        let mut v: Value = serde_json::from_str(&write_components_json(&datasets::sample15())).unwrap();
        v["components"][3].as_object_mut().unwrap().remove("widthMm");
        let e = parse_components_json(&v.to_string()).unwrap_err();
        assert_eq!(
            e,
            Error::JsonParse {
                path: "components[3].widthMm".into(),
                reason: "missing field".into()
            }
        );
    }

    #[test]
    fn bad_values() {
        let mut v: Value = serde_json::from_str(&write_components_json(&datasets::sample15())).unwrap();
        v["components"][0]["isHot"] = Value::from(3);
        assert!(matches!(
            parse_components_json(&v.to_string()),
            Err(Error::JsonParse { path, .. }) if path == "components[0].isHot"
        ));
        assert!(matches!(parse_components_json("{"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_components_json(r#"{"formatVersion":1,"cabinet":{"usableWidthMm":600,"rowGapMm":40}}"#),
            Err(Error::JsonParse { path, .. }) if path == "components"
        ));
    }

    #[test]
    fn csv_and_json_agree() {
        let from_csv = datasets::sample15();
        let from_json = parse_components_json(include_str!("../../data/sample15.json")).unwrap();
        assert_eq!(from_csv, from_json);
    }
}
