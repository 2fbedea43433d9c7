use std::fmt::Write as _;

use super::CabinetDocument;
use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component};

pub const CSV_HEADER: &str = "#,ID,Width,Height,Depth,ConnectsTo,IsHot";

/// Parses a component table.
///
/// Optional `!width=<mm>`, `!rowgap=<mm>` and `!name=<text>` directive lines may
/// precede the header. `ConnectsTo` is a `;`-separated index list, optionally in
/// brackets; `IsHot` is `0` or `1`. Lines and columns in errors are 1-based.
pub fn parse_components_csv(text: &str) -> Result<CabinetDocument> {
    let mut cabinet = CabinetSpec::default();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let err = |line, column, reason: String| Error::Parse { line, column, reason };

    let mut header_seen = false;
    for (line, raw) in lines.by_ref() {
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(directive) = trimmed.strip_prefix('!') {
            let (key, value) = directive
                .split_once('=')
                .ok_or_else(|| err(line, 1, format!("malformed directive `{trimmed}`")))?;
            let number = || {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| err(line, 1, format!("`{}` is not a number", value.trim())))
            };
            match key.trim() {
                "width" => cabinet.usable_width_mm = number()?,
                "rowgap" => cabinet.row_gap_mm = number()?,
                "name" => cabinet.name = value.trim().to_string(),
                other => return Err(err(line, 1, format!("unknown directive `{other}`"))),
            }
            continue;
        }
        if trimmed != CSV_HEADER {
            return Err(err(line, 1, format!("expected header `{CSV_HEADER}`")));
        }
        header_seen = true;
        break;
    }
    if !header_seen {
        return Err(err(1, 1, "missing header row".into()));
    }
    cabinet.validate().map_err(|e| Error::AtLine { line: 1, source: Box::new(e) })?;

    let mut components = Vec::new();
    let mut line_of = Vec::new();
    for (line, raw) in lines {
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(err(line, 1, format!("expected 7 fields, found {}", fields.len())));
        }
        let int = |col: usize| {
            fields[col - 1]
                .parse::<usize>()
                .map_err(|_| err(line, col, format!("`{}` is not an index", fields[col - 1])))
        };
        let real = |col: usize| {
            fields[col - 1]
                .parse::<f64>()
                .map_err(|_| err(line, col, format!("`{}` is not a number", fields[col - 1])))
        };
        let index = int(1)?;
        let id = fields[1].to_string();
        let (width_mm, height_mm, depth_mm) = (real(3)?, real(4)?, real(5)?);
        let list = fields[5].trim_start_matches('[').trim_end_matches(']');
        let connects_to = list
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err(line, 6, format!("`{s}` is not an index"))))
            .collect::<Result<Vec<_>>>()?;
        let is_hot = match fields[6] {
            "0" => false,
            "1" => true,
            other => return Err(err(line, 7, format!("IsHot must be 0 or 1, found `{other}`"))),
        };
        components.push(Component {
            index,
            id,
            width_mm,
            height_mm,
            depth_mm,
            connects_to,
            is_hot,
        });
        line_of.push((index, line));
    }

    CabinetDocument::new(cabinet, components).validated().map_err(|e| {
        let offender = match &e {
            Error::DuplicateIndex(i)
            | Error::SelfConnection(i)
            | Error::IndexOutOfRange { index: i, .. }
            | Error::DanglingConnection { index: i, .. }
            | Error::NonPositiveDimension { index: i, .. } => Some(*i),
            _ => None,
        };
        // Duplicates report the later row.
        let line = offender
            .and_then(|i| line_of.iter().rev().find(|(idx, _)| *idx == i).map(|(_, l)| *l))
            .unwrap_or(1);
        Error::AtLine { line, source: Box::new(e) }
    })
}

pub fn write_components_csv(doc: &CabinetDocument) -> String {
    let mut out = String::new();
    let c = &doc.cabinet;
    let _ = writeln!(out, "!name={}", c.name);
    let _ = writeln!(out, "!width={}", c.usable_width_mm);
    let _ = writeln!(out, "!rowgap={}", c.row_gap_mm);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for comp in &doc.components {
        let connects: Vec<String> = comp.connects_to.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            comp.index,
            comp.id,
            comp.width_mm,
            comp.height_mm,
            comp.depth_mm,
            connects.join(";"),
            u8::from(comp.is_hot)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HEAD: &str = "#,ID,Width,Height,Depth,ConnectsTo,IsHot\n";

    fn table(rows: &str) -> String {
        format!("{HEAD}{rows}")
    }

    #[test]
    fn table_rows() {
        let mut rows = String::new();
        for i in 1..=15 {
            match i {
                1 => rows.push_str("1,0001,120.0,150.0,200.0,3,1\n"),
                14 => rows.push_str("14,0009,111.6,170.0,200.0,12;15,0\n"),
                _ => rows.push_str(&format!("{i},x,100,100,100,,0\n")),
            }
        }
        let doc = parse_components_csv(&table(&rows)).unwrap();
        let c14 = &doc.components[13];
        assert_eq!(c14.connects_to, vec![12, 15]);
        assert!(!c14.is_hot);
        assert_eq!(c14.width_mm, 111.6);
        let c1 = &doc.components[0];
        assert!(c1.is_hot);
        assert_eq!(c1.connects_to, vec![3]);
        assert_eq!(doc.cabinet, CabinetSpec::default());
    }

    #[test]
    fn directives_and_brackets() {
        let text = "!width=300\n!rowgap=0\n!name=abc\n".to_string() + &table("1,a,10,10,10,[2],0\n2,b,10,10,10,,1\n");
        let doc = parse_components_csv(&text).unwrap();
        assert_eq!(doc.cabinet, CabinetSpec::new("abc", 300.0, 0.0));
        assert_eq!(doc.components[0].connects_to, vec![2]);
    }

    #[test]
    fn hot_flag_domain() {
        let e = parse_components_csv(&table("1,a,10,10,10,,2\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 7, .. }), "{e}");
    }

    #[test]
    fn malformed_rows() {
        assert!(matches!(
            parse_components_csv(&table("1,a,ten,10,10,,0\n")),
            Err(Error::Parse { line: 2, column: 3, .. })
        ));
        assert!(matches!(
            parse_components_csv(&table("1,a,10,10,10,0\n")),
            Err(Error::Parse { line: 2, column: 1, .. })
        ));
        assert!(matches!(
            parse_components_csv("#,ID,W\n1,a,1,1,1,,0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_components_csv(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation_errors_carry_line() {
        let e = parse_components_csv(&table("1,a,10,10,10,,0\n2,b,10,10,10,99,0\n3,c,10,10,10,,0\n")).unwrap_err();
        assert_eq!(
            e,
            Error::AtLine {
                line: 3,
                source: Box::new(Error::DanglingConnection { index: 2, target: 99 })
            }
        );
    }

    proptest! {
        #[test]
        fn round_trip_is_a_fixpoint(
            dims in proptest::collection::vec((1.0f64..500.0, 1.0f64..500.0, any::<bool>()), 1..12),
            width in 500.0f64..900.0,
        ) {
            let n = dims.len();
            let components: Vec<Component> = dims
                .iter()
                .enumerate()
                .map(|(i, &(w, h, hot))| {
                    Component::new(i + 1, format!("{:04}", i), w, h, 200.0)
                        .hot(hot)
                        .connected_to((i + 2..=n).take(2))
                })
                .collect();
            let doc = CabinetDocument::new(CabinetSpec::new("p", width, 40.0), components);
            let once = parse_components_csv(&write_components_csv(&doc)).unwrap();
            prop_assert_eq!(&once, &doc);
            let twice = parse_components_csv(&write_components_csv(&once)).unwrap();
            prop_assert_eq!(twice, once);
        }
    }
}
