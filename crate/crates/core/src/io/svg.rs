use std::fmt::Write as _;

use crate::model::{normalize_edges, Component, ObjectiveVector};
use crate::placement::Placement;

const MARGIN: f64 = 20.0;
const HEADER: f64 = 30.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Draws a placement at 1 px per mm: one `rect` per component (class `hot` or
/// `cold`), one rectilinear `polyline` per wire, and an objective summary line.
pub fn render_svg(placement: &Placement, components: &[Component], objectives: &ObjectiveVector) -> String {
    let content_width = placement
        .components
        .iter()
        .map(|p| p.x_mm + p.width_mm)
        .fold(0.0, f64::max);
    let width = content_width + 2.0 * MARGIN;
    let height = placement.total_height_mm + 2.0 * MARGIN + HEADER;
    let ox = MARGIN;
    let oy = MARGIN + HEADER;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    s.push_str(
        "<style>.hot{fill:#f4a6a6;stroke:#b22222}.cold{fill:#d9e4f2;stroke:#35577d}\
         .wire{fill:none;stroke:#333;stroke-width:1.5;stroke-dasharray:4 2}\
         text{font-family:sans-serif;font-size:12px}</style>\n",
    );
    let _ = writeln!(
        s,
        r#"<text class="summary" x="{MARGIN}" y="{}">heat {:.3} | wire {:.1} mm</text>"#,
        MARGIN + 12.0,
        objectives.heat,
        objectives.wire_mm
    );

    let _ = writeln!(s, r#"<g class="components">"#);
    for c in components {
        let Some(p) = placement.get(c.index) else { continue };
        let class = if c.is_hot { "hot" } else { "cold" };
        let (x, y) = (ox + p.x_mm, oy + p.y_mm);
        let _ = writeln!(
            s,
            r#"<rect class="{class}" data-index="{}" x="{x}" y="{y}" width="{}" height="{}"/>"#,
            c.index, p.width_mm, p.height_mm
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">#{} {}</text>"#,
            x + 4.0,
            y + 14.0,
            c.index,
            escape(&c.id)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="wires">"#);
    for e in normalize_edges(components) {
        let (Some(a), Some(b)) = (placement.get(e.a), placement.get(e.b)) else { continue };
        let (ax, ay) = a.center();
        let (bx, by) = b.center();
        let length = (ax - bx).abs() + (ay - by).abs();
        let _ = writeln!(
            s,
            r#"<polyline class="wire" data-a="{}" data-b="{}" data-length-mm="{length}" points="{},{} {},{} {},{}"><title>{} - {}: {length} mm</title></polyline>"#,
            e.a,
            e.b,
            ox + ax,
            oy + ay,
            ox + bx,
            oy + ay,
            ox + bx,
            oy + by,
            e.a,
            e.b
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CabinetSpec;
    use crate::objectives::{evaluate, EvaluationContext};
    use crate::placement::Layout;

    fn count(doc: &roxmltree::Document, tag: &str) -> usize {
        doc.descendants().filter(|n| n.has_tag_name(tag)).count()
    }

    #[test]
    fn single_component() {
        let c = vec![Component::new(1, "a<b", 10.0, 10.0, 10.0)];
        let ctx = EvaluationContext::new(&c, &CabinetSpec::default()).unwrap();
        let p = ctx.pack(&Layout::identity(1)).unwrap();
        let svg = render_svg(&p, &c, &ObjectiveVector::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(count(&doc, "rect"), 1);
        assert_eq!(count(&doc, "polyline"), 0);
        assert!(svg.contains("#1 a&lt;b"));
    }

    #[test]
    fn wire_annotation_matches_objective() {
        let c = vec![
            Component::new(1, "A", 100.0, 100.0, 1.0).connected_to([3]),
            Component::new(2, "B", 200.0, 100.0, 1.0),
            Component::new(3, "C", 150.0, 50.0, 1.0).hot(true),
        ];
        let ctx = EvaluationContext::new(&c, &CabinetSpec::new("abc", 300.0, 0.0)).unwrap();
        let layout = Layout::identity(3);
        let p = ctx.pack(&layout).unwrap();
        let svg = render_svg(&p, &c, &evaluate(&layout, &ctx).unwrap());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let wires: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
        assert_eq!(wires.len(), 1);
        assert_eq!(wires[0].attribute("data-length-mm"), Some("100"));
        let hot: Vec<_> = doc
            .descendants()
            .filter(|n| n.has_tag_name("rect") && n.attribute("class") == Some("hot"))
            .collect();
        assert_eq!(hot.len(), 1);
        assert_eq!(render_svg(&p, &c, &ObjectiveVector::default()), render_svg(&p, &c, &ObjectiveVector::default()));
    }
}
