//! Interval layout as SVG. Coordinates are decimal approximations and are
//! for display only.

use std::fmt::Write;

use bigfree::rational;
use bigfree::realization::{LetterRow, Realization};

const WIDTH: f64 = 960.0;
const MARGIN: f64 = 20.0;

pub fn render(r: &Realization, rows: &[LetterRow]) -> String {
    let total = rational::approx(r.total()).max(f64::MIN_POSITIVE);
    let scale = (WIDTH - 2.0 * MARGIN) / total;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="90" viewBox="0 0 {WIDTH} 90">"#
    );
    let _ = writeln!(s, "<!-- presentation only: positions are rounded -->");
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="50" x2="{:.3}" y2="50" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    for row in rows {
        let x = MARGIN + rational::approx(&row.start) * scale;
        let w = (rational::approx(&row.end) - rational::approx(&row.start)) * scale;
        let fill = if row.sign > 0 { "#4a7ebb" } else { "#c0504d" };
        let _ = writeln!(
            s,
            r#"<rect x="{x:.3}" y="35" width="{w:.3}" height="30" fill="{fill}" stroke="white" stroke-width="0.5"><title>{}{} ({}, {})</title></rect>"#,
            if row.sign > 0 { "a" } else { "A" },
            row.index,
            rational::format(&row.start),
            rational::format(&row.end)
        );
        if w > 14.0 {
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="28" font-size="10" text-anchor="middle">{}{}</text>"#,
                x + w / 2.0,
                if row.sign > 0 { "a" } else { "A" },
                row.index
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="85" font-size="10">0</text><text x="{:.3}" y="85" font-size="10" text-anchor="end">{}</text>"#,
        WIDTH - MARGIN,
        rational::format(r.total())
    );
    s.push_str("</svg>\n");
    s
}
