//! Self-contained SVG graphs of interval maps.

use std::fmt::Write;

use crate::systems::{Dynamics, IntervalMap};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const SAMPLES_PER_PIECE: usize = 1000;
const COLOURS: [&str; 4] = ["#1f4e99", "#b0301c", "#2f7d32", "#6a3d9a"];

/// Plots each map over its domain together with the diagonal `y = x`.
/// Every linear piece is sampled at 10³ points.
pub fn render_maps(title: &str, maps: &[&IntervalMap]) -> String {
    let (lo, hi) = maps
        .iter()
        .map(|m| m.domain())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), d| {
            (a.min(d.lo), b.max(d.hi))
        });
    let inner = SIZE - 2.0 * MARGIN;
    let px = |x: f64| MARGIN + inner * (x - lo) / (hi - lo);
    let py = |y: f64| SIZE - MARGIN - inner * (y - lo) / (hi - lo);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", escape(title)).unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="#000000"/>"##
    )
    .unwrap();
    writeln!(
        s,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999999" stroke-dasharray="4 4"/>"##,
        px(lo),
        py(lo),
        px(hi),
        py(hi)
    )
    .unwrap();
    for (label, v) in [(lo, lo), (hi, hi)].iter().map(|&(a, b)| (format!("{a}"), b)) {
        writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{label}</text>"#,
            px(v),
            SIZE - MARGIN + 16.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{label}</text>"#,
            MARGIN - 6.0,
            py(v) + 4.0
        )
        .unwrap();
    }

    for (k, map) in maps.iter().enumerate() {
        let colour = COLOURS[k % COLOURS.len()];
        let mut points = String::new();
        for piece in map.pieces() {
            let (a, b) = (piece.lo.value(), piece.hi.value());
            for j in 0..=SAMPLES_PER_PIECE {
                let x = a + (b - a) * j as f64 / SAMPLES_PER_PIECE as f64;
                // the open end of (0, 1] is drawn as its limit
                let x = if map.domain().contains(x) { x } else { x + 1e-12 };
                write!(points, "{:.3},{:.3} ", px(x), py(map.apply(x))).unwrap();
            }
        }
        writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="13" fill="{colour}">{}</text>"#,
            MARGIN + 8.0,
            MARGIN + 18.0 + 16.0 * k as f64,
            escape(map.label())
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
