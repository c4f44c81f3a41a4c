//! SVG 1.1 picture of a planar representative in the fundamental rectangle
//! [0, n] × [0, 1]. Arc j is the vertical line x = j; the puncture on it sits
//! at height 0 ≡ 1.

use std::fmt::Write;

use ccc_core::bundle_sequences::PlanarRepresentative;

const UNIT: f64 = 160.0;
const MARGIN: f64 = 24.0;

/// One straight piece in rectangle coordinates, x in [0, n], y in [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub segment: usize,
    pub points: Vec<(f64, f64)>,
}

/// Cuts every segment where it meets an integer height and translates the
/// pieces back into the rectangle.
pub fn pieces(rep: &PlanarRepresentative) -> Vec<Piece> {
    let scale = 2.0 * rep.r as f64;
    let mut out = Vec::new();
    for s in &rep.segments {
        let x0 = s.strip as f64;
        let (y0, y1) = (s.y0 as f64 / scale, s.y1 as f64 / scale);
        let at = |y: f64| {
            if y1 == y0 {
                x0
            } else {
                x0 + (y - y0) / (y1 - y0)
            }
        };
        // break heights in travel order
        let mut cuts = vec![y0];
        let (lo, hi) = (y0.min(y1), y0.max(y1));
        let mut ks: Vec<f64> = ((lo.floor() as i64 + 1)..=(hi.ceil() as i64 - 1))
            .map(|k| k as f64)
            .collect();
        if y1 < y0 {
            ks.reverse();
        }
        cuts.extend(ks);
        cuts.push(y1);
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let base = ((a + b) / 2.0).floor();
            let p = |y: f64| (at(y), y - base);
            let pts = if y1 == y0 {
                vec![(x0, a - base), (x0 + 1.0, a - base)]
            } else {
                vec![p(a), p(b)]
            };
            out.push(Piece {
                segment: s.index,
                points: pts,
            });
        }
    }
    out
}

fn px((x, y): (f64, f64)) -> (f64, f64) {
    (MARGIN + x * UNIT, MARGIN + (1.0 - y) * UNIT)
}

pub fn render(rep: &PlanarRepresentative) -> String {
    let (w, h) = (2.0 * MARGIN + rep.n as f64 * UNIT, 2.0 * MARGIN + UNIT);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let (ox, oy) = px((0.0, 1.0));
    let _ = writeln!(
        s,
        "  <rect x=\"{ox}\" y=\"{oy}\" width=\"{}\" height=\"{UNIT}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>",
        rep.n as f64 * UNIT
    );
    for j in 1..rep.n {
        let (x, y0) = px((j as f64, 0.0));
        let (_, y1) = px((j as f64, 1.0));
        let _ = writeln!(s, "  <line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>");
    }
    s.push_str("  <g fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\">\n");
    for p in pieces(rep) {
        let pts: Vec<String> = p
            .points
            .iter()
            .map(|&q| px(q))
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        let _ = writeln!(
            s,
            "    <polyline data-segment=\"{}\" points=\"{}\"/>",
            p.segment,
            pts.join(" ")
        );
    }
    s.push_str("  </g>\n");
    s.push_str("  <g fill=\"white\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for j in 0..=rep.n {
        for y in [0.0, 1.0] {
            let (cx, cy) = px((j as f64, y));
            let _ = writeln!(s, "    <circle cx=\"{cx}\" cy=\"{cy}\" r=\"5\"/>");
        }
    }
    s.push_str("  </g>\n</svg>\n");
    s
}
