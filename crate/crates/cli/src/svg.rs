//! SVG picture of a T-curve on the square `|x| + |y| <= m`.

use std::collections::BTreeSet;
use std::fmt::Write;

use tcurve_core::analysis::Analysis;
use tcurve_core::signs::Sign;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions {
    /// Arrows along a complex orientation, when the curve has one.
    pub arrows: bool,
    /// Seconds since the epoch, written as a comment.
    pub timestamp: Option<u64>,
}

struct Frame {
    scale: f64,
}

impl Frame {
    /// Maps a point given with doubled coordinates.
    fn map2(&self, x2: i32, y2: i32) -> (f64, f64) {
        (SIZE / 2.0 + self.scale * x2 as f64 / 2.0, SIZE / 2.0 - self.scale * y2 as f64 / 2.0)
    }
}

pub fn render(a: &Analysis, opts: SvgOptions) -> String {
    let m = a.degree();
    let f = Frame { scale: (SIZE / 2.0 - MARGIN) / m as f64 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    if let Some(t) = opts.timestamp {
        let _ = writeln!(out, "<!-- generated at unix time {t} -->");
    }
    let _ = writeln!(out, "<title>degree {m}: {}</title>", a.scheme.code());
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    let mut edges = BTreeSet::new();
    for t in a.square.triangles() {
        for k in 0..3 {
            let (p, q) = (t.vertices[k], t.vertices[(k + 1) % 3]);
            edges.insert(if p < q { (p, q) } else { (q, p) });
        }
    }
    let _ = writeln!(out, r##"<g class="triangulation" stroke="#c8c8c8" stroke-width="1">"##);
    for (p, q) in edges {
        let (x1, y1) = f.map2(2 * p.x, 2 * p.y);
        let (x2, y2) = f.map2(2 * q.x, 2 * q.y);
        let _ = writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    let font = (f.scale * 0.35).clamp(6.0, 18.0);
    let _ = writeln!(
        out,
        r##"<g class="signs" font-family="monospace" font-size="{font:.1}" text-anchor="middle" dominant-baseline="central" fill="#555">"##
    );
    for p in a.square.points() {
        let (x, y) = f.map2(2 * p.x, 2 * p.y);
        let glyph = match a.square.sign(p) {
            Sign::Plus => "+",
            Sign::Minus => "−",
        };
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}">{glyph}</text>"#);
    }
    let _ = writeln!(out, "</g>");

    let sq = &a.square_curve;
    let proj = &a.projective;
    let n = proj.components().len().max(1);
    let witness = a.verdict.as_ref().and_then(|v| v.witness.as_ref()).filter(|_| opts.arrows);
    for (c, comp) in proj.components().iter().enumerate() {
        let hue = 360.0 * c as f64 / n as f64;
        let mut d = String::new();
        let mut last = None;
        for &s in &comp.segments {
            let [a0, b0] = sq.segments()[s].ends;
            // orient the square segment along the traversal of the projective component
            let (u, v) = if last == Some(sq.vertices()[b0].key()) { (b0, a0) } else { (a0, b0) };
            let (pu, pv) = (sq.vertices()[u], sq.vertices()[v]);
            let (x1, y1) = f.map2(pu.x2, pu.y2);
            let (x2, y2) = f.map2(pv.x2, pv.y2);
            if last != Some(pu.key()) {
                let _ = write!(d, "M{x1:.2} {y1:.2} ");
            }
            let _ = write!(d, "L{x2:.2} {y2:.2} ");
            last = Some(pv.key());
        }
        let _ = writeln!(
            out,
            r#"<path class="component" data-component="{c}" d="{}" fill="none" stroke="hsl({hue:.0},80%,40%)" stroke-width="3" stroke-linejoin="round"/>"#,
            d.trim_end()
        );
    }
    if let Some(w) = witness {
        let _ = writeln!(out, r#"<g class="orientation" fill="black">"#);
        for (s, seg) in sq.segments().iter().enumerate() {
            let forward = w.segments[s] == proj.segments()[s].ends;
            let (tail, head) = if forward { (seg.ends[0], seg.ends[1]) } else { (seg.ends[1], seg.ends[0]) };
            let (x1, y1) = f.map2(sq.vertices()[tail].x2, sq.vertices()[tail].y2);
            let (x2, y2) = f.map2(sq.vertices()[head].x2, sq.vertices()[head].y2);
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1e-9);
            let (ux, uy) = ((x2 - x1) / len, (y2 - y1) / len);
            let r = (f.scale * 0.12).clamp(3.0, 8.0);
            let tip = (mx + ux * r, my + uy * r);
            let left = (mx - ux * r - uy * r * 0.7, my - uy * r + ux * r * 0.7);
            let right = (mx - ux * r + uy * r * 0.7, my - uy * r - ux * r * 0.7);
            let _ = writeln!(
                out,
                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                tip.0, tip.1, left.0, left.1, right.0, right.1
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}
