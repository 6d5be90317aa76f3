//! Marching squares on exact sign samples, one logarithmic grid per quadrant.
//!
//! In quadrant `(σ1, σ2)` the sample at grid node `(a, b)` is
//! `x = σ1·2^(s·r·u_a)`, `y = σ2·2^(s·r·v_b)`, rounded to a nearby dyadic.
//! Rounding moves the sample, never the sign at it. The left and bottom
//! borders of the grids approach the coordinate axes and are glued to the
//! neighbouring quadrant; the top and right borders approach infinity.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::poly::{Dyadic, PatchPolynomial};
use super::summary::AffineSummary;
use super::OracleError;
use crate::regularity::Lift;
use crate::signs::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceParams {
    /// Cells per side of each quadrant grid.
    pub grid: usize,
    /// Maximal refinement depth for ambiguous cells.
    pub depth: u32,
    /// Margin around the vertices of the tropical curve, in units of `u`.
    pub delta: f64,
}

impl Default for TraceParams {
    fn default() -> Self {
        Self { grid: 128, depth: 6, delta: 1.0 }
    }
}

/// Window in logarithmic coordinates `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleBox {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

/// Bounding box of the gradients of `ν` on the lower faces of its graph
/// (the vertices of the tropical curve), widened by `delta`.
pub fn sample_box(lift: &Lift, delta: f64) -> Result<SampleBox, OracleError> {
    use num_traits::ToPrimitive;
    let pts: Vec<(f64, f64, f64)> =
        lift.values().iter().map(|(p, v)| (p.i as f64, p.j as f64, v.to_f64().unwrap_or(f64::NAN))).collect();
    if pts.iter().any(|p| !p.2.is_finite()) {
        return Err(OracleError::Overflow);
    }
    let mut b =
        SampleBox { u_min: f64::INFINITY, u_max: f64::NEG_INFINITY, v_min: f64::INFINITY, v_max: f64::NEG_INFINITY };
    let n = pts.len();
    for a in 0..n {
        for c in a + 1..n {
            for d in c + 1..n {
                let (p, q, r) = (pts[a], pts[c], pts[d]);
                let det = (q.0 - p.0) * (r.1 - p.1) - (r.0 - p.0) * (q.1 - p.1);
                if det == 0.0 {
                    continue;
                }
                let gu = ((q.2 - p.2) * (r.1 - p.1) - (r.2 - p.2) * (q.1 - p.1)) / det;
                let gv = ((q.0 - p.0) * (r.2 - p.2) - (r.0 - p.0) * (q.2 - p.2)) / det;
                let c0 = p.2 - gu * p.0 - gv * p.1;
                let lower = pts.iter().all(|o| o.2 - (c0 + gu * o.0 + gv * o.1) >= -1e-9);
                if lower {
                    b.u_min = b.u_min.min(gu);
                    b.u_max = b.u_max.max(gu);
                    b.v_min = b.v_min.min(gv);
                    b.v_max = b.v_max.max(gv);
                }
            }
        }
    }
    if !b.u_min.is_finite() {
        // a single lattice point or a degenerate lift: any window will do
        b = SampleBox { u_min: 0.0, u_max: 0.0, v_min: 0.0, v_max: 0.0 };
    }
    // uneven margins keep grid lines off the rational points where branches
    // of the curve tend to sit
    Ok(SampleBox {
        u_min: b.u_min - delta * 1.0137,
        u_max: b.u_max + delta * 1.0291,
        v_min: b.v_min - delta * 1.0173,
        v_max: b.v_max + delta * 1.0219,
    })
}

const QUADRANTS: [(Sign, Sign); 4] =
    [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Minus)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrantStats {
    pub quadrant: String,
    /// Crossings with the vertical axis, seen on the left border.
    pub y_axis_crossings: usize,
    /// Crossings with the horizontal axis, seen on the bottom border.
    pub x_axis_crossings: usize,
    /// Branches leaving through the top or right border.
    pub ends: usize,
    pub saddles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub s: u32,
    pub summary: AffineSummary,
    pub quadrants: Vec<QuadrantStats>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum GridEdge {
    // between (a, b) and (a + 1, b)
    H(usize, usize),
    // between (a, b) and (a, b + 1)
    V(usize, usize),
}

struct Quadrant<'a> {
    p: &'a PatchPolynomial,
    sx: Sign,
    sy: Sign,
    n: usize,
    us: &'a [f64],
    vs: &'a [f64],
    scale: f64,
    signs: Vec<Sign>,
}

impl Quadrant<'_> {
    fn sign(&self, a: usize, b: usize) -> Sign {
        self.signs[a * (self.n + 1) + b]
    }

    fn sample(&self, u: f64, v: f64) -> Sign {
        let x = Dyadic::near_power_of_two(self.scale * u);
        let y = Dyadic::near_power_of_two(self.scale * v);
        self.p.sign_at_dyadic(self.sx, x, self.sy, y)
    }

    /// Whether the corners `(a, b)` and `(a + 1, b + 1)` of a saddle cell are
    /// joined inside the cell; `None` if neither diagonal pair is joined at
    /// any depth up to `depth`.
    fn diagonal_joined(&self, a: usize, b: usize, depth: u32) -> Option<bool> {
        let (u0, u1, v0, v1) = (self.us[a], self.us[a + 1], self.vs[b], self.vs[b + 1]);
        let main = self.sign(a, b);
        for d in 1..=depth {
            let k = 1usize << d;
            let at = |lo: f64, hi: f64, i: usize| if i == k { hi } else { lo + (hi - lo) * i as f64 / k as f64 };
            let fine: Vec<Sign> = (0..=k)
                .flat_map(|i| (0..=k).map(move |j| (i, j)))
                .map(|(i, j)| {
                    if (i == 0 || i == k) && (j == 0 || j == k) {
                        self.sign(a + i / k, b + j / k)
                    } else {
                        self.sample(at(u0, u1, i), at(v0, v1, j))
                    }
                })
                .collect();
            let joined = |from: (usize, usize), to: (usize, usize), s: Sign| {
                let mut seen = vec![false; (k + 1) * (k + 1)];
                let mut queue = VecDeque::from([from]);
                seen[from.0 * (k + 1) + from.1] = true;
                while let Some((i, j)) = queue.pop_front() {
                    if (i, j) == to {
                        return true;
                    }
                    let steps = [(i.wrapping_sub(1), j), (i + 1, j), (i, j.wrapping_sub(1)), (i, j + 1)];
                    for (ni, nj) in steps {
                        if ni <= k && nj <= k && !seen[ni * (k + 1) + nj] && fine[ni * (k + 1) + nj] == s {
                            seen[ni * (k + 1) + nj] = true;
                            queue.push_back((ni, nj));
                        }
                    }
                }
                false
            };
            let main_joined = joined((0, 0), (k, k), main);
            let anti_joined = joined((k, 0), (0, k), -main);
            match (main_joined, anti_joined) {
                (true, false) => return Some(true),
                (false, true) => return Some(false),
                _ => {}
            }
        }
        None
    }
}

/// Traces the affine zero set of `p` inside the window and summarizes it.
pub fn trace_affine(p: &PatchPolynomial, window: &SampleBox, params: &TraceParams) -> Result<Trace, OracleError> {
    if params.grid < 16 {
        return Err(OracleError::InvalidParameter(format!("grid must be at least 16, got {}", params.grid)));
    }
    let n = params.grid;
    let us: Vec<f64> = (0..=n).map(|a| window.u_min + (window.u_max - window.u_min) * a as f64 / n as f64).collect();
    let vs: Vec<f64> = (0..=n).map(|b| window.v_min + (window.v_max - window.v_min) * b as f64 / n as f64).collect();
    let scale = p.s() as f64 * p.denominator() as f64;
    let unresolved = |detail: String| OracleError::Unresolved { s: p.s(), detail };

    let mut node_of: HashMap<(usize, GridEdge), usize> = HashMap::new();
    let mut positions: Vec<(i64, i64)> = Vec::new();
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut stats = Vec::new();
    let mut quadrants = Vec::new();

    for (q, &(sx, sy)) in QUADRANTS.iter().enumerate() {
        let xs: Vec<Dyadic> = us.iter().map(|u| Dyadic::near_power_of_two(scale * u)).collect();
        let ys: Vec<Dyadic> = vs.iter().map(|v| Dyadic::near_power_of_two(scale * v)).collect();
        let signs: Vec<Sign> = (0..=n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let (xs, ys) = (&xs, &ys);
                (0..=n).map(move |b| p.sign_at_dyadic(sx, xs[a], sy, ys[b]))
            })
            .collect();
        quadrants.push(Quadrant { p, sx, sy, n, us: &us, vs: &vs, scale, signs });
        let quad = &quadrants[q];
        let (fx, fy) = (if sx == Sign::Minus { -1 } else { 1 }, if sy == Sign::Minus { -1 } else { 1 });
        let mut node = |e: GridEdge| -> usize {
            *node_of.entry((q, e)).or_insert_with(|| {
                let pos = match e {
                    GridEdge::H(a, b) => (fx * (2 * a as i64 + 1), fy * 2 * b as i64),
                    GridEdge::V(a, b) => (fx * 2 * a as i64, fy * (2 * b as i64 + 1)),
                };
                positions.push(pos);
                positions.len() - 1
            })
        };
        let mut saddles = 0;
        for a in 0..n {
            for b in 0..n {
                let c = [quad.sign(a, b), quad.sign(a + 1, b), quad.sign(a + 1, b + 1), quad.sign(a, b + 1)];
                let sides = [GridEdge::H(a, b), GridEdge::V(a + 1, b), GridEdge::H(a, b + 1), GridEdge::V(a, b)];
                let cut: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).collect();
                match cut.len() {
                    0 => {}
                    2 => {
                        let (e0, e1) = (node(sides[cut[0]]), node(sides[cut[1]]));
                        links.push((e0, e1));
                    }
                    _ => {
                        saddles += 1;
                        let joined = quad
                            .diagonal_joined(a, b, params.depth)
                            .ok_or_else(|| unresolved(format!("saddle cell ({a}, {b}) in quadrant {q}")))?;
                        // corners 0 and 2 joined: cut off corners 1 and 3, else 0 and 2
                        let pairs = if joined { [(0, 1), (2, 3)] } else { [(3, 0), (1, 2)] };
                        for (i, j) in pairs {
                            let (e0, e1) = (node(sides[i]), node(sides[j]));
                            links.push((e0, e1));
                        }
                    }
                }
            }
        }
        let border = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&k| f(k)).count();
        stats.push(QuadrantStats {
            quadrant: format!("{}{}", sx.symbol(), sy.symbol()),
            y_axis_crossings: border(&|b| quad.sign(0, b) != quad.sign(0, b + 1)),
            x_axis_crossings: border(&|a| quad.sign(a, 0) != quad.sign(a + 1, 0)),
            ends: border(&|b| quad.sign(n, b) != quad.sign(n, b + 1))
                + border(&|a| quad.sign(a, n) != quad.sign(a + 1, n)),
            saddles,
        });
    }

    // glue across the axes: quadrants differing in the sign of x share the
    // left border, those differing in the sign of y the bottom border
    for (q1, q2, left) in [(0, 1, true), (2, 3, true), (0, 2, false), (1, 3, false)] {
        let crossings = |q: usize| -> Vec<usize> {
            let quad = &quadrants[q];
            (0..n)
                .filter(|&k| {
                    if left {
                        quad.sign(0, k) != quad.sign(0, k + 1)
                    } else {
                        quad.sign(k, 0) != quad.sign(k + 1, 0)
                    }
                })
                .collect()
        };
        let (c1, c2) = (crossings(q1), crossings(q2));
        if c1.len() != c2.len() {
            return Err(unresolved(format!("axis crossings of quadrants {q1} and {q2} disagree")));
        }
        // matched in order; the partner is moved onto the same point of the axis
        let edge = |k: usize| if left { GridEdge::V(0, k) } else { GridEdge::H(k, 0) };
        for (k1, k2) in c1.into_iter().zip(c2) {
            let (a, b) = (node_of[&(q1, edge(k1))], node_of[&(q2, edge(k2))]);
            positions[b] = positions[a];
            links.push((a, b));
        }
    }

    let count = positions.len();
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); count];
    for &(a, b) in &links {
        adjacent[a].push(b);
        adjacent[b].push(a);
    }
    let is_end = |v: usize| -> bool {
        node_of.iter().any(|((_, e), &id)| {
            id == v && matches!(e, GridEdge::H(_, b) if *b == n) || id == v && matches!(e, GridEdge::V(a, _) if *a == n)
        })
    };
    let mut ends = Vec::new();
    for v in 0..count {
        match adjacent[v].len() {
            2 => {}
            1 if is_end(v) => ends.push(v),
            d => return Err(unresolved(format!("traced vertex of degree {d}"))),
        }
    }
    let mut seen = vec![false; count];
    let mut paths = 0;
    for &start in &ends {
        if seen[start] {
            continue;
        }
        let mut at = start;
        let mut prev = usize::MAX;
        loop {
            seen[at] = true;
            match adjacent[at].iter().find(|&&w| w != prev && !seen[w]) {
                Some(&w) => {
                    prev = at;
                    at = w;
                }
                None => break,
            }
        }
        paths += 1;
    }
    let mut cycles = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        let mut poly = Vec::new();
        let mut at = start;
        loop {
            seen[at] = true;
            poly.push(positions[at]);
            match adjacent[at].iter().find(|&&w| !seen[w]) {
                Some(&w) => at = w,
                None => break,
            }
        }
        cycles.push(poly);
    }
    Ok(Trace { s: p.s(), summary: AffineSummary::from_polygons(&cycles, paths), quadrants: stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::poly::patch_polynomial;
    use crate::signs::SignDistribution;

    fn trace(m: u32, d: &SignDistribution, s: u32) -> Result<Trace, OracleError> {
        let lift = Lift::standard(m);
        let p = patch_polynomial(d, &lift, s).unwrap();
        trace_affine(&p, &sample_box(&lift, 1.0).unwrap(), &TraceParams::default())
    }

    #[test]
    fn window_of_standard_lift() {
        let b = sample_box(&Lift::standard(2), 0.0).unwrap();
        // gradients of i² + ij + j² on the unit triangles of T_2
        assert_eq!((b.u_min, b.u_max, b.v_min, b.v_max), (1.0, 3.0, 1.0, 3.0));
    }

    #[test]
    fn line_and_conic() {
        let t = trace(1, &SignDistribution::harnack(1).unwrap(), 8).unwrap();
        let s = &t.summary;
        assert_eq!((s.bounded_components, s.unbounded_ends, s.affine_components), (0, 2, 1));
        let t = trace(2, &SignDistribution::harnack(2).unwrap(), 8).unwrap();
        let s = &t.summary;
        assert_eq!((s.bounded_components, s.unbounded_ends, s.affine_components), (0, 4, 2));
    }

    #[test]
    fn harnack_quartic() {
        let t = trace(4, &SignDistribution::harnack(4).unwrap(), 10).unwrap();
        assert_eq!(t.summary.nesting, "⟨3⟩");
        assert_eq!(t.summary.unbounded_ends, 8);
        assert_eq!(t.quadrants.len(), 4);
    }

    #[test]
    fn small_grid_rejected() {
        let lift = Lift::standard(1);
        let p = patch_polynomial(&SignDistribution::harnack(1).unwrap(), &lift, 1).unwrap();
        let params = TraceParams { grid: 8, ..TraceParams::default() };
        assert!(matches!(
            trace_affine(&p, &sample_box(&lift, 1.0).unwrap(), &params),
            Err(OracleError::InvalidParameter(_))
        ));
    }
}
