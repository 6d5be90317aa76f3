//! Ovals, the one-sided component, complementary regions and the real scheme
//! in Viro's `⟨…⟩` notation.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::curve::{CurveGraph, GluingMode};
use crate::dsu::Dsu;
use crate::error::PatchworkError;
use crate::signs::Sign;
use crate::square::{SquareComplex, SquarePoint};

/// Partition of the projective components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub ovals: Vec<usize>,
    pub one_sided: Option<usize>,
}

/// A component is one-sided exactly when it crosses the glued boundary an odd
/// number of times.
pub fn classify_components(c: &CurveGraph) -> Result<Classification, PatchworkError> {
    if c.mode() != GluingMode::Projective {
        return Err(PatchworkError::WrongMode { expected: "projective", got: c.mode().name() });
    }
    let mut ovals = Vec::new();
    let mut one_sided = None;
    for (k, comp) in c.components().iter().enumerate() {
        let crossings = comp.vertices.iter().filter(|&&v| c.vertices()[v].on_boundary).count();
        if crossings % 2 == 0 {
            ovals.push(k);
        } else if one_sided.replace(k).is_some() {
            return Err(PatchworkError::Internal("two one-sided components".into()));
        }
    }
    if one_sided.is_some() != (c.degree() % 2 == 1) {
        return Err(PatchworkError::Internal(format!(
            "degree {} curve with{} a one-sided component",
            c.degree(),
            if one_sided.is_some() { "" } else { "out" }
        )));
    }
    Ok(Classification { ovals, one_sided })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Number of triangulation vertices in the region.
    pub points: usize,
    pub representative: SquarePoint,
    /// Extended sign, when it is constant on the region (always for even degree).
    pub sign: Option<Sign>,
}

/// One oval seen as an edge of the region tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OvalSides {
    pub component: usize,
    pub outer: usize,
    pub inner: usize,
    /// Number of ovals containing this one.
    pub depth: usize,
    /// Meets the line at infinity.
    pub meets_boundary: bool,
}

/// Complementary regions of the projective curve, labelled through the
/// triangulation vertices (every region contains one).
#[derive(Debug, Clone, Serialize)]
pub struct RegionComplex {
    degree: u32,
    #[serde(skip)]
    labels: Vec<usize>,
    regions: Vec<Region>,
    ovals: Vec<OvalSides>,
    root: usize,
}

impl RegionComplex {
    pub fn build(sq: &SquareComplex, c: &CurveGraph, cls: &Classification) -> Result<Self, PatchworkError> {
        if sq.degree() != c.degree() {
            return Err(PatchworkError::DegreeMismatch { triangulation: sq.degree(), signs: c.degree() });
        }
        let m = sq.degree();
        let n = sq.side() * sq.side();
        let mut dsu = Dsu::new(n);
        let mut cover = Dsu::new(2 * n);
        let mut is_vertex = vec![false; n];
        for t in sq.triangles() {
            for v in t.vertices {
                is_vertex[sq.slot(v)] = true;
            }
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                let (p, q) = (t.vertices[a], t.vertices[b]);
                if sq.sign(p) == sq.sign(q) {
                    let (i, j) = (sq.slot(p), sq.slot(q));
                    dsu.union(i, j);
                    cover.union(i, j);
                    cover.union(n + i, n + j);
                }
            }
        }
        let vertices: Vec<SquarePoint> = sq.points().filter(|p| is_vertex[sq.slot(*p)]).collect();
        for &p in vertices.iter().filter(|p| sq.is_boundary(**p)) {
            let (i, j) = (sq.slot(p), sq.slot(p.antipode()));
            dsu.union(i, j);
            cover.union(i, n + j);
        }

        let mut labels = vec![usize::MAX; n];
        let mut root_of_label: Vec<usize> = Vec::new();
        let mut regions: Vec<Region> = Vec::new();
        for &p in &vertices {
            let k = sq.slot(p);
            let r = dsu.find(k);
            let id = match root_of_label.iter().position(|&x| x == r) {
                Some(id) => id,
                None => {
                    root_of_label.push(r);
                    regions.push(Region { points: 0, representative: p, sign: Some(sq.sign(p)) });
                    regions.len() - 1
                }
            };
            labels[k] = id;
            let reg = &mut regions[id];
            reg.points += 1;
            if reg.sign != Some(sq.sign(p)) {
                reg.sign = None;
            }
        }

        // the two sides of each component, read off one of its segments
        let sides = |comp: usize| -> (usize, usize) {
            let seg = &c.segments()[c.components()[comp].segments[0]];
            let t = &sq.triangles()[seg.triangle];
            let other = *t.vertices.iter().find(|v| **v != seg.minority).expect("triangle has three vertices");
            (labels[sq.slot(seg.minority)], labels[sq.slot(other)])
        };

        let root = match cls.one_sided {
            Some(j) => {
                let (a, b) = sides(j);
                if a != b {
                    return Err(PatchworkError::Internal("one-sided component separates two regions".into()));
                }
                a
            }
            None => {
                let mut nonorientable = (0..regions.len()).filter(|&r| {
                    let k = sq.slot(regions[r].representative);
                    cover.find(k) == cover.find(n + k)
                });
                let root = nonorientable.next();
                if root.is_none() || nonorientable.next().is_some() {
                    return Err(PatchworkError::Internal("expected exactly one non-orientable region".into()));
                }
                root.unwrap()
            }
        };

        if regions.len() != cls.ovals.len() + 1 {
            return Err(PatchworkError::Internal(format!("{} regions for {} ovals", regions.len(), cls.ovals.len())));
        }
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); regions.len()];
        for (e, &comp) in cls.ovals.iter().enumerate() {
            let (a, b) = sides(comp);
            if a == b {
                return Err(PatchworkError::Internal(format!("oval {comp} does not separate")));
            }
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        let mut ovals: Vec<Option<OvalSides>> = vec![None; cls.ovals.len()];
        let mut depth_of_region = vec![usize::MAX; regions.len()];
        depth_of_region[root] = 0;
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            for &(s, e) in &adjacency[r] {
                if ovals[e].is_some() {
                    continue;
                }
                if depth_of_region[s] != usize::MAX {
                    return Err(PatchworkError::Internal("region graph has a cycle".into()));
                }
                depth_of_region[s] = depth_of_region[r] + 1;
                let comp = cls.ovals[e];
                let meets_boundary = c.components()[comp].vertices.iter().any(|&v| c.vertices()[v].on_boundary);
                ovals[e] =
                    Some(OvalSides { component: comp, outer: r, inner: s, depth: depth_of_region[r], meets_boundary });
                stack.push(s);
            }
        }
        let ovals = ovals
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PatchworkError::Internal("region graph is disconnected".into()))?;
        Ok(Self { degree: m, labels, regions, ovals, root })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn ovals(&self) -> &[OvalSides] {
        &self.ovals
    }

    /// The outermost region: non-orientable for even degree, the complement of
    /// the one-sided component and all ovals for odd degree.
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn region_of(&self, sq: &SquareComplex, p: SquarePoint) -> usize {
        self.labels[sq.slot(p)]
    }
}

/// An oval together with the ovals it immediately contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Nest {
    pub children: Vec<Nest>,
}

impl Nest {
    pub fn leaf() -> Self {
        Nest { children: Vec::new() }
    }

    pub fn new(mut children: Vec<Nest>) -> Self {
        children.sort_by(canonical_order);
        Nest { children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Nest::size).sum::<usize>()
    }
}

// Non-empty nests first, ordered by their encoding; leaves last.
fn canonical_order(a: &Nest, b: &Nest) -> Ordering {
    match (a.children.is_empty(), b.children.is_empty()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => encode_group(&a.children).cmp(&encode_group(&b.children)),
    }
}

fn encode_group(nests: &[Nest]) -> String {
    let leaves = nests.iter().filter(|n| n.children.is_empty()).count();
    let mut parts: Vec<String> =
        nests.iter().filter(|n| !n.children.is_empty()).map(|n| format!("1⟨{}⟩", encode_group(&n.children))).collect();
    parts.sort();
    if leaves > 0 || parts.is_empty() {
        parts.push(leaves.to_string());
    }
    parts.join(" ⊔ ")
}

/// Isotopy type of a curve in `RP^2`: an optional one-sided component and a
/// forest of ovals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealScheme {
    one_sided: bool,
    ovals: Vec<Nest>,
}

impl RealScheme {
    pub fn new(one_sided: bool, ovals: Vec<Nest>) -> Self {
        let mut ovals = ovals;
        ovals.sort_by(canonical_order);
        Self { one_sided, ovals }
    }

    pub fn empty() -> Self {
        Self::new(false, Vec::new())
    }

    /// `n` disjoint ovals, none inside another.
    pub fn leaves(one_sided: bool, n: usize) -> Self {
        Self::new(one_sided, vec![Nest::leaf(); n])
    }

    pub fn one_sided(&self) -> bool {
        self.one_sided
    }

    pub fn ovals(&self) -> &[Nest] {
        &self.ovals
    }

    pub fn oval_count(&self) -> usize {
        self.ovals.iter().map(Nest::size).sum()
    }

    pub fn component_count(&self) -> usize {
        self.oval_count() + self.one_sided as usize
    }

    /// Ovals inside an even number of other ovals.
    pub fn even_ovals(&self) -> usize {
        self.count_by_parity(false)
    }

    pub fn odd_ovals(&self) -> usize {
        self.count_by_parity(true)
    }

    fn count_by_parity(&self, odd: bool) -> usize {
        fn walk(n: &Nest, depth: usize, odd: bool) -> usize {
            let own = usize::from((depth % 2 == 1) == odd);
            own + n.children.iter().map(|c| walk(c, depth + 1, odd)).sum::<usize>()
        }
        self.ovals.iter().map(|n| walk(n, 0, odd)).sum()
    }

    /// Canonical Viro code, e.g. `⟨1⟨1⟩ ⊔ 9⟩` or `⟨J ⊔ 6⟩`.
    pub fn code(&self) -> String {
        viro_code(self)
    }

    /// The code with `<`, `>` and `|` in place of `⟨`, `⟩` and `⊔`.
    pub fn ascii(&self) -> String {
        self.code().replace('⟨', "<").replace('⟩', ">").replace('⊔', "|")
    }

    /// Parses a code in either the Unicode or the ASCII alphabet.
    pub fn parse(code: &str) -> Result<Self, String> {
        let text: String = code
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '<' => '⟨',
                '>' => '⟩',
                '|' => '⊔',
                c => c,
            })
            .collect();
        let mut p = Parser { chars: text.chars().collect(), at: 0 };
        p.expect('⟨')?;
        let one_sided = p.peek() == Some('J');
        if one_sided {
            p.at += 1;
            if p.peek() == Some('⊔') {
                p.at += 1;
            } else {
                p.expect('⟩')?;
                p.done()?;
                return Ok(Self::new(true, Vec::new()));
            }
        }
        let ovals = p.group()?;
        p.expect('⟩')?;
        p.done()?;
        Ok(Self::new(one_sided, ovals))
    }
}

struct Parser {
    chars: Vec<char>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(format!("expected {c:?} at position {}", self.at))
        }
    }

    fn done(&self) -> Result<(), String> {
        if self.at == self.chars.len() {
            Ok(())
        } else {
            Err(format!("trailing input at position {}", self.at))
        }
    }

    fn number(&mut self) -> Result<usize, String> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        let digits: String = self.chars[start..self.at].iter().collect();
        digits.parse().map_err(|_| format!("expected a count at position {start}"))
    }

    fn group(&mut self) -> Result<Vec<Nest>, String> {
        let mut nests = Vec::new();
        loop {
            let n = self.number()?;
            if self.peek() == Some('⟨') {
                self.at += 1;
                let inner = self.group()?;
                self.expect('⟩')?;
                nests.extend(std::iter::repeat_n(Nest::new(inner), n));
            } else {
                nests.extend(std::iter::repeat_n(Nest::leaf(), n));
            }
            if self.peek() == Some('⊔') {
                self.at += 1;
            } else {
                return Ok(nests);
            }
        }
    }
}

impl fmt::Display for RealScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl Serialize for RealScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RealScheme", 4)?;
        st.serialize_field("one_sided", &self.one_sided)?;
        st.serialize_field("ovals", &self.ovals)?;
        st.serialize_field("code", &self.code())?;
        st.serialize_field("ascii", &self.ascii())?;
        st.end()
    }
}

/// Canonical text: nested groups sorted by their own code, leaves collapsed to
/// a count, `J` first for a one-sided component, `⟨0⟩` for the empty curve.
pub fn viro_code(s: &RealScheme) -> String {
    match (s.one_sided, s.ovals.is_empty()) {
        (false, true) => "⟨0⟩".into(),
        (true, true) => "⟨J⟩".into(),
        (false, false) => format!("⟨{}⟩", encode_group(&s.ovals)),
        (true, false) => format!("⟨J ⊔ {}⟩", encode_group(&s.ovals)),
    }
}

/// Reads the nesting of ovals off the region tree.
pub fn nesting_tree(regions: &RegionComplex, cls: &Classification) -> RealScheme {
    fn build(region: usize, regions: &RegionComplex) -> Vec<Nest> {
        regions.ovals().iter().filter(|o| o.outer == region).map(|o| Nest::new(build(o.inner, regions))).collect()
    }
    RealScheme::new(cls.one_sided.is_some(), build(regions.root(), regions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{glue_projective, midlines};
    use crate::regularity::RegularTriangulation;
    use crate::signs::SignDistribution;
    use crate::square::build_square;

    fn harnack(m: u32) -> (SquareComplex, CurveGraph) {
        let sq =
            build_square(&RegularTriangulation::standard(m).unwrap(), &SignDistribution::harnack(m).unwrap()).unwrap();
        let c = glue_projective(&midlines(&sq).unwrap()).unwrap();
        (sq, c)
    }

    fn scheme(m: u32) -> RealScheme {
        let (sq, c) = harnack(m);
        let cls = classify_components(&c).unwrap();
        let r = RegionComplex::build(&sq, &c, &cls).unwrap();
        nesting_tree(&r, &cls)
    }

    #[test]
    fn classification_of_harnack_curves() {
        for (m, ovals, j) in [(2, 1, false), (3, 1, true), (5, 6, true)] {
            let (_, c) = harnack(m);
            let cls = classify_components(&c).unwrap();
            assert_eq!((cls.ovals.len(), cls.one_sided.is_some()), (ovals, j), "m={m}");
        }
    }

    #[test]
    fn harnack_codes() {
        assert_eq!(scheme(1).code(), "⟨J⟩");
        assert_eq!(scheme(2).code(), "⟨1⟩");
        assert_eq!(scheme(3).code(), "⟨J ⊔ 1⟩");
        assert_eq!(scheme(4).code(), "⟨4⟩");
        assert_eq!(scheme(6).code(), "⟨1⟨1⟩ ⊔ 9⟩");
        assert_eq!(scheme(7).code(), "⟨J ⊔ 15⟩");
        assert_eq!(scheme(8).code(), "⟨1⟨3⟩ ⊔ 18⟩");
    }

    #[test]
    fn regions_form_a_tree() {
        let (sq, c) = harnack(6);
        let cls = classify_components(&c).unwrap();
        let r = RegionComplex::build(&sq, &c, &cls).unwrap();
        assert_eq!(r.regions().len(), cls.ovals.len() + 1);
        for o in r.ovals() {
            assert_ne!(r.regions()[o.outer].sign, r.regions()[o.inner].sign);
        }
        assert_eq!(r.ovals().iter().filter(|o| o.meets_boundary).count(), 1);
    }

    #[test]
    fn codes() {
        let two = RealScheme::new(false, vec![Nest::new(vec![Nest::leaf()])]);
        assert_eq!(two.code(), "⟨1⟨1⟩⟩");
        assert_eq!(two.ascii(), "<1<1>>");
        assert_eq!(RealScheme::empty().code(), "⟨0⟩");
        assert_eq!(RealScheme::leaves(true, 0).code(), "⟨J⟩");
        let s = RealScheme::new(
            false,
            vec![Nest::leaf(), Nest::new(vec![Nest::leaf(), Nest::leaf()]), Nest::new(vec![Nest::leaf()])],
        );
        assert_eq!(s.code(), "⟨1⟨1⟩ ⊔ 1⟨2⟩ ⊔ 1⟩");
        assert_eq!((s.even_ovals(), s.odd_ovals()), (3, 3));
    }

    #[test]
    fn parse_round_trip() {
        for code in ["⟨0⟩", "⟨J⟩", "⟨J ⊔ 15⟩", "⟨1⟨3⟩ ⊔ 18⟩", "⟨1⟨1⟨1⟩⟩ ⊔ 1⟨2⟩⟩"]
        {
            assert_eq!(RealScheme::parse(code).unwrap().code(), code);
        }
        assert_eq!(RealScheme::parse("<1<1> | 9>").unwrap().code(), "⟨1⟨1⟩ ⊔ 9⟩");
        assert!(RealScheme::parse("⟨1⟨1⟩").is_err());
        assert!(RealScheme::parse("1").is_err());
    }

    #[test]
    fn json_mirrors_nesting() {
        let s = RealScheme::parse("⟨1⟨1⟩ ⊔ 2⟩").unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["ovals"], serde_json::json!([[[]], [], []]));
        assert_eq!(v["ascii"], "<1<1> | 2>");
    }
}
