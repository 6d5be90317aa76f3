//! Convexifying lifts and exact regularity certificates.
//!
//! A lift `ν` convexifies a triangulation when its piecewise-linear
//! interpolation is convex and bends strictly across every interior edge, so
//! that the domains of linearity are exactly the triangles.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::lattice::{doubled_signed_area, harnack_triangulation, is_subdivision, Edge, LatticePoint, Triangulation};
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational;

/// Rational heights on lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lift {
    values: BTreeMap<LatticePoint, BigRational>,
}

impl Lift {
    pub fn new(values: BTreeMap<LatticePoint, BigRational>) -> Self {
        Self { values }
    }

    pub fn from_fn(points: impl IntoIterator<Item = LatticePoint>, f: impl Fn(LatticePoint) -> BigRational) -> Self {
        Self { values: points.into_iter().map(|p| (p, f(p))).collect() }
    }

    /// `ν(i, j) = i² + ij + j²` on the lattice points of `T_m`.
    ///
    /// The formula does not depend on `m`, so the lift on `T_m` is the
    /// restriction of the lift on `T_{m+1}`.
    pub fn standard(m: u32) -> Self {
        let poly = harnack_triangulation(m).polygon();
        Self::from_fn(poly.lattice_points(), |p| {
            let (i, j) = (p.i as i64, p.j as i64);
            rational::int(i * i + i * j + j * j)
        })
    }

    pub fn zero(m: u32) -> Self {
        let poly = harnack_triangulation(m).polygon();
        Self::from_fn(poly.lattice_points(), |_| BigRational::zero())
    }

    pub fn get(&self, p: LatticePoint) -> Option<&BigRational> {
        self.values.get(&p)
    }

    pub fn values(&self) -> &BTreeMap<LatticePoint, BigRational> {
        &self.values
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.values().all(|v| !v.is_negative())
    }

    /// Integer values everywhere. Reported, not required for certification.
    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }

    /// Adds `a·i + b·j + c` to every value.
    pub fn add_affine(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> Self {
        Self::from_fn(self.values.keys().copied(), |p| {
            &self.values[&p] + a * rational::int(p.i as i64) + b * rational::int(p.j as i64) + c
        })
    }

    /// Shifts the values so the minimum is zero.
    pub fn normalized(&self) -> Self {
        match self.values.values().min() {
            Some(min) => {
                let min = min.clone();
                Self::from_fn(self.values.keys().copied(), |p| &self.values[&p] - &min)
            }
            None => self.clone(),
        }
    }

    /// Least common denominator of all values.
    pub fn common_denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.values.values().fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

#[derive(Serialize, Deserialize)]
struct LiftEntry {
    point: LatticePoint,
    value: String,
}

impl Serialize for Lift {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<_> =
            self.values.iter().map(|(p, v)| LiftEntry { point: *p, value: rational::to_text(v) }).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lift {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<LiftEntry>::deserialize(d)?;
        let mut values = BTreeMap::new();
        for e in entries {
            let v = rational::parse(&e.value).map_err(serde::de::Error::custom)?;
            if values.insert(e.point, v).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate lift value at {}", e.point)));
            }
        }
        Ok(Self { values })
    }
}

/// Integer coefficients of the kink functional across an interior edge.
///
/// For the edge `ab` shared by `abc` and `abd`, returns `(point, coefficient)`
/// pairs whose combination equals `|S(a,b,c)|` times the height of `d` above
/// the plane through the lifted `abc`.
fn kink_functional(e: Edge, c: LatticePoint, d: LatticePoint) -> [(LatticePoint, i64); 4] {
    let (a, b) = e;
    let s = doubled_signed_area(a, b, c);
    let sg = s.signum();
    [
        (d, sg * s),
        (a, -sg * doubled_signed_area(d, b, c)),
        (b, -sg * doubled_signed_area(a, d, c)),
        (c, -sg * doubled_signed_area(a, b, d)),
    ]
}

fn interior_kinks(t: &Triangulation) -> Vec<(Edge, [(LatticePoint, i64); 4])> {
    t.interior_edges()
        .into_iter()
        .map(|(e, t1, t2)| {
            let c = t.triangles()[t1].opposite(&e).expect("edge of triangle");
            let d = t.triangles()[t2].opposite(&e).expect("edge of triangle");
            (e, kink_functional(e, c, d))
        })
        .collect()
}

/// Height of the lift across each interior edge, scaled by a positive
/// area factor. `None` when a vertex has no value.
pub fn edge_kinks(t: &Triangulation, lift: &Lift) -> Option<Vec<(Edge, BigRational)>> {
    interior_kinks(t)
        .into_iter()
        .map(|(e, terms)| {
            let mut sum = BigRational::zero();
            for (p, k) in terms {
                sum += lift.get(p)? * rational::int(k);
            }
            Some((e, sum))
        })
        .collect()
}

/// Exact check that `lift` is convex with a strict bend across every interior
/// edge of `t`.
pub fn is_convexifying(t: &Triangulation, lift: &Lift) -> bool {
    match edge_kinks(t, lift) {
        Some(kinks) => kinks.iter().all(|(_, k)| k.is_positive()),
        None => false,
    }
}

/// Searches for a convexifying lift by maximizing a uniform kink margin.
///
/// Solves `max δ` subject to `kink_e(h) >= δ`, `0 <= δ <= 1`, `h >= 0`
/// exactly. Kinks are homogeneous in `h`, so the optimum is `1` for regular
/// triangulations and `0` otherwise; a zero margin is reported as not regular.
pub fn find_convexifier(t: &Triangulation) -> Result<Lift, GeometryError> {
    if !is_subdivision(t) {
        return Err(GeometryError::NotSubdivision(t.degree()));
    }
    let vertices = t.vertices();
    let index: BTreeMap<LatticePoint, usize> = vertices.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let kinks = interior_kinks(t);
    if kinks.is_empty() {
        return Ok(Lift::from_fn(vertices, |_| BigRational::zero()));
    }
    let n = vertices.len() + 1;
    let margin = n - 1;
    let mut rows = Vec::with_capacity(kinks.len() + 1);
    for (_, terms) in &kinks {
        let mut coeffs = vec![BigRational::zero(); n];
        for (p, k) in terms {
            coeffs[index[p]] -= rational::int(*k);
        }
        coeffs[margin] = BigRational::one();
        rows.push((coeffs, BigRational::zero()));
    }
    let mut cap = vec![BigRational::zero(); n];
    cap[margin] = BigRational::one();
    rows.push((cap, BigRational::one()));
    let mut objective = vec![BigRational::zero(); n];
    objective[margin] = BigRational::one();

    let outcome = LinearProgram { objective, rows }.maximize().map_err(|e| GeometryError::Lp(format!("{e:?}")))?;
    match outcome {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            let lift = Lift::from_fn(vertices.iter().copied(), |p| point[index[&p]].clone()).normalized();
            debug_assert!(is_convexifying(t, &lift));
            Ok(lift)
        }
        LpOutcome::Optimal { .. } => Err(GeometryError::NotRegular),
        LpOutcome::Unbounded => Err(GeometryError::Lp("margin unbounded".into())),
    }
}

/// Regular triangulation induced by `lift`: the projection of the lower
/// faces of the lifted lattice points of `T_m`.
///
/// The lift must be defined on every lattice point and generic (no four
/// lifted points on a lower supporting plane). Points lifted strictly above
/// the lower hull do not become vertices.
pub fn lower_hull_triangulation(m: u32, lift: &Lift) -> Result<RegularTriangulation, GeometryError> {
    let points: Vec<LatticePoint> = crate::lattice::standard_triangle(m)?.lattice_points().collect();
    let mut heights = Vec::with_capacity(points.len());
    for p in &points {
        heights.push(lift.get(*p).ok_or(GeometryError::LiftUndefined(*p))?.clone());
    }
    let n = points.len();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (pa, pb, pc) = (points[a], points[b], points[c]);
                let area = doubled_signed_area(pa, pb, pc);
                if area == 0 {
                    continue;
                }
                // Height of the plane through the three lifted points above `q`,
                // by barycentric coordinates scaled by `area`.
                let above = |k: usize| {
                    let q = points[k];
                    let wa = rational::int(doubled_signed_area(q, pb, pc));
                    let wb = rational::int(doubled_signed_area(pa, q, pc));
                    let wc = rational::int(doubled_signed_area(pa, pb, q));
                    let plane = (wa * &heights[a] + wb * &heights[b] + wc * &heights[c]) / rational::int(area);
                    &heights[k] - plane
                };
                let mut lower = true;
                let mut touching = false;
                for k in 0..n {
                    if k == a || k == b || k == c {
                        continue;
                    }
                    let gap = above(k);
                    if gap.is_negative() {
                        lower = false;
                        break;
                    }
                    touching |= gap.is_zero();
                }
                if lower {
                    if touching {
                        return Err(GeometryError::NotGeneric([pa, pb, pc]));
                    }
                    triangles.push(crate::lattice::Triangle::new(pa, pb, pc)?);
                }
            }
        }
    }
    let triangulation = Triangulation::new(m, triangles)?;
    let vertices = triangulation.vertices();
    RegularTriangulation::certify(triangulation, Lift::from_fn(vertices, |p| lift.get(p).expect("defined").clone()))
}

/// A triangulation of `T_m` together with a lift.
///
/// `certified` is true only for values produced by [`RegularTriangulation::certify`]
/// or [`RegularTriangulation::from_triangulation`], i.e. after the exact
/// convexity check has passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularTriangulation {
    triangulation: Triangulation,
    lift: Lift,
    certified: bool,
    integral: bool,
}

impl RegularTriangulation {
    pub fn certify(triangulation: Triangulation, lift: Lift) -> Result<Self, GeometryError> {
        if !is_subdivision(&triangulation) {
            return Err(GeometryError::NotSubdivision(triangulation.degree()));
        }
        if let Some(p) = triangulation.vertices().into_iter().find(|p| lift.get(*p).is_none()) {
            return Err(GeometryError::LiftUndefined(p));
        }
        if let Some((p, _)) = lift.values().iter().find(|(_, v)| v.is_negative()) {
            return Err(GeometryError::NegativeLift(*p));
        }
        if !is_convexifying(&triangulation, &lift) {
            return Err(GeometryError::NotConvexifying);
        }
        let integral = lift.is_integral();
        Ok(Self { triangulation, lift, certified: true, integral })
    }

    /// Finds a lift with the linear program and certifies it.
    pub fn from_triangulation(triangulation: Triangulation) -> Result<Self, GeometryError> {
        let lift = find_convexifier(&triangulation)?;
        Self::certify(triangulation, lift)
    }

    /// The anti-diagonal triangulation with `ν = i² + ij + j²`.
    pub fn standard(m: u32) -> Result<Self, GeometryError> {
        if m == 0 {
            return Err(GeometryError::ZeroDegree);
        }
        Self::certify(harnack_triangulation(m), Lift::standard(m))
    }

    /// Wraps a subdivision whose regularity is unknown. Combinatorial
    /// patchworking still runs on it, but the result is not backed by a
    /// polynomial and the oracle refuses it.
    pub fn uncertified(triangulation: Triangulation, lift: Lift) -> Result<Self, GeometryError> {
        if !is_subdivision(&triangulation) {
            return Err(GeometryError::NotSubdivision(triangulation.degree()));
        }
        let integral = lift.is_integral();
        Ok(Self { triangulation, lift, certified: false, integral })
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn lift(&self) -> &Lift {
        &self.lift
    }

    pub fn degree(&self) -> u32 {
        self.triangulation.degree()
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }
}
