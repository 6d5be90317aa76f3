//! Generators shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use tcurve_core::lattice::{standard_triangle, LatticePoint};
use tcurve_core::regularity::{lower_hull_triangulation, Lift, RegularTriangulation};
use tcurve_core::signs::{Sign, SignDistribution};
use tcurve_core::GeometryError;

/// Random full unimodular regular triangulation of `T_m`: lower hull of a
/// paraboloid with integer noise smaller than its curvature, so that every
/// lattice point stays a vertex and ties are broken at random.
pub fn random_regular<R: Rng>(m: u32, rng: &mut R) -> RegularTriangulation {
    loop {
        let points = standard_triangle(m).unwrap().lattice_points().collect::<Vec<_>>();
        let lift = Lift::new(
            points
                .into_iter()
                .map(|p| {
                    let (i, j) = (p.i as i64, p.j as i64);
                    (p, BigRational::from_integer((1000 * (i * i + j * j) + rng.gen_range(0..500)).into()))
                })
                .collect(),
        );
        match lower_hull_triangulation(m, &lift) {
            Ok(rt) => return rt,
            Err(GeometryError::NotGeneric(_)) => continue,
            Err(e) => panic!("random lift for m={m}: {e}"),
        }
    }
}

pub fn random_signs<R: Rng>(m: u32, rng: &mut R) -> SignDistribution {
    let n = standard_triangle(m).unwrap().point_count();
    SignDistribution::new(m, (0..n).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect())
        .unwrap()
}

/// Exponent map of a cyclic permutation of the homogeneous coordinates:
/// `x^i y^j z^k -> x^j y^k z^i`.
pub fn rotate(m: u32, p: LatticePoint) -> LatticePoint {
    LatticePoint::new(p.j, m - p.i - p.j)
}

pub fn rotate_lift(m: u32, lift: &Lift) -> Lift {
    Lift::new(lift.values().iter().map(|(p, v)| (rotate(m, *p), v.clone())).collect())
}

pub fn rotate_signs(d: &SignDistribution) -> SignDistribution {
    let m = d.degree();
    SignDistribution::from_fn(m, |p| {
        // p = rotate(q) with q = (m - i - j, i)
        d.get(LatticePoint::new(m - p.i - p.j, p.i))
    })
    .unwrap()
}
