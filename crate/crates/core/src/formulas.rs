//! Closed-form predictions for Harnack curves and the consistency report that
//! compares them with a computed curve.

use serde::Serialize;

use crate::error::PatchworkError;
use crate::euler::ArnoldEuler;
use crate::orientation::CurveType;
use crate::scheme::{Nest, RealScheme};

/// Predicted scheme of the Harnack M-curve of degree `m`.
pub fn harnack_scheme(m: u32) -> RealScheme {
    let k = (m / 2) as usize;
    if m % 2 == 1 {
        return RealScheme::leaves(true, k * (2 * k).saturating_sub(1));
    }
    let inner = (k - 1) * (k.saturating_sub(2)) / 2;
    let outer = 3 * k * (k - 1) / 2;
    let mut ovals = vec![Nest::leaf(); outer];
    ovals.push(Nest::new(vec![Nest::leaf(); inner]));
    RealScheme::new(false, ovals)
}

/// Maximal number of components of a real plane curve of degree `m`.
pub fn harnack_bound(m: u32) -> u64 {
    let m = m as u64;
    (m - 1) * m.saturating_sub(2) / 2 + 1
}

/// Numbers of critical points of each index (and of index one by sign of
/// the critical value) for the Harnack polynomial of degree `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriticalCounts {
    pub c0: u64,
    pub c1: u64,
    pub c2: u64,
    pub c1_minus: u64,
    pub c1_plus: u64,
    pub c1_prime: u64,
}

pub fn critical_counts(m: u32) -> Result<CriticalCounts, PatchworkError> {
    if m < 2 {
        return Err(PatchworkError::DegreeTooSmall { min: 2, got: m });
    }
    let k = (m / 2) as u64;
    let c = if m.is_multiple_of(2) {
        CriticalCounts {
            c0: (k - 1) * (k - 1).saturating_sub(1) / 2,
            c1: k * (2 * k - 1),
            c2: 3 * k * (k - 1) / 2,
            c1_minus: k * (3 * k - 1) / 2,
            c1_plus: k * (k - 1) / 2,
            c1_prime: k - 1,
        }
    } else {
        CriticalCounts {
            c0: k * (k - 1) / 2,
            c1: k * (2 * k + 1),
            c2: k * (3 * k - 1) / 2,
            c1_minus: k * (3 * k + 3) / 2,
            c1_plus: k * (k - 1) / 2,
            c1_prime: 0,
        }
    };
    Ok(c)
}

impl CriticalCounts {
    /// The Morse identities and the split of index-one points, as
    /// `(name, holds)` pairs.
    pub fn identities(&self, m: u32) -> Vec<(&'static str, bool)> {
        let m = m as i64;
        let (c0, c1, c2) = (self.c0 as i64, self.c1 as i64, self.c2 as i64);
        vec![
            ("c0 + c1 + c2 = (m-1)^2", c0 + c1 + c2 == (m - 1) * (m - 1)),
            ("c0 - c1 + c2 = 1 - m", c0 - c1 + c2 == 1 - m),
            ("c1- + c1+ = c1", self.c1_minus + self.c1_plus == self.c1),
            ("c1' <= c1+", self.c1_prime <= self.c1_plus),
        ]
    }
}

/// Handle and cross-cap counts of the Arnold surfaces of the Harnack curve of
/// degree `2k`: `A+` is a sphere with `p` handles, `A-` a sphere with `q-`
/// cross-caps, `q+ = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArnoldDecomposition {
    pub p: i64,
    pub q_plus: i64,
    pub q_minus: i64,
}

pub fn arnold_decomposition(k: u32) -> ArnoldDecomposition {
    let k = k as i64;
    let p = (k - 1) * (k - 2) / 2;
    ArnoldDecomposition { p, q_plus: p, q_minus: k * (5 * k - 3) / 2 }
}

impl ArnoldDecomposition {
    /// Predicted `(χ(A+), χ(A-))`.
    pub fn euler(&self) -> (i64, i64) {
        (2 - (self.p + self.q_plus), 2 - (self.p + self.q_minus))
    }
}

/// What a patchwork computation observed, in the terms the predictions use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observed {
    pub degree: u32,
    pub scheme: RealScheme,
    pub components: usize,
    pub boundary_points: usize,
    /// Ovals missing the line at infinity, by sign of the polynomial inside.
    pub bounded_positive_inside: usize,
    pub bounded_negative_inside: usize,
    pub curve_type: Option<CurveType>,
    pub arnold: Option<ArnoldEuler>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub degree: u32,
    pub checks: Vec<Check>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub(crate) fn push(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let pass = expected == observed;
        self.checks.push(Check { name: name.into(), expected, observed, pass });
    }
}

/// Compares a computed Harnack curve with every closed-form prediction.
///
/// Ovals that stay in the affine chart contain one extremum each: a maximum
/// when the polynomial is positive inside, a minimum otherwise. The global
/// sign of the polynomial is free, so the pairing with `(c2, c0)` is accepted
/// in either orientation.
pub fn cross_check(o: &Observed) -> CrossCheckReport {
    let m = o.degree;
    let mut r = CrossCheckReport { degree: m, checks: Vec::new() };
    r.push("real scheme", harnack_scheme(m), &o.scheme);
    r.push("components = harnack bound", harnack_bound(m), o.components);
    r.push("boundary points = degree", m, o.boundary_points);
    if let Some(t) = o.curve_type {
        r.push("M-curve is of type I", format!("{:?}", CurveType::TypeI), format!("{t:?}"));
    }
    if let Ok(c) = critical_counts(m) {
        for (name, holds) in c.identities(m) {
            r.push(name, true, holds);
        }
        let (p, n) = (o.bounded_positive_inside as u64, o.bounded_negative_inside as u64);
        let (hi, lo) = if (p, n) == (c.c0, c.c2) { (n, p) } else { (p, n) };
        r.push("affine ovals around maxima = c2", c.c2, hi);
        r.push("affine ovals around minima = c0", c.c0, lo);
    }
    if m.is_multiple_of(2) {
        let (plus, minus) = arnold_decomposition(m / 2).euler();
        let (a_plus, a_minus) = match o.arnold {
            Some(a) => (a.chi_plus.to_string(), a.chi_minus.to_string()),
            None => ("missing".into(), "missing".into()),
        };
        r.push("χ(A+) = 2 - (p + q+)", plus, a_plus);
        r.push("χ(A-) = 2 - (p + q-)", minus, a_minus);
    }
    r
}
