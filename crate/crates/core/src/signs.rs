//! Sign distributions on `T_m` and their extension to the four quadrant copies.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::PatchworkError;
use crate::lattice::{standard_triangle, LatticePoint, StandardTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

/// The four copies of `T_m` in the symmetrized square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadrantCopy {
    /// `T_m` itself.
    #[serde(rename = "id")]
    Identity,
    /// Reflection in the `y`-axis, `(i, j) -> (-i, j)`.
    #[serde(rename = "sx")]
    ReflectX,
    /// Reflection in the `x`-axis, `(i, j) -> (i, -j)`.
    #[serde(rename = "sy")]
    ReflectY,
    /// The composition `s = s_x ∘ s_y`, `(i, j) -> (-i, -j)`.
    #[serde(rename = "s")]
    Rotate,
}

impl QuadrantCopy {
    pub const ALL: [QuadrantCopy; 4] =
        [QuadrantCopy::Identity, QuadrantCopy::ReflectX, QuadrantCopy::ReflectY, QuadrantCopy::Rotate];

    /// Whether the copy negates the first and second coordinate.
    pub fn flips(self) -> (bool, bool) {
        match self {
            QuadrantCopy::Identity => (false, false),
            QuadrantCopy::ReflectX => (true, false),
            QuadrantCopy::ReflectY => (false, true),
            QuadrantCopy::Rotate => (true, true),
        }
    }

    pub fn from_flips(fx: bool, fy: bool) -> Self {
        match (fx, fy) {
            (false, false) => QuadrantCopy::Identity,
            (true, false) => QuadrantCopy::ReflectX,
            (false, true) => QuadrantCopy::ReflectY,
            (true, true) => QuadrantCopy::Rotate,
        }
    }

    /// `+1` for orientation-preserving copies, `-1` for reflections.
    pub fn parity(self) -> i8 {
        match self {
            QuadrantCopy::Identity | QuadrantCopy::Rotate => 1,
            QuadrantCopy::ReflectX | QuadrantCopy::ReflectY => -1,
        }
    }

    /// Quadrant containing `(x, y)`; points on an axis go to the copy with
    /// fewer reflections.
    pub fn of_point(x: i64, y: i64) -> Self {
        Self::from_flips(x < 0, y < 0)
    }

    pub fn apply(self, p: LatticePoint) -> (i32, i32) {
        let (fx, fy) = self.flips();
        let x = p.i as i32;
        let y = p.j as i32;
        (if fx { -x } else { x }, if fy { -y } else { y })
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadrantCopy::Identity => "id",
            QuadrantCopy::ReflectX => "sx",
            QuadrantCopy::ReflectY => "sy",
            QuadrantCopy::Rotate => "s",
        }
    }
}

impl fmt::Display for QuadrantCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signs `ε_{i,j}` at every lattice point of `T_m`, stored in lexicographic
/// `(i, j)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignDistribution {
    polygon: StandardTriangle,
    signs: Vec<Sign>,
}

impl SignDistribution {
    pub fn new(degree: u32, signs: Vec<Sign>) -> Result<Self, PatchworkError> {
        let polygon = standard_triangle(degree)?;
        let expected = polygon.point_count();
        if signs.len() != expected {
            return Err(PatchworkError::SignCount { degree, expected, got: signs.len() });
        }
        Ok(Self { polygon, signs })
    }

    pub fn from_fn(degree: u32, f: impl Fn(LatticePoint) -> Sign) -> Result<Self, PatchworkError> {
        let polygon = standard_triangle(degree)?;
        let signs = polygon.lattice_points().map(f).collect();
        Ok(Self { polygon, signs })
    }

    /// Bit `k` of `bits` set means the `k`-th point (lexicographic) is negative.
    pub fn from_bits(degree: u32, bits: u64) -> Result<Self, PatchworkError> {
        let polygon = standard_triangle(degree)?;
        let signs = (0..polygon.point_count()).map(|k| Sign::from_parity(bits >> k & 1 == 1)).collect();
        Ok(Self { polygon, signs })
    }

    /// Inverse of [`Self::from_bits`]; `None` beyond 64 points.
    pub fn to_bits(&self) -> Option<u64> {
        (self.signs.len() <= 64)
            .then(|| self.signs.iter().enumerate().fold(0, |acc, (k, s)| acc | u64::from(*s == Sign::Minus) << k))
    }

    /// Harnack distribution: negative exactly when `i` and `j` are both even.
    pub fn harnack(degree: u32) -> Result<Self, PatchworkError> {
        Self::from_fn(degree, |p| Sign::from_parity(p.i % 2 == 0 && p.j % 2 == 0))
    }

    pub fn constant(degree: u32, s: Sign) -> Result<Self, PatchworkError> {
        Self::from_fn(degree, |_| s)
    }

    pub fn degree(&self) -> u32 {
        self.polygon.degree()
    }

    pub fn polygon(&self) -> StandardTriangle {
        self.polygon
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Sign at a lattice point of `T_m`; panics outside `T_m`.
    pub fn get(&self, p: LatticePoint) -> Sign {
        let k = self.polygon.index_of(p).unwrap_or_else(|| panic!("{p} outside T_{}", self.degree()));
        self.signs[k]
    }

    pub fn negated(&self) -> Self {
        Self { polygon: self.polygon, signs: self.signs.iter().map(|s| -*s).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, Sign)> + '_ {
        self.polygon.lattice_points().zip(self.signs.iter().copied())
    }

    /// Compact `+`/`-` string in lexicographic order.
    pub fn to_symbols(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }

    pub fn from_symbols(degree: u32, text: &str) -> Result<Self, PatchworkError> {
        let signs = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(PatchworkError::BadSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, signs)
    }
}

/// Sign carried by the copy `q` of the lattice point `p`, following
/// `g*(ε x^i y^j) = ε_{g(i,j)} x^i y^j`: each reflected coordinate contributes
/// `(-1)` to the power of the corresponding exponent.
pub fn extend_signs(d: &SignDistribution, q: QuadrantCopy, p: LatticePoint) -> Sign {
    let (fx, fy) = q.flips();
    let odd = (fx && p.i % 2 == 1) ^ (fy && p.j % 2 == 1);
    let s = d.get(p);
    if odd {
        -s
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32, j: u32) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    #[test]
    fn harnack_rule() {
        let d = SignDistribution::harnack(4).unwrap();
        assert_eq!(d.get(p(0, 0)), Sign::Minus);
        assert_eq!(d.get(p(1, 0)), Sign::Plus);
        assert_eq!(d.get(p(1, 1)), Sign::Plus);
        assert_eq!(d.get(p(2, 2)), Sign::Minus);
        let d1 = SignDistribution::harnack(1).unwrap();
        assert_eq!(
            d1.iter().collect::<Vec<_>>(),
            vec![(p(0, 0), Sign::Minus), (p(0, 1), Sign::Plus), (p(1, 0), Sign::Plus)]
        );
    }

    #[test]
    fn modular_extension() {
        let d = SignDistribution::harnack(2).unwrap();
        assert_eq!(extend_signs(&d, QuadrantCopy::ReflectX, p(1, 1)), Sign::Minus);
        assert_eq!(extend_signs(&d, QuadrantCopy::ReflectY, p(0, 2)), Sign::Minus);
        assert_eq!(extend_signs(&d, QuadrantCopy::Rotate, p(1, 1)), Sign::Plus);
        assert_eq!(extend_signs(&d, QuadrantCopy::Identity, p(1, 1)), Sign::Plus);
        // axis points agree between the copies that share them
        assert_eq!(
            extend_signs(&d, QuadrantCopy::Identity, p(0, 1)),
            extend_signs(&d, QuadrantCopy::ReflectX, p(0, 1))
        );
    }

    #[test]
    fn bits_and_symbols() {
        let d = SignDistribution::from_bits(1, 0b001).unwrap();
        assert_eq!(d.to_symbols(), "-++");
        assert_eq!(SignDistribution::from_symbols(1, "-++").unwrap(), d);
        assert_eq!(d, SignDistribution::harnack(1).unwrap());
        assert!(SignDistribution::from_symbols(1, "-+").is_err());
        assert!(SignDistribution::new(2, vec![Sign::Plus; 5]).is_err());
    }

    #[test]
    fn sign_json_is_integer() {
        assert_eq!(serde_json::to_string(&vec![Sign::Plus, Sign::Minus]).unwrap(), "[1,-1]");
        assert!(serde_json::from_str::<Sign>("0").is_err());
    }
}
