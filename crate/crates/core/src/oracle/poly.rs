//! The patchwork polynomial `Σ ε_{ij} t^{ν(i,j)} x^i y^j` with dyadic `t`, and
//! exact sign evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::OracleError;
use crate::lattice::LatticePoint;
use crate::rational;
use crate::regularity::Lift;
use crate::signs::{Sign, SignDistribution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub point: LatticePoint,
    pub sign: Sign,
    /// The coefficient is `sign · 2^-exponent`.
    pub exponent: i64,
}

/// Sparse polynomial with dyadic coefficients; `t = 2^(-s·r)` where `r`
/// clears the denominators of the lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchPolynomial {
    degree: u32,
    s: u32,
    denominator: i64,
    terms: Vec<Term>,
}

pub fn patch_polynomial(d: &SignDistribution, lift: &Lift, s: u32) -> Result<PatchPolynomial, OracleError> {
    if s == 0 {
        return Err(OracleError::InvalidParameter("s must be positive".into()));
    }
    let r = lift.common_denominator();
    let denominator = r.to_i64().ok_or(OracleError::Overflow)?;
    let mut terms = Vec::with_capacity(d.signs().len());
    for (p, sign) in d.iter() {
        let v = lift.get(p).ok_or(OracleError::MissingLift(p))?;
        let scaled = (v * BigRational::from_integer(r.clone())).to_integer();
        let exponent = scaled.to_i64().and_then(|e| e.checked_mul(s as i64)).ok_or(OracleError::Overflow)?;
        terms.push(Term { point: p, sign, exponent });
    }
    Ok(PatchPolynomial { degree: d.degree(), s, denominator, terms })
}

impl PatchPolynomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Common denominator `r` of the lift.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `t = 2^(-s·r)`.
    pub fn t(&self) -> BigRational {
        rational::inverse_power_of_two(self.s as u64 * self.denominator as u64)
    }

    pub fn coefficient(&self, p: LatticePoint) -> Option<BigRational> {
        self.terms.iter().find(|t| t.point == p).map(coefficient)
    }

    pub fn negated(&self) -> Self {
        let terms = self.terms.iter().map(|t| Term { sign: -t.sign, ..t.clone() }).collect();
        Self { terms, ..self.clone() }
    }

    pub fn evaluate(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut sum = BigRational::zero();
        for t in &self.terms {
            sum += coefficient(t) * pow(x, t.point.i) * pow(y, t.point.j);
        }
        sum
    }
}

fn coefficient(t: &Term) -> BigRational {
    let magnitude = if t.exponent >= 0 {
        rational::inverse_power_of_two(t.exponent as u64)
    } else {
        BigRational::from_integer(BigInt::one() << (-t.exponent) as u64)
    };
    match t.sign {
        Sign::Plus => magnitude,
        Sign::Minus => -magnitude,
    }
}

fn pow(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

/// Exact sign of the polynomial at a rational point: `-1`, `0` or `1`.
pub fn sign_at(p: &PatchPolynomial, x: &BigRational, y: &BigRational) -> i8 {
    let v = p.evaluate(x, y);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// A positive dyadic `mantissa · 2^exp`, with `log2` of its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dyadic {
    pub mantissa: u64,
    pub exp: i64,
    pub log2: f64,
}

const MANTISSA_BITS: i32 = 20;

impl Dyadic {
    /// A dyadic close to `2^w`; only its exactness matters, not how close.
    pub fn near_power_of_two(w: f64) -> Self {
        let e = w.floor();
        let mantissa = (f64::from(MANTISSA_BITS) + (w - e)).exp2().round() as u64;
        let exp = e as i64 - MANTISSA_BITS as i64;
        Dyadic { mantissa, exp, log2: (mantissa as f64).log2() + exp as f64 }
    }

    pub fn to_rational(self) -> BigRational {
        let m = BigRational::from_integer(self.mantissa.into());
        if self.exp >= 0 {
            m * BigRational::from_integer(BigInt::one() << self.exp as u64)
        } else {
            m * rational::inverse_power_of_two((-self.exp) as u64)
        }
    }
}

impl PatchPolynomial {
    /// Sign at `(sx·x, sy·y)`; a zero value counts as positive.
    ///
    /// When one monomial outweighs all the others together its sign is
    /// returned directly; otherwise the sum is formed exactly.
    pub fn sign_at_dyadic(&self, sx: Sign, x: Dyadic, sy: Sign, y: Dyadic) -> Sign {
        self.dominant_sign(sx, x, sy, y).unwrap_or_else(|| self.exact_sign(sx, x, sy, y))
    }

    fn term_sign(t: &Term, sx: Sign, sy: Sign) -> Sign {
        let mut s = t.sign;
        if sx == Sign::Minus && t.point.i % 2 == 1 {
            s = -s;
        }
        if sy == Sign::Minus && t.point.j % 2 == 1 {
            s = -s;
        }
        s
    }

    pub(crate) fn dominant_sign(&self, sx: Sign, x: Dyadic, sy: Sign, y: Dyadic) -> Option<Sign> {
        let logs = self.terms.iter().map(|t| t.point.i as f64 * x.log2 + t.point.j as f64 * y.log2 - t.exponent as f64);
        let (mut best, mut top) = (0, f64::NEG_INFINITY);
        for (k, l) in logs.clone().enumerate() {
            if l > top {
                best = k;
                top = l;
            }
        }
        let rest: f64 = logs.enumerate().filter(|(k, _)| *k != best).map(|(_, l)| (l - top).exp2()).sum();
        // generous margin for rounding in the logarithms
        (rest < 0.5).then(|| Self::term_sign(&self.terms[best], sx, sy))
    }

    pub(crate) fn exact_sign(&self, sx: Sign, x: Dyadic, sy: Sign, y: Dyadic) -> Sign {
        let exps: Vec<i64> =
            self.terms.iter().map(|t| t.point.i as i64 * x.exp + t.point.j as i64 * y.exp - t.exponent).collect();
        let base = *exps.iter().min().expect("polynomial has terms");
        let (mx, my) = (BigInt::from(x.mantissa), BigInt::from(y.mantissa));
        let mut sum = BigInt::zero();
        for (t, e) in self.terms.iter().zip(&exps) {
            let v = (num_traits::pow(mx.clone(), t.point.i as usize) * num_traits::pow(my.clone(), t.point.j as usize))
                << (e - base) as u64;
            match Self::term_sign(t, sx, sy) {
                Sign::Plus => sum += v,
                Sign::Minus => sum -= v,
            }
        }
        if sum.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}
