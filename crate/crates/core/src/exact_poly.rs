//! Exact rational polynomials in the natural coordinates (ξ, η, ζ).
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and integration over the reference tetrahedron
//! `{ξ, η, ζ ≥ 0, ξ + η + ζ ≤ 1}` uses the closed form
//!
//! ```text
//! ∫ ξ^a η^b ζ^c (1 − ξ − η − ζ)^d dV = a! b! c! d! / (a + b + c + d + 3)!
//! ```
//!
//! The module is the ground truth for every constant table in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always normalised (positive denominator,
/// lowest terms).
pub type Rational = num_rational::BigRational;

/// Highest total degree a [`TriPoly`] may carry.
pub const MAX_DEGREE: u32 = 8;

/// Exponent triple `(a, b, c)` of the monomial `ξ^a η^b ζ^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }
}

/// Builds an exact rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts an exact value to the nearest double.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Integral of `ξ^a η^b ζ^c (1 − ξ − η − ζ)^d` over the reference tetrahedron.
pub fn monomial_integral(a: u32, b: u32, c: u32, d: u32) -> Rational {
    let num = factorial(a) * factorial(b) * factorial(c) * factorial(d);
    Rational::new(num, factorial(a + b + c + d + 3))
}

/// Sparse trivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so two equal polynomials have equal
/// term maps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Rational) -> Self {
        Self::term(Monomial::ONE, value)
    }

    pub fn from_int(value: i64) -> Self {
        Self::constant(ratio(value, 1))
    }

    /// A single term `coefficient · ξ^a η^b ζ^c`.
    pub fn term(monomial: Monomial, coefficient: Rational) -> Self {
        assert!(
            monomial.degree() <= MAX_DEGREE,
            "monomial degree {} exceeds {MAX_DEGREE}",
            monomial.degree()
        );
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        Self { terms }
    }

    pub fn xi() -> Self {
        Self::term(Monomial([1, 0, 0]), Rational::one())
    }

    pub fn eta() -> Self {
        Self::term(Monomial([0, 1, 0]), Rational::one())
    }

    pub fn zeta() -> Self {
        Self::term(Monomial([0, 0, 1]), Rational::one())
    }

    /// The fourth barycentric coordinate `1 − ξ − η − ζ`.
    pub fn lambda() -> Self {
        Self::from_int(1) - Self::xi() - Self::eta() - Self::zeta()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, monomial: Monomial) -> Rational {
        self.terms.get(&monomial).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, monomial: Monomial, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn scale(&self, factor: &Rational) -> TriPoly {
        let mut out = TriPoly::zero();
        for (m, c) in self.terms() {
            out.accumulate(m, c * factor);
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: [&Rational; 3]) -> Rational {
        self.terms()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (base, &e) in point.iter().zip(m.0.iter()) {
                    v *= num_traits::pow((*base).clone(), e as usize);
                }
                v
            })
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Floating evaluation; coefficients are rounded to the nearest double.
    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        self.terms()
            .map(|(m, c)| {
                to_f64(c) * point[0].powi(m.0[0] as i32) * point[1].powi(m.0[1] as i32) * point[2].powi(m.0[2] as i32)
            })
            .sum()
    }

    /// Exact integral over the reference tetrahedron.
    pub fn integrate_over_reference(&self) -> Rational {
        self.terms()
            .map(|(m, c)| c * monomial_integral(m.0[0], m.0[1], m.0[2], 0))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Partial derivative with respect to coordinate `axis` (0 = ξ, 1 = η, 2 = ζ).
    pub fn derivative(&self, axis: usize) -> TriPoly {
        let mut out = TriPoly::zero();
        for (m, c) in self.terms() {
            let e = m.0[axis];
            if e == 0 {
                continue;
            }
            let mut lowered = m;
            lowered.0[axis] -= 1;
            out.accumulate(lowered, c * BigInt::from(e));
        }
        out
    }
}

/// Exact product of two polynomials.
pub fn poly_mul(p: &TriPoly, q: &TriPoly) -> TriPoly {
    let mut out = TriPoly::zero();
    for (mp, cp) in p.terms() {
        for (mq, cq) in q.terms() {
            let m = mp.times(mq);
            assert!(
                m.degree() <= MAX_DEGREE,
                "product degree {} exceeds {MAX_DEGREE}",
                m.degree()
            );
            out.accumulate(m, cp * cq);
        }
    }
    out
}

/// Exact integral of `p` over the reference tetrahedron.
pub fn integrate_over_reference(p: &TriPoly) -> Rational {
    p.integrate_over_reference()
}

impl Add for TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: TriPoly) -> TriPoly {
        &self + &rhs
    }
}

impl Add<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.accumulate(m, c.clone());
        }
        out
    }
}

impl Sub for TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: TriPoly) -> TriPoly {
        &self - &rhs
    }
}

impl Sub<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.accumulate(m, -c.clone());
        }
        out
    }
}

impl Neg for TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: TriPoly) -> TriPoly {
        poly_mul(&self, &rhs)
    }
}

impl Mul<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        poly_mul(self, rhs)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}", c.abs())?;
            for (name, e) in ["ξ", "η", "ζ"].iter().zip(m.0) {
                match e {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
