//! Exact reals of the form `(a + b√d) / c` and the floor/ceiling evaluations
//! that mechanical words need.
//!
//! Everything is generic over the integer type: `i64`/`i128` fail with a
//! capacity error on overflow, `BigInt` never overflows.

use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use crate::error::{domain, Error, Result};

/// Integer types usable as coefficients of a [`QuadraticSurd`].
pub trait ExactInt:
    Integer + Signed + Roots + Clone + CheckedAdd + CheckedSub + CheckedMul + From<i64> + fmt::Display
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i64>
        + fmt::Display
{
}

fn overflow() -> Error {
    Error::Capacity {
        what: "exact arithmetic overflowed the coefficient type".into(),
        estimated: 0,
        limit: 0,
    }
}

fn mul<T: ExactInt>(x: &T, y: &T) -> Result<T> {
    x.checked_mul(y).ok_or_else(overflow)
}

fn add<T: ExactInt>(x: &T, y: &T) -> Result<T> {
    x.checked_add(y).ok_or_else(overflow)
}

fn sub<T: ExactInt>(x: &T, y: &T) -> Result<T> {
    x.checked_sub(y).ok_or_else(overflow)
}

/// The real number `(a + b√d) / c` with `c > 0` and `d ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: ExactInt> QuadraticSurd<T> {
    /// `(a + b√d) / c`; `d` must be a non-square when `b ≠ 0`.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        if c.is_zero() {
            return domain("surd denominator must be nonzero");
        }
        if d.is_negative() {
            return domain("surd radicand must be non-negative");
        }
        if !b.is_zero() {
            let r = d.sqrt();
            if mul(&r, &r)? == d {
                return domain(format!("radicand {d} is a perfect square"));
            }
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a = a / g.clone();
            b = b / g.clone();
            c = c / g;
        }
        let d = if b.is_zero() { T::zero() } else { d };
        Ok(QuadraticSurd { a, b, c, d })
    }

    pub fn rational(p: T, q: T) -> Result<Self> {
        Self::new(p, T::zero(), q, T::zero())
    }

    pub fn integer(n: T) -> Self {
        QuadraticSurd {
            a: n,
            b: T::zero(),
            c: T::one(),
            d: T::zero(),
        }
    }

    pub fn coefficients(&self) -> (&T, &T, &T, &T) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == self.c
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn floor(&self) -> Result<T> {
        let num = add(&self.a, &floor_mul_sqrt(&self.b, &self.d)?)?;
        Ok(num.div_floor(&self.c))
    }

    pub fn ceil(&self) -> Result<T> {
        Ok(-self.neg().floor()?)
    }

    /// `θ / (1 + θ)`, the slope of the rotation word equivalent to the
    /// cutting sequence of `y = θx`.
    pub fn cutting_slope(&self) -> Result<Self> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let ca = add(c, a)?;
        let b2d = mul(&mul(b, b)?, d)?;
        let num_a = sub(&mul(a, &ca)?, &b2d)?;
        let num_b = mul(b, c)?;
        let den = sub(&mul(&ca, &ca)?, &b2d)?;
        Self::new(num_a, num_b, den, d.clone())
    }

    pub fn to_f64(&self) -> f64
    where
        T: num_traits::ToPrimitive,
    {
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) + f(&self.b) * f(&self.d).sqrt()) / f(&self.c)
    }
}

// floor(b·√d) by integer square roots.
fn floor_mul_sqrt<T: ExactInt>(b: &T, d: &T) -> Result<T> {
    if b.is_zero() || d.is_zero() {
        return Ok(T::zero());
    }
    let sq = mul(&mul(b, b)?, d)?;
    let s = sq.sqrt();
    if b.is_positive() {
        Ok(s)
    } else if mul(&s, &s)? == sq {
        Ok(-s)
    } else {
        Ok(-s - T::one())
    }
}

impl<T: ExactInt> fmt::Display for QuadraticSurd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}/{}", self.a, self.c)
        } else {
            write!(f, "surd:{},{},{},{}", self.a, self.b, self.c, self.d)
        }
    }
}

/// Parses `P/Q`, a plain integer, or `surd:a,b,c,d`.
impl<T: ExactInt + FromStr> FromStr for QuadraticSurd<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let int = |x: &str| {
            x.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("invalid integer {x:?}")))
        };
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("surd:") {
            let parts: Vec<&str> = rest.split(',').collect();
            let [a, b, c, d] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected surd:a,b,c,d, got {s:?}")));
            };
            return Self::new(int(a)?, int(b)?, int(c)?, int(d)?);
        }
        match s.split_once('/') {
            Some((p, q)) => Self::rational(int(p)?, int(q)?),
            None => Ok(Self::integer(int(s)?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    /// Floors: `⌊(n+1)α + ρ⌋ - ⌊nα + ρ⌋`.
    #[default]
    Lower,
    /// Ceilings: `⌈(n+1)α + ρ⌉ - ⌈nα + ρ⌉`.
    Upper,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Variant::Lower),
            "upper" => Ok(Variant::Upper),
            _ => Err(Error::Parse(format!(
                "variant must be lower or upper, got {s:?}"
            ))),
        }
    }
}

/// Slope `0 < α < 1` and intercept `0 ≤ ρ ≤ 1` of a mechanical word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeIntercept<T> {
    alpha: QuadraticSurd<T>,
    rho: QuadraticSurd<T>,
}

impl<T: ExactInt> SlopeIntercept<T> {
    pub fn new(alpha: QuadraticSurd<T>, rho: QuadraticSurd<T>) -> Result<Self> {
        if alpha.is_zero() || !alpha.floor()?.is_zero() {
            return domain(format!("slope {alpha} must lie strictly between 0 and 1"));
        }
        if !(rho.floor()?.is_zero() || rho.is_one()) {
            return domain(format!("intercept {rho} must lie in [0, 1]"));
        }
        if !alpha.is_rational() && !rho.is_rational() && alpha.d != rho.d {
            return domain("slope and intercept must share one radicand");
        }
        Ok(SlopeIntercept { alpha, rho })
    }

    pub fn alpha(&self) -> &QuadraticSurd<T> {
        &self.alpha
    }

    pub fn rho(&self) -> &QuadraticSurd<T> {
        &self.rho
    }

    /// `nα + ρ` for `n = 0, 1, 2, ..` as exact surds.
    fn affine(&self) -> Result<Affine<T>> {
        let (al, rh) = (&self.alpha, &self.rho);
        Ok(Affine {
            a1: mul(&al.a, &rh.c)?,
            a0: mul(&rh.a, &al.c)?,
            b1: mul(&al.b, &rh.c)?,
            b0: mul(&rh.b, &al.c)?,
            c: mul(&al.c, &rh.c)?,
            d: if al.is_rational() {
                rh.d.clone()
            } else {
                al.d.clone()
            },
        })
    }
}

struct Affine<T> {
    a1: T,
    a0: T,
    b1: T,
    b0: T,
    c: T,
    d: T,
}

impl<T: ExactInt> Affine<T> {
    fn at(&self, n: &T) -> Result<QuadraticSurd<T>> {
        Ok(QuadraticSurd {
            a: add(&mul(&self.a1, n)?, &self.a0)?,
            b: add(&mul(&self.b1, n)?, &self.b0)?,
            c: self.c.clone(),
            d: self.d.clone(),
        })
    }
}

/// The first `len` letters `s(0), .., s(len-1)` of a mechanical word.
pub fn mechanical_letters<T: ExactInt>(
    s: &SlopeIntercept<T>,
    variant: Variant,
    len: usize,
) -> Result<Vec<u8>> {
    let affine = s.affine()?;
    let round = |x: QuadraticSurd<T>| match variant {
        Variant::Lower => x.floor(),
        Variant::Upper => x.ceil(),
    };
    let mut out = Vec::with_capacity(len);
    let mut n = T::zero();
    let mut prev = round(affine.at(&n)?)?;
    for _ in 0..len {
        n = n + T::one();
        let cur = round(affine.at(&n)?)?;
        out.push(u8::from(cur != prev));
        prev = cur;
    }
    Ok(out)
}
