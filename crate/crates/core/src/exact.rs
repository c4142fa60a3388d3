//! Exact positive reals of the form `r · 2^e` with `r` rational and `e` a
//! rational exponent.
//!
//! Every pitch this crate produces is such a value: equal temperaments are
//! powers of two with fractional exponents, the arithmetic divisions and
//! custom step sets are plain rationals. The representation is canonical
//! (the rational part has an odd numerator and an odd denominator, every
//! factor of two lives in the exponent), so structural equality is numeric
//! equality and `Hash` is consistent with it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::{BigRational, Rational64};
use num::traits::{One, Signed, ToPrimitive, Zero};

/// A positive real `odd · 2^exp` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact {
    odd: BigRational,
    exp: Rational64,
}

fn trailing_zeros(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

impl Exact {
    fn normalize(r: BigRational, exp: Rational64) -> Exact {
        let (mut numer, mut denom) = r.into();
        let tn = trailing_zeros(&numer);
        let td = trailing_zeros(&denom);
        numer >>= tn;
        denom >>= td;
        let shift = tn as i64 - td as i64;
        Exact {
            odd: BigRational::new(numer, denom),
            exp: exp + Rational64::from_integer(shift),
        }
    }

    /// Returns `None` unless `r > 0`.
    pub fn from_rational(r: BigRational) -> Option<Exact> {
        if !r.is_positive() {
            return None;
        }
        Some(Self::normalize(r, Rational64::zero()))
    }

    pub fn from_integer(n: i64) -> Option<Exact> {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Converts a finite positive float exactly (every finite `f64` is a
    /// dyadic rational).
    pub fn from_f64(x: f64) -> Option<Exact> {
        if !x.is_finite() || x <= 0.0 {
            return None;
        }
        BigRational::from_float(x).and_then(Self::from_rational)
    }

    /// `2^exp`.
    pub fn pow2(exp: Rational64) -> Exact {
        Exact {
            odd: BigRational::one(),
            exp,
        }
    }

    pub fn one() -> Exact {
        Self::pow2(Rational64::zero())
    }

    pub fn two() -> Exact {
        Self::pow2(Rational64::one())
    }

    /// The exponent of two carried by this value.
    pub fn exponent(&self) -> Rational64 {
        self.exp
    }

    /// True when the value is a rational number.
    pub fn is_rational(&self) -> bool {
        self.exp.is_integer()
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.exp.is_integer() {
            return None;
        }
        Some(scale_pow2(&self.odd, self.exp.to_integer()))
    }

    /// Multiplies by `2^k`.
    pub fn scale_pow2(&self, k: i64) -> Exact {
        Exact {
            odd: self.odd.clone(),
            exp: self.exp + Rational64::from_integer(k),
        }
    }

    /// Sum of two rational values; `None` if either carries an irrational
    /// power of two.
    pub fn checked_add(&self, other: &Exact) -> Option<Exact> {
        let a = self.to_rational()?;
        let b = other.to_rational()?;
        Exact::from_rational(a + b)
    }

    /// Difference `self - other`; `None` if not rational or not positive.
    pub fn checked_sub(&self, other: &Exact) -> Option<Exact> {
        let a = self.to_rational()?;
        let b = other.to_rational()?;
        Exact::from_rational(a - b)
    }

    pub fn recip(&self) -> Exact {
        Exact {
            odd: self.odd.recip(),
            exp: -self.exp,
        }
    }

    pub fn log2_f64(&self) -> f64 {
        log2_bigint(self.odd.numer()) - log2_bigint(self.odd.denom()) + ratio_f64(self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        let whole = self.exp.floor().to_integer();
        let frac = ratio_f64(self.exp - self.exp.floor());
        let odd = match (self.odd.numer().to_f64(), self.odd.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => return self.log2_f64().exp2(),
        };
        let whole = whole.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        odd * 2f64.powi(whole) * frac.exp2()
    }

    /// `floor(log2(self))`, computed exactly.
    pub fn floor_log2(&self) -> i64 {
        let (numer, denom) = (self.odd.numer(), self.odd.denom());
        let mut m = numer.bits() as i64 - denom.bits() as i64;
        // odd >= 2^m ?
        let ge = if m >= 0 {
            numer >= &(denom << m as u64)
        } else {
            &(numer << (-m) as u64) >= denom
        };
        if !ge {
            m -= 1;
        }
        let whole = self.exp.floor().to_integer();
        let frac = self.exp - self.exp.floor();
        // odd·2^(frac-m) lies in [1, 4); one more octave if it reaches 2.
        let reduced = Exact {
            odd: self.odd.clone(),
            exp: frac - Rational64::from_integer(m),
        };
        let carry = i64::from(reduced >= Exact::two());
        m + whole + carry
    }

    /// Interval size in cents, `1200 · log2(self)`.
    pub fn cents(&self) -> f64 {
        1200.0 * self.log2_f64()
    }

    /// Builds `2^(cents/1200)` from a decimal cents literal, exactly.
    pub fn from_cents_str(text: &str) -> Option<Exact> {
        let cents = parse_rational(text)?;
        let exp = cents / BigRational::from_integer(BigInt::from(1200));
        let (n, d) = (exp.numer().to_i64()?, exp.denom().to_i64()?);
        Some(Exact::pow2(Rational64::new(n, d)))
    }
}

fn scale_pow2(r: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        BigRational::new(r.numer() << k as u64, r.denom().clone())
    } else {
        BigRational::new(r.numer().clone(), r.denom() << (-k) as u64)
    }
}

fn ratio_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn log2_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.to_f64().unwrap_or(f64::NAN).log2();
    }
    let shift = bits - 60;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.log2() + shift as f64
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.odd == other.odd {
            return self.exp.cmp(&other.exp);
        }
        let (la, lb) = (self.log2_f64(), other.log2_f64());
        let scale = la.abs().max(lb.abs()).max(1.0);
        if (la - lb).abs() > 1e-9 * scale {
            return la.partial_cmp(&lb).unwrap_or(Ordering::Equal);
        }
        // Close call: decide exactly. With d = other.exp - self.exp = p/q,
        // compare (a1/b1)^q against (a2/b2)^q · 2^p.
        let d = other.exp - self.exp;
        let (p, q) = (*d.numer(), *d.denom() as u32);
        let (a1, b1) = (self.odd.numer().pow(q), self.odd.denom().pow(q));
        let (a2, b2) = (other.odd.numer().pow(q), other.odd.denom().pow(q));
        let mut lhs = a1 * b2;
        let mut rhs = a2 * b1;
        if p >= 0 {
            rhs <<= p as u64;
        } else {
            lhs <<= (-p) as u64;
        }
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Exact {
    type Output = Exact;

    fn mul(self, rhs: &Exact) -> Exact {
        Exact::normalize(&self.odd * &rhs.odd, self.exp + rhs.exp)
    }
}

impl Mul for Exact {
    type Output = Exact;

    fn mul(self, rhs: Exact) -> Exact {
        &self * &rhs
    }
}

impl Div for &Exact {
    type Output = Exact;

    fn div(self, rhs: &Exact) -> Exact {
        Mul::mul(self, &rhs.recip())
    }
}

impl Div for Exact {
    type Output = Exact;

    fn div(self, rhs: Exact) -> Exact {
        &self / &rhs
    }
}

/// Renders as a rational (`725/2`) or as `R*2^(p/q)` with `0 < p/q < 1`.
impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.exp.floor();
        let frac = self.exp - whole;
        let r = scale_pow2(&self.odd, whole.to_integer());
        if frac.is_zero() {
            write!(f, "{r}")
        } else {
            write!(f, "{r}*2^({frac})")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact value {0:?}")]
pub struct ParseExactError(pub String);

/// Accepts everything `Display` produces, plus decimals (`261.626`).
impl FromStr for Exact {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseExactError(s.to_string());
        let s = s.trim();
        let s = if s.starts_with("2^(") { format!("1*{s}") } else { s.to_string() };
        let (base, exp) = match s.split_once("*2^(") {
            Some((base, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(err)?;
                let e = parse_rational(inner).ok_or_else(err)?;
                let e = Rational64::new(e.numer().to_i64().ok_or_else(err)?, e.denom().to_i64().ok_or_else(err)?);
                (base, e)
            }
            None => (s.as_str(), Rational64::zero()),
        };
        let base = parse_rational(base).ok_or_else(err)?;
        let value = Exact::from_rational(base).ok_or_else(err)?;
        Ok(&value * &Exact::pow2(exp))
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `-12.375` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let denom = num::pow(BigInt::from(10), frac_part.len());
    let numer = if negative {
        BigInt::from_biguint(Sign::Minus, numer.magnitude().clone())
    } else {
        numer
    };
    Some(BigRational::new(numer, denom))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
pub(crate) fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
