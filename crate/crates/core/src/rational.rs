//! Exact rational helpers. Every speed, time and objective value is a [`Rational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn uint(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a`, `a/b` or a finite decimal such as `0.25`.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    if let Some((n, d)) = token.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(n, d));
    }
    token.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// `⌊x⌋` as `u64`; `None` for negative or oversized values.
pub fn floor_u64(x: &Rational) -> Option<u64> {
    if x.is_negative() {
        return None;
    }
    x.numer().div_floor(x.denom()).to_u64()
}

pub fn ceil_u64(x: &Rational) -> Option<u64> {
    if x.is_negative() {
        return None;
    }
    x.numer().div_ceil(x.denom()).to_u64()
}

/// Fixed six-decimal rendering, rounded half away from zero.
pub fn decimal6(x: &Rational) -> String {
    let scale = BigInt::from(1_000_000);
    let scaled = x * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let abs = rounded.abs();
    let (whole, frac) = abs.div_rem(&scale);
    format!("{}{}.{:06}", if negative { "-" } else { "" }, whole, frac.to_u64().unwrap_or(0))
}

/// Exact `a/b` form (`a` for integers).
pub fn exact(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn is_power_of_two(x: &Rational) -> bool {
    if !x.is_positive() {
        return false;
    }
    let is_pow2 = |v: &BigInt| v.is_positive() && (v & (v - BigInt::one())).is_zero();
    (x.denom().is_one() && is_pow2(x.numer())) || (x.numer().is_one() && is_pow2(x.denom()))
}
