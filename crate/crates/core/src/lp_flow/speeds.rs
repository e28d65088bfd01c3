use num_bigint::BigInt;
use num_traits::One;

use crate::rational::Rational;

/// Machines sharing one rounded power-of-two speed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedGroup {
    pub speed: Rational,
    pub machines: Vec<usize>,
}

/// Least power of two `2^z ≥ s`, so that `2^{z-1} < s ≤ 2^z`.
pub fn round_up_pow2(s: &Rational) -> Rational {
    assert!(*s > Rational::from_integer(BigInt::from(0)), "speed must be positive");
    let two = Rational::from_integer(BigInt::from(2));
    let mut p = Rational::one();
    while p < *s {
        p = &p * &two;
    }
    while &p / &two >= *s {
        p = &p / &two;
    }
    p
}

/// Rounded speeds plus the nonempty groups, slowest group first.
pub fn round_speeds_pow2(speeds: &[Rational]) -> (Vec<Rational>, Vec<SpeedGroup>) {
    let rounded: Vec<Rational> = speeds.iter().map(round_up_pow2).collect();
    let mut distinct = rounded.clone();
    distinct.sort();
    distinct.dedup();
    let groups = distinct
        .into_iter()
        .map(|speed| SpeedGroup {
            machines: (0..speeds.len()).filter(|&i| rounded[i] == speed).collect(),
            speed,
        })
        .collect();
    (rounded, groups)
}
