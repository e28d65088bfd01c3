//! ε-dependent constants, the capacity ladder, part ranges, machine classes and nice covers.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor_u64, pow, uint, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MachineClass {
    Tiny,
    Small,
    Average,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NiceCoverKind {
    /// `Σc* ≥ |J|`.
    Exact,
    /// `Σc* ≥ (1−ε)|J|`, every member `c* > 1/ε`.
    RelativelyAlmostExact,
    /// `Σc* ≥ |J| − 1/ε`, some member `c* > ε⁻²`.
    AbsolutelyAlmostExact,
}

#[derive(Debug, Clone)]
pub struct Params {
    /// Clamped to `(0, 1/2]`.
    pub eps: Rational,
    pub l_min: usize,
    pub d_tiny: usize,
    pub d_average: usize,
    base: Rational,
    inv_eps: Rational,
    inv_eps2: Rational,
    powers: Vec<Rational>,
    floors: Vec<u64>,
}

impl Params {
    /// Ladder values are cached up to the first exceeding `max_value`.
    pub fn new(eps: &Rational, max_value: u64) -> Result<Self> {
        if *eps <= Rational::zero() {
            return Err(Error::InvalidInstance("epsilon must be positive".into()));
        }
        let half = Rational::new(1.into(), 2.into());
        let eps = if *eps > half { half } else { eps.clone() };
        let base = Rational::one() + &eps;
        let inv_eps = Rational::one() / &eps;
        let inv_eps2 = &inv_eps * &inv_eps;
        let inv_eps3 = &inv_eps2 * &inv_eps;
        let mut p = Params {
            eps,
            l_min: 0,
            d_tiny: 0,
            d_average: 0,
            base,
            inv_eps,
            inv_eps2,
            powers: vec![Rational::one()],
            floors: vec![1],
        };
        while *p.floors.last().unwrap() <= max_value.max(1) {
            p.extend();
        }
        p.l_min = p.least_exponent_at_least(&inv_eps3) + 1;
        p.d_tiny = p.least_exponent_at_least(&p.inv_eps2.clone());
        p.d_average = p.least_exponent_at_least(&p.inv_eps.clone());
        if p.power(p.d_average) > p.inv_eps {
            p.d_average -= 1;
        }
        p.d_average += 1;
        Ok(p)
    }

    fn extend(&mut self) {
        let next = self.powers.last().unwrap() * &self.base;
        self.floors.push(floor_u64(&next).expect("ladder value fits in u64"));
        self.powers.push(next);
    }

    /// `(1+ε)^i`.
    pub fn power(&self, i: usize) -> Rational {
        match self.powers.get(i) {
            Some(p) => p.clone(),
            None => pow(&self.base, i as u32),
        }
    }

    /// `⌊(1+ε)^i⌋`.
    pub fn ladder_value(&self, i: usize) -> u64 {
        match self.floors.get(i) {
            Some(&f) => f,
            None => floor_u64(&self.power(i)).expect("ladder value fits in u64"),
        }
    }

    /// Least `t` with `(1+ε)^t ≥ x`.
    pub fn least_exponent_at_least(&self, x: &Rational) -> usize {
        let mut t = 0;
        while self.power(t) < *x {
            t += 1;
        }
        t
    }

    /// Distinct ladder values `⌊(1+ε)^i⌋ ≤ upto`, ascending.
    pub fn ladder(&self, upto: u64) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        let mut i = 0;
        loop {
            let v = self.ladder_value(i);
            if v > upto {
                return out;
            }
            if out.last() != Some(&v) {
                out.push(v);
            }
            i += 1;
        }
    }

    /// `c` rounded up to the least ladder value `≥ c`; 0 stays 0.
    pub fn rounded_capacity(&self, c: u64) -> u64 {
        if c == 0 {
            return 0;
        }
        let mut i = 0;
        loop {
            let v = self.ladder_value(i);
            if v >= c {
                return v;
            }
            i += 1;
        }
    }

    /// Range index `l` with `|J| ∈ [⌊(1+ε)^l⌋, ⌊(1+ε)^{l+1}⌋)`; `size ≥ 1`.
    pub fn range_of(&self, size: u64) -> usize {
        debug_assert!(size >= 1);
        let mut l = 0;
        while self.ladder_value(l + 1) <= size {
            l += 1;
        }
        l
    }

    /// Lower size bound of the parts treated before the range loop.
    pub fn small_part_limit(&self) -> u64 {
        self.ladder_value(self.l_min + 1)
    }

    pub fn classify(&self, c_star: u64, l: usize) -> MachineClass {
        let c = uint(c_star);
        if c < self.inv_eps2 {
            MachineClass::Tiny
        } else if c < &self.eps * self.power(l) {
            MachineClass::Small
        } else if c_star < self.ladder_value(l + 1) {
            MachineClass::Average
        } else {
            MachineClass::Large
        }
    }

    /// The strongest kind `caps` satisfies as a cover of a part of `size` jobs.
    pub fn nice_kind(&self, caps: &[u64], size: u64) -> Option<NiceCoverKind> {
        let total: u64 = caps.iter().sum();
        let total_q = uint(total);
        let size_q = uint(size);
        if total >= size {
            Some(NiceCoverKind::Exact)
        } else if total_q >= (Rational::one() - &self.eps) * &size_q && caps.iter().all(|&c| uint(c) > self.inv_eps) {
            Some(NiceCoverKind::RelativelyAlmostExact)
        } else if total_q >= size_q - &self.inv_eps && caps.iter().any(|&c| uint(c) > self.inv_eps2) {
            Some(NiceCoverKind::AbsolutelyAlmostExact)
        } else {
            None
        }
    }

    /// `⌊c*(1/(1−ε) + ε)⌋`: a nice cover under `c*` is an exact cover under this capacity.
    pub fn scaled_capacity(&self, c_star: u64) -> u64 {
        floor_u64(&(uint(c_star) * self.stretch())).expect("capacity fits in u64")
    }

    /// `⌊c(1+ε)(1/(1−ε) + ε)⌋`: jobs a machine of capacity `c` receives in the final schedule.
    pub fn schedule_capacity(&self, c: u64) -> u64 {
        floor_u64(&(uint(c) * &self.base * self.stretch())).expect("capacity fits in u64")
    }

    fn stretch(&self) -> Rational {
        Rational::one() / (Rational::one() - &self.eps) + &self.eps
    }

    /// `1 + 7ε`.
    pub fn guarantee(&self) -> Rational {
        Rational::one() + uint(7) * &self.eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn half() -> Params {
        Params::new(&ratio(1, 2), 100).unwrap()
    }

    #[test]
    fn constants_at_one_half() {
        let p = half();
        assert_eq!(p.l_min, 7);
        assert_eq!(p.d_tiny, 4);
        assert_eq!(p.d_average, 2);
        assert_eq!(p.small_part_limit(), 25);
    }

    #[test]
    fn ladder_at_one_half() {
        let p = half();
        let raw: Vec<u64> = (0..=10).map(|i| p.ladder_value(i)).collect();
        assert_eq!(raw, vec![1, 1, 2, 3, 5, 7, 11, 17, 25, 38, 57]);
        assert_eq!(p.ladder(57), vec![1, 2, 3, 5, 7, 11, 17, 25, 38, 57]);
    }

    #[test]
    fn rounding_up_to_the_ladder() {
        let p = half();
        assert_eq!(p.rounded_capacity(0), 0);
        assert_eq!(p.rounded_capacity(3), 3);
        assert_eq!(p.rounded_capacity(4), 5);
        assert_eq!(p.rounded_capacity(39), 57);
    }

    #[test]
    fn epsilon_is_clamped() {
        let p = Params::new(&ratio(3, 4), 10).unwrap();
        assert_eq!(p.eps, ratio(1, 2));
        assert!(Params::new(&ratio(0, 1), 10).is_err());
    }

    #[test]
    fn ranges_follow_the_ladder() {
        let p = half();
        assert_eq!(p.range_of(1), 1);
        assert_eq!(p.range_of(3), 3);
        assert_eq!(p.range_of(20), 7);
        assert_eq!(p.range_of(25), 8);
        assert_eq!(p.range_of(37), 8);
        assert_eq!(p.range_of(51), 9);
    }

    #[test]
    fn classes_at_range_eight() {
        let p = half();
        assert_eq!(p.classify(3, 8), MachineClass::Tiny);
        assert_eq!(p.classify(11, 8), MachineClass::Small);
        assert_eq!(p.classify(17, 8), MachineClass::Average);
        assert_eq!(p.classify(25, 8), MachineClass::Average);
        assert_eq!(p.classify(57, 8), MachineClass::Large);
        assert_eq!(p.classify(17, 9), MachineClass::Small);
    }

    #[test]
    fn nice_kinds() {
        let p = half();
        assert_eq!(p.nice_kind(&[11, 17], 36), Some(NiceCoverKind::RelativelyAlmostExact));
        assert_eq!(p.nice_kind(&[3, 3], 6), Some(NiceCoverKind::Exact));
        assert_eq!(p.nice_kind(&[17, 2, 2, 2, 2], 26), Some(NiceCoverKind::AbsolutelyAlmostExact));
        assert_eq!(p.nice_kind(&[2, 2], 10), None);
        assert!(p.scaled_capacity(11) + p.scaled_capacity(17) >= 36);
    }
}
