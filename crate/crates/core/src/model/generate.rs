use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::Instance;
use crate::error::{Error, Result};
use crate::rational::{uint, Rational};

/// 3-Partition reduction: `m = |A|/3` partitions of `b` unit jobs on `3m` machines with speeds `A`.
///
/// Returns the instance and the ΣCj value `m(b+3)/2` reached exactly when `A` is a yes-instance.
pub fn gen_3partition_instance(a: &[u64], b: u64) -> Result<(Instance, Rational)> {
    if a.is_empty() || !a.len().is_multiple_of(3) {
        return Err(Error::BadReductionInput(format!("|A| = {} is not a positive multiple of 3", a.len())));
    }
    if b == 0 {
        return Err(Error::BadReductionInput("b must be positive".into()));
    }
    let m = (a.len() / 3) as u64;
    if let Some(&bad) = a.iter().find(|&&x| !(4 * x > b && 2 * x < b)) {
        return Err(Error::BadReductionInput(format!("{bad} is outside (b/4, b/2) for b = {b}")));
    }
    let sum: u64 = a.iter().sum();
    if sum != m * b {
        return Err(Error::BadReductionInput(format!("sum of A is {sum}, expected m·b = {}", m * b)));
    }
    let sizes = vec![b as usize; m as usize];
    let speeds = a.iter().map(|&x| uint(x)).collect();
    let instance = Instance::unit(&sizes, speeds)?;
    let target = uint(m * (b + 3)) / uint(2);
    Ok((instance, target))
}

/// Parameters for [`gen_random_instance`]. Speeds are integers drawn from `speeds`.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub seed: u64,
    pub k: usize,
    pub m: usize,
    pub n: RangeInclusive<usize>,
    pub p: RangeInclusive<u64>,
    pub speeds: RangeInclusive<u64>,
    pub unit: bool,
}

/// Deterministic for a fixed spec. `n` is raised to `k` when the drawn total is too small.
pub fn gen_random_instance(spec: &RandomSpec) -> Instance {
    assert!(spec.k >= 1 && spec.m >= 1, "k and m must be positive");
    assert!(*spec.speeds.start() >= 1 && *spec.p.start() >= 1, "speeds and p must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = rng.gen_range(spec.n.clone()).max(spec.k);
    let mut sizes = vec![1usize; spec.k];
    for _ in spec.k..n {
        sizes[rng.gen_range(0..spec.k)] += 1;
    }
    let partitions = sizes
        .iter()
        .map(|&size| {
            (0..size)
                .map(|_| if spec.unit { 1 } else { rng.gen_range(spec.p.clone()) })
                .collect()
        })
        .collect();
    let speeds = (0..spec.m).map(|_| uint(rng.gen_range(spec.speeds.clone()))).collect();
    Instance::new(partitions, speeds).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reduction_of_a_single_triple() {
        let (inst, target) = gen_3partition_instance(&[4, 4, 4], 12).unwrap();
        assert_eq!(inst.partition_sizes(), vec![12]);
        assert_eq!(inst.speeds(), &[int(4), int(4), int(4)]);
        assert_eq!(target, Rational::new(15.into(), 2.into()));
    }

    #[test]
    fn reduction_of_two_triples() {
        let (inst, target) = gen_3partition_instance(&[5, 7, 6, 5, 6, 7], 18).unwrap();
        assert_eq!(inst.partition_sizes(), vec![18, 18]);
        assert_eq!(inst.m(), 6);
        assert_eq!(target, int(21));
    }

    #[test]
    fn reduction_rejects_bad_input() {
        assert!(gen_3partition_instance(&[3, 3, 3, 5, 4, 6], 12).is_err());
        assert!(gen_3partition_instance(&[4, 4], 8).is_err());
        assert!(gen_3partition_instance(&[4, 4, 5], 12).is_err());
    }

    fn spec(seed: u64, unit: bool) -> RandomSpec {
        RandomSpec { seed, k: 3, m: 2, n: 1..=9, p: 1..=5, speeds: 1..=3, unit }
    }

    #[test]
    fn random_is_deterministic_and_honours_unit_flag() {
        assert_eq!(gen_random_instance(&spec(7, false)), gen_random_instance(&spec(7, false)));
        let unit = gen_random_instance(&spec(7, true));
        assert!(unit.unit_jobs());
        assert_eq!(unit.k(), 3);
        assert_eq!(unit.m(), 2);
        assert!(unit.n() >= 3 && unit.n() <= 9);
    }
}
