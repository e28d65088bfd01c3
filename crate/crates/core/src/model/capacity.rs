use std::collections::BTreeSet;

use crate::rational::{floor_u64, uint, Rational};

/// Per-machine nonnegative integer capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityFn(pub Vec<u64>);

impl CapacityFn {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// `c(m) = ⌊s(m)·T⌋`: unit jobs machine `m` finishes by `T`.
pub fn capacities(speeds: &[Rational], deadline: &Rational) -> CapacityFn {
    CapacityFn(
        speeds
            .iter()
            .map(|s| floor_u64(&(s * deadline)).expect("capacity fits in u64"))
            .collect(),
    )
}

/// Sorted distinct `{n'/s : 1 ≤ n' ≤ n, s ∈ speeds}`; contains the unit-job makespan optimum.
pub fn candidate_makespans(speeds: &[Rational], n: usize) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for s in speeds {
        for count in 1..=n as u64 {
            set.insert(uint(count) / s);
        }
    }
    set.into_iter().collect()
}

/// Indices of the `keep` fastest machines, fastest first; ties keep the lower index first.
pub fn fastest_machines(speeds: &[Rational], keep: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..speeds.len()).collect();
    order.sort_by(|&a, &b| speeds[b].cmp(&speeds[a]).then(a.cmp(&b)));
    order.truncate(keep);
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn capacities_floor_speed_times_deadline() {
        let c = capacities(&[int(3), int(2), ratio(1, 2)], &ratio(3, 2));
        assert_eq!(c.0, vec![4, 3, 0]);
    }

    #[test]
    fn candidates_are_sorted_and_distinct() {
        let c = candidate_makespans(&[int(2), int(1)], 2);
        assert_eq!(c, vec![ratio(1, 2), int(1), int(2)]);
    }

    #[test]
    fn fastest_first_stable() {
        assert_eq!(fastest_machines(&[int(1), int(3), int(3), int(2)], 3), vec![1, 2, 3]);
    }
}
