//! Optimal ΣCj on identical machines: give each partition one machine, then hand out the
//! rest greedily by largest marginal gain.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, MachineLoad, Schedule};
use crate::rational::{uint, Rational};

/// Optimal ΣCj of `jobs` on `machines` identical unit-speed machines.
///
/// The job ranked `r` (0-based, nonincreasing p) is multiplied by `⌊r/machines⌋ + 1`.
pub fn single_set_sumcj_identical(jobs: &[u64], machines: usize) -> Rational {
    assert!(machines >= 1, "at least one machine");
    let mut sorted = jobs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = sorted
        .iter()
        .enumerate()
        .map(|(r, &p)| (r / machines + 1) as u64 * p)
        .sum();
    uint(total)
}

/// Per partition, `Δ_i = OPT(i machines) − OPT(i+1 machines)` for `i = 1..m−1`.
#[derive(Debug, Clone)]
pub struct MarginalGainTable {
    /// Jobs of each partition, nonincreasing.
    pub sorted_jobs: Vec<Vec<u64>>,
    /// `deltas[j][i-1] = Δ_i` for partition `j`.
    pub deltas: Vec<Vec<Rational>>,
}

impl MarginalGainTable {
    pub fn new(partitions: &[Vec<u64>], m: usize) -> Self {
        let sorted_jobs: Vec<Vec<u64>> = partitions
            .iter()
            .map(|p| {
                let mut s = p.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s
            })
            .collect();
        let deltas = sorted_jobs
            .iter()
            .map(|jobs| {
                (1..m)
                    .map(|i| single_set_sumcj_identical(jobs, i) - single_set_sumcj_identical(jobs, i + 1))
                    .collect()
            })
            .collect();
        MarginalGainTable { sorted_jobs, deltas }
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.deltas
            .iter()
            .all(|d| d.windows(2).all(|w| w[0] >= w[1]) && d.iter().all(|x| *x >= Rational::zero()))
    }
}

/// Machine counts per partition chosen by the greedy; ties go to the lowest partition index.
pub fn allocate_machines(partitions: &[Vec<u64>], m: usize) -> Vec<usize> {
    let k = partitions.len();
    let mut counts = vec![1usize; k];
    let gain = |j: usize, i: usize| {
        single_set_sumcj_identical(&partitions[j], i) - single_set_sumcj_identical(&partitions[j], i + 1)
    };
    let mut heap: BinaryHeap<(Rational, Reverse<usize>)> = (0..k).map(|j| (gain(j, 1), Reverse(j))).collect();
    for _ in k..m {
        let Some((g, Reverse(j))) = heap.pop() else { break };
        if g.is_zero() {
            break;
        }
        counts[j] += 1;
        heap.push((gain(j, counts[j]), Reverse(j)));
    }
    counts
}

/// Optimal ΣCj schedule for identical machines.
pub fn solve_identical_sumcj(instance: &Instance) -> Result<(Schedule, Rational)> {
    let speeds = instance.speeds();
    instance.require_machines(instance.m())?;
    if speeds.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NotIdentical);
    }
    let speed = &speeds[0];
    let counts = allocate_machines(instance.partitions(), instance.m());

    let mut schedule = Schedule::empty(instance.m());
    let mut total = Rational::zero();
    let mut first = 0;
    for (j, (part, &count)) in instance.partitions().iter().zip(&counts).enumerate() {
        total += single_set_sumcj_identical(part, count) / speed;
        let mut ranked: Vec<usize> = (0..part.len()).collect();
        ranked.sort_by(|&a, &b| part[b].cmp(&part[a]).then(a.cmp(&b)));
        let mut loads: Vec<Vec<JobId>> = vec![Vec::new(); count];
        for (r, &i) in ranked.iter().enumerate() {
            loads[r % count].push(JobId::new(j, i));
        }
        for (offset, mut jobs) in loads.into_iter().enumerate() {
            if jobs.is_empty() {
                continue;
            }
            jobs.reverse();
            schedule.machines[first + offset] = MachineLoad::Used { partition: j, jobs };
        }
        first += count;
    }
    Ok((schedule, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_sum_cj;
    use crate::rational::int;

    #[test]
    fn single_set_values() {
        assert_eq!(single_set_sumcj_identical(&[3, 3, 3], 1), int(18));
        assert_eq!(single_set_sumcj_identical(&[3, 3, 3], 2), int(12));
        assert_eq!(single_set_sumcj_identical(&[], 5), int(0));
    }

    #[test]
    fn forced_allocation() {
        let inst = Instance::unit(&[1, 1], vec![int(1), int(1)]).unwrap();
        let (s, v) = solve_identical_sumcj(&inst).unwrap();
        assert_eq!(v, int(2));
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
    }

    #[test]
    fn extra_machine_goes_to_heavier_partition() {
        let inst = Instance::new(vec![vec![3, 3, 3], vec![1]], vec![int(1); 3]).unwrap();
        let (s, v) = solve_identical_sumcj(&inst).unwrap();
        assert_eq!(v, int(13));
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
    }

    #[test]
    fn errors() {
        let inst = Instance::unit(&[1, 1], vec![int(1)]).unwrap();
        assert!(matches!(solve_identical_sumcj(&inst), Err(Error::Infeasible { .. })));
        let inst = Instance::unit(&[1], vec![int(1), int(2)]).unwrap();
        assert_eq!(solve_identical_sumcj(&inst).unwrap_err(), Error::NotIdentical);
    }

    #[test]
    fn ties_go_to_lowest_partition() {
        assert_eq!(allocate_machines(&[vec![2, 2], vec![2, 2]], 3), vec![2, 1]);
    }

    #[test]
    fn gains_are_nonincreasing() {
        let table = MarginalGainTable::new(&[vec![9, 4, 4, 1, 7], vec![2]], 6);
        assert!(table.is_nonincreasing());
    }
}
