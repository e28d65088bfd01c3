//! Brute-force ground truth: enumerate every machine→partition map, solve each partition exactly.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, MachineLoad, Schedule};
use crate::rational::{floor_u64, uint, Rational};

/// Hard cap on `(k+1)^m`.
pub const ENUMERATION_GUARD: u128 = 1_000_000;

/// Per machine: the partition it serves, or `None` when unused.
pub type PartitionAssignment = Vec<Option<usize>>;

fn guard(k: usize, m: usize) -> Result<()> {
    let space = (k as u128 + 1).checked_pow(m as u32).unwrap_or(u128::MAX);
    if space > ENUMERATION_GUARD {
        Err(Error::TooLarge { space })
    } else {
        Ok(())
    }
}

/// Calls `visit` with every map machines → {unused, 0..k} in odometer order.
pub fn for_each_assignment(k: usize, m: usize, mut visit: impl FnMut(&[Option<usize>])) {
    let mut digits = vec![0usize; m];
    let mut assignment: PartitionAssignment = vec![None; m];
    loop {
        visit(&assignment);
        let mut pos = 0;
        loop {
            if pos == m {
                return;
            }
            digits[pos] += 1;
            if digits[pos] <= k {
                assignment[pos] = Some(digits[pos] - 1);
                break;
            }
            digits[pos] = 0;
            assignment[pos] = None;
            pos += 1;
        }
    }
}

fn masks(assignment: &[Option<usize>], k: usize) -> Option<Vec<u32>> {
    let mut masks = vec![0u32; k];
    for (i, a) in assignment.iter().enumerate() {
        if let Some(j) = a {
            masks[*j] |= 1 << i;
        }
    }
    masks.iter().all(|&mk| mk != 0).then_some(masks)
}

fn machines_of(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Optimal ΣCj of one job set on uniform machines by coefficient matching.
///
/// Returns the cost and, per listed machine, the job indices in execution order.
pub fn single_set_sumcj(jobs: &[u64], speeds: &[Rational]) -> (Rational, Vec<Vec<usize>>) {
    let n = jobs.len();
    // (coefficient t/s, machine, t): job at the t-th position from the end of that machine.
    let mut coeffs: Vec<(Rational, usize, usize)> = Vec::with_capacity(n * speeds.len());
    for (i, s) in speeds.iter().enumerate() {
        for t in 1..=n {
            coeffs.push((uint(t as u64) / s, i, t));
        }
    }
    coeffs.sort();
    coeffs.truncate(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| jobs[b].cmp(&jobs[a]).then(a.cmp(&b)));
    let mut cost = Rational::zero();
    let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); speeds.len()];
    for ((coef, machine, t), &job) in coeffs.iter().zip(&order) {
        cost += coef * uint(jobs[job]);
        slots[*machine].push((*t, job));
    }
    let loads = slots
        .into_iter()
        .map(|mut s| {
            s.sort_by_key(|x| std::cmp::Reverse(x.0));
            s.into_iter().map(|(_, job)| job).collect()
        })
        .collect();
    (cost, loads)
}

/// Least `T ∈ {n'/s}` with `Σ ⌊s·T⌋ ≥ count`, and the per-machine job counts at that `T`.
pub fn single_set_cmax_unit(count: usize, speeds: &[Rational]) -> (Rational, Vec<usize>) {
    let mut candidates: Vec<Rational> = speeds
        .iter()
        .flat_map(|s| (1..=count as u64).map(move |c| uint(c) / s))
        .collect();
    candidates.sort();
    candidates.dedup();
    let fits = |t: &Rational| speeds.iter().map(|s| floor_u64(&(s * t)).unwrap()).sum::<u64>() >= count as u64;
    let idx = candidates.partition_point(|t| !fits(t));
    let t = candidates[idx].clone();
    let mut left = count;
    let counts = speeds
        .iter()
        .map(|s| {
            let take = (floor_u64(&(s * &t)).unwrap() as usize).min(left);
            left -= take;
            take
        })
        .collect();
    (t, counts)
}

fn best_assignment(
    instance: &Instance,
    mut cost: impl FnMut(usize, u32) -> Rational,
    combine: impl Fn(Rational, Rational) -> Rational,
) -> Result<(Rational, Vec<u32>)> {
    let (k, m) = (instance.k(), instance.m());
    guard(k, m)?;
    instance.require_machines(m)?;
    let mut best: Option<(Rational, Vec<u32>)> = None;
    for_each_assignment(k, m, |assignment| {
        let Some(masks) = masks(assignment, k) else { return };
        let mut value: Option<Rational> = None;
        for (j, &mask) in masks.iter().enumerate() {
            let c = cost(j, mask);
            value = Some(match value {
                None => c,
                Some(v) => combine(v, c),
            });
        }
        let value = value.expect("k ≥ 1");
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, masks));
        }
    });
    best.ok_or(Error::Infeasible { machines: m, partitions: k })
}

pub fn brute_force_sumcj(instance: &Instance) -> Result<(Rational, Schedule)> {
    let speeds = instance.speeds();
    let mut memo: HashMap<(usize, u32), Rational> = HashMap::new();
    let (value, masks) = best_assignment(
        instance,
        |j, mask| {
            memo.entry((j, mask))
                .or_insert_with(|| {
                    let set: Vec<Rational> = machines_of(mask).map(|i| speeds[i].clone()).collect();
                    single_set_sumcj(&instance.partitions()[j], &set).0
                })
                .clone()
        },
        |a, b| a + b,
    )?;
    let mut schedule = Schedule::empty(instance.m());
    for (j, &mask) in masks.iter().enumerate() {
        let members: Vec<usize> = machines_of(mask).collect();
        let set: Vec<Rational> = members.iter().map(|&i| speeds[i].clone()).collect();
        let (_, loads) = single_set_sumcj(&instance.partitions()[j], &set);
        for (&machine, jobs) in members.iter().zip(loads) {
            schedule.machines[machine] = MachineLoad::Used {
                partition: j,
                jobs: jobs.into_iter().map(|i| JobId::new(j, i)).collect(),
            };
        }
    }
    Ok((value, schedule))
}

pub fn brute_force_cmax_unit(instance: &Instance) -> Result<(Rational, Schedule)> {
    instance.require_unit()?;
    let speeds = instance.speeds();
    let sizes = instance.partition_sizes();
    let mut memo: HashMap<(usize, u32), Rational> = HashMap::new();
    let (value, masks) = best_assignment(
        instance,
        |j, mask| {
            memo.entry((j, mask))
                .or_insert_with(|| {
                    let set: Vec<Rational> = machines_of(mask).map(|i| speeds[i].clone()).collect();
                    single_set_cmax_unit(sizes[j], &set).0
                })
                .clone()
        },
        |a, b| a.max(b),
    )?;
    let mut schedule = Schedule::empty(instance.m());
    for (j, &mask) in masks.iter().enumerate() {
        let members: Vec<usize> = machines_of(mask).collect();
        let set: Vec<Rational> = members.iter().map(|&i| speeds[i].clone()).collect();
        let (_, counts) = single_set_cmax_unit(sizes[j], &set);
        let mut next = 0;
        for (&machine, count) in members.iter().zip(counts) {
            let jobs = (next..next + count).map(|i| JobId::new(j, i)).collect();
            next += count;
            schedule.machines[machine] = MachineLoad::Used { partition: j, jobs };
        }
    }
    Ok((value, schedule))
}

/// True iff some partial map machines → parts gives every part capacity ≥ its size.
pub fn exact_covering_exists(part_sizes: &[u64], capacities: &[u64]) -> Result<bool> {
    guard(part_sizes.len(), capacities.len())?;
    let mut caps = capacities.to_vec();
    caps.sort_unstable_by(|a, b| b.cmp(a));
    let mut deficits = part_sizes.to_vec();
    let mut suffix = vec![0u64; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix[i] = suffix[i + 1] + caps[i];
    }
    Ok(cover_search(&caps, &suffix, 0, &mut deficits))
}

// Exhaustive search; the capacity bound and equal-deficit symmetry only skip provably dead branches.
fn cover_search(caps: &[u64], suffix: &[u64], i: usize, deficits: &mut [u64]) -> bool {
    let need: u64 = deficits.iter().sum();
    if need == 0 {
        return true;
    }
    if i == caps.len() || suffix[i] < need {
        return false;
    }
    for j in 0..deficits.len() {
        let d = deficits[j];
        if d == 0 || deficits[..j].contains(&d) {
            continue;
        }
        deficits[j] = d.saturating_sub(caps[i]);
        let found = cover_search(caps, suffix, i + 1, deficits);
        deficits[j] = d;
        if found {
            return true;
        }
    }
    cover_search(caps, suffix, i + 1, deficits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate_cmax, evaluate_sum_cj};
    use crate::rational::{int, ratio};

    #[test]
    fn sumcj_identical_reference() {
        let inst = Instance::new(vec![vec![3, 3, 3], vec![1]], vec![int(1), int(1), int(1)]).unwrap();
        let (v, s) = brute_force_sumcj(&inst).unwrap();
        assert_eq!(v, int(13));
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
    }

    #[test]
    fn sumcj_single_job() {
        let inst = Instance::new(vec![vec![5]], vec![int(2)]).unwrap();
        assert_eq!(brute_force_sumcj(&inst).unwrap().0, ratio(5, 2));
    }

    #[test]
    fn sumcj_prefers_mixed_split_on_two_speeds() {
        let inst = Instance::new(vec![vec![4, 3, 2, 1]], vec![int(2), int(1)]).unwrap();
        let (v, s) = brute_force_sumcj(&inst).unwrap();
        assert_eq!(v, ratio(17, 2));
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
    }

    #[test]
    fn infeasible_when_too_few_machines() {
        let inst = Instance::unit(&[1, 1], vec![int(1)]).unwrap();
        assert!(matches!(brute_force_sumcj(&inst), Err(Error::Infeasible { .. })));
        let inst = Instance::unit(&[1, 1, 1], vec![int(1), int(1)]).unwrap();
        assert!(matches!(brute_force_cmax_unit(&inst), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn cmax_references() {
        let inst = Instance::unit(&[3, 2], vec![int(3), int(2)]).unwrap();
        let (v, s) = brute_force_cmax_unit(&inst).unwrap();
        assert_eq!(v, int(1));
        assert_eq!(evaluate_cmax(&inst, &s).unwrap(), v);
        let inst = Instance::unit(&[4], vec![int(2)]).unwrap();
        assert_eq!(brute_force_cmax_unit(&inst).unwrap().0, int(2));
    }

    #[test]
    fn guard_rejects_large_spaces() {
        let inst = Instance::unit(&[1, 1, 1], vec![int(1); 12]).unwrap();
        assert!(matches!(brute_force_cmax_unit(&inst), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn covering_existence() {
        let caps = [7, 4, 4, 3, 3, 2];
        assert!(exact_covering_exists(&[10, 8, 5], &caps).unwrap());
        assert!(!exact_covering_exists(&[100], &caps).unwrap());
        assert!(exact_covering_exists(&[], &caps).unwrap());
        assert!(!exact_covering_exists(&[5, 5], &[9]).unwrap());
    }

    #[test]
    fn assignment_enumeration_visits_everything() {
        let mut count = 0;
        for_each_assignment(2, 3, |_| count += 1);
        assert_eq!(count, 27);
    }
}
