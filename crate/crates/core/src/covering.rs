//! Coverings of parts by machine capacities, and the approximations built on them.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{
    candidate_makespans, capacities, fastest_machines, schedule::cmax_at_speeds, Instance, JobId, MachineLoad,
    Schedule,
};
use crate::rational::{uint, Rational};
use crate::search::{least_accepted, SearchMode};

/// Partial map machine → part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub assignment: Vec<Option<usize>>,
}

impl Covering {
    pub fn machines_of(&self, part: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, a)| **a == Some(part))
            .map(|(i, _)| i)
    }

    /// `min(|J|, Σ c) / |J|` for the machines assigned to `part`.
    pub fn cover_ratio(&self, part: usize, part_sizes: &[u64], capacities: &[u64]) -> Rational {
        let size = part_sizes[part];
        let total: u64 = self.machines_of(part).map(|i| capacities[i]).sum();
        uint(total.min(size)) / uint(size)
    }

    pub fn is_alpha_covering(&self, alpha: &Rational, part_sizes: &[u64], capacities: &[u64]) -> bool {
        (0..part_sizes.len()).all(|j| self.cover_ratio(j, part_sizes, capacities) >= *alpha)
    }

    /// Parts listed as 1-based machine groups, e.g. `m1; m2,m3; m4`.
    pub fn describe(&self, parts: usize) -> String {
        (0..parts)
            .map(|j| self.machines_of(j).map(|i| format!("m{}", i + 1)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Scans machines by nonincreasing capacity, filling parts by nonincreasing size; moves to the
/// next part once its accumulated capacity strictly exceeds half its size.
///
/// Returns `None` when the result is not a ½-covering, which certifies that no exact covering
/// exists. Inputs may be in any order; the covering uses the caller's indices.
pub fn greedy_covering(part_sizes: &[u64], capacities: &[u64]) -> Option<Covering> {
    let mut parts: Vec<usize> = (0..part_sizes.len()).collect();
    parts.sort_by(|&a, &b| part_sizes[b].cmp(&part_sizes[a]).then(a.cmp(&b)));
    let mut machines: Vec<usize> = (0..capacities.len()).collect();
    machines.sort_by(|&a, &b| capacities[b].cmp(&capacities[a]).then(a.cmp(&b)));

    let mut covering = Covering { assignment: vec![None; capacities.len()] };
    let mut current = 0;
    let mut acc = 0u64;
    for &machine in &machines {
        if current == parts.len() {
            break;
        }
        let part = parts[current];
        covering.assignment[machine] = Some(part);
        acc += capacities[machine];
        if 2 * acc > part_sizes[part] {
            current += 1;
            acc = 0;
        }
    }
    covering
        .is_alpha_covering(&Rational::new(1.into(), 2.into()), part_sizes, capacities)
        .then_some(covering)
}

/// Unit-job makespan within a factor 2.
pub fn two_approx_cmax_unit(instance: &Instance) -> Result<(Schedule, Rational)> {
    two_approx_cmax_unit_with(instance, SearchMode::Binary)
}

pub fn two_approx_cmax_unit_with(instance: &Instance, mode: SearchMode) -> Result<(Schedule, Rational)> {
    instance.require_unit()?;
    let kept = fastest_machines(instance.speeds(), instance.n());
    instance.require_machines(kept.len())?;
    let speeds: Vec<Rational> = kept.iter().map(|&i| instance.speeds()[i].clone()).collect();
    let sizes: Vec<u64> = instance.partition_sizes().iter().map(|&s| s as u64).collect();
    let candidates = candidate_makespans(&speeds, instance.n());
    let (idx, (covering, caps)) = least_accepted(&candidates, mode, |t| {
        let caps = capacities(&speeds, t).0;
        Ok(greedy_covering(&sizes, &caps).map(|c| (c, caps)))
    })?;
    let deadline = &candidates[idx];

    let mut schedule = Schedule::empty(instance.m());
    let mut next = vec![0usize; instance.k()];
    for (local, part) in covering.assignment.iter().enumerate() {
        let Some(j) = *part else { continue };
        let take = ((2 * caps[local]) as usize).min(sizes[j] as usize - next[j]);
        if take == 0 {
            continue;
        }
        let jobs = (next[j]..next[j] + take).map(|i| JobId::new(j, i)).collect();
        next[j] += take;
        schedule.machines[kept[local]] = MachineLoad::Used { partition: j, jobs };
    }
    if next.iter().zip(&sizes).any(|(&placed, &size)| placed as u64 != size) {
        return Err(Error::internal("½-covering left jobs unplaced"));
    }
    let cmax = cmax_at_speeds(instance, &schedule, instance.speeds());
    if cmax > uint(2) * deadline {
        return Err(Error::internal("2-approximation exceeded twice the accepted deadline"));
    }
    Ok((schedule, cmax))
}

/// Optimal split of `n` unit jobs over `speeds` for ΣCj: repeatedly load the machine with the
/// least `(x+1)/s`, ties to the lowest index. Returns per-machine counts and the cost
/// `Σ x(x+1)/(2s)`.
pub fn unit_sumcj_distribution(n: usize, speeds: &[Rational]) -> (Vec<usize>, Rational) {
    assert!(!speeds.is_empty(), "at least one machine");
    let mut counts = vec![0usize; speeds.len()];
    let mut cost = Rational::zero();
    for _ in 0..n {
        let (best, marginal) = speeds
            .iter()
            .enumerate()
            .map(|(i, s)| (i, uint(counts[i] as u64 + 1) / s))
            .reduce(|a, b| if b.1 < a.1 { b } else { a })
            .unwrap();
        counts[best] += 1;
        cost += marginal;
    }
    (counts, cost)
}

/// Unit-job ΣCj within a factor 4: best ordered covering, where parts sorted by nonincreasing
/// size receive consecutive blocks of machines sorted by nonincreasing speed.
pub fn four_approx_sumcj_unit(instance: &Instance) -> Result<(Schedule, Rational)> {
    instance.require_unit()?;
    instance.require_machines(instance.m())?;
    let (k, m) = (instance.k(), instance.m());
    let sizes = instance.partition_sizes();
    let mut parts: Vec<usize> = (0..k).collect();
    parts.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let machines = fastest_machines(instance.speeds(), m);
    let speed_block = |from: usize, to: usize| -> Vec<Rational> {
        machines[from..to].iter().map(|&i| instance.speeds()[i].clone()).collect()
    };

    // dp[j][i]: first j parts on the first i machines; back[j][i]: start of part j's block.
    let mut dp: Vec<Vec<Option<Rational>>> = vec![vec![None; m + 1]; k + 1];
    let mut back = vec![vec![0usize; m + 1]; k + 1];
    dp[0][0] = Some(Rational::zero());
    for j in 1..=k {
        let n = sizes[parts[j - 1]];
        for i in j..=m {
            for from in (j - 1)..i {
                let Some(prev) = dp[j - 1][from].clone() else { continue };
                let cost = prev + unit_sumcj_distribution(n, &speed_block(from, i)).1;
                if dp[j][i].as_ref().is_none_or(|c| cost < *c) {
                    dp[j][i] = Some(cost);
                    back[j][i] = from;
                }
            }
        }
    }
    let (end, value) = (k..=m)
        .filter_map(|i| dp[k][i].clone().map(|c| (i, c)))
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .ok_or(Error::Infeasible { machines: m, partitions: k })?;

    let mut schedule = Schedule::empty(m);
    let mut i = end;
    for j in (1..=k).rev() {
        let from = back[j][i];
        let part = parts[j - 1];
        let (counts, _) = unit_sumcj_distribution(sizes[part], &speed_block(from, i));
        let mut next = 0;
        for (offset, count) in counts.into_iter().enumerate() {
            if count == 0 {
                continue;
            }
            let jobs = (next..next + count).map(|x| JobId::new(part, x)).collect();
            next += count;
            schedule.machines[machines[from + offset]] = MachineLoad::Used { partition: part, jobs };
        }
        i = from;
    }
    Ok((schedule, value))
}
