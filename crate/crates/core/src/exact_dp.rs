//! Exact dynamic programs for a fixed number of partitions on uniform machines.
//!
//! Machines are processed fastest first. A step either leaves the machine unused or gives it
//! jobs of a single partition; per state only one entry survives (feasibility for Cmax, the
//! minimum partial ΣCj for ΣCj).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{candidate_makespans, capacities, fastest_machines, Instance, JobId, MachineLoad, Schedule};
use crate::rational::{uint, Rational};
use crate::search::{least_accepted, SearchMode};

/// Mixed-radix encoding of bounded count vectors.
#[derive(Debug, Clone)]
struct Radix {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Radix {
    fn new(bounds: Vec<usize>) -> Self {
        let mut strides = Vec::with_capacity(bounds.len());
        let mut size = 1usize;
        for &b in &bounds {
            strides.push(size);
            size = size.checked_mul(b + 1).expect("state space overflow");
        }
        Radix { bounds, strides, size }
    }

    fn decode(&self, mut index: usize) -> Vec<usize> {
        self.bounds
            .iter()
            .map(|&b| {
                let d = index % (b + 1);
                index /= b + 1;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }
}

/// Machine indices, fastest first (ties by index).
fn machine_order(instance: &Instance) -> Vec<usize> {
    fastest_machines(instance.speeds(), instance.m())
}

/// Whether unit jobs fit by deadline `t`; returns per-machine `(partition, count)` if so.
pub fn cmax_unit_feasible(instance: &Instance, t: &Rational) -> Option<Vec<Option<(usize, usize)>>> {
    let radix = Radix::new(instance.partition_sizes());
    let order = machine_order(instance);
    let caps = capacities(instance.speeds(), t).0;
    let start = radix.encode(&instance.partition_sizes());
    let mut reach = vec![false; radix.size];
    reach[start] = true;
    // back[l][state] = (previous state, partition, count); count 0 means unused.
    let mut back: Vec<Vec<Option<(usize, usize, usize)>>> = Vec::with_capacity(order.len());
    for &machine in &order {
        let cap = caps[machine] as usize;
        let mut next = vec![false; radix.size];
        let mut layer = vec![None; radix.size];
        for state in (0..radix.size).filter(|&s| reach[s]) {
            if !next[state] {
                next[state] = true;
                layer[state] = Some((state, 0, 0));
            }
            let digits = radix.decode(state);
            for (j, &a) in digits.iter().enumerate() {
                for count in 1..=a.min(cap) {
                    let to = state - count * radix.strides[j];
                    if !next[to] {
                        next[to] = true;
                        layer[to] = Some((state, j, count));
                    }
                }
            }
        }
        reach = next;
        back.push(layer);
    }
    if !reach[0] {
        return None;
    }
    let mut plan = vec![None; instance.m()];
    let mut state = 0;
    for (l, &machine) in order.iter().enumerate().rev() {
        let (prev, j, count) = back[l][state].expect("reachable state has a back-pointer");
        if count > 0 {
            plan[machine] = Some((j, count));
        }
        state = prev;
    }
    Some(plan)
}

fn plan_to_schedule(instance: &Instance, plan: &[Option<(usize, usize)>]) -> Schedule {
    let mut next = vec![0usize; instance.k()];
    let mut schedule = Schedule::empty(instance.m());
    for (machine, entry) in plan.iter().enumerate() {
        if let Some((j, count)) = *entry {
            let jobs = (next[j]..next[j] + count).map(|i| JobId::new(j, i)).collect();
            next[j] += count;
            schedule.machines[machine] = MachineLoad::Used { partition: j, jobs };
        }
    }
    schedule
}

/// Minimum makespan for unit jobs: least candidate deadline admitting a feasible assignment.
pub fn dp_cmax_unit(instance: &Instance) -> Result<(Rational, Schedule)> {
    dp_cmax_unit_with(instance, SearchMode::Binary)
}

pub fn dp_cmax_unit_with(instance: &Instance, mode: SearchMode) -> Result<(Rational, Schedule)> {
    instance.require_unit()?;
    instance.require_machines(instance.m())?;
    let candidates = candidate_makespans(instance.speeds(), instance.n());
    let (idx, plan) = least_accepted(&candidates, mode, |t| Ok(cmax_unit_feasible(instance, t)))?;
    Ok((candidates[idx].clone(), plan_to_schedule(instance, &plan)))
}

/// Which job subsets a machine may take from its partition in [`dp_sumcj_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JobSelection {
    /// Any sub-multiset of the remaining jobs. Exact.
    #[default]
    AnySubset,
    /// Only the `n'` largest remaining jobs. Exact for unit or equal-length partitions only.
    LargestRemaining,
}

/// Per partition: distinct processing values (ascending) and their multiplicities.
struct ValueClasses {
    values: Vec<u64>,
    counts: Vec<usize>,
    /// Job indices per value, in index order.
    jobs: Vec<Vec<usize>>,
}

impl ValueClasses {
    fn new(part: &[u64]) -> Self {
        let mut values: Vec<u64> = part.to_vec();
        values.sort_unstable();
        values.dedup();
        let mut jobs = vec![Vec::new(); values.len()];
        for (i, p) in part.iter().enumerate() {
            jobs[values.binary_search(p).unwrap()].push(i);
        }
        let counts = jobs.iter().map(Vec::len).collect();
        ValueClasses { values, counts, jobs }
    }

    /// Σ over SPT prefix sums of the sub-multiset with `take[t]` jobs of value `values[t]`.
    fn spt_weight(&self, take: &[usize]) -> u64 {
        let mut prefix = 0u64;
        let mut total = 0u64;
        for (v, &c) in self.values.iter().zip(take) {
            for _ in 0..c {
                prefix += v;
                total += prefix;
            }
        }
        total
    }
}

/// Minimum ΣCj via the remaining-jobs DP.
pub fn dp_sumcj(instance: &Instance) -> Result<(Rational, Schedule)> {
    dp_sumcj_with(instance, JobSelection::AnySubset)
}

/// The state is the remaining count of every (partition, processing value) pair, so jobs of
/// equal length are interchangeable and the per-state minimum is a sound dominance rule.
pub fn dp_sumcj_with(instance: &Instance, selection: JobSelection) -> Result<(Rational, Schedule)> {
    instance.require_machines(instance.m())?;
    let classes: Vec<ValueClasses> = instance.partitions().iter().map(|p| ValueClasses::new(p)).collect();
    let mut offsets = Vec::with_capacity(classes.len());
    let mut bounds = Vec::new();
    for c in &classes {
        offsets.push(bounds.len());
        bounds.extend_from_slice(&c.counts);
    }
    let radix = Radix::new(bounds.clone());
    // Sub-multisets per partition in local mixed radix, with their SPT weights.
    let local: Vec<(Radix, Vec<u64>)> = classes
        .iter()
        .map(|c| {
            let r = Radix::new(c.counts.clone());
            let weights = (0..r.size).map(|x| c.spt_weight(&r.decode(x))).collect();
            (r, weights)
        })
        .collect();

    let order = machine_order(instance);
    let start = radix.size - 1;
    let mut best: Vec<Option<Rational>> = vec![None; radix.size];
    best[start] = Some(Rational::zero());
    // back[l][state] = (previous state, partition, local sub-multiset index); index 0 = unused.
    let mut back: Vec<Vec<Option<(usize, usize, usize)>>> = Vec::with_capacity(order.len());
    for &machine in &order {
        let speed = &instance.speeds()[machine];
        let mut next: Vec<Option<Rational>> = vec![None; radix.size];
        let mut layer = vec![None; radix.size];
        let mut relax = |next: &mut Vec<Option<Rational>>, to: usize, cost: Rational, ptr| {
            if next[to].as_ref().is_none_or(|c| cost < *c) {
                next[to] = Some(cost);
                layer[to] = Some(ptr);
            }
        };
        for state in 0..radix.size {
            let Some(base) = best[state].clone() else { continue };
            relax(&mut next, state, base.clone(), (state, 0, 0));
            let digits = radix.decode(state);
            for (j, (lr, weights)) in local.iter().enumerate() {
                let rem = &digits[offsets[j]..offsets[j] + lr.bounds.len()];
                let choices: Vec<usize> = match selection {
                    JobSelection::AnySubset => (1..lr.size)
                        .filter(|&x| lr.decode(x).iter().zip(rem).all(|(t, r)| t <= r))
                        .collect(),
                    JobSelection::LargestRemaining => largest_prefixes(rem).map(|t| lr.encode(&t)).collect(),
                };
                for x in choices {
                    let take = lr.decode(x);
                    let delta: usize = take.iter().zip(&radix.strides[offsets[j]..]).map(|(t, s)| t * s).sum();
                    let cost = &base + uint(weights[x]) / speed;
                    relax(&mut next, state - delta, cost, (state, j, x));
                }
            }
        }
        best = next;
        back.push(layer);
    }
    let value = best[0].clone().ok_or(Error::Infeasible { machines: instance.m(), partitions: instance.k() })?;

    let mut schedule = Schedule::empty(instance.m());
    let mut cursor: Vec<Vec<usize>> = classes.iter().map(|c| vec![0; c.values.len()]).collect();
    let mut state = 0;
    for (l, &machine) in order.iter().enumerate().rev() {
        let (prev, j, x) = back[l][state].expect("reachable state has a back-pointer");
        if x > 0 {
            let take = local[j].0.decode(x);
            let mut jobs = Vec::new();
            for (t, &c) in take.iter().enumerate() {
                for _ in 0..c {
                    jobs.push(JobId::new(j, classes[j].jobs[t][cursor[j][t]]));
                    cursor[j][t] += 1;
                }
            }
            schedule.machines[machine] = MachineLoad::Used { partition: j, jobs };
        }
        state = prev;
    }
    Ok((value, schedule))
}

/// For remaining counts per ascending value, the sub-multisets "n' largest remaining", n' ≥ 1.
fn largest_prefixes(rem: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = rem.iter().sum();
    (1..=total).map(move |mut n| {
        let mut take = vec![0; rem.len()];
        for t in (0..rem.len()).rev() {
            let c = rem[t].min(n);
            take[t] = c;
            n -= c;
        }
        take
    })
}
