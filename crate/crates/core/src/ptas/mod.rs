//! PTAS for makespan with unit jobs.
//!
//! For a deadline `T`, capacities `⌊s·T⌋` are rounded up to the ladder `⌊(1+ε)^i⌋`, small parts
//! are covered exactly by a dynamic program over slow machines, and the remaining parts are
//! covered range by range through trimmed state vectors. An accepted deadline yields a nice
//! covering, which is stretched into a schedule of makespan at most `(1+7ε)·T`.

pub mod params;
pub mod state;

pub use params::{MachineClass, NiceCoverKind, Params};
pub use state::{
    check_covering, find_sv_lmin, generate_candidate_state_vectors, minimal_covers, run_ranges, trim_state_vectors,
    Counts, Cover, CoverState, Layout, StateVector,
};

use crate::error::{Error, Result};
use crate::model::capacity::{capacities, candidate_makespans, fastest_machines};
use crate::model::schedule::cmax_at_speeds;
use crate::model::{Instance, JobId, MachineLoad, Schedule};
use crate::rational::{uint, Rational};
use crate::search::{least_accepted, SearchMode};

#[derive(Debug, Clone, Copy)]
pub struct PtasOptions {
    /// Trim state vectors to one per key; off only for small cross-checks.
    pub trim: bool,
    pub search: SearchMode,
}

impl Default for PtasOptions {
    fn default() -> Self {
        PtasOptions { trim: true, search: SearchMode::Binary }
    }
}

/// The rounded problem for one deadline.
#[derive(Debug, Clone)]
pub struct DeadlineSetup {
    pub layout: Layout,
    /// Partition of each part in [`Layout::parts`] order.
    pub part_partition: Vec<usize>,
    /// Concrete machines per capacity class.
    pub class_machines: Vec<Vec<usize>>,
    /// `⌊s·T⌋` per instance machine.
    pub capacity: Vec<u64>,
}

impl DeadlineSetup {
    /// Keeps the `n` fastest machines and drops those with zero capacity.
    pub fn new(instance: &Instance, deadline: &Rational, eps: &Rational) -> Result<Self> {
        let capacity = capacities(instance.speeds(), deadline).0;
        let kept = fastest_machines(instance.speeds(), instance.n());
        let max_value = capacity.iter().copied().max().unwrap_or(0).max(instance.n() as u64);
        let params = Params::new(eps, max_value)?;
        let mut rounded: Vec<(u64, usize)> = Vec::new();
        for &m in &kept {
            let c = capacity[m];
            if c == 0 {
                continue;
            }
            let c_star = params.rounded_capacity(c);
            if c_star < c || uint(c_star) > (Rational::from_integer(1.into()) + &params.eps) * uint(c) {
                return Err(Error::internal("rounded capacity outside [c, (1+ε)c]"));
            }
            rounded.push((c_star, m));
        }
        rounded.sort();
        let mut caps: Vec<u64> = Vec::new();
        let mut class_machines: Vec<Vec<usize>> = Vec::new();
        for (c_star, m) in rounded {
            if caps.last() != Some(&c_star) {
                caps.push(c_star);
                class_machines.push(Vec::new());
            }
            class_machines.last_mut().unwrap().push(m);
        }
        let counts = class_machines.iter().map(|v| v.len() as u32).collect();
        let mut order: Vec<usize> = (0..instance.k()).collect();
        let sizes = instance.partition_sizes();
        order.sort_by_key(|&j| (sizes[j], j));
        let parts = order.iter().map(|&j| sizes[j] as u64).collect();
        Ok(DeadlineSetup {
            layout: Layout { params, caps, counts, parts },
            part_partition: order,
            class_machines,
            capacity,
        })
    }

    /// Checks every cover and places the jobs: each machine takes up to
    /// `⌊c(1+ε)(1/(1−ε)+ε)⌋` jobs of its part.
    pub fn nice_covering_to_schedule(&self, instance: &Instance, covering: &[Cover]) -> Result<Schedule> {
        let layout = &self.layout;
        let params = &layout.params;
        let mut next_machine = vec![0usize; layout.caps.len()];
        let mut covered = vec![false; layout.parts.len()];
        let mut schedule = Schedule::empty(instance.m());
        for cover in covering {
            let size = layout.parts[cover.part];
            let caps: Vec<u64> = cover.machines.iter().map(|&i| layout.caps[i]).collect();
            if params.nice_kind(&caps, size).is_none() {
                return Err(Error::internal("emitted cover is not nice"));
            }
            if caps.iter().map(|&c| params.scaled_capacity(c)).sum::<u64>() < size {
                return Err(Error::internal("nice cover is not exact after rescaling"));
            }
            if std::mem::replace(&mut covered[cover.part], true) {
                return Err(Error::internal("part covered twice"));
            }
            let partition = self.part_partition[cover.part];
            let mut placed = 0usize;
            for &class in &cover.machines {
                let machine = *self.class_machines[class]
                    .get(next_machine[class])
                    .ok_or_else(|| Error::internal("covering uses more machines than exist"))?;
                next_machine[class] += 1;
                let take = (params.schedule_capacity(self.capacity[machine]) as usize).min(size as usize - placed);
                if take > 0 {
                    let jobs = (placed..placed + take).map(|i| JobId::new(partition, i)).collect();
                    schedule.machines[machine] = MachineLoad::Used { partition, jobs };
                    placed += take;
                }
            }
            if placed != size as usize {
                return Err(Error::internal("jobs left after stretching a nice cover"));
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::internal("covering misses a part"));
        }
        Ok(schedule)
    }
}

/// Outcome of an accepted deadline.
#[derive(Debug, Clone)]
pub struct Accepted {
    pub covering: Vec<Cover>,
    pub schedule: Schedule,
    pub cmax: Rational,
}

/// `None` when no exact covering exists within `deadline`; otherwise a schedule of makespan at
/// most `(1+7ε)·deadline`.
pub fn ptas_check_deadline(
    instance: &Instance,
    deadline: &Rational,
    eps: &Rational,
    options: PtasOptions,
) -> Result<Option<Accepted>> {
    let setup = DeadlineSetup::new(instance, deadline, eps)?;
    let finals = run_ranges(&setup.layout, options.trim, None)?;
    let Some(sv) = finals.into_iter().next() else { return Ok(None) };
    let schedule = setup.nice_covering_to_schedule(instance, &sv.covering)?;
    let cmax = cmax_at_speeds(instance, &schedule, instance.speeds());
    if cmax > setup.layout.params.guarantee() * deadline {
        return Err(Error::internal("makespan exceeds (1+7ε)·T"));
    }
    Ok(Some(Accepted { covering: sv.covering, schedule, cmax }))
}

/// State vector sets per range index for one deadline, starting at the first range after the
/// small parts.
pub fn state_vector_trace(
    instance: &Instance,
    deadline: &Rational,
    eps: &Rational,
) -> Result<(DeadlineSetup, Vec<(usize, Vec<StateVector>)>)> {
    let setup = DeadlineSetup::new(instance, deadline, eps)?;
    let mut trace = Vec::new();
    run_ranges(&setup.layout, true, Some(&mut trace))?;
    Ok((setup, trace))
}

/// Makespan within `1+7ε` of the optimum for unit jobs.
pub fn ptas_solve(instance: &Instance, eps: &Rational) -> Result<(Schedule, Rational)> {
    ptas_solve_with(instance, eps, PtasOptions::default())
}

pub fn ptas_solve_with(instance: &Instance, eps: &Rational, options: PtasOptions) -> Result<(Schedule, Rational)> {
    instance.require_unit()?;
    Params::new(eps, 1)?;
    let kept = fastest_machines(instance.speeds(), instance.n());
    instance.require_machines(kept.len())?;
    let speeds: Vec<Rational> = kept.iter().map(|&i| instance.speeds()[i].clone()).collect();
    let candidates = candidate_makespans(&speeds, instance.n());
    let (_, accepted) = least_accepted(&candidates, options.search, |t| ptas_check_deadline(instance, t, eps, options))?;
    Ok((accepted.schedule, accepted.cmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_cmax;
    use crate::rational::{int, ratio};

    #[test]
    fn single_machine_is_exact() {
        let inst = Instance::unit(&[5], vec![int(2)]).unwrap();
        let (s, v) = ptas_solve(&inst, &ratio(1, 4)).unwrap();
        assert_eq!(v, ratio(5, 2));
        assert_eq!(evaluate_cmax(&inst, &s).unwrap(), v);
    }

    #[test]
    fn two_partitions_within_guarantee() {
        let inst = Instance::unit(&[3, 2], vec![int(3), int(2)]).unwrap();
        let (s, v) = ptas_solve(&inst, &ratio(1, 4)).unwrap();
        assert_eq!(evaluate_cmax(&inst, &s).unwrap(), v);
        assert!(v <= ratio(11, 4));
    }

    #[test]
    fn too_few_machines() {
        let inst = Instance::unit(&[1, 1], vec![int(1)]).unwrap();
        assert!(matches!(ptas_solve(&inst, &ratio(1, 2)), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn non_unit_jobs_rejected() {
        let inst = Instance::new(vec![vec![2]], vec![int(1)]).unwrap();
        assert!(matches!(ptas_solve(&inst, &ratio(1, 2)), Err(Error::UnitJobsRequired)));
    }
}
