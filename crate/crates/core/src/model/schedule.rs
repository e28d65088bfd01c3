use std::fmt;

use num_traits::Zero;

use super::instance::{Instance, JobId};
use crate::error::{Error, Result};
use crate::rational::{uint, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineLoad {
    Unused,
    /// Jobs in execution order.
    Used { partition: usize, jobs: Vec<JobId> },
}

impl MachineLoad {
    pub fn jobs(&self) -> &[JobId] {
        match self {
            MachineLoad::Unused => &[],
            MachineLoad::Used { jobs, .. } => jobs,
        }
    }

    pub fn partition(&self) -> Option<usize> {
        match self {
            MachineLoad::Unused => None,
            MachineLoad::Used { partition, .. } => Some(*partition),
        }
    }
}

/// One entry per machine, indexed like the instance's speeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub machines: Vec<MachineLoad>,
}

impl Schedule {
    pub fn empty(m: usize) -> Self {
        Schedule { machines: vec![MachineLoad::Unused; m] }
    }

    /// Appends a job; the machine must be unused or already serve `job.partition`.
    pub fn push(&mut self, machine: usize, job: JobId) {
        match &mut self.machines[machine] {
            slot @ MachineLoad::Unused => {
                *slot = MachineLoad::Used { partition: job.partition, jobs: vec![job] }
            }
            MachineLoad::Used { partition, jobs } => {
                debug_assert_eq!(*partition, job.partition);
                jobs.push(job);
            }
        }
    }

    /// Re-sorts each machine's load shortest-processing-time first (stable).
    pub fn sorted_spt(&self, instance: &Instance) -> Schedule {
        let machines = self
            .machines
            .iter()
            .map(|load| match load {
                MachineLoad::Unused => MachineLoad::Unused,
                MachineLoad::Used { partition, jobs } => {
                    let mut jobs = jobs.clone();
                    jobs.sort_by_key(|&id| instance.processing(id));
                    MachineLoad::Used { partition: *partition, jobs }
                }
            })
            .collect();
        Schedule { machines }
    }
}

/// First problem found by [`validate_schedule`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MachineCount { expected: usize, found: usize },
    UnknownJob { machine: usize, job: JobId },
    MixedPartitions { machine: usize },
    DuplicateJob { job: JobId },
    MissingJob { job: JobId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MachineCount { expected, found } => {
                write!(f, "bad machine index: schedule has {found} machine(s), instance has {expected}")
            }
            Violation::UnknownJob { machine, job } => {
                write!(f, "machine {machine} holds unknown job {}.{}", job.partition, job.index)
            }
            Violation::MixedPartitions { machine } => {
                write!(f, "mixed partitions on machine {machine}")
            }
            Violation::DuplicateJob { job } => {
                write!(f, "duplicate job {}.{}", job.partition, job.index)
            }
            Violation::MissingJob { job } => write!(f, "missing job {}.{}", job.partition, job.index),
        }
    }
}

pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> std::result::Result<(), Violation> {
    if schedule.machines.len() != instance.m() {
        return Err(Violation::MachineCount { expected: instance.m(), found: schedule.machines.len() });
    }
    let mut seen: Vec<Vec<bool>> = instance.partitions().iter().map(|p| vec![false; p.len()]).collect();
    for (machine, load) in schedule.machines.iter().enumerate() {
        let MachineLoad::Used { partition, jobs } = load else { continue };
        for &job in jobs {
            let known = seen.get(job.partition).is_some_and(|p| job.index < p.len());
            if !known {
                return Err(Violation::UnknownJob { machine, job });
            }
            if job.partition != *partition {
                return Err(Violation::MixedPartitions { machine });
            }
            let slot = &mut seen[job.partition][job.index];
            if *slot {
                return Err(Violation::DuplicateJob { job });
            }
            *slot = true;
        }
    }
    for (j, part) in seen.iter().enumerate() {
        if let Some(i) = part.iter().position(|&s| !s) {
            return Err(Violation::MissingJob { job: JobId::new(j, i) });
        }
    }
    Ok(())
}

/// ΣCj of the schedule as given, against arbitrary per-machine speeds. Does not validate.
pub(crate) fn sum_cj_at_speeds(instance: &Instance, schedule: &Schedule, speeds: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (load, speed) in schedule.machines.iter().zip(speeds) {
        let mut prefix = 0u64;
        let mut acc = 0u64;
        for &job in load.jobs() {
            prefix += instance.processing(job);
            acc += prefix;
        }
        if acc > 0 {
            total += uint(acc) / speed;
        }
    }
    total
}

pub(crate) fn cmax_at_speeds(instance: &Instance, schedule: &Schedule, speeds: &[Rational]) -> Rational {
    let mut best = Rational::zero();
    for (load, speed) in schedule.machines.iter().zip(speeds) {
        let work: u64 = load.jobs().iter().map(|&j| instance.processing(j)).sum();
        if work > 0 {
            let t = uint(work) / speed;
            if t > best {
                best = t;
            }
        }
    }
    best
}

/// Σ_j C_j with direct prefix sums, jobs in the stored order.
pub fn evaluate_sum_cj(instance: &Instance, schedule: &Schedule) -> Result<Rational> {
    validate_schedule(instance, schedule).map_err(Error::InvalidSchedule)?;
    Ok(sum_cj_at_speeds(instance, schedule, instance.speeds()))
}

/// Σ_j C_j after re-sorting every machine shortest-processing-time first.
pub fn evaluate_sum_cj_spt(instance: &Instance, schedule: &Schedule) -> Result<Rational> {
    evaluate_sum_cj(instance, &schedule.sorted_spt(instance))
}

pub fn evaluate_cmax(instance: &Instance, schedule: &Schedule) -> Result<Rational> {
    validate_schedule(instance, schedule).map_err(Error::InvalidSchedule)?;
    Ok(cmax_at_speeds(instance, schedule, instance.speeds()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn load(partition: usize, idx: &[usize]) -> MachineLoad {
        MachineLoad::Used { partition, jobs: idx.iter().map(|&i| JobId::new(partition, i)).collect() }
    }

    #[test]
    fn single_machine_prefix_sums() {
        let inst = Instance::new(vec![vec![1, 3]], vec![int(1)]).unwrap();
        let s = Schedule { machines: vec![load(0, &[0, 1])] };
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), int(5));
    }

    #[test]
    fn fast_machine_unit_jobs() {
        let inst = Instance::unit(&[3], vec![int(2)]).unwrap();
        let s = Schedule { machines: vec![load(0, &[0, 1, 2])] };
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), int(3));
        assert_eq!(evaluate_cmax(&inst, &s).unwrap(), ratio(3, 2));
    }

    #[test]
    fn cmax_is_max_over_machines() {
        let inst = Instance::unit(&[2, 3], vec![int(1), int(3)]).unwrap();
        let s = Schedule { machines: vec![load(0, &[0, 1]), load(1, &[0, 1, 2])] };
        assert_eq!(evaluate_cmax(&inst, &s).unwrap(), int(2));
    }

    #[test]
    fn empty_schedule_evaluates_to_zero() {
        let s = Schedule::empty(0);
        assert_eq!(cmax_at_speeds(&Instance::unit(&[1], vec![]).unwrap(), &s, &[]), int(0));
        assert_eq!(sum_cj_at_speeds(&Instance::unit(&[1], vec![]).unwrap(), &s, &[]), int(0));
    }

    #[test]
    fn reports_violations() {
        let inst = Instance::unit(&[1, 1], vec![int(1), int(1)]).unwrap();
        let mixed = Schedule {
            machines: vec![
                MachineLoad::Used { partition: 0, jobs: vec![JobId::new(0, 0), JobId::new(1, 0)] },
                MachineLoad::Unused,
            ],
        };
        assert_eq!(validate_schedule(&inst, &mixed), Err(Violation::MixedPartitions { machine: 0 }));
        let missing = Schedule { machines: vec![load(0, &[0]), MachineLoad::Unused] };
        assert_eq!(validate_schedule(&inst, &missing), Err(Violation::MissingJob { job: JobId::new(1, 0) }));
        let dup = Schedule { machines: vec![load(0, &[0, 0]), load(1, &[0])] };
        assert_eq!(validate_schedule(&inst, &dup), Err(Violation::DuplicateJob { job: JobId::new(0, 0) }));
        let short = Schedule { machines: vec![load(0, &[0])] };
        assert!(matches!(validate_schedule(&inst, &short), Err(Violation::MachineCount { .. })));
        let ok = Schedule { machines: vec![load(0, &[0]), load(1, &[0])] };
        assert_eq!(validate_schedule(&inst, &ok), Ok(()));
        assert!(Violation::MixedPartitions { machine: 0 }.to_string().contains("mixed partitions"));
    }
}
