//! Instances, schedules, objective evaluation, file formats and generators.

pub mod capacity;
pub mod generate;
pub mod instance;
pub mod io;
pub mod schedule;

pub use capacity::{candidate_makespans, capacities, fastest_machines, CapacityFn};
pub use generate::{gen_3partition_instance, gen_random_instance, RandomSpec};
pub use instance::{Instance, Job, JobId};
pub use io::{parse_instance, parse_schedule, serialize_instance, serialize_schedule};
pub use schedule::{
    evaluate_cmax, evaluate_sum_cj, evaluate_sum_cj_spt, validate_schedule, MachineLoad, Schedule,
    Violation,
};
