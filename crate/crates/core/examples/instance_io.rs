//! Instance and schedule files: parse, solve, serialize and validate.

use multipartite_sched::error::Error;
use multipartite_sched::exact_dp::dp_sumcj;
use multipartite_sched::model::{
    evaluate_sum_cj, gen_random_instance, parse_instance, parse_schedule, serialize_instance, serialize_schedule,
    validate_schedule, RandomSpec,
};

const TEXT: &str = "\
# two partitions on three machines
machines 3
2 3/2 1
partitions 2
3 4 1 2
2 5 5
";

pub fn run() -> multipartite_sched::error::Result<()> {
    let inst = parse_instance(TEXT)?;
    let (value, schedule) = dp_sumcj(&inst)?;
    let text = serialize_schedule(&schedule);
    print!("{text}");
    let back = parse_schedule(&text)?;
    validate_schedule(&inst, &back).map_err(Error::InvalidSchedule)?;
    println!("ΣCj = {value} (re-evaluated {})", evaluate_sum_cj(&inst, &back)?);

    let random = gen_random_instance(&RandomSpec { seed: 3, k: 2, m: 4, n: 3..=6, p: 1..=9, speeds: 1..=4, unit: false });
    print!("{}", serialize_instance(&random));
    Ok(())
}

fn main() {
    run().unwrap();
}
