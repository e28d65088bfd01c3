//! Optimal ΣCj on identical machines: machines are handed out by marginal gain, then each
//! partition is scheduled round-robin in SPT order.

use multipartite_sched::identical::{allocate_machines, solve_identical_sumcj, MarginalGainTable};
use multipartite_sched::model::{serialize_schedule, Instance};
use multipartite_sched::rational::int;

pub fn run() -> multipartite_sched::error::Result<()> {
    let partitions = vec![vec![5, 1, 3, 8], vec![2, 2], vec![9, 4, 4, 1, 6]];
    let inst = Instance::new(partitions.clone(), vec![int(1); 5])?;

    let table = MarginalGainTable::new(&partitions, inst.m());
    println!("marginal gains nonincreasing: {}", table.is_nonincreasing());
    println!("machines per partition: {:?}", allocate_machines(&partitions, inst.m()));

    let (schedule, total) = solve_identical_sumcj(&inst)?;
    println!("sum of completion times = {total}");
    print!("{}", serialize_schedule(&schedule));
    Ok(())
}

fn main() {
    run().unwrap();
}
