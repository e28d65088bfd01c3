//! Exact dynamic programs for a fixed number of partitions: unit-job makespan over candidate
//! deadlines, and ΣCj for arbitrary processing times.

use multipartite_sched::exact_dp::{dp_cmax_unit, dp_sumcj};
use multipartite_sched::model::{candidate_makespans, Instance};
use multipartite_sched::oracle::{brute_force_cmax_unit, brute_force_sumcj};
use multipartite_sched::rational::{int, ratio};

pub fn run() -> multipartite_sched::error::Result<()> {
    let speeds = vec![int(3), int(2), ratio(3, 2), int(1)];
    let unit = Instance::unit(&[5, 3], speeds.clone())?;
    let (cmax, _) = dp_cmax_unit(&unit)?;
    println!("{} candidate makespans", candidate_makespans(unit.speeds(), unit.n()).len());
    println!("dp Cmax = {cmax}, oracle = {}", brute_force_cmax_unit(&unit)?.0);

    let general = Instance::new(vec![vec![4, 2, 7], vec![1, 1, 5]], speeds)?;
    let (sum, _) = dp_sumcj(&general)?;
    println!("dp ΣCj = {sum}, oracle = {}", brute_force_sumcj(&general)?.0);
    Ok(())
}

fn main() {
    run().unwrap();
}
