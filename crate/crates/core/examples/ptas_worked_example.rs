//! The PTAS on 49 machines and eight parts at ε = 1/2, deadline 1: prints the constants, the
//! capacity classes per range and the accepted schedule's makespan.

use multipartite_sched::model::Instance;
use multipartite_sched::ptas::{ptas_check_deadline, state_vector_trace, PtasOptions};
use multipartite_sched::rational::{int, ratio};

pub fn run() -> multipartite_sched::error::Result<()> {
    let machines = [(39, 3), (2, 7), (4, 11), (2, 17), (1, 25), (1, 57)];
    let speeds = machines.iter().flat_map(|&(n, c)| std::iter::repeat_n(int(c), n)).collect();
    let inst = Instance::unit(&[3, 20, 25, 26, 36, 37, 50, 51], speeds)?;
    let eps = ratio(1, 2);

    let (setup, trace) = state_vector_trace(&inst, &int(1), &eps)?;
    let p = &setup.layout.params;
    println!("l_min = {}, d_tiny = {}, d_average = {}", p.l_min, p.d_tiny, p.d_average);
    for (l, svs) in &trace {
        let classes: Vec<_> = setup.layout.caps.iter().map(|&c| (c, p.classify(c, *l))).collect();
        println!("range {l}: {} state vectors, classes {classes:?}", svs.len());
    }
    match ptas_check_deadline(&inst, &int(1), &eps, PtasOptions::default())? {
        Some(acc) => println!("accepted, {} covers, Cmax = {}", acc.covering.len(), acc.cmax),
        None => println!("rejected"),
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
