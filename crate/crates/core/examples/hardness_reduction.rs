//! 3-Partition instances become single-deadline ΣCj instances; a yes-instance reaches the
//! target value exactly.

use multipartite_sched::exact_dp::dp_sumcj;
use multipartite_sched::model::gen_3partition_instance;
use multipartite_sched::oracle::brute_force_sumcj;

pub fn run() -> multipartite_sched::error::Result<()> {
    for (a, b) in [(vec![4, 4, 4], 12), (vec![5, 5, 6], 16)] {
        let (inst, target) = gen_3partition_instance(&a, b)?;
        let (opt, _) = brute_force_sumcj(&inst)?;
        println!("A={a:?} b={b}: target {target}, oracle {opt}, dp {}", dp_sumcj(&inst)?.0);
    }
    if let Err(e) = gen_3partition_instance(&[1, 5, 6], 12) {
        println!("rejected: {e}");
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
