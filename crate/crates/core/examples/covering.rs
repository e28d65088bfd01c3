//! Machine coverings: the greedy ½-covering, and the 2- and 4-approximations built on it.

use multipartite_sched::covering::{four_approx_sumcj_unit, greedy_covering, two_approx_cmax_unit};
use multipartite_sched::model::Instance;
use multipartite_sched::oracle::{brute_force_cmax_unit, brute_force_sumcj, exact_covering_exists};
use multipartite_sched::rational::{int, ratio};

pub fn run() -> multipartite_sched::error::Result<()> {
    let caps = [7, 4, 4, 3, 3, 2];
    for sizes in [[10, 8, 5], [7, 6, 4], [12, 9, 9]] {
        match greedy_covering(&sizes, &caps) {
            Some(c) => println!("{sizes:?}: {} (half covering: {})", c.describe(3), c.is_alpha_covering(&ratio(1, 2), &sizes, &caps)),
            None => println!("{sizes:?}: no covering; exact covering exists: {}", exact_covering_exists(&sizes, &caps)?),
        }
    }

    let inst = Instance::unit(&[6, 2, 3], vec![int(4), int(3), int(2), int(1), int(1)])?;
    let (_, cmax) = two_approx_cmax_unit(&inst)?;
    println!("2-approx Cmax {cmax} vs OPT {}", brute_force_cmax_unit(&inst)?.0);
    let (_, sum) = four_approx_sumcj_unit(&inst)?;
    println!("4-approx ΣCj {sum} vs OPT {}", brute_force_sumcj(&inst)?.0);
    Ok(())
}

fn main() {
    run().unwrap();
}
