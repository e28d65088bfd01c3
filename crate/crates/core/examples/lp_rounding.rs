//! LP-based 4-approximation for ΣCj with arbitrary processing times: speeds are rounded to
//! powers of two, one LP per guess is solved exactly and rounded through min-cost flow.

use multipartite_sched::lp_flow::{evaluate_guesses, four_approx_sumcj_lp, lp_lower_bound, round_speeds_pow2, LpOptions};
use multipartite_sched::model::Instance;
use multipartite_sched::oracle::brute_force_sumcj;
use multipartite_sched::rational::{int, ratio};

pub fn run() -> multipartite_sched::error::Result<()> {
    let speeds = vec![int(5), int(3), ratio(3, 2), int(1)];
    let inst = Instance::new(vec![vec![6, 2, 9, 1], vec![3, 3]], speeds.clone())?;

    let (rounded, groups) = round_speeds_pow2(&speeds);
    let shown: Vec<String> = rounded.iter().map(|s| s.to_string()).collect();
    println!("rounded speeds [{}] in {} groups", shown.join(", "), groups.len());
    for g in evaluate_guesses(&inst, LpOptions::default())? {
        println!("guess groups {:?} counts {:?}: LP {} -> schedule {}", g.guess.group, g.guess.count, g.lp_objective, g.value);
    }
    let (_, value) = four_approx_sumcj_lp(&inst)?;
    println!("best {value}; LP bound {}; OPT {}", lp_lower_bound(&inst)?, brute_force_sumcj(&inst)?.0);
    Ok(())
}

fn main() {
    run().unwrap();
}
