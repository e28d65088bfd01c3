//! LP-rounding 4-approximation for ΣCj with arbitrary processing times.
//!
//! Speeds are rounded up to powers of two. For every guess of each partition's fastest speed
//! group and how many machines of it the partition gets, a layered LP relaxation is solved,
//! machine counts are rounded up (virtual machines fill the gaps), jobs are assigned per
//! partition by min-cost flow, and virtual machines are merged into the partition's fastest
//! real machine. The best schedule over all guesses is returned, evaluated at the original speeds.

pub mod flow;
pub mod merge;
pub mod simplex;
pub mod speeds;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use flow::{min_cost_assignment, AssignmentNetwork, FlowAssignment};
pub use merge::{merge_virtual_chain, MergedLoad};
pub use simplex::{solve_lp, Constraint, LinearProgram, LpSolution, Relation};
pub use speeds::{round_speeds_pow2, round_up_pow2, SpeedGroup};

use crate::error::{Error, Result};
use crate::model::schedule::sum_cj_at_speeds;
use crate::model::{Instance, JobId, MachineLoad, Schedule};
use crate::rational::{uint, Rational};

/// Per partition: index of its fastest speed group and how many machines of it it receives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guess {
    pub group: Vec<usize>,
    pub count: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LpOptions {
    /// Skip guesses that only permute partitions with identical job multisets.
    pub skip_symmetric_guesses: bool,
}

/// All guesses with `count ≥ 1` and, per group, total guessed count within the group size.
pub fn enumerate_guesses(groups: &[SpeedGroup], k: usize) -> Vec<Guess> {
    let options: Vec<(usize, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, grp)| (1..=grp.machines.len()).map(move |c| (g, c)))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let mut used = vec![0usize; groups.len()];
        for &o in &pick {
            used[options[o].0] += options[o].1;
        }
        if used.iter().zip(groups).all(|(u, g)| *u <= g.machines.len()) {
            out.push(Guess {
                group: pick.iter().map(|&o| options[o].0).collect(),
                count: pick.iter().map(|&o| options[o].1).collect(),
            });
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            pick[pos] += 1;
            if pick[pos] < options.len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

/// The layered relaxation for one guess, with variable bookkeeping.
#[derive(Debug, Clone)]
pub struct LpModel {
    pub program: LinearProgram,
    /// `(partition, group)` → variable of the fractional machine count, when not fixed.
    pub machine_vars: Vec<Vec<Option<usize>>>,
    /// Per variable of the job part: `(job, layer, group)`.
    pub job_vars: Vec<(JobId, usize, usize)>,
}

pub fn build_lp(instance: &Instance, groups: &[SpeedGroup], guess: &Guess) -> LpModel {
    let k = instance.k();
    let layers = instance.n();
    let mut num_vars = 0;
    let mut machine_vars = vec![vec![None; groups.len()]; k];
    for pr in 0..k {
        for tp in 0..guess.group[pr] {
            machine_vars[pr][tp] = Some(num_vars);
            num_vars += 1;
        }
    }
    let mut job_vars = Vec::new();
    // x[(pr, tp, lr)] lists the variables of that layer.
    let mut layer_vars: Vec<Vec<Vec<Vec<usize>>>> =
        (0..k).map(|pr| vec![vec![Vec::new(); layers + 1]; guess.group[pr] + 1]).collect();
    let mut per_job: Vec<Vec<usize>> = Vec::new();
    for job in instance.jobs() {
        let pr = job.id.partition;
        let mut vars = Vec::new();
        for tp in 0..=guess.group[pr] {
            for lr in 1..=layers {
                let v = num_vars + job_vars.len();
                job_vars.push((job.id, lr, tp));
                layer_vars[pr][tp][lr].push(v);
                vars.push(v);
            }
        }
        per_job.push(vars);
    }
    num_vars += job_vars.len();

    let mut lp = LinearProgram::new(num_vars);
    let offset = num_vars - job_vars.len();
    for (i, &(id, lr, tp)) in job_vars.iter().enumerate() {
        lp.objective[offset + i] = uint(lr as u64 * instance.processing(id)) / &groups[tp].speed;
    }
    let one = Rational::one;
    let reserved = |tp: usize| -> usize { (0..k).filter(|&i| guess.group[i] == tp).map(|i| guess.count[i]).sum() };
    for (tp, group) in groups.iter().enumerate() {
        let free = group.machines.len() as i64 - reserved(tp) as i64;
        // Every machine is assigned; guessed counts are constants.
        let coeffs: Vec<(usize, Rational)> = (0..k).filter_map(|pr| machine_vars[pr][tp]).map(|v| (v, one())).collect();
        lp.add(coeffs, Relation::Eq, Rational::from_integer(free.into()));
        for pr in 0..k {
            if let Some(v) = machine_vars[pr][tp] {
                lp.add(vec![(v, one())], Relation::Le, Rational::from_integer(free.into()));
            }
        }
    }
    for vars in &per_job {
        lp.add(vars.iter().map(|&v| (v, one())).collect(), Relation::Eq, one());
    }
    for pr in 0..k {
        for tp in 0..=guess.group[pr] {
            for lr in 1..=layers {
                let mut coeffs: Vec<(usize, Rational)> = layer_vars[pr][tp][lr].iter().map(|&v| (v, one())).collect();
                let rhs = match machine_vars[pr][tp] {
                    Some(v) => {
                        coeffs.push((v, -one()));
                        Rational::zero()
                    }
                    None => uint(guess.count[pr] as u64),
                };
                lp.add(coeffs, Relation::Le, rhs);
            }
        }
    }
    LpModel { program: lp, machine_vars, job_vars }
}

/// A machine slot of one partition after rounding: a real machine index or a virtual one.
#[derive(Debug, Clone)]
struct Slot {
    real: Option<usize>,
    group: usize,
}

/// Outcome of one guess.
#[derive(Debug, Clone)]
pub struct GuessOutcome {
    pub guess: Guess,
    pub lp_objective: Rational,
    pub schedule: Schedule,
    pub value: Rational,
}

fn run_guess(
    instance: &Instance,
    rounded: &[Rational],
    groups: &[SpeedGroup],
    guess: &Guess,
) -> Result<Option<GuessOutcome>> {
    let k = instance.k();
    let model = build_lp(instance, groups, guess);
    let solution = match solve_lp(&model.program) {
        Ok(s) => s,
        Err(Error::LpInfeasible) => return Ok(None),
        Err(e) => return Err(e),
    };
    let offset = model.program.num_vars - model.job_vars.len();
    let mut contribution = vec![Rational::zero(); k];
    for (i, &(id, _, _)) in model.job_vars.iter().enumerate() {
        let v = &solution.values[offset + i];
        if !v.is_zero() {
            contribution[id.partition] += v * &model.program.objective[offset + i];
        }
    }

    // Round machine counts up; guessed groups are exact.
    let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); k];
    for (tp, group) in groups.iter().enumerate() {
        let mut free = group.machines.iter().copied();
        for pr in 0..k {
            if guess.group[pr] == tp {
                for _ in 0..guess.count[pr] {
                    slots[pr].push(Slot { real: free.next(), group: tp });
                }
            }
        }
        let mut fractional = Vec::new();
        for pr in 0..k {
            let Some(v) = model.machine_vars[pr][tp] else { continue };
            let value = &solution.values[v];
            let whole = value.numer().div_floor(value.denom()).to_usize().unwrap();
            for _ in 0..whole {
                let real = free.next().ok_or_else(|| Error::internal("rounded counts exceed the group"))?;
                slots[pr].push(Slot { real: Some(real), group: tp });
            }
            if !value.is_integer() {
                fractional.push(pr);
            }
        }
        for pr in fractional {
            slots[pr].push(Slot { real: free.next(), group: tp });
        }
        if free.next().is_some() {
            return Err(Error::internal("real machines left after rounding"));
        }
    }
    let mut schedule = Schedule::empty(instance.m());
    for pr in 0..k {
        let jobs = &instance.partitions()[pr];
        let speeds: Vec<Rational> = slots[pr].iter().map(|s| groups[s.group].speed.clone()).collect();
        let network = AssignmentNetwork { jobs: jobs.clone(), speeds, layers: jobs.len() };
        let flow = min_cost_assignment(&network)?;
        if flow.cost > contribution[pr] {
            return Err(Error::internal("flow cost exceeds the partition's LP contribution"));
        }
        let mut loads: Vec<Vec<(usize, usize)>> = vec![Vec::new(); slots[pr].len()];
        for (job, &(m, lr)) in flow.slots.iter().enumerate() {
            loads[m].push((lr, job));
        }
        for load in loads.iter_mut() {
            load.sort_by_key(|x| std::cmp::Reverse(x.0));
        }
        let fastest = slots[pr]
            .iter()
            .position(|s| s.group == guess.group[pr])
            .expect("guessed group has a real machine");
        let virtual_slots: Vec<usize> = (0..slots[pr].len()).filter(|&i| slots[pr][i].real.is_none()).collect();
        let mut fast_jobs: Vec<usize> = loads[fastest].iter().map(|&(_, j)| j).collect();
        if !virtual_slots.is_empty() {
            let top = &groups[guess.group[pr]].speed;
            let lowest = virtual_slots.iter().map(|&i| &groups[slots[pr][i].group].speed).min().unwrap().clone();
            let mut chain_speeds = vec![lowest.clone(), lowest.clone()];
            while chain_speeds.last().unwrap() * uint(2) < *top {
                let next = chain_speeds.last().unwrap() * uint(2);
                chain_speeds.push(next);
            }
            let mut chain_loads: Vec<Vec<usize>> = vec![Vec::new(); chain_speeds.len()];
            for &i in &virtual_slots {
                let speed = &groups[slots[pr][i].group].speed;
                let pos = if *speed == lowest {
                    0
                } else {
                    chain_speeds.iter().rposition(|s| s == speed).expect("virtual speed lies on the chain")
                };
                chain_loads[pos] = loads[i].iter().map(|&(_, j)| j).collect();
            }
            let processing: Vec<Vec<u64>> =
                chain_loads.iter().map(|l| l.iter().map(|&j| jobs[j]).collect()).collect();
            let merged = merge_virtual_chain(&processing, &chain_speeds)?;
            if merged.speed != *top {
                return Err(Error::internal("merged virtual machine is not as fast as the fastest machine"));
            }
            fast_jobs.extend(merged.order.iter().map(|&(m, i)| chain_loads[m][i]));
            fast_jobs.sort_by_key(|&j| jobs[j]);
        }
        for (i, slot) in slots[pr].iter().enumerate() {
            let Some(machine) = slot.real else { continue };
            let ids: Vec<usize> = if i == fastest { fast_jobs.clone() } else { loads[i].iter().map(|&(_, j)| j).collect() };
            if !ids.is_empty() {
                schedule.machines[machine] =
                    MachineLoad::Used { partition: pr, jobs: ids.into_iter().map(|j| JobId::new(pr, j)).collect() };
            }
        }
    }

    for (machine, load) in schedule.machines.iter().enumerate() {
        if load.jobs().is_empty() {
            continue;
        }
        let single = Schedule {
            machines: (0..instance.m())
                .map(|i| if i == machine { load.clone() } else { MachineLoad::Unused })
                .collect(),
        };
        let at_rounded = sum_cj_at_speeds(instance, &single, rounded);
        let at_original = sum_cj_at_speeds(instance, &single, instance.speeds());
        if at_original < at_rounded || at_original >= uint(2) * &at_rounded {
            return Err(Error::internal("speed rounding changed a machine's cost by a factor outside [1,2)"));
        }
    }
    let value = sum_cj_at_speeds(instance, &schedule, instance.speeds());
    Ok(Some(GuessOutcome { guess: guess.clone(), lp_objective: solution.objective, schedule, value }))
}

fn symmetric_skip(instance: &Instance, guess: &Guess) -> bool {
    let sorted: Vec<Vec<u64>> = instance
        .partitions()
        .iter()
        .map(|p| {
            let mut s = p.clone();
            s.sort_unstable();
            s
        })
        .collect();
    (0..instance.k()).any(|a| {
        (a + 1..instance.k())
            .any(|b| sorted[a] == sorted[b] && (guess.group[a], guess.count[a]) > (guess.group[b], guess.count[b]))
    })
}

/// Every feasible guess with its LP optimum and rounded schedule.
pub fn evaluate_guesses(instance: &Instance, options: LpOptions) -> Result<Vec<GuessOutcome>> {
    instance.require_machines(instance.m())?;
    let (rounded, groups) = round_speeds_pow2(instance.speeds());
    let mut out = Vec::new();
    for guess in enumerate_guesses(&groups, instance.k()) {
        if options.skip_symmetric_guesses && symmetric_skip(instance, &guess) {
            continue;
        }
        if let Some(outcome) = run_guess(instance, &rounded, &groups, &guess)? {
            out.push(outcome);
        }
    }
    Ok(out)
}

/// ΣCj within a factor 4 of the optimum.
pub fn four_approx_sumcj_lp(instance: &Instance) -> Result<(Schedule, Rational)> {
    four_approx_sumcj_lp_with(instance, LpOptions::default())
}

pub fn four_approx_sumcj_lp_with(instance: &Instance, options: LpOptions) -> Result<(Schedule, Rational)> {
    let outcomes = evaluate_guesses(instance, options)?;
    outcomes
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .map(|o| (o.schedule, o.value))
        .ok_or(Error::Infeasible { machines: instance.m(), partitions: instance.k() })
}

/// Least LP optimum over all guesses: a lower bound on the optimum at rounded speeds.
pub fn lp_lower_bound(instance: &Instance) -> Result<Rational> {
    evaluate_guesses(instance, LpOptions::default())?
        .into_iter()
        .map(|o| o.lp_objective)
        .min()
        .ok_or(Error::Infeasible { machines: instance.m(), partitions: instance.k() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate_sum_cj;
    use crate::rational::int;

    #[test]
    fn degenerate_single_machine() {
        let inst = Instance::new(vec![vec![1, 2]], vec![int(1)]).unwrap();
        let (s, v) = four_approx_sumcj_lp(&inst).unwrap();
        assert_eq!(v, int(4));
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
    }

    #[test]
    fn identical_reference_within_factor_four() {
        let inst = Instance::new(vec![vec![3, 3, 3], vec![1]], vec![int(1); 3]).unwrap();
        let (s, v) = four_approx_sumcj_lp(&inst).unwrap();
        assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
        assert!(v <= int(4 * 13));
        assert!(lp_lower_bound(&inst).unwrap() <= int(13));
    }

    #[test]
    fn guesses_respect_group_sizes() {
        let (_, groups) = round_speeds_pow2(&[int(1), int(1), int(2)]);
        let guesses = enumerate_guesses(&groups, 2);
        // Options per partition: (0,1), (0,2), (1,1); five pairs fit the group sizes.
        assert_eq!(guesses.len(), 5);
        assert!(guesses.iter().all(|g| g.count.iter().all(|&c| c >= 1)));
    }

    #[test]
    fn infeasible_with_too_few_machines() {
        let inst = Instance::new(vec![vec![1], vec![1]], vec![int(1)]).unwrap();
        assert!(matches!(four_approx_sumcj_lp(&inst), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn random_instances_within_factor_four_of_exact() {
        use crate::exact_dp::dp_sumcj;
        use crate::model::{gen_random_instance, RandomSpec};
        for seed in 0..40 {
            let spec = RandomSpec { seed, k: 2, m: 3, n: 2..=5, p: 1..=6, speeds: 1..=5, unit: false };
            let inst = gen_random_instance(&spec);
            let (opt, _) = dp_sumcj(&inst).unwrap();
            let (s, v) = four_approx_sumcj_lp(&inst).unwrap();
            assert_eq!(evaluate_sum_cj(&inst, &s).unwrap(), v);
            assert!(v <= int(4) * &opt, "seed {seed}: {v} > 4·{opt}");
            let (rounded, _) = round_speeds_pow2(inst.speeds());
            let (opt_rounded, _) = dp_sumcj(&inst.with_speeds(rounded).unwrap()).unwrap();
            assert!(lp_lower_bound(&inst).unwrap() <= opt_rounded);
        }
    }
}
