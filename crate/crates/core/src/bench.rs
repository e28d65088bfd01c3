//! Benchmark suites: run solvers, compare against the oracle, emit CSV.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::covering::{four_approx_sumcj_unit, two_approx_cmax_unit};
use crate::error::{Error, Result};
use crate::exact_dp::{dp_cmax_unit, dp_sumcj};
use crate::identical::solve_identical_sumcj;
use crate::lp_flow::four_approx_sumcj_lp;
use crate::model::{gen_3partition_instance, gen_random_instance, Instance, RandomSpec, Schedule};
use crate::oracle::{brute_force_cmax_unit, brute_force_sumcj};
use crate::ptas::ptas_solve;
use crate::rational::{decimal6, exact, int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Objective {
    Cmax,
    SumCj,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Cmax => "Cmax",
            Objective::SumCj => "SumCj",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algo {
    IdenticalGreedy,
    DpCmax,
    DpSumcj,
    Cover2apxCmax,
    Cover4apxSumcj,
    Lp4apxSumcj,
    PtasCmax,
    OracleCmax,
    OracleSumcj,
}

impl Algo {
    pub const ALL: [Algo; 9] = [
        Algo::IdenticalGreedy,
        Algo::DpCmax,
        Algo::DpSumcj,
        Algo::Cover2apxCmax,
        Algo::Cover4apxSumcj,
        Algo::Lp4apxSumcj,
        Algo::PtasCmax,
        Algo::OracleCmax,
        Algo::OracleSumcj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::IdenticalGreedy => "identical-greedy",
            Algo::DpCmax => "dp-cmax",
            Algo::DpSumcj => "dp-sumcj",
            Algo::Cover2apxCmax => "cover-2apx-cmax",
            Algo::Cover4apxSumcj => "cover-4apx-sumcj",
            Algo::Lp4apxSumcj => "lp-4apx-sumcj",
            Algo::PtasCmax => "ptas-cmax",
            Algo::OracleCmax => "oracle-cmax",
            Algo::OracleSumcj => "oracle-sumcj",
        }
    }

    pub fn objective(self) -> Objective {
        match self {
            Algo::DpCmax | Algo::Cover2apxCmax | Algo::PtasCmax | Algo::OracleCmax => Objective::Cmax,
            _ => Objective::SumCj,
        }
    }

    /// Proven bound on value / optimum; `None` for exact solvers.
    pub fn guarantee(self, eps: Option<&Rational>) -> Option<Rational> {
        match self {
            Algo::Cover2apxCmax => Some(int(2)),
            Algo::Cover4apxSumcj | Algo::Lp4apxSumcj => Some(int(4)),
            Algo::PtasCmax => {
                let half = ratio(1, 2);
                let eps = eps.cloned().unwrap_or_else(|| half.clone()).min(half);
                Some(int(1) + int(7) * eps)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algo::ALL.iter().copied().find(|a| a.name() == s).ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Runs one solver; `eps` is required by the PTAS and ignored otherwise.
pub fn run_algo(algo: Algo, instance: &Instance, eps: Option<&Rational>) -> Result<(Schedule, Rational)> {
    let swap = |r: Result<(Rational, Schedule)>| r.map(|(v, s)| (s, v));
    match algo {
        Algo::IdenticalGreedy => solve_identical_sumcj(instance),
        Algo::DpCmax => swap(dp_cmax_unit(instance)),
        Algo::DpSumcj => swap(dp_sumcj(instance)),
        Algo::Cover2apxCmax => two_approx_cmax_unit(instance),
        Algo::Cover4apxSumcj => four_approx_sumcj_unit(instance),
        Algo::Lp4apxSumcj => four_approx_sumcj_lp(instance),
        Algo::PtasCmax => {
            let eps = eps.ok_or_else(|| Error::InvalidInstance("the PTAS needs an epsilon".into()))?;
            ptas_solve(instance, eps)
        }
        Algo::OracleCmax => swap(brute_force_cmax_unit(instance)),
        Algo::OracleSumcj => swap(brute_force_sumcj(instance)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    PaperExamples,
    RatioSweep,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "small" => Ok(Suite::Small),
            "paper-examples" => Ok(Suite::PaperExamples),
            "ratio-sweep" => Ok(Suite::RatioSweep),
            _ => Err(format!("unknown suite `{s}` (expected small, paper-examples or ratio-sweep)")),
        }
    }
}

/// One solver run on one instance.
#[derive(Debug, Clone)]
pub struct BenchTask {
    pub algo: Algo,
    pub eps: Option<Rational>,
}

impl BenchTask {
    fn plain(algo: Algo) -> Self {
        BenchTask { algo, eps: None }
    }

    fn ptas(eps: Rational) -> Self {
        BenchTask { algo: Algo::PtasCmax, eps: Some(eps) }
    }

    /// Algorithm column: the name, plus `@ε` for the PTAS.
    pub fn label(&self) -> String {
        match &self.eps {
            Some(e) => format!("{}@{}", self.algo.name(), exact(e)),
            None => self.algo.name().to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchCase {
    pub id: String,
    pub instance: Instance,
    pub tasks: Vec<BenchTask>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub algo: String,
    pub objective: Objective,
    pub value: Rational,
    pub oracle: Option<Rational>,
    pub ratio: Option<Rational>,
    /// The solver's proven factor, for checking `ratio`.
    pub guarantee: Option<Rational>,
    pub ms: u128,
}

pub const CSV_HEADER: &str = "instance,algo,objective,value,oracle,ratio,ms";

fn cell(x: &Rational) -> String {
    format!("{} ({})", exact(x), decimal6(x))
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.instance,
            self.algo,
            self.objective,
            cell(&self.value),
            self.oracle.as_ref().map(cell).unwrap_or_default(),
            self.ratio.as_ref().map(cell).unwrap_or_default(),
            self.ms
        )
    }
}

pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn unit_tasks(eps: &[Rational]) -> Vec<BenchTask> {
    let mut tasks: Vec<BenchTask> = [Algo::DpCmax, Algo::DpSumcj, Algo::Cover2apxCmax, Algo::Cover4apxSumcj, Algo::Lp4apxSumcj]
        .into_iter()
        .map(BenchTask::plain)
        .collect();
    tasks.extend(eps.iter().cloned().map(BenchTask::ptas));
    tasks
}

fn random_case(id: String, spec: RandomSpec, tasks: Vec<BenchTask>) -> BenchCase {
    let instance = gen_random_instance(&spec);
    let mut tasks = tasks;
    if instance.speeds().iter().all(|s| *s == instance.speeds()[0]) {
        tasks.push(BenchTask::plain(Algo::IdenticalGreedy));
    }
    BenchCase { id, instance, tasks }
}

/// The cases of a suite; deterministic for a fixed seed.
pub fn suite_cases(suite: Suite, seed: u64) -> Result<Vec<BenchCase>> {
    let mut cases = Vec::new();
    match suite {
        Suite::Small => {
            for i in 0..6u64 {
                let spec = RandomSpec { seed: seed.wrapping_add(i), k: 1 + (i as usize % 3), m: 3 + (i as usize % 2), n: 3..=7, p: 1..=1, speeds: 1..=3, unit: true };
                cases.push(random_case(format!("small-unit-{i:02}"), spec, unit_tasks(&[ratio(1, 2)])));
            }
            for i in 0..4u64 {
                let spec = RandomSpec { seed: seed.wrapping_add(100 + i), k: 2, m: 3, n: 2..=5, p: 1..=6, speeds: 1..=4, unit: false };
                let tasks = vec![BenchTask::plain(Algo::DpSumcj), BenchTask::plain(Algo::Lp4apxSumcj)];
                cases.push(random_case(format!("small-general-{i:02}"), spec, tasks));
            }
            let identical = Instance::new(vec![vec![3, 3, 3], vec![1]], vec![int(1); 3])?;
            let tasks = vec![BenchTask::plain(Algo::IdenticalGreedy), BenchTask::plain(Algo::DpSumcj), BenchTask::plain(Algo::Lp4apxSumcj)];
            cases.push(BenchCase { id: "small-identical".into(), instance: identical, tasks });
        }
        Suite::PaperExamples => {
            let caps = [7, 4, 4, 3, 3, 2].map(int).to_vec();
            for (name, sizes) in [("covering-a", [10, 8, 5]), ("covering-b", [7, 6, 4])] {
                let instance = Instance::unit(&sizes, caps.clone())?;
                let tasks = vec![
                    BenchTask::plain(Algo::Cover2apxCmax),
                    BenchTask::plain(Algo::DpCmax),
                    BenchTask::ptas(ratio(1, 2)),
                    BenchTask::plain(Algo::Cover4apxSumcj),
                ];
                cases.push(BenchCase { id: format!("worked-{name}"), instance, tasks });
            }
            let mut speeds = Vec::new();
            for (count, cap) in [(39, 3), (2, 7), (4, 11), (2, 17), (1, 25), (1, 57)] {
                speeds.extend(std::iter::repeat_n(int(cap), count));
            }
            let instance = Instance::unit(&[3, 20, 25, 26, 36, 37, 50, 51], speeds)?;
            cases.push(BenchCase {
                id: "worked-ptas-ranges".into(),
                instance,
                tasks: vec![BenchTask::ptas(ratio(1, 2)), BenchTask::plain(Algo::Cover2apxCmax)],
            });
            let (instance, _) = gen_3partition_instance(&[4, 4, 4], 12)?;
            let tasks = vec![
                BenchTask::plain(Algo::DpSumcj),
                BenchTask::plain(Algo::Cover4apxSumcj),
                BenchTask::plain(Algo::Lp4apxSumcj),
                BenchTask::plain(Algo::IdenticalGreedy),
            ];
            cases.push(BenchCase { id: "worked-reduction".into(), instance, tasks });
        }
        Suite::RatioSweep => {
            for i in 0..24u64 {
                let spec = RandomSpec { seed: seed.wrapping_add(i), k: 1 + (i as usize % 4), m: 4 + (i as usize % 2), n: 4..=10, p: 1..=1, speeds: 1..=5, unit: true };
                let mut tasks = vec![BenchTask::plain(Algo::Cover2apxCmax), BenchTask::plain(Algo::Cover4apxSumcj)];
                tasks.push(BenchTask::ptas(ratio(1, 2)));
                tasks.push(BenchTask::ptas(ratio(1, 4)));
                cases.push(random_case(format!("sweep-unit-{i:02}"), spec, tasks));
            }
            for i in 0..12u64 {
                let spec = RandomSpec { seed: seed.wrapping_add(1000 + i), k: 1 + (i as usize % 2), m: 2 + (i as usize % 3), n: 2..=6, p: 1..=8, speeds: 1..=6, unit: false };
                cases.push(random_case(format!("sweep-general-{i:02}"), spec, vec![BenchTask::plain(Algo::Lp4apxSumcj)]));
            }
        }
    }
    Ok(cases)
}

fn oracle_value(instance: &Instance, objective: Objective) -> Result<Option<Rational>> {
    let result = match objective {
        Objective::Cmax => brute_force_cmax_unit(instance),
        Objective::SumCj => brute_force_sumcj(instance),
    };
    match result {
        Ok((v, _)) => Ok(Some(v)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_case(case: &BenchCase) -> Result<Vec<BenchRecord>> {
    let mut oracles: Vec<(Objective, Option<Rational>)> = Vec::new();
    let mut out = Vec::new();
    for task in &case.tasks {
        let start = Instant::now();
        let (_, value) = run_algo(task.algo, &case.instance, task.eps.as_ref())?;
        let ms = start.elapsed().as_millis();
        let objective = task.algo.objective();
        let oracle = match oracles.iter().find(|(o, _)| *o == objective) {
            Some((_, v)) => v.clone(),
            None => {
                let v = oracle_value(&case.instance, objective)?;
                oracles.push((objective, v.clone()));
                v
            }
        };
        let ratio = oracle.as_ref().filter(|o| **o != int(0)).map(|o| &value / o);
        out.push(BenchRecord {
            instance: case.id.clone(),
            algo: task.label(),
            objective,
            value,
            oracle,
            ratio,
            guarantee: task.algo.guarantee(task.eps.as_ref()),
            ms,
        });
    }
    Ok(out)
}

/// Parallelism from `SCHED_THREADS`, default 1.
pub fn threads_from_env() -> usize {
    std::env::var("SCHED_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t >= 1).unwrap_or(1)
}

/// Runs every case on up to `threads` threads; rows sorted by instance id then algorithm.
pub fn run_cases(cases: &[BenchCase], threads: usize) -> Result<Vec<BenchRecord>> {
    let threads = threads.clamp(1, cases.len().max(1));
    let chunks: Vec<Result<Vec<BenchRecord>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut rows = Vec::new();
                    for case in cases.iter().skip(t).step_by(threads) {
                        rows.extend(run_case(case)?);
                    }
                    Ok(rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    let mut records = Vec::new();
    for chunk in chunks {
        records.extend(chunk?);
    }
    records.sort_by(|a, b| (&a.instance, &a.algo).cmp(&(&b.instance, &b.algo)));
    Ok(records)
}

pub fn run_suite(suite: Suite, seed: u64, threads: usize) -> Result<Vec<BenchRecord>> {
    run_cases(&suite_cases(suite, seed)?, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
        assert!("nope".parse::<Algo>().is_err());
        assert!("".parse::<Suite>().is_err());
    }

    #[test]
    fn cells_render_exact_and_decimal() {
        assert_eq!(cell(&ratio(13, 2)), "13/2 (6.500000)");
        assert_eq!(cell(&int(3)), "3 (3.000000)");
    }

    #[test]
    fn blank_ratio_without_oracle() {
        let r = BenchRecord {
            instance: "x".into(),
            algo: "ptas-cmax@1/2".into(),
            objective: Objective::Cmax,
            value: int(2),
            oracle: None,
            ratio: None,
            guarantee: None,
            ms: 0,
        };
        assert_eq!(r.csv_row(), "x,ptas-cmax@1/2,Cmax,2 (2.000000),,,0");
    }
}
