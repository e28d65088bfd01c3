//! Collapsing a doubling chain of machines `(b, b, 2b, …, 2^t·b)` into one machine of speed `2^{t+1}·b`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{uint, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedLoad {
    pub speed: Rational,
    /// Execution order on the merged machine as `(source machine, index in its load)`.
    pub order: Vec<(usize, usize)>,
    pub cost_before: Rational,
    pub cost_after: Rational,
}

fn sum_cj(jobs: impl Iterator<Item = u64>, speed: &Rational) -> Rational {
    let mut prefix = 0u64;
    let mut total = 0u64;
    for p in jobs {
        prefix += p;
        total += prefix;
    }
    uint(total) / speed
}

/// Merges equal-speed pairs up the chain by interleaving: of two machines holding `K` jobs
/// each (front-padded with empty jobs), the `j`-th last job of the first lands at position
/// `2j−1` from the end, the `j`-th last of the second at `2j`. Never increases ΣCj.
///
/// `loads` are in execution order; `speeds` must be `(b, b, 2b, 4b, …)`.
pub fn merge_virtual_chain(loads: &[Vec<u64>], speeds: &[Rational]) -> Result<MergedLoad> {
    if loads.len() != speeds.len() {
        return Err(Error::BadChain("one speed per load required".into()));
    }
    if speeds.len() < 2 {
        return Err(Error::BadChain("a chain needs at least two machines".into()));
    }
    if !speeds[0].is_positive() || speeds[0] != speeds[1] {
        return Err(Error::BadChain("chain must start with two equal positive speeds".into()));
    }
    if let Some(w) = speeds[1..].windows(2).find(|w| w[1] != &w[0] * uint(2)) {
        return Err(Error::BadChain(format!("{} does not double {}", w[1], w[0])));
    }

    let cost_before = loads
        .iter()
        .zip(speeds)
        .fold(Rational::zero(), |acc, (l, s)| acc + sum_cj(l.iter().copied(), s));
    let refs = |m: usize| -> Vec<Option<(usize, usize)>> { (0..loads[m].len()).map(|i| Some((m, i))).collect() };

    let mut current = refs(0);
    let mut speed = speeds[0].clone();
    for m in 1..loads.len() {
        let mut other = refs(m);
        let len = current.len().max(other.len());
        let pad = |v: &mut Vec<Option<(usize, usize)>>| {
            let mut padded = vec![None; len - v.len()];
            padded.append(v);
            *v = padded;
        };
        pad(&mut current);
        pad(&mut other);
        let mut merged = Vec::with_capacity(2 * len);
        for i in 0..len {
            merged.push(other[i]);
            merged.push(current[i]);
        }
        current = merged;
        speed = &speed * uint(2);
    }
    let order: Vec<(usize, usize)> = current.into_iter().flatten().collect();
    let cost_after = sum_cj(order.iter().map(|&(m, i)| loads[m][i]), &speed);
    if cost_after > cost_before {
        return Err(Error::internal("chain merge increased total completion time"));
    }
    Ok(MergedLoad { speed, order, cost_before, cost_after })
}
