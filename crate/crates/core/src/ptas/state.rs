//! State vectors over capacity classes and the range-by-range dynamic program.

use std::collections::HashMap;

use super::params::{MachineClass, Params};
use crate::error::{Error, Result};

/// Machine counts per capacity class, indexed like [`Layout::caps`].
pub type Counts = Vec<u32>;

/// One cover of the covering built so far: a part and the classes of its machines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub part: usize,
    pub machines: Vec<usize>,
}

/// Search state for one range: unassigned machines split into pools, plus the covering so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    pub exact: Counts,
    pub slack: Counts,
    pub n_small: usize,
    pub average: Counts,
    pub large: Counts,
    pub covering: Vec<Cover>,
}

/// Capacity classes and parts for one deadline.
#[derive(Debug, Clone)]
pub struct Layout {
    pub params: Params,
    /// Distinct rounded capacities, ascending, all positive.
    pub caps: Vec<u64>,
    /// Machines per class.
    pub counts: Counts,
    /// Part sizes, ascending.
    pub parts: Vec<u64>,
}

impl Layout {
    pub fn capacity(&self, counts: &Counts) -> u64 {
        counts.iter().zip(&self.caps).map(|(&n, &c)| n as u64 * c).sum()
    }

    pub fn machines(&self) -> usize {
        self.counts.iter().map(|&n| n as usize).sum()
    }

    /// Part indices of range `l`.
    pub fn range(&self, l: usize) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| self.params.range_of(self.parts[i]) == l).collect()
    }

    pub fn l_max(&self) -> usize {
        self.parts.iter().map(|&s| self.params.range_of(s)).max().unwrap_or(0)
    }

    fn empty(&self) -> Counts {
        vec![0; self.caps.len()]
    }

    /// Splits the non-exact machines `rest` into slack, average and large pools for range `l`.
    pub fn reclassify(&self, exact: Counts, rest: &Counts, l: usize, covering: Vec<Cover>) -> StateVector {
        let (mut slack, mut average, mut large) = (self.empty(), self.empty(), self.empty());
        let mut n_small = 0;
        for (i, &n) in rest.iter().enumerate() {
            match self.params.classify(self.caps[i], l) {
                MachineClass::Tiny => slack[i] += n,
                MachineClass::Small => {
                    slack[i] += n;
                    n_small += n as usize;
                }
                MachineClass::Average => average[i] += n,
                MachineClass::Large => large[i] += n,
            }
        }
        StateVector { exact, slack, n_small, average, large, covering }
    }

    fn all_but_exact(&self, sv: &StateVector) -> Counts {
        (0..self.caps.len()).map(|i| sv.slack[i] + sv.average[i] + sv.large[i]).collect()
    }
}

impl StateVector {
    pub fn slack_capacity(&self, layout: &Layout) -> u64 {
        layout.capacity(&self.slack)
    }
}

/// Inclusion-minimal sub-multisets of `avail` (restricted to `allowed` classes) with total
/// capacity at least `size`.
pub fn minimal_covers(caps: &[u64], avail: &Counts, allowed: &[usize], size: u64) -> Vec<Counts> {
    let mut order: Vec<usize> = allowed.iter().copied().filter(|&i| avail[i] > 0).collect();
    order.sort_by(|&a, &b| caps[b].cmp(&caps[a]));
    let mut out = Vec::new();
    let mut pick = vec![0u32; caps.len()];
    fn rec(caps: &[u64], avail: &Counts, order: &[usize], pos: usize, sum: u64, size: u64, pick: &mut Counts, out: &mut Vec<Counts>) {
        if sum >= size {
            // Dropping the smallest used machine must break the cover.
            let smallest = order[..pos].iter().rev().find(|&&i| pick[i] > 0).map(|&i| caps[i]).unwrap_or(0);
            if sum - smallest < size {
                out.push(pick.clone());
            }
            return;
        }
        let Some(&class) = order.get(pos) else { return };
        for n in 0..=avail[class] {
            pick[class] = n;
            let s = sum + n as u64 * caps[class];
            rec(caps, avail, order, pos + 1, s, size, pick, out);
            if s >= size {
                break;
            }
        }
        pick[class] = 0;
    }
    if size == 0 {
        return vec![pick];
    }
    rec(caps, avail, &order, 0, 0, size, &mut pick, &mut out);
    out
}

fn cover_of(part: usize, used: &Counts) -> Cover {
    let mut machines = Vec::new();
    for (i, &n) in used.iter().enumerate().rev() {
        machines.extend(std::iter::repeat_n(i, n as usize));
    }
    Cover { part, machines }
}

fn minus(a: &Counts, b: &Counts) -> Counts {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn plus(a: &Counts, b: &Counts) -> Counts {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// State vectors for the first range after the small parts.
///
/// Every small part is covered exactly, either by a minimal set of slow machines or by the
/// slowest remaining fast machine. Each resulting machine pool is expanded into every split of
/// its tiny machines into exact-cover and slack pools.
pub fn find_sv_lmin(layout: &Layout, trim: bool) -> Result<Vec<StateVector>> {
    let params = &layout.params;
    let slow_top = params.ladder_value(params.l_min);
    let slow: Vec<usize> = (0..layout.caps.len()).filter(|&i| layout.caps[i] <= slow_top).collect();
    let fast: Vec<usize> = (0..layout.caps.len()).filter(|&i| layout.caps[i] > slow_top).collect();
    let limit = params.small_part_limit();

    let mut states: Vec<(Counts, Vec<Cover>)> = vec![(layout.counts.clone(), Vec::new())];
    for (part, &size) in layout.parts.iter().enumerate().take_while(|(_, &s)| s < limit) {
        let mut next: Vec<(Counts, Vec<Cover>)> = Vec::new();
        let mut seen: HashMap<Counts, ()> = HashMap::new();
        let mut push = |pool: Counts, covering: &Vec<Cover>, used: &Counts| {
            if seen.insert(pool.clone(), ()).is_none() {
                let mut covering = covering.clone();
                covering.push(cover_of(part, used));
                next.push((pool, covering));
            }
        };
        for (pool, covering) in &states {
            for used in minimal_covers(&layout.caps, pool, &slow, size) {
                push(minus(pool, &used), covering, &used);
            }
            if let Some(&f) = fast.iter().find(|&&i| pool[i] > 0) {
                let mut used = layout.empty();
                used[f] = 1;
                push(minus(pool, &used), covering, &used);
            }
        }
        if next.is_empty() {
            return Err(Error::NoCovering);
        }
        states = next;
    }

    let l = params.l_min + 1;
    let tiny: Vec<usize> =
        (0..layout.caps.len()).filter(|&i| params.classify(layout.caps[i], l) == MachineClass::Tiny).collect();
    let mut out = Vec::new();
    for (pool, covering) in states {
        let mut exact = layout.empty();
        loop {
            let rest = minus(&pool, &exact);
            out.push(layout.reclassify(exact.clone(), &rest, l, covering.clone()));
            let mut pos = 0;
            while let Some(&class) = tiny.get(pos) {
                if exact[class] < pool[class] {
                    exact[class] += 1;
                    break;
                }
                exact[class] = 0;
                pos += 1;
            }
            if pos == tiny.len() {
                break;
            }
        }
    }
    Ok(if trim { trim_state_vectors(layout, out) } else { dedupe(out) })
}

/// One vector per `(exact, n_small, average, large)`, keeping the largest slack capacity; ties
/// keep the first seen.
pub fn trim_state_vectors(layout: &Layout, candidates: Vec<StateVector>) -> Vec<StateVector> {
    let mut index: HashMap<(Counts, usize, Counts, Counts), usize> = HashMap::new();
    let mut out: Vec<StateVector> = Vec::new();
    for sv in candidates {
        let key = (sv.exact.clone(), sv.n_small, sv.average.clone(), sv.large.clone());
        match index.get(&key) {
            Some(&i) => {
                if sv.slack_capacity(layout) > out[i].slack_capacity(layout) {
                    out[i] = sv;
                }
            }
            None => {
                index.insert(key, out.len());
                out.push(sv);
            }
        }
    }
    out
}

/// Drops vectors whose machine pools repeat an earlier vector's exactly.
fn dedupe(candidates: Vec<StateVector>) -> Vec<StateVector> {
    let mut seen = HashMap::new();
    candidates
        .into_iter()
        .filter(|sv| seen.insert((sv.exact.clone(), sv.slack.clone(), sv.average.clone(), sv.large.clone()), ()).is_none())
        .collect()
}

/// Intermediate state while covering one range.
#[derive(Debug, Clone)]
pub struct CoverState {
    pub exact: Counts,
    pub slack: Counts,
    /// Reserved slack-cover heads used so far; heads are consumed fastest first.
    pub msu_used: usize,
    pub average: Counts,
    pub large: Counts,
    pub covers: Vec<Cover>,
}

/// Fills `budget` from `slack` with the fastest machines that still fit, never overfilling.
fn slack_fill(caps: &[u64], slack: &Counts, budget: u64) -> Counts {
    let mut used = vec![0u32; caps.len()];
    let mut left = budget;
    for i in (0..caps.len()).rev() {
        if slack[i] == 0 || caps[i] > left {
            continue;
        }
        let take = (left / caps[i]).min(slack[i] as u64) as u32;
        used[i] = take;
        left -= take as u64 * caps[i];
    }
    used
}

fn sub_multisets(avail: &Counts) -> Vec<Counts> {
    let mut out = vec![vec![0u32; avail.len()]];
    for (i, &n) in avail.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let mut grown = Vec::with_capacity(out.len() * (n as usize + 1));
        for base in &out {
            for k in 0..=n {
                let mut c = base.clone();
                c[i] = k;
                grown.push(c);
            }
        }
        out = grown;
    }
    out
}

/// Covers the parts of one range from the given pools.
///
/// A part is covered by a minimal tiny exact cover, a single large machine (the smallest), a
/// nonempty set of average machines topped up with slack, or the fastest unused reserved head
/// `msu[i]` topped up with slack. Top-ups never exceed the part size; the last two kinds are
/// kept only when the cover is nice. Returns every surviving end state that used all heads,
/// one per remaining `(exact, average, large)` with maximum remaining slack.
pub fn check_covering(
    layout: &Layout,
    parts: &[usize],
    start: CoverState,
    msu: &[usize],
) -> Vec<CoverState> {
    let caps = &layout.caps;
    let params = &layout.params;
    let all: Vec<usize> = (0..caps.len()).collect();
    let mut states = vec![start];
    for &part in parts {
        let size = layout.parts[part];
        let mut index: HashMap<(Counts, Counts, Counts, usize), usize> = HashMap::new();
        let mut next: Vec<CoverState> = Vec::new();
        let mut push = |state: CoverState| {
            let key = (state.exact.clone(), state.average.clone(), state.large.clone(), state.msu_used);
            match index.get(&key) {
                Some(&i) => {
                    if layout.capacity(&state.slack) > layout.capacity(&next[i].slack) {
                        next[i] = state;
                    }
                }
                None => {
                    index.insert(key, next.len());
                    next.push(state);
                }
            }
        };
        for s in &states {
            for used in minimal_covers(caps, &s.exact, &all, size) {
                let mut t = s.clone();
                t.exact = minus(&s.exact, &used);
                t.covers.push(cover_of(part, &used));
                push(t);
            }
            if let Some(i) = s.large.iter().position(|&n| n > 0) {
                let mut t = s.clone();
                t.large[i] -= 1;
                t.covers.push(Cover { part, machines: vec![i] });
                push(t);
            }
            for avg in sub_multisets(&s.average) {
                let avg_cap = layout.capacity(&avg);
                if avg_cap == 0 {
                    continue;
                }
                let fill = slack_fill(caps, &s.slack, size.saturating_sub(avg_cap));
                let cover = cover_of(part, &plus(&avg, &fill));
                let cover_caps: Vec<u64> = cover.machines.iter().map(|&i| caps[i]).collect();
                if params.nice_kind(&cover_caps, size).is_some() {
                    let mut t = s.clone();
                    t.average = minus(&s.average, &avg);
                    t.slack = minus(&s.slack, &fill);
                    t.covers.push(cover);
                    push(t);
                }
            }
            if let Some(&head) = msu.get(s.msu_used) {
                let fill = slack_fill(caps, &s.slack, size.saturating_sub(caps[head]));
                let mut cover = cover_of(part, &fill);
                cover.machines.insert(0, head);
                let cover_caps: Vec<u64> = cover.machines.iter().map(|&i| caps[i]).collect();
                if params.nice_kind(&cover_caps, size).is_some() {
                    let mut t = s.clone();
                    t.msu_used += 1;
                    t.slack = minus(&s.slack, &fill);
                    t.covers.push(cover);
                    push(t);
                }
            }
        }
        states = next;
        if states.is_empty() {
            break;
        }
    }
    states.retain(|s| s.msu_used == msu.len());
    states
}

/// Candidate vectors for range `l + 1` from one vector for range `l`.
///
/// For every number `n_msu` of parts of this range to be headed by small machines and every
/// number `n_mst` of the biggest slack machines held back for later ranges, the range is
/// covered from the full pools; the unused exact, average and large machines of each result
/// stay unassigned, so this enumerates every choice of the machines spent on the range.
pub fn generate_candidate_state_vectors(layout: &Layout, sv: &StateVector, l: usize) -> Vec<StateVector> {
    let parts = layout.range(l);
    if parts.is_empty() {
        let rest = layout.all_but_exact(sv);
        return vec![layout.reclassify(sv.exact.clone(), &rest, l + 1, sv.covering.clone())];
    }
    let later = layout.parts.iter().filter(|&&s| layout.params.range_of(s) > l).count();
    let caps = &layout.caps;
    let mut out = Vec::new();
    for n_msu in 0..=parts.len().min(sv.n_small) {
        for n_mst in 0..=(sv.n_small - n_msu).min(later) {
            let mut slack = sv.slack.clone();
            let mut mst = layout.empty();
            let mut need = n_mst;
            for i in (0..caps.len()).rev() {
                let take = (slack[i] as usize).min(need) as u32;
                slack[i] -= take;
                mst[i] += take;
                need -= take as usize;
            }
            let mut msu = Vec::with_capacity(n_msu);
            for i in (0..caps.len()).rev() {
                if layout.params.classify(caps[i], l) != MachineClass::Small {
                    continue;
                }
                while slack[i] > 0 && msu.len() < n_msu {
                    slack[i] -= 1;
                    msu.push(i);
                }
            }
            debug_assert_eq!(msu.len(), n_msu);
            let start = CoverState {
                exact: sv.exact.clone(),
                slack,
                msu_used: 0,
                average: sv.average.clone(),
                large: sv.large.clone(),
                covers: Vec::new(),
            };
            for end in check_covering(layout, &parts, start, &msu) {
                let rest: Counts = (0..caps.len()).map(|i| end.slack[i] + mst[i] + end.average[i] + end.large[i]).collect();
                let mut covering = sv.covering.clone();
                covering.extend(end.covers);
                out.push(layout.reclassify(end.exact, &rest, l + 1, covering));
            }
        }
    }
    out
}

/// All vectors after the last range, or an empty set when the deadline is rejected.
pub fn run_ranges(
    layout: &Layout,
    trim: bool,
    mut trace: Option<&mut Vec<(usize, Vec<StateVector>)>>,
) -> Result<Vec<StateVector>> {
    let params = &layout.params;
    let mut svs = match find_sv_lmin(layout, trim) {
        Ok(s) => s,
        Err(Error::NoCovering) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let bound = (layout.machines() as u128 + 1).saturating_pow((params.d_tiny + params.d_average + 2) as u32);
    let mut l = params.l_min + 1;
    loop {
        if trim && svs.len() as u128 > bound {
            return Err(Error::internal("state vector set exceeds its size bound"));
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push((l, svs.clone()));
        }
        if l > layout.l_max() || svs.is_empty() {
            return Ok(svs);
        }
        let candidates: Vec<StateVector> =
            svs.iter().flat_map(|sv| generate_candidate_state_vectors(layout, sv, l)).collect();
        svs = if trim { trim_state_vectors(layout, candidates) } else { dedupe(candidates) };
        l += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn layout(caps: &[u64], counts: &[u32], parts: &[u64]) -> Layout {
        Layout {
            params: Params::new(&ratio(1, 2), 100).unwrap(),
            caps: caps.to_vec(),
            counts: counts.to_vec(),
            parts: parts.to_vec(),
        }
    }

    #[test]
    fn minimal_covers_are_inclusion_minimal() {
        let caps = [1, 2, 3];
        let covers = minimal_covers(&caps, &vec![2, 1, 1], &[0, 1, 2], 3);
        assert!(covers.contains(&vec![0, 0, 1]));
        assert!(covers.contains(&vec![1, 1, 0]));
        assert!(!covers.iter().any(|c| c == &vec![1, 0, 1]));
        assert!(minimal_covers(&caps, &vec![0, 1, 0], &[0, 1, 2], 3).is_empty());
    }

    #[test]
    fn no_small_parts_gives_one_untouched_pool() {
        let lay = layout(&[57], &[2], &[30]);
        let svs = find_sv_lmin(&lay, true).unwrap();
        assert_eq!(svs.len(), 1);
        assert!(svs[0].covering.is_empty());
        assert_eq!(svs[0].large, vec![2]);
    }

    #[test]
    fn forced_exact_cover() {
        let lay = layout(&[2], &[1], &[2]);
        let svs = find_sv_lmin(&lay, true).unwrap();
        assert_eq!(svs.len(), 1);
        assert_eq!(svs[0].covering, vec![Cover { part: 0, machines: vec![0] }]);
        assert_eq!(svs[0].slack, vec![0]);
    }

    #[test]
    fn slow_and_fast_routes() {
        let lay = layout(&[3, 57], &[1, 1], &[3, 3]);
        let svs = find_sv_lmin(&lay, false).unwrap();
        // Only the slow-then-fast and fast-then-slow routes survive; both leave nothing.
        assert_eq!(svs.len(), 1);
        assert_eq!(svs[0].covering.len(), 2);
        assert!(find_sv_lmin(&layout(&[3], &[1], &[3, 3]), true).is_err());
    }

    #[test]
    fn trimming_keeps_the_largest_slack() {
        let lay = layout(&[3, 5], &[4, 4], &[]);
        let a = StateVector { exact: vec![0, 0], slack: vec![2, 0], n_small: 0, average: vec![0, 0], large: vec![0, 0], covering: vec![] };
        let mut b = a.clone();
        b.slack = vec![4, 0];
        let mut c = a.clone();
        c.n_small = 1;
        let out = trim_state_vectors(&lay, vec![a, b.clone(), c.clone()]);
        assert_eq!(out, vec![b, c]);
        assert!(trim_state_vectors(&lay, vec![]).is_empty());
    }

    #[test]
    fn check_covering_rejects_undersized_resources() {
        let lay = layout(&[2], &[1], &[10]);
        let start = CoverState { exact: vec![1], slack: vec![0], msu_used: 0, average: vec![0], large: vec![0], covers: vec![] };
        assert!(check_covering(&lay, &[0], start, &[]).is_empty());
    }

    #[test]
    fn empty_range_is_pure_reclassification() {
        let lay = layout(&[17, 57], &[1, 1], &[50]);
        let sv = lay.reclassify(vec![0, 0], &vec![1, 1], 8, vec![]);
        assert_eq!(sv.average, vec![1, 0]);
        let next = generate_candidate_state_vectors(&lay, &sv, 8);
        assert_eq!(next.len(), 1);
        assert_eq!(next[0].slack, vec![1, 0]);
        assert_eq!(next[0].n_small, 1);
    }
}
