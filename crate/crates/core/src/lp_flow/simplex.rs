//! Exact two-phase simplex over rationals. Minimization, all variables nonnegative.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Minimize `objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub values: Vec<Rational>,
    pub objective: Rational,
}

/// Consecutive degenerate pivots tolerated under Dantzig's rule before switching to Bland's.
const DEGENERATE_LIMIT: usize = 64;

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs; `z_value` holds minus the current objective.
    z: Vec<Rational>,
    z_value: Rational,
    basis: Vec<usize>,
    /// Columns allowed to enter.
    enterable: Vec<bool>,
    bland: bool,
    degenerate_run: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &support {
                let d = &f * &pivot_row[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for &j in &support {
                let d = &f * &pivot_row[j];
                self.z[j] -= d;
            }
            self.z_value -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn step(&mut self) -> Step {
        let entering = if self.bland {
            (0..self.z.len()).find(|&j| self.enterable[j] && self.z[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..self.z.len() {
                if self.enterable[j] && self.z[j].is_negative() && best.is_none_or(|b| self.z[j] < self.z[b]) {
                    best = Some(j);
                }
            }
            best
        };
        let Some(c) = entering else { return Step::Optimal };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            let a = &self.rows[r][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[r] / a;
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, ratio)) = leave else { return Step::Unbounded };
        if ratio.is_zero() {
            self.degenerate_run += 1;
            if self.degenerate_run > DEGENERATE_LIMIT {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
        }
        self.pivot(r, c);
        Step::Pivoted
    }

    fn run(&mut self) -> Result<()> {
        loop {
            match self.step() {
                Step::Optimal => return Ok(()),
                Step::Unbounded => return Err(Error::LpUnbounded),
                Step::Pivoted => {}
            }
        }
    }
}

/// Exact optimum (some optimal vertex) of `program`.
///
/// Pivots by Dantzig's rule and falls back to Bland's rule for good after a run of degenerate
/// pivots, so it always terminates.
pub fn solve_lp(program: &LinearProgram) -> Result<LpSolution> {
    let n = program.num_vars;
    let m = program.constraints.len();
    let slack_count = program.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    // Normalise to rhs ≥ 0.
    let mut normalized: Vec<(Vec<(usize, Rational)>, Relation, Rational)> = Vec::with_capacity(m);
    for c in &program.constraints {
        if c.rhs.is_negative() {
            let rel = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            normalized.push((c.coeffs.iter().map(|(j, a)| (*j, -a)).collect(), rel, -&c.rhs));
        } else {
            normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
        }
    }
    let artificial_count = normalized.iter().filter(|c| c.1 != Relation::Le).count();
    let cols = n + slack_count + artificial_count;
    let mut rows = vec![vec![Rational::zero(); cols]; m];
    let mut rhs = Vec::with_capacity(m);
    let mut basis = vec![0; m];
    let mut is_artificial = vec![false; cols];
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (r, (coeffs, rel, b)) in normalized.into_iter().enumerate() {
        for (j, a) in coeffs {
            rows[r][j] += a;
        }
        rhs.push(b);
        match rel {
            Relation::Le => {
                rows[r][next_slack] = Rational::from_integer(1.into());
                basis[r] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                rows[r][next_slack] = Rational::from_integer((-1).into());
                next_slack += 1;
                rows[r][next_art] = Rational::from_integer(1.into());
                is_artificial[next_art] = true;
                basis[r] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                rows[r][next_art] = Rational::from_integer(1.into());
                is_artificial[next_art] = true;
                basis[r] = next_art;
                next_art += 1;
            }
        }
    }

    // Phase 1: minimise the sum of artificials.
    let mut z = vec![Rational::zero(); cols];
    let mut z_value = Rational::zero();
    for r in 0..m {
        if is_artificial[basis[r]] {
            for j in 0..cols {
                if !is_artificial[j] && !rows[r][j].is_zero() {
                    z[j] -= &rows[r][j];
                }
            }
            z_value -= &rhs[r];
        }
    }
    let mut t = Tableau {
        rows,
        rhs,
        z,
        z_value,
        basis,
        enterable: is_artificial.iter().map(|a| !a).collect(),
        bland: false,
        degenerate_run: 0,
    };
    t.run().map_err(|_| Error::internal("phase 1 reported unbounded"))?;
    if !t.z_value.is_zero() {
        return Err(Error::LpInfeasible);
    }
    // Drive artificials out of the basis; drop rows that turn out redundant.
    let mut r = 0;
    while r < t.rows.len() {
        if is_artificial[t.basis[r]] {
            if let Some(c) = (0..cols).find(|&j| !is_artificial[j] && !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            } else {
                t.rows.remove(r);
                t.rhs.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); cols];
    cost[..n].clone_from_slice(&program.objective);
    t.z = cost.clone();
    t.z_value = Rational::zero();
    for r in 0..t.rows.len() {
        let cb = &cost[t.basis[r]];
        if cb.is_zero() {
            continue;
        }
        for j in 0..cols {
            if !t.rows[r][j].is_zero() {
                let d = cb * &t.rows[r][j];
                t.z[j] -= d;
            }
        }
        t.z_value -= cb * &t.rhs[r];
    }
    for j in 0..cols {
        if is_artificial[j] {
            t.z[j] = Rational::zero();
        }
    }
    t.bland = false;
    t.degenerate_run = 0;
    t.run()?;

    let mut values = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            values[b] = t.rhs[r].clone();
        }
    }
    let objective = -t.z_value.clone();
    Ok(LpSolution { values, objective })
}
