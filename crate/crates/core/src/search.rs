//! Least accepted deadline over a sorted candidate set.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// How the candidate set is scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Binary search; the result is accepted and its predecessor was seen rejected.
    #[default]
    Binary,
    /// Scan upward from the smallest candidate.
    Linear,
}

/// Returns the index and payload of the least accepted candidate.
///
/// `Binary` never assumes monotonicity for correctness: the returned index is accepted and
/// the index right below it was evaluated and rejected.
pub fn least_accepted<R>(
    candidates: &[Rational],
    mode: SearchMode,
    mut accept: impl FnMut(&Rational) -> Result<Option<R>>,
) -> Result<(usize, R)> {
    if candidates.is_empty() {
        return Err(Error::internal("empty candidate set"));
    }
    match mode {
        SearchMode::Linear => {
            for (i, t) in candidates.iter().enumerate() {
                if let Some(r) = accept(t)? {
                    return Ok((i, r));
                }
            }
            Err(Error::internal("largest candidate deadline rejected"))
        }
        SearchMode::Binary => {
            let last = candidates.len() - 1;
            let mut best = accept(&candidates[last])?
                .ok_or_else(|| Error::internal("largest candidate deadline rejected"))?;
            // lo: rejected (or -1), hi: accepted.
            let (mut lo, mut hi) = (-1isize, last as isize);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match accept(&candidates[mid as usize])? {
                    Some(r) => {
                        hi = mid;
                        best = r;
                    }
                    None => lo = mid,
                }
            }
            Ok((hi as usize, best))
        }
    }
}
