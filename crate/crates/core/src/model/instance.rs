use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Identifies a job by its partition and its 0-based position inside that partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JobId {
    pub partition: usize,
    pub index: usize,
}

impl JobId {
    pub fn new(partition: usize, index: usize) -> Self {
        JobId { partition, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub id: JobId,
    pub processing: u64,
}

/// Jobs split into pairwise-incompatible partitions plus uniform machines with rational speeds.
///
/// A machine may only process jobs of a single partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    partitions: Vec<Vec<u64>>,
    speeds: Vec<Rational>,
    unit_jobs: bool,
}

impl Instance {
    /// Validates `k ≥ 1`, nonempty partitions, `p ≥ 1` and positive speeds.
    pub fn new(partitions: Vec<Vec<u64>>, speeds: Vec<Rational>) -> Result<Self> {
        if partitions.is_empty() {
            return Err(Error::InvalidInstance("instance needs at least one partition".into()));
        }
        for (j, part) in partitions.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidInstance(format!("partition {} is empty", j + 1)));
            }
            if part.contains(&0) {
                return Err(Error::InvalidInstance(format!("partition {} has a zero processing time", j + 1),));
            }
        }
        if let Some(i) = speeds.iter().position(|s| !s.is_positive()) {
            return Err(Error::InvalidInstance(format!("speed of machine {i} is not positive")));
        }
        let unit_jobs = partitions.iter().flatten().all(|&p| p == 1);
        Ok(Instance { partitions, speeds, unit_jobs })
    }

    /// Unit-job instance from partition sizes.
    pub fn unit(sizes: &[usize], speeds: Vec<Rational>) -> Result<Self> {
        Instance::new(sizes.iter().map(|&n| vec![1; n]).collect(), speeds)
    }

    pub fn partitions(&self) -> &[Vec<u64>] {
        &self.partitions
    }

    pub fn speeds(&self) -> &[Rational] {
        &self.speeds
    }

    pub fn unit_jobs(&self) -> bool {
        self.unit_jobs
    }

    /// Number of partitions `k`.
    pub fn k(&self) -> usize {
        self.partitions.len()
    }

    /// Number of machines `m`.
    pub fn m(&self) -> usize {
        self.speeds.len()
    }

    /// Total number of jobs `n`.
    pub fn n(&self) -> usize {
        self.partitions.iter().map(Vec::len).sum()
    }

    pub fn processing(&self, id: JobId) -> u64 {
        self.partitions[id.partition][id.index]
    }

    pub fn partition_sizes(&self) -> Vec<usize> {
        self.partitions.iter().map(Vec::len).collect()
    }

    pub fn jobs(&self) -> impl Iterator<Item = Job> + '_ {
        self.partitions.iter().enumerate().flat_map(|(j, part)| {
            part.iter()
                .enumerate()
                .map(move |(i, &p)| Job { id: JobId::new(j, i), processing: p })
        })
    }

    pub(crate) fn require_unit(&self) -> Result<()> {
        if self.unit_jobs {
            Ok(())
        } else {
            Err(Error::UnitJobsRequired)
        }
    }

    pub(crate) fn require_machines(&self, available: usize) -> Result<()> {
        if available < self.k() {
            Err(Error::Infeasible { machines: available, partitions: self.k() })
        } else {
            Ok(())
        }
    }

    /// Same jobs on a different machine set.
    pub fn with_speeds(&self, speeds: Vec<Rational>) -> Result<Self> {
        Instance::new(self.partitions.clone(), speeds)
    }
}
