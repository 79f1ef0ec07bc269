//! Clustering accuracy against ground-truth classes.
//!
//! Each cluster is credited with the size of its dominant class; accuracy is
//! the credited total over n. Clusters map to classes independently, so two
//! clusters may share a dominant class.

use serde::{Deserialize, Serialize};

use crate::dataset::Code;
use crate::error::{Error, Result};
use crate::kmodes::Assignment;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterPurity {
    pub size: usize,
    /// `None` for an empty cluster.
    pub dominant_class: Option<Code>,
    pub dominant_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    /// Fraction in `[0, 1]`.
    pub accuracy: f64,
    pub per_cluster: Vec<ClusterPurity>,
}

impl AccuracyReport {
    /// Sum of dominant counts.
    pub fn correct(&self) -> usize {
        self.per_cluster.iter().map(|c| c.dominant_count).sum()
    }

    /// True iff every non-empty cluster holds a single class.
    pub fn all_pure(&self) -> bool {
        self.per_cluster.iter().all(|c| c.dominant_count == c.size)
    }
}

/// Scores `assignment` against `labels` (one class code per object).
pub fn clustering_accuracy(assignment: &Assignment, labels: &[Code]) -> Result<AccuracyReport> {
    if labels.is_empty() {
        return Err(Error::Evaluation("no class labels".into()));
    }
    if labels.len() != assignment.len() {
        return Err(Error::Evaluation(format!(
            "{} labels for {} objects",
            labels.len(),
            assignment.len()
        )));
    }
    let classes = labels.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let k = assignment.k();
    let mut confusion = vec![0usize; k * classes];
    for (&l, &c) in assignment.clusters().iter().zip(labels) {
        confusion[l * classes + c as usize] += 1;
    }

    let per_cluster: Vec<ClusterPurity> = confusion
        .chunks_exact(classes)
        .map(|row| {
            let size = row.iter().sum();
            let mut dominant: Option<(Code, usize)> = None;
            for (class, &count) in row.iter().enumerate() {
                if count > 0 && dominant.is_none_or(|(_, best)| count > best) {
                    dominant = Some((class as Code, count));
                }
            }
            ClusterPurity {
                size,
                dominant_class: dominant.map(|d| d.0),
                dominant_count: dominant.map_or(0, |d| d.1),
            }
        })
        .collect();

    let correct: usize = per_cluster.iter().map(|c| c.dominant_count).sum();
    Ok(AccuracyReport {
        accuracy: correct as f64 / labels.len() as f64,
        per_cluster,
    })
}
