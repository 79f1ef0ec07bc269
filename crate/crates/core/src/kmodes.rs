//! The k-modes alternating minimization.
//!
//! With the centers fixed, the cost is minimized by sending every object to
//! a nearest center; with the partition fixed, it is minimized by taking the
//! per-attribute mode of each cluster. Alternating the two never increases
//! the integer cost, so the loop terminates.

use serde::{Deserialize, Serialize};

use crate::dataset::{Code, Dataset};
use crate::error::{Error, Result};
use crate::eval::{self, AccuracyReport};
use crate::metric::mismatches;

/// Default iteration budget for [`kmodes`].
pub const DEFAULT_MAX_ITERS: usize = 100;

/// A cluster representative: one code per attribute.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Center(Vec<Code>);

impl Center {
    pub fn new(codes: Vec<Code>) -> Self {
        Self(codes)
    }

    /// Copy of row `i` of `ds`.
    pub fn from_row(ds: &Dataset, i: usize) -> Self {
        Self(ds.row(i).to_vec())
    }

    pub fn codes(&self) -> &[Code] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Code>> for Center {
    fn from(codes: Vec<Code>) -> Self {
        Self(codes)
    }
}

/// Hard partition of the objects: `clusters()[i]` is the cluster of object `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    clusters: Vec<usize>,
    k: usize,
}

impl Assignment {
    pub fn new(clusters: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if let Some(&bad) = clusters.iter().find(|&&c| c >= k) {
            return Err(Error::Bounds { index: bad, k });
        }
        Ok(Self { clusters, k })
    }

    pub fn clusters(&self) -> &[usize] {
        &self.clusters
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Objects per cluster.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.clusters {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Outcome of one k-modes run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub centers: Vec<Center>,
    pub assignment: Assignment,
    /// Final cost: total mismatches between objects and their centers.
    pub objective: usize,
    /// Completed (update, assign) rounds; at least 1.
    pub iterations: usize,
    /// False when the iteration budget ran out before the partition settled.
    pub converged: bool,
    /// Cost after the initial assignment and after every round.
    pub objective_trace: Vec<usize>,
    /// Present when the dataset carries class labels.
    pub accuracy: Option<AccuracyReport>,
}

fn check_centers(ds: &Dataset, centers: &[Center]) -> Result<()> {
    if centers.is_empty() {
        return Err(Error::Config("at least one center is required".into()));
    }
    for c in centers {
        if c.len() != ds.m() {
            return Err(Error::Dimension {
                expected: ds.m(),
                found: c.len(),
            });
        }
        for (j, &code) in c.codes().iter().enumerate() {
            if code as usize >= ds.domain_size(j) {
                return Err(Error::Consistency(format!(
                    "center code {code} outside the domain of attribute {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Index and distance of the nearest center; lowest index wins ties.
#[inline]
pub(crate) fn nearest(row: &[Code], centers: &[Center]) -> (usize, usize) {
    let mut best = (0, usize::MAX);
    for (l, c) in centers.iter().enumerate() {
        let d = mismatches(row, c.codes());
        if d < best.1 {
            best = (l, d);
        }
    }
    best
}

/// Assigns each object to its nearest center.
pub fn assign_step(ds: &Dataset, centers: &[Center]) -> Result<Assignment> {
    check_centers(ds, centers)?;
    Ok(assign_unchecked(ds, centers))
}

fn assign_unchecked(ds: &Dataset, centers: &[Center]) -> Assignment {
    Assignment {
        clusters: ds.rows().map(|r| nearest(r, centers).0).collect(),
        k: centers.len(),
    }
}

/// Recomputes every center as its cluster's per-attribute mode.
///
/// Frequency ties go to the lowest code. An empty cluster keeps its
/// previous center.
pub fn update_modes(
    ds: &Dataset,
    assignment: &Assignment,
    previous: &[Center],
) -> Result<Vec<Center>> {
    if previous.is_empty() {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if previous.len() != assignment.k() {
        return Err(Error::Consistency(format!(
            "{} previous centers for k = {}",
            previous.len(),
            assignment.k()
        )));
    }
    let tables = ds.cluster_frequency_tables(assignment)?;
    Ok(tables
        .iter()
        .zip(previous)
        .map(|(table, prev)| {
            if table.rows() == 0 {
                return prev.clone();
            }
            Center(
                (0..ds.m())
                    .map(|j| table.mode(j).expect("non-empty cluster"))
                    .collect(),
            )
        })
        .collect())
}

/// Total simple matching distance from each object to its assigned center.
pub fn objective(ds: &Dataset, assignment: &Assignment, centers: &[Center]) -> Result<usize> {
    ds.check_assignment(assignment)?;
    if centers.len() != assignment.k() {
        return Err(Error::Dimension {
            expected: assignment.k(),
            found: centers.len(),
        });
    }
    if let Some(c) = centers.iter().find(|c| c.len() != ds.m()) {
        return Err(Error::Dimension {
            expected: ds.m(),
            found: c.len(),
        });
    }
    Ok(cost(ds, assignment, centers))
}

fn cost(ds: &Dataset, assignment: &Assignment, centers: &[Center]) -> usize {
    ds.rows()
        .zip(assignment.clusters())
        .map(|(r, &l)| mismatches(r, centers[l].codes()))
        .sum()
}

/// Runs k-modes from `initial` until the partition stops changing or
/// `max_iters` rounds have run.
pub fn kmodes(ds: &Dataset, initial: &[Center], max_iters: usize) -> Result<RunResult> {
    check_centers(ds, initial)?;
    let k = initial.len();
    if k > ds.n() {
        return Err(Error::Config(format!("k = {k} exceeds n = {}", ds.n())));
    }
    if max_iters == 0 {
        return Err(Error::Config("max_iters must be at least 1".into()));
    }

    let mut centers = initial.to_vec();
    let mut assignment = assign_unchecked(ds, &centers);
    let mut trace = vec![cost(ds, &assignment, &centers)];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        centers = update_modes(ds, &assignment, &centers)?;
        let next = assign_unchecked(ds, &centers);
        iterations += 1;
        trace.push(cost(ds, &next, &centers));
        let settled = next == assignment;
        assignment = next;
        if settled {
            converged = true;
            break;
        }
    }

    let accuracy = match ds.labels() {
        Some(labels) => Some(eval::clustering_accuracy(&assignment, labels.codes())?),
        None => None,
    };

    Ok(RunResult {
        objective: *trace.last().expect("trace is never empty"),
        centers,
        assignment,
        iterations,
        converged,
        objective_trace: trace,
        accuracy,
    })
}
