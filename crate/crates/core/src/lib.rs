//! k-modes clustering for categorical data.
//!
//! Objects are rows of dictionary-encoded attribute values compared with the
//! simple matching distance. Centers are seeded at random, by a random-start
//! farthest-point chain, or by a fully deterministic chain that starts from
//! the row with the most frequent attribute values, and then refined by the
//! usual assign/mode-update alternation.
//!
//! ```
//! use catmodes::{init_nfph, kmodes, Dataset};
//!
//! let ds = Dataset::from_codes(
//!     &[vec![0, 0], vec![0, 1], vec![3, 3], vec![3, 2]],
//!     Some(vec![0, 0, 1, 1]),
//! )
//! .unwrap();
//! let seeds = init_nfph(&ds, 2).unwrap();
//! let run = kmodes(&ds, &seeds.centers, 100).unwrap();
//! assert_eq!(run.accuracy.unwrap().accuracy, 1.0);
//! ```

pub mod dataset;
pub mod error;
pub mod eval;
pub mod init;
pub mod kmodes;
pub mod metric;
pub mod synthetic;

pub use dataset::{load_dataset, parse_dataset, Code, Dataset, FrequencyTable, Labels, Schema};
pub use error::{Error, Result};
pub use eval::{clustering_accuracy, AccuracyReport, ClusterPurity};
pub use init::{
    farthest_point_chain, init_bfph, init_nfph, init_random, partition_radius, point_scores,
    InitMethod, InitSpec, Score, Seeding,
};
pub use kmodes::{
    assign_step, kmodes, objective, update_modes, Assignment, Center, RunResult, DEFAULT_MAX_ITERS,
};
pub use metric::{simple_matching, Distance};
