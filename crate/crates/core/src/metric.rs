//! Simple matching dissimilarity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::Code;
use crate::error::{Error, Result};

/// Number of attributes on which two objects disagree.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Distance(pub usize);

impl Distance {
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Counts mismatching positions. Lengths must already agree.
#[inline]
pub fn mismatches(x: &[Code], z: &[Code]) -> usize {
    debug_assert_eq!(x.len(), z.len());
    x.iter().zip(z).filter(|(a, b)| a != b).count()
}

/// Simple matching distance between two code vectors of equal length.
pub fn simple_matching(x: &[Code], z: &[Code]) -> Result<Distance> {
    if x.len() != z.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            found: z.len(),
        });
    }
    Ok(Distance(mismatches(x, z)))
}
