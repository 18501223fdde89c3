use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of colors `r` and size `t` of the forbidden monochromatic star `S_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbidParams {
    r: u32,
    t: u32,
}

impl ForbidParams {
    pub fn new(r: u32, t: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("need r >= 2, got r = {r}")));
        }
        if t < 2 {
            return Err(Error::InvalidParams(format!("need t >= 2, got t = {t}")));
        }
        // Keeps every derived exponent comfortably inside u32.
        if u64::from(r) * u64::from(t) > 1 << 20 {
            return Err(Error::InvalidParams(format!("r*t too large ({r}*{t})")));
        }
        Ok(ForbidParams { r, t })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Multiplicity with which every edge is covered by the Shearer family: `2r(t-1) - 3`.
    pub fn k(&self) -> u32 {
        2 * self.r * (self.t - 1) - 3
    }

    /// `r(t-1)`: a vertex of larger degree admits no valid coloring.
    pub fn saturation_degree(&self) -> u32 {
        self.r * (self.t - 1)
    }

    /// Largest degree an optimal graph needs, `r(t-1) - 1`.
    pub fn max_degree(&self) -> u32 {
        self.saturation_degree() - 1
    }

    /// `ceil(r/2)(t-1)`: vertices below this degree can be joined without losing colorings.
    pub fn low_degree(&self) -> u32 {
        self.r.div_ceil(2) * (self.t - 1)
    }

    /// Degree range `[ceil(r/2)(t-1), r(t-1)-1]` scanned by the upper bound.
    pub fn degree_range(&self) -> std::ops::RangeInclusive<u32> {
        self.low_degree()..=self.max_degree()
    }
}

impl std::fmt::Display for ForbidParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(r={}, t={})", self.r, self.t)
    }
}
