//! Construction parameters and the instance-size budget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimension `n`, sphere radius `r` and inner cube side `s`.
///
/// The inner cube `K0 = {x : |x_i| <= s/2}` holds the lattice centers and the
/// outer cube `K1 = {x : |x_i| <= s/2 + r}` holds the spheres. `s` must be even
/// so that `K0` contains exactly `(s+1)^n` integer points. With
/// `paper_regime` set, `r` must be even as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PackingParams {
    pub n: usize,
    pub r: u64,
    pub s: u64,
    pub paper_regime: bool,
}

impl PackingParams {
    pub fn new(n: usize, r: u64, s: u64) -> Result<Self> {
        let p = PackingParams {
            n,
            r,
            s,
            paper_regime: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// Same as [`PackingParams::new`] but additionally requires `r` and `s` even.
    pub fn paper_regime(n: usize, r: u64, s: u64) -> Result<Self> {
        let p = PackingParams {
            n,
            r,
            s,
            paper_regime: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if self.r == 0 {
            return Err(Error::InvalidParams("radius must be at least 1".into()));
        }
        if !self.s.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "cube side s = {} must be even",
                self.s
            )));
        }
        if self.paper_regime && !self.r.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "paper regime requires an even radius, got r = {}",
                self.r
            )));
        }
        // squared distances are computed in u64
        if self.r > 1 << 30 || self.s > 1 << 40 {
            return Err(Error::InvalidParams(format!(
                "r = {} or s = {} too large for exact integer distance arithmetic",
                self.r, self.s
            )));
        }
        Ok(())
    }

    /// Coordinates of the lattice points in `K0` range over `-half..=half`.
    pub fn half_side(&self) -> i64 {
        (self.s / 2) as i64
    }

    /// `(s+1)^n`, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<u128> {
        (self.s as u128 + 1).checked_pow(self.n as u32)
    }

    /// Largest squared distance that is still an edge: `d < 2r` iff `d^2 <= 4r^2 - 1`.
    pub fn edge_threshold(&self) -> u64 {
        edge_threshold(self.r)
    }

    /// Side of the outer cube `K1`.
    pub fn outer_side(&self) -> u64 {
        self.s + 2 * self.r
    }
}

pub(crate) fn edge_threshold(r: u64) -> u64 {
    4 * r * r - 1
}

pub const DEFAULT_MAX_VERTICES: u64 = 10_000_000;
pub const DEFAULT_MAX_COMPARISONS: u64 = 1_000_000_000;

/// Caps on instance size so that infeasible parameters fail fast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_vertices: u64,
    pub max_comparisons: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_comparisons: DEFAULT_MAX_COMPARISONS,
        }
    }
}

impl Budget {
    pub fn with_max_vertices(mut self, max_vertices: u64) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    pub fn check_vertices(&self, predicted: Option<u128>) -> Result<()> {
        match predicted {
            Some(v) if v <= self.max_vertices as u128 => Ok(()),
            _ => Err(Error::BudgetExceeded {
                what: "vertex count",
                predicted,
                limit: self.max_vertices,
            }),
        }
    }

    pub fn check_comparisons(&self, predicted: u128) -> Result<()> {
        if predicted <= self.max_comparisons as u128 {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                what: "edge comparisons",
                predicted: Some(predicted),
                limit: self.max_comparisons,
            })
        }
    }
}
