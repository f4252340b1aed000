use std::fmt;

use crate::error::{Error, Result};

/// Integer design parameters: `k` zeros at `w = pi`, group delay flat to
/// order `2l`, square magnitude flat to order `2m` at `w = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DesignParams {
    pub k: usize,
    pub l: usize,
    pub m: usize,
}

/// Parameter regime: in Region I the reduced system is linear in the
/// remaining moments, in Region II it is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    I,
    II,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::I => write!(f, "I"),
            Region::II => write!(f, "II"),
        }
    }
}

impl DesignParams {
    pub fn new(k: usize, l: usize, m: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::Param(format!("K must be at least 1, got {k}")));
        }
        if m < 1 {
            return Err(Error::Param(format!("M must be at least 1, got {m}")));
        }
        if l > m {
            return Err(Error::Param(format!("need L <= M, got L={l}, M={m}")));
        }
        Ok(DesignParams { k, l, m })
    }

    /// Filter length `K + L + M + 1`.
    pub fn n(&self) -> usize {
        self.k + self.l + self.m + 1
    }

    /// `K + L + M`, the center of the time-reversal symmetry is half of it.
    pub fn span(&self) -> usize {
        self.k + self.l + self.m
    }

    /// Number of free moments after closure, `L + M`.
    pub fn top_moment(&self) -> usize {
        self.l + self.m
    }

    /// First moment left as an unknown in the reduced system.
    pub fn first_free_moment(&self) -> usize {
        2 * self.l + 3
    }

    pub fn region(&self) -> Region {
        if (self.m - 1) / 2 <= self.l {
            Region::I
        } else {
            Region::II
        }
    }

    /// Diagonal index `q = M - 2L` (negative values fold into Region I).
    pub fn q(&self) -> i64 {
        self.m as i64 - 2 * self.l as i64
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, L={}, M={})", self.k, self.l, self.m)
    }
}
