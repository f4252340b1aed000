//! Elimination of the free moments: reduces the system for `(K, L, M)` to
//! a single univariate polynomial in `t = m_1`, with extraneous factors
//! removed and time-reversal symmetry checked.

mod dixon;
mod linear;
mod strip;
mod sylvester;

use std::fmt;
use std::str::FromStr;

pub use dixon::{dixon_decompose, dixon_decompose_ordered, DixonDecomposition, SUBMATRIX_COUNT};
pub use linear::{q3_known_factor, res_linear_quadric};
pub use strip::{
    is_reversal_symmetric, linear_system_inconsistent, strip_extraneous, system_inconsistent, RemovalReason,
    RemovedFactor,
};
pub use sylvester::{sylvester_matrix, sylvester_resultant};

use crate::error::{Error, Result};
use crate::exactalg::unipoly::UniPoly;
use crate::sbsystem::{DesignParams, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Region1Linear,
    DiagQ3,
    DiagQ4,
    Dixon,
}

impl Backend {
    /// Default backend for a parameter triple.
    pub fn auto(p: &DesignParams) -> Backend {
        match p.q() {
            _ if p.region() == Region::I => Backend::Region1Linear,
            3 => Backend::DiagQ3,
            4 if p.l >= 1 => Backend::DiagQ4,
            _ => Backend::Dixon,
        }
    }

    pub fn supports(&self, p: &DesignParams) -> bool {
        match self {
            Backend::Region1Linear => p.region() == Region::I,
            Backend::DiagQ3 => p.q() == 3,
            Backend::DiagQ4 => p.q() == 4 && p.l >= 1,
            Backend::Dixon => p.m >= p.l + 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Region1Linear => "region1_linear",
            Backend::DiagQ3 => "diag_q3",
            Backend::DiagQ4 => "diag_q4",
            Backend::Dixon => "dixon",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "region1_linear" => Ok(Backend::Region1Linear),
            "diag_q3" => Ok(Backend::DiagQ3),
            "diag_q4" => Ok(Backend::DiagQ4),
            "dixon" => Ok(Backend::Dixon),
            _ => Err(Error::Param(format!("unknown backend {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EliminationResult {
    pub params: DesignParams,
    pub backend: Backend,
    /// Resultant before any factor was removed.
    pub raw: UniPoly,
    /// Primitive, positive leading coefficient, symmetric under `t -> S - t`.
    pub stripped: UniPoly,
    pub removed_factors: Vec<RemovedFactor>,
    /// Present for the Dixon backend; solution recovery reads its kernel.
    pub dixon: Option<DixonDecomposition>,
}

impl EliminationResult {
    pub fn degree(&self) -> usize {
        self.stripped.degree().unwrap_or(0)
    }
}

/// Eliminate with the given backend, or the default one for `params`.
/// `seed` fixes every random choice (evaluation points, submatrix picks).
pub fn eliminate(params: DesignParams, backend: Option<Backend>, seed: u64) -> Result<EliminationResult> {
    let backend = backend.unwrap_or_else(|| Backend::auto(&params));
    if !backend.supports(&params) {
        return Err(Error::Param(format!("backend {backend} does not apply to {params}")));
    }
    let (out, dixon) = match backend {
        Backend::Region1Linear => (linear::solve_region1(params)?, None),
        Backend::DiagQ3 => (linear::solve_diagonal_q3(params)?, None),
        Backend::DiagQ4 => (linear::solve_diagonal_q4(params)?, None),
        Backend::Dixon => {
            let (e, d) = dixon::solve_dixon(params, seed)?;
            (e, Some(d))
        }
    };
    Ok(EliminationResult { params, backend, raw: out.raw, stripped: out.stripped, removed_factors: out.removed, dixon })
}
