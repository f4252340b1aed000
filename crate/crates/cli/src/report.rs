//! Serialized design reports. Big integers and exact rationals are written
//! as decimal strings.

use serde::{Deserialize, Serialize};

use sbflat::eliminate::EliminationResult;
use sbflat::exactalg::rational::{to_decimal, Rational};
use sbflat::exactalg::UniPoly;
use sbflat::solvefilter::FilterSolution;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ParamsOut {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RemovedOut {
    pub reason: String,
    pub factor: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RootOut {
    pub t: String,
    /// Exact endpoints `[lo, hi]` as `p/q` strings.
    pub interval: [String; 2],
    pub partner: Option<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SolutionOut {
    pub moments: Vec<String>,
    pub coeffs: Vec<String>,
    pub response_class: String,
    /// Largest residual over the full design equations.
    pub residual: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DesignReport {
    pub params: ParamsOut,
    pub region: String,
    pub backend: String,
    pub seed: u64,
    pub precision_bits: u32,
    pub degree: usize,
    /// Primitive integer coefficients of the stripped polynomial, ascending.
    pub polynomial: Vec<String>,
    pub removed_factors: Vec<RemovedOut>,
    pub roots: Vec<RootOut>,
    pub solutions: Vec<SolutionOut>,
}

/// Significant digits for a value known to `bits` binary digits.
pub fn digits_for(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn int_coeffs(p: &UniPoly) -> Vec<String> {
    p.to_int_poly().1.coeffs().iter().map(|c| c.to_string()).collect()
}

fn exact(x: &Rational) -> String {
    x.to_string()
}

pub fn design_report(
    elim: &EliminationResult,
    solutions: &[FilterSolution],
    seed: u64,
    precision_bits: u32,
) -> DesignReport {
    let digits = digits_for(precision_bits);
    let p = elim.params;
    DesignReport {
        params: ParamsOut { k: p.k, l: p.l, m: p.m },
        region: p.region().to_string(),
        backend: elim.backend.name().to_string(),
        seed,
        precision_bits,
        degree: elim.degree(),
        polynomial: int_coeffs(&elim.stripped),
        removed_factors: elim
            .removed_factors
            .iter()
            .map(|f| RemovedOut { reason: f.reason.to_string(), factor: int_coeffs(&f.factor) })
            .collect(),
        roots: solutions
            .iter()
            .map(|s| RootOut {
                t: to_decimal(&s.t, digits),
                interval: [exact(&s.t_root.lo), exact(&s.t_root.hi)],
                partner: s.partner,
            })
            .collect(),
        solutions: solutions
            .iter()
            .map(|s| SolutionOut {
                moments: s.moments.iter().map(|m| to_decimal(m, digits)).collect(),
                coeffs: s.coeffs.iter().map(|c| to_decimal(c, digits)).collect(),
                response_class: s.response_class.to_string(),
                residual: to_decimal(&s.residual, 6),
            })
            .collect(),
    }
}
