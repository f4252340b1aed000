//! Cayley-Dixon elimination with `t` hidden in the coefficients.
//!
//! For `n+1` equations in `n` unknowns `x_1..x_n`, row `j` of the Dixon
//! matrix holds `f_j(x)` followed by the divided differences
//! `[f_j(X_1..X_k, x_{k+1}..) - f_j(X_1..X_{k-1}, x_k..)] / (X_k - x_k)`.
//! Its determinant expands as `R . M . C` with `R` monomials in `x`, `C`
//! monomials in `X`, and `M` a matrix over `Z[t]`; every maximal-rank
//! square submatrix of `M` has a multiple of the resultant as determinant.

use std::collections::HashMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linear::Eliminated;
use super::strip::{strip_extraneous, RemovalReason, RemovedFactor};
use crate::error::{Error, Result};
use crate::exactalg::intpoly::IntPoly;
use crate::exactalg::modp::PRIMES;
use crate::exactalg::polymatrix::{det_fraction_free, eliminate_mod_p, subsets, PolyMatrix};
use crate::exactalg::unipoly::UniPoly;
use crate::sbsystem::{reduce_system, time_reverse_poly, DesignParams, ReducedSystem};

type Exp = Vec<u8>;

/// Sparse polynomial in `x_1..x_n, X_1..X_n` with `Z[t]` coefficients.
#[derive(Clone, Debug, Default)]
struct BiPoly {
    terms: HashMap<Exp, IntPoly>,
}

impl BiPoly {
    fn add_term(&mut self, e: Exp, c: IntPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut acc: HashMap<Exp, IntPoly> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }

    fn add_scaled(&mut self, other: &BiPoly, negate: bool) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), if negate { -c } else { c.clone() });
        }
    }
}

/// Row and column monomials, the coefficient matrix over `Q[t]`, its rank,
/// and a maximal-rank square submatrix.
#[derive(Clone, Debug)]
pub struct DixonDecomposition {
    /// Exponent vectors over the unknowns for the rows of `M`.
    pub row_monomials: Vec<Vec<u32>>,
    /// Exponent vectors over the barred unknowns for the columns of `M`.
    pub col_monomials: Vec<Vec<u32>>,
    pub coeff_matrix: PolyMatrix,
    pub rank: usize,
    pub chosen_rows: Vec<usize>,
    pub chosen_cols: Vec<usize>,
}

impl DixonDecomposition {
    pub fn submatrix(&self) -> PolyMatrix {
        self.coeff_matrix.submatrix(&self.chosen_rows, &self.chosen_cols)
    }

    /// Row index of the monomial `1`, if present.
    pub fn unit_row(&self) -> Option<usize> {
        self.row_monomials.iter().position(|e| e.iter().all(|&x| x == 0))
    }

    /// Row index of the monomial `x_k`.
    pub fn linear_row(&self, k: usize) -> Option<usize> {
        self.row_monomials.iter().position(|e| e.iter().enumerate().all(|(i, &x)| x == u32::from(i == k)))
    }
}

fn equations_as_bipolys(sys: &ReducedSystem, var_order: &[usize]) -> Result<Vec<BiPoly>> {
    let n = sys.num_moment_vars();
    let mut out = Vec::new();
    for e in 0..sys.equations.len() {
        let mut p = BiPoly::default();
        for (mono, coef) in sys.coefficient_form(e) {
            let (den, ip) = coef.clear_denominators();
            if !den.is_one() {
                return Err(Error::Internal("reduced equation with fractional coefficients".into()));
            }
            let mut ex = vec![0u8; 2 * n];
            for (i, &v) in var_order.iter().enumerate() {
                ex[i] = mono[v] as u8;
            }
            p.add_term(ex, ip);
        }
        out.push(p);
    }
    Ok(out)
}

/// Divided difference in the `k`-th unknown (0-based).
fn divided_difference(f: &BiPoly, k: usize, n: usize) -> BiPoly {
    let mut out = BiPoly::default();
    for (e, c) in &f.terms {
        let ek = e[k];
        if ek == 0 {
            continue;
        }
        for a in 0..ek {
            let b = ek - 1 - a;
            let mut ne = vec![0u8; 2 * n];
            for i in 0..k {
                ne[n + i] = e[i];
            }
            ne[n + k] = a;
            ne[k] = b;
            for i in (k + 1)..n {
                ne[i] = e[i];
            }
            out.add_term(ne, c.clone());
        }
    }
    out
}

/// The Dixon determinant `Delta(x, X)` by memoized Laplace expansion.
fn dixon_determinant(eqs: &[BiPoly], n: usize) -> BiPoly {
    let size = n + 1;
    let entries: Vec<Vec<BiPoly>> = eqs
        .iter()
        .map(|f| {
            let mut row = vec![f.clone()];
            row.extend((0..n).map(|k| divided_difference(f, k, n)));
            row
        })
        .collect();
    let mut level: HashMap<Vec<usize>, BiPoly> = HashMap::new();
    for c in 0..size {
        level.insert(vec![c], entries[0][c].clone());
    }
    for s in 2..=size {
        let r = s - 1;
        let sets = subsets(size, s);
        let next: Vec<(Vec<usize>, BiPoly)> = sets
            .into_par_iter()
            .map(|set| {
                let mut acc = BiPoly::default();
                for (idx, &c) in set.iter().enumerate() {
                    let a = &entries[r][c];
                    if a.terms.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> = set.iter().copied().filter(|&x| x != c).collect();
                    let sub = &level[&rest];
                    if sub.terms.is_empty() {
                        continue;
                    }
                    acc.add_scaled(&a.mul(sub), (r + idx) % 2 == 1);
                }
                (set, acc)
            })
            .collect();
        level = next.into_iter().collect();
    }
    level.remove(&(0..size).collect::<Vec<_>>()).unwrap_or_default()
}

fn monomial_order(e: &[u32]) -> (u32, Vec<std::cmp::Reverse<u32>>) {
    (e.iter().sum(), e.iter().map(|&x| std::cmp::Reverse(x)).collect())
}

/// Expand the Dixon determinant of the reduced system into `R . M . C` and
/// choose a maximal-rank square submatrix, reproducibly for a given seed.
pub fn dixon_decompose(sys: &ReducedSystem, seed: u64) -> Result<DixonDecomposition> {
    let order: Vec<usize> = (0..sys.num_moment_vars()).collect();
    dixon_decompose_ordered(sys, &order, seed)
}

/// As [`dixon_decompose`] with the unknowns taken in the order `var_order`
/// (a permutation of the free moment indices); row and column monomials
/// are reported in that order.
pub fn dixon_decompose_ordered(sys: &ReducedSystem, var_order: &[usize], seed: u64) -> Result<DixonDecomposition> {
    let n = sys.num_moment_vars();
    if sys.equations.len() != n + 1 || n == 0 {
        return Err(Error::Shape(format!(
            "Dixon needs n+1 equations in n >= 1 unknowns, got {} in {n}",
            sys.equations.len()
        )));
    }
    let eqs = equations_as_bipolys(sys, var_order)?;
    let delta = dixon_determinant(&eqs, n);
    decompose(delta, n, seed)
}

fn decompose(delta: BiPoly, n: usize, seed: u64) -> Result<DixonDecomposition> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for e in delta.terms.keys() {
        rows.push(e[..n].iter().map(|&x| x as u32).collect());
        cols.push(e[n..].iter().map(|&x| x as u32).collect());
    }
    rows.sort_by_key(|e| monomial_order(e));
    rows.dedup();
    cols.sort_by_key(|e| monomial_order(e));
    cols.dedup();
    let row_index: HashMap<&[u32], usize> = rows.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let col_index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut m = PolyMatrix::zeros(rows.len(), cols.len());
    for (e, c) in &delta.terms {
        let r: Vec<u32> = e[..n].iter().map(|&x| x as u32).collect();
        let k: Vec<u32> = e[n..].iter().map(|&x| x as u32).collect();
        m.set(row_index[r.as_slice()], col_index[k.as_slice()], UniPoly::from_int_poly(c));
    }
    let mut d = DixonDecomposition {
        row_monomials: rows,
        col_monomials: cols,
        coeff_matrix: m,
        rank: 0,
        chosen_rows: Vec::new(),
        chosen_cols: Vec::new(),
    };
    select_submatrix(&mut d, n, seed)?;
    Ok(d)
}

fn select_submatrix(d: &mut DixonDecomposition, n: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prime = PRIMES[0];
    let points = [rng.gen_range(1..prime), rng.gen_range(1..prime)];
    // rows for 1 and x_1..x_n go first so the kernel can be read off later
    let mut priority: Vec<usize> = d.unit_row().into_iter().collect();
    priority.extend((0..n).filter_map(|k| d.linear_row(k)));
    let mut rest: Vec<usize> = (0..d.coeff_matrix.rows()).filter(|i| !priority.contains(i)).collect();
    rest.shuffle(&mut rng);
    let order: Vec<usize> = priority.iter().copied().chain(rest).collect();
    let mut col_order: Vec<usize> = (0..d.coeff_matrix.cols()).collect();
    col_order.shuffle(&mut rng);

    let evals: Vec<Vec<Vec<u64>>> = points
        .iter()
        .map(|&t| d.coeff_matrix.eval_mod(t, prime))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("Dixon coefficient denominator vanishes mod p".into()))?;
    let elims: Vec<_> = evals.iter().map(|m| eliminate_mod_p(m, &order, prime)).collect();
    let best = if elims[1].rank > elims[0].rank { 1 } else { 0 };
    let rank = elims[best].rank;
    if rank == 0 {
        return Err(Error::EliminationFailure("Dixon coefficient matrix has rank 0".into()));
    }
    let chosen_rows = elims[best].pivot_rows.clone();
    let mut chosen_rows_sorted = chosen_rows.clone();
    chosen_rows_sorted.sort_unstable();
    let m = &evals[best];
    let transposed: Vec<Vec<u64>> =
        (0..d.coeff_matrix.cols()).map(|c| chosen_rows_sorted.iter().map(|&r| m[r][c]).collect()).collect();
    let ce = eliminate_mod_p(&transposed, &col_order, prime);
    if ce.rank != rank {
        return Err(Error::Internal("column selection lost rank".into()));
    }
    let mut chosen_cols = ce.pivot_rows;
    chosen_cols.sort_unstable();
    d.rank = rank;
    d.chosen_rows = chosen_rows_sorted;
    d.chosen_cols = chosen_cols;
    Ok(())
}

impl DixonDecomposition {
    /// Same coefficient matrix, different seeded choice of submatrix.
    pub fn reselect(&self, seed: u64) -> Result<DixonDecomposition> {
        let mut d = self.clone();
        let n = d.row_monomials.first().map_or(0, Vec::len);
        select_submatrix(&mut d, n, seed)?;
        Ok(d)
    }
}

/// Minimum number of distinct submatrices whose determinants are
/// intersected.
pub const SUBMATRIX_COUNT: usize = 3;

/// More submatrices are drawn until this many in a row leave the gcd
/// unchanged.
const STABLE_ROUNDS: usize = 2;

const MAX_SUBMATRICES: usize = 8;

/// Full Dixon pipeline: determinant gcd over several maximal-rank
/// submatrices, then half-integer stripping and the symmetry check.
pub(crate) fn solve_dixon(p: DesignParams, seed: u64) -> Result<(Eliminated, DixonDecomposition)> {
    let sys = reduce_system(p)?;
    let base = dixon_decompose(&sys, seed)?;
    let mut first: Option<UniPoly> = None;
    let mut raw = UniPoly::zero();
    let mut stable = 0;
    for i in 0..MAX_SUBMATRICES as u64 {
        let pick = if i == 0 { base.clone() } else { base.reselect(seed.wrapping_add(i))? };
        let d = det_fraction_free(&pick.submatrix())?;
        if d.is_zero() {
            continue;
        }
        let before = raw.degree();
        raw = if raw.is_zero() { d.primitive_normalized() } else { raw.gcd(&d)? };
        first.get_or_insert(d);
        if i as usize >= SUBMATRIX_COUNT {
            stable = if raw.degree() == before { stable + 1 } else { 0 };
            if stable >= STABLE_ROUNDS {
                break;
            }
        }
    }
    let Some(first) = first else {
        return Err(Error::EliminationFailure(format!("every Dixon submatrix is singular for {p}")));
    };
    let raw = raw.primitive_normalized();
    let mut removed = Vec::new();
    let extra = first.primitive_normalized().exact_div(&raw)?;
    if !extra.is_constant() {
        removed.push(RemovedFactor { factor: extra.primitive_normalized(), reason: RemovalReason::SubmatrixGcd });
    }
    // the true resultant is invariant under time reversal, so it divides
    // the gcd of raw with its reflection
    let sym = raw.gcd(&time_reverse_poly(&raw, &p))?.primitive_normalized();
    let asym = raw.exact_div(&sym)?;
    if !asym.is_constant() {
        removed.push(RemovedFactor { factor: asym.primitive_normalized(), reason: RemovalReason::ReversalAsymmetric });
    }
    let (stripped, more) = strip_extraneous(&sym, &sys, None)?;
    removed.extend(more);
    Ok((Eliminated { raw, stripped, removed }, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_linear_equations() {
        // x - t and x - 1 in one unknown
        let n = 1;
        let mut f = BiPoly::default();
        f.add_term(vec![1, 0], IntPoly::from_i64(&[1]));
        f.add_term(vec![0, 0], IntPoly::from_i64(&[0, -1]));
        let mut g = BiPoly::default();
        g.add_term(vec![1, 0], IntPoly::from_i64(&[1]));
        g.add_term(vec![0, 0], IntPoly::from_i64(&[-1]));
        let delta = dixon_determinant(&[f, g], n);
        let d = decompose(delta, n, 0).unwrap();
        assert_eq!(d.coeff_matrix.rows(), 1);
        assert_eq!(d.coeff_matrix.cols(), 1);
        let e = d.coeff_matrix.get(0, 0).clone();
        assert!(e == UniPoly::from_i64(&[-1, 1]) || e == UniPoly::from_i64(&[1, -1]));
    }
}
