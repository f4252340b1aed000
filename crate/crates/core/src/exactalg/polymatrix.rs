use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::intpoly::IntPoly;
use super::modp;
use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Rectangular matrix of polynomials in `t`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<UniPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![UniPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { UniPoly::one() } else { UniPoly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> UniPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UniPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[UniPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn eval(&self, t: &Rational) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(t)).collect()).collect()
    }

    /// Entries evaluated at `t` modulo the prime `p`; `None` if a
    /// coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, t: u64, p: u64) -> Option<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let mut acc = 0u64;
                        for c in self.get(i, j).coeffs().iter().rev() {
                            acc = modp::addmod(modp::mulmod(acc, t, p), modp::reduce_rational(c, p)?, p);
                        }
                        Some(acc)
                    })
                    .collect()
            })
            .collect()
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.degree()).max()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Matrices up to this size use cofactor expansion.
const COFACTOR_MAX: usize = 4;
/// Above this size the determinant is found by evaluation and interpolation.
const BAREISS_MAX: usize = 8;

/// Exact determinant over `Q[t]` without rational-function intermediates.
pub fn det_fraction_free(m: &PolyMatrix) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(UniPoly::one());
    }
    if n <= COFACTOR_MAX {
        return Ok(det_cofactor(m));
    }
    let (scale, rows) = integer_rows(m);
    let det = if n <= BAREISS_MAX { bareiss_poly(rows) } else { det_interpolated(&rows) };
    Ok(UniPoly::from_int_poly(&det).scale(&scale))
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> UniPoly {
    assert!(m.is_square());
    let idx: Vec<usize> = (0..m.cols).collect();
    cofactor_rec(m, 0, &idx)
}

fn cofactor_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> UniPoly {
    if cols.is_empty() {
        return UniPoly::one();
    }
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = UniPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &cofactor_rec(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

// Scale each row to integer polynomials; returns 1/prod(row scales).
fn integer_rows(m: &PolyMatrix) -> (Rational, Vec<Vec<IntPoly>>) {
    let mut scale = Rational::one();
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut den = BigInt::one();
        for j in 0..m.cols {
            for c in m.get(i, j).coeffs() {
                den = den.lcm(c.denom());
            }
        }
        let row: Vec<IntPoly> = (0..m.cols)
            .map(|j| IntPoly::new(m.get(i, j).coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()))
            .collect();
        scale /= Rational::from_integer(den);
        rows.push(row);
    }
    (scale, rows)
}

/// Single-step fraction-free elimination over `Z[t]`.
pub(crate) fn bareiss_poly(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    let mut sign = false;
    let mut prev = IntPoly::constant(BigInt::one());
    for k in 0..n {
        // pivot: nonzero entry of lowest degree
        let piv = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (a[i][k].degree().unwrap(), i));
        let Some(p) = piv else {
            return IntPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        tail.par_iter_mut().for_each(|row| {
            for j in (k + 1)..n {
                let num = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                row[j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = IntPoly::zero();
        });
        prev = a[k][k].clone();
    }
    if sign {
        -&prev
    } else {
        prev
    }
}

fn int_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if sign {
        -prev
    } else {
        prev
    }
}

/// Degree bound for the determinant: the smaller of the row-wise and
/// column-wise sums of maximal entry degrees.
fn det_degree_bound(rows: &[Vec<IntPoly>]) -> Option<usize> {
    let n = rows.len();
    let mut by_row = 0;
    let mut by_col = vec![None::<usize>; n];
    for row in rows {
        let d = row.iter().filter_map(|e| e.degree()).max()?;
        by_row += d;
        for (j, e) in row.iter().enumerate() {
            if let Some(x) = e.degree() {
                by_col[j] = Some(by_col[j].map_or(x, |y: usize| y.max(x)));
            }
        }
    }
    let mut col_sum = 0;
    for c in by_col {
        col_sum += c?;
    }
    Some(by_row.min(col_sum))
}

fn det_interpolated(rows: &[Vec<IntPoly>]) -> IntPoly {
    let Some(bound) = det_degree_bound(rows) else {
        return IntPoly::zero();
    };
    let half = (bound / 2) as i64;
    let points: Vec<BigInt> = (0..=bound as i64).map(|i| BigInt::from(i - half)).collect();
    let values: Vec<BigInt> = points
        .par_iter()
        .map(|x| {
            let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|e| e.eval_int(x)).collect()).collect();
            int_bareiss(m)
        })
        .collect();
    interpolate_integer(&points, &values)
}

/// Newton interpolation through integer nodes, for data known to come
/// from an integer polynomial.
pub(crate) fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.iter().map(|y| Rational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = Rational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // Horner on the Newton form
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = UniPoly::linear(-Rational::from_integer(xs[i].clone()), Rational::one());
        acc = &(&acc * &factor) + &UniPoly::constant(dd[i].clone());
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.to_integer()
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Result of exact Gaussian elimination on a rational matrix.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Exact row echelon reduction; rows are tried in the order given by
/// `row_order` (all rows in natural order when empty).
pub fn eliminate_rational(m: &[Vec<Rational>], row_order: &[usize]) -> Elimination {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let order: Vec<usize> = if row_order.is_empty() { (0..nrows).collect() } else { row_order.to_vec() };
    // reduced basis rows with their pivot columns
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut pivot_rows = Vec::new();
    for &r in &order {
        let mut v = m[r].clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for j in 0..ncols {
                    if !b[j].is_zero() {
                        let d = &f * &b[j];
                        v[j] -= d;
                    }
                }
            }
        }
        if let Some(pc) = (0..ncols).find(|&j| !v[j].is_zero()) {
            let inv = Rational::one() / &v[pc];
            for x in v.iter_mut() {
                *x *= &inv;
            }
            // keep basis fully reduced in the new pivot column
            for (_, b) in basis.iter_mut() {
                if !b[pc].is_zero() {
                    let f = b[pc].clone();
                    for j in 0..ncols {
                        if !v[j].is_zero() {
                            let d = &f * &v[j];
                            b[j] -= d;
                        }
                    }
                }
            }
            basis.push((pc, v));
            pivot_rows.push(r);
        }
    }
    let pivot_cols = basis.iter().map(|(c, _)| *c).collect();
    Elimination { rank: basis.len(), pivot_rows, pivot_cols }
}

/// [`eliminate_rational`] over `Z/p`. A pivot minor that is nonzero mod `p`
/// is nonzero over `Q`, so the rank found is a lower bound on the rational
/// rank and the pivots index a nonsingular rational submatrix.
pub fn eliminate_mod_p(m: &[Vec<u64>], row_order: &[usize], p: u64) -> Elimination {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let order: Vec<usize> = if row_order.is_empty() { (0..nrows).collect() } else { row_order.to_vec() };
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivot_rows = Vec::new();
    for &r in &order {
        let mut v = m[r].clone();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for j in 0..ncols {
                    if b[j] != 0 {
                        v[j] = modp::submod(v[j], modp::mulmod(f, b[j], p), p);
                    }
                }
            }
        }
        if let Some(pc) = (0..ncols).find(|&j| v[j] != 0) {
            let inv = modp::inv(v[pc], p);
            for x in v.iter_mut() {
                *x = modp::mulmod(*x, inv, p);
            }
            for (_, b) in basis.iter_mut() {
                let f = b[pc];
                if f != 0 {
                    for j in 0..ncols {
                        if v[j] != 0 {
                            b[j] = modp::submod(b[j], modp::mulmod(f, v[j], p), p);
                        }
                    }
                }
            }
            basis.push((pc, v));
            pivot_rows.push(r);
        }
    }
    let pivot_cols = basis.iter().map(|(c, _)| *c).collect();
    Elimination { rank: basis.len(), pivot_rows, pivot_cols }
}

pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    eliminate_rational(m, &[]).rank
}

/// Exact determinant of a square rational matrix.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let piv = a[k][k].clone();
        det *= &piv;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

/// Solve the square system `a x = b` exactly; `None` when singular.
///
/// Rows are cleared of denominators and reduced by fraction-free
/// Gauss-Jordan, so every intermediate entry is an integer minor and no gcd
/// is taken until the final quotients.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let (nums, det) = solve_rational_common(a, b)?;
    Some(nums.into_iter().map(|x| Rational::new(x, det.clone())).collect())
}

/// [`solve_rational`] with the solution left as integer numerators over a
/// common integer denominator (a multiple of `det a`).
pub fn solve_rational_common(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let den = r.iter().chain([x]).fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            r.iter().chain([x]).map(|v| v.numer() * (&den / v.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        let (head, tail) = m.split_at_mut(k);
        let (pivot_row, tail) = tail.split_first_mut().expect("row k exists");
        let pk = pivot_row[k].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[k].clone();
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let v = &pk * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pk;
    }
    // every diagonal entry now equals the determinant
    Some((m.into_iter().map(|mut r| r.swap_remove(n)).collect(), prev))
}

/// Binary floating point with an arbitrary-size mantissa: `m * 2^e`.
#[derive(Clone)]
struct BigFloat {
    m: BigInt,
    e: i64,
}

impl BigFloat {
    fn from_rational(x: &Rational, p: u32) -> BigFloat {
        if x.is_zero() {
            return BigFloat { m: BigInt::zero(), e: 0 };
        }
        let s = i64::from(p) + 1 - (x.numer().bits() as i64 - x.denom().bits() as i64);
        let m = if s >= 0 { (x.numer() << (s as u64)) / x.denom() } else { x.numer() / (x.denom() << ((-s) as u64)) };
        BigFloat { m, e: -s }.normalized(p)
    }

    fn normalized(mut self, p: u32) -> BigFloat {
        let bits = self.m.bits();
        if bits > u64::from(p) {
            let shift = bits - u64::from(p);
            self.m >>= shift;
            self.e += shift as i64;
        }
        self
    }

    /// Exponent of the leading bit plus one; `i64::MIN` for zero.
    fn top(&self) -> i64 {
        if self.m.is_zero() {
            i64::MIN
        } else {
            self.e + self.m.bits() as i64
        }
    }

    fn mul(&self, o: &BigFloat, p: u32) -> BigFloat {
        BigFloat { m: &self.m * &o.m, e: self.e + o.e }.normalized(p)
    }

    fn sub(&self, o: &BigFloat, p: u32) -> BigFloat {
        if o.m.is_zero() {
            return self.clone();
        }
        if self.m.is_zero() {
            return BigFloat { m: -&o.m, e: o.e };
        }
        let gap = i64::from(p) + 2;
        if self.top() - o.top() > gap {
            return self.clone();
        }
        if o.top() - self.top() > gap {
            return BigFloat { m: -&o.m, e: o.e };
        }
        let e = self.e.min(o.e);
        let m = (&self.m << ((self.e - e) as u64)) - (&o.m << ((o.e - e) as u64));
        BigFloat { m, e }.normalized(p)
    }

    fn div(&self, o: &BigFloat, p: u32) -> BigFloat {
        let shift = u64::from(p) + o.m.bits();
        BigFloat { m: (&self.m << shift) / &o.m, e: self.e - o.e - shift as i64 }.normalized(p)
    }

    fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << (self.e as u64))
        } else {
            Rational::new(self.m.clone(), BigInt::one() << ((-self.e) as u64))
        }
    }
}

/// Approximate solve of a consistent `a x = b` with at least as many rows
/// as unknowns: Gaussian elimination with partial pivoting in binary
/// floating point carrying `bits` significant bits. Rows left over after
/// the pivots are ignored. `None` when no nonzero pivot is found.
pub fn solve_approx(a: &[Vec<Rational>], b: &[Rational], bits: u32) -> Option<Vec<Rational>> {
    let n = a.first()?.len();
    let mut m: Vec<Vec<BigFloat>> =
        a.iter().zip(b).map(|(r, x)| r.iter().chain([x]).map(|v| BigFloat::from_rational(v, bits)).collect()).collect();
    let rows = m.len();
    if rows < n {
        return None;
    }
    for k in 0..n {
        let p = (k..rows).max_by_key(|&i| m[i][k].top())?;
        if m[p][k].m.is_zero() {
            return None;
        }
        m.swap(p, k);
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            if row[k].m.is_zero() {
                continue;
            }
            let f = row[k].div(&pivot_row[k], bits);
            for j in k + 1..=n {
                row[j] = row[j].sub(&f.mul(&pivot_row[j], bits), bits);
            }
            row[k] = BigFloat { m: BigInt::zero(), e: 0 };
        }
    }
    let mut x: Vec<BigFloat> = vec![BigFloat { m: BigInt::zero(), e: 0 }; n];
    for k in (0..n).rev() {
        let mut acc = m[k][n].clone();
        for j in k + 1..n {
            acc = acc.sub(&m[k][j].mul(&x[j], bits), bits);
        }
        x[k] = acc.div(&m[k][k], bits);
    }
    Some(x.iter().map(BigFloat::to_rational).collect())
}

/// Random rational evaluation point, away from small half-integers.
pub(crate) fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-(1 << 24)..(1 << 24));
    let den: i64 = 2 * rng.gen_range(500..5000) + 1;
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Generic rank together with the pivot rows and columns found at the
/// evaluation point that realised it.
pub fn rank_with_pivots(m: &PolyMatrix, seed: u64) -> Elimination {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = [random_point(&mut rng), random_point(&mut rng)];
    let mut best: Option<Elimination> = None;
    for t in &pts {
        let e = eliminate_rational(&m.eval(t), &[]);
        if best.as_ref().map_or(true, |b| e.rank > b.rank) {
            best = Some(e);
        }
    }
    best.unwrap()
}

/// Rank over the field of rational functions in `t`.
///
/// A nonzero pivot minor at any point proves the lower bound; agreement at
/// two independent random points makes a drop below the generic rank
/// vanishingly unlikely.
pub fn rank_over_function_field(m: &PolyMatrix, seed: u64) -> usize {
    rank_with_pivots(m, seed).rank
}

/// Diagonal of the Smith normal form over `Q[t]`, via gcds of minors.
/// Entries past the rank are zero polynomials.
pub fn smith_normal_form(m: &PolyMatrix) -> Result<Vec<UniPoly>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("Smith form of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut ds: Vec<UniPoly> = vec![UniPoly::one()];
    for k in 1..=n {
        let rsets = subsets(n, k);
        let mut g = UniPoly::zero();
        'outer: for rs in &rsets {
            for cs in &rsets {
                let minor = det_fraction_free(&m.submatrix(rs, cs))?;
                if minor.is_zero() {
                    continue;
                }
                g = if g.is_zero() { minor.monic() } else { g.gcd(&minor)? };
                if g.is_constant() {
                    break 'outer;
                }
            }
        }
        ds.push(g);
    }
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        if ds[k].is_zero() {
            out.push(UniPoly::zero());
        } else {
            out.push(ds[k].exact_div(&ds[k - 1])?.monic());
        }
    }
    Ok(out)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn pseudo_random_matrix(n: usize, seed: i64) -> PolyMatrix {
        PolyMatrix::from_fn(n, n, |i, j| {
            let a = (seed * 31 + (i * 7 + j * 13) as i64) % 11 - 5;
            let b = (seed * 17 + (i * 3 + j * 5) as i64) % 7 - 3;
            let c = (seed * 5 + (i * 11 + j) as i64) % 5 - 2;
            up(&[a, b, c])
        })
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(det_fraction_free(&PolyMatrix::identity(3)).unwrap(), UniPoly::one());
        assert_eq!(det_fraction_free(&PolyMatrix::identity(12)).unwrap(), UniPoly::one());
    }

    #[test]
    fn non_square_is_shape_error() {
        assert!(matches!(det_fraction_free(&PolyMatrix::zeros(2, 3)), Err(Error::Shape(_))));
        assert!(matches!(smith_normal_form(&PolyMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn bareiss_and_interpolation_match_cofactor() {
        for seed in 0..4 {
            for n in [5, 6, 7] {
                let m = pseudo_random_matrix(n, seed);
                let (scale, rows) = integer_rows(&m);
                let reference = det_cofactor(&m);
                let b = UniPoly::from_int_poly(&bareiss_poly(rows.clone())).scale(&scale);
                let e = UniPoly::from_int_poly(&det_interpolated(&rows)).scale(&scale);
                assert_eq!(b, reference);
                assert_eq!(e, reference);
            }
        }
    }

    #[test]
    fn rational_entries() {
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::new(vec![rat(1, 2), rat(1, 3)]), up(&[1])],
            vec![up(&[0, 1]), UniPoly::new(vec![rat(-3, 4)])],
        ])
        .unwrap();
        let d = det_fraction_free(&m).unwrap();
        assert_eq!(d, UniPoly::new(vec![rat(-3, 8), rat(-5, 4)]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_function_field(&PolyMatrix::zeros(3, 4), 1), 0);
        let m = PolyMatrix::from_rows(vec![vec![up(&[0, 1]), up(&[1])], vec![up(&[0, 0, 1]), up(&[0, 1])]]).unwrap();
        assert_eq!(rank_over_function_field(&m, 3), 1);
        assert_eq!(rank_over_function_field(&PolyMatrix::identity(4), 3), 4);
    }

    #[test]
    fn smith_of_diagonal() {
        let a = up(&[-1, 1]);
        let b = &up(&[-1, 1]) * &up(&[-2, 1]);
        let m =
            PolyMatrix::from_rows(vec![vec![b.clone(), UniPoly::zero()], vec![UniPoly::zero(), a.clone()]]).unwrap();
        assert_eq!(smith_normal_form(&m).unwrap(), vec![a, b]);
        assert_eq!(smith_normal_form(&PolyMatrix::identity(2)).unwrap(), vec![UniPoly::one(), UniPoly::one()]);
    }

    #[test]
    fn rational_linear_algebra() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(det_rational(&a), int(5));
        assert_eq!(solve_rational(&a, &[int(3), int(5)]).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve_rational(&s, &[int(1), int(1)]).is_none());
        // zero leading pivot and fractional entries
        let a =
            vec![vec![int(0), rat(1, 2), int(3)], vec![rat(2, 3), int(1), int(-1)], vec![int(4), rat(-5, 7), int(2)]];
        let b = [int(1), rat(1, 3), int(-2)];
        let x = solve_rational(&a, &b).unwrap();
        for (r, bi) in a.iter().zip(&b) {
            let lhs: Rational = r.iter().zip(&x).map(|(u, v)| u * v).sum();
            assert_eq!(&lhs, bi);
        }
        // the approximate solver on the same system plus a redundant row
        let mut a2 = a.clone();
        a2.push(vec![int(4), rat(3, 2), int(2)]);
        let extra: Rational = a2[3].iter().zip(&x).map(|(u, v)| u * v).sum();
        let b2 = [b[0].clone(), b[1].clone(), b[2].clone(), extra];
        let y = solve_approx(&a2, &b2, 200).unwrap();
        for (u, v) in x.iter().zip(&y) {
            assert!(num_traits::Signed::abs(&(u - v)) < crate::exactalg::rational::pow2(-190));
        }
        assert_eq!(rank_rational(&s), 1);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
