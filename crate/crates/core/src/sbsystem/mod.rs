//! The polynomial conditions on filter moments and their reduction.
//!
//! A filter `h[0..N-1]` with moments `m_k = sum n^k h[n]` (normalized to
//! `m_0 = 1`) is maximally flat exactly when a family of quadrics in the
//! moments vanishes. Moments above `m_{L+M}` are fixed linear forms in the
//! lower ones, and the low-order quadrics force `m_k = t^k` with `t = m_1`
//! for `k <= 2L+2`; what is left is the reduced system.

mod moments;
mod params;
mod quadrics;
mod reduce;

pub use moments::{build_moment_matrices, invert, MomentMatrices};
pub use params::{DesignParams, Region};
pub use quadrics::{group_delay_quadric, magnitude_quadric};
pub use reduce::{reduce_system, time_reverse_poly, ClosureRow, ReducedSystem};
