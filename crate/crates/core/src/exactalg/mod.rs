//! Exact arithmetic kernel: rationals, polynomials, polynomial matrices,
//! determinants, gcds, real roots and Smith forms.

pub mod groebner;
pub mod intpoly;
pub mod modp;
pub mod multipoly;
pub mod polymatrix;
pub mod rational;
pub mod roots;
pub mod unipoly;

pub use intpoly::IntPoly;
pub use multipoly::MultiPoly;
pub use polymatrix::{det_cofactor, det_fraction_free, rank_over_function_field, smith_normal_form, PolyMatrix};
pub use rational::Rational;
pub use roots::{sturm_real_roots, RootInterval};
pub use unipoly::{squarefree_part, uni_arith, uni_gcd, UniOp, UniPoly};
