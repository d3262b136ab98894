//! Exact scalars, sparse polynomials in `z` and in the commuting pair
//! `z_+, z_-`, and the affine automorphism `z -> qz + r` of `Q[z]`.

mod auto;
mod pairpoly;
mod rational;
mod unipoly;

pub use auto::{apply_auto, s_n, AffineAuto};
pub use pairpoly::PairPoly;
pub use rational::{int, parse_rational, rat, rat_pow, Rational};
pub use unipoly::{factor_zero_root, hat_decompose, UniPoly};
