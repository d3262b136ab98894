//! Exact symbolic computation with degree-one generalized Weyl algebras over
//! `Q[z]`, the Z-graded algebras built over them from a factorization
//! `q = q_+ q_-`, strong connections and line-bundle idempotents, cyclic
//! traces and the index pairing between them.
//!
//! All algebraic work is carried out with arbitrary precision rationals.
//! The only floating point code lives in [`numrep`].

pub mod ambient;
pub mod connection;
pub mod error;
pub mod grading_lab;
pub mod gwa_core;
pub mod numrep;
pub(crate) mod rewrite;
pub mod scalar_poly;
pub mod trace_pairing;

pub use ambient::{AmbAlgebra, AmbElem, MonomialKey};
pub use connection::{IdemMatrix, StrongConnection, Tensor2};
pub use trace_pairing::TraceFunctional;
pub use error::{Error, Result};
pub use gwa_core::{GwaAlgebra, GwaElem};
pub use scalar_poly::{AffineAuto, PairPoly, Rational, UniPoly};

