//! Multifractal analysis of multiple ergodic averages on symbolic spaces.
//!
//! The crate is organised by subsystem:
//!
//! * [`symbolic`]: alphabets, words, the chains `{i q^j}` that split the
//!   positive integers, multiplicative semigroups and finite automata
//!   describing closed generating sets.
//! * [`thermo`]: the nonlinear transfer-operator fixed point, its pressure
//!   function and the Legendre spectrum of multiple ergodic averages.
//! * [`markov`] and [`telescopic`]: finite-order Markov measures and the
//!   telescopic product measures built from them.
//! * [`multiplicative`]: Hausdorff and box dimensions of sets invariant
//!   under `x -> (x_{rn})`.
//! * [`walks`]: oriented walks driven by a finite-order linear map.
//! * [`riesz`]: Riesz products on `{-1,1}^N` over Walsh characters and the
//!   doubling/tripling averages.
//! * [`io`], [`verify`] and [`cli`]: file formats, the cross-check harness
//!   and the command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod io;
pub mod markov;
pub mod multiplicative;
pub mod numeric;
pub mod riesz;
pub mod symbolic;
pub mod telescopic;
pub mod thermo;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
