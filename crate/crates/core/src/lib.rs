//! Structured-sparsity recovery toolkit.
//!
//! The crate covers both halves of structured sparse recovery:
//!
//! * the *discrete* route: exact combinatorial projections onto sparsity
//!   models ([`models`]) plugged into projected-gradient and model-based
//!   CoSaMP solvers, and submodular set-function minimization
//!   ([`submodular`]) driving a majorization-minimization scheme;
//! * the *convex* route: structured norms and their proximal operators
//!   ([`prox`]) used by proximal-gradient, primal-dual and ADMM solvers
//!   ([`solvers`]).
//!
//! Everything here is pure computation on dense `f64` slices and is
//! `no_std` (with `alloc`). File formats, timing and the experiment CLI live
//! in the companion `sparsity-harness` crate.

#![no_std]
// `num_traits::Float` imports turn redundant whenever std is in the crate graph.
#![allow(unused_imports)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod linalg;
pub mod metrics;
pub mod models;
pub mod operator;
pub mod prox;
pub mod rng;
pub mod signal;
pub mod solvers;
pub mod submodular;

pub use error::{Error, Result};
pub use metrics::{metrics, Metrics};
pub use operator::{lipschitz_estimate, LinearOperator};
pub use rng::SeededRng;
pub use signal::{Signal, Support};
