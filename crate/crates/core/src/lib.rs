//! Exact dephasing dynamics of three qubits coupled to a common bosonic bath,
//! with entanglement class detection on the evolved states.
//!
//! The state at a dephasing point `(f, φ)` is obtained entrywise from the
//! initial state ([`model::evolve`]). Bath models map time to such points
//! ([`bath`]). Negativities, three-tangle and GME-concurrence bounds, and the
//! resulting class label come from [`measures`], with local-unitary
//! optimization in [`luopt`]. [`sweep`] runs grids and writes CSV and PPM
//! output.

pub mod bath;
pub mod error;
pub mod linalg;
pub mod luopt;
pub mod measures;
pub mod model;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
