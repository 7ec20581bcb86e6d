//! State-vector simulation of Grover and Bernstein-Vazirani search with
//! query accounting, per-timestep entanglement certification, and a
//! single-qudit realization of the same circuits with its precision cost.
//!
//! With the default `parallel` feature the gate kernels, dense qudit layers
//! and trajectory analysis run on rayon; without it everything is
//! sequential. Results are bit-identical either way.

pub mod algorithms;
pub mod entanglement;
mod error;
pub mod linalg;
pub mod oracles;
pub mod par;
pub mod qudit;

pub use error::{Error, Result};
