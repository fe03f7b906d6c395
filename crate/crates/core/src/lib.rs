//! Exact enumeration and verification toolkit for the combinatorics of
//! tree-child networks.
//!
//! The crate is organised around five counting models that must agree with
//! each other:
//!
//! - [`words`]: brute-force enumeration of the constrained word classes
//!   `A_n`, `B_{n,k}`, `C_{n,k}` and `H_{n,k}`.
//! - [`tableaux`]: Young tableaux with walls and holes, the word/tableau
//!   bijection and the three-parameter `y` recurrence.
//! - [`paths`]: weighted lattice-path dynamic programs (2D projection and the
//!   bicoloured Dyck view).
//! - [`series`]: exact truncated power series and the generating functions
//!   `D`, `E`, `F_k`, `B_k`, `C_k`.
//! - [`laws`]: exact finite-`n` distributions of the `k = 1` statistics and
//!   their moment convergence.
//!
//! Everything is computed in exact integer or rational arithmetic. Inner
//! loops are data-parallel through [`par`] when the `parallel` feature is
//! enabled (the default).

pub mod cli;
pub mod error;
pub mod laws;
pub mod par;
pub mod paths;
pub mod series;
pub mod tableaux;
pub mod util;
pub mod words;

pub use error::{Error, Result};
