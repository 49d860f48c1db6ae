//! Cyclic local L∞-algebras as executable objects.
//!
//! The crate evaluates brackets of (local) L∞-algebras pointwise on jets,
//! checks generalized Jacobi identities and cyclic invariance numerically,
//! builds L∞-actions (adjoint, dg-adjoint and the infinity adjoint), and runs
//! the Noether pipeline for Einstein–Cartan–Palatini gravity down to the
//! Schwarzschild horizon charge and its Wald entropy.

pub mod actions;
pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod ecp;
pub mod error;
pub mod graded;
pub mod minkowski;
pub mod noether;
pub mod sampling;
pub mod schwarzschild;

pub use error::{Error, Result};
