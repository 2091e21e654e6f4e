//! Exact computation of both sides of the Birch-Tate formula for algebraic
//! tori over Q split by abelian totally real fields, together with the
//! lattice-cohomological toolkit around it.

pub mod arith;
pub mod catalog;
pub mod cohomology;
pub mod dirichlet;
pub mod engine;
pub mod error;
pub mod galois;
pub mod group;
pub mod induction;
pub mod lattice;
pub mod manifest;
pub mod runner;

pub use error::{Error, Result};
