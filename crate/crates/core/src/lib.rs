//! Feasibility of integer programs `Ax = b, x >= 0` with non-negative
//! constraint matrices, driven by the path-width of the column matroid of `A`.
//!
//! The crate is organised in five layers:
//!
//! - [`linalg`]: exact rational linear algebra (ranks, spans, subspace
//!   intersections) over arbitrary-precision integers.
//! - [`matroid`]: the column-matroid connectivity function, widths of column
//!   orderings, and a small-instance optimal ordering search.
//! - [`cnf`]: CNF formulas, DIMACS parsing, a brute-force satisfiability
//!   oracle, and the block/assignment indexing shared by the reductions.
//! - [`reductions`]: three CNF-to-IP instance compilers together with
//!   satisfying-assignment witness builders.
//! - [`solver`]: feasibility engines (ordering-driven dynamic program, box
//!   reachability, brute force) returning verified certificates.
//!
//! Everything here is `no_std + alloc`; file formats, the CLI, and anything
//! that needs a clock live in the companion `ipwidth-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cnf;
pub mod echelon;
pub mod linalg;
pub mod matroid;
pub mod reductions;
pub mod solver;
