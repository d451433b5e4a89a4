//! Jordan-type tables for two-part stable partitions.
//!
//! For a stable partition `Q = (u, u - r)` with `u > r >= 2`, the partitions
//! `P` whose generic commuting nilpotent type is `Q` form an
//! `(r - 1) x (u - r)` box indexed by `(k, l)`. This crate computes that box
//! from the min-plus corank profile of a generic matrix satisfying the
//! defining equations of each cell, cross-checks it against closed forms,
//! and verifies it by exact linear algebra over a large prime field.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the `jtable` crate.

#![no_std]

extern crate alloc;

pub mod equations;
mod error;
pub mod field;
pub mod linalg;
pub mod partition;
pub mod table;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Partition, StableQ};
pub use table::{full_table, JTable, TableEntry, TableIndex};
