//! Determinants of block matrices over noncommutative rings of matrices.
//!
//! An `mn × mn` matrix over a commutative ring `R` can be read as an `n × n`
//! matrix `M` whose entries are `m × m` blocks. The row-determinant `Det M`
//! is then itself a block, and the question is when
//! `det(Det M) = det M`. The answer depends only on which blocks commute,
//! recorded as a graph on the block positions.
//!
//! Modules, bottom up:
//! - [`ring`]: exact scalars (integers, prime fields, `Z[x]`).
//! - [`matrix`]: dense matrices, division-free determinants, block views.
//! - [`conditions`]: commutativity graphs and the standard families.
//! - [`ncdet`]: row-determinants, cofactors and the induction trace.
//! - [`traces`]: symbolic checks in a partially commutative algebra.
//! - [`verify`]: generators, randomized campaigns and explicit counterexamples.

pub mod conditions;
pub mod matrix;
pub mod ncdet;
pub mod perm;
pub mod ring;
pub mod traces;
pub mod verify;

pub use conditions::{Cell, Condition, ConditionFamily, Named};
pub use matrix::{BlockMatrix, Matrix};
pub use perm::Permutation;
pub use ring::{Ring, RingValue};
