//! Binary operations on finite carriers and binary G-spaces.
//!
//! A binary operation on a carrier of `n` points is an `n x n` table
//! `f(t, x)`; under the composition `(f * g)(t, x) = f(t, g(t, x))` the
//! tables form a monoid whose invertible elements form a group of order
//! `(n!)^n`. A binary action of a finite group assigns one invertible
//! table to each group element, compatibly with the group law. This
//! crate builds those objects extensionally, checks every defining law
//! by exhaustive scan, computes orbits and invariant subsets, and
//! verifies the affine binary action of invertible real matrices
//! numerically.

pub mod action;
pub mod affine;
pub mod binop;
pub mod error;
pub mod group;
pub mod json;
pub mod orbits;

pub use action::{
    enumerate_biequivariant_maps, is_biequivariant, is_equivariant, lift_map, ActionViolation,
    BinaryActionTable, FiniteMap, OrdinaryActionTable,
};
pub use affine::{NumericReport, RealMatrix, RealVector};
pub use binop::{BinOpTable, Carrier, PermFamily, Permutation};
pub use error::Error;
pub use group::{FiniteGroup, Fingerprint};
pub use orbits::{DiagonalInvarianceReport, Subset};
