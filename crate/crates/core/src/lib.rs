//! Castelnuovo–Mumford regularity and related invariants of homogeneous
//! ideals in `k[X_0..X_n]` over a prime field.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: field, monomials, orders, polynomials, coordinate changes.
//! * [`groebner`]: Buchberger, normal forms, dimension, colon ideals,
//!   saturation.
//! * [`monomial_ideal`]: combinatorics of monomial ideals (Hilbert series,
//!   Betti numbers over the lcm lattice, stability).
//! * [`graded`]: graded pieces of `A/I`, multiplication maps, Koszul
//!   complexes.
//! * [`invariants`]: Hilbert data, Betti tables, regularity by four
//!   equivalent definitions, minimal resolutions and local cohomology
//!   through Ext duality.
//! * [`topdim`]: the purely top-dimensional part of the scheme of an ideal.
//! * [`hrao`]: the Hartshorne–Rao module through Koszul cohomology of a pair.
//! * [`bounds`]: checkers for regularity bounds.
//! * [`io`]: the ideal file format and JSON reports.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod hrao;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod monomial_ideal;
pub mod poly;
pub mod topdim;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};
