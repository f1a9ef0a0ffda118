//! Exact computation of Fitting ideals and noncommutative Fitting
//! invariants.
//!
//! The kernel computes classical Fitting ideals of finitely presented
//! modules over `Z`, over `Z` localized at a prime, and over imaginary
//! quadratic orders; and Fitting invariants over noncommutative orders:
//! localized group rings `Z_(p)[G]`, matrix orders, a hereditary congruence
//! order, and endomorphism orders of rank-two progenerators. Reduced norms,
//! generalized adjoints, integrality rings, denominator ideals and central
//! conductors are materialized as integer lattices in Hermite normal form
//! inside the Wedderburn coordinates of the centre, and compared up to
//! prime-to-`p` index.
//!
//! Everything is exact: scalars are big rationals, `Z_p` is emulated by the
//! localization of `Z` at `p`, and cyclotomic numbers live in the power
//! basis modulo the cyclotomic polynomial.

// indexed loops read naturally in matrix code
#![allow(clippy::needless_range_loop)]

pub mod commfit;
pub mod exact;
pub mod grp;
pub mod grpalg;
pub mod matlat;
pub mod morita;
pub mod ncfit;

pub use exact::{Int, Rat};
