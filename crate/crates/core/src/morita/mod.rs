//! Quadratic orders, their ideals, endomorphism orders of rank-two
//! progenerators, and Fitting invariants defined through the induced module
//! equivalence.

mod endorder;
mod quad;

pub use endorder::{
    fitt_over_base, hom_quotient_presentation, morita_fitt, present_quotient_quad,
    quotient_by_ideal_presentation, transport_presentation, twist_check, EndOrder, MoritaEntry,
    MoritaPresentation, MoritaRing,
};
pub use quad::{is_principal, quad_algebra, QuadElem, QuadError, QuadIdeal, QuadraticOrder};
