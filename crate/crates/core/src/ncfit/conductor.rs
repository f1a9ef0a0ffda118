//! Central conductors. For group rings the conductor of the centre of a
//! maximal order into the order is computed per component as
//! (|G| / chi(1)) times the trace-form dual of the localized ring of
//! integers of the character field; the inverse different localizes, so the
//! trace dual of the localized ring is exactly the semilocal inverse
//! different. The variant conductor {x : x zeta(max) ⊆ zeta(order)} is an
//! exact lattice problem.

use super::{NcError, OrderContext, OrderDescriptor};
use crate::exact::Rat;
use crate::matlat::{lattice_from_dual_constraints, LocalLattice, Mat};
use num_traits::Zero;

/// Conductor data per component plus the aggregate lattice.
#[derive(Clone, Debug)]
pub struct ConductorData {
    /// |G| / chi(1) per component (1 for matrix-type orders).
    pub factors: Vec<Rat>,
    /// component lattices in their own coordinates
    pub component_lattices: Vec<LocalLattice>,
    /// the full conductor lattice in centre coordinates
    pub aggregate: LocalLattice,
}

/// The central conductor {x in zeta(max) : x * max ⊆ order}.
pub fn central_conductor(ctx: &OrderContext) -> Result<ConductorData, NcError> {
    let p = ctx.prime();
    match ctx.order() {
        OrderDescriptor::GroupRing { group, .. } => {
            let data = ctx.data().expect("group ring context");
            let cc = ctx.centers();
            let alg = cc.algebra();
            let form = alg.trace_form().expect("centre carries the trace form");
            let order = group.order() as i64;
            let mut factors = Vec::new();
            let mut component_lattices = Vec::new();
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for (i, comp) in data.components().iter().enumerate() {
                let (offset, dim) = cc.component_range(i);
                let factor = Rat::new(order.into(), (comp.dim() as i64).into());
                // trace dual of the standard lattice in this block:
                // {x : x . (T_i columns) in Z}
                let cols: Vec<Vec<Rat>> = (0..dim)
                    .map(|j| {
                        (0..dim)
                            .map(|r| form.at(offset + r, offset + j).clone())
                            .collect()
                    })
                    .collect();
                let dual = lattice_from_dual_constraints(dim, &cols)?;
                let local = LocalLattice::new(p, dual).scale(&factor);
                for v in local.lattice().basis_rat() {
                    let mut row = vec![Rat::zero(); cc.dim()];
                    row[offset..offset + dim].clone_from_slice(&v);
                    rows.push(row);
                }
                factors.push(factor);
                component_lattices.push(local);
            }
            let aggregate = LocalLattice::from_rat_rows(p, cc.dim(), &rows);
            Ok(ConductorData {
                factors,
                component_lattices,
                aggregate,
            })
        }
        OrderDescriptor::MatrixRing { .. } => {
            // the order is maximal: the conductor is everything
            let std = LocalLattice::standard(p, 1);
            Ok(ConductorData {
                factors: vec![Rat::from_integer(1.into())],
                component_lattices: vec![std.clone()],
                aggregate: std,
            })
        }
        OrderDescriptor::Hereditary { .. } => {
            // {x in Z_(p) : x M_2(Z_(p)) ⊆ order}: the off-diagonal
            // congruence forces p | x
            let lat = hereditary_conductor(ctx)?;
            Ok(ConductorData {
                factors: vec![Rat::from_integer(1.into())],
                component_lattices: vec![lat.clone()],
                aggregate: lat,
            })
        }
    }
}

/// Solve {x in Q : x * (each basis matrix of M_2) lies in the order lattice}
/// directly from the flattened lattices.
fn hereditary_conductor(ctx: &OrderContext) -> Result<LocalLattice, NcError> {
    let p = ctx.prime();
    let order = ctx.order();
    // order lattice basis in M_2 coordinates (row major)
    let order_rows: Vec<Vec<Rat>> = order
        .basis_elems()
        .iter()
        .map(|e| match e {
            super::OrderElem::Mat(m) => {
                vec![
                    m.at(0, 0).clone(),
                    m.at(0, 1).clone(),
                    m.at(1, 0).clone(),
                    m.at(1, 1).clone(),
                ]
            }
            _ => unreachable!(),
        })
        .collect();
    let order_lat = crate::matlat::IntegerLattice::from_rat_rows(4, &order_rows);
    let binv =
        crate::matlat::rat_inverse(&Mat::from_rows(order_lat.basis_rat())).expect("full rank");
    // constraint columns for scalar x: x * e_uv must lie in the order
    let mut cols = Vec::new();
    for uv in 0..4usize {
        for j in 0..4usize {
            // coordinate j of e_uv in the order basis
            let mut acc = Rat::zero();
            let unit: Vec<Rat> = (0..4)
                .map(|t| Rat::from_integer(if t == uv { 1 } else { 0 }.into()))
                .collect();
            for (k, u) in unit.iter().enumerate() {
                acc += u * binv.at(k, j);
            }
            cols.push(vec![acc]);
        }
    }
    let lat = lattice_from_dual_constraints(1, &cols)?;
    Ok(LocalLattice::new(p, lat))
}

/// The variant conductor {x in zeta(max) : x zeta(max) ⊆ zeta(order)}.
pub fn conductor_variant(ctx: &OrderContext) -> Result<LocalLattice, NcError> {
    let cc = ctx.centers();
    Ok(cc
        .zeta_max()
        .conductor_into(cc.zeta_lambda(), cc.algebra())?)
}
