//! Duality, annihilation checks, and the additivity comparison.

use super::fitting::{fitt_presentation, row_space_lattice, FittingInvariantNC};
use super::{NcError, OrderContext, OrderDescriptor, OrderElem, PresentationNC};
use crate::exact::Rat;
use crate::matlat::LocalLattice;

/// The transpose-sharp presentation: its reduced norms are the
/// sharp-transforms of the original ones, realizing the linear dual of the
/// presented map. Group rings only, square shape.
pub fn dual_presentation(pres: &PresentationNC) -> Result<PresentationNC, NcError> {
    let OrderDescriptor::GroupRing { .. } = pres.order() else {
        return Err(NcError::NeedsGroupRing);
    };
    if pres.rows_a() != pres.cols_b() {
        return Err(NcError::NeedsSquare);
    }
    let m = pres.as_ga_mat()?.transpose_sharp();
    let rows: Vec<Vec<OrderElem>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| OrderElem::Ga(m.at(r, c).clone()))
                .collect()
        })
        .collect();
    PresentationNC::new(pres.order().clone(), rows)
}

/// Apply the sharp transform to an invariant lattice in centre coordinates.
pub fn sharp_lattice(ctx: &OrderContext, lat: &LocalLattice) -> Result<LocalLattice, NcError> {
    let data = ctx.data().ok_or(NcError::NeedsGroupRing)?;
    let t = ctx.centers().sharp_matrix(data.conductor());
    Ok(ctx.centers().transform_lattice(lat, &t))
}

/// True iff the central element with the given centre coordinates
/// annihilates the (finite) cokernel of the presentation.
pub fn verify_annihilation(
    ctx: &OrderContext,
    pres: &PresentationNC,
    x_coords: &[Rat],
) -> Result<bool, NcError> {
    let row_space = row_space_lattice(ctx, pres);
    let dim = pres.order().flat_dim();
    let ambient = pres.cols_b() * dim;
    if row_space.rank() != ambient {
        return Err(NcError::InfiniteCokernel);
    }
    // the central element as an order element
    let x_elem = match ctx.order() {
        OrderDescriptor::GroupRing { .. } => {
            let data = ctx.data().expect("group ring context");
            OrderElem::Ga(ctx.centers().coords_to_central(data, x_coords))
        }
        OrderDescriptor::MatrixRing { n, .. } => {
            let mut m = crate::matlat::Mat::from_fn(*n, *n, |_, _| Rat::from_integer(0.into()));
            for i in 0..*n {
                m.set(i, i, x_coords[0].clone());
            }
            OrderElem::Mat(m)
        }
        OrderDescriptor::Hereditary { .. } => {
            let mut m = crate::matlat::Mat::from_fn(2, 2, |_, _| Rat::from_integer(0.into()));
            for i in 0..2 {
                m.set(i, i, x_coords[0].clone());
            }
            OrderElem::Mat(m)
        }
    };
    // x annihilates the quotient iff x e_v lies in the row space for every
    // standard slot v (the row space is closed under the left action)
    for v in 0..pres.cols_b() {
        let mut row: Vec<OrderElem> = (0..pres.cols_b())
            .map(|_| ctx.order().zero_elem())
            .collect();
        row[v] = x_elem.clone();
        let flat = super::fitting::flatten_row(pres.order(), &row);
        if !row_space.contains(&flat) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct AdditivityReport {
    pub product: LocalLattice,
    pub direct_sum: LocalLattice,
    pub equal: bool,
    pub product_contained: bool,
}

/// Compare the product of two invariants with the invariant of the direct
/// sum. The direct-sum module is presented by the block-diagonal join unless
/// an explicit presentation (for instance a quadratic one) is supplied.
pub fn additivity_compare(
    ctx: &OrderContext,
    p1: &PresentationNC,
    p2: &PresentationNC,
    direct: Option<&PresentationNC>,
    int_ring: Option<&LocalLattice>,
    cap: u128,
) -> Result<AdditivityReport, NcError> {
    let f1 = fitt_presentation(ctx, p1, int_ring, cap)?;
    let f2 = fitt_presentation(ctx, p2, int_ring, cap)?;
    let block = p1.block_diag(p2)?;
    let fd: FittingInvariantNC = match direct {
        Some(d) => fitt_presentation(ctx, d, int_ring, cap)?,
        None => fitt_presentation(ctx, &block, int_ring, cap)?,
    };
    let product = f1.lattice.product(&f2.lattice, ctx.centers().algebra())?;
    let product_contained = product.subset_of(&fd.lattice)?;
    let equal = product.eq_local(&fd.lattice)?;
    Ok(AdditivityReport {
        product,
        direct_sum: fd.lattice,
        equal,
        product_contained,
    })
}
