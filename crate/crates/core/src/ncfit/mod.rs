//! Fitting invariants over noncommutative orders: localized group rings
//! `Z_(p)[G]`, matrix orders `M_n(Z_(p))`, and the hereditary congruence
//! order `{[[a,b],[c,d]] in M_2(Z_(p)) : p | b}`. Invariants, integrality
//! rings and
//! denominator-ideal bounds, central conductors and duality transforms are
//! all materialized as lattices in the Wedderburn coordinates of the centre.

mod bounds;
mod center;
mod conductor;
mod fitting;
mod ops;

use crate::exact::{is_p_integral, p_valuation, Int, Rat, Valuation};
use crate::grp::FiniteGroup;
use crate::grpalg::{GaElem, GaMat, WedderburnData};
use crate::matlat::{Mat, MatError};
use std::fmt;
use std::sync::Arc;

pub use bounds::{
    check_denominator_ideal_property, denominator_bounds, integrality_ring_bounds, DenomBounds,
    IntegralityBounds, Sampler,
};
pub use center::CenterCoords;
pub use conductor::{central_conductor, conductor_variant, ConductorData};
pub use fitting::{
    fitt_join_family, fitt_presentation, join_presentations, presentation_of_submodule,
    FittingInvariantNC,
};
pub use ops::{
    additivity_compare, dual_presentation, sharp_lattice, verify_annihilation, AdditivityReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcError {
    NotInOrder(String),
    ShapeMismatch,
    OrderMismatch,
    NeedsGroupRing,
    NeedsSquare,
    InfiniteCokernel,
    Nrd(String),
    Mat(MatError),
}

impl fmt::Display for NcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcError::NotInOrder(msg) => write!(f, "entry not in the order: {msg}"),
            NcError::ShapeMismatch => write!(f, "presentation shapes are incompatible"),
            NcError::OrderMismatch => write!(f, "presentations live over different orders"),
            NcError::NeedsGroupRing => write!(f, "operation is defined for group rings only"),
            NcError::NeedsSquare => write!(f, "operation needs a square presentation"),
            NcError::InfiniteCokernel => write!(f, "cokernel is not finite"),
            NcError::Nrd(msg) => write!(f, "{msg}"),
            NcError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for NcError {}

impl From<MatError> for NcError {
    fn from(e: MatError) -> Self {
        NcError::Mat(e)
    }
}

impl From<crate::grpalg::NrdError> for NcError {
    fn from(e: crate::grpalg::NrdError) -> Self {
        NcError::Nrd(e.to_string())
    }
}

/// The supported order shapes.
#[derive(Clone)]
pub enum OrderDescriptor {
    /// `Z_(p)[G]`.
    GroupRing { group: Arc<FiniteGroup>, p: u64 },
    /// `M_n(Z_(p))`.
    MatrixRing { n: usize, p: u64 },
    /// `{[[a,b],[c,d]] in M_2(Z_(p)) : p | b}`.
    Hereditary { p: u64 },
}

impl fmt::Debug for OrderDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderDescriptor::GroupRing { group, p } => write!(f, "Z_({p})[{:?}]", group),
            OrderDescriptor::MatrixRing { n, p } => write!(f, "M{n}(Z_({p}))"),
            OrderDescriptor::Hereditary { p } => write!(f, "hereditary congruence order at {p}"),
        }
    }
}

impl OrderDescriptor {
    pub fn prime(&self) -> u64 {
        match self {
            OrderDescriptor::GroupRing { p, .. } => *p,
            OrderDescriptor::MatrixRing { p, .. } => *p,
            OrderDescriptor::Hereditary { p } => *p,
        }
    }

    /// Dimension of the order as a Z_(p)-lattice.
    pub fn flat_dim(&self) -> usize {
        match self {
            OrderDescriptor::GroupRing { group, .. } => group.order(),
            OrderDescriptor::MatrixRing { n, .. } => n * n,
            OrderDescriptor::Hereditary { .. } => 4,
        }
    }

    fn same_as(&self, other: &OrderDescriptor) -> bool {
        match (self, other) {
            (
                OrderDescriptor::GroupRing { group: g1, p: p1 },
                OrderDescriptor::GroupRing { group: g2, p: p2 },
            ) => p1 == p2 && g1 == g2,
            (
                OrderDescriptor::MatrixRing { n: n1, p: p1 },
                OrderDescriptor::MatrixRing { n: n2, p: p2 },
            ) => n1 == n2 && p1 == p2,
            (OrderDescriptor::Hereditary { p: p1 }, OrderDescriptor::Hereditary { p: p2 }) => {
                p1 == p2
            }
            _ => false,
        }
    }

    /// Check membership of an element.
    pub fn check_elem(&self, e: &OrderElem) -> Result<(), NcError> {
        match (self, e) {
            (OrderDescriptor::GroupRing { group, p }, OrderElem::Ga(x)) => {
                if x.group().order() != group.order() {
                    return Err(NcError::NotInOrder("wrong group".into()));
                }
                if !x.is_p_integral(*p) {
                    return Err(NcError::NotInOrder(format!(
                        "coefficients not integral at {p}"
                    )));
                }
                Ok(())
            }
            (OrderDescriptor::MatrixRing { n, p }, OrderElem::Mat(m)) => {
                if m.rows() != *n || m.cols() != *n {
                    return Err(NcError::NotInOrder("wrong matrix size".into()));
                }
                if !(0..*n).all(|r| m.row(r).iter().all(|x| is_p_integral(x, *p))) {
                    return Err(NcError::NotInOrder(format!("entries not integral at {p}")));
                }
                Ok(())
            }
            (OrderDescriptor::Hereditary { p }, OrderElem::Mat(m)) => {
                if m.rows() != 2 || m.cols() != 2 {
                    return Err(NcError::NotInOrder("hereditary order sits in 2x2".into()));
                }
                if !(0..2).all(|r| m.row(r).iter().all(|x| is_p_integral(x, *p))) {
                    return Err(NcError::NotInOrder(format!("entries not integral at {p}")));
                }
                // congruence: p divides the upper right entry
                let b = m.at(0, 1);
                let ok = match p_valuation(b, &Int::from(*p)) {
                    Valuation::Finite(v) => v >= 1,
                    Valuation::Infinite => true,
                };
                if !ok {
                    return Err(NcError::NotInOrder(format!(
                        "upper-right entry not divisible by {p}"
                    )));
                }
                Ok(())
            }
            _ => Err(NcError::NotInOrder(
                "element kind does not match order".into(),
            )),
        }
    }

    /// Z_(p)-basis of the order, as elements.
    pub fn basis_elems(&self) -> Vec<OrderElem> {
        match self {
            OrderDescriptor::GroupRing { group, .. } => (0..group.order())
                .map(|g| OrderElem::Ga(GaElem::from_group_elem(group, g)))
                .collect(),
            OrderDescriptor::MatrixRing { n, .. } => {
                let mut out = Vec::new();
                for r in 0..*n {
                    for c in 0..*n {
                        out.push(OrderElem::Mat(unit_matrix(*n, r, c, 1)));
                    }
                }
                out
            }
            OrderDescriptor::Hereditary { p } => vec![
                OrderElem::Mat(unit_matrix(2, 0, 0, 1)),
                OrderElem::Mat(unit_matrix(2, 0, 1, *p as i64)),
                OrderElem::Mat(unit_matrix(2, 1, 0, 1)),
                OrderElem::Mat(unit_matrix(2, 1, 1, 1)),
            ],
        }
    }

    pub fn zero_elem(&self) -> OrderElem {
        match self {
            OrderDescriptor::GroupRing { group, .. } => OrderElem::Ga(GaElem::zero(group)),
            OrderDescriptor::MatrixRing { n, .. } => {
                OrderElem::Mat(Mat::from_fn(*n, *n, |_, _| Rat::from_integer(0.into())))
            }
            OrderDescriptor::Hereditary { .. } => {
                OrderElem::Mat(Mat::from_fn(2, 2, |_, _| Rat::from_integer(0.into())))
            }
        }
    }

    pub fn one_elem(&self) -> OrderElem {
        match self {
            OrderDescriptor::GroupRing { group, .. } => OrderElem::Ga(GaElem::one(group)),
            OrderDescriptor::MatrixRing { n, .. } => OrderElem::Mat(rat_identity(*n)),
            OrderDescriptor::Hereditary { .. } => OrderElem::Mat(rat_identity(2)),
        }
    }
}

fn unit_matrix(n: usize, r: usize, c: usize, v: i64) -> Mat<Rat> {
    Mat::from_fn(n, n, |i, j| {
        if (i, j) == (r, c) {
            Rat::from_integer(v.into())
        } else {
            Rat::from_integer(0.into())
        }
    })
}

fn rat_identity(n: usize) -> Mat<Rat> {
    Mat::from_fn(n, n, |i, j| {
        Rat::from_integer(if i == j { 1 } else { 0 }.into())
    })
}

/// An element of one of the supported orders.
#[derive(Clone, PartialEq, Debug)]
pub enum OrderElem {
    Ga(GaElem),
    Mat(Mat<Rat>),
}

impl OrderElem {
    pub fn add(&self, other: &OrderElem) -> OrderElem {
        match (self, other) {
            (OrderElem::Ga(a), OrderElem::Ga(b)) => OrderElem::Ga(a.add(b)),
            (OrderElem::Mat(a), OrderElem::Mat(b)) => OrderElem::Mat(a.add_mat(b)),
            _ => panic!("mixed order elements"),
        }
    }

    pub fn mul(&self, other: &OrderElem) -> OrderElem {
        match (self, other) {
            (OrderElem::Ga(a), OrderElem::Ga(b)) => OrderElem::Ga(a.mul(b)),
            (OrderElem::Mat(a), OrderElem::Mat(b)) => OrderElem::Mat(a.matmul(b)),
            _ => panic!("mixed order elements"),
        }
    }

    pub fn scale(&self, r: &Rat) -> OrderElem {
        match self {
            OrderElem::Ga(a) => OrderElem::Ga(a.scale(r)),
            OrderElem::Mat(a) => OrderElem::Mat(a.map(|x| x * r)),
        }
    }

    /// Coordinates in the flattened order basis (group coefficients, or
    /// row-major matrix entries with the congruence scaling divided out).
    pub fn flatten(&self, order: &OrderDescriptor) -> Vec<Rat> {
        match (self, order) {
            (OrderElem::Ga(x), OrderDescriptor::GroupRing { .. }) => x.coeffs().to_vec(),
            (OrderElem::Mat(m), OrderDescriptor::MatrixRing { n, .. }) => {
                let mut v = Vec::with_capacity(n * n);
                for r in 0..*n {
                    v.extend(m.row(r).iter().cloned());
                }
                v
            }
            (OrderElem::Mat(m), OrderDescriptor::Hereditary { p }) => {
                // basis (e11, p e12, e21, e22)
                vec![
                    m.at(0, 0).clone(),
                    m.at(0, 1) / Rat::from_integer((*p).into()),
                    m.at(1, 0).clone(),
                    m.at(1, 1).clone(),
                ]
            }
            _ => panic!("element kind does not match order"),
        }
    }
}

/// A finite presentation over an order: the a x b matrix h of the map
/// sending a row vector x in Lambda^a to x h in Lambda^b, so the presented
/// left module is the row-space quotient Lambda^b / (rows of h).
#[derive(Clone, Debug)]
pub struct PresentationNC {
    order: OrderDescriptor,
    a: usize,
    b: usize,
    entries: Vec<OrderElem>,
}

impl PresentationNC {
    pub fn new(
        order: OrderDescriptor,
        rows: Vec<Vec<OrderElem>>,
    ) -> Result<PresentationNC, NcError> {
        let a = rows.len();
        if a == 0 || rows[0].is_empty() {
            return Err(NcError::ShapeMismatch);
        }
        let b = rows[0].len();
        if rows.iter().any(|r| r.len() != b) {
            return Err(NcError::ShapeMismatch);
        }
        for row in &rows {
            for e in row {
                order.check_elem(e)?;
            }
        }
        Ok(PresentationNC {
            order,
            a,
            b,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> &OrderDescriptor {
        &self.order
    }

    pub fn rows_a(&self) -> usize {
        self.a
    }

    pub fn cols_b(&self) -> usize {
        self.b
    }

    pub fn at(&self, r: usize, c: usize) -> &OrderElem {
        &self.entries[r * self.b + c]
    }

    pub fn row(&self, r: usize) -> Vec<OrderElem> {
        (0..self.b).map(|c| self.at(r, c).clone()).collect()
    }

    /// The identity presentation of the zero module.
    pub fn identity(order: OrderDescriptor, b: usize) -> PresentationNC {
        let one = order.one_elem();
        let zero = order.zero_elem();
        let rows = (0..b)
            .map(|r| {
                (0..b)
                    .map(|c| if r == c { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        PresentationNC::new(order, rows).expect("identity presentation")
    }

    /// Group-ring presentations as a matrix over `Q[G]`.
    pub fn as_ga_mat(&self) -> Result<GaMat, NcError> {
        let OrderDescriptor::GroupRing { group, .. } = &self.order else {
            return Err(NcError::NeedsGroupRing);
        };
        Ok(GaMat::from_fn(group, self.a, self.b, |r, c| {
            match self.at(r, c) {
                OrderElem::Ga(x) => x.clone(),
                OrderElem::Mat(_) => unreachable!("group ring entries are group algebra elements"),
            }
        }))
    }

    /// Block-diagonal join of two presentations (the direct sum module).
    pub fn block_diag(&self, other: &PresentationNC) -> Result<PresentationNC, NcError> {
        if !self.order.same_as(&other.order) {
            return Err(NcError::OrderMismatch);
        }
        let zero = self.order.zero_elem();
        let rows = (0..self.a + other.a)
            .map(|r| {
                (0..self.b + other.b)
                    .map(|c| {
                        if r < self.a && c < self.b {
                            self.at(r, c).clone()
                        } else if r >= self.a && c >= self.b {
                            other.at(r - self.a, c - self.b).clone()
                        } else {
                            zero.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        PresentationNC::new(self.order.clone(), rows)
    }

    /// Entrywise augmentation of a group-ring presentation: the base-changed
    /// presentation over Z_(p).
    pub fn augmented(&self) -> Result<crate::commfit::CommPresentation, NcError> {
        let OrderDescriptor::GroupRing { p, .. } = &self.order else {
            return Err(NcError::NeedsGroupRing);
        };
        let m = self.as_ga_mat()?.augment();
        Ok(crate::commfit::CommPresentation::Local(*p, m))
    }
}

/// Everything fixed by the choice of order: splitting data (for group
/// rings) and the centre coordinates.
pub struct OrderContext {
    order: OrderDescriptor,
    data: Option<WedderburnData>,
    centers: CenterCoords,
}

impl OrderContext {
    pub fn new(order: OrderDescriptor) -> Result<OrderContext, NcError> {
        let data = match &order {
            OrderDescriptor::GroupRing { group, .. } => Some(
                crate::grpalg::builtin_wedderburn(group)
                    .map_err(|e| NcError::Nrd(e.to_string()))?,
            ),
            _ => None,
        };
        Self::with_data(order, data)
    }

    pub fn with_data(
        order: OrderDescriptor,
        data: Option<WedderburnData>,
    ) -> Result<OrderContext, NcError> {
        if matches!(order, OrderDescriptor::GroupRing { .. }) && data.is_none() {
            return Err(NcError::NeedsGroupRing);
        }
        let centers = CenterCoords::build(&order, data.as_ref())?;
        Ok(OrderContext {
            order,
            data,
            centers,
        })
    }

    pub fn order(&self) -> &OrderDescriptor {
        &self.order
    }

    pub fn prime(&self) -> u64 {
        self.order.prime()
    }

    pub fn data(&self) -> Option<&WedderburnData> {
        self.data.as_ref()
    }

    pub fn centers(&self) -> &CenterCoords {
        &self.centers
    }
}
