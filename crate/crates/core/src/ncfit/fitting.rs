//! The Fitting invariant of a presentation: reduced norms of the b x b
//! submatrices, spanned over the centre of the order (and over a certified
//! integrality ring when one is available) as a lattice in centre
//! coordinates.

use super::{NcError, OrderContext, OrderDescriptor, OrderElem, PresentationNC};
use crate::exact::{lcm, Int, Rat};
use crate::grpalg::nrd;
use crate::matlat::{kernel_int, LocalLattice, Mat};
use num_traits::{One, Zero};

/// A computed Fitting invariant: the reduced-norm generators in centre
/// coordinates and the lattice they span over the centre of the order.
/// `max_certified` is set only for quadratic presentations (a = b); the
/// lattice of a non-quadratic presentation is a certified lower bound for
/// the maximal invariant.
#[derive(Clone, Debug)]
pub struct FittingInvariantNC {
    pub generators: Vec<Vec<Rat>>,
    pub lattice: LocalLattice,
    pub is_zero: bool,
    pub max_certified: bool,
}

impl FittingInvariantNC {
    pub fn zero(ctx: &OrderContext) -> FittingInvariantNC {
        FittingInvariantNC {
            generators: Vec::new(),
            lattice: LocalLattice::zero(ctx.prime(), ctx.centers().dim()),
            is_zero: true,
            max_certified: false,
        }
    }
}

/// Reduced norm of one square submatrix, in centre coordinates.
pub(crate) fn minor_nrd_coords(
    ctx: &OrderContext,
    pres: &PresentationNC,
    row_set: &[usize],
) -> Result<Vec<Rat>, NcError> {
    match ctx.order() {
        OrderDescriptor::GroupRing { .. } => {
            let h = pres.as_ga_mat()?;
            let sub = h.submatrix(row_set, &(0..pres.cols_b()).collect::<Vec<_>>());
            let data = ctx.data().expect("group ring context carries data");
            let t = nrd(&sub, data)?;
            Ok(ctx.centers().tuple_to_coords(&t))
        }
        OrderDescriptor::MatrixRing { n, .. } => {
            let det = flattened_det(pres, row_set, *n)?;
            Ok(vec![det])
        }
        OrderDescriptor::Hereditary { .. } => {
            let det = flattened_det(pres, row_set, 2)?;
            Ok(vec![det])
        }
    }
}

fn flattened_det(pres: &PresentationNC, row_set: &[usize], n: usize) -> Result<Rat, NcError> {
    let b = pres.cols_b();
    let big = Mat::from_fn(b * n, b * n, |r, c| {
        let (br, ir) = (r / n, r % n);
        let (bc, ic) = (c / n, c % n);
        match pres.at(row_set[br], bc) {
            OrderElem::Mat(m) => m.at(ir, ic).clone(),
            OrderElem::Ga(_) => unreachable!("matrix orders hold matrix entries"),
        }
    });
    Ok(big.det()?)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Span coordinate generators over the centre of the order (times an
/// optional certified integrality-ring lattice).
pub(crate) fn span_over_center(
    ctx: &OrderContext,
    gens: &[Vec<Rat>],
    int_ring: Option<&LocalLattice>,
) -> LocalLattice {
    let cc = ctx.centers();
    let mut rows = Vec::new();
    let multipliers: Vec<Vec<Rat>> = match int_ring {
        Some(l) => l.lattice().basis_rat(),
        None => cc.zeta_lambda().lattice().basis_rat(),
    };
    for g in gens {
        for m in &multipliers {
            rows.push(cc.algebra().mul_vec(g, m));
        }
    }
    LocalLattice::from_rat_rows(ctx.prime(), cc.dim(), &rows)
}

/// Fitting invariant of a presentation. Zero when a < b; otherwise the span
/// of the reduced norms of all b x b submatrices. `max_certified` is set for
/// quadratic presentations.
pub fn fitt_presentation(
    ctx: &OrderContext,
    pres: &PresentationNC,
    int_ring: Option<&LocalLattice>,
    cap: u128,
) -> Result<FittingInvariantNC, NcError> {
    let (a, b) = (pres.rows_a(), pres.cols_b());
    if a < b {
        return Ok(FittingInvariantNC::zero(ctx));
    }
    let count = binomial(a, b);
    if count > cap {
        return Err(NcError::Mat(crate::matlat::MatError::MinorCapExceeded {
            needed: count,
            cap,
        }));
    }
    let mut gens = Vec::new();
    for row_set in combinations(a, b) {
        gens.push(minor_nrd_coords(ctx, pres, &row_set)?);
    }
    let lattice = span_over_center(ctx, &gens, int_ring);
    let is_zero = lattice.is_zero();
    Ok(FittingInvariantNC {
        generators: gens,
        lattice,
        is_zero,
        max_certified: a == b,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Invariant of the join of a family of presentations of one module. The
/// maximal invariant is an existence statement with no search procedure, so
/// `assert_saturated` is the caller's claim that the family exhausts their
/// presentations of interest; only then is the flag set (a quadratic member
/// would set it anyway).
pub fn fitt_join_family(
    ctx: &OrderContext,
    family: &[PresentationNC],
    int_ring: Option<&LocalLattice>,
    assert_saturated: bool,
    cap: u128,
) -> Result<FittingInvariantNC, NcError> {
    assert!(!family.is_empty());
    let mut joined = family[0].clone();
    for pres in &family[1..] {
        joined = join_presentations(&joined, pres)?;
    }
    let mut fitt = fitt_presentation(ctx, &joined, int_ring, cap)?;
    // the join dominates every member
    for pres in family {
        let f = fitt_presentation(ctx, pres, int_ring, cap)?;
        if !f.lattice.subset_of(&fitt.lattice)? {
            return Err(NcError::ShapeMismatch);
        }
    }
    if assert_saturated {
        fitt.max_certified = true;
    }
    Ok(fitt)
}

/// Stack two presentations of the same module: the invariant of the join
/// contains both inputs. Shapes are aligned by padding the smaller b with
/// an identity block first.
pub fn join_presentations(
    p1: &PresentationNC,
    p2: &PresentationNC,
) -> Result<PresentationNC, NcError> {
    if !same_order(p1, p2) {
        return Err(NcError::OrderMismatch);
    }
    let b = p1.cols_b().max(p2.cols_b());
    let p1 = pad_to(p1, b)?;
    let p2 = pad_to(p2, b)?;
    let mut rows: Vec<Vec<OrderElem>> = (0..p1.rows_a()).map(|r| p1.row(r)).collect();
    rows.extend((0..p2.rows_a()).map(|r| p2.row(r)));
    PresentationNC::new(p1.order().clone(), rows)
}

fn same_order(p1: &PresentationNC, p2: &PresentationNC) -> bool {
    match (p1.order(), p2.order()) {
        (
            OrderDescriptor::GroupRing { group: g1, p: q1 },
            OrderDescriptor::GroupRing { group: g2, p: q2 },
        ) => g1 == g2 && q1 == q2,
        (
            OrderDescriptor::MatrixRing { n: n1, p: q1 },
            OrderDescriptor::MatrixRing { n: n2, p: q2 },
        ) => n1 == n2 && q1 == q2,
        (OrderDescriptor::Hereditary { p: q1 }, OrderDescriptor::Hereditary { p: q2 }) => q1 == q2,
        _ => false,
    }
}

/// Pad h (a x b) to [[h, 0], [0, 1]] of column count b_target; the presented
/// module is unchanged.
fn pad_to(pres: &PresentationNC, b_target: usize) -> Result<PresentationNC, NcError> {
    let (a, b) = (pres.rows_a(), pres.cols_b());
    if b == b_target {
        return Ok(pres.clone());
    }
    let extra = b_target - b;
    let one = pres.order().one_elem();
    let zero = pres.order().zero_elem();
    let rows: Vec<Vec<OrderElem>> = (0..a + extra)
        .map(|r| {
            (0..b_target)
                .map(|c| {
                    if r < a && c < b {
                        pres.at(r, c).clone()
                    } else if r >= a && c >= b && r - a == c - b {
                        one.clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    PresentationNC::new(pres.order().clone(), rows)
}

/// Flatten a row vector in Lambda^b to Q-coordinates of length b * dim.
pub(crate) fn flatten_row(order: &OrderDescriptor, row: &[OrderElem]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(row.len() * order.flat_dim());
    for e in row {
        out.extend(e.flatten(order));
    }
    out
}

/// Left multiples of a row vector by every order basis element.
pub(crate) fn lambda_span_rows(order: &OrderDescriptor, row: &[OrderElem]) -> Vec<Vec<Rat>> {
    order
        .basis_elems()
        .iter()
        .map(|e| {
            let shifted: Vec<OrderElem> = row.iter().map(|x| e.mul(x)).collect();
            flatten_row(order, &shifted)
        })
        .collect()
}

/// Present the left submodule K of Lambda^b spanned by the given rows: the
/// returned presentation has cokernel isomorphic to K, on the supplied
/// generators, with relation rows obtained as the integral syzygies of the
/// flattened generators.
pub fn presentation_of_submodule(
    ctx: &OrderContext,
    gens: &[Vec<OrderElem>],
) -> Result<PresentationNC, NcError> {
    let order = ctx.order();
    assert!(!gens.is_empty());
    let b = gens[0].len();
    if gens.iter().any(|g| g.len() != b) {
        return Err(NcError::ShapeMismatch);
    }
    for g in gens {
        for e in g {
            order.check_elem(e)?;
        }
    }
    let k = gens.len();
    let dim = order.flat_dim();
    let basis = order.basis_elems();
    // rows of the flattened relation matrix: index (u, e) -> basis_e * gen_u
    let mut flat_rows: Vec<Vec<Rat>> = Vec::with_capacity(k * dim);
    for gen in gens {
        for e in &basis {
            let shifted: Vec<OrderElem> = gen.iter().map(|x| e.mul(x)).collect();
            flat_rows.push(flatten_row(order, &shifted));
        }
    }
    // clear prime-to-p denominators and take the integer kernel
    let mut denom = Int::one();
    for row in &flat_rows {
        for x in row {
            denom = lcm(&denom, x.denom());
        }
    }
    let int_rows: Vec<Vec<Int>> = flat_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.numer() * (&denom / x.denom()))
                .collect()
        })
        .collect();
    let kernel = kernel_int(&int_rows);
    // lift kernel rows back to Lambda^k
    let mut rows: Vec<Vec<OrderElem>> = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let mut lambda_row: Vec<OrderElem> = (0..k).map(|_| order.zero_elem()).collect();
        for (idx, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (u, e) = (idx / dim, idx % dim);
            let term = basis[e].scale(&Rat::from_integer(coef.clone()));
            lambda_row[u] = lambda_row[u].add(&term);
        }
        rows.push(lambda_row);
    }
    if rows.is_empty() {
        // free module: a single zero relation row keeps the shape legal
        rows.push((0..k).map(|_| order.zero_elem()).collect());
    }
    PresentationNC::new(order.clone(), rows)
}

/// The row-space lattice of a presentation inside the flattened Lambda^b.
pub(crate) fn row_space_lattice(ctx: &OrderContext, pres: &PresentationNC) -> LocalLattice {
    let order = pres.order();
    let dim = order.flat_dim();
    let mut rows = Vec::new();
    for r in 0..pres.rows_a() {
        rows.extend(lambda_span_rows(order, &pres.row(r)));
    }
    LocalLattice::from_rat_rows(ctx.prime(), pres.cols_b() * dim, &rows)
}
