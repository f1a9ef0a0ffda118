//! Classical Fitting ideals of finitely presented modules over the
//! supported commutative base rings (Z, Z localized at p, imaginary
//! quadratic orders, and Z/n images under base change), plus annihilators of
//! finite cokernels.
//!
//! A presentation is an a x b matrix h for R^a -> R^b -> M -> 0; the Fitting
//! ideal is generated by the b x b minors, and is zero when a < b.

use crate::exact::{gcd, Int, Rat};
use crate::matlat::{minors_enum, snf, LocalLattice, Mat, MatError, RingScalar};
use crate::morita::{QuadElem, QuadIdeal, QuadraticOrder};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommFitError {
    InfiniteCokernel,
    NotLocal { prime: u64 },
    Mat(MatError),
}

impl fmt::Display for CommFitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommFitError::InfiniteCokernel => write!(f, "cokernel is infinite"),
            CommFitError::NotLocal { prime } => {
                write!(f, "entries are not integral at {prime}")
            }
            CommFitError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CommFitError {}

impl From<MatError> for CommFitError {
    fn from(e: MatError) -> Self {
        CommFitError::Mat(e)
    }
}

/// Generators of the i-th Fitting ideal: all (b - i) x (b - i) minors of the
/// presentation matrix. Empty list encodes the zero ideal (a < b - i); a
/// bare one encodes the whole ring (i >= b).
pub fn fitting_generators<T: RingScalar>(
    mat: &Mat<T>,
    i: usize,
    cap: u128,
) -> Result<Vec<T>, MatError> {
    let b = mat.cols();
    if i >= b {
        return Ok(vec![mat.at(0, 0).one_like()]);
    }
    let k = b - i;
    if k > mat.rows() {
        return Ok(Vec::new());
    }
    minors_enum(mat, k, cap)
}

/// Fitting ideal over Z as a canonical generator (gcd of minors, 0 for the
/// zero ideal).
pub fn fitting_int(mat: &Mat<Int>, i: usize, cap: u128) -> Result<Int, MatError> {
    let gens = fitting_generators(mat, i, cap)?;
    Ok(gens.iter().fold(Int::zero(), |a, b| gcd(&a, b)))
}

/// Fitting ideal over Z localized at p, as a rank <= 1 local lattice in Q.
pub fn fitting_local(
    p: u64,
    mat: &Mat<Rat>,
    i: usize,
    cap: u128,
) -> Result<LocalLattice, CommFitError> {
    if !mat_is_p_integral(mat, p) {
        return Err(CommFitError::NotLocal { prime: p });
    }
    let gens = fitting_generators(mat, i, cap)?;
    let rows: Vec<Vec<Rat>> = gens.into_iter().map(|g| vec![g]).collect();
    Ok(LocalLattice::from_rat_rows(p, 1, &rows))
}

fn mat_is_p_integral(mat: &Mat<Rat>, p: u64) -> bool {
    (0..mat.rows()).all(|r| mat.row(r).iter().all(|x| crate::exact::is_p_integral(x, p)))
}

/// Fitting ideal over an imaginary quadratic order; None encodes the zero
/// ideal.
pub fn fitting_quad(
    order: QuadraticOrder,
    mat: &Mat<QuadElem>,
    i: usize,
    cap: u128,
) -> Result<Option<QuadIdeal>, CommFitError> {
    let gens = fitting_generators(mat, i, cap)?;
    let nonzero: Vec<QuadElem> = gens.into_iter().filter(|g| !g.is_zero_elem()).collect();
    if nonzero.is_empty() {
        return Ok(None);
    }
    Ok(Some(
        QuadIdeal::from_elems(order, &nonzero).expect("nonzero generators"),
    ))
}

/// Fitting ideal over Z/n, canonical generator gcd(minors, n).
pub fn fitting_mod(n: &Int, mat: &Mat<Int>, i: usize, cap: u128) -> Result<Int, MatError> {
    let g = fitting_int(mat, i, cap)?;
    Ok(gcd(&g, n))
}

/// Annihilator of a finite cokernel over Z: the largest Smith invariant.
pub fn annihilator_finite(mat: &Mat<Int>) -> Result<Int, CommFitError> {
    if mat.rows() < mat.cols() {
        return Err(CommFitError::InfiniteCokernel);
    }
    let s = snf(mat);
    if s.diag.len() < mat.cols() || s.diag.iter().any(Zero::is_zero) {
        return Err(CommFitError::InfiniteCokernel);
    }
    Ok(s.diag.last().unwrap().abs())
}

/// Entrywise reduction Z -> Z/n.
pub fn reduce_mod(mat: &Mat<Int>, n: &Int) -> Mat<Int> {
    mat.map(|x| x.mod_floor(n))
}

use num_integer::Integer as _;

/// Entrywise localization Z -> Z_(p) (an inclusion; the ring marker moves).
pub fn localize(mat: &Mat<Int>) -> Mat<Rat> {
    mat.map(|x| Rat::from_integer(x.clone()))
}

/// A presentation over one of the supported base rings, bundled for the
/// front end.
#[derive(Clone, Debug)]
pub enum CommPresentation {
    Int(Mat<Int>),
    Local(u64, Mat<Rat>),
    Quad(QuadraticOrder, Mat<QuadElem>),
}

#[derive(Clone, Debug)]
pub enum CommIdeal {
    Int(Int),
    Local(LocalLattice),
    Quad(Option<QuadIdeal>),
    Mod { n: Int, generator: Int },
}

impl CommPresentation {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            CommPresentation::Int(m) => (m.rows(), m.cols()),
            CommPresentation::Local(_, m) => (m.rows(), m.cols()),
            CommPresentation::Quad(_, m) => (m.rows(), m.cols()),
        }
    }

    pub fn fitting_ideal(&self, i: usize, cap: u128) -> Result<CommIdeal, CommFitError> {
        Ok(match self {
            CommPresentation::Int(m) => CommIdeal::Int(fitting_int(m, i, cap)?),
            CommPresentation::Local(p, m) => CommIdeal::Local(fitting_local(*p, m, i, cap)?),
            CommPresentation::Quad(order, m) => CommIdeal::Quad(fitting_quad(*order, m, i, cap)?),
        })
    }
}

impl CommIdeal {
    pub fn eq_ideal(&self, other: &CommIdeal) -> bool {
        match (self, other) {
            (CommIdeal::Int(a), CommIdeal::Int(b)) => a.abs() == b.abs(),
            (CommIdeal::Local(a), CommIdeal::Local(b)) => a.eq_local(b).unwrap_or(false),
            (CommIdeal::Quad(a), CommIdeal::Quad(b)) => match (a, b) {
                (None, None) => true,
                (Some(x), Some(y)) => x.eq_ideal(y),
                _ => false,
            },
            (
                CommIdeal::Mod { n, generator },
                CommIdeal::Mod {
                    n: n2,
                    generator: g2,
                },
            ) => n == n2 && gcd(generator, n) == gcd(g2, n),
            _ => false,
        }
    }
}
