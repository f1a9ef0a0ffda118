//! Imaginary quadratic orders Z[sqrt(d)] for square-free d < 0 with
//! d not congruent to 1 mod 4, their fractional ideals in 2 x 2 Hermite
//! form over the basis {1, sqrt(d)}, and a definitive principality test by
//! finite norm-form search.

use crate::exact::{Int, Rat};
use crate::matlat::{IntegerLattice, Mat, MatError, RingScalar};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadError {
    UnsupportedDiscriminant(i64),
    ZeroIdeal,
    NotAnIdeal,
    NotIntegral,
    Mat(MatError),
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::UnsupportedDiscriminant(d) => {
                write!(f, "unsupported quadratic order parameter {d}")
            }
            QuadError::ZeroIdeal => write!(f, "zero ideal"),
            QuadError::NotAnIdeal => write!(f, "lattice is not closed under the order"),
            QuadError::NotIntegral => write!(f, "element is not in the order"),
            QuadError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for QuadError {}

impl From<MatError> for QuadError {
    fn from(e: MatError) -> Self {
        QuadError::Mat(e)
    }
}

/// The maximal order Z[sqrt(d)] of Q(sqrt(d)) for the supported square-free
/// d < 0 with d = 2, 3 mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticOrder {
    d: i64,
}

impl QuadraticOrder {
    pub fn new(d: i64) -> Result<QuadraticOrder, QuadError> {
        match d {
            -1 | -2 | -5 | -6 => Ok(QuadraticOrder { d }),
            _ => Err(QuadError::UnsupportedDiscriminant(d)),
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem {
            d: self.d,
            x: Rat::zero(),
            y: Rat::zero(),
        }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem {
            d: self.d,
            x: Rat::one(),
            y: Rat::zero(),
        }
    }

    pub fn sqrt_d(&self) -> QuadElem {
        QuadElem {
            d: self.d,
            x: Rat::zero(),
            y: Rat::one(),
        }
    }

    pub fn elem(&self, x: Rat, y: Rat) -> QuadElem {
        QuadElem { d: self.d, x, y }
    }

    pub fn elem_int(&self, x: i64, y: i64) -> QuadElem {
        self.elem(
            Rat::from_integer(Int::from(x)),
            Rat::from_integer(Int::from(y)),
        )
    }

    /// The whole order as an ideal.
    pub fn unit_ideal(&self) -> QuadIdeal {
        QuadIdeal::from_elems(*self, &[self.one()]).expect("unit ideal")
    }
}

/// x + y sqrt(d) with rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    d: i64,
    x: Rat,
    y: Rat,
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

impl QuadElem {
    pub fn coords(&self) -> (Rat, Rat) {
        (self.x.clone(), self.y.clone())
    }

    pub fn coords_vec(&self) -> Vec<Rat> {
        vec![self.x.clone(), self.y.clone()]
    }

    pub fn from_coords(d: i64, v: &[Rat]) -> QuadElem {
        QuadElem {
            d,
            x: v[0].clone(),
            y: v[1].clone(),
        }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem {
            d: self.d,
            x: self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// N(x + y sqrt(d)) = x^2 - d y^2.
    pub fn norm(&self) -> Rat {
        &self.x * &self.x - Rat::from_integer(Int::from(self.d)) * &self.y * &self.y
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }
}

impl RingScalar for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem {
            d: self.d,
            x: Rat::zero(),
            y: Rat::zero(),
        }
    }
    fn one_like(&self) -> Self {
        QuadElem {
            d: self.d,
            x: Rat::one(),
            y: Rat::zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        QuadElem {
            d: self.d,
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        QuadElem {
            d: self.d,
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = Rat::from_integer(Int::from(self.d));
        QuadElem {
            d: self.d,
            x: &self.x * &other.x + &d * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }
    fn neg(&self) -> Self {
        QuadElem {
            d: self.d,
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(&self.x) && Zero::is_zero(&self.y)
    }
    fn exact_div(&self, other: &Self) -> Self {
        // field division by conjugate over norm
        let n = other.norm();
        assert!(!Zero::is_zero(&n), "division by zero");
        let num = self.mul(&other.conj());
        QuadElem {
            d: self.d,
            x: &num.x / &n,
            y: &num.y / &n,
        }
    }
}

/// A nonzero fractional ideal of the order, stored as a 2 x 2 HNF lattice
/// over the basis {1, sqrt(d)} and verified closed under multiplication by
/// the order. The two HNF basis elements double as the distinguished
/// generator pair.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadIdeal {
    order: QuadraticOrder,
    lat: IntegerLattice,
}

impl fmt::Debug for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadIdeal(d {}, {:?})", self.order.d, self.lat)
    }
}

impl QuadIdeal {
    pub fn from_elems(order: QuadraticOrder, gens: &[QuadElem]) -> Result<QuadIdeal, QuadError> {
        // span of g and g*sqrt(d) over all generators
        let mut rows = Vec::new();
        for g in gens {
            assert_eq!(g.d, order.d);
            rows.push(g.coords_vec());
            rows.push(g.mul(&order.sqrt_d()).coords_vec());
        }
        let lat = IntegerLattice::from_rat_rows(2, &rows);
        if lat.rank() != 2 {
            return Err(QuadError::ZeroIdeal);
        }
        let ideal = QuadIdeal { order, lat };
        ideal.check_closed()?;
        Ok(ideal)
    }

    pub fn from_lattice(
        order: QuadraticOrder,
        lat: IntegerLattice,
    ) -> Result<QuadIdeal, QuadError> {
        if lat.rank() != 2 {
            return Err(QuadError::ZeroIdeal);
        }
        let ideal = QuadIdeal { order, lat };
        ideal.check_closed()?;
        Ok(ideal)
    }

    fn check_closed(&self) -> Result<(), QuadError> {
        for b in self.basis() {
            let shifted = b.mul(&self.order.sqrt_d());
            if !self.lat.contains(&shifted.coords_vec()) {
                return Err(QuadError::NotAnIdeal);
            }
        }
        Ok(())
    }

    pub fn order(&self) -> QuadraticOrder {
        self.order
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lat
    }

    /// The two HNF basis elements (the distinguished generator pair).
    pub fn basis(&self) -> Vec<QuadElem> {
        self.lat
            .basis_rat()
            .iter()
            .map(|v| QuadElem::from_coords(self.order.d, v))
            .collect()
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        self.lat.contains(&x.coords_vec())
    }

    pub fn mul(&self, other: &QuadIdeal) -> QuadIdeal {
        let mut gens = Vec::new();
        for a in self.basis() {
            for b in other.basis() {
                gens.push(a.mul(&b));
            }
        }
        QuadIdeal::from_elems(self.order, &gens).expect("product of nonzero ideals")
    }

    /// The fractional inverse {x : x * self ⊆ R}.
    pub fn inverse(&self) -> Result<QuadIdeal, QuadError> {
        let alg = quad_algebra(self.order.d);
        // reuse the conductor machinery at an arbitrary prime tag
        let unit = crate::matlat::LocalLattice::new(2, IntegerLattice::standard(2));
        let this = crate::matlat::LocalLattice::new(2, self.lat.clone());
        let inv = this.conductor_into(&unit, &alg)?;
        QuadIdeal::from_lattice(self.order, inv.lattice().clone())
    }

    /// Absolute norm: the index in the order for integral ideals, extended
    /// multiplicatively to fractional ones.
    pub fn norm(&self) -> Rat {
        self.lat.det_full().expect("rank 2")
    }

    /// True iff the ideal is contained in the order.
    pub fn is_integral(&self) -> bool {
        self.basis().iter().all(|b| b.is_integral())
    }

    pub fn eq_ideal(&self, other: &QuadIdeal) -> bool {
        self.order == other.order && self.lat == other.lat
    }

    /// Scale by a field element.
    pub fn scale(&self, s: &QuadElem) -> QuadIdeal {
        let gens: Vec<QuadElem> = self.basis().iter().map(|b| b.mul(s)).collect();
        QuadIdeal::from_elems(self.order, &gens).expect("nonzero scaling")
    }
}

/// The 2-dimensional structure algebra of Q(sqrt(d)) over the basis
/// {1, sqrt(d)}, with the field trace form.
pub fn quad_algebra(d: i64) -> crate::matlat::StructureAlgebra {
    let dr = Rat::from_integer(Int::from(d));
    let one = Rat::one();
    let zero = Rat::zero();
    crate::matlat::StructureAlgebra::new(
        vec!["1".into(), "w".into()],
        vec![
            vec![
                vec![one.clone(), zero.clone()],
                vec![zero.clone(), one.clone()],
            ],
            vec![
                vec![zero.clone(), one.clone()],
                vec![dr.clone(), zero.clone()],
            ],
        ],
        Some(Mat::from_rows(vec![
            vec![Rat::from_integer(2.into()), zero.clone()],
            vec![zero, Rat::from_integer(Int::from(2 * d))],
        ])),
    )
    .expect("quadratic structure constants")
}

/// Definitive principality test for an integral ideal of an imaginary
/// quadratic order: the norm form is positive definite, so N(x) = norm(I)
/// has finitely many solutions; I is principal iff one of them generates.
pub fn is_principal(ideal: &QuadIdeal) -> Result<Option<QuadElem>, QuadError> {
    if !ideal.is_integral() {
        return Err(QuadError::NotIntegral);
    }
    let d = ideal.order.d;
    assert!(d < 0, "imaginary orders only");
    let n = ideal.norm();
    assert!(n.is_integer());
    let n_int: i64 = n
        .to_integer()
        .try_into()
        .map_err(|_| QuadError::NotIntegral)?;
    // x^2 + |d| y^2 = n
    let dd = -d;
    let mut y = 0i64;
    while dd * y * y <= n_int {
        let rem = n_int - dd * y * y;
        let x = (rem as f64).sqrt().round() as i64;
        for cand_x in [x - 1, x, x + 1] {
            if cand_x < 0 || cand_x * cand_x != rem {
                continue;
            }
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let g = ideal.order.elem_int(cand_x * sx, y * sy);
                if g.is_zero_elem() || !ideal.contains(&g) {
                    continue;
                }
                let principal = QuadIdeal::from_elems(ideal.order, std::slice::from_ref(&g))?;
                if principal.eq_ideal(ideal) {
                    return Ok(Some(g));
                }
            }
        }
        y += 1;
    }
    Ok(None)
}
