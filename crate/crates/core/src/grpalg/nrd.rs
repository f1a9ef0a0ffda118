//! Reduced norms, reduced characteristic polynomials and generalized
//! adjoints of matrices over a group algebra, computed through the split
//! embedding per Wedderburn component.
//!
//! For a b x b matrix H and component i of dimension d, the embedded block
//! is the (b d) x (b d) cyclotomic matrix applying the irreducible entrywise.
//! Its determinant is the reduced norm component; its characteristic
//! polynomial has coefficients in the character field, certified here by
//! Galois stability. The generalized adjoint is assembled back in Q[G] via
//! central lifts of those coefficients and satisfies
//! H* H = H H* = Nrd(H) * 1.

use super::{GaElem, GaMat, WedderburnData};
use crate::exact::Cyclo;
use crate::matlat::{Mat, MatError};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NrdError {
    NotSquare,
    /// A computed value moved under the declared stabilizer: the supplied
    /// splitting data is inconsistent.
    StabilityViolation {
        component: usize,
    },
    Mat(MatError),
}

impl fmt::Display for NrdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NrdError::NotSquare => write!(f, "reduced norm needs a square matrix"),
            NrdError::StabilityViolation { component } => {
                write!(
                    f,
                    "value not fixed by the stabilizer of component {component}"
                )
            }
            NrdError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for NrdError {}

impl From<MatError> for NrdError {
    fn from(e: MatError) -> Self {
        NrdError::Mat(e)
    }
}

/// A reduced-norm value: one cyclotomic number per Wedderburn component,
/// each certified fixed by the component's stabilizer (i.e. lying in the
/// character field).
#[derive(Clone, PartialEq, Eq)]
pub struct CentralTuple {
    conductor: u64,
    values: Vec<Cyclo>,
}

impl fmt::Debug for CentralTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl CentralTuple {
    pub fn new(data: &WedderburnData, values: Vec<Cyclo>) -> Result<CentralTuple, NrdError> {
        assert_eq!(values.len(), data.components().len());
        for (i, (v, comp)) in values.iter().zip(data.components()).enumerate() {
            for &k in comp.stabilizer() {
                if v.galois(k) != *v {
                    return Err(NrdError::StabilityViolation { component: i });
                }
            }
        }
        Ok(CentralTuple {
            conductor: data.conductor(),
            values,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Cyclo {
        &self.values[i]
    }

    pub fn mul(&self, other: &CentralTuple) -> CentralTuple {
        assert_eq!(self.conductor, other.conductor);
        CentralTuple {
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// The transform induced by the sharp anti-involution: each component
    /// value moves to its complex-conjugate Galois image (the contragredient
    /// character stays in the same Galois orbit).
    pub fn sharp_transform(&self) -> CentralTuple {
        let k = self.conductor - 1; // -1 mod m
        CentralTuple {
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .map(|v| {
                    if self.conductor <= 2 {
                        v.clone()
                    } else {
                        v.galois(k)
                    }
                })
                .collect(),
        }
    }

    /// The central element of `Q[G]` with these Wedderburn coordinates.
    pub fn to_central(&self, data: &WedderburnData) -> GaElem {
        let mut acc = GaElem::zero(data.group());
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                acc = acc.add(&data.central_from_component(i, v));
            }
        }
        acc
    }
}

/// The embedded block matrix of H at component i.
pub fn embed_component(h: &GaMat, data: &WedderburnData, i: usize) -> Mat<Cyclo> {
    let comp = &data.components()[i];
    let d = comp.dim();
    let m = data.conductor();
    let b = h.rows();
    let bc = h.cols();
    let mut out = Mat::zero_like(b * d, bc * d, &Cyclo::zero(m));
    for r in 0..b {
        for c in 0..bc {
            let entry = h.at(r, c);
            for (g, coeff) in entry.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let img = comp.image(g);
                for u in 0..d {
                    for v in 0..d {
                        let cur = out.at(r * d + u, c * d + v).add(&img.at(u, v).scale(coeff));
                        out.set(r * d + u, c * d + v, cur);
                    }
                }
            }
        }
    }
    out
}

/// Reduced norm of a square matrix over the group algebra: componentwise
/// determinant of the embedded blocks, with stability certificates.
pub fn nrd(h: &GaMat, data: &WedderburnData) -> Result<CentralTuple, NrdError> {
    if h.rows() != h.cols() {
        return Err(NrdError::NotSquare);
    }
    let mut values = Vec::with_capacity(data.components().len());
    for i in 0..data.components().len() {
        let block = embed_component(h, data, i);
        values.push(block.det()?);
    }
    CentralTuple::new(data, values)
}

/// Reduced characteristic polynomial per component: ascending coefficients,
/// monic of degree d_i * b, all coefficients certified stable. The constant
/// term equals (-1)^(d_i b) Nrd_i(H).
pub fn reduced_charpoly(h: &GaMat, data: &WedderburnData) -> Result<Vec<Vec<Cyclo>>, NrdError> {
    if h.rows() != h.cols() {
        return Err(NrdError::NotSquare);
    }
    let mut out = Vec::with_capacity(data.components().len());
    for i in 0..data.components().len() {
        let block = embed_component(h, data, i);
        let cp = block.charpoly()?;
        for coeff in &cp {
            for &k in data.components()[i].stabilizer() {
                if coeff.galois(k) != *coeff {
                    return Err(NrdError::StabilityViolation { component: i });
                }
            }
        }
        out.push(cp);
    }
    Ok(out)
}

/// The generalized adjoint H* with H* H = H H* = Nrd(H) * identity, entries
/// in `Q[G]` (integral over the maximal order, generally not over `Z[G]`).
pub fn generalized_adjoint(h: &GaMat, data: &WedderburnData) -> Result<GaMat, NrdError> {
    let charpolys = reduced_charpoly(h, data)?;
    let b = h.rows();
    let group = h.group().clone();
    let max_deg = charpolys.iter().map(|cp| cp.len() - 1).max().unwrap_or(0);
    // powers H^0 .. H^(max_deg - 1)
    let mut powers: Vec<GaMat> = Vec::with_capacity(max_deg);
    powers.push(GaMat::identity(&group, b));
    for j in 1..max_deg {
        let next = powers[j - 1].matmul(h);
        powers.push(next);
    }
    let mut adj = GaMat::zero(&group, b, b);
    for (i, cp) in charpolys.iter().enumerate() {
        let mi = cp.len() - 1;
        let negate = mi % 2 == 0; // (-1)^(m_i + 1)
        for j in 1..=mi {
            let alpha = &cp[j];
            if alpha.is_zero() {
                continue;
            }
            let lift = data.central_from_component(i, alpha);
            let lift = if negate { lift.neg() } else { lift };
            adj = adj.add_mat(&powers[j - 1].scale_central(&lift));
        }
    }
    Ok(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, Rat};
    use crate::grp::builtins::*;
    use crate::grpalg::builtin_wedderburn;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use std::sync::Arc;

    fn ga(group: &Arc<crate::grp::FiniteGroup>, coeffs: Vec<i64>) -> GaElem {
        GaElem::from_coeffs(group, coeffs.into_iter().map(rat_int).collect())
    }

    #[test]
    fn dihedral_reduced_norm_of_sigma_plus_tau() {
        for p in [3usize, 5] {
            let g = dihedral(2 * p).unwrap();
            let data = builtin_wedderburn(&g).unwrap();
            let n = g.order();
            let mut coeffs = vec![0i64; n];
            coeffs[1] = 1; // sigma
            coeffs[p] = 1; // tau
            let h = GaMat::from_rows(&g, vec![vec![ga(&g, coeffs)]]);
            let t = nrd(&h, &data).unwrap();
            assert_eq!(t.value(0), &Cyclo::from_int(data.conductor(), 2));
            assert!(t.value(1).is_zero());
            assert!(t.value(2).is_zero());
            // equals 2 e_1 = (1/p) sum over the group
            let central = t.to_central(&data);
            let expected = GaElem::group_sum(&g).scale(&rat(1, p as i64));
            assert_eq!(central, expected);
        }
    }

    #[test]
    fn nrd_of_identity_and_cyclic2() {
        let g = cyclic(2).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let id = GaMat::identity(&g, 3);
        let t = nrd(&id, &data).unwrap();
        assert!(t.values().iter().all(|v| *v == Cyclo::one(2)));
        // x = a + b sigma -> (a + b, a - b)
        let x = ga(&g, vec![3, 5]);
        let t = nrd(&GaMat::from_rows(&g, vec![vec![x]]), &data).unwrap();
        assert_eq!(t.value(0), &Cyclo::from_int(2, 8));
        assert_eq!(t.value(1), &Cyclo::from_int(2, -2));
    }

    #[test]
    fn reduced_charpoly_shapes() {
        let g = cyclic(3).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let m = data.conductor();
        // 1 x 1 [sigma]: components X - 1 and X - zeta_3
        let h = GaMat::from_rows(&g, vec![vec![ga(&g, vec![0, 1, 0])]]);
        let cps = reduced_charpoly(&h, &data).unwrap();
        assert_eq!(cps[0], vec![Cyclo::from_int(m, -1), Cyclo::one(m)]);
        assert_eq!(cps[1].len(), 2);
        assert_eq!(cps[1][1], Cyclo::one(m));
        // the nontrivial component root is a primitive cube root of unity
        let root = cps[1][0].neg();
        let mut cube = root.clone();
        for _ in 0..2 {
            cube = cube.mul(&root);
        }
        assert_eq!(cube, Cyclo::one(m));
        assert_ne!(root, Cyclo::one(m));
    }

    #[test]
    fn zero_and_one_charpolys() {
        let g = dihedral(6).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let m = data.conductor();
        let zero = GaMat::zero(&g, 1, 1);
        for cp in reduced_charpoly(&zero, &data).unwrap() {
            // X^(m_i): only the leading coefficient
            let deg = cp.len() - 1;
            assert!(cp[..deg].iter().all(|c| c.is_zero()));
            assert_eq!(cp[deg], Cyclo::one(m));
        }
        let one = GaMat::identity(&g, 1);
        for cp in reduced_charpoly(&one, &data).unwrap() {
            // (X - 1)^(m_i): constant term (-1)^m_i
            let deg = cp.len() - 1;
            let expect = if deg % 2 == 0 { 1 } else { -1 };
            assert_eq!(cp[0], Cyclo::from_int(m, expect));
        }
    }

    #[test]
    fn zero_adjoint_is_averaged_commutator_sum() {
        for g in [
            dihedral(6).unwrap(),
            dihedral(10).unwrap(),
            cyclic(4).unwrap(),
            quaternion8().unwrap(),
            symmetric(4).unwrap(),
            affine(5).unwrap(),
        ] {
            let data = builtin_wedderburn(&g).unwrap();
            let zero = GaMat::zero(&g, 1, 1);
            let adj = generalized_adjoint(&zero, &data).unwrap();
            let commut = g.commutator_subgroup();
            let scale = rat(1, commut.len() as i64);
            let mut expected = GaElem::zero(&g);
            for &c in &commut {
                expected = expected.add(&GaElem::from_group_elem(&g, c).scale(&scale));
            }
            assert_eq!(adj.at(0, 0), &expected, "group {:?}", g);
        }
    }

    #[test]
    fn zero_adjoint_commutative_convention() {
        let g = cyclic(1).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        // 1x1 zero over the trivial group algebra: 0* = 1
        let adj = generalized_adjoint(&GaMat::zero(&g, 1, 1), &data).unwrap();
        assert_eq!(adj.at(0, 0), &GaElem::one(&g));
        // b > 1: 0* = 0
        let adj = generalized_adjoint(&GaMat::zero(&g, 2, 2), &data).unwrap();
        assert!((0..2).all(|r| (0..2).all(|c| adj.at(r, c).is_zero())));
    }

    #[test]
    fn block_diagonal_adjoint_law() {
        let g = dihedral(6).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for _ in 0..5 {
            let h = GaMat::from_fn(&g, 2, 2, |_, _| {
                GaElem::from_coeffs(&g, (0..6).map(|_| rat(rng.gen_range(-2..3), 1)).collect())
            });
            let t = nrd(&h, &data).unwrap();
            let central = t.to_central(&data);
            // blockdiag(H, 1_m)* = blockdiag(H*, Nrd(H) 1_m)
            let m_pad = 2usize;
            let big = GaMat::from_fn(&g, 4, 4, |r, c| {
                if r < 2 && c < 2 {
                    h.at(r, c).clone()
                } else if r == c {
                    GaElem::one(&g)
                } else {
                    GaElem::zero(&g)
                }
            });
            let big_adj = generalized_adjoint(&big, &data).unwrap();
            let small_adj = generalized_adjoint(&h, &data).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(big_adj.at(r, c), small_adj.at(r, c));
                }
            }
            for k in 0..m_pad {
                assert_eq!(big_adj.at(2 + k, 2 + k), &central);
            }
        }
    }

    #[test]
    fn adjoint_law_random() {
        let groups = [dihedral(6).unwrap(), cyclic(4).unwrap()];
        let mut rng = rand::rngs::StdRng::seed_from_u64(71);
        for g in &groups {
            let data = builtin_wedderburn(g).unwrap();
            let n = g.order();
            for _ in 0..10 {
                let b = rng.gen_range(1..=3);
                let h = GaMat::from_fn(g, b, b, |_, _| {
                    GaElem::from_coeffs(g, (0..n).map(|_| rat(rng.gen_range(-3..4), 1)).collect())
                });
                let adj = generalized_adjoint(&h, &data).unwrap();
                let t = nrd(&h, &data).unwrap();
                let central = t.to_central(&data);
                let expect = GaMat::identity(g, b).scale_central(&central);
                assert_eq!(adj.matmul(&h), expect);
                assert_eq!(h.matmul(&adj), expect);
            }
        }
    }

    #[test]
    fn nrd_multiplicative() {
        let g = quaternion8().unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..10 {
            let b = rng.gen_range(1..=2);
            let mk = |rng: &mut rand::rngs::StdRng| {
                GaMat::from_fn(&g, b, b, |_, _| {
                    GaElem::from_coeffs(&g, (0..8).map(|_| rat(rng.gen_range(-2..3), 1)).collect())
                })
            };
            let h1 = mk(&mut rng);
            let h2 = mk(&mut rng);
            let lhs = nrd(&h1.matmul(&h2), &data).unwrap();
            let rhs = nrd(&h1, &data).unwrap().mul(&nrd(&h2, &data).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn constant_term_law() {
        let g = dihedral(10).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(37);
        for _ in 0..5 {
            let b = rng.gen_range(1..=2);
            let h = GaMat::from_fn(&g, b, b, |_, _| {
                GaElem::from_coeffs(&g, (0..10).map(|_| rat(rng.gen_range(-2..3), 1)).collect())
            });
            let t = nrd(&h, &data).unwrap();
            let cps = reduced_charpoly(&h, &data).unwrap();
            for (i, cp) in cps.iter().enumerate() {
                let mi = cp.len() - 1;
                let sign = if mi % 2 == 0 { Rat::one() } else { -Rat::one() };
                assert_eq!(cp[0], t.value(i).scale(&sign));
            }
        }
    }

    #[test]
    fn reduced_cayley_hamilton() {
        let g = dihedral(6).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(41);
        let b = 2;
        let h = GaMat::from_fn(&g, b, b, |_, _| {
            GaElem::from_coeffs(&g, (0..6).map(|_| rat(rng.gen_range(-2..3), 1)).collect())
        });
        let cps = reduced_charpoly(&h, &data).unwrap();
        for (i, cp) in cps.iter().enumerate() {
            let block = embed_component(&h, &data, i);
            let dim = block.rows();
            let mut acc = Mat::zero_like(dim, dim, block.at(0, 0));
            let mut pow = Mat::identity_like(dim, block.at(0, 0));
            for c in cp {
                acc = acc.add_mat(&pow.scale(c));
                pow = pow.matmul(&block);
            }
            assert!(acc.is_zero(), "f_i(H_i) must vanish");
        }
    }

    #[test]
    fn nrd_of_unimodular_is_unit_tuple() {
        // permutation-like matrices over the group ring: group elements on
        // a permuted diagonal have reduced norm a root of unity times 1
        let g = dihedral(6).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(61);
        for _ in 0..20 {
            let b = rng.gen_range(1..=3);
            // random permutation of 0..b
            let mut perm: Vec<usize> = (0..b).collect();
            for i in 0..b {
                let j = rng.gen_range(0..b);
                perm.swap(i, j);
            }
            let h = GaMat::from_fn(&g, b, b, |r, c| {
                if perm[r] == c {
                    GaElem::from_group_elem(&g, rng.gen_range(0..g.order()))
                } else {
                    GaElem::zero(&g)
                }
            });
            let t = nrd(&h, &data).unwrap();
            for v in t.values() {
                // a unit in the localized integer rings at every prime:
                // the norm of each component is +-1 because the component
                // value is a root of unity
                let mut prod = Cyclo::one(data.conductor());
                for k in crate::exact::units_mod(data.conductor()) {
                    prod = prod.mul(&v.galois(k));
                }
                let n = prod.as_rat().expect("full Galois product is rational");
                assert!(n == Rat::one() || n == -Rat::one(), "component norm {n}");
            }
        }
    }

    #[test]
    fn sharp_compatibility_of_nrd() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(53);
        for g in [dihedral(6).unwrap(), cyclic(4).unwrap()] {
            let data = builtin_wedderburn(&g).unwrap();
            let n = g.order();
            for _ in 0..25 {
                let b = rng.gen_range(1..=2);
                let q = GaMat::from_fn(&g, b, b, |_, _| {
                    GaElem::from_coeffs(&g, (0..n).map(|_| rat(rng.gen_range(-3..4), 1)).collect())
                });
                let lhs = nrd(&q.transpose_sharp(), &data).unwrap();
                let rhs = nrd(&q, &data).unwrap().sharp_transform();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
