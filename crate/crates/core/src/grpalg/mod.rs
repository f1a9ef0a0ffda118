//! Group algebras over exact scalars: elements, matrices, the sharp
//! anti-involution, augmentation, Wedderburn splitting data, reduced norms
//! and generalized adjoint matrices.

mod nrd;
mod wedderburn;

use crate::exact::{is_p_integral, Rat};
use crate::grp::FiniteGroup;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

pub use nrd::{generalized_adjoint, nrd, reduced_charpoly, CentralTuple, NrdError};
pub use wedderburn::{builtin_wedderburn, Irrep, WedderburnData, WedderburnError};

/// An element of `Q[G]`, coefficients indexed by group element.
#[derive(Clone, PartialEq, Eq)]
pub struct GaElem {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for GaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*[{g}]")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl GaElem {
    pub fn zero(group: &Arc<FiniteGroup>) -> GaElem {
        GaElem {
            group: group.clone(),
            coeffs: vec![Rat::zero(); group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> GaElem {
        GaElem::from_group_elem(group, group.identity())
    }

    pub fn from_group_elem(group: &Arc<FiniteGroup>, g: usize) -> GaElem {
        let mut e = GaElem::zero(group);
        e.coeffs[g] = Rat::one();
        e
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<Rat>) -> GaElem {
        assert_eq!(coeffs.len(), group.order());
        GaElem {
            group: group.clone(),
            coeffs,
        }
    }

    pub fn from_rat(group: &Arc<FiniteGroup>, r: Rat) -> GaElem {
        let mut e = GaElem::zero(group);
        e.coeffs[group.identity()] = r;
        e
    }

    /// Sum of all group elements.
    pub fn group_sum(group: &Arc<FiniteGroup>) -> GaElem {
        GaElem {
            group: group.clone(),
            coeffs: vec![Rat::one(); group.order()],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &Rat {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &GaElem) {
        assert_eq!(self.group.order(), other.group.order(), "mixed groups");
    }

    pub fn add(&self, other: &GaElem) -> GaElem {
        self.check(other);
        GaElem {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GaElem) -> GaElem {
        self.check(other);
        GaElem {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GaElem {
        GaElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &GaElem) -> GaElem {
        self.check(other);
        let g = &self.group;
        let mut out = vec![Rat::zero(); g.order()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                out[g.mul(a, b)] += ca * cb;
            }
        }
        GaElem {
            group: g.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rat) -> GaElem {
        GaElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Left translate: the element g * self.
    pub fn translate(&self, g: usize) -> GaElem {
        let grp = &self.group;
        let mut out = vec![Rat::zero(); grp.order()];
        for (h, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[grp.mul(g, h)] = c.clone();
            }
        }
        GaElem {
            group: grp.clone(),
            coeffs: out,
        }
    }

    /// The anti-involution sending each group element to its inverse.
    pub fn sharp(&self) -> GaElem {
        let g = &self.group;
        let mut out = vec![Rat::zero(); g.order()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[g.inv(h)] = c.clone();
        }
        GaElem {
            group: g.clone(),
            coeffs: out,
        }
    }

    /// Image under the augmentation map (every group element to 1).
    pub fn augment(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |a, b| a + b)
    }

    /// True iff every coefficient lies in Z localized at p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| is_p_integral(c, p))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// Dense matrix over `Q[G]`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GaMat {
    group: Arc<FiniteGroup>,
    rows: usize,
    cols: usize,
    entries: Vec<GaElem>,
}

impl fmt::Debug for GaMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GaMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                &self.entries[r * self.cols..(r + 1) * self.cols]
            )?;
        }
        write!(f, "]")
    }
}

impl GaMat {
    pub fn from_rows(group: &Arc<FiniteGroup>, rows: Vec<Vec<GaElem>>) -> GaMat {
        let r = rows.len();
        assert!(r >= 1);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        GaMat {
            group: group.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaElem,
    ) -> GaMat {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        GaMat {
            group: group.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> GaMat {
        GaMat::from_fn(group, n, n, |r, c| {
            if r == c {
                GaElem::one(group)
            } else {
                GaElem::zero(group)
            }
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>, rows: usize, cols: usize) -> GaMat {
        GaMat::from_fn(group, rows, cols, |_, _| GaElem::zero(group))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaElem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaElem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> GaMat {
        GaMat::from_fn(&self.group.clone(), row_idx.len(), col_idx.len(), |r, c| {
            self.at(row_idx[r], col_idx[c]).clone()
        })
    }

    pub fn matmul(&self, other: &GaMat) -> GaMat {
        assert_eq!(self.cols, other.rows);
        GaMat::from_fn(&self.group.clone(), self.rows, other.cols, |r, c| {
            let mut acc = GaElem::zero(&self.group);
            for k in 0..self.cols {
                acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
            }
            acc
        })
    }

    pub fn add_mat(&self, other: &GaMat) -> GaMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        GaMat::from_fn(&self.group.clone(), self.rows, self.cols, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    /// Entrywise multiplication by a central element.
    pub fn scale_central(&self, z: &GaElem) -> GaMat {
        GaMat::from_fn(&self.group.clone(), self.rows, self.cols, |r, c| {
            self.at(r, c).mul(z)
        })
    }

    /// Transpose combined with entrywise sharp; realizes the linear dual of
    /// the presented map.
    pub fn transpose_sharp(&self) -> GaMat {
        GaMat::from_fn(&self.group.clone(), self.cols, self.rows, |r, c| {
            self.at(c, r).sharp()
        })
    }

    /// Entrywise augmentation, yielding a rational matrix.
    pub fn augment(&self) -> crate::matlat::Mat<Rat> {
        crate::matlat::Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).augment())
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.entries.iter().all(|e| e.is_p_integral(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::grp::builtins::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sharp_examples() {
        let g = dihedral(6).unwrap();
        // N_G is sharp-stable
        let ng = GaElem::group_sum(&g);
        assert_eq!(ng.sharp(), ng);
        // sigma + tau -> sigma^-1 + tau
        let s = GaElem::from_group_elem(&g, 1);
        let t = GaElem::from_group_elem(&g, 3);
        let x = s.add(&t);
        let expected = GaElem::from_group_elem(&g, g.inv(1)).add(&t);
        assert_eq!(x.sharp(), expected);
    }

    #[test]
    fn sharp_is_anti_multiplicative() {
        let g = symmetric(3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        for _ in 0..50 {
            let x = GaElem::from_coeffs(&g, (0..6).map(|_| rat(rng.gen_range(-3..4), 1)).collect());
            let y = GaElem::from_coeffs(&g, (0..6).map(|_| rat(rng.gen_range(-3..4), 1)).collect());
            assert_eq!(x.mul(&y).sharp(), y.sharp().mul(&x.sharp()));
        }
    }

    #[test]
    fn augmentation() {
        let g = cyclic(4).unwrap();
        assert_eq!(GaElem::group_sum(&g).augment(), rat_int(4));
        let s = GaElem::from_group_elem(&g, 1);
        assert_eq!(s.sub(&GaElem::one(&g)).augment(), rat_int(0));
        let x = GaElem::from_rat(&g, rat_int(2)).add(&s.scale(&rat_int(3)));
        assert_eq!(x.augment(), rat_int(5));
    }
}
