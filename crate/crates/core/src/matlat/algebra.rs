//! Commutative algebras over Q given by structure constants, with an
//! optional trace form. These carry the coordinate arithmetic of algebra
//! centres: products of lattices, conductors and trace-form duals all
//! multiply through the structure constants.

use super::{Mat, MatError};
use crate::exact::Rat;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// mul[i][j] = coordinates of basis_i * basis_j.
    mul: Vec<Vec<Vec<Rat>>>,
    trace_form: Option<Mat<Rat>>,
}

impl StructureAlgebra {
    pub fn new(
        labels: Vec<String>,
        mul: Vec<Vec<Vec<Rat>>>,
        trace_form: Option<Mat<Rat>>,
    ) -> Result<StructureAlgebra, MatError> {
        let dim = labels.len();
        if mul.len() != dim
            || mul.iter().any(|row| row.len() != dim)
            || mul.iter().any(|row| row.iter().any(|v| v.len() != dim))
        {
            return Err(MatError::DimMismatch);
        }
        let alg = StructureAlgebra {
            dim,
            labels,
            mul,
            trace_form,
        };
        // commutativity and associativity on basis elements
        for i in 0..dim {
            for j in 0..i {
                if alg.mul[i][j] != alg.mul[j][i] {
                    return Err(MatError::DimMismatch);
                }
            }
        }
        let unit = |k: usize| {
            let mut v = vec![Rat::zero(); dim];
            v[k] = Rat::from_integer(1.into());
            v
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = alg.mul_vec(&alg.mul[i][j], &unit(k));
                    let right = alg.mul_vec(&unit(i), &alg.mul[j][k]);
                    if left != right {
                        return Err(MatError::DimMismatch);
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The one-dimensional algebra Q, trace form (1).
    pub fn rational_line() -> StructureAlgebra {
        StructureAlgebra {
            dim: 1,
            labels: vec!["1".to_string()],
            mul: vec![vec![vec![Rat::from_integer(1.into())]]],
            trace_form: Some(Mat::from_rows(vec![vec![Rat::from_integer(1.into())]])),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn trace_form(&self) -> Option<&Mat<Rat>> {
        self.trace_form.as_ref()
    }

    pub fn mul_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, m) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o += m * &c;
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `g` (columns indexed by input basis).
    pub fn mul_matrix(&self, g: &[Rat]) -> Mat<Rat> {
        Mat::from_fn(self.dim, self.dim, |r, c| {
            let mut unit = vec![Rat::zero(); self.dim];
            unit[c] = Rat::from_integer(1.into());
            self.mul_vec(&unit, g)[r].clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::matlat::LocalLattice;

    /// Q x Q with componentwise product.
    fn q_squared() -> StructureAlgebra {
        let e = |k: usize, v: i64| {
            let mut u = vec![rat_int(0); 2];
            u[k] = rat_int(v);
            u
        };
        StructureAlgebra::new(
            vec!["a".into(), "b".into()],
            vec![vec![e(0, 1), e(0, 0)], vec![e(0, 0), e(1, 1)]],
            Some(Mat::from_rows(vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(1)],
            ])),
        )
        .unwrap()
    }

    #[test]
    fn product_and_conductor_on_the_line() {
        let alg = StructureAlgebra::rational_line();
        let two = LocalLattice::from_rat_rows(5, 1, &[vec![rat_int(2)]]);
        let three = LocalLattice::from_rat_rows(5, 1, &[vec![rat_int(3)]]);
        let six = two.product(&three, &alg).unwrap();
        assert!(six
            .eq_local(&LocalLattice::from_rat_rows(5, 1, &[vec![rat_int(6)]]))
            .unwrap());
        // conductor(Z, 2Z) = 2Z
        let z = LocalLattice::standard(5, 1);
        let cond = z.conductor_into(&two, &alg).unwrap();
        assert!(cond.eq_local(&two).unwrap());
    }

    #[test]
    fn conductor_contract_on_q2() {
        let alg = q_squared();
        let l1 = LocalLattice::from_rat_rows(
            3,
            2,
            &[vec![rat_int(1), rat_int(1)], vec![rat_int(0), rat_int(3)]],
        );
        let l2 = LocalLattice::from_rat_rows(
            3,
            2,
            &[vec![rat_int(3), rat_int(0)], vec![rat_int(0), rat_int(3)]],
        );
        let cond = l1.conductor_into(&l2, &alg).unwrap();
        // every generator of the conductor times every generator of l1 lands in l2
        for g in cond.lattice().basis_rat() {
            for l in l1.lattice().basis_rat() {
                let prod = alg.mul_vec(&g, &l);
                assert!(l2.contains(&prod));
            }
        }
        assert!(!cond.is_zero());
    }

    #[test]
    fn dual_is_involution() {
        let alg = q_squared();
        let l = LocalLattice::from_rat_rows(
            3,
            2,
            &[vec![rat_int(2), rat_int(1)], vec![rat_int(0), rat(5, 2)]],
        );
        let dd = l.dual(&alg).unwrap().dual(&alg).unwrap();
        assert!(dd.eq_local(&l).unwrap());
    }
}
