//! Coordinates for the centre of the ambient algebra.
//!
//! For a group ring the centre of A = Q[G] is the product of the character
//! fields F_i. Each F_i is cut out of Q(zeta_m) as the fixed field of the
//! component stabilizer; the Hermite basis of the Galois-fixed sublattice of
//! Z[zeta_m] is simultaneously a Q-basis of F_i and a Z-basis of its ring of
//! integers. In these coordinates the centre of the maximal order is the
//! standard lattice, and the centre of Z_(p)[G] is the class-sum lattice.

use super::{NcError, OrderDescriptor};
use crate::exact::{Cyclo, Int, Rat};
use crate::grpalg::{CentralTuple, GaElem, WedderburnData};
use crate::matlat::{kernel_int, IntegerLattice, LocalLattice, Mat, StructureAlgebra};
use num_traits::Zero;

struct Component {
    offset: usize,
    dim: usize,
    /// HNF basis of the fixed sublattice of Z[zeta_m], rows in the power
    /// basis; doubles as the Q-basis of the character field.
    basis: IntegerLattice,
    basis_cyclo: Vec<Cyclo>,
}

/// Exact coordinates for the centre: structure algebra with trace form, the
/// lattice of the centre of the order, and the (standard) lattice of the
/// centre of the maximal order.
pub struct CenterCoords {
    prime: u64,
    dim: usize,
    components: Vec<Component>,
    algebra: StructureAlgebra,
    zeta_lambda: LocalLattice,
    zeta_max: LocalLattice,
    /// central elements realizing each coordinate basis vector (group rings)
    coord_centrals: Vec<GaElem>,
}

impl CenterCoords {
    pub fn build(
        order: &OrderDescriptor,
        data: Option<&WedderburnData>,
    ) -> Result<CenterCoords, NcError> {
        match order {
            OrderDescriptor::MatrixRing { p, .. } | OrderDescriptor::Hereditary { p } => {
                Ok(CenterCoords {
                    prime: *p,
                    dim: 1,
                    components: vec![Component {
                        offset: 0,
                        dim: 1,
                        basis: IntegerLattice::standard(1),
                        basis_cyclo: vec![Cyclo::one(1)],
                    }],
                    algebra: StructureAlgebra::rational_line(),
                    zeta_lambda: LocalLattice::standard(*p, 1),
                    zeta_max: LocalLattice::standard(*p, 1),
                    coord_centrals: Vec::new(),
                })
            }
            OrderDescriptor::GroupRing { group: _, p } => {
                let data = data.ok_or(NcError::NeedsGroupRing)?;
                let m = data.conductor();
                let phi = crate::exact::euler_phi(m) as usize;
                // per component: fixed sublattice of Z[zeta_m] under the
                // stabilizer
                let mut components: Vec<Component> = Vec::new();
                let mut offset = 0usize;
                for comp in data.components() {
                    // rows v with v (S_k - 1) = 0 for all k in the
                    // stabilizer, where S_k is the matrix of zeta -> zeta^k
                    // acting on row coordinate vectors
                    let mut stacked: Vec<Vec<Int>> = vec![Vec::new(); phi];
                    for &k in comp.stabilizer() {
                        if k == 1 {
                            continue;
                        }
                        for (r, row) in stacked.iter_mut().enumerate() {
                            // image of basis vector zeta^r under sigma_k
                            let img = Cyclo::root_power(m, (r as i64) * (k as i64));
                            for (c, coef) in img.coeffs().iter().enumerate() {
                                assert!(coef.is_integer(), "power-basis reductions are integral");
                                let mut v = coef.to_integer();
                                if r == c {
                                    v -= 1;
                                }
                                row.push(v);
                            }
                        }
                    }
                    let basis_rows = if comp.stabilizer().len() <= 1 {
                        IntegerLattice::standard(phi)
                    } else {
                        IntegerLattice::from_int_rows(phi, kernel_int(&stacked))
                    };
                    let f_i = basis_rows.rank();
                    assert_eq!(
                        f_i,
                        comp.orbit_size(),
                        "fixed lattice rank must match the character field degree"
                    );
                    let basis_cyclo: Vec<Cyclo> = basis_rows
                        .basis_rat()
                        .iter()
                        .map(|row| Cyclo::from_coeffs(m, row.clone()))
                        .collect();
                    components.push(Component {
                        offset,
                        dim: f_i,
                        basis: basis_rows,
                        basis_cyclo,
                    });
                    offset += f_i;
                }
                let dim = offset;
                assert_eq!(
                    dim,
                    data.classes().len(),
                    "centre dimension is the class count"
                );
                // structure constants and trace form, block by block
                let mut labels = Vec::new();
                for (i, c) in components.iter().enumerate() {
                    for u in 0..c.dim {
                        labels.push(format!("c{i}b{u}"));
                    }
                }
                let zero_vec = vec![Rat::zero(); dim];
                let mut mul = vec![vec![zero_vec.clone(); dim]; dim];
                let mut trace = Mat::from_fn(dim, dim, |_, _| Rat::zero());
                for (ci, comp) in components.iter().enumerate() {
                    let stab = data.components()[ci].stabilizer().len() as i64;
                    for u in 0..comp.dim {
                        for v in 0..comp.dim {
                            let prod = comp.basis_cyclo[u].mul(&comp.basis_cyclo[v]);
                            let coords = comp
                                .basis
                                .solve_coords(prod.coeffs())
                                .expect("product stays in the fixed field");
                            let mut out = zero_vec.clone();
                            out[comp.offset..comp.offset + comp.dim].clone_from_slice(&coords);
                            mul[comp.offset + u][comp.offset + v] = out;
                            // Tr_{F_i/Q} = Tr_{E/Q} / |H_i|
                            let t = prod.trace_to_q() / Rat::from_integer(stab.into());
                            trace.set(comp.offset + u, comp.offset + v, t);
                        }
                    }
                }
                let algebra = StructureAlgebra::new(labels, mul, Some(trace))?;
                // class sums in these coordinates
                let classes = data.classes();
                let mut rows = Vec::new();
                for class in classes {
                    let mut row = vec![Rat::zero(); dim];
                    for (ci, comp) in components.iter().enumerate() {
                        let d_i = data.components()[ci].dim() as i64;
                        let val = data
                            .char_value(ci, class[0])
                            .scale(&Rat::new((class.len() as i64).into(), d_i.into()));
                        let coords = comp
                            .basis
                            .solve_coords(val.coeffs())
                            .expect("central character values lie in the character field");
                        row[comp.offset..comp.offset + comp.dim].clone_from_slice(&coords);
                    }
                    rows.push(row);
                }
                let zeta_lambda = LocalLattice::from_rat_rows(*p, dim, &rows);
                let zeta_max = LocalLattice::standard(*p, dim);
                assert!(
                    zeta_lambda.subset_of(&zeta_max).unwrap(),
                    "the centre of the order embeds in the centre of the maximal order"
                );
                let mut cc = CenterCoords {
                    prime: *p,
                    dim,
                    components,
                    algebra,
                    zeta_lambda,
                    zeta_max,
                    coord_centrals: Vec::new(),
                };
                cc.coord_centrals = (0..dim)
                    .map(|w| {
                        let mut unit = vec![Rat::zero(); dim];
                        unit[w] = Rat::from_integer(1.into());
                        cc.coords_to_central(data, &unit)
                    })
                    .collect();
                Ok(cc)
            }
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn zeta_lambda(&self) -> &LocalLattice {
        &self.zeta_lambda
    }

    pub fn zeta_max(&self) -> &LocalLattice {
        &self.zeta_max
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_range(&self, i: usize) -> (usize, usize) {
        (self.components[i].offset, self.components[i].dim)
    }

    /// Central elements realizing the coordinate basis (group rings only).
    pub fn coord_centrals(&self) -> &[GaElem] {
        &self.coord_centrals
    }

    /// Coordinates of a reduced-norm tuple.
    pub fn tuple_to_coords(&self, t: &CentralTuple) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, comp) in self.components.iter().enumerate() {
            let coords = comp
                .basis
                .solve_coords(t.value(i).coeffs())
                .expect("tuple components lie in the character fields");
            out[comp.offset..comp.offset + comp.dim].clone_from_slice(&coords);
        }
        out
    }

    /// Coordinates of a single-component value, zero elsewhere.
    pub fn scalar_to_coords(&self, v: &Rat) -> Vec<Rat> {
        assert_eq!(self.dim, 1, "scalar coordinates only for 1-dim centres");
        vec![v.clone()]
    }

    /// Coordinates of a central group-algebra element.
    pub fn central_to_coords(&self, data: &WedderburnData, x: &GaElem) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, comp) in self.components.iter().enumerate() {
            let val = data.component_of_central(x, i);
            let coords = comp
                .basis
                .solve_coords(val.coeffs())
                .expect("central element coordinates lie in the character field");
            out[comp.offset..comp.offset + comp.dim].clone_from_slice(&coords);
        }
        out
    }

    /// The central element with the given coordinates.
    pub fn coords_to_central(&self, data: &WedderburnData, v: &[Rat]) -> GaElem {
        let mut acc = GaElem::zero(data.group());
        for (i, comp) in self.components.iter().enumerate() {
            let mut val = Cyclo::zero(data.conductor());
            for u in 0..comp.dim {
                let c = &v[comp.offset + u];
                if !c.is_zero() {
                    val = val.add(&comp.basis_cyclo[u].scale(c));
                }
            }
            if !val.is_zero() {
                acc = acc.add(&data.central_from_component(i, &val));
            }
        }
        acc
    }

    /// Matrix of the sharp transform in centre coordinates (rows transform
    /// by right multiplication).
    pub fn sharp_matrix(&self, conductor: u64) -> Mat<Rat> {
        let mut rows = Vec::with_capacity(self.dim);
        for comp in &self.components {
            for u in 0..comp.dim {
                let img = if conductor <= 2 {
                    comp.basis_cyclo[u].clone()
                } else {
                    comp.basis_cyclo[u].galois(conductor - 1)
                };
                let coords = comp
                    .basis
                    .solve_coords(img.coeffs())
                    .expect("conjugation preserves the character field");
                let mut row = vec![Rat::zero(); self.dim];
                row[comp.offset..comp.offset + comp.dim].clone_from_slice(&coords);
                rows.push(row);
            }
        }
        Mat::from_rows(rows)
    }

    /// Apply a coordinate transform to every basis vector of a lattice.
    pub fn transform_lattice(&self, lat: &LocalLattice, t: &Mat<Rat>) -> LocalLattice {
        let rows: Vec<Vec<Rat>> = lat
            .lattice()
            .basis_rat()
            .iter()
            .map(|v| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc = Rat::zero();
                        for (k, vk) in v.iter().enumerate() {
                            acc += vk * t.at(k, j);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LocalLattice::from_rat_rows(self.prime, self.dim, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::grp::builtins::*;
    use crate::grpalg::builtin_wedderburn;

    #[test]
    fn s3_centre_is_rational_cube() {
        let g = symmetric(3).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let order = OrderDescriptor::GroupRing { group: g, p: 3 };
        let cc = CenterCoords::build(&order, Some(&data)).unwrap();
        assert_eq!(cc.dim(), 3);
        // all three character fields are Q
        for i in 0..3 {
            assert_eq!(cc.component_range(i).1, 1);
        }
        // the class-sum lattice has index 2 * 3^2 in Z^3
        let idx = cc
            .zeta_lambda()
            .lattice()
            .index_in(cc.zeta_max().lattice())
            .unwrap();
        assert_eq!(idx, rat_int(18));
    }

    #[test]
    fn cyclic3_centre_has_quadratic_component() {
        let g = cyclic(3).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let order = OrderDescriptor::GroupRing { group: g, p: 3 };
        let cc = CenterCoords::build(&order, Some(&data)).unwrap();
        assert_eq!(cc.dim(), 3);
        assert_eq!(cc.component_count(), 2);
        assert_eq!(cc.component_range(0).1, 1);
        assert_eq!(cc.component_range(1).1, 2);
    }

    #[test]
    fn coords_round_trip_through_centrals() {
        let g = dihedral(6).unwrap();
        let data = builtin_wedderburn(&g).unwrap();
        let order = OrderDescriptor::GroupRing {
            group: g.clone(),
            p: 3,
        };
        let cc = CenterCoords::build(&order, Some(&data)).unwrap();
        // class sums are central; their coordinates must round trip
        for class in data.classes() {
            let mut x = GaElem::zero(&g);
            for &c in class {
                x = x.add(&GaElem::from_group_elem(&g, c));
            }
            let coords = cc.central_to_coords(&data, &x);
            let back = cc.coords_to_central(&data, &coords);
            assert_eq!(back, x);
            assert!(coords.iter().all(|c| c.is_integer()));
        }
    }
}
