//! Splitting data for group algebras: one irreducible matrix representation
//! over `Q(zeta_m)` per Galois orbit, with character-field stabilizers and
//! central idempotents. `m` is a multiple of the group exponent, so the
//! cyclotomic field splits every component regardless of Schur indices; the
//! determinant of the split image then computes the reduced norm.

use super::GaElem;
use crate::exact::{euler_phi, units_mod, Cyclo, Rat};
use crate::grp::FiniteGroup;
use crate::matlat::{hnf_rows, snf, Mat};
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedderburnError {
    UnsupportedGroup(String),
    NotAHomomorphism { at: (usize, usize) },
    CharacterNotClassConstant { class: usize },
    DimensionCountOff { sum: u64, order: u64 },
    ClassCountOff { got: usize, expected: usize },
    IdempotentsDoNotSumToOne,
    StabilizerMismatch { component: usize },
    ConductorMismatch,
}

impl fmt::Display for WedderburnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WedderburnError::UnsupportedGroup(name) => {
                write!(
                    f,
                    "no builtin splitting data for {name}; supply irreducibles"
                )
            }
            WedderburnError::NotAHomomorphism { at } => {
                write!(f, "images fail the homomorphism check at pair {at:?}")
            }
            WedderburnError::CharacterNotClassConstant { class } => {
                write!(f, "character is not constant on class {class}")
            }
            WedderburnError::DimensionCountOff { sum, order } => {
                write!(f, "sum of squared dimensions {sum} != group order {order}")
            }
            WedderburnError::ClassCountOff { got, expected } => {
                write!(
                    f,
                    "{got} irreducibles counted with orbits, {expected} classes"
                )
            }
            WedderburnError::IdempotentsDoNotSumToOne => {
                write!(f, "central idempotents do not sum to 1")
            }
            WedderburnError::StabilizerMismatch { component } => {
                write!(f, "declared stabilizer wrong on component {component}")
            }
            WedderburnError::ConductorMismatch => write!(f, "mixed conductors in irreducibles"),
        }
    }
}

impl std::error::Error for WedderburnError {}

/// One irreducible representation over Q(zeta_m), stored with the matrix
/// image of every group element.
#[derive(Clone)]
pub struct Irrep {
    dim: usize,
    conductor: u64,
    images: Vec<Mat<Cyclo>>,
    /// trace per conjugacy class, classes in canonical order
    character: Vec<Cyclo>,
    /// {k in (Z/m)^* : sigma_k fixes every character value}
    stabilizer: Vec<u64>,
}

impl fmt::Debug for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Irrep(dim {}, conductor {}, character {:?})",
            self.dim, self.conductor, self.character
        )
    }
}

impl Irrep {
    /// Build from the image of every group element, verifying the full
    /// homomorphism property and class constancy of the character.
    pub fn new(
        group: &FiniteGroup,
        conductor: u64,
        images: Vec<Mat<Cyclo>>,
    ) -> Result<Irrep, WedderburnError> {
        let n = group.order();
        assert_eq!(images.len(), n);
        let dim = images[0].rows();
        for a in 0..n {
            for b in 0..n {
                if images[a].matmul(&images[b]) != images[group.mul(a, b)] {
                    return Err(WedderburnError::NotAHomomorphism { at: (a, b) });
                }
            }
        }
        let classes = group.conjugacy_classes();
        let mut character = Vec::with_capacity(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            let tr = |g: usize| -> Cyclo {
                let mut t = Cyclo::zero(conductor);
                for i in 0..dim {
                    t = t.add(images[g].at(i, i));
                }
                t
            };
            let value = tr(class[0]);
            if class.iter().any(|&g| tr(g) != value) {
                return Err(WedderburnError::CharacterNotClassConstant { class: ci });
            }
            character.push(value);
        }
        let stabilizer = units_mod(conductor)
            .into_iter()
            .filter(|&k| character.iter().all(|v| v.galois(k) == *v))
            .collect();
        Ok(Irrep {
            dim,
            conductor,
            images,
            character,
            stabilizer,
        })
    }

    /// Extend images of a generating set to the whole group, then validate.
    pub fn from_generator_images(
        group: &FiniteGroup,
        conductor: u64,
        gens: &[(usize, Mat<Cyclo>)],
    ) -> Result<Irrep, WedderburnError> {
        let n = group.order();
        let dim = gens[0].1.rows();
        let id = Mat::identity_like(dim, &Cyclo::zero(conductor));
        let mut images: Vec<Option<Mat<Cyclo>>> = vec![None; n];
        images[group.identity()] = Some(id);
        let mut queue = vec![group.identity()];
        while let Some(x) = queue.pop() {
            let ix = images[x].clone().unwrap();
            for (g, mg) in gens {
                let y = group.mul(x, *g);
                if images[y].is_none() {
                    images[y] = Some(ix.matmul(mg));
                    queue.push(y);
                }
            }
        }
        let images: Vec<Mat<Cyclo>> = images
            .into_iter()
            .map(|m| m.expect("generator set does not generate the group"))
            .collect();
        Irrep::new(group, conductor, images)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn image(&self, g: usize) -> &Mat<Cyclo> {
        &self.images[g]
    }

    pub fn character(&self) -> &[Cyclo] {
        &self.character
    }

    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    /// Index of the character field over Q, i.e. the Galois orbit size.
    pub fn orbit_size(&self) -> usize {
        euler_phi(self.conductor) as usize / self.stabilizer.len()
    }
}

/// Validated Wedderburn data: components in canonical order (ascending
/// dimension, then descending character vector, so the trivial character
/// comes first), with central idempotents.
pub struct WedderburnData {
    group: Arc<FiniteGroup>,
    conductor: u64,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    components: Vec<Irrep>,
    idempotents: Vec<GaElem>,
}

impl fmt::Debug for WedderburnData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WedderburnData({:?}, conductor {}, dims {:?})",
            self.group,
            self.conductor,
            self.components.iter().map(|c| c.dim).collect::<Vec<_>>()
        )
    }
}

impl WedderburnData {
    /// Assemble and fully validate; `dedupe` drops Galois-orbit duplicates
    /// (builtin constructions may enumerate several members of one orbit).
    fn assemble(
        group: &Arc<FiniteGroup>,
        mut irreps: Vec<Irrep>,
        dedupe: bool,
    ) -> Result<WedderburnData, WedderburnError> {
        if irreps.is_empty() {
            return Err(WedderburnError::ClassCountOff {
                got: 0,
                expected: group.conjugacy_classes().len(),
            });
        }
        let conductor = irreps[0].conductor;
        if irreps.iter().any(|i| i.conductor != conductor) {
            return Err(WedderburnError::ConductorMismatch);
        }
        if dedupe {
            let units = units_mod(conductor);
            let mut kept: Vec<Irrep> = Vec::new();
            'next: for cand in irreps {
                for have in &kept {
                    if have.dim == cand.dim
                        && units.iter().any(|&k| {
                            have.character
                                .iter()
                                .zip(&cand.character)
                                .all(|(a, b)| a.galois(k) == *b)
                        })
                    {
                        continue 'next;
                    }
                }
                kept.push(cand);
            }
            irreps = kept;
        }
        // canonical order: dimension ascending, character vector descending
        irreps.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| b.character.cmp(&a.character))
        });
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0usize; group.order()];
        for (ci, class) in classes.iter().enumerate() {
            for &g in class {
                class_of[g] = ci;
            }
        }
        // counting checks
        let dim_sum: u64 = irreps
            .iter()
            .map(|i| (i.orbit_size() * i.dim * i.dim) as u64)
            .sum();
        if dim_sum != group.order() as u64 {
            return Err(WedderburnError::DimensionCountOff {
                sum: dim_sum,
                order: group.order() as u64,
            });
        }
        let orbit_sum: usize = irreps.iter().map(|i| i.orbit_size()).sum();
        if orbit_sum != classes.len() {
            return Err(WedderburnError::ClassCountOff {
                got: orbit_sum,
                expected: classes.len(),
            });
        }
        let mut data = WedderburnData {
            group: group.clone(),
            conductor,
            classes,
            class_of,
            components: irreps,
            idempotents: Vec::new(),
        };
        data.idempotents = (0..data.components.len())
            .map(|i| data.central_from_component(i, &Cyclo::one(conductor)))
            .collect();
        // idempotents must sum to 1 and be idempotent
        let mut total = GaElem::zero(group);
        for e in &data.idempotents {
            if e.mul(e) != *e {
                return Err(WedderburnError::IdempotentsDoNotSumToOne);
            }
            total = total.add(e);
        }
        if total != GaElem::one(group) {
            return Err(WedderburnError::IdempotentsDoNotSumToOne);
        }
        Ok(data)
    }

    /// Validate user-supplied irreducibles (one per Galois orbit expected).
    pub fn validate(
        group: &Arc<FiniteGroup>,
        irreps: Vec<Irrep>,
    ) -> Result<WedderburnData, WedderburnError> {
        // recheck declared stabilizers against the character values
        for (i, irrep) in irreps.iter().enumerate() {
            let expect: Vec<u64> = units_mod(irrep.conductor)
                .into_iter()
                .filter(|&k| irrep.character.iter().all(|v| v.galois(k) == *v))
                .collect();
            if irrep.stabilizer != expect {
                return Err(WedderburnError::StabilizerMismatch { component: i });
            }
        }
        WedderburnData::assemble(group, irreps, false)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn components(&self) -> &[Irrep] {
        &self.components
    }

    pub fn idempotent(&self, i: usize) -> &GaElem {
        &self.idempotents[i]
    }

    /// Character value chi_i(g).
    pub fn char_value(&self, i: usize, g: usize) -> &Cyclo {
        &self.components[i].character[self.class_of[g]]
    }

    /// Wedderburn coordinate of a central element at component i: the scalar
    /// by which it acts through the i-th irreducible.
    pub fn component_of_central(&self, x: &GaElem, i: usize) -> Cyclo {
        let m = self.conductor;
        let d = self.components[i].dim as i64;
        let mut acc = Cyclo::zero(m);
        for (g, c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.char_value(i, g).scale(c));
            }
        }
        acc.scale(&Rat::new(1.into(), d.into()))
    }

    /// The unique central element of `Q[G]` whose i-th Wedderburn coordinate
    /// is `value` (which must lie in the character field) and whose other
    /// coordinates vanish.
    pub fn central_from_component(&self, i: usize, value: &Cyclo) -> GaElem {
        let comp = &self.components[i];
        let order = self.group.order() as i64;
        let stab = comp.stabilizer.len() as i64;
        let factor = Rat::new((comp.dim as i64).into(), (order * stab).into());
        let coeffs: Vec<Rat> = (0..self.group.order())
            .map(|g| {
                let chi_inv = self.char_value(i, self.group.inv(g));
                let t = value.mul(chi_inv).trace_to_q();
                t * &factor
            })
            .collect();
        GaElem::from_coeffs(&self.group, coeffs)
    }
}

/// Splitting data for the builtin families: abelian groups (characters via
/// the invariant-factor decomposition), dihedral groups, the quaternion
/// group, symmetric groups on 3 and 4 letters, and Aff(p) for prime p.
pub fn builtin_wedderburn(group: &Arc<FiniteGroup>) -> Result<WedderburnData, WedderburnError> {
    let name = group.name().to_string();
    if group.is_abelian() {
        let irreps = abelian_irreps(group)?;
        return WedderburnData::assemble(group, irreps, true);
    }
    let irreps =
        if name.starts_with('D') && group.order().is_multiple_of(2) && dihedral_shape(group) {
            dihedral_irreps(group)
        } else if name == "Q8" {
            quaternion_irreps(group)
        } else if name == "S3" || name == "S4" {
            symmetric_irreps(group)
        } else if name.starts_with("Aff(") {
            affine_irreps(group)
        } else {
            return Err(WedderburnError::UnsupportedGroup(name));
        }?;
    WedderburnData::assemble(group, irreps, true)
}

/// Check the element-indexing contract of the dihedral builtin.
fn dihedral_shape(group: &FiniteGroup) -> bool {
    let n = group.order() / 2;
    if n == 0 {
        return false;
    }
    (group.order_of(1) == n as u64 || n == 1) && group.order_of(n) == 2
}

fn abelian_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>, WedderburnError> {
    let m = group.exponent();
    let n = group.order();
    if n == 1 {
        let img = vec![Mat::identity_like(1, &Cyclo::zero(1))];
        return Ok(vec![Irrep::new(group, 1, img)?]);
    }
    let gens = group.generators().to_vec();
    let r = gens.len();
    // exponent vectors from a BFS spanning tree of the Cayley graph
    let mut expr: Vec<Option<Vec<i64>>> = vec![None; n];
    expr[group.identity()] = Some(vec![0; r]);
    let mut queue = vec![group.identity()];
    while let Some(x) = queue.pop() {
        let ex = expr[x].clone().unwrap();
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if expr[y].is_none() {
                let mut ey = ex.clone();
                ey[i] += 1;
                expr[y] = Some(ey);
                queue.push(y);
            }
        }
    }
    let expr: Vec<Vec<i64>> = expr.into_iter().map(|e| e.unwrap()).collect();
    // relation lattice: expr[x] + e_i - expr[x * g_i] for all x, i
    let mut rels = Vec::new();
    for x in 0..n {
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            let mut rel: Vec<crate::exact::Int> = (0..r)
                .map(|j| crate::exact::Int::from(expr[x][j] - expr[y][j]))
                .collect();
            rel[i] += 1;
            rels.push(rel);
        }
    }
    let rel_basis = hnf_rows(rels);
    let rel_mat = Mat::from_rows(rel_basis);
    let s = snf(&rel_mat);
    // invariant factors d_j with Z^r / relations = prod Z/d_j via x -> x V
    let d: Vec<i64> = s
        .diag
        .iter()
        .map(|x| {
            let v: i64 = x.try_into().expect("small invariant factor");
            v
        })
        .collect();
    assert_eq!(d.len(), r, "relation lattice must have full rank");
    let total: i64 = d.iter().product();
    assert_eq!(total as usize, n, "relations must cut out the whole group");
    // coordinates of every element in the invariant-factor basis
    let coords: Vec<Vec<i64>> = (0..n)
        .map(|x| {
            (0..r)
                .map(|j| {
                    let mut acc = 0i64;
                    for k in 0..r {
                        let vkj: i64 = (&s.v[k][j]).try_into().expect("small transform entry");
                        acc += expr[x][k] * vkj;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // all characters: t ranges over prod Z/d_j
    let mut irreps = Vec::new();
    let mut t = vec![0i64; r];
    loop {
        let images: Vec<Mat<Cyclo>> = (0..n)
            .map(|x| {
                let mut e: i64 = 0;
                for j in 0..r {
                    e += (m as i64 / d[j]) * t[j] * coords[x][j];
                }
                Mat::from_rows(vec![vec![Cyclo::root_power(m, e)]])
            })
            .collect();
        irreps.push(Irrep::new(group, m, images)?);
        // next tuple
        let mut j = 0;
        loop {
            if j == r {
                return Ok(irreps);
            }
            t[j] += 1;
            if t[j] < d[j] {
                break;
            }
            t[j] = 0;
            j += 1;
        }
    }
}

fn dihedral_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>, WedderburnError> {
    let two_n = group.order();
    let n = two_n / 2;
    let m = group.exponent();
    let mut irreps = Vec::new();
    // linear characters factor through the abelianization
    let signs: &[(i64, i64)] = if n % 2 == 1 {
        &[(1, 1), (1, -1)]
    } else {
        &[(1, 1), (1, -1), (-1, 1), (-1, -1)]
    };
    for &(es, et) in signs {
        let images: Vec<Mat<Cyclo>> = (0..two_n)
            .map(|x| {
                let (i, e) = (x % n, x / n);
                let mut v = es.pow((i % 2) as u32) * et.pow(e as u32);
                if es == 1 {
                    v = et.pow(e as u32);
                }
                Mat::from_rows(vec![vec![Cyclo::from_int(m, v)]])
            })
            .collect();
        irreps.push(Irrep::new(group, m, images)?);
    }
    // two-dimensional: s -> diag(z^k, z^-k), t -> antidiag(1,1)
    let step = (m / n as u64) as i64;
    for k in 1..n {
        if 2 * k >= n && n > 1 {
            break;
        }
        let z = Cyclo::zero(m);
        let sig = Mat::from_rows(vec![
            vec![Cyclo::root_power(m, step * k as i64), z.clone()],
            vec![z.clone(), Cyclo::root_power(m, -step * k as i64)],
        ]);
        let tau = Mat::from_rows(vec![
            vec![z.clone(), Cyclo::one(m)],
            vec![Cyclo::one(m), z.clone()],
        ]);
        irreps.push(Irrep::from_generator_images(
            group,
            m,
            &[(1, sig), (n, tau)],
        )?);
    }
    Ok(irreps)
}

fn quaternion_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>, WedderburnError> {
    let m = 4;
    let mut irreps = Vec::new();
    // linear characters factor through Q8 / {±1}
    for (ei, ej) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let images: Vec<Mat<Cyclo>> = (0..8usize)
            .map(|x| {
                let b = x % 4;
                let v = match b {
                    0 => 1,
                    1 => ei,
                    2 => ej,
                    _ => ei * ej,
                };
                Mat::from_rows(vec![vec![Cyclo::from_int(m, v)]])
            })
            .collect();
        irreps.push(Irrep::new(group, m, images)?);
    }
    // the 2-dimensional component
    let z = Cyclo::zero(m);
    let iu = Mat::from_rows(vec![
        vec![Cyclo::root_power(m, 1), z.clone()],
        vec![z.clone(), Cyclo::root_power(m, -1)],
    ]);
    let ju = Mat::from_rows(vec![
        vec![z.clone(), Cyclo::one(m)],
        vec![Cyclo::one(m).neg(), z.clone()],
    ]);
    irreps.push(Irrep::from_generator_images(group, m, &[(1, iu), (2, ju)])?);
    Ok(irreps)
}

fn perm_parity(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Matrix of a permutation acting on the basis w_i = e_i - e_0, i = 1..n-1:
/// pi(w_c) = w_{pi(c)} - w_{pi(0)}.
fn deleted_perm_matrix(m: u64, p: &[usize]) -> Mat<Cyclo> {
    let n = p.len();
    let mut mat = Mat::zero_like(n - 1, n - 1, &Cyclo::zero(m));
    for c in 1..n {
        let target = p[c];
        if target != 0 {
            let cur = mat.at(target - 1, c - 1).add(&Cyclo::one(m));
            mat.set(target - 1, c - 1, cur);
        }
        let anchor = p[0];
        if anchor != 0 {
            let cur = mat.at(anchor - 1, c - 1).sub(&Cyclo::one(m));
            mat.set(anchor - 1, c - 1, cur);
        }
    }
    mat
}

fn symmetric_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>, WedderburnError> {
    let n = match group.order() {
        6 => 3,
        24 => 4,
        _ => return Err(WedderburnError::UnsupportedGroup(group.name().into())),
    };
    let m = group.exponent();
    let perms = crate::grp::builtins::all_perms(n);
    let mut irreps = Vec::new();
    // trivial and sign
    for use_sign in [false, true] {
        let images: Vec<Mat<Cyclo>> = perms
            .iter()
            .map(|p| {
                let v = if use_sign { perm_parity(p) } else { 1 };
                Mat::from_rows(vec![vec![Cyclo::from_int(m, v)]])
            })
            .collect();
        irreps.push(Irrep::new(group, m, images)?);
    }
    // standard (n-1)-dimensional, and its sign twist for n = 4
    let std_images: Vec<Mat<Cyclo>> = perms.iter().map(|p| deleted_perm_matrix(m, p)).collect();
    if n == 4 {
        let twisted: Vec<Mat<Cyclo>> = perms
            .iter()
            .zip(&std_images)
            .map(|(p, im)| {
                let s = Cyclo::from_int(m, perm_parity(p));
                im.map(|x| x.mul(&s))
            })
            .collect();
        irreps.push(Irrep::new(group, m, twisted)?);
        // the 2-dimensional component factors through the action on the
        // three pairings of {0,1,2,3}
        let pairings: [[usize; 4]; 3] = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let quotient: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                // p sends pairing q to the pairing p q p^-1
                (0..3)
                    .map(|qi| {
                        let q = &pairings[qi];
                        let mut pinv = [0; 4];
                        for (i, &pi) in p.iter().enumerate() {
                            pinv[pi] = i;
                        }
                        let conj: Vec<usize> = (0..4).map(|x| p[q[pinv[x]]]).collect();
                        pairings
                            .iter()
                            .position(|r| r[..] == conj[..])
                            .expect("conjugate of a pairing is a pairing")
                    })
                    .collect()
            })
            .collect();
        let two_dim: Vec<Mat<Cyclo>> = quotient.iter().map(|q| deleted_perm_matrix(m, q)).collect();
        irreps.push(Irrep::new(group, m, two_dim)?);
    }
    irreps.push(Irrep::new(group, m, std_images)?);
    Ok(irreps)
}

fn affine_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<Irrep>, WedderburnError> {
    // elements are (a, b): x -> a x + b on F_p, index (a-1) p + b
    let n = group.order();
    let p = {
        // order = p (p-1)
        let mut q = 2;
        while q * (q - 1) != n {
            q += 1;
        }
        q
    };
    let m = group.exponent();
    // linear characters through the multiplier a, cyclic of order p-1
    let root = (2..p)
        .find(|&g| {
            let mut x = 1usize;
            let mut ord = 0;
            loop {
                x = x * g % p;
                ord += 1;
                if x == 1 {
                    break;
                }
            }
            ord == p - 1
        })
        .unwrap_or(1);
    let mut dlog = vec![0usize; p];
    {
        let mut x = 1usize;
        for e in 0..p - 1 {
            dlog[x] = e;
            x = x * root % p;
        }
    }
    let zeta_step = (m as usize / (p - 1)) as i64;
    let mut irreps = Vec::new();
    for t in 0..p - 1 {
        let images: Vec<Mat<Cyclo>> = (0..n)
            .map(|x| {
                let a = x / p + 1;
                let e = (dlog[a] * t) as i64;
                Mat::from_rows(vec![vec![Cyclo::root_power(m, zeta_step * e)]])
            })
            .collect();
        irreps.push(Irrep::new(group, m, images)?);
    }
    // the (p-1)-dimensional component from the doubly transitive action
    let images: Vec<Mat<Cyclo>> = (0..n)
        .map(|x| {
            let (a, b) = (x / p + 1, x % p);
            let perm: Vec<usize> = (0..p).map(|v| (a * v + b) % p).collect();
            deleted_perm_matrix(m, &perm)
        })
        .collect();
    irreps.push(Irrep::new(group, m, images)?);
    Ok(irreps)
}
