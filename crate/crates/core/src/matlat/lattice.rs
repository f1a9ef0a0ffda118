//! Integer lattices in `Q^n`: Hermite and Smith normal forms, membership,
//! sums, products under a structure algebra, conductors and trace-form duals.
//!
//! A lattice is stored as a row-HNF integer basis together with one positive
//! denominator; the pair is fully canonical, so structural equality decides
//! global lattice equality. Local (at `p`) comparisons are made by mutual
//! containment with prime-to-`p` coefficient denominators.

use super::{Mat, MatError, StructureAlgebra};
use crate::exact::{gcd, is_p_integral, lcm, Int, Rat};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row Hermite normal form: pivots positive, pivot columns strictly
/// increasing, entries above each pivot reduced into [0, pivot). Zero rows
/// are dropped.
pub fn hnf_rows(mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut top = 0usize;
    for col in 0..ncols {
        if top >= rows.len() {
            break;
        }
        // euclidean reduction of the column below `top`
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(top) {
                if !row[col].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if rows[i][col].abs() < rows[b][col].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut done = true;
            let pivot = rows[top][col].clone();
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][col], &pivot);
                for j in 0..ncols {
                    let t = &rows[top][j] * &q;
                    rows[i][j] -= t;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col].is_zero() {
            continue;
        }
        if rows[top][col].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = rows[top][col].clone();
        for i in 0..top {
            let q = rows[i][col].div_floor(&pivot);
            if !q.is_zero() {
                for j in 0..ncols {
                    let t = &rows[top][j] * &q;
                    rows[i][j] -= t;
                }
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

/// Quotient rounding to nearest (ties toward even floor), keeping remainders
/// small during HNF reduction.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    let two_r: Int = &r * 2;
    if two_r.abs() > b.abs() {
        q + Int::one()
    } else {
        q
    }
}

/// Basis of the left kernel {v : v * m = 0} of an integer matrix given by
/// rows. The result is a (saturated) HNF basis.
pub fn kernel_int(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    // HNF of [m | I]; rows with vanishing m-part carry kernel vectors
    let aug: Vec<Vec<Int>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..nrows {
                r.push(if i == j { Int::one() } else { Int::zero() });
            }
            r
        })
        .collect();
    let h = hnf_rows(aug);
    let mut kernel = Vec::new();
    for row in h {
        if row[..ncols].iter().all(|x| x.is_zero()) {
            kernel.push(row[ncols..].to_vec());
        }
    }
    hnf_rows(kernel)
}

/// Smith normal form with transforms: u * m * v = diag(d) with d_1 | d_2 | ...
pub struct SnfResult {
    pub diag: Vec<Int>,
    pub u: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
}

pub fn snf(m: &Mat<Int>) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Int>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut u: Vec<Vec<Int>> = identity_rows(rows);
    let mut v: Vec<Vec<Int>> = identity_rows(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        'position: loop {
            // find a nonzero entry in the trailing submatrix, smallest in
            // absolute value
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        match best {
                            None => best = Some((i, j)),
                            Some((bi, bj)) => {
                                if a[i][j].abs() < a[bi][bj].abs() {
                                    best = Some((i, j));
                                }
                            }
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'position;
            };
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);
            let mut clean = true;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][j], &a[t][t]);
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'position;
            }
            // divisibility fixup: pivot must divide the trailing block
            let pivot = a[t][t].clone();
            let mut offender: Option<usize> = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // add row i to row t and restart the position
                    let minus_one = -Int::one();
                    row_sub(&mut a, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break 'position,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..steps).map(|t| a[t][t].clone()).collect();
    SnfResult { diag, u, v }
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(a: &mut [Vec<Int>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn row_sub(a: &mut [Vec<Int>], i: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(&src) {
        *x -= s * q;
    }
}

fn col_sub(a: &mut [Vec<Int>], j: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let s = row[t].clone();
        row[j] -= &s * q;
    }
}

/// Finitely generated subgroup of Q^n: the Z-span of `basis / denom`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient: usize,
    denom: Int,
    basis: Vec<Vec<Int>>,
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Lattice(dim {}, denom {}, basis {:?})",
            self.ambient, self.denom, self.basis
        )
    }
}

impl IntegerLattice {
    pub fn zero(ambient: usize) -> IntegerLattice {
        IntegerLattice {
            ambient,
            denom: Int::one(),
            basis: Vec::new(),
        }
    }

    pub fn standard(ambient: usize) -> IntegerLattice {
        IntegerLattice {
            ambient,
            denom: Int::one(),
            basis: identity_rows(ambient),
        }
    }

    pub fn from_int_rows(ambient: usize, rows: Vec<Vec<Int>>) -> IntegerLattice {
        assert!(rows.iter().all(|r| r.len() == ambient));
        let mut lat = IntegerLattice {
            ambient,
            denom: Int::one(),
            basis: hnf_rows(rows),
        };
        lat.normalize();
        lat
    }

    pub fn from_rat_rows(ambient: usize, rows: &[Vec<Rat>]) -> IntegerLattice {
        assert!(rows.iter().all(|r| r.len() == ambient));
        let mut denom = Int::one();
        for row in rows {
            for x in row {
                denom = lcm(&denom, x.denom());
            }
        }
        let int_rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.numer() * (&denom / x.denom()))
                    .collect()
            })
            .collect();
        let mut lat = IntegerLattice {
            ambient,
            denom,
            basis: hnf_rows(int_rows),
        };
        lat.normalize();
        lat
    }

    fn normalize(&mut self) {
        let mut g = self.denom.clone();
        for row in &self.basis {
            for x in row {
                g = gcd(&g, x);
                if g.is_one() {
                    return;
                }
            }
        }
        if g.is_one() || g.is_zero() {
            return;
        }
        self.denom = &self.denom / &g;
        for row in self.basis.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x / &g;
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn denom(&self) -> &Int {
        &self.denom
    }

    pub fn basis_int(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors as rational rows (basis / denom).
    pub fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Rat::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the Q-span.
    pub fn solve_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient);
        // w = v * denom must be an integer combination over Q of basis rows
        let mut w: Vec<Rat> = v
            .iter()
            .map(|x| x * Rat::from_integer(self.denom.clone()))
            .collect();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pcol = row.iter().position(|x| !x.is_zero());
            let Some(pcol) = pcol else {
                coords.push(Rat::zero());
                continue;
            };
            let c = &w[pcol] / Rat::from_integer(row[pcol].clone());
            if !c.is_zero() {
                for (wj, bj) in w.iter_mut().zip(row) {
                    *wj -= &c * &Rat::from_integer(bj.clone());
                }
            }
            coords.push(c);
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Global membership: v is a Z-combination of the basis.
    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.solve_coords(v) {
            Some(coords) => coords.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    /// Membership up to prime-to-p denominators.
    pub fn contains_local(&self, v: &[Rat], p: u64) -> bool {
        match self.solve_coords(v) {
            Some(coords) => coords.iter().all(|c| is_p_integral(c, p)),
            None => false,
        }
    }

    pub fn sum(&self, other: &IntegerLattice) -> IntegerLattice {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rat();
        rows.extend(other.basis_rat());
        IntegerLattice::from_rat_rows(self.ambient, &rows)
    }

    /// Determinant of a full-rank lattice (product of pivots over denom^n),
    /// always positive.
    pub fn det_full(&self) -> Result<Rat, MatError> {
        if self.rank() != self.ambient {
            return Err(MatError::RankDeficient);
        }
        let mut num = Int::one();
        for (i, row) in self.basis.iter().enumerate() {
            // HNF pivots sit at the first nonzero entry of each row; for a
            // full-rank lattice that is the diagonal
            num *= &row[i];
        }
        let mut den = Int::one();
        for _ in 0..self.ambient {
            den *= &self.denom;
        }
        Ok(Rat::new(num, den).abs())
    }

    /// Index [other : self] for full-rank self inside full-rank other, as a
    /// positive rational (an integer when the containment holds).
    pub fn index_in(&self, other: &IntegerLattice) -> Result<Rat, MatError> {
        Ok(self.det_full()? / other.det_full()?)
    }
}

/// {x in Q^n : x . u_j in Z for every constraint column u_j}. Errors with
/// `RankDeficient` when the constraints do not pin down a finitely generated
/// lattice (rank < n).
pub fn lattice_from_dual_constraints(
    ambient: usize,
    columns: &[Vec<Rat>],
) -> Result<IntegerLattice, MatError> {
    assert!(columns.iter().all(|c| c.len() == ambient));
    // clear denominators: x . u in Z  <=>  x . (e u) in e Z
    let mut e = Int::one();
    for col in columns {
        for x in col {
            e = lcm(&e, x.denom());
        }
    }
    let int_cols: Vec<Vec<Int>> = columns
        .iter()
        .map(|col| col.iter().map(|x| x.numer() * (&e / x.denom())).collect())
        .collect();
    // W = HNF basis of the lattice spanned by the integer columns; the
    // condition becomes x . W^T in e Z^n
    let h = hnf_rows(int_cols);
    if h.len() < ambient {
        return Err(MatError::RankDeficient);
    }
    // invert the full-rank HNF matrix over Q; rows of e * (H^-1)^T generate
    // the solution lattice
    let hmat = Mat::from_rows(
        h.iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect(),
    );
    let hinv = rat_inverse(&hmat).ok_or(MatError::RankDeficient)?;
    let e_rat = Rat::from_integer(e);
    let rows: Vec<Vec<Rat>> = (0..ambient)
        .map(|r| (0..ambient).map(|c| hinv.at(c, r) * &e_rat).collect())
        .collect();
    Ok(IntegerLattice::from_rat_rows(ambient, &rows))
}

/// Gauss-Jordan inverse over Q. None for singular input.
pub fn rat_inverse(m: &Mat<Rat>) -> Option<Mat<Rat>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut a: Vec<Vec<Rat>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let (arow, irow) = (a[col].clone(), inv[col].clone());
            for (x, s) in a[r].iter_mut().zip(&arow) {
                *x -= &f * s;
            }
            for (x, s) in inv[r].iter_mut().zip(&irow) {
                *x -= &f * s;
            }
        }
    }
    Some(Mat::from_rows(inv))
}

/// A lattice considered up to prime-to-p index: the exact stand-in for a
/// finitely generated Z_p-submodule of Q_p^n.
#[derive(Clone, Debug)]
pub struct LocalLattice {
    prime: u64,
    lat: IntegerLattice,
}

impl LocalLattice {
    pub fn new(prime: u64, lat: IntegerLattice) -> LocalLattice {
        LocalLattice { prime, lat }
    }

    pub fn zero(prime: u64, ambient: usize) -> LocalLattice {
        LocalLattice::new(prime, IntegerLattice::zero(ambient))
    }

    pub fn standard(prime: u64, ambient: usize) -> LocalLattice {
        LocalLattice::new(prime, IntegerLattice::standard(ambient))
    }

    pub fn from_rat_rows(prime: u64, ambient: usize, rows: &[Vec<Rat>]) -> LocalLattice {
        LocalLattice::new(prime, IntegerLattice::from_rat_rows(ambient, rows))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ambient(&self) -> usize {
        self.lat.ambient()
    }

    pub fn rank(&self) -> usize {
        self.lat.rank()
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lat
    }

    pub fn is_zero(&self) -> bool {
        self.lat.is_zero()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.lat.contains_local(v, self.prime)
    }

    fn check(&self, other: &LocalLattice) -> Result<(), MatError> {
        if self.prime != other.prime {
            return Err(MatError::PrimeMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(MatError::DimMismatch);
        }
        Ok(())
    }

    /// Containment up to prime-to-p index.
    pub fn subset_of(&self, other: &LocalLattice) -> Result<bool, MatError> {
        self.check(other)?;
        Ok(self.lat.basis_rat().iter().all(|v| other.contains(v)))
    }

    /// Equality as Z_(p)-modules (mutual prime-to-p inclusion).
    pub fn eq_local(&self, other: &LocalLattice) -> Result<bool, MatError> {
        Ok(self.subset_of(other)? && other.subset_of(self)?)
    }

    pub fn sum(&self, other: &LocalLattice) -> Result<LocalLattice, MatError> {
        self.check(other)?;
        Ok(LocalLattice::new(self.prime, self.lat.sum(&other.lat)))
    }

    /// Lattice generated by pairwise products of basis vectors under `alg`.
    pub fn product(
        &self,
        other: &LocalLattice,
        alg: &StructureAlgebra,
    ) -> Result<LocalLattice, MatError> {
        self.check(other)?;
        if alg.dim() != self.ambient() {
            return Err(MatError::DimMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(LocalLattice::zero(self.prime, self.ambient()));
        }
        let mut rows = Vec::new();
        for a in self.lat.basis_rat() {
            for b in other.lat.basis_rat() {
                rows.push(alg.mul_vec(&a, &b));
            }
        }
        Ok(LocalLattice::from_rat_rows(
            self.prime,
            self.ambient(),
            &rows,
        ))
    }

    /// {x in ambient : x * self ⊆ target} under `alg`. The zero lattice
    /// conducts everywhere, by convention the full standard lattice.
    pub fn conductor_into(
        &self,
        target: &LocalLattice,
        alg: &StructureAlgebra,
    ) -> Result<LocalLattice, MatError> {
        self.check(target)?;
        let n = self.ambient();
        if alg.dim() != n {
            return Err(MatError::DimMismatch);
        }
        if self.is_zero() {
            return Ok(LocalLattice::standard(self.prime, n));
        }
        if target.rank() != n {
            return Err(MatError::RankDeficient);
        }
        // v in target  <=>  v . T in Z^n with T = denom * basis^(-1)
        let t = target_dual_matrix(&target.lat)?;
        let mut columns: Vec<Vec<Rat>> = Vec::new();
        for g in self.lat.basis_rat() {
            // the product x * g as a column vector is M_g x, so the
            // membership constraints on the row vector x read
            // x . (M_g^T T) in Z^n
            let mg = alg.mul_matrix(&g);
            for j in 0..n {
                let col: Vec<Rat> = (0..n)
                    .map(|r| {
                        let mut acc = Rat::zero();
                        for k in 0..n {
                            acc += mg.at(k, r) * t.at(k, j);
                        }
                        acc
                    })
                    .collect();
                columns.push(col);
            }
        }
        let lat = lattice_from_dual_constraints(n, &columns)?;
        Ok(LocalLattice::new(self.prime, lat))
    }

    /// Trace-form dual: {x : Tr(x * l) is p-integral for all l in self}.
    pub fn dual(&self, alg: &StructureAlgebra) -> Result<LocalLattice, MatError> {
        let n = self.ambient();
        let form = alg.trace_form().ok_or(MatError::DegenerateForm)?;
        if self.rank() != n {
            return Err(MatError::RankDeficient);
        }
        let mut columns = Vec::new();
        for l in self.lat.basis_rat() {
            // column: (T . l)
            let col: Vec<Rat> = (0..n)
                .map(|r| {
                    let mut acc = Rat::zero();
                    for k in 0..n {
                        acc += form.at(r, k) * &l[k];
                    }
                    acc
                })
                .collect();
            columns.push(col);
        }
        let lat = lattice_from_dual_constraints(n, &columns)?;
        Ok(LocalLattice::new(self.prime, lat))
    }

    /// Scale by a rational.
    pub fn scale(&self, s: &Rat) -> LocalLattice {
        let rows: Vec<Vec<Rat>> = self
            .lat
            .basis_rat()
            .iter()
            .map(|row| row.iter().map(|x| x * s).collect())
            .collect();
        LocalLattice::from_rat_rows(self.prime, self.ambient(), &rows)
    }

    /// p-part of the index [other : self] as an exact power of p. Requires
    /// full rank on both sides.
    pub fn index_p_power(&self, other: &LocalLattice) -> Result<Int, MatError> {
        self.check(other)?;
        let idx = self.lat.index_in(&other.lat)?;
        let p = Int::from(self.prime);
        let v = match crate::exact::p_valuation(&idx, &p) {
            crate::exact::Valuation::Finite(v) => v,
            crate::exact::Valuation::Infinite => return Err(MatError::RankDeficient),
        };
        Ok(p.pow(v.unsigned_abs() as u32))
    }
}

fn target_dual_matrix(lat: &IntegerLattice) -> Result<Mat<Rat>, MatError> {
    let basis = Mat::from_rows(lat.basis_rat());
    let inv = rat_inverse(&basis).ok_or(MatError::RankDeficient)?;
    Ok(inv)
}
