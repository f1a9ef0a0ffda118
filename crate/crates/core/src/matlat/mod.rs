//! Exact matrices over the supported scalar kinds, fraction-free
//! determinants, division-free characteristic polynomials, minor
//! enumeration, and integer lattices with Hermite/Smith normal forms.

mod algebra;
mod lattice;

use crate::exact::{Cyclo, Int, Rat};
use num_integer::Integer as _;
use num_traits::{One, Zero};
use std::fmt;

pub use algebra::StructureAlgebra;
pub use lattice::{
    hnf_rows, kernel_int, lattice_from_dual_constraints, rat_inverse, snf, IntegerLattice,
    LocalLattice, SnfResult,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    NotSquare,
    DimMismatch,
    MinorCapExceeded { needed: u128, cap: u128 },
    KOutOfRange,
    DegenerateForm,
    RankDeficient,
    PrimeMismatch,
    MissingAlgebra,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NotSquare => write!(f, "matrix is not square"),
            MatError::DimMismatch => write!(f, "dimension mismatch"),
            MatError::MinorCapExceeded { needed, cap } => {
                write!(f, "minor enumeration needs {needed} minors, cap is {cap}")
            }
            MatError::KOutOfRange => write!(f, "minor size out of range"),
            MatError::DegenerateForm => write!(f, "degenerate trace form"),
            MatError::RankDeficient => write!(f, "lattice is not of full rank"),
            MatError::PrimeMismatch => write!(f, "localization primes differ"),
            MatError::MissingAlgebra => write!(f, "operation requires a structure algebra"),
        }
    }
}

impl std::error::Error for MatError {}

/// Scalars a matrix can be built over. `exact_div` must be exact whenever
/// the algorithms below call it (Bareiss divides by previous pivots, which
/// divide exactly in any integral domain; field kinds divide outright).
pub trait RingScalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn exact_div(&self, other: &Self) -> Self;
}

impl RingScalar for Int {
    fn zero_like(&self) -> Self {
        Int::zero()
    }
    fn one_like(&self) -> Self {
        Int::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl RingScalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl RingScalar for Cyclo {
    fn zero_like(&self) -> Self {
        Cyclo::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        Cyclo::one(self.conductor())
    }
    fn add(&self, other: &Self) -> Self {
        Cyclo::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclo::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclo::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn is_zero_elem(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero"))
    }
}

/// Dense matrix with homogeneous scalar kind, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
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

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Mat<T> {
        let r = rows.len();
        assert!(r >= 1, "empty matrix");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Mat<T> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat<T> {
        Mat::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.at(row_idx[r], col_idx[c]).clone()
        })
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: RingScalar> Mat<T> {
    pub fn identity_like(n: usize, template: &T) -> Mat<T> {
        Mat::from_fn(n, n, |r, c| {
            if r == c {
                template.one_like()
            } else {
                template.zero_like()
            }
        })
    }

    pub fn zero_like(rows: usize, cols: usize, template: &T) -> Mat<T> {
        Mat::from_fn(rows, cols, |_, _| template.zero_like())
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = self.at(r, 0).mul(other.at(0, c));
            for k in 1..self.cols {
                acc = acc.add(&self.at(r, k).mul(other.at(k, c)));
            }
            acc
        })
    }

    pub fn add_mat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        self.map(|x| x.mul(s))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero_elem())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. The
    /// divisions are by previous pivots and are exact in any integral
    /// domain, so no denominators appear for integer input.
    pub fn det(&self) -> Result<T, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let n = self.rows;
        let template = &self.entries[0];
        if n == 0 {
            return Ok(template.one_like());
        }
        let mut a: Vec<Vec<T>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = template.one_like();
        for k in 0..n - 1 {
            if a[k][k].is_zero_elem() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero_elem()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(template.zero_like()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.exact_div(&prev);
                }
                a[i][k] = template.zero_like();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    /// Characteristic polynomial det(X*I - M) by the Berkowitz recurrence
    /// (division-free). Returns ascending coefficients, monic of degree n.
    pub fn charpoly(&self) -> Result<Vec<T>, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let n = self.rows;
        let template = &self.entries[0];
        let zero = template.zero_like();
        let one = template.one_like();
        // polynomial accumulator, ascending; starts as the constant 1
        let mut poly = vec![one.clone()];
        for k in 0..n {
            // principal (k+1)x(k+1) leading submatrix data
            // Toeplitz column for Berkowitz: c_0 = 1, c_1 = -a_kk,
            // c_{j+1} = -(R * S^{j-1} * C) for the split of the submatrix
            let akk = self.at(k, k).clone();
            let mut col = Vec::with_capacity(k + 2);
            col.push(one.clone());
            col.push(akk.neg());
            if k > 0 {
                // R = row (a_k0..a_k,k-1), C = column (a_0k..a_k-1,k),
                // S = leading k x k block
                let r_vec: Vec<T> = (0..k).map(|j| self.at(k, j).clone()).collect();
                let c_vec: Vec<T> = (0..k).map(|i| self.at(i, k).clone()).collect();
                let mut v = c_vec.clone();
                for _ in 0..k {
                    // next coefficient: -(R . v)
                    let mut dot = zero.clone();
                    for (a, b) in r_vec.iter().zip(&v) {
                        dot = dot.add(&a.mul(b));
                    }
                    col.push(dot.neg());
                    if col.len() == k + 2 {
                        break;
                    }
                    // v <- S * v
                    let mut nv = vec![zero.clone(); k];
                    for (i, nvi) in nv.iter_mut().enumerate() {
                        for (j, vj) in v.iter().enumerate() {
                            *nvi = nvi.add(&self.at(i, j).mul(vj));
                        }
                    }
                    v = nv;
                }
            }
            // poly <- toeplitz(col) * poly  (polynomial multiplication where
            // col are the coefficients of the new factor, descending in X)
            let mut next = vec![zero.clone(); poly.len() + 1];
            for (i, p) in poly.iter().enumerate() {
                for (j, c) in col.iter().enumerate() {
                    if i + 1 >= j {
                        let idx = i + 1 - j;
                        if idx < next.len() {
                            next[idx] = next[idx].add(&p.mul(c));
                        }
                    }
                }
            }
            poly = next;
        }
        // `poly` now holds the charpoly coefficients descending from X^n at
        // index n; the construction above already keeps ascending order.
        Ok(poly)
    }
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

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next combination in lexicographic order
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

/// Determinants of all k x k submatrices, enumerated in lexicographic order
/// of (row set, column set).
pub fn minors_enum<T: RingScalar>(m: &Mat<T>, k: usize, cap: u128) -> Result<Vec<T>, MatError> {
    if k > m.rows() || k > m.cols() {
        return Err(MatError::KOutOfRange);
    }
    let template = m.at(0, 0);
    if k == 0 {
        // empty determinant convention
        return Ok(vec![template.one_like()]);
    }
    let needed = binomial(m.rows(), k) * binomial(m.cols(), k);
    if needed > cap {
        return Err(MatError::MinorCapExceeded { needed, cap });
    }
    let row_sets = combinations(m.rows(), k);
    let col_sets = combinations(m.cols(), k);
    let mut out = Vec::with_capacity(needed as usize);
    for rs in &row_sets {
        for cs in &col_sets {
            out.push(m.submatrix(rs, cs).det()?);
        }
    }
    Ok(out)
}

pub const DEFAULT_MINOR_CAP: u128 = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat_int};
    use rand::{Rng, SeedableRng};

    fn imat(rows: Vec<Vec<i64>>) -> Mat<Int> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn det_examples() {
        assert_eq!(imat(vec![vec![4, 1], vec![1, 4]]).det().unwrap(), int(15));
        assert_eq!(Mat::identity_like(3, &int(0)).det().unwrap(), int(1));
        assert_eq!(imat(vec![vec![2, 4], vec![1, 2]]).det().unwrap(), int(0));
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        fn cofactor_det(m: &Mat<Int>) -> Int {
            let n = m.rows();
            if n == 1 {
                return m.at(0, 0).clone();
            }
            let mut acc = Int::zero();
            let rows: Vec<usize> = (1..n).collect();
            for c in 0..n {
                let cols: Vec<usize> = (0..n).filter(|&x| x != c).collect();
                let minor = cofactor_det(&m.submatrix(&rows, &cols));
                let term = m.at(0, c) * minor;
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..6);
            let m = Mat::from_fn(n, n, |_, _| int(rng.gen_range(-6..7)));
            assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn charpoly_examples() {
        // 1x1 [0] -> X
        let m = imat(vec![vec![0]]);
        assert_eq!(m.charpoly().unwrap(), vec![int(0), int(1)]);
        // 2x2 zero -> X^2
        let m = imat(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(m.charpoly().unwrap(), vec![int(0), int(0), int(1)]);
        // companion matrix of X^2 - X - 1
        let m = imat(vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(m.charpoly().unwrap(), vec![int(-1), int(-1), int(1)]);
    }

    #[test]
    fn charpoly_constant_term_is_det() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(1..6);
            let m = Mat::from_fn(n, n, |_, _| int(rng.gen_range(-4..5)));
            let cp = m.charpoly().unwrap();
            assert_eq!(cp.len(), n + 1);
            assert_eq!(cp[n], int(1), "monic");
            let det = m.det().unwrap();
            let expected = if n % 2 == 0 {
                det.clone()
            } else {
                -det.clone()
            };
            assert_eq!(cp[0], expected);
        }
    }

    #[test]
    fn charpoly_rational_and_cayley_hamilton() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let n = rng.gen_range(1..5);
            let m = Mat::from_fn(n, n, |_, _| rat_int(rng.gen_range(-3..4)));
            let cp = m.charpoly().unwrap();
            // evaluate cp(m) and check it vanishes
            let mut acc = Mat::zero_like(n, n, m.at(0, 0));
            let mut pow = Mat::identity_like(n, m.at(0, 0));
            for c in &cp {
                acc = acc.add_mat(&pow.scale(c));
                pow = pow.matmul(&m);
            }
            assert!(acc.is_zero(), "Cayley-Hamilton fails for {m:?}");
        }
    }

    #[test]
    fn minors_examples() {
        let m = imat(vec![vec![2, 0, 0], vec![0, 3, 0]]);
        assert_eq!(
            minors_enum(&m, 2, DEFAULT_MINOR_CAP).unwrap(),
            vec![int(6), int(0), int(0)]
        );
        let d = imat(vec![vec![2, 0], vec![0, 4]]);
        assert_eq!(minors_enum(&d, 2, DEFAULT_MINOR_CAP).unwrap(), vec![int(8)]);
        assert_eq!(minors_enum(&d, 0, DEFAULT_MINOR_CAP).unwrap(), vec![int(1)]);
    }

    #[test]
    fn minors_against_bruteforce_small() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let m = Mat::from_fn(4, 5, |_, _| int(rng.gen_range(-3..4)));
            for k in 1..=3usize {
                let got = minors_enum(&m, k, DEFAULT_MINOR_CAP).unwrap();
                // brute force in the same lexicographic order
                let mut expected = Vec::new();
                for rs in combinations(4, k) {
                    for cs in combinations(5, k) {
                        expected.push(m.submatrix(&rs, &cs).det().unwrap());
                    }
                }
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn minor_cap_enforced() {
        let m = Mat::from_fn(20, 20, |_, _| int(1));
        assert!(matches!(
            minors_enum(&m, 10, 1000),
            Err(MatError::MinorCapExceeded { .. })
        ));
    }
}
