//! Scalar foundation: arbitrary-precision integers and rationals, the
//! localization of `Z` at a prime, and cyclotomic numbers with their Galois
//! action.
//!
//! `Z_p` is emulated exactly by `Z` localized at `p`: rationals whose
//! denominator is coprime to `p`. Every ideal and lattice downstream is
//! determined up to prime-to-`p` index, so no completion arithmetic is ever
//! needed.

mod cyclo;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub use cyclo::{galois_apply, Cyclo, CycloCtx, GaloisElement};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// Denominator not coprime to the localization prime.
    NotLocal { prime: u64 },
    /// Mixed conductors or mixed localization primes.
    ContextMismatch,
    /// Valuation of zero requested.
    ZeroValuation,
    /// Residue not invertible modulo the conductor.
    BadGaloisResidue { m: u64, k: u64 },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::NotLocal { prime } => {
                write!(f, "denominator is divisible by {prime}")
            }
            ExactError::ContextMismatch => write!(f, "mismatched scalar contexts"),
            ExactError::ZeroValuation => write!(f, "valuation of zero is infinite"),
            ExactError::BadGaloisResidue { m, k } => {
                write!(f, "residue {k} is not invertible mod {m}")
            }
        }
    }
}

impl std::error::Error for ExactError {}

/// Outcome of a `p`-adic valuation; zero has no finite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

/// v_p(x) for a rational x. Returns `Infinite` for x = 0.
pub fn p_valuation(x: &Rat, p: &Int) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

fn int_valuation(n: &Int, p: &Int) -> i64 {
    let mut n = n.abs();
    let mut v = 0i64;
    while !n.is_zero() {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    v
}

/// True iff the denominator of `x` is coprime to `p`, i.e. x lies in `Z_(p)`.
pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    (x.denom() % Int::from(p)) != Int::zero() || x.denom().is_one()
}

/// Strip all factors of `p` from `n` (the prime-to-`p` part).
pub fn prime_to_p_part(n: &Int, p: u64) -> Int {
    let p = Int::from(p);
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() && !n.is_zero() {
            n = q;
        } else {
            return n;
        }
    }
}

/// An element of `Z` localized at `p`: a rational with denominator coprime
/// to `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalScalar {
    prime: u64,
    value: Rat,
}

impl LocalScalar {
    pub fn new(prime: u64, value: Rat) -> Result<Self, ExactError> {
        if !is_p_integral(&value, prime) {
            return Err(ExactError::NotLocal { prime });
        }
        Ok(LocalScalar { prime, value })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn valuation(&self) -> Result<i64, ExactError> {
        match p_valuation(&self.value, &Int::from(self.prime)) {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => Err(ExactError::ZeroValuation),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Ok(0)
    }

    fn combine(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self, ExactError> {
        if self.prime != other.prime {
            return Err(ExactError::ContextMismatch);
        }
        // sums and products of p-integral rationals stay p-integral
        Ok(LocalScalar {
            prime: self.prime,
            value: f(&self.value, &other.value),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, |a, b| a * b)
    }
}

impl fmt::Display for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at {})", self.value, self.prime)
    }
}

/// gcd of two integers, always nonnegative.
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// lcm of two integers, always nonnegative.
pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// Euler totient of m.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Units modulo m, sorted.
pub fn units_mod(m: u64) -> Vec<u64> {
    (1..m.max(2)).filter(|k| gcd_u64(*k, m) == 1).collect()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&rat_int(12), &int(2)), Valuation::Finite(2));
        assert_eq!(p_valuation(&rat(1, 3), &int(3)), Valuation::Finite(-1));
        assert_eq!(p_valuation(&rat(15, 8), &int(5)), Valuation::Finite(1));
        assert_eq!(p_valuation(&rat_int(0), &int(5)), Valuation::Infinite);
    }

    #[test]
    fn valuation_is_additive() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let p = [2i64, 3, 5][rng.gen_range(0..3)];
            let x = rat(rng.gen_range(1..200), rng.gen_range(1..200));
            let y = rat(rng.gen_range(1..200), rng.gen_range(1..200));
            let (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) = (
                p_valuation(&x, &int(p)),
                p_valuation(&y, &int(p)),
                p_valuation(&(x.clone() * y.clone()), &int(p)),
            ) else {
                panic!("nonzero inputs");
            };
            assert_eq!(a + b, c, "v_{p}({x}*{y})");
        }
    }

    #[test]
    fn local_scalar_membership() {
        assert!(LocalScalar::new(3, rat(1, 2)).is_ok());
        assert!(LocalScalar::new(3, rat(1, 3)).is_err());
        assert!(LocalScalar::new(3, rat(6, 2)).is_ok());
    }

    #[test]
    fn phi_and_units() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(units_mod(12), vec![1, 5, 7, 11]);
        assert_eq!(units_mod(5), vec![1, 2, 3, 4]);
    }
}
