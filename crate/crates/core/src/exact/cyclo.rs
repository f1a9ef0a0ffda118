//! Elements of the cyclotomic field `Q(zeta_m)` in the power basis modulo
//! the m-th cyclotomic polynomial, together with the Galois action
//! `zeta_m -> zeta_m^k`.
//!
//! One ambient conductor is fixed per computation; subfields are handled by
//! Galois-stability certificates rather than separate field types. The
//! cyclotomic polynomial and the reduction table for powers of `zeta_m` are
//! computed once per conductor and cached process-wide.

use super::{euler_phi, gcd_u64, rat_int, units_mod, ExactError, Int, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

// ---- dense polynomial helpers over Q (internal) ----

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b; b must have invertible leading
/// coefficient (we only divide by monic or rational-leading polynomials).
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor").clone();
    assert!(!lead.is_zero(), "division by zero polynomial");
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
        let d = rem.len() - 1;
        let c = rem.last().unwrap() / &lead;
        quot[d - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[d - db + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Monic cyclotomic polynomial Phi_m, ascending coefficients.
fn cyclotomic_poly(m: u64) -> Vec<Rat> {
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m
    let mut num = vec![Rat::zero(); m as usize + 1];
    num[0] = -Rat::one();
    num[m as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in 1..m {
        if m.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let (q, r) = poly_divrem(&num, &den);
    assert!(
        r.iter().all(|c| c.is_zero()),
        "x^m - 1 must be divisible by the product of lower cyclotomics"
    );
    q
}

// ---- per-conductor context ----

/// Cached data for one conductor: Phi_m, the reduction of every power of
/// zeta_m to the power basis, and the traces of the basis elements.
pub struct CycloCtx {
    m: u64,
    phi: usize,
    /// zeta_m^e in the power basis, for e in 0..max(m, 2*phi).
    powers: Vec<Vec<Rat>>,
    /// Phi_m, ascending, monic.
    min_poly: Vec<Rat>,
    /// Tr_{Q(zeta_m)/Q}(zeta_m^j) for j in 0..phi.
    traces: Vec<Rat>,
}

fn ctx_cache() -> &'static Mutex<HashMap<u64, Arc<CycloCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloCtx {
    pub fn get(m: u64) -> Arc<CycloCtx> {
        assert!(m >= 1, "conductor must be positive");
        let mut cache = ctx_cache().lock().unwrap();
        if let Some(ctx) = cache.get(&m) {
            return ctx.clone();
        }
        let ctx = Arc::new(CycloCtx::build(m));
        cache.insert(m, ctx.clone());
        ctx
    }

    fn build(m: u64) -> CycloCtx {
        let phi = euler_phi(m) as usize;
        let min_poly = cyclotomic_poly(m);
        assert_eq!(min_poly.len(), phi + 1);
        let max_e = (2 * phi).max(m as usize) + 1;
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(max_e);
        for e in 0..max_e {
            if e < phi {
                let mut v = vec![Rat::zero(); phi];
                v[e] = Rat::one();
                powers.push(v);
            } else {
                // zeta^e = zeta * zeta^(e-1), reduced by Phi_m
                let prev = &powers[e - 1];
                let mut v = vec![Rat::zero(); phi + 1];
                v[1..=phi].clone_from_slice(prev);
                let top = v.pop().unwrap();
                if !top.is_zero() {
                    // subtract top * (Phi_m - x^phi)
                    for (j, c) in min_poly[..phi].iter().enumerate() {
                        v[j] -= c * &top;
                    }
                }
                powers.push(v);
            }
        }
        let mut ctx = CycloCtx {
            m,
            phi,
            powers,
            min_poly,
            traces: Vec::new(),
        };
        // trace of x = sum over units k of the image of x under zeta -> zeta^k
        let units = units_mod(m);
        let mut traces = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut t = Rat::zero();
            for &k in &units {
                let img = &ctx.powers[((j as u64 * k) % m) as usize];
                t += &img[0];
            }
            traces.push(t);
        }
        ctx.traces = traces;
        ctx
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

/// An element of Q(zeta_m), canonically reduced in the power basis.
#[derive(Clone)]
pub struct Cyclo {
    m: u64,
    coeffs: Vec<Rat>,
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclo {}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.m, j)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.m, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Cyclo {
    pub fn zero(m: u64) -> Cyclo {
        let phi = euler_phi(m) as usize;
        Cyclo {
            m,
            coeffs: vec![Rat::zero(); phi],
        }
    }

    pub fn one(m: u64) -> Cyclo {
        Cyclo::from_rat(m, Rat::one())
    }

    pub fn from_rat(m: u64, r: Rat) -> Cyclo {
        let mut c = Cyclo::zero(m);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(m: u64, n: i64) -> Cyclo {
        Cyclo::from_rat(m, rat_int(n))
    }

    /// zeta_m^e.
    pub fn root_power(m: u64, e: i64) -> Cyclo {
        let ctx = CycloCtx::get(m);
        let e = e.rem_euclid(m as i64) as usize;
        Cyclo {
            m,
            coeffs: ctx.powers[e].clone(),
        }
    }

    pub fn from_coeffs(m: u64, coeffs: Vec<Rat>) -> Cyclo {
        assert_eq!(coeffs.len(), euler_phi(m) as usize);
        Cyclo { m, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the element is the rational constant r.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Cyclo) {
        assert_eq!(self.m, other.m, "mixed cyclotomic conductors");
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        self.check(other);
        Cyclo {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.check(other);
        Cyclo {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        self.check(other);
        let ctx = CycloCtx::get(self.m);
        let phi = ctx.phi;
        let mut out = vec![Rat::zero(); phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let red = &ctx.powers[i + j];
                for (t, r) in out.iter_mut().zip(red) {
                    *t += r * &prod;
                }
            }
        }
        Cyclo {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_m. None for zero.
    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let ctx = CycloCtx::get(self.m);
        if let Some(r) = self.as_rat() {
            return Some(Cyclo::from_rat(self.m, r.recip()));
        }
        // extended gcd of (self as poly, Phi_m): s*a + t*Phi = g, g constant
        let mut a: Vec<Rat> = self.coeffs.clone();
        poly_trim(&mut a);
        let mut b = ctx.min_poly.clone();
        let mut s0 = vec![Rat::one()];
        let mut s1 = vec![Rat::zero()];
        loop {
            if b.len() == 1 && b[0].is_zero() {
                break;
            }
            let (q, r) = poly_divrem(&a, &b);
            // (a, b) <- (b, r); (s0, s1) <- (s1, s0 - q*s1)
            let qs1 = poly_mul(&q, &s1);
            let mut s2 = vec![Rat::zero(); s0.len().max(qs1.len())];
            for (i, c) in s0.iter().enumerate() {
                s2[i] += c;
            }
            for (i, c) in qs1.iter().enumerate() {
                s2[i] -= c;
            }
            poly_trim(&mut s2);
            a = b;
            b = r;
            s0 = s1;
            s1 = s2;
        }
        // a is the gcd, a nonzero constant since Phi_m is irreducible and
        // self is a nonzero element of degree < phi
        assert_eq!(a.len(), 1, "cyclotomic polynomial must be irreducible");
        let g = a[0].clone();
        let mut coeffs = vec![Rat::zero(); ctx.phi];
        for (i, c) in s0.iter().enumerate() {
            // s0 has degree < phi by the euclidean invariant
            coeffs[i] = c / &g;
        }
        Some(Cyclo { m: self.m, coeffs })
    }

    /// Image under zeta_m -> zeta_m^k; requires gcd(k, m) = 1.
    pub fn galois(&self, k: u64) -> Cyclo {
        assert_eq!(gcd_u64(k % self.m.max(1), self.m), 1, "residue not a unit");
        let ctx = CycloCtx::get(self.m);
        let mut out = vec![Rat::zero(); ctx.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as u64) * (k % self.m)) % self.m;
            let red = &ctx.powers[e as usize];
            for (t, r) in out.iter_mut().zip(red) {
                *t += r * c;
            }
        }
        Cyclo {
            m: self.m,
            coeffs: out,
        }
    }

    /// Tr_{Q(zeta_m)/Q}.
    pub fn trace_to_q(&self) -> Rat {
        let ctx = CycloCtx::get(self.m);
        let mut t = Rat::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                t += c * &ctx.traces[j];
            }
        }
        t
    }

    /// Common denominator of the coefficients.
    pub fn denominator(&self) -> Int {
        let mut d = Int::one();
        for c in &self.coeffs {
            d = super::lcm(&d, c.denom());
        }
        d
    }
}

/// A Galois automorphism of Q(zeta_m): zeta_m -> zeta_m^k with k a unit
/// modulo m. Composition corresponds to multiplication of residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisElement {
    m: u64,
    k: u64,
}

impl GaloisElement {
    pub fn new(m: u64, k: i64) -> Result<GaloisElement, ExactError> {
        let k = k.rem_euclid(m as i64) as u64;
        if gcd_u64(k, m) != 1 {
            return Err(ExactError::BadGaloisResidue { m, k });
        }
        Ok(GaloisElement { m, k })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn residue(&self) -> u64 {
        self.k
    }

    pub fn compose(&self, other: &GaloisElement) -> Result<GaloisElement, ExactError> {
        if self.m != other.m {
            return Err(ExactError::ContextMismatch);
        }
        Ok(GaloisElement {
            m: self.m,
            k: (self.k * other.k) % self.m,
        })
    }
}

/// Apply a Galois automorphism to a cyclotomic number.
pub fn galois_apply(x: &Cyclo, sigma: &GaloisElement) -> Result<Cyclo, ExactError> {
    if x.conductor() != sigma.conductor() {
        return Err(ExactError::ContextMismatch);
    }
    Ok(x.galois(sigma.k))
}
