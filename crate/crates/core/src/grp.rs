//! Finite groups stored extensionally as multiplication tables, with the
//! builtin families the algebra layers need: cyclic, dihedral, symmetric
//! (n <= 4), the quaternion group of order 8, and the affine group of the
//! prime field F_p.

use crate::exact::{is_prime_u64, lcm_u64};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NotATable(String),
    UnsupportedBuiltin(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotATable(msg) => write!(f, "not a group table: {msg}"),
            GroupError::UnsupportedBuiltin(msg) => write!(f, "unsupported builtin: {msg}"),
        }
    }
}

impl std::error::Error for GroupError {}

/// A finite group on indices 0..n with a validated multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    exponent: u64,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Arc<FiniteGroup>, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotATable("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::NotATable("entries out of range".into()));
            }
        }
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupError::NotATable("no identity element".into()))?;
        // inverses
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::NotATable(format!("element {g} has no inverse")))?;
            inverses[g] = inv;
        }
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotATable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            n,
            table,
            identity,
            inverses,
            generators: Vec::new(),
            exponent: 1,
        };
        g.exponent = (0..n).fold(1u64, |acc, x| lcm_u64(acc, g.order_of(x)));
        g.generators = g.find_generators();
        Ok(Arc::new(g))
    }

    fn find_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.n];
        reached[self.identity] = true;
        let mut count = 1;
        // greedy: repeatedly add the element of largest order outside the
        // current closure
        while count < self.n {
            let next = (0..self.n)
                .filter(|&g| !reached[g])
                .max_by_key(|&g| self.order_of(g))
                .unwrap();
            gens.push(next);
            // closure under multiplication by existing reachable set
            let mut frontier = vec![next];
            while let Some(x) = frontier.pop() {
                if reached[x] {
                    continue;
                }
                reached[x] = true;
                count += 1;
                for y in 0..self.n {
                    if reached[y] {
                        let a = self.table[x][y];
                        let b = self.table[y][x];
                        if !reached[a] {
                            frontier.push(a);
                        }
                        if !reached[b] {
                            frontier.push(b);
                        }
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order_of(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1u64;
        while x != self.identity {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Subgroup generated by all commutators, as a sorted index set.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut seed = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(a, b), self.mul(self.inverses[a], self.inverses[b]));
                seed.push(c);
            }
        }
        self.closure(&seed)
    }

    /// Closure of a set of elements under the group law.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.n];
        in_set[self.identity] = true;
        let mut stack: Vec<usize> = seed.to_vec();
        let mut members = vec![self.identity];
        while let Some(x) = stack.pop() {
            if in_set[x] {
                continue;
            }
            in_set[x] = true;
            members.push(x);
            let snapshot = members.clone();
            for y in snapshot {
                stack.push(self.mul(x, y));
                stack.push(self.mul(y, x));
                stack.push(self.inverses[x]);
            }
        }
        members.sort_unstable();
        members
    }

    /// Conjugacy classes, each sorted, ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let mut class = Vec::new();
            for h in 0..self.n {
                let c = self.mul(self.mul(h, g), self.inverses[h]);
                if !seen[c] {
                    seen[c] = true;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| c[0]);
        classes
    }
}

/// Builtin constructors. Element indexing conventions are documented per
/// family; all tables are validated on construction.
pub mod builtins {
    use super::*;

    /// Z/n with i*j = i+j mod n.
    pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>, GroupError> {
        if n == 0 {
            return Err(GroupError::UnsupportedBuiltin("cyclic(0)".into()));
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(&format!("C{n}"), table)
    }

    /// Dihedral group of order 2n: indices 0..n are rotations s^i, indices
    /// n..2n are reflections s^i t, with t s = s^-1 t.
    pub fn dihedral(order: usize) -> Result<Arc<FiniteGroup>, GroupError> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(GroupError::UnsupportedBuiltin(format!("dihedral({order})")));
        }
        let n = order / 2;
        let idx = |rot: usize, refl: usize| -> usize { (rot % n) + n * (refl % 2) };
        let table = (0..order)
            .map(|a| {
                let (i, e) = (a % n, a / n);
                (0..order)
                    .map(|b| {
                        let (j, f) = (b % n, b / n);
                        // (s^i t^e)(s^j t^f) = s^(i + (-1)^e j) t^(e+f)
                        let rot = if e == 0 { i + j } else { (i + n - (j % n)) % n };
                        idx(rot % n, e + f)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("D{order}"), table)
    }

    /// Symmetric group on n letters (n <= 4), elements enumerated in
    /// lexicographic order of one-line notation; product is composition
    /// (p*q)(x) = p(q(x)).
    pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::UnsupportedBuiltin(format!("symmetric({n})")));
        }
        let perms = all_perms(n);
        let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let comp: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                        index_of(&comp)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("S{n}"), table)
    }

    pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
        let mut perms = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in perms {
                for x in 0..n {
                    if !p.contains(&x) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        perms.sort();
        perms
    }

    /// Quaternion group {±1, ±i, ±j, ±k}: index = 4*sign + base with bases
    /// (1, i, j, k) and sign 0 for +, 1 for -.
    pub fn quaternion8() -> Result<Arc<FiniteGroup>, GroupError> {
        // multiplication of the base units: result base and sign
        // bases: 0 = 1, 1 = i, 2 = j, 3 = k
        let base_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) => (x, 0),
                (x, 0) => (x, 0),
                (1, 1) | (2, 2) | (3, 3) => (0, 1),
                (1, 2) => (3, 0),
                (2, 1) => (3, 1),
                (2, 3) => (1, 0),
                (3, 2) => (1, 1),
                (3, 1) => (2, 0),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let table = (0..8usize)
            .map(|a| {
                let (sa, ba) = (a / 4, a % 4);
                (0..8usize)
                    .map(|b| {
                        let (sb, bb) = (b / 4, b % 4);
                        let (bc, sc) = base_mul(ba, bb);
                        ((sa + sb + sc) % 2) * 4 + bc
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("Q8", table)
    }

    /// Affine group of F_p for prime p: maps x -> a x + b, index =
    /// (a-1)*p + b; composition (a,b)(c,d) = (ac, ad+b).
    pub fn affine(p: usize) -> Result<Arc<FiniteGroup>, GroupError> {
        if !is_prime_u64(p as u64) {
            return Err(GroupError::UnsupportedBuiltin(format!("affine({p})")));
        }
        let n = p * (p - 1);
        let idx = |a: usize, b: usize| (a - 1) * p + b;
        let table = (0..n)
            .map(|x| {
                let (a, b) = (x / p + 1, x % p);
                (0..n)
                    .map(|y| {
                        let (c, d) = (y / p + 1, y % p);
                        idx((a * c) % p, (a * d + b) % p)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("Aff({p})"), table)
    }
}

/// Builtin dispatch by descriptor, the entry point the CLI uses.
pub fn make_group(spec: &str) -> Result<Arc<FiniteGroup>, GroupError> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let parse = |s: &str| -> Result<usize, GroupError> {
        s.parse()
            .map_err(|_| GroupError::UnsupportedBuiltin(format!("bad parameter in {spec:?}")))
    };
    match parts.as_slice() {
        ["cyclic", n] => builtins::cyclic(parse(n)?),
        ["dihedral", n] => builtins::dihedral(parse(n)?),
        ["symmetric", n] => builtins::symmetric(parse(n)?),
        ["quaternion8"] => builtins::quaternion8(),
        ["affine", p] => builtins::affine(parse(p)?),
        _ => Err(GroupError::UnsupportedBuiltin(spec.to_string())),
    }
}
