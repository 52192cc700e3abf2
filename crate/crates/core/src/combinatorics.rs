//! Exact counting: binomials, multinomials, hyper-Catalan and tubdigon
//! counts, integer partitions, and both sides of Fine's identity
//!
//! ```text
//!   sum over partitions of n into r parts of  r! / (k1! k2! ...)  =  C(n-1, r-1)
//! ```
//!
//! The left side is always computed by enumerating partitions, never through
//! the identity, so the two sides stay independent.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::types::{TubType, TypeVector};

/// Largest `n` accepted by [`partitions_of`].
pub const DEFAULT_PARTITION_BOUND: u64 = 200;

/// `n!`.
pub fn factorial(n: u64) -> BigUint {
    rising_product(1, n)
}

/// `lo * (lo + 1) * ... * hi`, or 1 when the range is empty.
fn rising_product(lo: u64, hi: u64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    // acc = C(n - k + i, i) after step i, so every division is exact.
    (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i) / i)
}

/// `n! / (parts[0]! parts[1]! ...)`; the parts must sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint> {
    let sum = parts
        .iter()
        .try_fold(0u64, |acc, &p| acc.checked_add(p))
        .unwrap_or(u64::MAX);
    if sum != n {
        return Err(Error::MultinomialMismatch { n, sum });
    }
    let mut placed = 0u64;
    let mut acc = BigUint::one();
    for &p in parts {
        placed += p;
        acc *= binomial(placed, p as i64);
    }
    Ok(acc)
}

/// Hyper-Catalan number `C_m = (E_m - 1)! / ((V_m - 1)! m!)`, the number of
/// subdigons of type `m`.
pub fn hyper_catalan(m: &TypeVector) -> BigUint {
    let v = m.vertex_count();
    let e = m.edge_count();
    // (E - 1)! / (V - 1)! = V (V + 1) ... (E - 1); empty for the null type.
    let numerator = rising_product(v, e - 1);
    let denominator = m
        .iter()
        .fold(BigUint::one(), |acc, (_, c)| acc * factorial(c));
    debug_assert!((&numerator % &denominator) == BigUint::ZERO);
    numerator / denominator
}

/// Number of tubdigons of type `[m1; m]`, by stars and bars:
/// `C(m1 + E_m - 1, m1) * C_m`.
pub fn tubdigon_count(t: &TubType) -> BigUint {
    let e = t.rest.edge_count();
    let count = binomial(t.m1 + e - 1, t.m1 as i64) * hyper_catalan(&t.rest);
    debug_assert_eq!(count, tubdigon_count_factorial(t));
    count
}

/// Number of tubdigons of type `[m1; m]` from the factorial closed form
/// `(E - 1)! / ((V - 1)! m1! m!)`, with `E`, `V` the tubdigon counts.
pub fn tubdigon_count_factorial(t: &TubType) -> BigUint {
    let c = t.counts();
    let numerator = rising_product(c.vertices, c.edges - 1);
    let denominator = t
        .iter()
        .fold(BigUint::one(), |acc, (_, k)| acc * factorial(k));
    numerator / denominator
}

/// An integer partition stored as multiplicities: part size `i >= 1` occurs
/// `k_i >= 1` times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    multiplicities: BTreeMap<u64, u64>,
}

impl Partition {
    /// From dense multiplicities `[k1, k2, ...]`.
    pub fn from_multiplicities(k: &[u64]) -> Self {
        let multiplicities = k
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as u64 + 1, c))
            .collect();
        Self { multiplicities }
    }

    /// From a list of parts in any order.
    pub fn from_parts(parts: &[u64]) -> Self {
        let mut multiplicities = BTreeMap::new();
        for &p in parts {
            assert!(p >= 1, "partition parts must be positive");
            *multiplicities.entry(p).or_insert(0) += 1;
        }
        Self { multiplicities }
    }

    /// The number being partitioned, `sum i k_i`.
    pub fn n(&self) -> u64 {
        self.multiplicities.iter().map(|(i, k)| i * k).sum()
    }

    /// The number of parts, `sum k_i`.
    pub fn r(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.multiplicities.get(&part).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs, ascending by part.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.multiplicities.iter().map(|(&i, &k)| (i, k))
    }

    /// Dense `[k1, k2, ..., k_max]`.
    pub fn to_multiplicities(&self) -> Vec<u64> {
        let max = self.multiplicities.keys().next_back().copied().unwrap_or(0);
        (1..=max).map(|i| self.multiplicity(i)).collect()
    }

    /// `r! / (k1! k2! ...)`.
    pub fn multinomial(&self) -> BigUint {
        let ks: Vec<u64> = self.multiplicities.values().copied().collect();
        multinomial(self.r(), &ks).expect("multiplicities sum to r")
    }

    /// The monomial `u1^k1 u2^k2 ...`, as a tubdigon type.
    pub fn to_tub_type(&self) -> TubType {
        let mut t = TubType::null();
        for (i, k) in self.iter() {
            let index = u32::try_from(i).expect("part size fits u32");
            t.set(index, k);
        }
        t
    }
}

impl From<&TubType> for Partition {
    fn from(t: &TubType) -> Self {
        Partition::from_multiplicities(&t.to_exponents())
    }
}

impl fmt::Display for Partition {
    /// Parts ascending, e.g. `1+1+3`; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, k) in self.iter() {
            for _ in 0..k {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Partitions of `n` in graded-lex order: multiplicity vectors
/// `(k1, k2, ...)` in descending lexicographic order, so `1+1+...+1` comes
/// first and the single part `n` last.
#[derive(Debug, Clone)]
pub struct Partitions {
    n: u64,
    // k[i] = multiplicity of part i, index 0 unused.
    k: Vec<u64>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: u64) -> Self {
        Self {
            n,
            k: vec![0; n as usize + 1],
            started: false,
            done: false,
        }
    }

    /// Lexicographically largest completion of `k[from..]` summing to `rem`.
    fn fill(&mut self, from: usize, mut rem: u64) {
        let mut j = from;
        while rem > 0 {
            let jj = j as u64;
            let mut q = rem / jj;
            let mut left = rem - q * jj;
            // A remainder in 1..=j cannot be made from parts larger than j.
            if left > 0 && left <= jj {
                q -= 1;
                left += jj;
            }
            self.k[j] = q;
            rem = left;
            j += 1;
        }
    }

    fn advance(&mut self) -> bool {
        let mut suffix = 0u64;
        for i in (1..self.k.len()).rev() {
            // Dropping k_i by d frees suffix + d*i, which must be refilled with
            // parts larger than i: that needs at least i + 1.
            let d = if suffix > 0 { 1 } else { 2 };
            if self.k[i] >= d {
                let rem = suffix + d * i as u64;
                self.k[i] -= d;
                for slot in &mut self.k[i + 1..] {
                    *slot = 0;
                }
                self.fill(i + 1, rem);
                return true;
            }
            suffix += i as u64 * self.k[i];
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n > 0 {
                self.k[1] = self.n;
            }
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(Partition::from_multiplicities(&self.k[1..]))
    }
}

/// Every partition of `n`, each exactly once; see [`Partitions`] for the order.
pub fn partitions_of(n: u64) -> Result<Partitions> {
    partitions_of_bounded(n, DEFAULT_PARTITION_BOUND)
}

pub fn partitions_of_bounded(n: u64, bound: u64) -> Result<Partitions> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "partition size",
            value: n,
            bound,
        });
    }
    Ok(Partitions::new(n))
}

/// Partitions of `n` into exactly `r` parts, in the same order.
pub fn partitions_into(n: u64, r: u64) -> Result<impl Iterator<Item = Partition>> {
    Ok(partitions_of(n)?.filter(move |p| p.r() == r))
}

/// Sum of `C(r; k1, k2, ...)` over partitions of `n` into `r` parts.
pub fn fine_lhs(n: u64, r: u64) -> Result<BigUint> {
    Ok(partitions_into(n, r)?.map(|p| p.multinomial()).sum())
}

/// `C(n - 1, r - 1)`.
///
/// # Panics
///
/// If `n == 0`.
pub fn fine_rhs(n: u64, r: u64) -> BigUint {
    assert!(n >= 1, "fine_rhs needs n >= 1");
    binomial(n - 1, r as i64 - 1)
}

/// Sum of multinomials over all partitions of `n`; equal to `sum_r fine_lhs(n, r)`.
pub fn fine_row_sum(n: u64) -> Result<BigUint> {
    Ok(partitions_of(n)?.map(|p| p.multinomial()).sum())
}
