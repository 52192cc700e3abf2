//! Subdigon and tubdigon types.
//!
//! A [`TypeVector`] `m = [m2, m3, ...]` counts faces by gonality: `m_i` faces
//! with `i + 1` sides, so the index starts at 2 (triangles). A [`TubType`]
//! `[m1; m]` prepends the number of 2-gons.
//!
//! Text form is `m1;m2,m3,...`, e.g. `0;2,1`. The semicolon prefix may be
//! omitted (`2,1` means `0;2,1`), and trailing zeros are accepted on input but
//! never printed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseTypeError {
    #[error("more than one ';' in type literal {0:?}")]
    ExtraSemicolon(String),
    #[error("invalid count {token:?} in type literal {literal:?}")]
    BadCount { literal: String, token: String },
    #[error("type literal {0:?} is too large to represent")]
    TooLarge(String),
}

/// Face counts by gonality index (`i >= 2`), stored sparsely.
///
/// Zero counts are never stored, so two vectors are equal exactly when their
/// maps are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TypeVector {
    counts: BTreeMap<u32, u64>,
}

impl TypeVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds `[m2, m3, ...]` from a dense slice whose first entry is `m2`.
    pub fn from_dense(entries: &[u64]) -> Self {
        let mut m = Self::new();
        for (offset, &count) in entries.iter().enumerate() {
            m.set(offset as u32 + 2, count);
        }
        m
    }

    /// Count of faces with index `i` (gonality `i + 1`). Zero when absent.
    pub fn get(&self, index: u32) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Sets `m_index`; a zero count removes the entry.
    ///
    /// # Panics
    ///
    /// If `index < 2`. Use [`TubType`] for 2-gons.
    pub fn set(&mut self, index: u32, count: u64) {
        assert!(index >= 2, "type vector indices start at 2, got {index}");
        if count == 0 {
            self.counts.remove(&index);
        } else {
            self.counts.insert(index, count);
        }
    }

    pub fn with(mut self, index: u32, count: u64) -> Self {
        self.set(index, count);
        self
    }

    /// Non-zero `(index, count)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Largest index with a non-zero count.
    pub fn max_index(&self) -> Option<u32> {
        self.counts.keys().next_back().copied()
    }

    /// Dense `[m2, m3, ..., m_max]` without trailing zeros.
    pub fn to_dense(&self) -> Vec<u64> {
        match self.max_index() {
            None => Vec::new(),
            Some(max) => (2..=max).map(|i| self.get(i)).collect(),
        }
    }

    /// `V_m = 2 + sum (i - 1) m_i`.
    pub fn vertex_count(&self) -> u64 {
        self.weighted_sum(2, |i| u64::from(i) - 1)
    }

    /// `E_m = 1 + sum i m_i`.
    pub fn edge_count(&self) -> u64 {
        self.weighted_sum(1, u64::from)
    }

    /// `F_m = sum m_i`.
    pub fn face_count(&self) -> u64 {
        self.weighted_sum(0, |_| 1)
    }

    /// `E_m - 1`, the additive grade used for series truncation.
    pub fn grade(&self) -> u64 {
        self.edge_count() - 1
    }

    fn checked_weighted_sum(&self, base: u64, weight: impl Fn(u32) -> u64) -> Option<u64> {
        self.counts.iter().try_fold(base, |acc, (&i, &c)| {
            weight(i).checked_mul(c).and_then(|w| acc.checked_add(w))
        })
    }

    fn weighted_sum(&self, base: u64, weight: impl Fn(u32) -> u64) -> u64 {
        self.checked_weighted_sum(base, weight)
            .expect("type vector counts overflow u64")
    }
}

/// Every type vector with `grade() == grade` using only the given indices
/// (each `>= 2`), in graded-lex order.
pub fn type_vectors_with_grade(grade: u64, indices: &[u32]) -> Vec<TypeVector> {
    fn go(rem: u64, indices: &[u32], current: &mut TypeVector, out: &mut Vec<TypeVector>) {
        let Some((&i, rest)) = indices.split_first() else {
            if rem == 0 {
                out.push(current.clone());
            }
            return;
        };
        let step = u64::from(i);
        for count in 0..=rem / step {
            current.set(i, count);
            go(rem - count * step, rest, current, out);
        }
        current.set(i, 0);
    }
    let mut indices: Vec<u32> = indices.to_vec();
    indices.sort_unstable();
    indices.dedup();
    assert!(
        indices.first().is_none_or(|&i| i >= 2),
        "indices start at 2"
    );
    let mut out = Vec::new();
    go(grade, &indices, &mut TypeVector::new(), &mut out);
    out.sort_by_cached_key(|m| TubType::from(m.clone()));
    out
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0;")?;
        write_counts(f, &self.to_dense())
    }
}

fn write_counts(f: &mut fmt::Formatter<'_>, counts: &[u64]) -> fmt::Result {
    for (i, c) in counts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Vertex, edge and face counts of a type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub vertices: u64,
    pub edges: u64,
    pub faces: u64,
}

/// Tubdigon type `[m1; m]`: `m1` 2-gons on top of a subdigon type `m`.
///
/// Also used as a monomial exponent `t1^m1 t2^m2 ...` and, read with indices
/// from 1, as the multiplicity vector of an integer partition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TubType {
    pub m1: u64,
    pub rest: TypeVector,
}

impl TubType {
    pub fn new(m1: u64, rest: TypeVector) -> Self {
        Self { m1, rest }
    }

    /// The null type `[0; []]`.
    pub fn null() -> Self {
        Self::default()
    }

    /// A single face of index `k` (so `k = 1` is one 2-gon, `k = 2` one triangle).
    pub fn unit(k: u32) -> Self {
        let mut t = Self::null();
        t.set(k, 1);
        t
    }

    /// Builds from exponents indexed from 1: `[k1, k2, k3, ...]`.
    pub fn from_exponents(exponents: &[u64]) -> Self {
        let mut t = Self::null();
        for (offset, &e) in exponents.iter().enumerate() {
            t.set(offset as u32 + 1, e);
        }
        t
    }

    /// Exponent of `t_k`, `k >= 1`.
    pub fn get(&self, k: u32) -> u64 {
        match k {
            0 => 0,
            1 => self.m1,
            _ => self.rest.get(k),
        }
    }

    pub fn set(&mut self, k: u32, count: u64) {
        match k {
            0 => panic!("tubdigon type indices start at 1"),
            1 => self.m1 = count,
            _ => self.rest.set(k, count),
        }
    }

    /// Non-zero `(index, exponent)` pairs, index from 1, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        (self.m1 > 0)
            .then_some((1, self.m1))
            .into_iter()
            .chain(self.rest.iter())
    }

    pub fn max_index(&self) -> Option<u32> {
        self.rest.max_index().or((self.m1 > 0).then_some(1))
    }

    /// Dense exponents `[k1, k2, ...]` without trailing zeros.
    pub fn to_exponents(&self) -> Vec<u64> {
        match self.max_index() {
            None => Vec::new(),
            Some(max) => (1..=max).map(|k| self.get(k)).collect(),
        }
    }

    pub fn is_null(&self) -> bool {
        self.m1 == 0 && self.rest.is_empty()
    }

    /// The subdigon type when there are no 2-gons.
    pub fn as_subdigon(&self) -> Option<&TypeVector> {
        (self.m1 == 0).then_some(&self.rest)
    }

    pub fn counts(&self) -> Counts {
        Counts {
            vertices: self.rest.vertex_count(),
            edges: self.m1 + self.rest.edge_count(),
            faces: self.m1 + self.rest.face_count(),
        }
    }

    /// `E - 1 = m1 + sum_{i>=2} i m_i`.
    pub fn edge_grade(&self) -> u64 {
        self.m1 + self.rest.grade()
    }

    /// Product of monomials: exponent vectors add.
    pub fn mul(&self, other: &TubType) -> TubType {
        let mut out = self.clone();
        out.m1 += other.m1;
        for (i, c) in other.rest.iter() {
            out.rest.set(i, out.rest.get(i) + c);
        }
        out
    }

    /// Removes one face of index `k`, if present.
    pub fn remove_one(&self, k: u32) -> Option<TubType> {
        let have = self.get(k);
        (have > 0).then(|| {
            let mut out = self.clone();
            out.set(k, have - 1);
            out
        })
    }

    /// Monomial text such as `t1^2 t3`; `1` for the null type.
    pub fn monomial(&self, var: &str) -> String {
        if self.is_null() {
            return "1".to_owned();
        }
        self.iter()
            .map(|(k, e)| {
                if e == 1 {
                    format!("{var}{k}")
                } else {
                    format!("{var}{k}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl From<TypeVector> for TubType {
    fn from(rest: TypeVector) -> Self {
        Self { m1: 0, rest }
    }
}

/// Graded lexicographic: edge grade ascending, then exponent vectors
/// `(k1, k2, ...)` in descending lexicographic order. Within a grade this
/// lists `t1^5` before `t1^3 t2` before ... before `t5`.
impl Ord for TubType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edge_grade().cmp(&other.edge_grade()).then_with(|| {
            let top = self.max_index().max(other.max_index()).unwrap_or(0);
            (1..=top)
                .map(|k| other.get(k).cmp(&self.get(k)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for TubType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TubType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.m1)?;
        write_counts(f, &self.rest.to_dense())
    }
}

impl FromStr for TubType {
    type Err = ParseTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let literal = s.trim();
        let (m1_text, rest_text) = match literal.split_once(';') {
            Some((a, b)) => {
                if b.contains(';') {
                    return Err(ParseTypeError::ExtraSemicolon(literal.to_owned()));
                }
                (Some(a), b)
            }
            None => (None, literal),
        };
        let count = |token: &str| {
            let token = token.trim();
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseTypeError::BadCount {
                    literal: literal.to_owned(),
                    token: token.to_owned(),
                });
            }
            token
                .parse::<u64>()
                .map_err(|_| ParseTypeError::TooLarge(literal.to_owned()))
        };
        let m1 = m1_text.map(count).transpose()?.unwrap_or(0);
        let mut rest = TypeVector::new();
        if !rest_text.trim().is_empty() {
            for (offset, token) in rest_text.split(',').enumerate() {
                let index = u32::try_from(offset + 2)
                    .map_err(|_| ParseTypeError::TooLarge(literal.to_owned()))?;
                rest.set(index, count(token)?);
            }
        }
        rest.checked_weighted_sum(1, u64::from)
            .and_then(|e| e.checked_add(m1))
            .ok_or_else(|| ParseTypeError::TooLarge(literal.to_owned()))?;
        Ok(TubType { m1, rest })
    }
}

impl FromStr for TypeVector {
    type Err = ParseTypeError;

    /// Accepts a tubdigon literal with `m1 = 0`, or a bare `m2,m3,...` list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: TubType = s.parse()?;
        if t.m1 != 0 {
            return Err(ParseTypeError::BadCount {
                literal: s.trim().to_owned(),
                token: t.m1.to_string(),
            });
        }
        Ok(t.rest)
    }
}
