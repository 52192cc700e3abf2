//! Truncated multivariate series graded by edge count.
//!
//! Monomials `t1^m1 t2^m2 ...` are keyed by [`TubType`]; the grade of a
//! monomial is its edge grade `m1 + 2 m2 + 3 m3 + ...`, so `t_k` has grade
//! `k`. A [`GradedSeries`] of order `N` stores exactly the terms of grade
//! `<= N`. Because every `t_k S^k` raises grade by at least one, `N` rounds
//! of fixed-point iteration fix all coefficients up to grade `N`.
//!
//! Also here: Fine's lemma (product of `S_j(q^j)` against a sum over
//! partitions), the exponential-route bivariate identity, and the
//! edge-layered all-monomials series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial, factorial, hyper_catalan, multinomial, partitions_of, partitions_of_bounded,
};
use crate::error::{Error, Result};
use crate::types::{type_vectors_with_grade, TubType};

fn rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    order: u64,
    terms: BTreeMap<TubType, BigRational>,
}

impl GradedSeries {
    pub fn zero(order: u64) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u64) -> Self {
        Self::monomial(order, TubType::null(), BigRational::one())
    }

    /// `coeff * t^t`, or zero if `t` lies beyond the truncation.
    pub fn monomial(order: u64, t: TubType, coeff: BigRational) -> Self {
        Self::from_terms(order, [(t, coeff)])
    }

    /// The variable `t_k` (`k >= 1`).
    pub fn variable(order: u64, k: u32) -> Self {
        Self::monomial(order, TubType::unit(k), BigRational::one())
    }

    /// Sums duplicate keys; drops zeros and terms of grade above `order`.
    pub fn from_terms(order: u64, terms: impl IntoIterator<Item = (TubType, BigRational)>) -> Self {
        let mut s = Self::zero(order);
        for (t, c) in terms {
            s.add_term(t, c);
        }
        s
    }

    fn add_term(&mut self, t: TubType, c: BigRational) {
        if c.is_zero() || t.edge_grade() > self.order {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Non-zero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&TubType, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `t`; an error when `t` lies beyond the truncation,
    /// where the coefficient is unknown rather than zero.
    pub fn coefficient(&self, t: &TubType) -> Result<BigRational> {
        let grade = t.edge_grade();
        if grade > self.order {
            return Err(Error::BeyondTruncation {
                grade,
                order: self.order,
            });
        }
        Ok(self.terms.get(t).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Drops terms above `order` (which must not exceed the current order).
    pub fn truncate(&self, order: u64) -> Self {
        assert!(order <= self.order, "cannot raise the truncation order");
        Self::from_terms(
            order,
            self.terms.iter().map(|(t, c)| (t.clone(), c.clone())),
        )
    }

    /// This series' terms reread as a polynomial known up to `order`
    /// (which may be higher than the current one).
    pub fn as_polynomial(&self, order: u64) -> Self {
        Self::from_terms(
            order,
            self.terms.iter().map(|(t, c)| (t.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(
            self.order,
            self.terms.iter().map(|(t, v)| (t.clone(), v * c)),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value with `t_k := values(k)`, reading the terms as a polynomial.
    pub fn evaluate(&self, values: impl Fn(u32) -> BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(t, c)| {
                t.iter().fold(c.clone(), |acc, (k, e)| {
                    let e = i32::try_from(e).expect("exponent fits i32");
                    acc * num_traits::pow::Pow::pow(values(k), e)
                })
            })
            .sum()
    }

    /// One line per term, `<type literal>\t<numerator>/<denominator>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, c) in &self.terms {
            out.push_str(&format!("{t}\t{}/{}\n", c.numer(), c.denom()));
        }
        out
    }

    /// Parses [`GradedSeries::to_text`] output back, at the given order.
    pub fn parse_text(text: &str, order: u64) -> Result<Self> {
        let mut s = Self::zero(order);
        for (index, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::SeriesSyntax {
                line: index + 1,
                msg: msg.to_owned(),
            };
            let (lit, value) = line.split_once('\t').ok_or_else(|| bad("missing tab"))?;
            let t: TubType = lit
                .parse()
                .map_err(|e: crate::ParseTypeError| bad(&e.to_string()))?;
            let (n, d) = value.split_once('/').ok_or_else(|| bad("missing '/'"))?;
            let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            if t.edge_grade() > order {
                return Err(bad("term beyond truncation order"));
            }
            s.add_term(t, BigRational::new(n, d));
        }
        Ok(s)
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &GradedSeries {
    type Output = GradedSeries;

    fn add(self, rhs: &GradedSeries) -> GradedSeries {
        let order = self.order.min(rhs.order);
        GradedSeries::from_terms(
            order,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(t, c)| (t.clone(), c.clone())),
        )
    }
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;

    fn neg(self) -> GradedSeries {
        GradedSeries {
            order: self.order,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GradedSeries {
    type Output = GradedSeries;

    fn sub(self, rhs: &GradedSeries) -> GradedSeries {
        self + &(-rhs)
    }
}

impl Mul for &GradedSeries {
    type Output = GradedSeries;

    fn mul(self, rhs: &GradedSeries) -> GradedSeries {
        let order = self.order.min(rhs.order);
        let right: Vec<(u64, &TubType, &BigRational)> = rhs
            .terms
            .iter()
            .map(|(t, c)| (t.edge_grade(), t, c))
            .collect();
        let mut out = GradedSeries::zero(order);
        for (a, ca) in &self.terms {
            let ga = a.edge_grade();
            for &(gb, b, cb) in &right {
                if ga + gb <= order {
                    out.add_term(a.mul(b), ca * cb);
                }
            }
        }
        out
    }
}

/// Effective largest face index at truncation `order`: `t_k` has grade `k`,
/// so indices above `order` cannot contribute (and `order + 1` is kept as the
/// nominal default).
pub fn clamp_gonality(order: u64, max_gonality: u32) -> u32 {
    let cap = u32::try_from(order.saturating_add(1)).unwrap_or(u32::MAX);
    max_gonality.min(cap)
}

/// `1 + sum_{k = lowest..=highest} t_k S^k`, by Horner's rule.
fn fixed_point_map(s: &GradedSeries, lowest: u32, highest: u32) -> GradedSeries {
    let order = s.order();
    let one = GradedSeries::one(order);
    if highest < lowest {
        return one;
    }
    let mut acc = GradedSeries::variable(order, highest);
    for k in (lowest..highest).rev() {
        acc = &GradedSeries::variable(order, k) + &(s * &acc);
    }
    for _ in 0..lowest {
        acc = s * &acc;
    }
    &one + &acc
}

fn solve_fixed_point(order: u64, lowest: u32, max_gonality: u32) -> GradedSeries {
    let highest = clamp_gonality(order, max_gonality);
    let mut s = GradedSeries::one(order);
    for _ in 0..order {
        s = fixed_point_map(&s, lowest, highest);
    }
    debug_assert_eq!(fixed_point_map(&s, lowest, highest), s);
    s
}

/// The subdigon series `S = 1 + t2 S^2 + t3 S^3 + ...` through grade `order`,
/// using `t_k` for `2 <= k <= max_gonality`.
pub fn solve_subdigon_series(order: u64, max_gonality: u32) -> GradedSeries {
    solve_fixed_point(order, 2, max_gonality)
}

/// The tubdigon series `T = 1 + t1 T + t2 T^2 + ...` through grade `order`.
pub fn solve_tubdigon_series(order: u64, max_gonality: u32) -> GradedSeries {
    solve_fixed_point(order, 1, max_gonality)
}

/// `S - (1 + sum_{k>=2} t_k S^k)`.
pub fn subdigon_residual(s: &GradedSeries, max_gonality: u32) -> GradedSeries {
    let highest = clamp_gonality(s.order(), max_gonality);
    s - &fixed_point_map(s, 2, highest)
}

/// `T - (1 + sum_{k>=1} t_k T^k)`.
pub fn tubdigon_residual(t: &GradedSeries, max_gonality: u32) -> GradedSeries {
    let highest = clamp_gonality(t.order(), max_gonality);
    t - &fixed_point_map(t, 1, highest)
}

/// Coefficient of `t1^m1` in `(1 + t1 + t1^2 + ...)^power`, expanded with the
/// multinomial theorem: a sum over `j_0 + j_1 + ... = power`,
/// `1 j_1 + 2 j_2 + ... = m1` of `power! / (j_0! j_1! ...)`.
pub fn geometric_power_coefficient(power: u64, m1: u64) -> BigUint {
    partitions_of_bounded(m1, u64::MAX)
        .expect("unbounded")
        .filter(|p| p.r() <= power)
        .map(|p| {
            let mut parts = vec![power - p.r()];
            parts.extend(p.iter().map(|(_, k)| k));
            multinomial(power, &parts).expect("parts sum to power")
        })
        .sum()
}

/// The tubdigon series by the alternative route
/// `T = sum_m C_m (1 + t1 + t1^2 + ...)^{E_m} t^m`, i.e. solving
/// `1 - (1 - t1) T + t2 T^2 + ... = 0` with the hyper-Catalan series.
pub fn tubdigon_series_via_geometric(order: u64, max_gonality: u32) -> GradedSeries {
    let highest = clamp_gonality(order, max_gonality);
    let indices: Vec<u32> = (2..=highest).collect();
    let mut out = GradedSeries::zero(order);
    for grade in 0..=order {
        for m in type_vectors_with_grade(grade, &indices) {
            let c = hyper_catalan(&m);
            let e = m.edge_count();
            for m1 in 0..=order - grade {
                let coeff = &c * geometric_power_coefficient(e, m1);
                out.add_term(TubType::new(m1, m.clone()), rational(&coeff));
            }
        }
    }
    out
}

/// Checks the coefficient tables for Fine's lemma at `q`-order `order`:
/// table `j` (1-based) needs entries `k = 0..=order / j`.
fn check_tables(tables: &[Vec<BigRational>], order: u64) -> Result<()> {
    for j in 1..=order as usize {
        let need = order as usize / j;
        match tables.get(j - 1) {
            None => return Err(Error::MissingTableEntry { j, k: 0 }),
            Some(table) if table.len() <= need => {
                return Err(Error::MissingTableEntry { j, k: table.len() })
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// `prod_{j=1..order} S_j(q^j)` through `q^order`, with
/// `S_j(q) = sum_k a_j[k] q^k` and `tables[j - 1][k] = a_j[k]`.
///
/// Factors with `j > order` only touch `q^0` (through `a_j[0]`) and are
/// omitted, as in [`fine_lemma_partition_sum`].
pub fn fine_lemma_product(tables: &[Vec<BigRational>], order: u64) -> Result<Vec<BigRational>> {
    check_tables(tables, order)?;
    let len = order as usize + 1;
    let mut acc = vec![BigRational::zero(); len];
    acc[0] = BigRational::one();
    for j in 1..len {
        let table = &tables[j - 1];
        let mut next = vec![BigRational::zero(); len];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, b) in table.iter().enumerate().take((len - 1 - i) / j + 1) {
                next[i + j * k] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `sum_n q^n sum_{partitions of n} prod_{j=1..order} a_j[k_j]`, by direct
/// partition enumeration.
pub fn fine_lemma_partition_sum(
    tables: &[Vec<BigRational>],
    order: u64,
) -> Result<Vec<BigRational>> {
    check_tables(tables, order)?;
    (0..=order)
        .map(|n| {
            Ok(partitions_of_bounded(n, u64::MAX)?
                .map(|p| {
                    (1..=order)
                        .map(|j| &tables[j as usize - 1][p.multiplicity(j) as usize])
                        .fold(BigRational::one(), |acc, a| acc * a)
                })
                .sum())
        })
        .collect()
}

/// Truncated series in two variables `t` and `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    t_order: u64,
    q_order: u64,
    terms: BTreeMap<(u64, u64), BigRational>,
}

impl BiSeries {
    pub fn zero(t_order: u64, q_order: u64) -> Self {
        Self {
            t_order,
            q_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(t_order: u64, q_order: u64) -> Self {
        let mut s = Self::zero(t_order, q_order);
        s.add_term(0, 0, BigRational::one());
        s
    }

    pub fn add_term(&mut self, t: u64, q: u64, c: BigRational) {
        if c.is_zero() || t > self.t_order || q > self.q_order {
            return;
        }
        let slot = self.terms.entry((t, q)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coefficient(&self, t: u64, q: u64) -> BigRational {
        self.terms
            .get(&(t, q))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn orders(&self) -> (u64, u64) {
        (self.t_order, self.q_order)
    }

    /// Non-zero terms keyed by `(t exponent, q exponent)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &BigRational)> {
        self.terms.iter()
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;

    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.t_order.min(rhs.t_order), self.q_order.min(rhs.q_order));
        for (&(ta, qa), ca) in &self.terms {
            for (&(tb, qb), cb) in &rhs.terms {
                out.add_term(ta + tb, qa + qb, ca * cb);
            }
        }
        out
    }
}

/// Both sides of `prod_j exp(t q^j) = sum_r (t^r / r!) sum_n C(n-1, r-1) q^n`
/// within a truncation box.
#[derive(Debug, Clone)]
pub struct FineExpReport {
    pub product_side: BiSeries,
    pub binomial_side: BiSeries,
    /// `(t, q)` exponents where the sides differ.
    pub mismatches: Vec<(u64, u64)>,
}

impl FineExpReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds `prod_{j=1..q_order} exp(t q^j)` term by term and
/// `sum_{r<=t_order} (t^r / r!) sum_{n<=q_order} C(n-1, r-1) q^n`, and
/// compares them coefficient by coefficient.
pub fn fine_exp_identity_check(t_order: u64, q_order: u64) -> FineExpReport {
    let mut product = BiSeries::one(t_order, q_order);
    for j in 1..=q_order {
        let mut factor = BiSeries::zero(t_order, q_order);
        for k in 0..=t_order.min(q_order / j) {
            factor.add_term(
                k,
                j * k,
                BigRational::new(BigInt::one(), factorial(k).into()),
            );
        }
        product = &product * &factor;
    }

    let mut binomials = BiSeries::zero(t_order, q_order);
    for r in 0..=t_order {
        let weight = BigRational::new(BigInt::one(), factorial(r).into());
        for n in 0..=q_order {
            // C(n-1, r-1) with the n = 0 column equal to [r = 0].
            let c = if n == 0 {
                BigUint::from(u8::from(r == 0))
            } else {
                binomial(n - 1, r as i64 - 1)
            };
            binomials.add_term(r, n, &weight * rational(&c));
        }
    }

    let mut mismatches = Vec::new();
    for t in 0..=t_order {
        for q in 0..=q_order {
            if product.coefficient(t, q) != binomials.coefficient(t, q) {
                mismatches.push((t, q));
            }
        }
    }
    FineExpReport {
        product_side: product,
        binomial_side: binomials,
        mismatches,
    }
}

/// The monomials `u^k` of `M = sum_k u^k`, grouped by edge layer
/// `n = k1 + 2 k2 + 3 k3 + ...` for `n = 0..=layers`. Layer `n` lists the
/// partitions of `n` in graded-lex order.
pub fn edge_layered_monomials(layers: u64) -> Result<BTreeMap<u64, Vec<TubType>>> {
    partitions_of(layers)?;
    (0..=layers)
        .map(|n| Ok((n, partitions_of(n)?.map(|p| p.to_tub_type()).collect())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::tubdigon_count;
    use crate::types::TypeVector;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tt(s: &str) -> TubType {
        s.parse().unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_basics() {
        let s = solve_subdigon_series(6, 7);
        assert_eq!(&GradedSeries::one(6) * &s, s);

        let t2 = GradedSeries::variable(8, 2);
        let sq = &t2 * &t2;
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.terms().next().unwrap().0.edge_grade(), 4);
        assert_eq!(sq.coefficient(&tt("0;2")).unwrap(), int(1));

        let p = &(&GradedSeries::one(8) + &t2) + &sq;
        assert_eq!(p.pow(2).coefficient(&tt("0;2")).unwrap(), int(3));

        // Truncation drops t2^2 at order 3.
        let t2_low = GradedSeries::variable(3, 2);
        assert!((&t2_low * &t2_low).is_empty());
        assert_eq!((&t2 * &t2_low).order(), 3);
        assert!(GradedSeries::variable(1, 2).is_empty());
    }

    #[test]
    fn coefficient_beyond_truncation_is_an_error() {
        let one = GradedSeries::one(0);
        assert_eq!(one.coefficient(&TubType::null()).unwrap(), int(1));
        assert_eq!(
            one.coefficient(&tt("1;")),
            Err(Error::BeyondTruncation { grade: 1, order: 0 })
        );
        let s = solve_subdigon_series(6, 7);
        assert_eq!(s.coefficient(&tt("0;1")).unwrap(), int(1));
        assert_eq!(s.coefficient(&tt("1;")).unwrap(), int(0));
        let t = solve_tubdigon_series(6, 7);
        assert_eq!(t.coefficient(&tt("2;1")).unwrap(), int(6));
    }

    #[test]
    fn subdigon_series_values() {
        assert_eq!(solve_subdigon_series(0, 1), GradedSeries::one(0));
        let s = solve_subdigon_series(10, 11);
        assert_eq!(s.coefficient(&tt("0;2")).unwrap(), int(2));
        assert_eq!(s.coefficient(&tt("0;1,1")).unwrap(), int(5));
        assert_eq!(s.coefficient(&tt("0;3")).unwrap(), int(5));
        assert_eq!(s.coefficient(&tt("0;5")).unwrap(), int(42));
        assert!(subdigon_residual(&s, 11).is_empty());
        for (t, c) in s.terms() {
            assert_eq!(t.m1, 0);
            assert_eq!(c, &rational(&hyper_catalan(&t.rest)));
        }
        // Every subdigon type of grade <= 10 appears.
        let expected: usize = (0..=10)
            .map(|g| type_vectors_with_grade(g, &(2..=11).collect::<Vec<_>>()).len())
            .sum();
        assert_eq!(s.len(), expected);
    }

    #[test]
    fn tubdigon_series_values() {
        let t = solve_tubdigon_series(8, 9);
        assert_eq!(t.coefficient(&tt("1;")).unwrap(), int(1));
        assert_eq!(t.coefficient(&tt("1;1")).unwrap(), int(3));
        assert_eq!(t.coefficient(&tt("2;")).unwrap(), int(1));
        assert!(tubdigon_residual(&t, 9).is_empty());
        for (ty, c) in t.terms() {
            assert_eq!(c, &rational(&tubdigon_count(ty)), "{ty}");
        }
        assert_eq!(
            t.len(),
            (0..=8)
                .map(|n| partitions_of(n).unwrap().count())
                .sum::<usize>()
        );
    }

    #[test]
    fn gonality_limits() {
        // Only triangles: S is the Catalan series in t2.
        let s = solve_subdigon_series(8, 2);
        let cats = [1, 1, 2, 5, 14];
        for (n, &c) in cats.iter().enumerate() {
            assert_eq!(
                s.coefficient(&TubType::from(TypeVector::from_dense(&[n as u64])))
                    .unwrap(),
                int(c)
            );
        }
        assert_eq!(s.coefficient(&tt("0;0,1")).unwrap(), int(0));
        assert_eq!(clamp_gonality(4, 100), 5);
        assert_eq!(solve_subdigon_series(4, 100), solve_subdigon_series(4, 5));
    }

    #[test]
    fn geometric_power_coefficients() {
        assert_eq!(geometric_power_coefficient(1, 7), BigUint::from(1u32));
        assert_eq!(geometric_power_coefficient(3, 0), BigUint::from(1u32));
        // (1 + x + x^2 + ...)^3 = sum C(n + 2, 2) x^n.
        for n in 0..10 {
            assert_eq!(geometric_power_coefficient(3, n), binomial(n + 2, 2));
        }
    }

    #[test]
    fn geometric_route_matches_fixed_point() {
        let via = tubdigon_series_via_geometric(6, 7);
        assert_eq!(via.coefficient(&TubType::null()).unwrap(), int(1));
        for m1 in 0..=6 {
            assert_eq!(
                via.coefficient(&TubType::new(m1, TypeVector::new()))
                    .unwrap(),
                int(1)
            );
        }
        assert_eq!(via, solve_tubdigon_series(6, 7));
        assert_eq!(
            tubdigon_series_via_geometric(8, 9),
            solve_tubdigon_series(8, 9)
        );
    }

    #[test]
    fn fixed_point_takes_all_n_rounds() {
        // With t1 present each round fixes exactly one more grade.
        let n = 6;
        let mut s = GradedSeries::one(n);
        for _ in 0..n - 1 {
            s = fixed_point_map(&s, 1, 7);
        }
        assert_eq!(
            s.coefficient(&TubType::new(n, TypeVector::new())).unwrap(),
            int(0)
        );
        assert_ne!(s, solve_tubdigon_series(n, 7));
    }

    #[test]
    fn serialization() {
        let s = solve_tubdigon_series(2, 3);
        let text = s.to_text();
        assert_eq!(text, "0;\t1/1\n1;\t1/1\n2;\t1/1\n0;1\t1/1\n");
        assert_eq!(GradedSeries::parse_text(&text, 2).unwrap(), s);
        let q = GradedSeries::monomial(3, tt("1;1"), frac(-2, 6));
        assert_eq!(q.to_text(), "1;1\t-1/3\n");
        assert!(GradedSeries::parse_text("1;1 1/3\n", 3).is_err());
        assert!(GradedSeries::parse_text("1;1\t1/0\n", 3).is_err());
        assert!(GradedSeries::parse_text("3;1\t1/1\n", 3).is_err());
    }

    #[test]
    fn evaluation() {
        // (1 + t1)^2 at t1 = 1/2 is 9/4.
        let p = (&GradedSeries::one(4) + &GradedSeries::variable(4, 1)).pow(2);
        assert_eq!(p.evaluate(|_| frac(1, 2)), frac(9, 4));
    }

    fn ones_tables(order: u64) -> Vec<Vec<BigRational>> {
        (1..=order)
            .map(|j| vec![int(1); (order / j) as usize + 1])
            .collect()
    }

    #[test]
    fn fine_lemma_examples() {
        let n = 10;
        let unit: Vec<Vec<BigRational>> = (1..=n)
            .map(|j| {
                let mut t = vec![int(0); (n / j) as usize + 1];
                t[0] = int(1);
                t
            })
            .collect();
        let mut one = vec![int(0); n as usize + 1];
        one[0] = int(1);
        assert_eq!(fine_lemma_product(&unit, n).unwrap(), one);

        let p = fine_lemma_product(&ones_tables(n), n).unwrap();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42].map(int));

        // a_j[k] = 1/k!: the five partitions of 4 give 1/4! + 1/2! + 1/2! + 1/1! + 1
        // (multiplicity vectors (4), (2,1), (0,2), (1,0,1), (0,0,0,1)).
        let exp_tables: Vec<Vec<BigRational>> = (1..=4u64)
            .map(|j| {
                (0..=4 / j)
                    .map(|k| frac(1, factorial(k).try_into().unwrap()))
                    .collect()
            })
            .collect();
        let want = frac(1, 24) + frac(1, 2) + frac(1, 2) + int(1) + int(1);
        assert_eq!(fine_lemma_product(&exp_tables, 4).unwrap()[4], want);
        assert_eq!(fine_lemma_partition_sum(&exp_tables, 4).unwrap()[4], want);
    }

    #[test]
    fn fine_lemma_missing_entries() {
        let mut tables = ones_tables(6);
        tables[1].pop();
        assert_eq!(
            fine_lemma_product(&tables, 6),
            Err(Error::MissingTableEntry { j: 2, k: 3 })
        );
        let mut short = ones_tables(6);
        short.pop();
        assert_eq!(
            fine_lemma_partition_sum(&short, 6),
            Err(Error::MissingTableEntry { j: 6, k: 0 })
        );
    }

    #[test]
    fn fine_lemma_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 12;
        for _ in 0..5 {
            let tables: Vec<Vec<BigRational>> = (1..=n)
                .map(|j| {
                    (0..=n / j)
                        .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
                        .collect()
                })
                .collect();
            assert_eq!(
                fine_lemma_product(&tables, n).unwrap(),
                fine_lemma_partition_sum(&tables, n).unwrap()
            );
        }
    }

    #[test]
    fn fine_exp_identity() {
        let trivial = fine_exp_identity_check(0, 5);
        assert!(trivial.holds());
        assert_eq!(trivial.product_side, BiSeries::one(0, 5));
        assert_eq!(trivial.binomial_side, BiSeries::one(0, 5));

        let r = fine_exp_identity_check(3, 3);
        assert!(r.holds());
        assert_eq!(r.product_side.coefficient(1, 3), int(1));
        // t^2 q^3: partitions of 3 into 2 parts (1+2) give 1/(1! 1!).
        assert_eq!(r.product_side.coefficient(2, 3), int(1));
        assert_eq!(r.binomial_side.coefficient(2, 3), frac(2, 2));
        assert!(fine_exp_identity_check(5, 8).holds());
    }

    #[test]
    fn edge_layers() {
        let layers = edge_layered_monomials(10).unwrap();
        let sizes: Vec<usize> = layers.values().map(Vec::len).collect();
        assert_eq!(sizes, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(layers[&0], vec![TubType::null()]);
        let five: Vec<String> = layers[&5].iter().map(|t| t.monomial("u")).collect();
        assert_eq!(
            five,
            ["u1^5", "u1^3 u2", "u1^2 u3", "u1 u2^2", "u1 u4", "u2 u3", "u5"]
        );
        assert!(edge_layered_monomials(201).is_err());
    }

    #[test]
    fn edge_layers_match_geometric_product() {
        // M = prod_i 1 / (1 - u_i), built in the graded ring.
        let n = 9;
        let mut m = GradedSeries::one(n);
        for i in 1..=n as u32 {
            let geo = GradedSeries::from_terms(
                n,
                (0..=n / u64::from(i)).map(|e| {
                    let mut t = TubType::null();
                    t.set(i, e);
                    (t, int(1))
                }),
            );
            m = &m * &geo;
        }
        let layers = edge_layered_monomials(n).unwrap();
        let from_layers =
            GradedSeries::from_terms(n, layers.values().flatten().map(|t| (t.clone(), int(1))));
        assert_eq!(m, from_layers);
    }

    fn arb_series(order: u64) -> impl Strategy<Value = GradedSeries> {
        prop::collection::vec((0u64..3, 0u64..2, 0u64..2, -4i64..=4, 1i64..4), 0..6).prop_map(
            move |terms| {
                GradedSeries::from_terms(
                    order,
                    terms
                        .into_iter()
                        .map(|(a, b, c, n, d)| (TubType::from_exponents(&[a, b, c]), frac(n, d))),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_empty());
        }

        #[test]
        fn text_round_trip(a in arb_series(6)) {
            prop_assert_eq!(GradedSeries::parse_text(&a.to_text(), 6).unwrap(), a);
        }
    }
}
