//! Subdigons and tubdigons as plane trees.
//!
//! A shape is either the null subdigon `|` (a [`Shape::Leaf`]) or a central
//! roofed `(k+1)`-gon with `k` child shapes glued to its non-roof sides in
//! counterclockwise order (a node of arity `k`). Arity-1 nodes are 2-gons and
//! only occur in tubdigons.
//!
//! Text encoding: `|` for a leaf, `(k: c1 c2 ... ck)` for a node, so a single
//! triangle is `(2: | |)`.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::types::{Counts, TubType, TypeVector};

/// Largest `E_m` accepted by [`enumerate_subdigons`].
pub const DEFAULT_SUBDIGON_EDGE_BOUND: u64 = 25;
/// Largest edge grade accepted by [`enumerate_tubdigons`].
pub const DEFAULT_TUBDIGON_GRADE_BOUND: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Arity >= 2 only.
    Subdigon,
    /// Arity >= 1.
    Tubdigon,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Leaf,
    Node(Arc<[Shape]>),
}

impl Shape {
    /// A central `(k+1)`-gon, `k = children.len()`, with children glued in order.
    pub fn build(mode: Mode, arity: usize, children: Vec<Shape>) -> Result<Shape> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if children.len() != arity {
            return Err(Error::ArityMismatch {
                arity,
                children: children.len(),
            });
        }
        if arity == 1 && mode == Mode::Subdigon {
            return Err(Error::UnaryInSubdigon);
        }
        if mode == Mode::Subdigon && children.iter().any(|c| c.has_unary()) {
            return Err(Error::UnaryInSubdigon);
        }
        Ok(Shape::Node(children.into()))
    }

    /// Zero for a leaf.
    pub fn arity(&self) -> usize {
        self.children().len()
    }

    pub fn children(&self) -> &[Shape] {
        match self {
            Shape::Leaf => &[],
            Shape::Node(children) => children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Shape::Leaf)
    }

    /// True when some node is a 2-gon.
    pub fn has_unary(&self) -> bool {
        self.arity() == 1 || self.children().iter().any(Shape::has_unary)
    }

    /// The type: for each `k`, the number of arity-`k` nodes.
    pub fn type_of(&self) -> TubType {
        let mut t = TubType::null();
        self.visit(&mut |node| {
            let k = node.arity() as u32;
            t.set(k, t.get(k) + 1);
        });
        t
    }

    /// Exponent vector of the accounting monomial `t1^m1 t2^m2 ...`; the same
    /// as [`Shape::type_of`].
    pub fn psi_monomial(&self) -> TubType {
        self.type_of()
    }

    /// Vertex, edge and face counts read off the tree: `V = 2 + sum (k - 1)`,
    /// `E = 1 + sum k`, `F = #nodes`.
    pub fn traversal_counts(&self) -> Counts {
        let mut counts = Counts {
            vertices: 2,
            edges: 1,
            faces: 0,
        };
        self.visit(&mut |node| {
            let k = node.arity() as u64;
            counts.vertices += k - 1;
            counts.edges += k;
            counts.faces += 1;
        });
        counts
    }

    /// Calls `f` on every node (not leaves), preorder.
    fn visit(&self, f: &mut impl FnMut(&Shape)) {
        if let Shape::Node(children) = self {
            f(self);
            for c in children.iter() {
                c.visit(f);
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Leaf => f.write_str("|"),
            Shape::Node(children) => {
                write!(f, "({}:", children.len())?;
                for c in children.iter() {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Parses the canonical encoding; tubdigon mode (2-gons allowed).
    fn from_str(s: &str) -> Result<Shape> {
        let mut parser = ShapeParser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let shape = parser.shape()?;
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(shape)
    }
}

struct ShapeParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl ShapeParser<'_> {
    fn error(&self, msg: &'static str) -> Error {
        Error::ShapeSyntax { pos: self.pos, msg }
    }

    fn expect(&mut self, b: u8, msg: &'static str) -> Result<()> {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(msg))
        }
    }

    fn shape(&mut self) -> Result<Shape> {
        match self.bytes.get(self.pos) {
            Some(b'|') => {
                self.pos += 1;
                Ok(Shape::Leaf)
            }
            Some(b'(') => {
                self.pos += 1;
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let arity: usize = std::str::from_utf8(&self.bytes[start..self.pos])
                    .ok()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| self.error("expected arity"))?;
                self.expect(b':', "expected ':'")?;
                let mut children = Vec::with_capacity(arity);
                for _ in 0..arity {
                    self.expect(b' ', "expected ' ' before child")?;
                    children.push(self.shape()?);
                }
                self.expect(b')', "expected ')'")?;
                Shape::build(Mode::Tubdigon, arity, children)
            }
            _ => Err(self.error("expected '|' or '('")),
        }
    }
}

/// Every subdigon of type `m`, each once, in a fixed order.
pub fn enumerate_subdigons(m: &TypeVector) -> Result<ShapeIter> {
    enumerate_subdigons_bounded(m, DEFAULT_SUBDIGON_EDGE_BOUND)
}

/// As [`enumerate_subdigons`], failing when `E_m > edge_bound`.
pub fn enumerate_subdigons_bounded(m: &TypeVector, edge_bound: u64) -> Result<ShapeIter> {
    let edges = m.edge_count();
    if edges > edge_bound {
        return Err(Error::BoundExceeded {
            what: "edge count",
            value: edges,
            bound: edge_bound,
        });
    }
    Ok(Enumerator::default().iter(&TubType::from(m.clone())))
}

/// Every tubdigon of type `t`, each once, in a fixed order.
pub fn enumerate_tubdigons(t: &TubType) -> Result<ShapeIter> {
    enumerate_tubdigons_bounded(t, DEFAULT_TUBDIGON_GRADE_BOUND)
}

/// As [`enumerate_tubdigons`], failing when the edge grade exceeds `grade_bound`.
pub fn enumerate_tubdigons_bounded(t: &TubType, grade_bound: u64) -> Result<ShapeIter> {
    let grade = t.edge_grade();
    if grade > grade_bound {
        return Err(Error::BoundExceeded {
            what: "edge grade",
            value: grade,
            bound: grade_bound,
        });
    }
    Ok(Enumerator::default().iter(t))
}

/// Number of tubdigons of type `t`, by walking the enumeration.
pub fn count_by_enumeration(t: &TubType) -> Result<BigUint> {
    Ok(BigUint::from(enumerate_tubdigons(t)?.count()))
}

/// Memoized generator: every shape with a given face budget.
///
/// A shape of type `t` is a root of arity `k` (for each `k` present in `t`)
/// whose children split the remaining budget `t - e_k` exactly. Splits are
/// visited in lexicographic order of the children's types, arities ascending.
#[derive(Default)]
struct Enumerator {
    memo: HashMap<TubType, Rc<Vec<Shape>>>,
}

impl Enumerator {
    fn plans(&mut self, budget: &TubType) -> Vec<Vec<Rc<Vec<Shape>>>> {
        let mut plans = Vec::new();
        for (k, _) in budget.iter() {
            let residual = budget.remove_one(k).expect("k is present");
            for split in ordered_splits(&residual, k as usize) {
                plans.push(split.iter().map(|b| self.all(b)).collect());
            }
        }
        plans
    }

    fn all(&mut self, budget: &TubType) -> Rc<Vec<Shape>> {
        if let Some(hit) = self.memo.get(budget) {
            return Rc::clone(hit);
        }
        let shapes: Vec<Shape> = if budget.is_null() {
            vec![Shape::Leaf]
        } else {
            let plans = self.plans(budget);
            plans.into_iter().flat_map(Product::new).collect()
        };
        let shapes = Rc::new(shapes);
        self.memo.insert(budget.clone(), Rc::clone(&shapes));
        shapes
    }

    fn iter(mut self, budget: &TubType) -> ShapeIter {
        let plans = if budget.is_null() {
            vec![Vec::new()]
        } else {
            self.plans(budget)
        };
        ShapeIter {
            plans: plans.into_iter(),
            current: None,
        }
    }
}

/// Lazy cartesian product of child lists, producing one node per combination.
struct Product {
    lists: Vec<Rc<Vec<Shape>>>,
    odometer: Vec<usize>,
    done: bool,
}

impl Product {
    fn new(lists: Vec<Rc<Vec<Shape>>>) -> Self {
        let done = lists.iter().any(|l| l.is_empty());
        Self {
            odometer: vec![0; lists.len()],
            lists,
            done,
        }
    }
}

impl Iterator for Product {
    type Item = Shape;

    fn next(&mut self) -> Option<Shape> {
        if self.done {
            return None;
        }
        let shape = if self.lists.is_empty() {
            Shape::Leaf
        } else {
            let children: Vec<Shape> = self
                .odometer
                .iter()
                .zip(&self.lists)
                .map(|(&i, l)| l[i].clone())
                .collect();
            Shape::Node(children.into())
        };
        // Last child varies fastest.
        self.done = true;
        for pos in (0..self.lists.len()).rev() {
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.lists[pos].len() {
                self.done = false;
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(shape)
    }
}

/// Shapes of one type, produced lazily at the top level.
pub struct ShapeIter {
    plans: std::vec::IntoIter<Vec<Rc<Vec<Shape>>>>,
    current: Option<Product>,
}

impl Iterator for ShapeIter {
    type Item = Shape;

    fn next(&mut self) -> Option<Shape> {
        loop {
            if let Some(shape) = self.current.as_mut().and_then(Iterator::next) {
                return Some(shape);
            }
            self.current = Some(Product::new(self.plans.next()?));
        }
    }
}

/// All ordered ways to split `budget` into `parts` sub-budgets, sorted
/// lexicographically by the sequence of sub-budget types.
fn ordered_splits(budget: &TubType, parts: usize) -> Vec<Vec<TubType>> {
    let mut splits = vec![vec![TubType::null(); parts]];
    for (k, count) in budget.iter() {
        let mut next = Vec::new();
        for composition in compositions(count, parts) {
            for split in &splits {
                let mut s = split.clone();
                for (slot, c) in s.iter_mut().zip(&composition) {
                    slot.set(k, *c);
                }
                next.push(s);
            }
        }
        splits = next;
    }
    splits.sort();
    splits
}

/// Weak compositions of `total` into `parts` non-negative summands.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}
