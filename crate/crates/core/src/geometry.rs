//! Vertices, edges and edge sets of the complete convex geometric graph on
//! `2m` points, together with the order/direction/crossing predicates.
//!
//! The polygon itself is never materialized. Vertices are the labels
//! `0..2m` in cyclic order, and every geometric notion (crossing, sides of a
//! diagonal) is expressed through cyclic arcs, which is exact for points in
//! convex position.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CggError, Result};

/// Largest supported half vertex count. Edge sets are fixed-width bit
/// vectors, and `m(2m-1)` edges must fit into [`WORDS`] words.
pub const MAX_M: usize = 16;

const WORDS: usize = 8;

/// The graph `CGG(2m)`: `2m` points in convex position, labelled cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphContext {
    m: usize,
}

impl GraphContext {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(CggError::domain(format!("m must be at least 2 (got {m})")));
        }
        if m > MAX_M {
            return Err(CggError::domain(format!(
                "m = {m} exceeds the supported maximum {MAX_M}"
            )));
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices, `2m`.
    #[inline]
    pub fn n(&self) -> usize {
        2 * self.m
    }

    /// Number of edges, `m(2m-1)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m * (2 * self.m - 1)
    }

    pub fn edge(&self, a: usize, b: usize) -> Result<Edge> {
        let n = self.n();
        if a >= n || b >= n {
            return Err(CggError::domain(format!(
                "edge [{a},{b}] has a label outside 0..{n}"
            )));
        }
        if a == b {
            return Err(CggError::domain(format!("edge [{a},{b}] is a loop")));
        }
        Ok(Edge::new_unchecked(a, b))
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.edge(e.u(), e.v()).map(|_| ())
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x >= self.n() {
            return Err(CggError::domain(format!(
                "vertex {x} outside 0..{}",
                self.n()
            )));
        }
        Ok(())
    }

    /// Position of `e` in the lexicographic enumeration of pairs `u < v`.
    #[inline]
    pub fn edge_index(&self, e: Edge) -> usize {
        let n = self.n();
        let (u, v) = (e.u(), e.v());
        u * (2 * n - u - 1) / 2 + (v - u - 1)
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        debug_assert!(index < self.edge_count());
        let n = self.n();
        let mut u = 0;
        let mut start = 0;
        loop {
            let row = n - u - 1;
            if index < start + row {
                return Edge::new_unchecked(u, u + 1 + index - start);
            }
            start += row;
            u += 1;
        }
    }

    /// Every edge of the graph in canonical index order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + Clone + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge::new_unchecked(u, v)))
    }

    /// Cyclic distance between two labels.
    #[inline]
    pub fn cyclic_distance(&self, a: usize, b: usize) -> usize {
        let d = a.abs_diff(b);
        d.min(self.n() - d)
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.cyclic_distance(a, b) == 1
    }

    pub fn edge_order(&self, e: Edge) -> usize {
        self.cyclic_distance(e.u(), e.v())
    }

    pub fn edge_direction(&self, e: Edge) -> usize {
        (e.u() + e.v()) % self.n()
    }

    pub fn is_boundary(&self, e: Edge) -> bool {
        self.edge_order(e) == 1
    }

    pub fn are_parallel(&self, e: Edge, f: Edge) -> bool {
        self.edge_direction(e) == self.edge_direction(f)
    }

    /// Some endpoint of `e` is cyclically adjacent to some endpoint of `f`.
    /// A shared vertex alone does not count.
    pub fn are_neighbors(&self, e: Edge, f: Edge) -> bool {
        e.endpoints()
            .iter()
            .any(|&a| f.endpoints().iter().any(|&b| self.adjacent(a, b)))
    }

    /// The two segments meet in a point interior to both.
    pub fn edges_cross(&self, e: Edge, f: Edge) -> bool {
        if e.shares_vertex(f) {
            return false;
        }
        let inside = |x: usize| e.u() < x && x < e.v();
        inside(f.u()) != inside(f.v())
    }

    /// Vertices strictly inside the cyclic arc running from `from` forward
    /// to `to`.
    pub fn open_arc(&self, from: usize, to: usize) -> impl Iterator<Item = usize> {
        let n = self.n();
        let len = (to + n - from) % n;
        (1..len.max(1)).map(move |i| (from + i) % n)
    }

    /// Apply a relabeling to an edge.
    pub fn map_edge(&self, e: Edge, map: Relabel) -> Edge {
        let (a, b) = (map.apply(self, e.u()), map.apply(self, e.v()));
        Edge::new_unchecked(a, b)
    }

    pub fn map_set(&self, set: &EdgeSet, map: Relabel) -> EdgeSet {
        set.iter(self)
            .map(|e| self.map_edge(e, map))
            .collect_in(self)
    }

    /// All `4m` symmetries of the polygon: rotations, then reflections.
    pub fn symmetries(&self) -> impl Iterator<Item = Relabel> {
        let n = self.n();
        (0..n)
            .map(|r| Relabel {
                reflect: false,
                shift: r,
            })
            .chain((0..n).map(|r| Relabel {
                reflect: true,
                shift: r,
            }))
    }
}

/// A dihedral relabeling of the vertices: `x -> shift + x` or
/// `x -> shift + (2m-1-x)`, modulo `2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relabel {
    pub reflect: bool,
    pub shift: usize,
}

impl Relabel {
    pub const IDENTITY: Relabel = Relabel {
        reflect: false,
        shift: 0,
    };

    pub fn rotation(shift: usize) -> Self {
        Relabel {
            reflect: false,
            shift,
        }
    }

    pub fn reflection() -> Self {
        Relabel {
            reflect: true,
            shift: 0,
        }
    }

    #[inline]
    pub fn apply(self, ctx: &GraphContext, x: usize) -> usize {
        let n = ctx.n();
        let base = if self.reflect { n - 1 - x } else { x };
        (base + self.shift) % n
    }

    pub fn inverse(self, ctx: &GraphContext) -> Self {
        let n = ctx.n();
        if self.reflect {
            // y = s + n-1-x  =>  x = s + n-1-y
            self
        } else {
            Relabel {
                reflect: false,
                shift: (n - self.shift % n) % n,
            }
        }
    }
}

/// An undirected edge `[u, v]`, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Builds an edge from two distinct labels in either order. Labels are
    /// not checked against any context.
    #[inline]
    pub fn new_unchecked(a: usize, b: usize) -> Self {
        debug_assert!(a != b && a < 256 && b < 256);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge {
            u: u as u8,
            v: v as u8,
        }
    }

    #[inline]
    pub fn u(self) -> usize {
        self.u as usize
    }

    #[inline]
    pub fn v(self) -> usize {
        self.v as usize
    }

    #[inline]
    pub fn endpoints(self) -> [usize; 2] {
        [self.u(), self.v()]
    }

    pub fn contains(self, x: usize) -> bool {
        self.u() == x || self.v() == x
    }

    pub fn other(self, x: usize) -> Option<usize> {
        if self.u() == x {
            Some(self.v())
        } else if self.v() == x {
            Some(self.u())
        } else {
            None
        }
    }

    pub fn shares_vertex(self, f: Edge) -> bool {
        self.contains(f.u()) || self.contains(f.v())
    }

    /// Parses the `u-v` token used by the CSV and CLI formats.
    pub fn parse_token(ctx: &GraphContext, token: &str) -> Result<Edge> {
        let (a, b) = token.trim().split_once('-').ok_or_else(|| {
            CggError::parse(format!("edge token {token:?} is not of the form u-v"))
        })?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CggError::parse(format!("bad vertex label in {token:?}")))
        };
        ctx.edge(parse(a)?, parse(b)?)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u(), self.v()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(deserializer)?;
        if a == b || a > 255 || b > 255 {
            return Err(serde::de::Error::custom(format!("invalid edge [{a},{b}]")));
        }
        Ok(Edge::new_unchecked(a, b))
    }
}

/// A subset of the edge universe of some [`GraphContext`], as a fixed-width
/// bit vector indexed by [`GraphContext::edge_index`].
///
/// The set does not remember its context; callers pair it with one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    words: [u64; WORDS],
}

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet { words: [0; WORDS] };

    pub fn new() -> Self {
        Self::EMPTY
    }

    pub fn full(ctx: &GraphContext) -> Self {
        let mut s = Self::EMPTY;
        for i in 0..ctx.edge_count() {
            s.insert_index(i);
        }
        s
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(ctx: &GraphContext, edges: I) -> Self {
        edges.into_iter().collect_in(ctx)
    }

    /// Like [`EdgeSet::from_edges`] but rejects labels outside the context.
    pub fn try_from_edges<I: IntoIterator<Item = Edge>>(
        ctx: &GraphContext,
        edges: I,
    ) -> Result<Self> {
        let mut s = Self::EMPTY;
        for e in edges {
            ctx.check_edge(e)?;
            s.insert(ctx, e);
        }
        Ok(s)
    }

    #[inline]
    pub fn insert_index(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove_index(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, ctx: &GraphContext, e: Edge) {
        self.insert_index(ctx.edge_index(e));
    }

    pub fn remove(&mut self, ctx: &GraphContext, e: Edge) {
        self.remove_index(ctx.edge_index(e));
    }

    pub fn contains(&self, ctx: &GraphContext, e: Edge) -> bool {
        self.contains_index(ctx.edge_index(e))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        out.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= b);
        out
    }

    #[inline]
    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        out.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a |= b);
        out
    }

    #[inline]
    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        out.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= !b);
        out
    }

    /// Edge indices in increasing order.
    pub fn indices(&self) -> Indices {
        Indices {
            words: self.words,
            word: 0,
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.indices().next()
    }

    pub fn iter<'a>(&self, ctx: &'a GraphContext) -> impl Iterator<Item = Edge> + Clone + 'a {
        self.indices().map(move |i| ctx.edge_at(i))
    }

    pub fn to_edges(&self, ctx: &GraphContext) -> Vec<Edge> {
        self.iter(ctx).collect()
    }

    /// `u-v` tokens joined by `;`.
    pub fn to_csv_row(&self, ctx: &GraphContext) -> String {
        self.iter(ctx)
            .map(|e| format!("{}-{}", e.u(), e.v()))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn display<'a>(&'a self, ctx: &'a GraphContext) -> impl fmt::Display + 'a {
        DisplaySet { set: self, ctx }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// Lexicographic order on the increasing sequences of edge indices.
impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.indices();
        let mut b = other.indices();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Indices {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

struct DisplaySet<'a> {
    set: &'a EdgeSet,
    ctx: &'a GraphContext,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.set.iter(self.ctx).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Collect edges into an [`EdgeSet`] over a given context.
pub trait CollectEdges {
    fn collect_in(self, ctx: &GraphContext) -> EdgeSet;
}

impl<I: Iterator<Item = Edge>> CollectEdges for I {
    fn collect_in(self, ctx: &GraphContext) -> EdgeSet {
        let mut s = EdgeSet::EMPTY;
        for e in self {
            s.insert(ctx, e);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize) -> GraphContext {
        GraphContext::new(m).unwrap()
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new_unchecked(a, b)
    }

    #[test]
    fn order_examples() {
        assert_eq!(ctx(4).edge_order(e(2, 7)), 3);
        assert_eq!(ctx(3).edge_order(e(0, 1)), 1);
        assert_eq!(ctx(4).edge_order(e(0, 4)), 4);
    }

    #[test]
    fn direction_examples() {
        assert_eq!(ctx(4).edge_direction(e(2, 7)), 1);
        assert_eq!(ctx(4).edge_direction(e(3, 5)), 0);
        assert_eq!(ctx(3).edge_direction(e(0, 3)), 3);
    }

    #[test]
    fn parallel_examples() {
        assert!(ctx(4).are_parallel(e(0, 1), e(2, 7)));
        assert!(!ctx(4).are_parallel(e(0, 1), e(1, 2)));
        assert!(ctx(3).are_parallel(e(0, 3), e(1, 2)));
    }

    #[test]
    fn neighbor_examples() {
        assert!(ctx(3).are_neighbors(e(0, 3), e(2, 5)));
        assert!(!ctx(7).are_neighbors(e(0, 7), e(3, 10)));
        assert!(ctx(3).are_neighbors(e(0, 1), e(1, 2)));
    }

    #[test]
    fn crossing_examples() {
        assert!(ctx(2).edges_cross(e(0, 2), e(1, 3)));
        assert!(!ctx(3).edges_cross(e(0, 1), e(2, 3)));
        assert!(!ctx(3).edges_cross(e(0, 2), e(2, 4)));
    }

    #[test]
    fn boundary_examples() {
        assert!(ctx(3).is_boundary(e(5, 0)));
        assert!(!ctx(3).is_boundary(e(0, 2)));
        assert!(ctx(2).is_boundary(e(0, 3)));
    }

    #[test]
    fn rejects_small_and_large_m() {
        assert!(GraphContext::new(0).is_err());
        assert!(GraphContext::new(1).is_err());
        assert!(GraphContext::new(MAX_M + 1).is_err());
        assert_eq!(GraphContext::new(MAX_M).unwrap().edge_count(), 496);
    }

    #[test]
    fn invalid_labels_are_domain_errors() {
        let c = ctx(3);
        assert!(matches!(c.edge(0, 6), Err(CggError::Domain(_))));
        assert!(matches!(c.edge(2, 2), Err(CggError::Domain(_))));
    }

    #[test]
    fn index_is_a_bijection() {
        for m in 2..=MAX_M {
            let c = ctx(m);
            assert_eq!(c.edge_count(), c.n() * (c.n() - 1) / 2);
            for (i, edge) in c.edges().enumerate() {
                assert_eq!(c.edge_index(edge), i);
                assert_eq!(c.edge_at(i), edge);
            }
        }
    }

    #[test]
    fn order_and_direction_parity_agree() {
        for m in 2..=8 {
            let c = ctx(m);
            for edge in c.edges() {
                assert_eq!(c.edge_order(edge) % 2, c.edge_direction(edge) % 2);
                assert!((1..=m).contains(&c.edge_order(edge)));
            }
        }
    }

    #[test]
    fn edges_per_order() {
        for m in 2..=8 {
            let c = ctx(m);
            for d in 1..=m {
                let count = c.edges().filter(|&x| c.edge_order(x) == d).count();
                assert_eq!(count, if d < m { 2 * m } else { m }, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn pair_predicates_are_symmetric() {
        for m in 2..=5 {
            let c = ctx(m);
            for a in c.edges() {
                assert!(!c.edges_cross(a, a));
                for b in c.edges() {
                    assert_eq!(c.edges_cross(a, b), c.edges_cross(b, a));
                    assert_eq!(c.are_neighbors(a, b), c.are_neighbors(b, a));
                    assert_eq!(c.are_parallel(a, b), c.are_parallel(b, a));
                }
            }
        }
    }

    #[test]
    fn rotation_and_reflection_equivariance() {
        for m in 2..=5 {
            let c = ctx(m);
            let n = c.n();
            let rot = Relabel::rotation(1);
            let refl = Relabel::reflection();
            for a in c.edges() {
                let ra = c.map_edge(a, rot);
                let fa = c.map_edge(a, refl);
                assert_eq!(c.edge_order(ra), c.edge_order(a));
                assert_eq!(c.edge_order(fa), c.edge_order(a));
                assert_eq!(c.edge_direction(ra), (c.edge_direction(a) + 2) % n);
                for b in c.edges() {
                    let rb = c.map_edge(b, rot);
                    let fb = c.map_edge(b, refl);
                    assert_eq!(c.edges_cross(ra, rb), c.edges_cross(a, b));
                    assert_eq!(c.are_neighbors(ra, rb), c.are_neighbors(a, b));
                    assert_eq!(c.are_parallel(ra, rb), c.are_parallel(a, b));
                    assert_eq!(c.edges_cross(fa, fb), c.edges_cross(a, b));
                    assert_eq!(c.are_neighbors(fa, fb), c.are_neighbors(a, b));
                }
            }
        }
    }

    #[test]
    fn relabel_inverse_round_trips() {
        let c = ctx(4);
        for map in c.symmetries() {
            let inv = map.inverse(&c);
            for x in 0..c.n() {
                assert_eq!(inv.apply(&c, map.apply(&c, x)), x);
            }
        }
    }

    #[test]
    fn open_arc_walks_forward() {
        let c = ctx(3);
        assert_eq!(c.open_arc(0, 3).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(c.open_arc(3, 0).collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(c.open_arc(5, 0).count(), 0);
        assert_eq!(c.open_arc(4, 1).collect::<Vec<_>>(), vec![5, 0]);
    }

    #[test]
    fn set_algebra() {
        let c = ctx(3);
        let a = EdgeSet::from_edges(&c, [e(0, 1), e(2, 3), e(4, 5)]);
        let b = EdgeSet::from_edges(&c, [e(0, 1), e(1, 2)]);
        assert_eq!(a.len(), 3);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection(&b).to_edges(&c), vec![e(0, 1)]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.difference(&b).to_edges(&c), vec![e(2, 3), e(4, 5)]);
        assert_eq!(a.to_csv_row(&c), "0-1;2-3;4-5");
        assert_eq!(EdgeSet::full(&c).len(), 15);
    }

    #[test]
    fn token_parsing() {
        let c = ctx(3);
        assert_eq!(Edge::parse_token(&c, "5-0").unwrap(), e(0, 5));
        assert!(Edge::parse_token(&c, "5-6").is_err());
        assert!(Edge::parse_token(&c, "5").is_err());
    }
}
