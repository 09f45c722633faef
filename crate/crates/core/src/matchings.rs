//! Perfect matchings: construction, the simple / semi-simple predicates,
//! the three enumerators and the half-plane and quadrant properties of
//! semi-simple matchings.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{CggError, Result};
use crate::family::{Family, FamilyLabel};
use crate::geometry::{CollectEdges, Edge, EdgeSet, GraphContext, MAX_M};
use crate::limits::Limits;
use crate::par;

/// A perfect matching of `CGG(2m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    ctx: GraphContext,
    edges: EdgeSet,
    partner: [u8; 2 * MAX_M],
}

impl Matching {
    pub fn new(ctx: GraphContext, edges: &[Edge]) -> Result<Self> {
        Self::from_set(ctx, EdgeSet::try_from_edges(&ctx, edges.iter().copied())?)
    }

    pub fn from_set(ctx: GraphContext, edges: EdgeSet) -> Result<Self> {
        let mut partner = [u8::MAX; 2 * MAX_M];
        for e in edges.iter(&ctx) {
            for (x, y) in [(e.u(), e.v()), (e.v(), e.u())] {
                if partner[x] != u8::MAX {
                    return Err(CggError::domain(format!(
                        "vertex {x} is covered twice in {}",
                        edges.display(&ctx)
                    )));
                }
                partner[x] = y as u8;
            }
        }
        if let Some(x) = (0..ctx.n()).find(|&x| partner[x] == u8::MAX) {
            return Err(CggError::domain(format!(
                "vertex {x} is not covered by {}",
                edges.display(&ctx)
            )));
        }
        Ok(Matching {
            ctx,
            edges,
            partner,
        })
    }

    pub fn ctx(&self) -> &GraphContext {
        &self.ctx
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edges.to_edges(&self.ctx)
    }

    pub fn partner(&self, x: usize) -> usize {
        self.partner[x] as usize
    }

    pub fn edge_at(&self, x: usize) -> Edge {
        Edge::new_unchecked(x, self.partner(x))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.ctx.check_edge(e).is_ok() && self.edges.contains(&self.ctx, e)
    }

    /// No two edges cross.
    pub fn is_simple(&self) -> bool {
        self.pairs().all(|(a, b)| !self.ctx.edges_cross(a, b))
    }

    /// Every edge has odd order and no two edges are crossing neighbors.
    pub fn is_semi_simple(&self) -> bool {
        self.edges()
            .iter()
            .all(|&e| self.ctx.edge_order(e) % 2 == 1)
            && self.crossing_neighbor_pairs().is_empty()
    }

    /// Pairs of edges that both cross and are neighbors, in canonical order.
    pub fn crossing_neighbor_pairs(&self) -> Vec<(Edge, Edge)> {
        self.pairs()
            .filter(|&(a, b)| crossing_neighbors(&self.ctx, a, b))
            .collect()
    }

    pub fn crossing_pairs(&self) -> Vec<(Edge, Edge)> {
        self.pairs()
            .filter(|&(a, b)| self.ctx.edges_cross(a, b))
            .collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (Edge, Edge)> {
        self.edges().into_iter().tuple_combinations()
    }

    /// A matching edge `[x, x+1]` with both endpoints among the vertices
    /// strictly inside the forward arc `from -> to`.
    fn boundary_edge_inside(&self, from: usize, to: usize) -> bool {
        let arc: Vec<usize> = self.ctx.open_arc(from, to).collect();
        arc.windows(2).any(|w| self.partner(w[0]) == w[1])
    }

    /// For an interior edge `e` of the matching: each side of the line
    /// through `e` contains a boundary edge of the matching.
    pub fn check_halfplane_property(&self, e: Edge) -> Result<bool> {
        if !self.contains(e) {
            return Err(CggError::domain(format!(
                "{e} is not an edge of the matching"
            )));
        }
        if self.ctx.is_boundary(e) {
            return Err(CggError::domain(format!("{e} is a boundary edge")));
        }
        Ok(self.boundary_edge_inside(e.u(), e.v()) && self.boundary_edge_inside(e.v(), e.u()))
    }

    /// For two crossing edges of the matching: each of the four regions
    /// cut out by them contains a boundary edge of the matching.
    pub fn check_quadrant_property(&self, e1: Edge, e2: Edge) -> Result<bool> {
        for e in [e1, e2] {
            if !self.contains(e) {
                return Err(CggError::domain(format!(
                    "{e} is not an edge of the matching"
                )));
            }
        }
        if !self.ctx.edges_cross(e1, e2) {
            return Err(CggError::domain(format!("{e1} and {e2} do not cross")));
        }
        let mut ends = [e1.u(), e1.v(), e2.u(), e2.v()];
        ends.sort_unstable();
        Ok((0..4).all(|i| self.boundary_edge_inside(ends[i], ends[(i + 1) % 4])))
    }
}

#[inline]
pub(crate) fn crossing_neighbors(ctx: &GraphContext, a: Edge, b: Edge) -> bool {
    ctx.edges_cross(a, b) && ctx.are_neighbors(a, b)
}

fn guard(ctx: &GraphContext, limit: usize, what: &str) -> Result<()> {
    if ctx.m() > limit {
        return Err(CggError::budget(format!(
            "{what} enumeration is limited to m <= {limit} (got m = {})",
            ctx.m()
        )));
    }
    Ok(())
}

/// All simple perfect matchings, `A0`.
pub fn enumerate_spms(ctx: &GraphContext, limits: &Limits) -> Result<Family> {
    guard(ctx, limits.spm_max_m, "simple perfect matching")?;
    let mut memo = HashMap::new();
    let members = non_crossing(ctx, 0, ctx.n(), &mut memo);
    Ok(Family::new(*ctx, FamilyLabel::A(0), members))
}

/// Non-crossing perfect matchings of the vertex interval `lo..hi`.
fn non_crossing(
    ctx: &GraphContext,
    lo: usize,
    hi: usize,
    memo: &mut HashMap<(usize, usize), Vec<EdgeSet>>,
) -> Vec<EdgeSet> {
    if lo >= hi {
        return vec![EdgeSet::EMPTY];
    }
    if let Some(hit) = memo.get(&(lo, hi)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for j in (lo + 1..hi).step_by(2) {
        let inner = non_crossing(ctx, lo + 1, j, memo);
        let outer = non_crossing(ctx, j + 1, hi, memo);
        let mut chord = EdgeSet::EMPTY;
        chord.insert(ctx, Edge::new_unchecked(lo, j));
        for a in &inner {
            for b in &outer {
                out.push(chord.union(a).union(b));
            }
        }
    }
    memo.insert((lo, hi), out.clone());
    out
}

/// All semi-simple perfect matchings. By the characterization these are
/// exactly the co-blockers, so the family is labelled `A2`.
pub fn enumerate_semi_simple(ctx: &GraphContext, limits: &Limits) -> Result<Family> {
    guard(ctx, limits.semi_simple_max_m, "semi-simple matching")?;
    Ok(Family::new(
        *ctx,
        FamilyLabel::A(2),
        odd_pairings(ctx, true),
    ))
}

/// All perfect matchings whose edges have odd order (`m!` of them).
pub fn enumerate_odd_matchings(ctx: &GraphContext, limits: &Limits) -> Result<Family> {
    guard(ctx, limits.odd_max_m, "odd-order matching")?;
    Ok(Family::new(
        *ctx,
        FamilyLabel::Custom("odd".into()),
        odd_pairings(ctx, false),
    ))
}

/// Every perfect matching, `(2m-1)!!` of them.
pub fn enumerate_perfect_matchings(ctx: &GraphContext, limits: &Limits) -> Result<Family> {
    guard(ctx, limits.perfect_max_m, "perfect matching")?;
    let mut out = Vec::new();
    let mut matched = vec![false; ctx.n()];
    extend_perfect(ctx, &mut matched, EdgeSet::EMPTY, &mut out);
    Ok(Family::new(
        *ctx,
        FamilyLabel::Custom("perfect".into()),
        out,
    ))
}

fn extend_perfect(ctx: &GraphContext, matched: &mut [bool], acc: EdgeSet, out: &mut Vec<EdgeSet>) {
    let Some(x) = matched.iter().position(|&b| !b) else {
        out.push(acc);
        return;
    };
    matched[x] = true;
    for y in x + 1..ctx.n() {
        if matched[y] {
            continue;
        }
        matched[y] = true;
        let mut next = acc;
        next.insert(ctx, Edge::new_unchecked(x, y));
        extend_perfect(ctx, matched, next, out);
        matched[y] = false;
    }
    matched[x] = false;
}

/// Every edge of odd order joins an even label to an odd one, so odd-order
/// perfect matchings are bijections from even to odd vertices. Even vertex
/// `2i` is assigned at depth `i`; with `prune` set, a partial assignment is
/// abandoned as soon as its newest edge forms a crossing-neighbor pair with
/// an earlier one.
fn odd_pairings(ctx: &GraphContext, prune: bool) -> Vec<EdgeSet> {
    let m = ctx.m();
    let roots: Vec<usize> = (0..m).map(|j| 2 * j + 1).collect();
    par::flat_map(roots, |first| {
        let mut out = Vec::new();
        let mut chosen = vec![Edge::new_unchecked(0, first)];
        let used = 1u32 << (first / 2);
        extend_pairing(ctx, prune, &mut chosen, used, &mut out);
        out
    })
}

fn extend_pairing(
    ctx: &GraphContext,
    prune: bool,
    chosen: &mut Vec<Edge>,
    used: u32,
    out: &mut Vec<EdgeSet>,
) {
    let depth = chosen.len();
    if depth == ctx.m() {
        out.push(chosen.iter().copied().collect_in(ctx));
        return;
    }
    let even = 2 * depth;
    for j in 0..ctx.m() {
        if used >> j & 1 == 1 {
            continue;
        }
        let e = Edge::new_unchecked(even, 2 * j + 1);
        if prune && chosen.iter().any(|&f| crossing_neighbors(ctx, e, f)) {
            continue;
        }
        chosen.push(e);
        extend_pairing(ctx, prune, chosen, used | 1 << j, out);
        chosen.pop();
    }
}
