//! Exact minimum transversals (hitting sets) of a family of edge sets.
//!
//! This is the brute-force side of every cross-check: it knows nothing about
//! matchings or caterpillars, only bit-vector intersections.
//!
//! Search: iterative deepening on the solution size `k`. A node holds the
//! chosen edges and an exclusion set. It picks the unhit hyperedge with the
//! fewest non-excluded elements `x_1 < ... < x_r` and opens branch `i` with
//! `x_i` chosen and `x_1..x_{i-1}` excluded. The branches partition the
//! transversals below the node, so every minimum transversal is reached
//! exactly once and no deduplication pass is needed. A node is cut when the
//! number of pairwise disjoint unhit hyperedges (restricted to non-excluded
//! elements, collected greedily) exceeds the remaining budget.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{CggError, Result};
use crate::family::{Family, FamilyDocument, FamilyLabel, SearchStats};
use crate::geometry::{EdgeSet, GraphContext};
use crate::limits::Limits;
use crate::matchings::enumerate_spms;
use crate::par;

/// `candidate` meets every member of `family`.
pub fn hits_all(candidate: &EdgeSet, family: &Family) -> bool {
    family.members().iter().all(|h| h.intersects(candidate))
}

/// Minimum transversals of a non-empty family whose members are non-empty.
#[derive(Debug, Clone)]
pub struct TransversalProblem {
    ctx: GraphContext,
    hyperedges: Vec<EdgeSet>,
}

impl TransversalProblem {
    pub fn new(family: &Family) -> Result<Self> {
        if family.is_empty() {
            return Err(CggError::domain("transversal problem over an empty family"));
        }
        if family.members().iter().any(EdgeSet::is_empty) {
            return Err(CggError::domain(
                "family contains the empty set, which no set can meet",
            ));
        }
        Ok(TransversalProblem {
            ctx: *family.ctx(),
            hyperedges: family.members().to_vec(),
        })
    }

    pub fn ctx(&self) -> &GraphContext {
        &self.ctx
    }
}

/// Result of a full minimum-transversal enumeration.
#[derive(Debug, Clone)]
pub struct TransversalSolution {
    pub family: Family,
    pub min_size: usize,
    /// Search nodes visited over all deepening rounds.
    pub nodes: u64,
}

impl TransversalSolution {
    pub fn stats(&self) -> SearchStats {
        SearchStats {
            min_size: self.min_size,
            solutions: self.family.len(),
            nodes: self.nodes,
        }
    }

    /// Family JSON including the `stats` block.
    pub fn to_json(&self) -> String {
        let mut doc: FamilyDocument = self.family.document();
        doc.stats = Some(self.stats());
        doc.to_json()
    }
}

struct Search<'a> {
    hyperedges: &'a [EdgeSet],
    nodes: &'a AtomicU64,
    max_nodes: u64,
    /// Stop at the first solution.
    first_only: bool,
}

struct Node {
    chosen: EdgeSet,
    excluded: EdgeSet,
    depth: usize,
    /// Indices of hyperedges not yet hit by `chosen`.
    unhit: Vec<u32>,
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.max_nodes {
            return Err(CggError::budget(format!(
                "transversal search exceeded {} nodes",
                self.max_nodes
            )));
        }
        Ok(())
    }

    /// Greedy count of pairwise disjoint unhit hyperedges, each restricted
    /// to non-excluded elements; `None` if one of them has no element left.
    fn disjoint_lower_bound(&self, node: &Node) -> Option<usize> {
        let mut used = EdgeSet::EMPTY;
        let mut count = 0;
        for &h in &node.unhit {
            let avail = self.hyperedges[h as usize].difference(&node.excluded);
            if avail.is_empty() {
                return None;
            }
            if !avail.intersects(&used) {
                used = used.union(&avail);
                count += 1;
            }
        }
        Some(count)
    }

    /// Branch points of `node`: the unhit hyperedge with fewest available
    /// elements, expanded into `(child, budget)` pairs. Returns `None` when
    /// the node is pruned.
    fn children(&self, node: &Node, k: usize) -> Option<Vec<Node>> {
        let remaining = k - node.depth;
        let bound = self.disjoint_lower_bound(node)?;
        if bound > remaining {
            return None;
        }
        let pivot = node
            .unhit
            .iter()
            .map(|&h| self.hyperedges[h as usize].difference(&node.excluded))
            .min_by_key(EdgeSet::len)?;
        let mut excluded = node.excluded;
        let mut out = Vec::with_capacity(pivot.len());
        for x in pivot.indices() {
            let mut chosen = node.chosen;
            chosen.insert_index(x);
            let unhit = node
                .unhit
                .iter()
                .copied()
                .filter(|&h| !self.hyperedges[h as usize].contains_index(x))
                .collect();
            out.push(Node {
                chosen,
                excluded,
                depth: node.depth + 1,
                unhit,
            });
            excluded.insert_index(x);
        }
        Some(out)
    }

    fn run(&self, node: Node, k: usize, out: &mut Vec<EdgeSet>) -> Result<()> {
        self.tick()?;
        if node.unhit.is_empty() {
            out.push(node.chosen);
            return Ok(());
        }
        if node.depth == k {
            return Ok(());
        }
        if let Some(children) = self.children(&node, k) {
            for child in children {
                self.run(child, k, out)?;
                if self.first_only && !out.is_empty() {
                    break;
                }
            }
        }
        Ok(())
    }

    /// All transversals of size at most `k` reachable from the root. When
    /// no transversal of size `< k` exists, these are exactly the
    /// transversals of size `k`.
    fn solve(&self, k: usize) -> Result<Vec<EdgeSet>> {
        let root = Node {
            chosen: EdgeSet::EMPTY,
            excluded: EdgeSet::EMPTY,
            depth: 0,
            unhit: (0..self.hyperedges.len() as u32).collect(),
        };
        self.tick()?;
        if k == 0 {
            return Ok(Vec::new());
        }
        let Some(children) = self.children(&root, k) else {
            return Ok(Vec::new());
        };
        if self.first_only {
            let mut out = Vec::new();
            for child in children {
                self.run(child, k, &mut out)?;
                if !out.is_empty() {
                    break;
                }
            }
            return Ok(out);
        }
        par::map(children, |child| {
            let mut out = Vec::new();
            self.run(child, k, &mut out).map(|_| out)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .map(|parts| parts.into_iter().flatten().collect())
    }
}

fn initial_bound(hyperedges: &[EdgeSet]) -> usize {
    let mut used = EdgeSet::EMPTY;
    let mut count = 0;
    for h in hyperedges {
        if !h.intersects(&used) {
            used = used.union(h);
            count += 1;
        }
    }
    count
}

fn deepen(
    problem: &TransversalProblem,
    limits: &Limits,
    first_only: bool,
) -> Result<(usize, Vec<EdgeSet>, u64)> {
    let nodes = AtomicU64::new(0);
    let search = Search {
        hyperedges: &problem.hyperedges,
        nodes: &nodes,
        max_nodes: limits.max_nodes,
        first_only,
    };
    let max_k = problem.ctx.edge_count();
    for k in initial_bound(&problem.hyperedges).max(1)..=max_k {
        let found = search.solve(k)?;
        if !found.is_empty() {
            return Ok((k, found, nodes.load(Ordering::Relaxed)));
        }
    }
    unreachable!("the full edge universe meets every non-empty hyperedge")
}

/// Size of a smallest transversal.
pub fn min_transversal_size(problem: &TransversalProblem, limits: &Limits) -> Result<usize> {
    deepen(problem, limits, true).map(|(k, _, _)| k)
}

/// Every transversal of minimum size, in canonical order.
pub fn enumerate_min_transversals(
    problem: &TransversalProblem,
    limits: &Limits,
    label: FamilyLabel,
) -> Result<TransversalSolution> {
    let (min_size, sets, nodes) = deepen(problem, limits, false)?;
    Ok(TransversalSolution {
        family: Family::new(problem.ctx, label, sets),
        min_size,
        nodes,
    })
}

fn oracle_guard(ctx: &GraphContext, limits: &Limits) -> Result<()> {
    let limit = limits.oracle_limit();
    if ctx.m() > limit {
        let hint = if limits.oracle_extended {
            String::new()
        } else {
            format!(
                " (m <= {} with the extended oracle)",
                limits.oracle_extended_max_m
            )
        };
        return Err(CggError::budget(format!(
            "transversal oracle is limited to m <= {limit}{hint}, got m = {}",
            ctx.m()
        )));
    }
    Ok(())
}

/// `A0` is the simple perfect matchings; `A(j+1)` is the family of minimum
/// transversals of `A(j)`. Returns `A0..=Ak` with the oracle statistics of
/// each derived term.
pub fn derive_sequence_with_stats(
    ctx: &GraphContext,
    k: usize,
    limits: &Limits,
) -> Result<Vec<(Family, Option<SearchStats>)>> {
    oracle_guard(ctx, limits)?;
    let mut terms = vec![(enumerate_spms(ctx, limits)?, None)];
    for j in 0..k {
        let problem = TransversalProblem::new(&terms[j].0)?;
        let solution = enumerate_min_transversals(&problem, limits, FamilyLabel::A(j + 1))?;
        let stats = solution.stats();
        terms.push((solution.family, Some(stats)));
    }
    Ok(terms)
}

/// The term `A_k` of the sequence.
pub fn derive_sequence(ctx: &GraphContext, k: usize, limits: &Limits) -> Result<Family> {
    let mut terms = derive_sequence_with_stats(ctx, k, limits)?;
    Ok(terms.pop().expect("sequence has at least A0").0)
}
