//! Blockers: the smallest edge sets meeting every simple perfect matching.
//!
//! Every blocker is a simple caterpillar whose spine is a boundary path.
//! With the spine starting at `s` and having `t` edges, the blocker is
//!
//! ```text
//! { [s+i-1, s+i] : 1 <= i <= t }
//!   ∪ { [s+t+j-1-eps_j, s+t+j+eps_j] : 1 <= j <= m-t }
//! ```
//!
//! (labels mod `2m`) for a strictly increasing sequence
//! `1 <= eps_1 < ... < eps_{m-t} <= m-2`. [`BlockerSpec`] holds `(s, t, eps)`.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{CggError, Result};
use crate::family::{Family, FamilyLabel};
use crate::geometry::{Edge, EdgeSet, GraphContext, Relabel};
use crate::limits::Limits;
use crate::matchings::Matching;
use crate::par;

/// Caterpillar parameters of a blocker. The derived order is lexicographic
/// in `(s, t, eps)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockerSpec {
    /// First vertex of the spine.
    pub s: usize,
    /// Number of spine edges.
    pub t: usize,
    /// Leg offsets, one per leg.
    pub eps: Vec<usize>,
}

impl BlockerSpec {
    pub fn new(s: usize, t: usize, eps: Vec<usize>) -> Self {
        BlockerSpec { s, t, eps }
    }

    pub fn validate(&self, ctx: &GraphContext) -> Result<()> {
        let m = ctx.m();
        ctx.check_vertex(self.s)?;
        if !(2..=m).contains(&self.t) {
            return Err(CggError::domain(format!(
                "spine length t = {} outside 2..={m}",
                self.t
            )));
        }
        if self.eps.len() != m - self.t {
            return Err(CggError::domain(format!(
                "expected {} leg offsets for t = {}, got {}",
                m - self.t,
                self.t,
                self.eps.len()
            )));
        }
        if !self.eps.windows(2).all(|w| w[0] < w[1]) {
            return Err(CggError::domain("leg offsets must be strictly increasing"));
        }
        if self.eps.iter().any(|&x| x < 1 || x + 2 > m) {
            return Err(CggError::domain(format!(
                "leg offsets must lie in 1..={}",
                m.saturating_sub(2)
            )));
        }
        Ok(())
    }

    /// Legs as `(a, b)` in spine-start coordinates: `a` is interior to the
    /// spine `0..=t`, `b` lies outside it.
    pub fn relative_legs(&self) -> Vec<(usize, usize)> {
        self.eps
            .iter()
            .enumerate()
            .map(|(i, &eps)| {
                let j = i + 1;
                (self.t + j - 1 - eps, self.t + j + eps)
            })
            .collect()
    }

    pub fn spine_edges(&self, ctx: &GraphContext) -> Vec<Edge> {
        let n = ctx.n();
        (1..=self.t)
            .map(|i| Edge::new_unchecked((self.s + i - 1) % n, (self.s + i) % n))
            .collect()
    }

    pub fn leg_edges(&self, ctx: &GraphContext) -> Vec<Edge> {
        let n = ctx.n();
        self.relative_legs()
            .into_iter()
            .map(|(a, b)| Edge::new_unchecked((self.s + a) % n, (self.s + b) % n))
            .collect()
    }
}

/// The blocker described by `spec`.
pub fn build_blocker(ctx: &GraphContext, spec: &BlockerSpec) -> Result<EdgeSet> {
    spec.validate(ctx)?;
    Ok(assemble(ctx, spec))
}

fn assemble(ctx: &GraphContext, spec: &BlockerSpec) -> EdgeSet {
    let mut set = EdgeSet::new();
    for e in spec.spine_edges(ctx).into_iter().chain(spec.leg_edges(ctx)) {
        set.insert(ctx, e);
    }
    set
}

/// All valid `(s, t, eps)` in lexicographic order.
pub fn blocker_specs(ctx: &GraphContext) -> Vec<BlockerSpec> {
    let m = ctx.m();
    let mut out = Vec::new();
    for s in 0..ctx.n() {
        for t in 2..=m {
            for eps in (1..=m - 2).combinations(m - t) {
                out.push(BlockerSpec { s, t, eps });
            }
        }
    }
    out
}

/// Output of the blocker generator together with its duplicate count.
#[derive(Debug, Clone)]
pub struct BlockerEnumeration {
    pub family: Family,
    /// Number of `(s, t, eps)` triples visited.
    pub generated: usize,
    /// Triples whose edge set had already been produced by an earlier one.
    pub duplicates: usize,
}

/// Blocker family `A1`, built from the caterpillar parametrization.
pub fn enumerate_blockers(ctx: &GraphContext, limits: &Limits) -> Result<Family> {
    Ok(enumerate_blockers_with_stats(ctx, limits)?.family)
}

pub fn enumerate_blockers_with_stats(
    ctx: &GraphContext,
    limits: &Limits,
) -> Result<BlockerEnumeration> {
    if ctx.m() > limits.blocker_max_m {
        return Err(CggError::budget(format!(
            "blocker enumeration is limited to m <= {} (got m = {})",
            limits.blocker_max_m,
            ctx.m()
        )));
    }
    let specs = blocker_specs(ctx);
    let generated = specs.len();
    let sets = par::map(specs, |spec| assemble(ctx, &spec));
    let mut seen = HashSet::with_capacity(sets.len());
    let duplicates = sets.iter().filter(|s| !seen.insert(**s)).count();
    Ok(BlockerEnumeration {
        family: Family::new(*ctx, FamilyLabel::A(1), sets),
        generated,
        duplicates,
    })
}

/// All odd-order edges at `x`.
pub fn star_blocker(ctx: &GraphContext, x: usize) -> Result<EdgeSet> {
    ctx.check_vertex(x)?;
    Ok((0..ctx.n())
        .filter(|&y| y != x)
        .map(|y| Edge::new_unchecked(x, y))
        .filter(|&e| ctx.edge_order(e) % 2 == 1)
        .fold(EdgeSet::new(), |mut set, e| {
            set.insert(ctx, e);
            set
        }))
}

/// Recovers `(s, t, eps)` from an `m`-edge set, or `None` when the set is
/// not of caterpillar blocker form.
///
/// The boundary edges of a blocker are exactly its spine, so they must form
/// one path of at least two edges; its first vertex fixes `s`. Each leg
/// `[a, b]` relative to `s` then determines its index `j` through
/// `a + b = 2(t + j) - 1` and its offset through `b = t + j + eps`.
pub fn validate_blocker(ctx: &GraphContext, edges: &EdgeSet) -> Result<Option<BlockerSpec>> {
    let m = ctx.m();
    let n = ctx.n();
    if edges.len() != m {
        return Err(CggError::domain(format!(
            "a blocker has exactly {m} edges, got {}",
            edges.len()
        )));
    }
    let on_boundary = |i: usize| edges.contains(ctx, Edge::new_unchecked(i, (i + 1) % n));
    // A run of boundary edges starts at i when [i, i+1] is present and
    // [i-1, i] is not.
    let starts: Vec<usize> = (0..n)
        .filter(|&i| on_boundary(i) && !on_boundary((i + n - 1) % n))
        .collect();
    let [s] = starts[..] else {
        return Ok(None);
    };
    let t = (0..n).take_while(|&i| on_boundary((s + i) % n)).count();
    if t < 2 || t > m {
        return Ok(None);
    }

    let to_relative = Relabel::rotation(n - s);
    let mut eps = vec![0usize; m - t];
    for e in edges.iter(ctx).filter(|&e| !ctx.is_boundary(e)) {
        let (a, b) = {
            let x = to_relative.apply(ctx, e.u());
            let y = to_relative.apply(ctx, e.v());
            (x.min(y), x.max(y))
        };
        if a == 0 || a >= t || b <= t || (a + b) % 2 == 0 {
            return Ok(None);
        }
        let twice = a + b + 1;
        if twice / 2 <= t {
            return Ok(None);
        }
        let j = twice / 2 - t;
        if j > m - t || eps[j - 1] != 0 || b < t + j + 1 {
            return Ok(None);
        }
        eps[j - 1] = b - t - j;
    }
    let spec = BlockerSpec { s, t, eps };
    if spec.validate(ctx).is_err() || assemble(ctx, &spec) != *edges {
        return Ok(None);
    }
    Ok(Some(spec))
}

/// Returns a blocker disjoint from `matching`, which exists exactly when the
/// matching is not semi-simple.
///
/// An even-order edge at `x` makes the star at `x` a witness. Otherwise a
/// crossing-neighbor pair is moved by a symmetry of the polygon onto
/// `[0, 2l-1]`, `[2k, 2m-1]` with `0 < 2k < 2l-1 < 2m-1`, and the witness is
/// the caterpillar with spine `2m-2, 2m-1, 0, 1` and legs `[0, 2j-1]`
/// (`2 <= j < l`) and `[2j, 2m-1]` (`l <= j < m-1`), mapped back.
pub fn witness_missed_blocker(ctx: &GraphContext, matching: &Matching) -> Result<EdgeSet> {
    let edges = matching.edges();
    if let Some(x) = edges
        .iter()
        .filter(|&&e| ctx.edge_order(e).is_multiple_of(2))
        .map(|e| e.u())
        .min()
    {
        return star_blocker(ctx, x);
    }
    let pairs = matching.crossing_neighbor_pairs();
    if pairs.is_empty() {
        return Err(CggError::domain(format!(
            "{} is semi-simple, so it meets every blocker",
            matching.edge_set().display(ctx)
        )));
    }
    for map in ctx.symmetries() {
        for &(e, f) in &pairs {
            let (e, f) = (ctx.map_edge(e, map), ctx.map_edge(f, map));
            if let Some(l) = normal_form(ctx, e, f).or_else(|| normal_form(ctx, f, e)) {
                let witness = crossing_witness(ctx, l);
                return Ok(ctx.map_set(&witness, map.inverse(ctx)));
            }
        }
    }
    unreachable!("every crossing-neighbor pair has a normal form under some symmetry")
}

/// `Some(l)` when `e = [0, 2l-1]` and `f = [2k, 2m-1]` with
/// `0 < 2k < 2l-1 < 2m-1`.
fn normal_form(ctx: &GraphContext, e: Edge, f: Edge) -> Option<usize> {
    let last = ctx.n() - 1;
    let odd = e.other(0)?;
    let even = f.other(last)?;
    (odd % 2 == 1 && even % 2 == 0 && 0 < even && even < odd && odd < last)
        .then_some(odd.div_ceil(2))
}

fn crossing_witness(ctx: &GraphContext, l: usize) -> EdgeSet {
    let m = ctx.m();
    let n = ctx.n();
    let mut set = EdgeSet::new();
    for (a, b) in [(n - 2, n - 1), (n - 1, 0), (0, 1)] {
        set.insert(ctx, Edge::new_unchecked(a, b));
    }
    for j in 2..l {
        set.insert(ctx, Edge::new_unchecked(0, 2 * j - 1));
    }
    for j in l..m - 1 {
        set.insert(ctx, Edge::new_unchecked(2 * j, n - 1));
    }
    set
}

/// Like [`witness_missed_blocker`] for an arbitrary `m`-edge set. A set of
/// `m` edges either is a perfect matching or leaves some vertex `x`
/// uncovered, in which case the star at `x` misses it.
pub fn witness_for_edge_set(ctx: &GraphContext, edges: &EdgeSet) -> Result<EdgeSet> {
    if edges.len() != ctx.m() {
        return Err(CggError::domain(format!(
            "expected {} edges, got {}",
            ctx.m(),
            edges.len()
        )));
    }
    let covered = |x: usize| edges.iter(ctx).any(|e| e.contains(x));
    match (0..ctx.n()).find(|&x| !covered(x)) {
        Some(x) => star_blocker(ctx, x),
        None => witness_missed_blocker(ctx, &Matching::from_set(*ctx, *edges)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize) -> GraphContext {
        GraphContext::new(m).unwrap()
    }

    fn set(m: usize, pairs: &[(usize, usize)]) -> EdgeSet {
        EdgeSet::from_edges(
            &ctx(m),
            pairs.iter().map(|&(a, b)| Edge::new_unchecked(a, b)),
        )
    }

    #[test]
    fn build_examples() {
        let b = build_blocker(&ctx(3), &BlockerSpec::new(0, 3, vec![])).unwrap();
        assert_eq!(b, set(3, &[(0, 1), (1, 2), (2, 3)]));
        let b = build_blocker(&ctx(3), &BlockerSpec::new(0, 2, vec![1])).unwrap();
        assert_eq!(b, set(3, &[(0, 1), (1, 2), (1, 4)]));
        assert_eq!(b, star_blocker(&ctx(3), 1).unwrap());
        let b = build_blocker(&ctx(4), &BlockerSpec::new(0, 2, vec![1, 2])).unwrap();
        assert_eq!(b, set(4, &[(0, 1), (1, 2), (1, 4), (1, 6)]));
    }

    #[test]
    fn build_rejects_bad_specs() {
        let c = ctx(4);
        for spec in [
            BlockerSpec::new(0, 1, vec![1, 2, 3]),
            BlockerSpec::new(0, 5, vec![]),
            BlockerSpec::new(0, 2, vec![2, 1]),
            BlockerSpec::new(0, 2, vec![1, 3]),
            BlockerSpec::new(0, 3, vec![]),
            BlockerSpec::new(8, 4, vec![]),
        ] {
            assert!(
                matches!(build_blocker(&c, &spec), Err(CggError::Domain(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn blocker_counts_small() {
        let lim = Limits::default();
        for (m, count) in [(2, 4), (3, 12), (4, 32)] {
            let run = enumerate_blockers_with_stats(&ctx(m), &lim).unwrap();
            assert_eq!(run.family.len(), count);
            assert_eq!(run.duplicates, 0);
            assert_eq!(run.generated, count);
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            star_blocker(&ctx(3), 0).unwrap(),
            set(3, &[(0, 1), (0, 3), (0, 5)])
        );
        assert_eq!(
            star_blocker(&ctx(4), 1).unwrap(),
            set(4, &[(1, 0), (1, 2), (1, 4), (1, 6)])
        );
        assert_eq!(star_blocker(&ctx(2), 3).unwrap(), set(2, &[(3, 0), (3, 2)]));
        assert!(star_blocker(&ctx(2), 4).is_err());
    }

    #[test]
    fn validate_examples() {
        let c = ctx(3);
        assert_eq!(
            validate_blocker(&c, &set(3, &[(0, 1), (1, 2), (1, 4)])).unwrap(),
            Some(BlockerSpec::new(0, 2, vec![1]))
        );
        assert_eq!(
            validate_blocker(&c, &set(3, &[(0, 1), (2, 3), (4, 5)])).unwrap(),
            None
        );
        assert_eq!(
            validate_blocker(&c, &set(3, &[(4, 5), (5, 0), (0, 1)])).unwrap(),
            Some(BlockerSpec::new(4, 3, vec![]))
        );
        assert!(validate_blocker(&c, &set(3, &[(0, 1)])).is_err());
    }

    #[test]
    fn validate_round_trips_every_spec() {
        for m in 2..=7 {
            let c = ctx(m);
            for spec in blocker_specs(&c) {
                let b = build_blocker(&c, &spec).unwrap();
                assert_eq!(validate_blocker(&c, &b).unwrap(), Some(spec));
            }
        }
    }

    #[test]
    fn witness_examples() {
        let c = ctx(3);
        let m = Matching::from_set(c, set(3, &[(0, 3), (2, 5), (1, 4)])).unwrap();
        assert_eq!(
            witness_missed_blocker(&c, &m).unwrap(),
            set(3, &[(4, 5), (5, 0), (0, 1)])
        );
        let c2 = ctx(2);
        let m = Matching::from_set(c2, set(2, &[(0, 2), (1, 3)])).unwrap();
        assert_eq!(
            witness_missed_blocker(&c2, &m).unwrap(),
            set(2, &[(0, 1), (0, 3)])
        );
        let m = Matching::from_set(c, set(3, &[(0, 1), (2, 3), (4, 5)])).unwrap();
        assert!(matches!(
            witness_missed_blocker(&c, &m),
            Err(CggError::Domain(_))
        ));
    }

    #[test]
    fn witness_for_uncovered_vertex() {
        let c = ctx(3);
        let s = set(3, &[(0, 1), (1, 2), (3, 4)]);
        let w = witness_for_edge_set(&c, &s).unwrap();
        assert_eq!(w, star_blocker(&c, 5).unwrap());
        assert!(!w.intersects(&s));
    }
}
