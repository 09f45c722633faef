//! Checks against references that share no code with the library's
//! algorithms: integer segment intersection on an explicit convex point
//! set, naive subset enumeration for hitting sets, and the Catalan
//! recurrence.

use itertools::Itertools;

use cgg_core::matchings::enumerate_perfect_matchings;
use cgg_core::{
    enumerate_blockers, enumerate_min_transversals, enumerate_semi_simple, enumerate_spms,
    witness_missed_blocker, Edge, EdgeSet, Family, FamilyLabel, GraphContext, Limits, Matching,
    TransversalProblem,
};

fn ctx(m: usize) -> GraphContext {
    GraphContext::new(m).unwrap()
}

/// Points `(k, k^2)` are in convex position and their hull order is `k`.
fn point(k: usize) -> (i64, i64) {
    (k as i64, (k * k) as i64)
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Proper intersection of two segments with no shared endpoint.
fn segments_cross(e: Edge, f: Edge) -> bool {
    let (p1, p2, q1, q2) = (point(e.u()), point(e.v()), point(f.u()), point(f.v()));
    let d1 = orient(q1, q2, p1).signum();
    let d2 = orient(q1, q2, p2).signum();
    let d3 = orient(p1, p2, q1).signum();
    let d4 = orient(p1, p2, q2).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

#[test]
fn crossing_predicate_matches_coordinates() {
    for m in 2..=6 {
        let c = ctx(m);
        for (e, f) in c.edges().tuple_combinations() {
            assert_eq!(c.edges_cross(e, f), segments_cross(e, f), "m={m} {e} {f}");
        }
    }
}

#[test]
fn spm_families_match_geometric_filter() {
    let lim = Limits::default();
    for m in 2..=6 {
        let c = ctx(m);
        let all = enumerate_perfect_matchings(&c, &lim).unwrap();
        let simple: Vec<EdgeSet> = all
            .members()
            .iter()
            .filter(|s| {
                s.iter(&c)
                    .tuple_combinations()
                    .all(|(e, f)| !segments_cross(e, f))
            })
            .copied()
            .collect();
        let reference = Family::new(c, FamilyLabel::A(0), simple);
        assert!(
            enumerate_spms(&c, &lim).unwrap().same_sets(&reference),
            "m={m}"
        );
    }
}

#[test]
fn spm_counts_follow_catalan_recurrence() {
    let mut catalan = vec![1usize];
    for n in 0..8 {
        catalan.push((0..=n).map(|i| catalan[i] * catalan[n - i]).sum());
    }
    let lim = Limits::default();
    for (m, &want) in catalan.iter().enumerate().skip(2) {
        assert_eq!(enumerate_spms(&ctx(m), &lim).unwrap().len(), want);
    }
    assert_eq!(&catalan[2..=8], &[2, 5, 14, 42, 132, 429, 1430]);
}

/// All minimum hitting sets by trying every subset of size 1, 2, ...
fn naive_min_transversals(c: &GraphContext, family: &Family) -> (usize, Vec<EdgeSet>) {
    let universe: Vec<Edge> = c.edges().collect();
    for k in 1..=universe.len() {
        let found: Vec<EdgeSet> = universe
            .iter()
            .copied()
            .combinations(k)
            .map(|edges| EdgeSet::from_edges(c, edges))
            .filter(|cand| family.members().iter().all(|h| h.intersects(cand)))
            .collect();
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!()
}

#[test]
fn oracle_agrees_with_naive_search() {
    let lim = Limits::default();
    let cases: Vec<Family> = vec![
        enumerate_spms(&ctx(2), &lim).unwrap(),
        enumerate_spms(&ctx(3), &lim).unwrap(),
        enumerate_blockers(&ctx(3), &lim).unwrap(),
        enumerate_semi_simple(&ctx(3), &lim).unwrap(),
        enumerate_spms(&ctx(4), &lim).unwrap(),
        enumerate_blockers(&ctx(4), &lim).unwrap(),
    ];
    for family in cases {
        let c = *family.ctx();
        let (k, sets) = naive_min_transversals(&c, &family);
        let problem = TransversalProblem::new(&family).unwrap();
        let solution = enumerate_min_transversals(&problem, &lim, FamilyLabel::A(9)).unwrap();
        assert_eq!(solution.min_size, k);
        assert!(
            solution
                .family
                .same_sets(&Family::new(c, FamilyLabel::A(9), sets)),
            "m={} label={}",
            c.m(),
            family.label()
        );
    }
}

#[test]
fn spm_transversals_at_m2_are_the_four_pairs() {
    let c = ctx(2);
    let e = Edge::new_unchecked;
    let family = enumerate_spms(&c, &Limits::default()).unwrap();
    let (k, sets) = naive_min_transversals(&c, &family);
    assert_eq!(k, 2);
    let expected: Vec<EdgeSet> = [e(0, 1), e(2, 3)]
        .into_iter()
        .cartesian_product([e(1, 2), e(0, 3)])
        .map(|(a, b)| EdgeSet::from_edges(&c, [a, b]))
        .collect();
    assert_eq!(
        Family::new(c, FamilyLabel::A(1), sets),
        Family::new(c, FamilyLabel::A(1), expected)
    );
}

#[test]
fn semi_simple_enumerator_equals_filtered_odd_matchings() {
    let lim = Limits::default();
    for m in 2..=7 {
        let c = ctx(m);
        let all = enumerate_perfect_matchings(&c, &lim).unwrap();
        // Reference predicate written from the definition with coordinate
        // crossings.
        let semi: Vec<EdgeSet> = all
            .members()
            .iter()
            .filter(|s| {
                let edges = s.to_edges(&c);
                edges.iter().all(|&e| c.edge_order(e) % 2 == 1)
                    && edges.iter().tuple_combinations().all(|(&e, &f)| {
                        let neighbors = e.endpoints().iter().any(|&a| {
                            f.endpoints()
                                .iter()
                                .any(|&b| (a + 1) % c.n() == b || (b + 1) % c.n() == a)
                        });
                        !(neighbors && segments_cross(e, f))
                    })
            })
            .copied()
            .collect();
        let reference = Family::new(c, FamilyLabel::A(2), semi);
        assert!(
            enumerate_semi_simple(&c, &lim)
                .unwrap()
                .same_sets(&reference),
            "m={m}"
        );
    }
}

#[test]
fn witness_example_from_necessity_construction() {
    let c = ctx(3);
    let e = Edge::new_unchecked;
    let m = Matching::new(c, &[e(0, 3), e(2, 5), e(1, 4)]).unwrap();
    let w = witness_missed_blocker(&c, &m).unwrap();
    assert_eq!(w, EdgeSet::from_edges(&c, [e(4, 5), e(5, 0), e(0, 1)]));
    assert!(!w.intersects(m.edge_set()));
    assert!(enumerate_blockers(&c, &Limits::default())
        .unwrap()
        .contains(&w));
}
