//! Named verification runs that cross-check the constructive families
//! against each other and against the transversal oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::blockers::{
    enumerate_blockers, enumerate_blockers_with_stats, star_blocker, validate_blocker,
    witness_missed_blocker,
};
use crate::counting::{
    blocker_count, catalan, coblocker_bounds, factorial, generate_lower_bound_family,
};
use crate::error::{CggError, Result};
use crate::family::{Family, SearchStats};
use crate::geometry::GraphContext;
use crate::limits::Limits;
use crate::matchings::{
    enumerate_perfect_matchings, enumerate_semi_simple, enumerate_spms, Matching,
};
use crate::transversal::{derive_sequence_with_stats, hits_all};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    BlockerFormula,
    Characterization,
    FixedPoint,
    Counts,
    HalfplaneQuadrant,
    Witness,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::BlockerFormula,
        Check::Characterization,
        Check::FixedPoint,
        Check::Counts,
        Check::HalfplaneQuadrant,
        Check::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BlockerFormula => "blocker-formula",
            Check::Characterization => "characterization",
            Check::FixedPoint => "fixed-point",
            Check::Counts => "counts",
            Check::HalfplaneQuadrant => "lemma32",
            Check::Witness => "witness",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = CggError;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CggError::parse(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub check: String,
    pub pass: bool,
    pub assertions: Vec<Assertion>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

struct Builder(Vec<Assertion>);

impl Builder {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Assertion {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

fn oracle_range(m: usize, max: usize, what: &str) -> Result<()> {
    if m > max {
        return Err(CggError::budget(format!(
            "{what} is limited to m <= {max} (got m = {m})"
        )));
    }
    Ok(())
}

fn stats_note(stats: Option<SearchStats>) -> String {
    stats.map_or_else(String::new, |s| {
        format!(
            "; oracle: size {}, {} solutions, {} nodes",
            s.min_size, s.solutions, s.nodes
        )
    })
}

fn family_diff(expected: &Family, actual: &Family) -> String {
    let missing = expected
        .members()
        .iter()
        .filter(|s| !actual.contains(s))
        .count();
    let extra = actual
        .members()
        .iter()
        .filter(|s| !expected.contains(s))
        .count();
    format!(
        "{} vs {} sets, {missing} missing, {extra} unexpected",
        expected.len(),
        actual.len()
    )
}

pub fn run_check(m: usize, check: Check, limits: &Limits) -> Result<VerifyReport> {
    let ctx = GraphContext::new(m)?;
    let mut b = Builder(Vec::new());
    match check {
        Check::BlockerFormula => blocker_formula(&ctx, limits, &mut b)?,
        Check::Characterization => characterization(&ctx, limits, &mut b)?,
        Check::FixedPoint => fixed_point(&ctx, limits, &mut b)?,
        Check::Counts => counts(&ctx, limits, &mut b)?,
        Check::HalfplaneQuadrant => halfplane_quadrant(&ctx, limits, &mut b)?,
        Check::Witness => witness(&ctx, limits, &mut b)?,
    }
    let assertions = b.0;
    Ok(VerifyReport {
        m,
        check: check.name().into(),
        pass: assertions.iter().all(|a| a.pass),
        assertions,
    })
}

fn blocker_formula(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    let m = ctx.m();
    oracle_range(m, limits.oracle_limit(), "the blocker-formula check")?;
    let run = enumerate_blockers_with_stats(ctx, limits)?;
    let expected = blocker_count(m)?;
    b.check(
        "blocker count equals m*2^(m-1)",
        BigUint::from(run.family.len()) == expected,
        format!("{} blockers, formula {expected}", run.family.len()),
    );
    b.check(
        "parametrization yields no duplicates",
        run.duplicates == 0,
        format!("{} generated, {} duplicates", run.generated, run.duplicates),
    );
    let mut roundtrip_failures = 0;
    for set in run.family.members() {
        if validate_blocker(ctx, set)?.is_none() {
            roundtrip_failures += 1;
        }
    }
    b.check(
        "every blocker is recognized",
        roundtrip_failures == 0,
        format!("{roundtrip_failures} unrecognized"),
    );
    let stars_missing = (0..ctx.n())
        .map(|x| star_blocker(ctx, x))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .filter(|s| !run.family.contains(s))
        .count();
    b.check(
        "every star is a blocker",
        stars_missing == 0,
        format!("{stars_missing} stars missing"),
    );

    let terms = derive_sequence_with_stats(ctx, 1, limits)?;
    let (spms, oracle) = (&terms[0].0, &terms[1].0);
    let misses = run
        .family
        .members()
        .iter()
        .filter(|bl| !hits_all(bl, spms))
        .count();
    b.check(
        "every blocker meets every simple perfect matching",
        misses == 0,
        format!("{misses} blockers miss some matching"),
    );
    let min_size = terms[1].1.expect("derived term").min_size;
    b.check(
        "minimum transversal size of A0 is m",
        min_size == m,
        format!("min size {min_size}"),
    );
    b.check(
        "oracle minimum transversals of A0 equal the caterpillar family",
        oracle.same_sets(&run.family),
        format!(
            "{}{}",
            family_diff(&run.family, oracle),
            stats_note(terms[1].1)
        ),
    );
    Ok(())
}

fn characterization(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    let m = ctx.m();
    oracle_range(m, limits.oracle_limit(), "the characterization check")?;
    let terms = derive_sequence_with_stats(ctx, 2, limits)?;
    let semi = enumerate_semi_simple(ctx, limits)?;
    let stats = terms[2].1.expect("derived term");
    b.check(
        "minimum transversal size of A1 is m",
        stats.min_size == m,
        format!("min size {}", stats.min_size),
    );
    let spms = &terms[0].0;
    b.check(
        "every simple perfect matching is a co-blocker",
        spms.is_subfamily_of(&terms[2].0),
        format!("{} matchings", spms.len()),
    );
    b.check(
        "oracle A2 equals the semi-simple perfect matchings",
        terms[2].0.same_sets(&semi),
        format!(
            "{}{}",
            family_diff(&semi, &terms[2].0),
            stats_note(Some(stats))
        ),
    );
    Ok(())
}

/// Largest m for the `A3 = A1` check.
pub fn fixed_point_limit(limits: &Limits) -> usize {
    if limits.oracle_extended {
        5
    } else {
        4
    }
}

fn fixed_point(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    oracle_range(ctx.m(), fixed_point_limit(limits), "the fixed-point check")?;
    let terms = derive_sequence_with_stats(ctx, 3, limits)?;
    b.check(
        "A3 equals A1",
        terms[3].0.same_sets(&terms[1].0),
        format!(
            "{}{}",
            family_diff(&terms[1].0, &terms[3].0),
            stats_note(terms[3].1)
        ),
    );
    b.check(
        "A1 equals the caterpillar family",
        terms[1].0.same_sets(&enumerate_blockers(ctx, limits)?),
        format!("{} sets", terms[1].0.len()),
    );
    Ok(())
}

fn counts(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    let m = ctx.m();
    let spms = enumerate_spms(ctx, limits)?;
    b.check(
        "SPM count equals the Catalan number",
        BigUint::from(spms.len()) == catalan(m),
        format!("{} matchings, C_m = {}", spms.len(), catalan(m)),
    );
    let blockers = enumerate_blockers(ctx, limits)?;
    b.check(
        "blocker count equals m*2^(m-1)",
        BigUint::from(blockers.len()) == blocker_count(m)?,
        format!("{} blockers", blockers.len()),
    );
    let semi = enumerate_semi_simple(ctx, limits)?;
    let (lo, hi) = coblocker_bounds(m)?;
    let count = BigUint::from(semi.len());
    b.check(
        "floor(m/3)! <= |A2| <= m!",
        lo <= count && count <= hi,
        format!("{lo} <= {count} <= {hi}"),
    );
    b.check(
        "simple perfect matchings are semi-simple",
        spms.is_subfamily_of(&semi),
        String::new(),
    );
    if m >= 3 {
        let lower = generate_lower_bound_family(ctx)?;
        let all_semi = lower.members().iter().all(|s| {
            Matching::from_set(*ctx, *s)
                .map(|x| x.is_semi_simple())
                .unwrap_or(false)
        });
        b.check(
            "lower-bound family has floor(m/3)! semi-simple members",
            BigUint::from(lower.len()) == factorial(m / 3) && all_semi,
            format!("{} members", lower.len()),
        );
        b.check(
            "lower-bound family is contained in A2",
            lower.is_subfamily_of(&semi),
            String::new(),
        );
    }
    Ok(())
}

fn halfplane_quadrant(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    let semi = enumerate_semi_simple(ctx, limits)?;
    let (mut interior, mut interior_fail, mut crossing, mut crossing_fail) = (0, 0, 0, 0);
    for set in semi.members() {
        let matching = Matching::from_set(*ctx, *set)?;
        for e in matching
            .edges()
            .into_iter()
            .filter(|&e| !ctx.is_boundary(e))
        {
            interior += 1;
            if !matching.check_halfplane_property(e)? {
                interior_fail += 1;
            }
        }
        for (e, f) in matching.crossing_pairs() {
            crossing += 1;
            if !matching.check_quadrant_property(e, f)? {
                crossing_fail += 1;
            }
        }
    }
    b.check(
        "interior edges have a matching boundary edge on both sides",
        interior_fail == 0,
        format!("{interior} interior edges, {interior_fail} failures"),
    );
    b.check(
        "crossing pairs have a matching boundary edge in all four regions",
        crossing_fail == 0,
        format!("{crossing} crossing pairs, {crossing_fail} failures"),
    );
    Ok(())
}

fn witness(ctx: &GraphContext, limits: &Limits, b: &mut Builder) -> Result<()> {
    let all = enumerate_perfect_matchings(ctx, limits)?;
    let blockers = enumerate_blockers(ctx, limits)?;
    let (mut checked, mut bad, mut semi, mut semi_bad) = (0, 0, 0, 0);
    for set in all.members() {
        let matching = Matching::from_set(*ctx, *set)?;
        if matching.is_semi_simple() {
            semi += 1;
            let refused = matches!(
                witness_missed_blocker(ctx, &matching),
                Err(CggError::Domain(_))
            );
            if !refused || !blockers.members().iter().all(|bl| bl.intersects(set)) {
                semi_bad += 1;
            }
            continue;
        }
        checked += 1;
        let w = witness_missed_blocker(ctx, &matching)?;
        if w.intersects(set) || validate_blocker(ctx, &w)?.is_none() {
            bad += 1;
        }
    }
    b.check(
        "non-semi-simple matchings get a disjoint blocker",
        bad == 0,
        format!("{checked} matchings, {bad} failures"),
    );
    b.check(
        "semi-simple matchings meet every blocker and get no witness",
        semi_bad == 0,
        format!("{semi} matchings, {semi_bad} failures"),
    );
    Ok(())
}
