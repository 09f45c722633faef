//! Closed-form counts, the co-blocker bounds `floor(m/3)! <= |A2| <= m!`,
//! and the explicit family that realizes the lower bound.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{CggError, Result};
use crate::family::{Family, FamilyLabel};
use crate::geometry::{Edge, EdgeSet, GraphContext};
use crate::limits::Limits;
use crate::matchings::{enumerate_semi_simple, Matching};

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Catalan number `C_m = binom(2m, m) / (m + 1)`, the number of simple
/// perfect matchings on `2m` points.
pub fn catalan(m: usize) -> BigUint {
    binomial(2 * m, m) / (m as u64 + 1)
}

/// Number of blockers, `m * 2^(m-1)`.
pub fn blocker_count(m: usize) -> Result<BigUint> {
    if m < 2 {
        return Err(CggError::domain(format!("m must be at least 2 (got {m})")));
    }
    Ok(BigUint::from(m) << (m - 1))
}

/// `(floor(m/3)!, m!)`.
pub fn coblocker_bounds(m: usize) -> Result<(BigUint, BigUint)> {
    if m < 2 {
        return Err(CggError::domain(format!("m must be at least 2 (got {m})")));
    }
    Ok((factorial(m / 3), factorial(m)))
}

/// Number of co-blockers, counted as semi-simple perfect matchings.
pub fn coblocker_count(ctx: &GraphContext, limits: &Limits) -> Result<BigUint> {
    Ok(BigUint::from(enumerate_semi_simple(ctx, limits)?.len()))
}

/// Perfect matchings that contain every boundary edge `[x, x+1]` with
/// `x = 1, 2 (mod 3)` below `6k` (`k = floor(m/3)`), close the remaining
/// one or two vertex pairs with boundary edges, and pair the vertices
/// `0 (mod 6)` with the vertices `3 (mod 6)` arbitrarily. There are `k!`
/// of them, all semi-simple.
pub fn generate_lower_bound_family(ctx: &GraphContext) -> Result<Family> {
    let m = ctx.m();
    if m < 3 {
        return Err(CggError::domain(format!(
            "the lower-bound construction needs m >= 3 (got {m})"
        )));
    }
    let k = m / 3;
    let mut fixed = EdgeSet::new();
    for i in 0..2 * k {
        fixed.insert(ctx, Edge::new_unchecked(3 * i + 1, 3 * i + 2));
    }
    if m % 3 >= 1 {
        fixed.insert(ctx, Edge::new_unchecked(6 * k, 6 * k + 1));
    }
    if m % 3 == 2 {
        fixed.insert(ctx, Edge::new_unchecked(6 * k + 2, 6 * k + 3));
    }

    let mut members = Vec::new();
    for targets in (0..k).permutations(k) {
        let mut set = fixed;
        for (i, &j) in targets.iter().enumerate() {
            let e = Edge::new_unchecked(6 * i, 6 * j + 3);
            assert!(ctx.edge_order(e) % 2 == 1, "{e} must have odd order");
            set.insert(ctx, e);
        }
        debug_assert!(Matching::from_set(*ctx, set).is_ok());
        members.push(set);
    }
    Ok(Family::new(
        *ctx,
        FamilyLabel::Custom("lower-bound".into()),
        members,
    ))
}

/// One row of the counts table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub m: usize,
    #[serde(serialize_with = "decimal")]
    pub spm_count: BigUint,
    #[serde(serialize_with = "decimal")]
    pub blocker_count: BigUint,
    /// `None` when `m` is beyond the semi-simple enumeration limit.
    #[serde(serialize_with = "optional_decimal")]
    pub coblocker_count: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub lower_bound: BigUint,
    #[serde(serialize_with = "decimal")]
    pub upper_bound: BigUint,
}

// Counts outgrow both u64 and IEEE doubles, so JSON carries them as strings.
fn decimal<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

fn optional_decimal<S: Serializer>(
    value: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_str("not computed"),
    }
}

impl CountReport {
    pub fn for_m(m: usize, limits: &Limits) -> Result<Self> {
        let (lower_bound, upper_bound) = coblocker_bounds(m)?;
        let coblocker_count = if m <= limits.semi_simple_max_m {
            Some(coblocker_count(&GraphContext::new(m)?, limits)?)
        } else {
            None
        };
        Ok(CountReport {
            m,
            spm_count: catalan(m),
            blocker_count: blocker_count(m)?,
            coblocker_count,
            lower_bound,
            upper_bound,
        })
    }

    /// `lower <= |A2| <= upper`, or `None` if `|A2|` was not computed.
    pub fn bounds_hold(&self) -> Option<bool> {
        self.coblocker_count
            .as_ref()
            .map(|c| &self.lower_bound <= c && c <= &self.upper_bound)
    }

    fn coblocker_cell(&self) -> String {
        self.coblocker_count
            .as_ref()
            .map_or_else(|| "not computed".to_string(), ToString::to_string)
    }

    pub const CSV_HEADER: &'static str =
        "m,spm_count,blocker_count,coblocker_count,lower_bound,upper_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.m,
            self.spm_count,
            self.blocker_count,
            self.coblocker_cell(),
            self.lower_bound,
            self.upper_bound
        )
    }

    pub fn markdown_table(rows: &[CountReport]) -> String {
        let mut out = String::from(
            "| m | SPMs (C_m) | blockers (m·2^(m-1)) | co-blockers | ⌊m/3⌋! | m! | bounds |\n\
             |---|---|---|---|---|---|---|\n",
        );
        for r in rows {
            let check = match r.bounds_hold() {
                Some(true) => "ok",
                Some(false) => "VIOLATED",
                None => "-",
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                r.m,
                r.spm_count,
                r.blocker_count,
                r.coblocker_cell(),
                r.lower_bound,
                r.upper_bound,
                check
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize) -> GraphContext {
        GraphContext::new(m).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(1), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(4), big(14));
        assert_eq!(catalan(8), big(1430));
    }

    #[test]
    fn catalan_matches_recurrence() {
        // C_{n+1} = sum C_i C_{n-i}
        let mut table = vec![big(1)];
        for n in 0..30 {
            let next = (0..=n).map(|i| &table[i] * &table[n - i]).sum();
            table.push(next);
        }
        for (m, c) in table.iter().enumerate() {
            assert_eq!(&catalan(m), c, "m={m}");
        }
    }

    #[test]
    fn blocker_count_examples() {
        assert_eq!(blocker_count(2).unwrap(), big(4));
        assert_eq!(blocker_count(3).unwrap(), big(12));
        assert_eq!(blocker_count(8).unwrap(), big(1024));
        assert!(blocker_count(1).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(coblocker_bounds(6).unwrap(), (big(2), big(720)));
        assert_eq!(coblocker_bounds(3).unwrap(), (big(1), big(6)));
        assert_eq!(coblocker_bounds(2).unwrap(), (big(1), big(2)));
    }

    #[test]
    fn no_overflow_past_u64() {
        assert_eq!(factorial(21).to_string(), "51090942171709440000");
    }

    #[test]
    fn coblocker_count_small() {
        let lim = Limits::default();
        assert_eq!(coblocker_count(&ctx(2), &lim).unwrap(), big(2));
        assert_eq!(coblocker_count(&ctx(3), &lim).unwrap(), big(5));
    }

    #[test]
    fn lower_bound_examples() {
        let e = Edge::new_unchecked;
        let c = ctx(3);
        let f = generate_lower_bound_family(&c).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(
            f.members()[0],
            EdgeSet::from_edges(&c, [e(0, 3), e(1, 2), e(4, 5)])
        );

        assert_eq!(generate_lower_bound_family(&ctx(6)).unwrap().len(), 2);

        let c4 = ctx(4);
        let f = generate_lower_bound_family(&c4).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.members()[0].contains(&c4, e(6, 7)));

        assert!(matches!(
            generate_lower_bound_family(&ctx(2)),
            Err(CggError::Domain(_))
        ));
    }

    #[test]
    fn report_formats() {
        let r = CountReport::for_m(3, &Limits::default()).unwrap();
        assert_eq!(r.csv_row(), "3,5,12,5,1,6");
        assert_eq!(r.bounds_hold(), Some(true));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"m":3,"spm_count":"5","blocker_count":"12","coblocker_count":"5","lower_bound":"1","upper_bound":"6"}"#
        );
        let big_m = CountReport::for_m(30, &Limits::default()).unwrap();
        assert_eq!(big_m.upper_bound, factorial(30));
        assert_eq!(big_m.coblocker_count, None);
        assert!(big_m.csv_row().contains("not computed"));
    }
}
