//! Deterministic SVG drawings of edge sets on the regular `2m`-gon.
//!
//! Vertex `k` sits at angle `90° - k·360°/2m` on a circle of radius 200
//! centred in a 440×440 canvas, so label 0 is at the top and labels increase
//! clockwise.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::blockers::validate_blocker;
use crate::error::{CggError, Result};
use crate::geometry::{Edge, EdgeSet, GraphContext};
use crate::matchings::Matching;

const CANVAS: f64 = 440.0;
const RADIUS: f64 = 200.0;
const LABEL_RADIUS: f64 = 214.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HighlightClass {
    Spine,
    Legs,
    Matching,
    CrossingPair,
}

impl HighlightClass {
    pub const ALL: [HighlightClass; 4] = [
        HighlightClass::Spine,
        HighlightClass::Legs,
        HighlightClass::Matching,
        HighlightClass::CrossingPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HighlightClass::Spine => "spine",
            HighlightClass::Legs => "legs",
            HighlightClass::Matching => "matching",
            HighlightClass::CrossingPair => "crossing-pair",
        }
    }

    /// `(stroke colour, stroke width, dash pattern)`.
    fn stroke(self) -> (&'static str, &'static str, Option<&'static str>) {
        match self {
            HighlightClass::Spine => ("#1f4e9c", "5", None),
            HighlightClass::Legs => ("#d2691e", "2.5", None),
            HighlightClass::Matching => ("#2a7d2a", "2.5", None),
            HighlightClass::CrossingPair => ("#c0392b", "2.5", Some("8 5")),
        }
    }
}

impl fmt::Display for HighlightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HighlightClass {
    type Err = CggError;

    fn from_str(s: &str) -> Result<Self> {
        HighlightClass::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| CggError::parse(format!("unknown highlight class {s:?}")))
    }
}

/// What to draw: a set of edges, some of which carry a highlight class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    ctx: GraphContext,
    edges: Vec<Edge>,
    highlights: Vec<(Edge, HighlightClass)>,
}

impl RenderSpec {
    /// Highlighted edges must belong to `edges`, and no edge may be in two
    /// classes.
    pub fn new(
        ctx: GraphContext,
        edges: Vec<Edge>,
        highlights: Vec<(HighlightClass, Vec<Edge>)>,
    ) -> Result<Self> {
        let set = EdgeSet::try_from_edges(&ctx, edges.iter().copied())?;
        let mut tagged = Vec::new();
        let mut seen = EdgeSet::new();
        for (class, group) in highlights {
            for e in group {
                ctx.check_edge(e)?;
                if !set.contains(&ctx, e) {
                    return Err(CggError::domain(format!(
                        "highlighted edge {e} is not among the drawn edges"
                    )));
                }
                if seen.contains(&ctx, e) {
                    return Err(CggError::domain(format!(
                        "edge {e} has two highlight classes"
                    )));
                }
                seen.insert(&ctx, e);
                tagged.push((e, class));
            }
        }
        tagged.sort();
        Ok(RenderSpec {
            ctx,
            edges: set.to_edges(&ctx),
            highlights: tagged,
        })
    }

    /// Picks highlights from the structure of the set: spine and legs for a
    /// blocker; for a perfect matching, edges in some crossing-neighbor pair
    /// are `crossing-pair` and the rest `matching`; nothing otherwise.
    pub fn auto(ctx: GraphContext, edges: Vec<Edge>) -> Result<Self> {
        let set = EdgeSet::try_from_edges(&ctx, edges.iter().copied())?;
        let mut groups = Vec::new();
        if set.len() == ctx.m() {
            if let Some(spec) = validate_blocker(&ctx, &set)? {
                groups.push((HighlightClass::Spine, spec.spine_edges(&ctx)));
                groups.push((HighlightClass::Legs, spec.leg_edges(&ctx)));
            } else if let Ok(matching) = Matching::from_set(ctx, set) {
                let mut bad = EdgeSet::new();
                for (a, b) in matching.crossing_neighbor_pairs() {
                    bad.insert(&ctx, a);
                    bad.insert(&ctx, b);
                }
                groups.push((HighlightClass::CrossingPair, bad.to_edges(&ctx)));
                groups.push((
                    HighlightClass::Matching,
                    set.difference(&bad).to_edges(&ctx),
                ));
            }
        }
        RenderSpec::new(ctx, edges, groups)
    }

    pub fn ctx(&self) -> &GraphContext {
        &self.ctx
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn class_of(&self, e: Edge) -> Option<HighlightClass> {
        self.highlights
            .iter()
            .find(|(x, _)| *x == e)
            .map(|&(_, c)| c)
    }

    fn position(&self, k: usize, radius: f64) -> (f64, f64) {
        let step = 360.0 / self.ctx.n() as f64;
        let theta = (90.0 - k as f64 * step).to_radians();
        let c = CANVAS / 2.0;
        (c + radius * theta.cos(), c - radius * theta.sin())
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let n = self.ctx.n();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="440" height="440" viewBox="0 0 440 440">"#
        );
        let _ = writeln!(out, r##"<rect width="440" height="440" fill="#ffffff"/>"##);
        let outline: Vec<String> = (0..n)
            .map(|k| {
                let (x, y) = self.position(k, RADIUS);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="none" stroke="#dddddd" stroke-width="1"/>"##,
            outline.join(" ")
        );
        for &e in &self.edges {
            let (x1, y1) = self.position(e.u(), RADIUS);
            let (x2, y2) = self.position(e.v(), RADIUS);
            let (class, (colour, width, dash)) = match self.class_of(e) {
                Some(c) => (c.name(), c.stroke()),
                None => ("plain", ("#555555", "1.5", None)),
            };
            let dash = dash.map_or(String::new(), |d| format!(r#" stroke-dasharray="{d}""#));
            let _ = writeln!(
                out,
                r#"<line class="edge {class}" data-edge="{}-{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{width}"{dash} stroke-linecap="round"/>"#,
                e.u(),
                e.v(),
                num(x1),
                num(y1),
                num(x2),
                num(y2),
            );
        }
        for k in 0..n {
            let (x, y) = self.position(k, RADIUS);
            let (lx, ly) = self.position(k, LABEL_RADIUS);
            let _ = writeln!(
                out,
                r##"<circle class="vertex" cx="{}" cy="{}" r="5" fill="#222222"/>"##,
                num(x),
                num(y)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" dominant-baseline="middle">{k}</text>"#,
                num(lx),
                num(ly)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Two decimals, never `-0.00`.
fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0 + 0.0;
    format!("{r:.2}")
}

/// Parses `"u-v,u-v,..."`.
pub fn parse_edge_list(ctx: &GraphContext, text: &str) -> Result<Vec<Edge>> {
    text.split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Edge::parse_token(ctx, t))
        .collect()
}

/// Parses `"spine=0-1,1-2,legs=1-4"`: a token containing `=` opens a new
/// class, and bare edge tokens extend the most recent one.
pub fn parse_highlights(
    ctx: &GraphContext,
    text: &str,
) -> Result<Vec<(HighlightClass, Vec<Edge>)>> {
    let mut groups: Vec<(HighlightClass, Vec<Edge>)> = Vec::new();
    for token in text
        .split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        let edge_token = match token.split_once('=') {
            Some((class, rest)) => {
                groups.push((class.parse()?, Vec::new()));
                rest.trim()
            }
            None => token,
        };
        if edge_token.is_empty() {
            continue;
        }
        let group = groups
            .last_mut()
            .ok_or_else(|| CggError::parse(format!("edge {token:?} precedes any class name")))?;
        group.1.push(Edge::parse_token(ctx, edge_token)?);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize) -> GraphContext {
        GraphContext::new(m).unwrap()
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn blocker_with_spine_and_legs() {
        let c = ctx(3);
        let edges = parse_edge_list(&c, "0-1,1-2,1-4").unwrap();
        let hl = parse_highlights(&c, "spine=0-1,1-2,legs=1-4").unwrap();
        let svg = RenderSpec::new(c, edges, hl).unwrap().to_svg();
        assert_eq!(count(&svg, "<line "), 3);
        assert_eq!(count(&svg, "<circle "), 6);
        assert_eq!(count(&svg, "<text "), 6);
        assert_eq!(count(&svg, "edge spine"), 2);
        assert_eq!(count(&svg, "edge legs"), 1);
    }

    #[test]
    fn matching_and_empty() {
        let c = ctx(3);
        let edges = parse_edge_list(&c, "0-3,1-2,4-5").unwrap();
        let svg = RenderSpec::new(c, edges, vec![]).unwrap().to_svg();
        assert_eq!(count(&svg, "<line "), 3);

        let svg = RenderSpec::new(ctx(2), vec![], vec![]).unwrap().to_svg();
        assert_eq!(count(&svg, "<line "), 0);
        assert_eq!(count(&svg, "<circle "), 4);
    }

    #[test]
    fn layout_puts_zero_on_top_and_goes_clockwise() {
        let spec = RenderSpec::new(ctx(2), vec![], vec![]).unwrap();
        assert_eq!(spec.position(0, RADIUS), (220.0, 20.0));
        let (x, y) = spec.position(1, RADIUS);
        assert!((x - 420.0).abs() < 1e-9 && (y - 220.0).abs() < 1e-9);
        assert_eq!(num(-0.0001), "0.00");
    }

    #[test]
    fn deterministic_output() {
        let c = ctx(5);
        let edges = parse_edge_list(&c, "0-5,1-2,3-4,6-9,7-8").unwrap();
        let a = RenderSpec::auto(c, edges.clone()).unwrap().to_svg();
        let b = RenderSpec::auto(c, edges).unwrap().to_svg();
        assert_eq!(a, b);
    }

    #[test]
    fn auto_classification() {
        let c = ctx(3);
        let blocker = RenderSpec::auto(c, parse_edge_list(&c, "0-1,1-2,1-4").unwrap()).unwrap();
        assert_eq!(
            blocker.class_of(Edge::new_unchecked(1, 4)),
            Some(HighlightClass::Legs)
        );
        let bad = RenderSpec::auto(c, parse_edge_list(&c, "0-3,1-4,2-5").unwrap()).unwrap();
        assert_eq!(
            bad.class_of(Edge::new_unchecked(0, 3)),
            Some(HighlightClass::CrossingPair)
        );
        let good = RenderSpec::auto(c, parse_edge_list(&c, "0-1,2-3,4-5").unwrap()).unwrap();
        assert_eq!(
            good.class_of(Edge::new_unchecked(2, 3)),
            Some(HighlightClass::Matching)
        );
    }

    #[test]
    fn invalid_specs() {
        let c = ctx(3);
        assert!(parse_edge_list(&c, "0-6").is_err());
        let edges = parse_edge_list(&c, "0-1").unwrap();
        let hl = parse_highlights(&c, "spine=1-2").unwrap();
        assert!(RenderSpec::new(c, edges.clone(), hl).is_err());
        let hl = parse_highlights(&c, "spine=0-1,legs=0-1").unwrap();
        assert!(RenderSpec::new(c, edges, hl).is_err());
        assert!(parse_highlights(&c, "0-1").is_err());
        assert!(parse_highlights(&c, "wings=0-1").is_err());
    }
}
