//! Canonically ordered collections of edge sets and their JSON/CSV forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CggError, Result};
use crate::geometry::{Edge, EdgeSet, GraphContext};

/// Which term of the sequence `A0` (simple perfect matchings), `A1`
/// (blockers), `A2` (co-blockers), `A3`, ... a family represents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    A(usize),
    Custom(String),
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::A(k) => write!(f, "A{k}"),
            FamilyLabel::Custom(s) => f.write_str(s),
        }
    }
}

impl FromStr for FamilyLabel {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(s.strip_prefix('A')
            .and_then(|k| k.parse().ok())
            .map(FamilyLabel::A)
            .unwrap_or_else(|| FamilyLabel::Custom(s.to_string())))
    }
}

/// A duplicate-free family of edge sets, sorted by [`EdgeSet`]'s
/// lexicographic order on edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    ctx: GraphContext,
    label: FamilyLabel,
    members: Vec<EdgeSet>,
}

impl Family {
    /// Sorts and deduplicates `members`.
    pub fn new(ctx: GraphContext, label: FamilyLabel, mut members: Vec<EdgeSet>) -> Self {
        members.sort_unstable();
        members.dedup();
        Family {
            ctx,
            label,
            members,
        }
    }

    pub fn ctx(&self) -> &GraphContext {
        &self.ctx
    }

    pub fn label(&self) -> &FamilyLabel {
        &self.label
    }

    pub fn with_label(mut self, label: FamilyLabel) -> Self {
        self.label = label;
        self
    }

    pub fn members(&self) -> &[EdgeSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &EdgeSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    /// Same context and same members, ignoring the label.
    pub fn same_sets(&self, other: &Family) -> bool {
        self.ctx == other.ctx && self.members == other.members
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.ctx == other.ctx && self.members.iter().all(|s| other.contains(s))
    }

    pub fn document(&self) -> FamilyDocument {
        FamilyDocument {
            m: self.ctx.m(),
            label: self.label.to_string(),
            count: self.members.len(),
            sets: self.members.iter().map(|s| s.to_edges(&self.ctx)).collect(),
            stats: None,
        }
    }

    pub fn to_json(&self) -> String {
        self.document().to_json()
    }

    /// One line per member, edges written `u-v` and separated by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for s in &self.members {
            out.push_str(&s.to_csv_row(&self.ctx));
            out.push('\n');
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyDocument = serde_json::from_str(text)?;
        doc.into_family()
    }

    pub fn from_csv(ctx: GraphContext, label: FamilyLabel, text: &str) -> Result<Self> {
        let mut members = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut set = EdgeSet::new();
            for token in line.split(';') {
                set.insert(&ctx, Edge::parse_token(&ctx, token)?);
            }
            members.push(set);
        }
        Ok(Family::new(ctx, label, members))
    }
}

/// Counters reported alongside an oracle-derived family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub min_size: usize,
    pub solutions: usize,
    pub nodes: u64,
}

/// The serialized form of a [`Family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub m: usize,
    pub label: String,
    pub count: usize,
    pub sets: Vec<Vec<Edge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
}

impl FamilyDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("family documents always serialize");
        s.push('\n');
        s
    }

    pub fn into_family(self) -> Result<Family> {
        let ctx = GraphContext::new(self.m)?;
        if self.count != self.sets.len() {
            return Err(CggError::parse(format!(
                "count {} does not match {} listed sets",
                self.count,
                self.sets.len()
            )));
        }
        let members = self
            .sets
            .into_iter()
            .map(|edges| EdgeSet::try_from_edges(&ctx, edges))
            .collect::<Result<Vec<_>>>()?;
        let label = self.label.parse().expect("infallible");
        Ok(Family::new(ctx, label, members))
    }
}
