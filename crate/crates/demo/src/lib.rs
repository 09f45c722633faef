//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each operation returns a JSON string; SVG drawings are embedded under
//! the `"svg"` key. The `*_json` functions are plain Rust so they can be
//! tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cgg_core::blockers::{blocker_specs, witness_for_edge_set};
use cgg_core::render::parse_edge_list;
use cgg_core::{
    build_blocker, validate_blocker, CountReport, EdgeSet, GraphContext, HighlightClass, Limits,
    Matching, RenderSpec,
};

/// Largest m offered by the page; the co-blocker count is still instant.
pub const DEMO_MAX_M: usize = 9;

type Result<T> = std::result::Result<T, String>;

fn context(m: usize) -> Result<GraphContext> {
    if m > DEMO_MAX_M {
        return Err(format!("the demo stops at m = {DEMO_MAX_M}"));
    }
    GraphContext::new(m).map_err(|e| e.to_string())
}

fn edge_list(ctx: &GraphContext, set: &EdgeSet) -> String {
    set.iter(ctx)
        .map(|e| format!("{}-{}", e.u(), e.v()))
        .collect::<Vec<_>>()
        .join(",")
}

fn to_string(value: Value) -> String {
    value.to_string()
}

/// The `index`-th blocker in generator order, drawn with spine and legs.
pub fn blocker_json(m: usize, index: usize) -> Result<String> {
    let ctx = context(m)?;
    let specs = blocker_specs(&ctx);
    let spec = specs
        .get(index)
        .ok_or_else(|| format!("there are {} blockers for m = {m}", specs.len()))?;
    let set = build_blocker(&ctx, spec).map_err(|e| e.to_string())?;
    let render = RenderSpec::new(
        ctx,
        set.to_edges(&ctx),
        vec![
            (HighlightClass::Spine, spec.spine_edges(&ctx)),
            (HighlightClass::Legs, spec.leg_edges(&ctx)),
        ],
    )
    .map_err(|e| e.to_string())?;
    Ok(to_string(json!({
        "m": m,
        "index": index,
        "count": specs.len(),
        "spec": spec,
        "edges": edge_list(&ctx, &set),
        "svg": render.to_svg(),
    })))
}

/// Classifies an m-edge set given as `"u-v,u-v,..."`. If it is not a
/// semi-simple perfect matching, a disjoint blocker is drawn next to it.
pub fn classify_json(m: usize, edges: &str) -> Result<String> {
    let ctx = context(m)?;
    let list = parse_edge_list(&ctx, edges).map_err(|e| e.to_string())?;
    let set = EdgeSet::from_edges(&ctx, list.iter().copied());
    if set.len() != m || list.len() != m {
        return Err(format!("enter exactly {m} distinct edges"));
    }
    let matching = Matching::from_set(ctx, set).ok();
    let semi_simple = matching.as_ref().is_some_and(Matching::is_semi_simple);
    let conflicts: Vec<String> = matching
        .as_ref()
        .map(|mm| {
            mm.crossing_neighbor_pairs()
                .into_iter()
                .map(|(a, b)| format!("{a} {b}"))
                .collect()
        })
        .unwrap_or_default();
    let witness = if semi_simple {
        None
    } else {
        Some(witness_for_edge_set(&ctx, &set).map_err(|e| e.to_string())?)
    };

    let mut drawn = set.to_edges(&ctx);
    let mut groups = Vec::new();
    if let Some(mm) = &matching {
        let mut bad = EdgeSet::new();
        for (a, b) in mm.crossing_neighbor_pairs() {
            bad.insert(&ctx, a);
            bad.insert(&ctx, b);
        }
        groups.push((HighlightClass::CrossingPair, bad.to_edges(&ctx)));
        groups.push((
            HighlightClass::Matching,
            set.difference(&bad).to_edges(&ctx),
        ));
    }
    if let Some(w) = &witness {
        let spec = validate_blocker(&ctx, w)
            .map_err(|e| e.to_string())?
            .expect("witnesses are blockers");
        drawn.extend(w.iter(&ctx));
        groups.push((HighlightClass::Spine, spec.spine_edges(&ctx)));
        groups.push((HighlightClass::Legs, spec.leg_edges(&ctx)));
    }
    let render = RenderSpec::new(ctx, drawn, groups).map_err(|e| e.to_string())?;
    Ok(to_string(json!({
        "m": m,
        "perfect_matching": matching.is_some(),
        "simple": matching.as_ref().is_some_and(Matching::is_simple),
        "semi_simple": semi_simple,
        "crossing_neighbor_pairs": conflicts,
        "witness": witness.map(|w| edge_list(&ctx, &w)),
        "svg": render.to_svg(),
    })))
}

/// Count rows for m = 2..=max_m.
pub fn counts_json(max_m: usize) -> Result<String> {
    if !(2..=DEMO_MAX_M).contains(&max_m) {
        return Err(format!("choose m between 2 and {DEMO_MAX_M}"));
    }
    let limits = Limits::default();
    let rows = (2..=max_m)
        .map(|m| CountReport::for_m(m, &limits))
        .collect::<cgg_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn blocker(m: usize, index: usize) -> std::result::Result<String, JsError> {
    blocker_json(m, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(m: usize, edges: &str) -> std::result::Result<String, JsError> {
    classify_json(m, edges).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn counts(max_m: usize) -> std::result::Result<String, JsError> {
    counts_json(max_m).map_err(|e| JsError::new(&e))
}
