//! Browser bindings for a static demo page: a type D flip explorer, the
//! star-to-star flip path, and a diameter / non-leaving-face summary.
//!
//! Everything crosses the boundary as JSON strings so the same functions can
//! be tested natively.

use flipgraph::engine::{self, FlipGraph};
use flipgraph::polygon::{TypeA, TypeB};
use flipgraph::stars;
use flipgraph::typed::{chord_segment, nearest_diagonal_distance, ChordD, TypeD};
use flipgraph::{ElementId, ElementSet, FlipModel};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest type D rank the explorer accepts.
pub const MAX_EXPLORER_RANK: u32 = 12;

/// Largest summary graph built in the browser.
const SUMMARY_VERTEX_CAP: usize = 5_000;

/// Disk radius used for drawing only, as a fraction of the distance from the
/// center to the nearest diagonal.
const DRAW_DISK: f64 = 0.45;

#[derive(Serialize)]
struct ChordView {
    id: ElementId,
    label: String,
    central: bool,
    /// `[x1, y1, x2, y2]` for both chords of the symmetric pair.
    segments: Vec<[f64; 4]>,
}

#[derive(Serialize)]
struct FlipView {
    removed: String,
    added: String,
    removed_id: ElementId,
}

#[derive(Serialize)]
struct StateView {
    n: u32,
    disk_radius: f64,
    polygon: Vec<[f64; 2]>,
    chords: Vec<ChordView>,
    flips: Vec<FlipView>,
    left_pairs: usize,
    right_pairs: usize,
    distance_to_left_star: u32,
    distance_to_right_star: u32,
    steps: usize,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("view serializes")
}

fn draw_radius(n: u32) -> f64 {
    DRAW_DISK * nearest_diagonal_distance(n)
}

fn chord_views(model: &TypeD, s: ElementSet) -> Vec<ChordView> {
    let n = model.n();
    let r = draw_radius(n);
    s.iter()
        .map(|id| {
            let pair = model.pair(id);
            ChordView {
                id,
                label: pair.label(),
                central: pair.is_central(),
                segments: pair
                    .chords(n)
                    .iter()
                    .map(|&c: &ChordD| {
                        let (p, q) = chord_segment(c, n, r);
                        [p.0, p.1, q.0, q.1]
                    })
                    .collect(),
            }
        })
        .collect()
}

fn state_view(model: &TypeD, s: ElementSet, steps: usize) -> Result<StateView, String> {
    let n = model.n();
    let (l, r) = model.central_counts_set(s);
    let d = stars::distance_to_stars(model, s).map_err(|e| e.to_string())?;
    let flips = model
        .complex()
        .flips(s)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|f| FlipView {
            removed: model.pair(f.removed).label(),
            added: model.pair(f.added).label(),
            removed_id: f.removed,
        })
        .collect();
    Ok(StateView {
        n,
        disk_radius: draw_radius(n),
        polygon: (0..2 * n)
            .map(|v| {
                let t = std::f64::consts::PI * v as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect(),
        chords: chord_views(model, s),
        flips,
        left_pairs: l,
        right_pairs: r,
        distance_to_left_star: d.left,
        distance_to_right_star: d.right,
        steps,
    })
}

/// Interactive walk through the pseudotriangulations of `D_n`.
#[wasm_bindgen]
pub struct DExplorer {
    model: TypeD,
    history: Vec<ElementSet>,
}

#[wasm_bindgen]
impl DExplorer {
    /// Starts at the left star.
    #[wasm_bindgen(constructor)]
    pub fn new(n: u32) -> Result<DExplorer, String> {
        if !(2..=MAX_EXPLORER_RANK).contains(&n) {
            return Err(format!("rank must be between 2 and {MAX_EXPLORER_RANK}"));
        }
        let model = TypeD::new(n as usize).map_err(|e| e.to_string())?;
        let start = model.left_star_set();
        Ok(DExplorer {
            model,
            history: vec![start],
        })
    }

    fn current(&self) -> ElementSet {
        *self.history.last().expect("history is never empty")
    }

    pub fn state_json(&self) -> Result<String, String> {
        state_view(&self.model, self.current(), self.history.len() - 1).map(|v| json(&v))
    }

    /// Flips the pair with element id `removed`.
    pub fn flip(&mut self, removed: u32) -> Result<String, String> {
        let cur = self.current();
        if !cur.contains(removed as ElementId) {
            return Err(format!("element {removed} is not in the current pseudotriangulation"));
        }
        let f = self
            .model
            .flip_set(cur, removed as ElementId)
            .map_err(|e| e.to_string())?;
        self.history.push(f.result);
        self.state_json()
    }

    /// Flips the chord closest to the point `(x, y)` (unit-circle coordinates).
    pub fn flip_nearest(&mut self, x: f64, y: f64) -> Result<String, String> {
        let mut best: Option<(f64, ElementId)> = None;
        for c in chord_views(&self.model, self.current()) {
            for s in &c.segments {
                let d = point_segment_distance((x, y), s);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, c.id));
                }
            }
        }
        let (_, id) = best.ok_or("no chords")?;
        self.flip(id)
    }

    pub fn undo(&mut self) -> bool {
        if self.history.len() > 1 {
            self.history.pop();
            true
        } else {
            false
        }
    }

    pub fn reset(&mut self, right: bool) {
        let s = if right {
            self.model.right_star_set()
        } else {
            self.model.left_star_set()
        };
        self.history = vec![s];
    }
}

fn point_segment_distance(p: (f64, f64), s: &[f64; 4]) -> f64 {
    let (ax, ay, bx, by) = (s[0], s[1], s[2], s[3]);
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - ax) * dx + (p.1 - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (ax + t * dx - p.0, ay + t * dy - p.1);
    (cx * cx + cy * cy).sqrt()
}

/// The `2n - 2` flips from the left star to the right star, as drawable
/// states.
#[wasm_bindgen]
pub fn star_path_json(n: u32, base: u32) -> Result<String, String> {
    if !(2..=MAX_EXPLORER_RANK).contains(&n) {
        return Err(format!("rank must be between 2 and {MAX_EXPLORER_RANK}"));
    }
    let model = TypeD::new(n as usize).map_err(|e| e.to_string())?;
    let path = stars::star_path(&model, base).map_err(|e| e.to_string())?;
    let states = path
        .states()
        .into_iter()
        .enumerate()
        .map(|(i, s)| state_view(&model, s, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json(&states))
}

#[derive(Serialize)]
struct Summary {
    model: String,
    vertices: usize,
    edges: usize,
    diameter: u32,
    diameter_witness: [String; 2],
    nlfp_pairs_checked: u64,
    nlfp_violating_pairs: usize,
}

fn summarize(g: &FlipGraph) -> Result<Summary, String> {
    let d = engine::diameter(g).map_err(|e| e.to_string())?;
    let nlfp = engine::nlfp_check(g, engine::DEFAULT_PAIR_CAP).map_err(|e| e.to_string())?;
    Ok(Summary {
        model: g.model.clone(),
        vertices: g.len(),
        edges: g.edge_count(),
        diameter: d.value,
        diameter_witness: [g.format_vertex(d.witness.0), g.format_vertex(d.witness.1)],
        nlfp_pairs_checked: nlfp.pairs_checked,
        nlfp_violating_pairs: nlfp.violating_pairs().len(),
    })
}

/// Vertex count, diameter and NLFP result for type `A`, `B` or `D` of rank `n`.
#[wasm_bindgen]
pub fn summary_json(family: &str, n: u32) -> Result<String, String> {
    let n = n as usize;
    let model: Box<dyn FlipModel> = match family {
        "A" => Box::new(TypeA::new(n).map_err(|e| e.to_string())?),
        "B" => Box::new(TypeB::new(n).map_err(|e| e.to_string())?),
        "D" => Box::new(TypeD::new(n).map_err(|e| e.to_string())?),
        _ => return Err(format!("unknown type {family:?}")),
    };
    let g = engine::build_graph(model.as_ref(), SUMMARY_VERTEX_CAP).map_err(|e| e.to_string())?;
    summarize(&g).map(|s| json(&s))
}
