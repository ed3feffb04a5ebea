//! Model-generic flip graphs: construction by flip closure, BFS distances,
//! diameters, geodesic intervals, faces, and the non-leaving-face and
//! entering-face checkers.
//!
//! All-pairs work is organised per target vertex: one BFS from the target
//! gives the distance field, and geodesic intervals toward that target are
//! walked by descending it. Nothing quadratic in the vertex count is stored.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FlipModel;
use crate::par;
use crate::set::{ElementId, ElementSet};

pub const DEFAULT_VERTEX_CAP: usize = 100_000;

/// Default cap on the number of ordered pairs visited by all-pairs checks.
pub const DEFAULT_PAIR_CAP: usize = 400_000_000;

const UNREACHED: u32 = u32::MAX;

/// Directed half of a flip edge: flipping `removed` out of the source vertex
/// adds `added` and lands on `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub to: u32,
    pub removed: ElementId,
    pub added: ElementId,
}

/// Immutable flip graph with canonically sorted vertices and CSR adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct FlipGraph {
    pub model: String,
    pub family: String,
    pub rank: usize,
    pub labels: Vec<String>,
    vertices: Vec<ElementSet>,
    offsets: Vec<u32>,
    edges: Vec<Edge>,
}

impl FlipGraph {
    /// Assembles a graph from vertices in any order and per-vertex edge lists
    /// indexed like `vertices`. Vertices are re-sorted canonically and the
    /// adjacency is checked for symmetry.
    pub fn from_parts(
        model: String,
        family: String,
        rank: usize,
        labels: Vec<String>,
        vertices: Vec<ElementSet>,
        adjacency: Vec<Vec<Edge>>,
    ) -> Result<Self> {
        if vertices.len() != adjacency.len() {
            return Err(Error::Input("vertex and adjacency counts differ".into()));
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut new_index = vec![0u32; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new as u32;
        }
        let mut sorted = Vec::with_capacity(vertices.len());
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut edges = Vec::new();
        offsets.push(0);
        for &old in &order {
            sorted.push(vertices[old]);
            let mut adj: Vec<Edge> = adjacency[old]
                .iter()
                .map(|e| {
                    if e.to as usize >= vertices.len() {
                        return Err(Error::Input(format!("edge target {} out of range", e.to)));
                    }
                    Ok(Edge {
                        to: new_index[e.to as usize],
                        ..*e
                    })
                })
                .collect::<Result<_>>()?;
            adj.sort_by_key(|e| (e.removed, e.to));
            edges.extend(adj);
            offsets.push(edges.len() as u32);
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ModelConsistency("duplicate vertex".into()));
        }
        let g = FlipGraph {
            model,
            family,
            rank,
            labels,
            vertices: sorted,
            offsets,
            edges,
        };
        g.check_symmetric()?;
        Ok(g)
    }

    fn check_symmetric(&self) -> Result<()> {
        for u in 0..self.len() {
            for e in self.neighbors(u) {
                let back = self
                    .neighbors(e.to as usize)
                    .iter()
                    .any(|b| b.to as usize == u && b.removed == e.added && b.added == e.removed);
                if !back {
                    return Err(Error::ModelConsistency(format!(
                        "flip {:?} -> {:?} has no reverse flip",
                        self.vertices[u], self.vertices[e.to as usize]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ElementSet] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> ElementSet {
        self.vertices[i]
    }

    pub fn neighbors(&self, i: usize) -> &[Edge] {
        &self.edges[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn degree(&self, i: usize) -> usize {
        (self.offsets[i + 1] - self.offsets[i]) as usize
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn index_of(&self, v: ElementSet) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Undirected edges `(i, j, removed, added)` with `i < j`, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize, ElementId, ElementId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.len() {
            for e in self.neighbors(u) {
                if (e.to as usize) > u {
                    out.push((u, e.to as usize, e.removed, e.added));
                }
            }
        }
        out.sort();
        out
    }

    /// Whether `path` is a walk along flip edges.
    pub fn is_path(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| {
            w[0] < self.len() && self.neighbors(w[0]).iter().any(|e| e.to as usize == w[1])
        })
    }

    pub fn format_vertex(&self, i: usize) -> String {
        let parts: Vec<&str> = self.vertices[i]
            .iter()
            .map(|e| self.labels[e as usize].as_str())
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Builds the flip graph by closure from the model's seed.
pub fn build_graph(model: &dyn FlipModel, cap: usize) -> Result<FlipGraph> {
    let seed = model.seed();
    if !model.is_vertex(seed) {
        return Err(Error::ModelConsistency(format!("seed {seed:?} is not a vertex")));
    }
    let mut index: HashMap<ElementSet, u32> = HashMap::new();
    let mut vertices = vec![seed];
    let mut adjacency: Vec<Vec<Edge>> = Vec::new();
    index.insert(seed, 0);
    let mut next = 0;
    while next < vertices.len() {
        let v = vertices[next];
        let mut adj = Vec::new();
        for f in model.flips(v)? {
            let to = match index.get(&f.result) {
                Some(&i) => i,
                None => {
                    if vertices.len() >= cap {
                        return Err(Error::Resource {
                            what: "vertex count",
                            requested: vertices.len() + 1,
                            cap,
                        });
                    }
                    let i = vertices.len() as u32;
                    index.insert(f.result, i);
                    vertices.push(f.result);
                    i
                }
            };
            adj.push(Edge {
                to,
                removed: f.removed,
                added: f.added,
            });
        }
        adjacency.push(adj);
        next += 1;
    }
    FlipGraph::from_parts(
        model.key(),
        model.family().to_string(),
        model.rank(),
        model.element_labels(),
        vertices,
        adjacency,
    )
}

/// [`build_graph`], then checks the vertex set against the model's
/// independent enumeration when one exists.
pub fn build_graph_checked(model: &dyn FlipModel, cap: usize) -> Result<FlipGraph> {
    let g = build_graph(model, cap)?;
    if let Some(all) = model.enumerate(cap) {
        let mut all = all?;
        all.sort();
        if all.as_slice() != g.vertices() {
            return Err(Error::ModelConsistency(format!(
                "{}: flip closure found {} vertices, enumeration {}",
                model.key(),
                g.len(),
                all.len()
            )));
        }
    }
    Ok(g)
}

/// BFS distances from one source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceField {
    pub source: usize,
    pub distances: Vec<u32>,
}

impl DistanceField {
    pub fn eccentricity(&self) -> u32 {
        self.distances.iter().copied().max().unwrap_or(0)
    }
}

fn bfs_into(g: &FlipGraph, source: usize, dist: &mut Vec<u32>, queue: &mut VecDeque<u32>) {
    dist.clear();
    dist.resize(g.len(), UNREACHED);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source as u32);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize] + 1;
        for e in g.neighbors(u as usize) {
            let d = &mut dist[e.to as usize];
            if *d == UNREACHED {
                *d = du;
                queue.push_back(e.to);
            }
        }
    }
}

fn check_index(g: &FlipGraph, i: usize) -> Result<()> {
    if i >= g.len() {
        return Err(Error::Input(format!(
            "vertex index {i} out of range (graph has {} vertices)",
            g.len()
        )));
    }
    Ok(())
}

pub fn distances(g: &FlipGraph, source: usize) -> Result<DistanceField> {
    check_index(g, source)?;
    let mut dist = Vec::new();
    bfs_into(g, source, &mut dist, &mut VecDeque::new());
    if dist.contains(&UNREACHED) {
        return Err(Error::ModelConsistency(format!(
            "{}: flip graph is disconnected",
            g.model
        )));
    }
    Ok(DistanceField {
        source,
        distances: dist,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eccentricity {
    pub eccentricity: u32,
    /// Smallest vertex index at maximal distance.
    pub witness: usize,
}

/// Eccentricity of every vertex (all-pairs BFS, parallel over sources).
pub fn eccentricities(g: &FlipGraph) -> Result<Vec<Eccentricity>> {
    if g.is_empty() {
        return Err(Error::Input("empty graph".into()));
    }
    let rows = par::map_range_with(
        g.len(),
        || (Vec::new(), VecDeque::new()),
        |(dist, queue), s| {
            bfs_into(g, s, dist, queue);
            let mut best = Eccentricity {
                eccentricity: 0,
                witness: s,
            };
            for (t, &d) in dist.iter().enumerate() {
                if d == UNREACHED {
                    return None;
                }
                if d > best.eccentricity {
                    best = Eccentricity {
                        eccentricity: d,
                        witness: t,
                    };
                }
            }
            Some(best)
        },
    );
    rows.into_iter()
        .map(|r| {
            r.ok_or_else(|| {
                Error::ModelConsistency(format!("{}: flip graph is disconnected", g.model))
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: u32,
    /// Lexicographically least pair of vertex indices at distance `value`.
    pub witness: (usize, usize),
}

pub fn diameter(g: &FlipGraph) -> Result<Diameter> {
    Ok(diameter_from(&eccentricities(g)?))
}

pub fn diameter_from(ecc: &[Eccentricity]) -> Diameter {
    let value = ecc.iter().map(|e| e.eccentricity).max().unwrap_or(0);
    let s = ecc.iter().position(|e| e.eccentricity == value).unwrap_or(0);
    Diameter {
        value,
        witness: (s, ecc.get(s).map_or(s, |e| e.witness)),
    }
}

/// Vertices on at least one geodesic from `s` to `t`, sorted.
pub fn geodesic_interval(g: &FlipGraph, s: usize, t: usize) -> Result<Vec<usize>> {
    let ds = distances(g, s)?;
    let dt = distances(g, t)?;
    let d = ds.distances[t];
    Ok((0..g.len())
        .filter(|&v| ds.distances[v] + dt.distances[v] == d)
        .collect())
}

/// A geodesic `s -> t`, choosing the smallest next index at every step.
pub fn shortest_path(g: &FlipGraph, s: usize, t: usize) -> Result<Vec<usize>> {
    check_index(g, s)?;
    let dt = distances(g, t)?;
    Ok(descend(g, &dt.distances, s))
}

fn descend(g: &FlipGraph, dt: &[u32], s: usize) -> Vec<usize> {
    let mut path = vec![s];
    let mut u = s;
    while dt[u] > 0 {
        u = g
            .neighbors(u)
            .iter()
            .filter(|e| dt[e.to as usize] + 1 == dt[u])
            .map(|e| e.to as usize)
            .min()
            .expect("BFS field always has a descending neighbor");
        path.push(u);
    }
    path
}

/// A geodesic `s -> t` passing through `w`, which must lie in their interval.
pub fn geodesic_through(g: &FlipGraph, s: usize, w: usize, t: usize) -> Result<Vec<usize>> {
    let mut p = shortest_path(g, s, w)?;
    let q = shortest_path(g, w, t)?;
    let d = distances(g, s)?.distances[t] as usize;
    p.extend_from_slice(&q[1..]);
    if p.len() != d + 1 {
        return Err(Error::Input(format!("vertex {w} is not on a geodesic from {s} to {t}")));
    }
    Ok(p)
}

/// Elements common to both vertices: the smallest face containing them.
pub fn minimal_face(g: &FlipGraph, s: usize, t: usize) -> Result<ElementSet> {
    check_index(g, s)?;
    check_index(g, t)?;
    Ok(g.vertex(s).intersection(g.vertex(t)))
}

/// Induced subgraph on the vertices containing `required`.
pub fn face_subgraph(g: &FlipGraph, required: ElementSet) -> Result<FlipGraph> {
    let keep: Vec<usize> = (0..g.len())
        .filter(|&i| required.is_subset(g.vertex(i)))
        .collect();
    if keep.is_empty() {
        return Err(Error::Input(format!(
            "{required:?} is not contained in any vertex"
        )));
    }
    let mut new_index = vec![UNREACHED; g.len()];
    for (k, &i) in keep.iter().enumerate() {
        new_index[i] = k as u32;
    }
    let vertices = keep.iter().map(|&i| g.vertex(i)).collect();
    let adjacency = keep
        .iter()
        .map(|&i| {
            g.neighbors(i)
                .iter()
                .filter(|e| new_index[e.to as usize] != UNREACHED)
                .map(|e| Edge {
                    to: new_index[e.to as usize],
                    ..*e
                })
                .collect()
        })
        .collect();
    let face = FlipGraph::from_parts(
        g.model.clone(),
        g.family.clone(),
        g.rank - required.len(),
        g.labels.clone(),
        vertices,
        adjacency,
    )?;
    distances(&face, 0).map_err(|_| {
        Error::ModelConsistency(format!("face {required:?} of {} is disconnected", g.model))
    })?;
    Ok(face)
}

fn check_pairs(g: &FlipGraph, pair_cap: usize) -> Result<()> {
    let pairs = g.len().saturating_mul(g.len());
    if pairs > pair_cap {
        return Err(Error::Resource {
            what: "ordered vertex pairs",
            requested: pairs,
            cap: pair_cap,
        });
    }
    Ok(())
}

/// A geodesic vertex missing an element common to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub source: usize,
    pub target: usize,
    pub witness: usize,
    pub missing: ElementId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NlfpReport {
    pub violations: Vec<Violation>,
    pub pairs_checked: u64,
    pub geodesic_vertices_checked: u64,
}

impl NlfpReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Ordered pairs with at least one violation.
    pub fn violating_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.violations.iter().map(|v| (v.source, v.target)).collect();
        v.dedup();
        v
    }
}

/// Walks the geodesic interval from `s` toward the target whose BFS field is
/// `dt`, calling `visit` on every vertex of the interval once.
fn walk_interval(
    g: &FlipGraph,
    dt: &[u32],
    s: usize,
    stamp: &mut [u32],
    round: u32,
    stack: &mut Vec<u32>,
    mut visit: impl FnMut(usize),
) {
    stack.clear();
    stack.push(s as u32);
    stamp[s] = round;
    while let Some(u) = stack.pop() {
        let u = u as usize;
        visit(u);
        for e in g.neighbors(u) {
            let w = e.to as usize;
            if dt[w] + 1 == dt[u] && stamp[w] != round {
                stamp[w] = round;
                stack.push(e.to);
            }
        }
    }
}

struct Scratch {
    dist: Vec<u32>,
    queue: VecDeque<u32>,
    stamp: Vec<u32>,
    round: u32,
    stack: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: Vec::new(),
            queue: VecDeque::new(),
            stamp: vec![0; n],
            round: 0,
            stack: Vec::new(),
        }
    }

    fn next_round(&mut self) -> u32 {
        self.round += 1;
        self.round
    }
}

/// Generic per-target sweep: for every target `t` and source `s`, `check`
/// reports which geodesic-interval vertices violate the required containment
/// `required(s, t)`.
fn interval_sweep(
    g: &FlipGraph,
    pair_cap: usize,
    required: impl Fn(usize, usize) -> ElementSet + Sync + Send,
) -> Result<NlfpReport> {
    check_pairs(g, pair_cap)?;
    let targets: Vec<usize> = (0..g.len()).collect();
    sweep_targets(g, &targets, required)
}

fn sweep_targets(
    g: &FlipGraph,
    targets: &[usize],
    required: impl Fn(usize, usize) -> ElementSet + Sync + Send,
) -> Result<NlfpReport> {
    let n = g.len();
    let per_target = par::map_range_with(
        targets.len(),
        || Scratch::new(n),
        |sc, ti| {
            let t = targets[ti];
            let mut dist = std::mem::take(&mut sc.dist);
            bfs_into(g, t, &mut dist, &mut sc.queue);
            let mut out = NlfpReport::default();
            if dist.contains(&UNREACHED) {
                sc.dist = dist;
                return Err(Error::ModelConsistency(format!(
                    "{}: flip graph is disconnected",
                    g.model
                )));
            }
            for s in 0..n {
                out.pairs_checked += 1;
                let need = required(s, t);
                if need.is_empty() || s == t {
                    continue;
                }
                let round = sc.next_round();
                let mut local = Vec::new();
                let mut seen = 0u64;
                walk_interval(g, &dist, s, &mut sc.stamp, round, &mut sc.stack, |w| {
                    seen += 1;
                    let lack = need.difference(g.vertex(w));
                    if let Some(missing) = lack.first() {
                        local.push(Violation {
                            source: s,
                            target: t,
                            witness: w,
                            missing,
                        });
                    }
                });
                local.sort_by_key(|v| v.witness);
                out.geodesic_vertices_checked += seen;
                out.violations.extend(local);
            }
            sc.dist = dist;
            Ok(out)
        },
    );
    let mut report = NlfpReport::default();
    for r in per_target {
        let r = r?;
        report.pairs_checked += r.pairs_checked;
        report.geodesic_vertices_checked += r.geodesic_vertices_checked;
        report.violations.extend(r.violations);
    }
    report
        .violations
        .sort_by_key(|v| (v.source, v.target, v.witness));
    Ok(report)
}

/// Non-leaving-face check: every vertex on every geodesic between `s` and `t`
/// must contain `s ∩ t`.
pub fn nlfp_check(g: &FlipGraph, pair_cap: usize) -> Result<NlfpReport> {
    interval_sweep(g, pair_cap, |s, t| g.vertex(s).intersection(g.vertex(t)))
}

/// NLFP check toward `targets` randomly chosen targets (all sources each),
/// reproducible from `seed`. For graphs too large for the full sweep.
pub fn nlfp_check_sampled(g: &FlipGraph, targets: usize, seed: u64) -> Result<NlfpReport> {
    use rand::seq::index;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, g.len(), targets.min(g.len())).into_vec();
    picked.sort_unstable();
    sweep_targets(g, &picked, |s, t| g.vertex(s).intersection(g.vertex(t)))
}

/// Same sweep with a caller-supplied set of elements that geodesic vertices
/// must contain.
pub fn containment_check(
    g: &FlipGraph,
    pair_cap: usize,
    required: impl Fn(usize, usize) -> ElementSet + Sync + Send,
) -> Result<NlfpReport> {
    interval_sweep(g, pair_cap, required)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnteringFaceCounterexample {
    pub source: usize,
    pub target: usize,
    pub removed: ElementId,
    pub added: ElementId,
    pub result: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EnteringFaceReport {
    pub counterexamples: Vec<EnteringFaceCounterexample>,
    pub pairs_checked: u64,
    pub flips_checked: u64,
}

/// For every pair `(T, T̃)` and every flip of `T` removing an element outside
/// `T̃` and adding one inside it, the flip must start a geodesic to `T̃`.
pub fn entering_face_check(g: &FlipGraph, pair_cap: usize) -> Result<EnteringFaceReport> {
    check_pairs(g, pair_cap)?;
    let n = g.len();
    let per_target = par::map_range_with(
        n,
        || (Vec::new(), VecDeque::new()),
        |(dist, queue), t| {
            bfs_into(g, t, dist, queue);
            if dist.contains(&UNREACHED) {
                return Err(Error::ModelConsistency(format!(
                    "{}: flip graph is disconnected",
                    g.model
                )));
            }
            let target = g.vertex(t);
            let mut out = EnteringFaceReport::default();
            for s in 0..n {
                out.pairs_checked += 1;
                for e in g.neighbors(s) {
                    if !target.contains(e.removed) && target.contains(e.added) {
                        out.flips_checked += 1;
                        if dist[e.to as usize] + 1 != dist[s] {
                            out.counterexamples.push(EnteringFaceCounterexample {
                                source: s,
                                target: t,
                                removed: e.removed,
                                added: e.added,
                                result: e.to as usize,
                            });
                        }
                    }
                }
            }
            Ok(out)
        },
    );
    let mut report = EnteringFaceReport::default();
    for r in per_target {
        let r = r?;
        report.pairs_checked += r.pairs_checked;
        report.flips_checked += r.flips_checked;
        report.counterexamples.extend(r.counterexamples);
    }
    report.counterexamples.sort_by_key(|c| (c.source, c.target, c.removed));
    Ok(report)
}

/// Diameter of the type `I₂(p)` associahedron, a `(p+2)`-gon.
pub fn diameter_i2(p: u32) -> Result<u32> {
    if p < 2 {
        return Err(Error::Input(format!("I2(p) needs p >= 2, got {p}")));
    }
    Ok(p / 2 + 1)
}
