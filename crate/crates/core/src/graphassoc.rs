//! Graph associahedra: maximal nested sets of tubes of a connected graph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::{self, FlipGraph, NlfpReport};
use crate::error::{input, Error, Result};
use crate::model::{CompatComplex, Flip, FlipModel};
use crate::set::{ElementId, ElementSet, MAX_ELEMENTS};

/// Largest graph accepted; tube enumeration is exponential in it.
pub const MAX_GRAPH_VERTICES: usize = 16;

/// A simple connected graph on vertices `0..n`, stored as neighbour masks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    name: String,
    adjacency: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Path,
    Cycle,
    /// Center plus `size` leaves.
    Star,
    Complete,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Preset::Path),
            "cycle" => Ok(Preset::Cycle),
            "star" => Ok(Preset::Star),
            "complete" => Ok(Preset::Complete),
            _ => input(format!("unknown graph preset {s:?}")),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list with arbitrary vertex labels, which
    /// are renumbered `0..n` in increasing order.
    pub fn from_edges(name: impl Into<String>, edges: &[(u32, u32)]) -> Result<Self> {
        let mut ids = BTreeMap::new();
        for &(a, b) in edges {
            if a == b {
                return input(format!("loop at vertex {a}"));
            }
            ids.insert(a, 0);
            ids.insert(b, 0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i as u32;
        }
        let n = ids.len();
        if n < 2 {
            return input("graph needs at least two vertices");
        }
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::Resource {
                what: "graph vertices",
                requested: n,
                cap: MAX_GRAPH_VERTICES,
            });
        }
        let mut adjacency = vec![0u32; n];
        for &(a, b) in edges {
            let (a, b) = (ids[&a], ids[&b]);
            adjacency[a as usize] |= 1 << b;
            adjacency[b as usize] |= 1 << a;
        }
        let mut canon: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| {
                let adj = adjacency[a as usize];
                (a + 1..n as u32).filter(move |&b| adj >> b & 1 == 1).map(move |b| (a, b))
            })
            .collect();
        canon.sort_unstable();
        let g = Graph {
            name: name.into(),
            adjacency,
            edges: canon,
        };
        if !g.is_connected(g.full()) {
            return input("graph is disconnected");
        }
        Ok(g)
    }

    pub fn preset(kind: Preset, size: usize) -> Result<Self> {
        let s = size as u32;
        let (name, edges): (&str, Vec<(u32, u32)>) = match kind {
            Preset::Path if size >= 2 => ("path", (0..s - 1).map(|i| (i, i + 1)).collect()),
            Preset::Cycle if size >= 3 => ("cycle", (0..s).map(|i| (i, (i + 1) % s)).collect()),
            Preset::Star if size >= 1 => ("star", (1..=s).map(|i| (0, i)).collect()),
            Preset::Complete if size >= 2 => (
                "complete",
                (0..s).flat_map(|a| (a + 1..s).map(move |b| (a, b))).collect(),
            ),
            _ => return input(format!("preset {kind:?} needs a larger size than {size}")),
        };
        Graph::from_edges(format!("{name}-{size}"), &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn full(&self) -> u32 {
        (1u32 << self.vertex_count()) - 1
    }

    /// Neighbours of any vertex of `set`, outside it.
    fn boundary(&self, set: u32) -> u32 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            out |= self.adjacency[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out & !set
    }

    pub fn is_connected(&self, set: u32) -> bool {
        if set == 0 {
            return false;
        }
        let mut reached = 1 << set.trailing_zeros();
        loop {
            let next = (reached | self.boundary(reached)) & set;
            if next == reached {
                return reached == set;
            }
            reached = next;
        }
    }

    /// Same vertex count and every edge of `self` is an edge of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self
                .adjacency
                .iter()
                .zip(&other.adjacency)
                .all(|(a, b)| a & !b == 0)
    }
}

/// Proper nonempty vertex subset inducing a connected subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Tube(pub u32);

impl Tube {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, other: Tube) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn label(self) -> String {
        let vs: Vec<String> = (0..32)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| i.to_string())
            .collect();
        format!("{{{}}}", vs.join(","))
    }
}

/// All tubes, ordered by size and then by mask.
pub fn tubes_of(g: &Graph) -> Vec<Tube> {
    let mut out: Vec<Tube> = (1..g.full())
        .filter(|&s| g.is_connected(s))
        .map(Tube)
        .collect();
    out.sort_by_key(|t| (t.len(), t.0));
    out
}

/// Nested, or disjoint with no edge between them.
pub fn tubes_compatible(t1: Tube, t2: Tube, g: &Graph) -> bool {
    t1.contains(t2) || t2.contains(t1) || (t1.0 & t2.0 == 0 && g.boundary(t1.0) & t2.0 == 0)
}

#[derive(Debug, Clone)]
pub struct GraphAssoc {
    graph: Graph,
    tubes: Vec<Tube>,
    complex: CompatComplex,
}

impl GraphAssoc {
    pub fn new(graph: Graph) -> Result<Self> {
        let tubes = tubes_of(&graph);
        if tubes.len() > MAX_ELEMENTS {
            return Err(Error::Resource {
                what: "tubes",
                requested: tubes.len(),
                cap: MAX_ELEMENTS,
            });
        }
        let complex = CompatComplex::from_fn(tubes.len(), graph.vertex_count() - 1, |i, j| {
            Ok(tubes_compatible(tubes[i], tubes[j], &graph))
        })?;
        Ok(GraphAssoc {
            graph,
            tubes,
            complex,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn tube(&self, id: ElementId) -> Tube {
        self.tubes[id as usize]
    }

    pub fn id_of(&self, t: Tube) -> Result<ElementId> {
        self.tubes
            .iter()
            .position(|&x| x == t)
            .map(|i| i as ElementId)
            .ok_or_else(|| Error::Input(format!("{} is not a tube", t.label())))
    }

    pub fn enumerate_nested(&self, cap: usize) -> Result<Vec<ElementSet>> {
        self.complex.facets(cap)
    }

    pub fn flips_nested(&self, n: ElementSet) -> Result<Vec<Flip>> {
        self.complex.flips(n)
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|e| self.tube(e).label()).collect();
        format!("[{}]", parts.join(" "))
    }

    /// Tubes of `common` not contained in any tube of `own`.
    pub fn uncovered(&self, common: ElementSet, own: ElementSet) -> ElementSet {
        common
            .iter()
            .filter(|&c| !own.iter().any(|o| self.tube(o).contains(self.tube(c))))
            .collect()
    }
}

impl FlipModel for GraphAssoc {
    fn key(&self) -> String {
        format!("G-{}", self.graph.name)
    }

    fn family(&self) -> &'static str {
        "graphassoc"
    }

    fn rank(&self) -> usize {
        self.graph.vertex_count() - 1
    }

    fn element_labels(&self) -> Vec<String> {
        self.tubes.iter().map(|t| t.label()).collect()
    }

    /// Nested chain of initial segments of a BFS order from vertex 0.
    fn seed(&self) -> ElementSet {
        let g = &self.graph;
        let mut order = vec![0u32];
        let mut seen = 1u32;
        let mut i = 0;
        while i < order.len() {
            let mut adj = g.adjacency[order[i] as usize] & !seen;
            while adj != 0 {
                let v = adj.trailing_zeros();
                adj &= adj - 1;
                seen |= 1 << v;
                order.push(v);
            }
            i += 1;
        }
        let mut acc = 0u32;
        let mut out = ElementSet::EMPTY;
        for &v in &order[..order.len() - 1] {
            acc |= 1 << v;
            out.insert(self.id_of(Tube(acc)).expect("BFS prefixes are connected"));
        }
        out
    }

    fn flips(&self, v: ElementSet) -> Result<Vec<Flip>> {
        self.flips_nested(v)
    }

    fn enumerate(&self, cap: usize) -> Option<Result<Vec<ElementSet>>> {
        Some(self.enumerate_nested(cap))
    }

    fn is_vertex(&self, v: ElementSet) -> bool {
        v.iter().all(|e| (e as usize) < self.tubes.len()) && self.complex.is_facet(v)
    }
}

/// A violating pair with its minimal face and distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub source: ElementSet,
    pub target: ElementSet,
    pub common: Vec<String>,
    pub in_face_distance: u32,
    pub distance: u32,
    pub geodesic: Vec<ElementSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub leaves: usize,
    pub vertices: usize,
    pub nlfp: NlfpReport,
    /// Violating pair whose common tube is the center alone, with the
    /// largest in-face distance.
    pub witness: Option<StarWitness>,
}

/// NLFP sweep on the stellohedron of the star with `leaves` leaves.
pub fn counterexample_search_star(leaves: usize, vertex_cap: usize, pair_cap: usize) -> Result<StarReport> {
    let model = GraphAssoc::new(Graph::preset(Preset::Star, leaves)?)?;
    let g = engine::build_graph(&model, vertex_cap)?;
    let nlfp = engine::nlfp_check(&g, pair_cap)?;
    let center = ElementSet::singleton(model.id_of(Tube(1))?);
    let face = engine::face_subgraph(&g, center)?;
    let mut best: Option<(u32, usize, usize)> = None;
    let mut face_fields = BTreeMap::new();
    for (s, t) in nlfp.violating_pairs() {
        if g.vertex(s).intersection(g.vertex(t)) != center {
            continue;
        }
        let (fs, ft) = (
            face.index_of(g.vertex(s)).expect("vertex lies in the face"),
            face.index_of(g.vertex(t)).expect("vertex lies in the face"),
        );
        if let std::collections::btree_map::Entry::Vacant(e) = face_fields.entry(ft) {
            e.insert(engine::distances(&face, ft)?);
        }
        let d = face_fields[&ft].distances[fs];
        if best.is_none_or(|(bd, _, _)| d > bd) {
            best = Some((d, s, t));
        }
    }
    let witness = match best {
        None => None,
        Some((in_face, s, t)) => {
            let v = nlfp
                .violations
                .iter()
                .find(|v| v.source == s && v.target == t)
                .expect("violating pair has a violation");
            let path = engine::geodesic_through(&g, s, v.witness, t)?;
            Some(StarWitness {
                source: g.vertex(s),
                target: g.vertex(t),
                common: center.iter().map(|e| model.tube(e).label()).collect(),
                in_face_distance: in_face,
                distance: (path.len() - 1) as u32,
                geodesic: path.iter().map(|&i| g.vertex(i)).collect(),
            })
        }
    };
    Ok(StarReport {
        leaves,
        vertices: g.len(),
        nlfp,
        witness,
    })
}

/// Geodesics between `N` and `Ñ` keep every common tube that is not inside
/// a tube of `N ∖ Ñ`.
pub fn refined_face_rule_check(model: &GraphAssoc, g: &FlipGraph, pair_cap: usize) -> Result<NlfpReport> {
    engine::containment_check(g, pair_cap, |s, t| {
        let (vs, vt) = (g.vertex(s), g.vertex(t));
        model.uncovered(vs.intersection(vt), vs.difference(vt))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub vertices: usize,
    pub edges: usize,
    pub diameter: u32,
    pub lower: u32,
    pub upper: u32,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.lower <= self.diameter && self.diameter <= self.upper
    }
}

/// `max(2n - 20, m) <= δ(G) <= C(n, 2)`.
pub fn bound_checks(model: &GraphAssoc, g: &FlipGraph) -> Result<BoundReport> {
    let n = model.graph.vertex_count();
    let m = model.graph.edges.len();
    Ok(BoundReport {
        vertices: n,
        edges: m,
        diameter: engine::diameter(g)?.value,
        lower: (2 * n).saturating_sub(20).max(m) as u32,
        upper: (n * (n - 1) / 2) as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_graph_checked, DEFAULT_PAIR_CAP, DEFAULT_VERTEX_CAP};

    fn brute_tubes(g: &Graph) -> usize {
        let n = g.vertex_count();
        (1u32..(1 << n) - 1)
            .filter(|&s| {
                // flood fill over explicit edges
                let mut reach = 1u32 << s.trailing_zeros();
                for _ in 0..n {
                    for &(a, b) in g.edges() {
                        if s >> a & 1 == 1 && s >> b & 1 == 1 && (reach >> a | reach >> b) & 1 == 1 {
                            reach |= 1 << a | 1 << b;
                        }
                    }
                }
                reach == s
            })
            .count()
    }

    #[test]
    fn path_tubes() {
        let g = Graph::preset(Preset::Path, 3).unwrap();
        let t = tubes_of(&g);
        assert_eq!(t.len(), 5);
        assert!(tubes_compatible(Tube(0b001), Tube(0b011), &g));
        assert!(!tubes_compatible(Tube(0b001), Tube(0b010), &g));
        assert!(tubes_compatible(Tube(0b001), Tube(0b100), &g));
        for kind in [Preset::Path, Preset::Cycle, Preset::Star, Preset::Complete] {
            let g = Graph::preset(kind, 4).unwrap();
            assert_eq!(tubes_of(&g).len(), brute_tubes(&g));
        }
    }

    #[test]
    fn edge_list_input() {
        let g = Graph::from_edges("g", &[(10, 20), (20, 30)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(Graph::from_edges("g", &[(0, 1), (2, 3)]).is_err());
        assert!(Graph::from_edges("g", &[(0, 0)]).is_err());
        assert!(Graph::from_edges("g", &[]).is_err());
    }

    #[test]
    fn counts() {
        let count = |kind, size| {
            let m = GraphAssoc::new(Graph::preset(kind, size).unwrap()).unwrap();
            let g = build_graph_checked(&m, DEFAULT_VERTEX_CAP).unwrap();
            assert!((0..g.len()).all(|i| g.degree(i) == m.rank()));
            g.len()
        };
        assert_eq!(count(Preset::Path, 3), 5);
        assert_eq!(count(Preset::Complete, 3), 6);
        assert_eq!(count(Preset::Complete, 4), 24);
        let star: usize = (0..=5).map(|k| (5 - k + 1..=5).product::<usize>()).sum();
        assert_eq!(star, 326);
        assert_eq!(count(Preset::Star, 5), star);
    }

    #[test]
    fn stellohedron_violation() {
        let r = counterexample_search_star(5, DEFAULT_VERTEX_CAP, DEFAULT_PAIR_CAP).unwrap();
        assert!(!r.nlfp.holds());
        let w = r.witness.unwrap();
        assert_eq!(w.in_face_distance, 10);
        assert!(w.distance <= 10);
    }

    #[test]
    fn bounds_and_refined_rule() {
        for (kind, size) in [(Preset::Path, 4), (Preset::Complete, 4), (Preset::Star, 3)] {
            let m = GraphAssoc::new(Graph::preset(kind, size).unwrap()).unwrap();
            let g = engine::build_graph(&m, DEFAULT_VERTEX_CAP).unwrap();
            assert!(bound_checks(&m, &g).unwrap().holds());
            assert!(refined_face_rule_check(&m, &g, DEFAULT_PAIR_CAP).unwrap().holds());
        }
        let k4 = GraphAssoc::new(Graph::preset(Preset::Complete, 4).unwrap()).unwrap();
        let g = engine::build_graph(&k4, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(engine::diameter(&g).unwrap().value, 6);
    }
}
