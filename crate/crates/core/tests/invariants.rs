use std::sync::OnceLock;

use flipgraph::engine::{self, build_graph, FlipGraph, DEFAULT_VERTEX_CAP};
use flipgraph::export;
use flipgraph::graphassoc::{Graph, GraphAssoc, Preset};
use flipgraph::multiassoc::MultiAssoc;
use flipgraph::normalization::Normalize;
use flipgraph::polygon::{TypeA, TypeB};
use flipgraph::stars;
use flipgraph::typed::TypeD;
use flipgraph::{ElementSet, FlipModel};
use proptest::prelude::*;

fn graph(model: &dyn FlipModel) -> FlipGraph {
    build_graph(model, DEFAULT_VERTEX_CAP).unwrap()
}

fn d5() -> &'static (TypeD, FlipGraph) {
    static G: OnceLock<(TypeD, FlipGraph)> = OnceLock::new();
    G.get_or_init(|| {
        let m = TypeD::new(5).unwrap();
        let g = graph(&m);
        (m, g)
    })
}

fn a5() -> &'static (TypeA, FlipGraph) {
    static G: OnceLock<(TypeA, FlipGraph)> = OnceLock::new();
    G.get_or_init(|| {
        let m = TypeA::new(5).unwrap();
        let g = graph(&m);
        (m, g)
    })
}

fn b4() -> &'static (TypeB, FlipGraph) {
    static G: OnceLock<(TypeB, FlipGraph)> = OnceLock::new();
    G.get_or_init(|| {
        let m = TypeB::new(4).unwrap();
        let g = graph(&m);
        (m, g)
    })
}

fn walk_involutive(model: &dyn FlipModel, choices: &[usize]) {
    let mut cur = model.seed();
    for &c in choices {
        let flips = model.flips(cur).unwrap();
        assert_eq!(flips.len(), model.rank());
        let f = &flips[c % flips.len()];
        assert!(model.is_vertex(f.result));
        let back = model.flips(f.result).unwrap();
        let rev = back.iter().find(|b| b.removed == f.added).unwrap();
        assert_eq!((rev.added, rev.result), (f.removed, cur));
        cur = f.result;
    }
}

fn normalization_idempotent<M: Normalize>(model: &M, g: &FlipGraph, i: usize) {
    let t = g.vertex(i % g.len());
    for chi in 0..model.universe_size() as u32 {
        if model.anchors(chi).is_empty() {
            continue;
        }
        let once = model.normalize_set(chi, None, t).unwrap();
        assert!(once.contains(chi) && model.is_vertex(once));
        assert_eq!(model.normalize_set(chi, None, once).unwrap(), once);
        if t.contains(chi) {
            assert_eq!(once, t);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_ops_match_bit_arithmetic(a in any::<u128>(), b in any::<u128>(), id in 0u32..128) {
        let (x, y) = (ElementSet::from_bits(a), ElementSet::from_bits(b));
        prop_assert_eq!(x.union(y).bits(), a | b);
        prop_assert_eq!(x.intersection(y).bits(), a & b);
        prop_assert_eq!(x.difference(y).bits(), a & !b);
        prop_assert_eq!(x.len(), a.count_ones() as usize);
        prop_assert_eq!(x.is_subset(y), a & !b == 0);
        prop_assert_eq!(ElementSet::from_ids(x.iter()), x);
        prop_assert!(x.with(id).contains(id) && !x.without(id).contains(id));
        prop_assert_eq!(x.to_ids().windows(2).all(|w| w[0] < w[1]), true);
    }

    #[test]
    fn flips_are_involutions(choices in prop::collection::vec(0usize..64, 1..40)) {
        walk_involutive(&TypeA::new(6).unwrap(), &choices);
        walk_involutive(&TypeB::new(5).unwrap(), &choices);
        walk_involutive(&TypeD::new(6).unwrap(), &choices);
        walk_involutive(&MultiAssoc::new(9, 2).unwrap(), &choices);
    }

    #[test]
    fn graph_flips_are_involutions(
        edges in prop::collection::vec((0u32..6, 0u32..6), 1..12),
        choices in prop::collection::vec(0usize..64, 1..20),
    ) {
        let mut edges: Vec<_> = edges.into_iter().filter(|(u, v)| u != v).collect();
        // a spanning path keeps the graph connected
        edges.extend((0..5).map(|i| (i, i + 1)));
        let model = GraphAssoc::new(Graph::from_edges("random", &edges).unwrap()).unwrap();
        walk_involutive(&model, &choices);
    }

    #[test]
    fn distances_form_a_metric(s in 0usize..10_000, t in 0usize..10_000, u in 0usize..10_000) {
        let (_, g) = d5();
        let (s, t, u) = (s % g.len(), t % g.len(), u % g.len());
        let ds = engine::distances(g, s).unwrap().distances;
        let dt = engine::distances(g, t).unwrap().distances;
        prop_assert_eq!(ds[t], dt[s]);
        prop_assert_eq!(ds[s], 0);
        prop_assert!(ds[u] <= ds[t] + dt[u]);
    }

    #[test]
    fn normalization_is_idempotent(i in 0usize..10_000) {
        let (a, ga) = a5();
        normalization_idempotent(a, ga, i);
        let (b, gb) = b4();
        normalization_idempotent(b, gb, i);
        let (d, gd) = d5();
        normalization_idempotent(d, gd, i);
    }

    #[test]
    fn routed_paths_stay_short(s in 0usize..10_000, t in 0usize..10_000) {
        let (d, g) = d5();
        let (s, t) = (g.vertex(s % g.len()), g.vertex(t % g.len()));
        let path = stars::star_routed_path(d, s, t).unwrap();
        prop_assert!(path.len() - 1 <= 8);
        prop_assert_eq!((path[0], *path.last().unwrap()), (s, t));
    }
}

#[test]
fn routed_paths_stay_short_d6() {
    let d = TypeD::new(6).unwrap();
    let g = graph(&d);
    for s in (0..g.len()).step_by(37) {
        for t in (0..g.len()).step_by(11) {
            let path = stars::star_routed_path(&d, g.vertex(s), g.vertex(t)).unwrap();
            assert!(path.len() - 1 <= 10);
        }
    }
}

fn degree_profile(g: &FlipGraph) -> Vec<usize> {
    let mut d: Vec<_> = (0..g.len()).map(|i| g.degree(i)).collect();
    d.sort_unstable();
    d
}

#[test]
fn single_crossing_multiassoc_is_type_a() {
    for m in 5..=9 {
        let k = graph(&MultiAssoc::new(m, 1).unwrap());
        let a = graph(&TypeA::new(m as usize - 3).unwrap());
        assert_eq!(k.len(), a.len());
        assert_eq!(degree_profile(&k), degree_profile(&a));
        assert_eq!(engine::diameter(&k).unwrap().value, engine::diameter(&a).unwrap().value);
    }
}

#[test]
fn path_and_cycle_graph_associahedra() {
    for n in 2..=6 {
        let p = graph(&GraphAssoc::new(Graph::preset(Preset::Path, n).unwrap()).unwrap());
        let a = graph(&TypeA::new(n - 1).unwrap());
        assert_eq!(p.len(), a.len());
        assert_eq!(engine::diameter(&p).unwrap().value, engine::diameter(&a).unwrap().value);
    }
    for (n, central_binomial) in [(3, 6), (4, 20)] {
        let c = graph(&GraphAssoc::new(Graph::preset(Preset::Cycle, n).unwrap()).unwrap());
        assert_eq!(c.len(), central_binomial);
    }
}

#[test]
fn diameter_grows_with_edges() {
    let delta = |kind, n| {
        let g = graph(&GraphAssoc::new(Graph::preset(kind, n).unwrap()).unwrap());
        engine::diameter(&g).unwrap().value
    };
    for n in 4..=5 {
        let path = delta(Preset::Path, n);
        let cycle = delta(Preset::Cycle, n);
        let complete = delta(Preset::Complete, n);
        assert!(path <= cycle && cycle <= complete, "n = {n}: {path} {cycle} {complete}");
        assert!(delta(Preset::Star, n - 1) <= complete);
    }
}

#[test]
fn export_round_trips() {
    let models: Vec<Box<dyn FlipModel>> = vec![
        Box::new(TypeA::new(3).unwrap()),
        Box::new(TypeB::new(3).unwrap()),
        Box::new(TypeD::new(3).unwrap()),
        Box::new(MultiAssoc::new(7, 2).unwrap()),
        Box::new(GraphAssoc::new(Graph::preset(Preset::Star, 3).unwrap()).unwrap()),
    ];
    for m in &models {
        let g = graph(m.as_ref());
        let text = export::to_json(&g).unwrap();
        assert_eq!(export::from_json(&text).unwrap(), g);
        assert_eq!(export::to_json(&export::from_json(&text).unwrap()).unwrap(), text);
    }
}
