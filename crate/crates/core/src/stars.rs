//! Type D diameter machinery: the explicit path between the two stars,
//! closed-form distances to the stars, and star-routed paths between any two
//! pseudotriangulations.

use serde::Serialize;

use crate::engine::{self, FlipGraph};
use crate::error::{input, Error, Result};
use crate::set::{ElementId, ElementSet};
use crate::typed::{PairD, Side, TypeD};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarStep {
    pub removed: PairD,
    pub added: PairD,
    pub result: ElementSet,
}

/// Flip sequence from the left star to the right star.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarPath {
    pub n: u32,
    pub base: u32,
    pub start: ElementSet,
    pub steps: Vec<StarStep>,
}

impl StarPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> ElementSet {
        self.steps.last().map_or(self.start, |s| s.result)
    }

    /// All vertices visited, starting with the left star.
    pub fn states(&self) -> Vec<ElementSet> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.result))
            .collect()
    }
}

fn diagonal_pair(model: &TypeD, x: i64, y: i64) -> Result<PairD> {
    let m = 2 * model.n() as i64;
    let c = crate::typed::ChordD::diagonal(x.rem_euclid(m) as u32, y.rem_euclid(m) as u32, model.n())?;
    Ok(PairD::of_chord(c, model.n()))
}

fn central(model: &TypeD, p: i64, side: Side) -> PairD {
    let n = model.n() as i64;
    PairD::Central {
        p: p.rem_euclid(n) as u32,
        side,
    }
}

/// The `2n - 2` flips from the left star to the right star based at `p`:
/// `L(p+i) -> {p, p+i+1}` for `i = 1..=n-2`, `L(p) -> R(p-1)`,
/// `L(p-1) -> R(p̄)`, then `{p, p̄-i} -> R(p̄-i-1)` for `i = 1..=n-2`.
/// Every step is checked against the model's flip.
pub fn star_path(model: &TypeD, p: u32) -> Result<StarPath> {
    let n = model.n();
    if p >= n {
        return input(format!("base vertex {p} must be below {n}"));
    }
    let (pi, ni) = (p as i64, n as i64);
    let pb = pi + ni;
    let mut plan: Vec<(PairD, PairD)> = Vec::new();
    for i in 1..=ni - 2 {
        plan.push((central(model, pi + i, Side::L), diagonal_pair(model, pi, pi + i + 1)?));
    }
    plan.push((central(model, pi, Side::L), central(model, pi - 1, Side::R)));
    plan.push((central(model, pi - 1, Side::L), central(model, pb, Side::R)));
    for i in 1..=ni - 2 {
        plan.push((diagonal_pair(model, pi, pb - i)?, central(model, pb - i - 1, Side::R)));
    }
    let start = model.left_star_set();
    let mut cur = start;
    let mut steps = Vec::with_capacity(plan.len());
    for (removed, added) in plan {
        let f = model.flip_set(cur, model.id_of(removed)?)?;
        if f.added != model.id_of(added)? {
            return Err(Error::ModelConsistency(format!(
                "flipping {removed} in {} gives {}, expected {added}",
                model.format_set(cur),
                model.pair(f.added)
            )));
        }
        cur = f.result;
        steps.push(StarStep {
            removed,
            added,
            result: cur,
        });
    }
    if cur != model.right_star_set() {
        return Err(Error::ModelConsistency(format!(
            "star path ends at {}, not the right star",
            model.format_set(cur)
        )));
    }
    Ok(StarPath {
        n,
        base: p,
        start,
        steps,
    })
}

/// Distances from a pseudotriangulation to the left and right stars, from
/// its numbers of left and right central pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarDistances {
    pub left: u32,
    pub right: u32,
}

pub fn distance_to_stars(model: &TypeD, t: ElementSet) -> Result<StarDistances> {
    let n = model.n();
    let (l, r) = model.central_counts_set(t);
    let (l, r) = (l as u32, r as u32);
    let from_left = (l >= 1).then(|| StarDistances {
        left: n - l,
        right: n + l - 2,
    });
    let from_right = (r >= 1).then(|| StarDistances {
        left: n + r - 2,
        right: n - r,
    });
    match (from_left, from_right) {
        (Some(a), Some(b)) if a != b => Err(Error::Internal(format!(
            "star distance prescriptions disagree for {}",
            model.format_set(t)
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::Internal(format!(
            "{} has no central pair",
            model.format_set(t)
        ))),
    }
}

fn star_distance(model: &TypeD, t: ElementSet, side: Side) -> Result<u32> {
    let d = distance_to_stars(model, t)?;
    Ok(match side {
        Side::L => d.left,
        Side::R => d.right,
    })
}

/// Greedy descent from `t` to the star on `side`: each step lowers the
/// closed-form distance by one, preferring flips that create a central pair
/// of that side (smallest index first), then the smallest removed element.
fn leg(model: &TypeD, t: ElementSet, side: Side) -> Result<Vec<ElementSet>> {
    let mut path = vec![t];
    let mut cur = t;
    let mut d = star_distance(model, cur, side)?;
    while d > 0 {
        let mut best: Option<((bool, u32, ElementId), ElementSet)> = None;
        for f in model.complex().flips(cur)? {
            if star_distance(model, f.result, side)? + 1 != d {
                continue;
            }
            let key = match model.pair(f.added) {
                PairD::Central { p, side: s } if s == side => (false, p, f.removed),
                _ => (true, 0, f.removed),
            };
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, f.result));
            }
        }
        let (_, next) = best.ok_or_else(|| {
            Error::ModelConsistency(format!(
                "no flip of {} moves toward the {side} star",
                model.format_set(cur)
            ))
        })?;
        cur = next;
        d -= 1;
        path.push(cur);
    }
    Ok(path)
}

/// A path `t -> t̃` through one of the two stars, of length at most `2n - 2`.
/// It is an upper-bound witness, not a geodesic.
pub fn star_routed_path(model: &TypeD, t: ElementSet, t2: ElementSet) -> Result<Vec<ElementSet>> {
    for v in [t, t2] {
        model.check_vertex(v).map_err(|_| {
            Error::Input(format!("{} is not a pseudotriangulation", model.format_set(v)))
        })?;
    }
    if t == t2 {
        return Ok(vec![t]);
    }
    let (c1, c2) = (model.central_counts_set(t), model.central_counts_set(t2));
    let (d1, d2) = (distance_to_stars(model, t)?, distance_to_stars(model, t2)?);
    let side = if c1.0 >= 1 && c2.0 >= 1 {
        Side::L
    } else if c1.1 >= 1 && c2.1 >= 1 {
        Side::R
    } else if d1.left + d2.left <= d1.right + d2.right {
        Side::L
    } else {
        Side::R
    };
    let mut path = leg(model, t, side)?;
    let mut back = leg(model, t2, side)?;
    back.pop();
    back.reverse();
    path.extend(back);
    let bound = 2 * model.n() as usize - 2;
    if path.len() - 1 > bound {
        return Err(Error::Internal(format!(
            "star-routed path has length {} > {bound}",
            path.len() - 1
        )));
    }
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterCheck {
    pub n: u32,
    pub claimed: u32,
    pub bfs: u32,
    pub star_eccentricity: u32,
    pub star_distance: u32,
}

impl DiameterCheck {
    pub fn holds(&self) -> bool {
        self.claimed == self.bfs
            && self.star_eccentricity == self.claimed
            && self.star_distance == self.claimed
    }
}

/// BFS diameter of `D_n` against `2n - 2`, with the left star's
/// eccentricity and its distance to the right star.
pub fn verify_diameter_d(model: &TypeD, vertex_cap: usize) -> Result<DiameterCheck> {
    let g = engine::build_graph(model, vertex_cap)?;
    verify_diameter_on(model, &g)
}

pub fn verify_diameter_on(model: &TypeD, g: &FlipGraph) -> Result<DiameterCheck> {
    let left = g
        .index_of(model.left_star_set())
        .ok_or_else(|| Error::ModelConsistency("left star missing from the graph".into()))?;
    let right = g
        .index_of(model.right_star_set())
        .ok_or_else(|| Error::ModelConsistency("right star missing from the graph".into()))?;
    let field = engine::distances(g, left)?;
    Ok(DiameterCheck {
        n: model.n(),
        claimed: 2 * model.n() - 2,
        bfs: engine::diameter(g)?.value,
        star_eccentricity: field.eccentricity(),
        star_distance: field.distances[right],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_graph, DEFAULT_VERTEX_CAP};

    #[test]
    fn star_paths_validate() {
        for n in 2..=8 {
            let d = TypeD::new(n).unwrap();
            for p in 0..n as u32 {
                let sp = star_path(&d, p).unwrap();
                assert_eq!(sp.len(), 2 * n - 2);
                assert_eq!(sp.end(), d.right_star_set());
            }
        }
        let d = TypeD::new(3).unwrap();
        assert!(star_path(&d, 3).is_err());
    }

    #[test]
    fn star_distances_match_bfs() {
        for n in 2..=5 {
            let d = TypeD::new(n).unwrap();
            let g = build_graph(&d, DEFAULT_VERTEX_CAP).unwrap();
            let fl = engine::distances(&g, g.index_of(d.left_star_set()).unwrap()).unwrap();
            let fr = engine::distances(&g, g.index_of(d.right_star_set()).unwrap()).unwrap();
            for i in 0..g.len() {
                let s = distance_to_stars(&d, g.vertex(i)).unwrap();
                assert_eq!((s.left, s.right), (fl.distances[i], fr.distances[i]));
            }
        }
    }

    #[test]
    fn mixed_vertex_distances() {
        let d = TypeD::new(3).unwrap();
        let r = |p| PairD::Central { p, side: Side::R };
        let t = d.pseudotriangulation(&[r(0), r(2), PairD::Diagonal { a: 0, b: 2 }]).unwrap();
        let s = distance_to_stars(&d, d.to_set(&t).unwrap()).unwrap();
        assert_eq!((s.left, s.right), (3, 1));
        let l = distance_to_stars(&d, d.left_star_set()).unwrap();
        assert_eq!((l.left, l.right), (0, 4));
    }

    #[test]
    fn many_left_pairs_block_right_pairs() {
        for n in 3..=5 {
            let d = TypeD::new(n).unwrap();
            let g = build_graph(&d, DEFAULT_VERTEX_CAP).unwrap();
            for i in 0..g.len() {
                if d.central_counts_set(g.vertex(i)).0 >= 3 {
                    for e in g.neighbors(i) {
                        assert!(!matches!(d.pair(e.added), PairD::Central { side: Side::R, .. }));
                    }
                }
            }
        }
    }

    #[test]
    fn routed_paths_exhaustive_small() {
        for n in 2..=4 {
            let d = TypeD::new(n).unwrap();
            let g = build_graph(&d, DEFAULT_VERTEX_CAP).unwrap();
            for s in 0..g.len() {
                let f = engine::distances(&g, s).unwrap();
                for t in 0..g.len() {
                    let p = star_routed_path(&d, g.vertex(s), g.vertex(t)).unwrap();
                    let idx: Vec<usize> = p.iter().map(|&v| g.index_of(v).unwrap()).collect();
                    assert!(g.is_path(&idx));
                    assert!(p.len() - 1 <= 2 * n - 2);
                    assert!(p.len() > f.distances[t] as usize);
                    assert_eq!((idx[0], *idx.last().unwrap()), (s, t));
                }
            }
        }
        let d = TypeD::new(4).unwrap();
        let p = star_routed_path(&d, d.left_star_set(), d.right_star_set()).unwrap();
        assert_eq!(p.len() - 1, 6);
    }

    #[test]
    fn diameter_small() {
        for (n, want) in [(3, 4), (4, 6)] {
            let c = verify_diameter_d(&TypeD::new(n).unwrap(), DEFAULT_VERTEX_CAP).unwrap();
            assert_eq!(c.bfs, want);
            assert!(c.holds());
        }
    }
}
