//! k-triangulations of a convex m-gon. Only k-relevant diagonals are stored;
//! the others belong to every k-triangulation and never flip.

use serde::Serialize;

use crate::engine::{self, FlipGraph, NlfpReport};
use crate::error::{input, Error, Result};
use crate::model::{Flip, FlipModel};
use crate::polygon::interleaved;
use crate::set::{ElementId, ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KDiagonal {
    pub a: u32,
    pub b: u32,
}

impl KDiagonal {
    pub fn label(self) -> String {
        format!("{}-{}", self.a, self.b)
    }

    pub fn crosses(self, other: KDiagonal) -> bool {
        interleaved(self.a, self.b, other.a, other.b)
    }
}

/// The multiassociahedron `Δ(m, k)`.
#[derive(Debug, Clone)]
pub struct MultiAssoc {
    m: u32,
    k: u32,
    diagonals: Vec<KDiagonal>,
    crossing: Vec<u128>,
    rank: usize,
}

/// Whether some `size` elements of `cand` pairwise cross.
fn has_crossing_clique(crossing: &[u128], cand: u128, size: u32) -> bool {
    if size == 0 {
        return true;
    }
    if cand.count_ones() < size {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        if has_crossing_clique(crossing, rest & crossing[v as usize], size - 1) {
            return true;
        }
    }
    false
}

impl MultiAssoc {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return input("k must be positive");
        }
        if m < 2 * k + 2 {
            return input(format!("need m >= 2k + 2, got m = {m}, k = {k}"));
        }
        let mut diagonals = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let len = b - a;
                if len > k && len < m - k {
                    diagonals.push(KDiagonal { a, b });
                }
            }
        }
        if diagonals.len() > MAX_ELEMENTS {
            return Err(Error::Resource {
                what: "k-relevant diagonals",
                requested: diagonals.len(),
                cap: MAX_ELEMENTS,
            });
        }
        let crossing = diagonals
            .iter()
            .map(|d| {
                diagonals
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| d.crosses(**e))
                    .fold(0u128, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(MultiAssoc {
            m,
            k,
            rank: (k * (m - 2 * k - 1)) as usize,
            diagonals,
            crossing,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn diagonals(&self) -> &[KDiagonal] {
        &self.diagonals
    }

    pub fn diagonal(&self, id: ElementId) -> KDiagonal {
        self.diagonals[id as usize]
    }

    pub fn id_of(&self, a: u32, b: u32) -> Result<ElementId> {
        let d = KDiagonal {
            a: a.min(b),
            b: a.max(b),
        };
        self.diagonals
            .binary_search(&d)
            .map(|i| i as ElementId)
            .map_err(|_| Error::Input(format!("{} is not a {}-relevant diagonal of the {}-gon", d.label(), self.k, self.m)))
    }

    /// No `k + 1` elements of `s` pairwise cross.
    pub fn is_k_crossing_free(&self, s: ElementSet) -> bool {
        !has_crossing_clique(&self.crossing, s.bits(), self.k + 1)
    }

    /// Whether `s ∪ {e}` stays k-crossing-free, assuming `s` is.
    fn can_add(&self, s: ElementSet, e: ElementId) -> bool {
        !has_crossing_clique(&self.crossing, s.bits() & self.crossing[e as usize], self.k)
    }

    fn is_maximal(&self, s: ElementSet) -> bool {
        (0..self.diagonals.len() as ElementId).all(|e| s.contains(e) || !self.can_add(s, e))
    }

    /// All k-triangulations by include/exclude backtracking over the
    /// diagonals, sorted canonically.
    pub fn enumerate_k(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let mut out = Vec::new();
        self.backtrack(0, ElementSet::EMPTY, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn backtrack(&self, next: usize, cur: ElementSet, out: &mut Vec<ElementSet>, cap: usize) -> Result<()> {
        let total = self.diagonals.len();
        if cur.len() + (total - next) < self.rank {
            return Ok(());
        }
        if next == total {
            if self.is_maximal(cur) {
                if cur.len() != self.rank {
                    return Err(Error::ModelConsistency(format!(
                        "maximal set {} has {} diagonals, expected {}",
                        self.format_set(cur),
                        cur.len(),
                        self.rank
                    )));
                }
                if out.len() >= cap {
                    return Err(Error::Resource {
                        what: "vertex count",
                        requested: out.len() + 1,
                        cap,
                    });
                }
                out.push(cur);
            }
            return Ok(());
        }
        let e = next as ElementId;
        if self.can_add(cur, e) {
            self.backtrack(next + 1, cur.with(e), out, cap)?;
        }
        self.backtrack(next + 1, cur, out, cap)
    }

    /// Exhaustive replacement scan; each removed diagonal must have exactly
    /// one replacement.
    pub fn flips_k(&self, t: ElementSet) -> Result<Vec<Flip>> {
        let mut out = Vec::with_capacity(t.len());
        for e in t {
            let rest = t.without(e);
            let mut partners = (0..self.diagonals.len() as ElementId)
                .filter(|&f| f != e && !t.contains(f) && self.can_add(rest, f));
            match (partners.next(), partners.next()) {
                (Some(f), None) => out.push(Flip {
                    removed: e,
                    added: f,
                    result: rest.with(f),
                }),
                _ => {
                    return Err(Error::ModelConsistency(format!(
                        "diagonal {} of {} has no unique flip",
                        self.diagonal(e).label(),
                        self.format_set(t)
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|e| self.diagonal(e).label()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Lower bound `(k + 1/2) m - (k + 1)^2`, stated for `m >= 4k + 2`.
    pub fn diameter_lower_bound(&self) -> Option<u32> {
        (self.m >= 4 * self.k + 2).then(|| {
            let twice = (2 * self.k + 1) * self.m;
            twice.div_ceil(2) - (self.k + 1) * (self.k + 1)
        })
    }
}

impl FlipModel for MultiAssoc {
    fn key(&self) -> String {
        format!("K-{}-{}", self.m, self.k)
    }

    fn family(&self) -> &'static str {
        "multiassoc"
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn element_labels(&self) -> Vec<String> {
        self.diagonals.iter().map(|d| d.label()).collect()
    }

    fn seed(&self) -> ElementSet {
        (0..self.diagonals.len() as ElementId).fold(ElementSet::EMPTY, |s, e| {
            if self.can_add(s, e) {
                s.with(e)
            } else {
                s
            }
        })
    }

    fn flips(&self, v: ElementSet) -> Result<Vec<Flip>> {
        self.flips_k(v)
    }

    fn enumerate(&self, cap: usize) -> Option<Result<Vec<ElementSet>>> {
        Some(self.enumerate_k(cap))
    }

    fn is_vertex(&self, v: ElementSet) -> bool {
        v.len() == self.rank
            && v.iter().all(|e| (e as usize) < self.diagonals.len())
            && self.is_k_crossing_free(v)
            && self.is_maximal(v)
    }
}

/// A pair of k-triangulations on which some geodesic flips a common diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiassocWitness {
    pub source: ElementSet,
    pub target: ElementSet,
    pub distance: u32,
    /// Labels of the diagonals in the source but not the target.
    pub difference: Vec<String>,
    /// Every flip of a diagonal in the difference adds a diagonal outside
    /// the target.
    pub first_flip_obstructed: bool,
    pub common_flipped: String,
    pub geodesic: Vec<ElementSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub model: String,
    pub vertices: usize,
    pub nlfp: NlfpReport,
    pub witness: Option<MultiassocWitness>,
}

/// Whether every flip of `g.vertex(s)` removing an element outside `t` adds
/// an element outside `t`.
pub fn first_flip_obstructed(g: &FlipGraph, s: usize, t: ElementSet) -> bool {
    g.neighbors(s)
        .iter()
        .filter(|e| !t.contains(e.removed))
        .all(|e| !t.contains(e.added))
}

/// Runs the NLFP sweep and picks a witness among the violating pairs,
/// preferring the smallest distance, then an obstructed first flip, then the
/// smallest difference, then canonical order.
pub fn counterexample_search_k(model: &MultiAssoc, vertex_cap: usize, pair_cap: usize) -> Result<CounterexampleReport> {
    let g = engine::build_graph(model, vertex_cap)?;
    let nlfp = engine::nlfp_check(&g, pair_cap)?;
    let mut best: Option<(u32, bool, usize, usize, usize)> = None;
    for (s, t) in nlfp.violating_pairs() {
        let d = engine::distances(&g, t)?.distances[s];
        let (vs, vt) = (g.vertex(s), g.vertex(t));
        let key = (
            d,
            !first_flip_obstructed(&g, s, vt),
            vs.difference(vt).len(),
            s,
            t,
        );
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let witness = match best {
        None => None,
        Some((.., s, t)) => {
            let v = nlfp
                .violations
                .iter()
                .find(|v| v.source == s && v.target == t)
                .expect("violating pair has a violation");
            let path = engine::geodesic_through(&g, s, v.witness, t)?;
            let (vs, vt) = (g.vertex(s), g.vertex(t));
            Some(MultiassocWitness {
                source: vs,
                target: vt,
                distance: (path.len() - 1) as u32,
                difference: vs.difference(vt).iter().map(|e| model.diagonal(e).label()).collect(),
                first_flip_obstructed: first_flip_obstructed(&g, s, vt),
                common_flipped: model.diagonal(v.missing).label(),
                geodesic: path.iter().map(|&i| g.vertex(i)).collect(),
            })
        }
    };
    Ok(CounterexampleReport {
        model: model.key(),
        vertices: g.len(),
        nlfp,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_graph, DEFAULT_PAIR_CAP, DEFAULT_VERTEX_CAP};

    #[test]
    fn relevant_diagonals() {
        assert_eq!(MultiAssoc::new(8, 2).unwrap().diagonals().len(), 12);
        assert_eq!(MultiAssoc::new(10, 2).unwrap().diagonals().len(), 25);
        assert_eq!(MultiAssoc::new(6, 1).unwrap().diagonals().len(), 9);
        assert!(MultiAssoc::new(5, 2).is_err());
        assert!(MultiAssoc::new(6, 0).is_err());
    }

    #[test]
    fn crossing_free() {
        let k = MultiAssoc::new(6, 2).unwrap();
        let longs = ElementSet::from_ids([
            k.id_of(0, 3).unwrap(),
            k.id_of(1, 4).unwrap(),
            k.id_of(2, 5).unwrap(),
        ]);
        assert!(!k.is_k_crossing_free(longs));
        assert!(k.is_k_crossing_free(longs.without(k.id_of(0, 3).unwrap())));
    }

    fn catalan(n: u32) -> i128 {
        (0..n).fold(1i128, |c, i| c * 2 * (2 * i as i128 + 1) / (i as i128 + 2))
    }

    /// `det [C(m - i - j)]_{i,j = 1..k}` by Bareiss elimination.
    fn hankel_count(m: u32, k: u32) -> i128 {
        let k = k as usize;
        let mut a: Vec<Vec<i128>> = (1..=k)
            .map(|i| (1..=k).map(|j| catalan(m - i as u32 - j as u32)).collect())
            .collect();
        let mut prev = 1i128;
        for p in 0..k - 1 {
            for i in p + 1..k {
                for j in p + 1..k {
                    a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
                }
            }
            prev = a[p][p];
        }
        a[k - 1][k - 1]
    }

    #[test]
    fn counts_match_hankel_determinants() {
        assert_eq!(hankel_count(8, 2), 84);
        assert_eq!(hankel_count(6, 2), 3);
        for (m, k) in [(6, 1), (7, 1), (6, 2), (7, 2), (8, 2), (9, 2), (8, 3), (9, 3)] {
            let mk = MultiAssoc::new(m, k).unwrap();
            let all = mk.enumerate_k(10_000).unwrap();
            assert_eq!(all.len() as i128, hankel_count(m, k), "({m},{k})");
            let g = build_graph(&mk, 10_000).unwrap();
            assert_eq!(g.vertices(), &all[..]);
            assert!((0..g.len()).all(|i| g.degree(i) == mk.rank()));
        }
    }

    #[test]
    fn seed_is_a_vertex() {
        for (m, k) in [(6, 1), (8, 2), (9, 2), (10, 3)] {
            let mk = MultiAssoc::new(m, k).unwrap();
            assert!(mk.is_vertex(mk.seed()));
        }
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(MultiAssoc::new(10, 2).unwrap().diameter_lower_bound(), Some(16));
        assert_eq!(MultiAssoc::new(8, 2).unwrap().diameter_lower_bound(), None);
    }

    #[test]
    fn octagon_counterexample() {
        let mk = MultiAssoc::new(8, 2).unwrap();
        let r = counterexample_search_k(&mk, DEFAULT_VERTEX_CAP, DEFAULT_PAIR_CAP).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.distance, 4);
        assert_eq!(w.difference.len(), 3);
        assert!(w.first_flip_obstructed);
    }
}
