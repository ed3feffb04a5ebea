//! The contract every flip model satisfies, and the pairwise-compatibility
//! complex that backs the models whose faces are cliques of a compatibility
//! relation (types A, B/C, D and graph associahedra).

use crate::error::{Error, Result};
use crate::set::{ElementId, ElementSet, MAX_ELEMENTS};

/// One flip out of a vertex: `removed` is exchanged for `added`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flip {
    pub removed: ElementId,
    pub added: ElementId,
    pub result: ElementSet,
}

/// A combinatorial model whose vertices are canonical element sets and whose
/// edges are flips. The graph engine is generic over this trait.
pub trait FlipModel: Sync {
    /// Short stable identifier, e.g. `A-4`, `D-3`, `K-8-2`, `G-star-5`.
    fn key(&self) -> String;

    /// Family name used in exports (`A`, `B`, `D`, `multiassoc`, `graphassoc`).
    fn family(&self) -> &'static str;

    /// Number of elements in every vertex.
    fn rank(&self) -> usize;

    /// Labels of the element universe, indexed by element id.
    fn element_labels(&self) -> Vec<String>;

    fn universe_size(&self) -> usize {
        self.element_labels().len()
    }

    fn seed(&self) -> ElementSet;

    /// All flips out of `v`, in increasing order of the removed element.
    fn flips(&self, v: ElementSet) -> Result<Vec<Flip>>;

    /// Independent enumeration of all vertices, if the model provides one.
    fn enumerate(&self, _cap: usize) -> Option<Result<Vec<ElementSet>>> {
        None
    }

    /// Whether `v` is a vertex of the model.
    fn is_vertex(&self, v: ElementSet) -> bool;
}

/// Flag simplicial complex given by a symmetric compatibility relation on a
/// universe of at most [`MAX_ELEMENTS`] elements. Facets are maximal cliques.
#[derive(Debug, Clone)]
pub struct CompatComplex {
    rank: usize,
    masks: Vec<u128>,
}

impl CompatComplex {
    /// Builds the complex from a predicate evaluated on every unordered pair.
    pub fn from_fn<F>(universe: usize, rank: usize, mut compatible: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<bool>,
    {
        if universe > MAX_ELEMENTS {
            return Err(Error::Resource {
                what: "element universe",
                requested: universe,
                cap: MAX_ELEMENTS,
            });
        }
        let mut masks = vec![0u128; universe];
        for i in 0..universe {
            for j in i + 1..universe {
                if compatible(i, j)? {
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                }
            }
        }
        Ok(CompatComplex { rank, masks })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn universe(&self) -> usize {
        self.masks.len()
    }

    pub fn compatible(&self, a: ElementId, b: ElementId) -> bool {
        self.masks[a as usize] >> b & 1 == 1
    }

    /// Elements compatible with every element of `s` (and not in `s`).
    pub fn addable(&self, s: ElementSet) -> ElementSet {
        let full = if self.universe() == 128 {
            !0u128
        } else {
            (1u128 << self.universe()) - 1
        };
        let common = s.iter().fold(full, |acc, e| acc & self.masks[e as usize]);
        ElementSet::from_bits(common & !s.bits())
    }

    pub fn is_face(&self, s: ElementSet) -> bool {
        s.iter().all(|e| {
            (e as usize) < self.universe()
                && s.without(e).bits() & !self.masks[e as usize] == 0
        })
    }

    /// Maximal face. Also checks the cardinality equals the rank.
    pub fn is_facet(&self, s: ElementSet) -> bool {
        s.len() == self.rank && self.is_face(s) && self.addable(s).is_empty()
    }

    /// Exhaustive flip scan: for every element of `v`, the unique other
    /// element completing `v` minus that element to a facet.
    pub fn flips(&self, v: ElementSet) -> Result<Vec<Flip>> {
        let mut out = Vec::with_capacity(v.len());
        for e in v {
            let rest = v.without(e);
            let cands = self.addable(rest).without(e);
            match cands.len() {
                1 => {
                    let f = cands.first().unwrap();
                    out.push(Flip {
                        removed: e,
                        added: f,
                        result: rest.with(f),
                    });
                }
                k => {
                    return Err(Error::ModelConsistency(format!(
                        "element {e} of {v:?} has {k} flip partners (expected exactly 1)"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// All maximal cliques of the compatibility graph (Bron–Kerbosch with
    /// pivoting), sorted canonically. Fails if a maximal clique does not have
    /// exactly `rank` elements or the count exceeds `cap`.
    pub fn facets(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let n = self.universe();
        let all = if n == 128 { !0u128 } else { (1u128 << n) - 1 };
        let mut out = Vec::new();
        self.bron_kerbosch(0, all, 0, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn bron_kerbosch(
        &self,
        r: u128,
        mut p: u128,
        mut x: u128,
        out: &mut Vec<ElementSet>,
        cap: usize,
    ) -> Result<()> {
        if p == 0 {
            if x == 0 {
                let s = ElementSet::from_bits(r);
                if s.len() != self.rank {
                    return Err(Error::ModelConsistency(format!(
                        "maximal face {s:?} has {} elements, rank is {}",
                        s.len(),
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
                out.push(s);
            }
            return Ok(());
        }
        let pivot = ElementSet::from_bits(p | x)
            .iter()
            .max_by_key(|&u| (p & self.masks[u as usize]).count_ones())
            .unwrap();
        let cand = p & !self.masks[pivot as usize];
        for v in ElementSet::from_bits(cand) {
            let nv = self.masks[v as usize];
            self.bron_kerbosch(r | 1 << v, p & nv, x & nv, out, cap)?;
            p &= !(1 << v);
            x |= 1 << v;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangulations of a pentagon.
    fn pentagon() -> CompatComplex {
        // diagonals 0:{0,2} 1:{0,3} 2:{1,3} 3:{1,4} 4:{2,4}
        let d = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)];
        CompatComplex::from_fn(5, 2, |i, j| {
            let ((a, b), (c, e)) = (d[i], d[j]);
            let cross = (a < c && c < b && b < e) || (c < a && a < e && e < b);
            Ok(!cross)
        })
        .unwrap()
    }

    #[test]
    fn pentagon_facets_and_flips() {
        let c = pentagon();
        let f = c.facets(100).unwrap();
        assert_eq!(f.len(), 5);
        for v in &f {
            assert!(c.is_facet(*v));
            let flips = c.flips(*v).unwrap();
            assert_eq!(flips.len(), 2);
            for fl in flips {
                assert!(c.is_facet(fl.result));
            }
        }
    }

    #[test]
    fn facet_cap_is_enforced() {
        let c = pentagon();
        assert!(matches!(c.facets(3), Err(Error::Resource { .. })));
    }

    #[test]
    fn non_pure_complex_is_rejected() {
        // path a-b-c as compatibility graph: facets {a,b},{b,c}; claim rank 3
        let c = CompatComplex::from_fn(3, 3, |i, j| Ok(i + 1 == j)).unwrap();
        assert!(matches!(c.facets(10), Err(Error::ModelConsistency(_))));
    }
}
