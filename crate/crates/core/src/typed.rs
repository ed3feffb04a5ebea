//! Type `D_n`: centrally symmetric pseudotriangulations of a regular `2n`-gon
//! with a small disk at its center.
//!
//! Vertices of the polygon are `0..2n` counterclockwise, `v̄ = v + n mod 2n`.
//! Chords are the internal non-long diagonals plus, for every vertex `v`, the
//! two segments `vL`, `vR` from `v` tangent to the disk. Everything outside
//! crossing tests works with centrally symmetric pairs of chords.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::model::{CompatComplex, Flip, FlipModel};
use crate::polygon::{interleaved, is_boundary, parse_pair};
use crate::set::{ElementId, ElementSet};

/// Largest rank accepted by [`TypeD::enumerate_d`] unless raised explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ChordD {
    /// Internal, non-long diagonal with `a < b`.
    Diagonal { a: u32, b: u32 },
    /// Segment from `v` tangent to the disk on side `side`, as seen from `v`
    /// looking toward the center.
    Central { v: u32, side: Side },
}

impl ChordD {
    pub fn diagonal(x: u32, y: u32, n: u32) -> Result<Self> {
        let c = ChordD::Diagonal {
            a: x.min(y),
            b: x.max(y),
        };
        c.validate(n)?;
        Ok(c)
    }

    pub fn central(v: u32, side: Side, n: u32) -> Result<Self> {
        let c = ChordD::Central { v, side };
        c.validate(n)?;
        Ok(c)
    }

    pub fn validate(self, n: u32) -> Result<()> {
        let m = 2 * n;
        match self {
            ChordD::Diagonal { a, b } => {
                if a >= b || b >= m {
                    return input(format!("diagonal {a}-{b} out of range for the {m}-gon"));
                }
                if is_boundary(a, b, m) {
                    return input(format!("{a}-{b} is a boundary edge of the {m}-gon"));
                }
                if b - a == n {
                    return input(format!("{a}-{b} is a long diagonal"));
                }
                Ok(())
            }
            ChordD::Central { v, .. } => {
                if v >= m {
                    return input(format!("vertex {v} out of range for the {m}-gon"));
                }
                Ok(())
            }
        }
    }

    /// Image under the central symmetry.
    pub fn bar(self, n: u32) -> ChordD {
        let m = 2 * n;
        match self {
            ChordD::Diagonal { a, b } => {
                let (x, y) = ((a + n) % m, (b + n) % m);
                ChordD::Diagonal {
                    a: x.min(y),
                    b: x.max(y),
                }
            }
            ChordD::Central { v, side } => ChordD::Central {
                v: (v + n) % m,
                side,
            },
        }
    }

    /// Text form `d:a-b` / `c:pL`, with `~` marking a barred vertex.
    pub fn label(self, n: u32) -> String {
        match self {
            ChordD::Diagonal { a, b } => format!("d:{a}-{b}"),
            ChordD::Central { v, side } if v >= n => format!("c:{}~{side}", v - n),
            ChordD::Central { v, side } => format!("c:{v}{side}"),
        }
    }

    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("d:") {
            let (x, y) = parse_pair(rest)?;
            return ChordD::diagonal(x, y, n);
        }
        if let Some(rest) = s.strip_prefix("c:") {
            let (body, side) = if let Some(b) = rest.strip_suffix('L') {
                (b, Side::L)
            } else if let Some(b) = rest.strip_suffix('R') {
                (b, Side::R)
            } else {
                return input(format!("central chord `{s}` must end in L or R"));
            };
            let (digits, barred) = match body.strip_suffix('~') {
                Some(d) => (d, true),
                None => (body, false),
            };
            let p: u32 = digits
                .parse()
                .map_err(|_| Error::Input(format!("bad vertex in `{s}`")))?;
            let v = if barred {
                if p >= n {
                    return input(format!("barred vertex {p}~ needs {p} < {n}"));
                }
                p + n
            } else {
                p
            };
            return ChordD::central(v, side, n);
        }
        input(format!("chord `{s}` must start with d: or c:"))
    }
}

/// Diagonal `{x,y}` against central chord from `v` (either side): writing
/// `{x,y} = {v+i, v+n+j}` with `i, j` in `1..n`, they cross iff `i < j`.
fn diagonal_crosses_central(x: u32, y: u32, v: u32, n: u32) -> bool {
    let m = 2 * n;
    let (ox, oy) = ((x + m - v) % m, (y + m - v) % m);
    let near = |o: u32| (1..n).contains(&o);
    let far = |o: u32| (n + 1..m).contains(&o);
    let (i, j) = if near(ox) && far(oy) {
        (ox, oy - n)
    } else if near(oy) && far(ox) {
        (oy, ox - n)
    } else {
        return false;
    };
    i < j
}

/// Distance from the center to the closest non-long diagonal of the regular
/// `2n`-gon of circumradius 1.
pub fn nearest_diagonal_distance(n: u32) -> f64 {
    (PI / (2.0 * n as f64)).sin()
}

pub fn default_epsilon(n: u32) -> f64 {
    0.01 * nearest_diagonal_distance(n)
}

type Pt = (f64, f64);

fn polygon_point(v: u32, n: u32) -> Pt {
    let t = PI * v as f64 / n as f64;
    (t.cos(), t.sin())
}

/// Endpoints of a chord realised with disk radius `eps`.
pub fn chord_segment(c: ChordD, n: u32, eps: f64) -> (Pt, Pt) {
    match c {
        ChordD::Diagonal { a, b } => (polygon_point(a, n), polygon_point(b, n)),
        ChordD::Central { v, side } => {
            let u = polygon_point(v, n);
            let perp = (-u.1, u.0);
            let h = eps * (1.0 - eps * eps).sqrt();
            // Facing the center (direction -u), the left hand points to -perp.
            let s = match side {
                Side::L => -1.0,
                Side::R => 1.0,
            };
            let t = (eps * eps * u.0 + s * h * perp.0, eps * eps * u.1 + s * h * perp.1);
            (u, t)
        }
    }
}

fn orient(p: Pt, q: Pt, r: Pt) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

fn segments_cross(s: (Pt, Pt), t: (Pt, Pt)) -> bool {
    const TOL: f64 = 1e-14;
    let sign = |x: f64| {
        if x > TOL {
            1
        } else if x < -TOL {
            -1
        } else {
            0
        }
    };
    let o1 = sign(orient(s.0, s.1, t.0));
    let o2 = sign(orient(s.0, s.1, t.1));
    let o3 = sign(orient(t.0, t.1, s.0));
    let o4 = sign(orient(t.0, t.1, s.1));
    o1 * o2 < 0 && o3 * o4 < 0
}

fn crossing_at(c1: ChordD, c2: ChordD, n: u32, eps: f64) -> bool {
    if c1 == c2 {
        return false;
    }
    segments_cross(chord_segment(c1, n, eps), chord_segment(c2, n, eps))
}

/// Ground-truth crossing test on explicit coordinates: polygon on the unit
/// circle, central chords as exact tangent segments to the circle of radius
/// `eps`. The answer must agree at `eps` and `eps / 2`.
pub fn geometric_crossing_oracle(c1: ChordD, c2: ChordD, n: u32, eps: f64) -> Result<bool> {
    c1.validate(n)?;
    c2.validate(n)?;
    let bound = nearest_diagonal_distance(n);
    if !(eps > 0.0 && eps < bound) {
        return input(format!("disk radius {eps} outside (0, {bound})"));
    }
    let a = crossing_at(c1, c2, n, eps);
    let b = crossing_at(c1, c2, n, eps / 2.0);
    if a != b {
        return Err(Error::Degenerate(format!(
            "{} vs {} changes answer between radius {eps} and {}",
            c1.label(n),
            c2.label(n),
            eps / 2.0
        )));
    }
    Ok(a)
}

/// Chord crossing in `Conf(D_n)`: interleaving for two diagonals, the `i < j`
/// rule for a diagonal against a central chord, and the geometric oracle for
/// two central chords.
pub fn chord_crosses_d(c1: ChordD, c2: ChordD, n: u32) -> Result<bool> {
    c1.validate(n)?;
    c2.validate(n)?;
    Ok(match (c1, c2) {
        (ChordD::Diagonal { a, b }, ChordD::Diagonal { a: c, b: d }) => interleaved(a, b, c, d),
        (ChordD::Diagonal { a, b }, ChordD::Central { v, .. })
        | (ChordD::Central { v, .. }, ChordD::Diagonal { a, b }) => {
            diagonal_crosses_central(a, b, v, n)
        }
        (ChordD::Central { v: v1, .. }, ChordD::Central { v: v2, .. }) => {
            if v1 == v2 {
                false
            } else {
                geometric_crossing_oracle(c1, c2, n, default_epsilon(n))?
            }
        }
    })
}

/// A centrally symmetric pair `{χ, χ̄}` keyed by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairD {
    /// Lexicographically smaller of the two diagonals.
    Diagonal { a: u32, b: u32 },
    /// Central pair `{pS, p̄S}` with `p < n`.
    Central { p: u32, side: Side },
}

impl PairD {
    pub fn of_chord(c: ChordD, n: u32) -> PairD {
        match c {
            ChordD::Diagonal { .. } => match c.min(c.bar(n)) {
                ChordD::Diagonal { a, b } => PairD::Diagonal { a, b },
                _ => unreachable!(),
            },
            ChordD::Central { v, side } => PairD::Central { p: v % n, side },
        }
    }

    pub fn chords(self, n: u32) -> [ChordD; 2] {
        let c = match self {
            PairD::Diagonal { a, b } => ChordD::Diagonal { a, b },
            PairD::Central { p, side } => ChordD::Central { v: p, side },
        };
        [c, c.bar(n)]
    }

    pub fn is_central(self) -> bool {
        matches!(self, PairD::Central { .. })
    }

    pub fn label(self) -> String {
        match self {
            PairD::Diagonal { a, b } => format!("d:{a}-{b}"),
            PairD::Central { p, side } => format!("c:{p}{side}"),
        }
    }

    pub fn parse(s: &str, n: u32) -> Result<Self> {
        Ok(PairD::of_chord(ChordD::parse(s, n)?, n))
    }
}

impl fmt::Display for PairD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Compatibility of two distinct pairs: no chord of one crosses a chord of
/// the other.
pub fn pair_compatible_d(p1: PairD, p2: PairD, n: u32) -> Result<bool> {
    if p1 == p2 {
        return input(format!("pair {p1} compared with itself"));
    }
    for c1 in p1.chords(n) {
        for c2 in p2.chords(n) {
            if chord_crosses_d(c1, c2, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudotriangulationD {
    pub pairs: Vec<PairD>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipD {
    pub removed: PairD,
    pub added: PairD,
    pub result: PseudotriangulationD,
}

/// The type `D_n` model over its universe of `n²` pairs.
#[derive(Debug, Clone)]
pub struct TypeD {
    n: u32,
    pairs: Vec<PairD>,
    complex: CompatComplex,
}

impl TypeD {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return input("type D needs rank n >= 2");
        }
        let n = n as u32;
        let m = 2 * n;
        let mut pairs = Vec::new();
        for a in 0..m {
            for b in a + 2..m {
                if let Ok(c) = ChordD::diagonal(a, b, n) {
                    pairs.push(PairD::of_chord(c, n));
                }
            }
        }
        for p in 0..n {
            pairs.push(PairD::Central { p, side: Side::L });
            pairs.push(PairD::Central { p, side: Side::R });
        }
        pairs.sort();
        pairs.dedup();
        for p in &pairs {
            let [c, cb] = p.chords(n);
            if chord_crosses_d(c, cb, n)? {
                return Err(Error::Internal(format!("the two chords of {p} cross")));
            }
        }
        let complex = CompatComplex::from_fn(pairs.len(), n as usize, |i, j| {
            pair_compatible_d(pairs[i], pairs[j], n)
        })?;
        Ok(TypeD { n, pairs, complex })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[PairD] {
        &self.pairs
    }

    pub fn complex(&self) -> &CompatComplex {
        &self.complex
    }

    pub fn bar(&self, v: u32) -> u32 {
        (v + self.n) % (2 * self.n)
    }

    pub fn pair(&self, id: ElementId) -> PairD {
        self.pairs[id as usize]
    }

    pub fn id_of(&self, p: PairD) -> Result<ElementId> {
        self.pairs
            .binary_search(&p)
            .map(|i| i as ElementId)
            .map_err(|_| Error::Input(format!("{p} is not a pair of Conf(D_{})", self.n)))
    }

    /// Id of the pair containing `c`.
    pub fn id_of_chord(&self, c: ChordD) -> Result<ElementId> {
        c.validate(self.n)?;
        self.id_of(PairD::of_chord(c, self.n))
    }

    pub fn central_id(&self, p: u32, side: Side) -> ElementId {
        self.id_of(PairD::Central {
            p: p % self.n,
            side,
        })
        .expect("central pairs exist for every index")
    }

    pub fn to_set(&self, t: &PseudotriangulationD) -> Result<ElementSet> {
        t.pairs.iter().map(|&p| self.id_of(p)).collect()
    }

    pub fn from_set(&self, s: ElementSet) -> PseudotriangulationD {
        PseudotriangulationD {
            pairs: s.iter().map(|i| self.pair(i)).collect(),
        }
    }

    /// All `2n` chords of a vertex, sorted.
    pub fn chords_of(&self, s: ElementSet) -> Vec<ChordD> {
        let mut v: Vec<ChordD> = s
            .iter()
            .flat_map(|i| self.pair(i).chords(self.n))
            .collect();
        v.sort();
        v
    }

    /// `(ℓ, r)`: numbers of left and right central pairs.
    pub fn central_counts_set(&self, s: ElementSet) -> (usize, usize) {
        s.iter().fold((0, 0), |(l, r), i| match self.pair(i) {
            PairD::Central { side: Side::L, .. } => (l + 1, r),
            PairD::Central { side: Side::R, .. } => (l, r + 1),
            _ => (l, r),
        })
    }

    pub fn central_counts(&self, t: &PseudotriangulationD) -> (usize, usize) {
        t.pairs.iter().fold((0, 0), |(l, r), p| match p {
            PairD::Central { side: Side::L, .. } => (l + 1, r),
            PairD::Central { side: Side::R, .. } => (l, r + 1),
            _ => (l, r),
        })
    }

    pub(crate) fn check_vertex(&self, s: ElementSet) -> Result<()> {
        if !self.complex.is_facet(s) {
            return Err(Error::ModelConsistency(format!(
                "{} is not a centrally symmetric pseudotriangulation",
                self.format_set(s)
            )));
        }
        let (l, r) = self.central_counts_set(s);
        if l + r == 0 || (l >= 1 && r >= 1 && (l, r) != (1, 1)) {
            return Err(Error::Internal(format!(
                "{} has central counts ({l}, {r})",
                self.format_set(s)
            )));
        }
        Ok(())
    }

    pub fn pseudotriangulation(&self, pairs: &[PairD]) -> Result<PseudotriangulationD> {
        let mut ps = pairs.to_vec();
        ps.sort();
        ps.dedup();
        let t = PseudotriangulationD { pairs: ps };
        self.check_vertex(self.to_set(&t)?)?;
        Ok(t)
    }

    fn star_set(&self, side: Side) -> ElementSet {
        (0..self.n).map(|p| self.central_id(p, side)).collect()
    }

    pub fn left_star_set(&self) -> ElementSet {
        self.star_set(Side::L)
    }

    pub fn right_star_set(&self) -> ElementSet {
        self.star_set(Side::R)
    }

    /// All left central chords.
    pub fn left_star(&self) -> Result<PseudotriangulationD> {
        let s = self.left_star_set();
        self.check_vertex(s)?;
        Ok(self.from_set(s))
    }

    /// All right central chords.
    pub fn right_star(&self) -> Result<PseudotriangulationD> {
        let s = self.right_star_set();
        self.check_vertex(s)?;
        Ok(self.from_set(s))
    }

    /// One flip per pair, each partner unique among the `n²` pairs.
    pub fn flips_d(&self, t: &PseudotriangulationD) -> Result<Vec<FlipD>> {
        let s = self.to_set(t)?;
        self.check_vertex(s)?;
        Ok(self
            .complex
            .flips(s)?
            .into_iter()
            .map(|f| FlipD {
                removed: self.pair(f.removed),
                added: self.pair(f.added),
                result: self.from_set(f.result),
            })
            .collect())
    }

    /// Flip of the element `removed` in `s`.
    pub fn flip_set(&self, s: ElementSet, removed: ElementId) -> Result<Flip> {
        if !s.contains(removed) {
            return input(format!("{} is not in {}", self.pair(removed), self.format_set(s)));
        }
        self.complex
            .flips(s)?
            .into_iter()
            .find(|f| f.removed == removed)
            .ok_or_else(|| Error::Internal("flip list misses an element".into()))
    }

    /// All pseudotriangulations by backtracking over maximal compatible sets.
    pub fn enumerate_d(&self, max_rank: usize) -> Result<Vec<PseudotriangulationD>> {
        if self.n as usize > max_rank {
            return Err(Error::Resource {
                what: "type D enumeration rank",
                requested: self.n as usize,
                cap: max_rank,
            });
        }
        Ok(self
            .complex
            .facets(usize::MAX)?
            .into_iter()
            .map(|s| self.from_set(s))
            .collect())
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|i| self.pair(i).label()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FlipModel for TypeD {
    fn key(&self) -> String {
        format!("D-{}", self.n)
    }
    fn family(&self) -> &'static str {
        "D"
    }
    fn rank(&self) -> usize {
        self.n as usize
    }
    fn element_labels(&self) -> Vec<String> {
        self.pairs.iter().map(|p| p.label()).collect()
    }
    fn universe_size(&self) -> usize {
        self.pairs.len()
    }
    fn seed(&self) -> ElementSet {
        self.left_star_set()
    }
    fn flips(&self, v: ElementSet) -> Result<Vec<Flip>> {
        self.complex.flips(v)
    }
    fn enumerate(&self, cap: usize) -> Option<Result<Vec<ElementSet>>> {
        Some(self.complex.facets(cap))
    }
    fn is_vertex(&self, v: ElementSet) -> bool {
        self.check_vertex(v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_chords(n: u32) -> Vec<ChordD> {
        let m = 2 * n;
        let mut v = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if let Ok(c) = ChordD::diagonal(a, b, n) {
                    v.push(c);
                }
            }
            v.push(ChordD::Central { v: a, side: Side::L });
            v.push(ChordD::Central { v: a, side: Side::R });
        }
        v
    }

    #[test]
    fn crossing_examples() {
        let d = |a, b| ChordD::diagonal(a, b, 3).unwrap();
        let c = |v, s| ChordD::central(v, s, 3).unwrap();
        assert!(chord_crosses_d(d(1, 5), c(0, Side::L), 3).unwrap());
        assert!(!chord_crosses_d(c(0, Side::L), c(0, Side::R), 3).unwrap());
        for p in 0..6 {
            for q in 0..6 {
                assert!(!chord_crosses_d(c(p, Side::L), c(q, Side::L), 3).unwrap());
                assert!(!chord_crosses_d(c(p, Side::R), c(q, Side::R), 3).unwrap());
            }
        }
        let eps = 0.01;
        assert!(!geometric_crossing_oracle(d(2, 4), c(0, Side::L), 3, eps).unwrap());
        assert!(geometric_crossing_oracle(d(0, 2), c(1, Side::L), 3, eps).unwrap());
        for ch in all_chords(3) {
            assert!(!geometric_crossing_oracle(ch, ch, 3, eps).unwrap());
        }
    }

    #[test]
    fn oracle_rejects_bad_radius() {
        let c = ChordD::Central { v: 0, side: Side::L };
        assert!(geometric_crossing_oracle(c, c, 3, 0.0).is_err());
        assert!(geometric_crossing_oracle(c, c, 3, 0.6).is_err());
        assert!(ChordD::diagonal(0, 3, 3).is_err());
        assert!(ChordD::diagonal(0, 1, 3).is_err());
        assert!(ChordD::central(6, Side::L, 3).is_err());
    }

    #[test]
    fn combinatorial_rules_match_oracle() {
        for n in 2..=6u32 {
            let chords = all_chords(n);
            for eps in [0.01, 0.005] {
                for &c1 in &chords {
                    for &c2 in &chords {
                        assert_eq!(
                            chord_crosses_d(c1, c2, n).unwrap(),
                            geometric_crossing_oracle(c1, c2, n, eps).unwrap(),
                            "n={n} {} vs {}",
                            c1.label(n),
                            c2.label(n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pair_level_central_rules() {
        let n = 3;
        let l = |p| PairD::Central { p, side: Side::L };
        let r = |p| PairD::Central { p, side: Side::R };
        assert!(pair_compatible_d(l(0), r(0), n).unwrap());
        assert!(!pair_compatible_d(l(0), r(1), n).unwrap());
        assert!(pair_compatible_d(l(0), l(2), n).unwrap());
        for n in 2..=7u32 {
            for p in 0..n {
                for q in 0..n {
                    if p != q {
                        assert!(pair_compatible_d(l(p), l(q), n).unwrap());
                        assert!(pair_compatible_d(r(p), r(q), n).unwrap());
                    }
                    assert_eq!(pair_compatible_d(l(p), r(q), n).unwrap(), p == q);
                }
            }
        }
    }

    #[test]
    fn universe_has_n_squared_pairs() {
        for n in 2..=9 {
            let d = TypeD::new(n).unwrap();
            assert_eq!(d.pairs().len(), n * n);
            let centrals = d.pairs().iter().filter(|p| p.is_central()).count();
            assert_eq!(centrals, 2 * n);
        }
    }

    #[test]
    fn stars() {
        let d = TypeD::new(3).unwrap();
        let l = d.left_star().unwrap();
        let r = d.right_star().unwrap();
        assert_eq!(
            l.pairs,
            (0..3).map(|p| PairD::Central { p, side: Side::L }).collect::<Vec<_>>()
        );
        assert_eq!(d.central_counts(&l), (3, 0));
        assert!(l.pairs.iter().all(|p| !r.pairs.contains(p)));
    }

    #[test]
    fn flip_of_left_central_gives_fan_diagonal() {
        let d = TypeD::new(3).unwrap();
        let flips = d.flips_d(&d.left_star().unwrap()).unwrap();
        assert_eq!(flips.len(), 3);
        let f = flips
            .iter()
            .find(|f| f.removed == PairD::Central { p: 1, side: Side::L })
            .unwrap();
        assert_eq!(f.added, PairD::Diagonal { a: 0, b: 2 });
        assert_eq!(PairD::Diagonal { a: 0, b: 2 }.chords(3)[1], ChordD::Diagonal { a: 3, b: 5 });
    }

    #[test]
    fn hand_built_d3_fixture() {
        // Right central pairs at 0 and 2 completed by a diagonal pair.
        let d = TypeD::new(3).unwrap();
        let r0 = PairD::Central { p: 0, side: Side::R };
        let r2 = PairD::Central { p: 2, side: Side::R };
        let completions: Vec<_> = d
            .enumerate_d(DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .into_iter()
            .filter(|t| t.pairs.contains(&r0) && t.pairs.contains(&r2))
            .filter(|t| d.central_counts(t) == (0, 2))
            .collect();
        assert_eq!(completions.len(), 1);
        for t in &completions {
            assert_eq!(d.central_counts(t), (0, 2));
            let flipped = d
                .flips_d(t)
                .unwrap()
                .into_iter()
                .find(|f| f.removed == r2)
                .unwrap();
            assert!(flipped.result.pairs.contains(&r0));
            assert!(!flipped.result.pairs.contains(&r2));
            d.check_vertex(d.to_set(&flipped.result).unwrap()).unwrap();
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(TypeD::new(3).unwrap().enumerate_d(7).unwrap().len(), 14);
        assert_eq!(TypeD::new(4).unwrap().enumerate_d(7).unwrap().len(), 50);
        // type-D Catalan number (3n-2)/n * C(2n-2, n-1)
        let cat_d = |n: u64| {
            let mut c = 1u64;
            for i in 0..n - 1 {
                c = c * (2 * n - 2 - i) / (i + 1);
            }
            (3 * n - 2) * c / n
        };
        assert_eq!(cat_d(5), 182);
        assert_eq!(TypeD::new(5).unwrap().enumerate_d(7).unwrap().len() as u64, cat_d(5));
        assert!(matches!(
            TypeD::new(8).unwrap().enumerate_d(7),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn every_vertex_has_degree_n_and_a_central_pair() {
        for n in 2..=4 {
            let d = TypeD::new(n).unwrap();
            for t in d.enumerate_d(7).unwrap() {
                let (l, r) = d.central_counts(&t);
                assert!(l + r >= 1);
                let flips = d.flips_d(&t).unwrap();
                assert_eq!(flips.len(), n);
                for f in flips {
                    let back = d.flips_d(&f.result).unwrap();
                    let g = back.iter().find(|g| g.removed == f.added).unwrap();
                    assert_eq!(g.result, t);
                }
            }
        }
    }

    #[test]
    fn both_sides_rule_exhaustive() {
        for n in 2..=5 {
            let d = TypeD::new(n).unwrap();
            for s in d.complex().facets(usize::MAX).unwrap() {
                let (l, r) = d.central_counts_set(s);
                if l >= 1 && r >= 1 {
                    assert_eq!((l, r), (1, 1));
                }
                let chords = d.chords_of(s);
                assert_eq!(chords.len(), 2 * n);
                for c in &chords {
                    assert!(chords.contains(&c.bar(n as u32)));
                }
            }
        }
    }

    #[test]
    fn chord_text_forms() {
        let n = 3;
        for s in ["d:0-2", "c:1L", "c:2~R"] {
            let c = ChordD::parse(s, n).unwrap();
            assert_eq!(c.label(n), s);
        }
        assert_eq!(ChordD::parse("c:2~R", 3).unwrap(), ChordD::Central { v: 5, side: Side::R });
        assert!(ChordD::parse("c:3~L", 3).is_err());
        assert!(ChordD::parse("x:1", 3).is_err());
        assert_eq!(PairD::parse("d:3-5", 3).unwrap(), PairD::Diagonal { a: 0, b: 2 });
    }
}
