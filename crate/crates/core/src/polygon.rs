//! Triangulations of a convex polygon (type A) and centrally symmetric
//! triangulations of an even polygon (type B/C, the cyclohedron).

use std::fmt;

use crate::error::{input, Error, Result};
use crate::model::{CompatComplex, Flip, FlipModel};
use crate::set::{ElementId, ElementSet};

/// Strict interleaving of two chords `{a,b}` and `{c,d}` of a convex polygon,
/// endpoints given as cyclic labels. Sharing an endpoint is not a crossing.
pub(crate) fn interleaved(a: u32, b: u32, c: u32, d: u32) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: u32| a < x && x < b;
    let outside = |x: u32| x < a || x > b;
    (inside(c) && outside(d)) || (inside(d) && outside(c))
}

/// Cyclic step count from `a` to `b` counterclockwise in an `m`-gon.
pub(crate) fn ccw_steps(a: u32, b: u32, m: u32) -> u32 {
    (b + m - a) % m
}

/// Whether `{a,b}` is an edge of the `m`-gon boundary.
pub(crate) fn is_boundary(a: u32, b: u32, m: u32) -> bool {
    let s = ccw_steps(a, b, m);
    s == 1 || s == m - 1
}

/// An internal diagonal `{a, b}` of an `m`-gon with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagonalA {
    pub a: u32,
    pub b: u32,
}

impl DiagonalA {
    pub fn new(x: u32, y: u32, m: u32) -> Result<Self> {
        if x >= m || y >= m {
            return input(format!("vertex label out of range 0..{m}: {x}-{y}"));
        }
        let (a, b) = (x.min(y), x.max(y));
        if b - a < 2 || (a == 0 && b == m - 1) {
            return input(format!("{a}-{b} is not an internal diagonal of the {m}-gon"));
        }
        Ok(DiagonalA { a, b })
    }

    pub fn has_endpoint(self, v: u32) -> bool {
        self.a == v || self.b == v
    }

    pub fn parse(s: &str, m: u32) -> Result<Self> {
        let (x, y) = parse_pair(s)?;
        DiagonalA::new(x, y, m)
    }
}

impl fmt::Display for DiagonalA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

pub(crate) fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let (x, y) = s
        .trim()
        .split_once('-')
        .ok_or_else(|| Error::Input(format!("expected `a-b`, got `{s}`")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::Input(format!("bad vertex label `{t}` in `{s}`")))
    };
    Ok((p(x)?, p(y)?))
}

/// Crossing test for two diagonals of the same `m`-gon.
pub fn crosses_a(d1: DiagonalA, d2: DiagonalA, m: u32) -> Result<bool> {
    for d in [d1, d2] {
        DiagonalA::new(d.a, d.b, m)?;
    }
    Ok(interleaved(d1.a, d1.b, d2.a, d2.b))
}

/// A triangulation of the `(n+3)`-gon as its sorted diagonal list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangulationA {
    pub diagonals: Vec<DiagonalA>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipA {
    pub removed: DiagonalA,
    pub added: DiagonalA,
    pub result: TriangulationA,
}

/// Type `A_n`: triangulations of the `(n+3)`-gon.
#[derive(Debug, Clone)]
pub struct TypeA {
    n: usize,
    m: u32,
    diagonals: Vec<DiagonalA>,
    complex: CompatComplex,
}

impl TypeA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return input("type A needs rank n >= 1");
        }
        let m = n as u32 + 3;
        let mut diagonals = Vec::new();
        for a in 0..m {
            for b in a + 2..m {
                if !(a == 0 && b == m - 1) {
                    diagonals.push(DiagonalA { a, b });
                }
            }
        }
        let complex = CompatComplex::from_fn(diagonals.len(), n, |i, j| {
            let (d, e) = (diagonals[i], diagonals[j]);
            Ok(!interleaved(d.a, d.b, e.a, e.b))
        })?;
        Ok(TypeA {
            n,
            m,
            diagonals,
            complex,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polygon vertices, `n + 3`.
    pub fn polygon_size(&self) -> u32 {
        self.m
    }

    pub fn diagonals(&self) -> &[DiagonalA] {
        &self.diagonals
    }

    pub fn complex(&self) -> &CompatComplex {
        &self.complex
    }

    pub fn id_of(&self, d: DiagonalA) -> Result<ElementId> {
        self.diagonals
            .binary_search(&d)
            .map(|i| i as ElementId)
            .map_err(|_| Error::Input(format!("{d} is not a diagonal of the {}-gon", self.m)))
    }

    pub fn diagonal(&self, id: ElementId) -> DiagonalA {
        self.diagonals[id as usize]
    }

    pub fn to_set(&self, t: &TriangulationA) -> Result<ElementSet> {
        t.diagonals.iter().map(|&d| self.id_of(d)).collect()
    }

    pub fn from_set(&self, s: ElementSet) -> TriangulationA {
        TriangulationA {
            diagonals: s.iter().map(|id| self.diagonal(id)).collect(),
        }
    }

    /// Validates a diagonal list as a triangulation of this polygon.
    pub fn triangulation(&self, diagonals: &[DiagonalA]) -> Result<TriangulationA> {
        let mut ds = diagonals.to_vec();
        ds.sort();
        ds.dedup();
        let t = TriangulationA { diagonals: ds };
        let s = self.to_set(&t)?;
        if !self.complex.is_facet(s) {
            return Err(Error::ModelConsistency(format!(
                "{} is not a triangulation of the {}-gon",
                self.format_set(s),
                self.m
            )));
        }
        Ok(t)
    }

    /// Fan at vertex 0.
    pub fn seed_a(&self) -> TriangulationA {
        TriangulationA {
            diagonals: (2..self.m - 1).map(|b| DiagonalA { a: 0, b }).collect(),
        }
    }

    /// One flip per diagonal, found by exhaustive candidate scan.
    pub fn flips_a(&self, t: &TriangulationA) -> Result<Vec<FlipA>> {
        let s = self.to_set(t)?;
        if !self.complex.is_facet(s) {
            return Err(Error::ModelConsistency(format!(
                "{} is not a maximal crossing-free set",
                self.format_set(s)
            )));
        }
        Ok(self
            .complex
            .flips(s)?
            .into_iter()
            .map(|f| FlipA {
                removed: self.diagonal(f.removed),
                added: self.diagonal(f.added),
                result: self.from_set(f.result),
            })
            .collect())
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|i| self.diagonal(i).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FlipModel for TypeA {
    fn key(&self) -> String {
        format!("A-{}", self.n)
    }
    fn family(&self) -> &'static str {
        "A"
    }
    fn rank(&self) -> usize {
        self.n
    }
    fn element_labels(&self) -> Vec<String> {
        self.diagonals.iter().map(|d| d.to_string()).collect()
    }
    fn universe_size(&self) -> usize {
        self.diagonals.len()
    }
    fn seed(&self) -> ElementSet {
        self.to_set(&self.seed_a()).expect("fan diagonals are valid")
    }
    fn flips(&self, v: ElementSet) -> Result<Vec<Flip>> {
        self.complex.flips(v)
    }
    fn enumerate(&self, cap: usize) -> Option<Result<Vec<ElementSet>>> {
        Some(self.complex.facets(cap))
    }
    fn is_vertex(&self, v: ElementSet) -> bool {
        self.complex.is_facet(v)
    }
}

/// An orbit of diagonals of the `2m`-gon under the central symmetry
/// `x -> x + m`: either a pair of distinct non-long diagonals or a single long
/// diagonal `{p, p + m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitB {
    /// Canonical representative `a < b`, the lexicographically smaller of the
    /// two diagonals.
    SymPair { a: u32, b: u32 },
    Long { p: u32 },
}

impl OrbitB {
    /// The underlying diagonals (each normalized `a < b`).
    pub fn diagonals(self, size: u32) -> Vec<(u32, u32)> {
        let half = size / 2;
        match self {
            OrbitB::SymPair { a, b } => {
                let (x, y) = ((a + half) % size, (b + half) % size);
                vec![(a, b), (x.min(y), x.max(y))]
            }
            OrbitB::Long { p } => vec![(p, p + half)],
        }
    }

    pub fn parse(s: &str, size: u32) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("long:") {
            let p: u32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad long orbit `{s}`")))?;
            if p >= size {
                return input(format!("vertex {p} out of range for the {size}-gon"));
            }
            return Ok(OrbitB::Long { p: p % (size / 2) });
        }
        let body = s.strip_prefix("pair:").unwrap_or(s);
        let (x, y) = parse_pair(body)?;
        orbit_of_diagonal(x, y, size)
    }
}

/// The orbit containing the diagonal `{x, y}` of the `size`-gon.
pub fn orbit_of_diagonal(x: u32, y: u32, size: u32) -> Result<OrbitB> {
    let half = size / 2;
    if x >= size || y >= size || x == y || is_boundary(x, y, size) {
        return input(format!("{x}-{y} is not an internal diagonal of the {size}-gon"));
    }
    if ccw_steps(x, y, size) == half {
        return Ok(OrbitB::Long { p: x.min(y) % half });
    }
    let d1 = (x.min(y), x.max(y));
    let (bx, by) = ((x + half) % size, (y + half) % size);
    let d2 = (bx.min(by), bx.max(by));
    let (a, b) = d1.min(d2);
    Ok(OrbitB::SymPair { a, b })
}

impl fmt::Display for OrbitB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitB::SymPair { a, b } => write!(f, "pair:{a}-{b}"),
            OrbitB::Long { p } => write!(f, "long:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangulationB {
    pub orbits: Vec<OrbitB>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipB {
    pub removed: OrbitB,
    pub added: OrbitB,
    pub result: TriangulationB,
}

/// Type `B_n/C_n`: centrally symmetric triangulations of the `(2n+2)`-gon,
/// one element per symmetry orbit of diagonals.
#[derive(Debug, Clone)]
pub struct TypeB {
    n: usize,
    size: u32,
    orbits: Vec<OrbitB>,
    complex: CompatComplex,
}

impl TypeB {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return input("type B needs rank n >= 2");
        }
        let size = 2 * n as u32 + 2;
        let mut orbits = Vec::new();
        for a in 0..size {
            for b in a + 2..size {
                if let Ok(o) = orbit_of_diagonal(a, b, size) {
                    orbits.push(o);
                }
            }
        }
        orbits.sort();
        orbits.dedup();
        for o in &orbits {
            let ds = o.diagonals(size);
            if ds.len() == 2 && interleaved(ds[0].0, ds[0].1, ds[1].0, ds[1].1) {
                return Err(Error::Internal(format!(
                    "the two diagonals of {o} cross each other"
                )));
            }
        }
        let complex = CompatComplex::from_fn(orbits.len(), n, |i, j| {
            let (di, dj) = (orbits[i].diagonals(size), orbits[j].diagonals(size));
            Ok(!di
                .iter()
                .any(|&(a, b)| dj.iter().any(|&(c, d)| interleaved(a, b, c, d))))
        })?;
        Ok(TypeB {
            n,
            size,
            orbits,
            complex,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polygon vertices, `2n + 2`.
    pub fn polygon_size(&self) -> u32 {
        self.size
    }

    pub fn orbits(&self) -> &[OrbitB] {
        &self.orbits
    }

    pub fn complex(&self) -> &CompatComplex {
        &self.complex
    }

    pub fn bar(&self, x: u32) -> u32 {
        (x + self.size / 2) % self.size
    }

    pub fn orbit(&self, id: ElementId) -> OrbitB {
        self.orbits[id as usize]
    }

    pub fn id_of(&self, o: OrbitB) -> Result<ElementId> {
        self.orbits
            .binary_search(&o)
            .map(|i| i as ElementId)
            .map_err(|_| Error::Input(format!("{o} is not an orbit of the {}-gon", self.size)))
    }

    pub fn orbit_id_of_diagonal(&self, x: u32, y: u32) -> Result<ElementId> {
        self.id_of(orbit_of_diagonal(x, y, self.size)?)
    }

    pub fn to_set(&self, t: &TriangulationB) -> Result<ElementSet> {
        t.orbits.iter().map(|&o| self.id_of(o)).collect()
    }

    pub fn from_set(&self, s: ElementSet) -> TriangulationB {
        TriangulationB {
            orbits: s.iter().map(|id| self.orbit(id)).collect(),
        }
    }

    /// Validates an orbit list: crossing-free, maximal, `n` orbits of which
    /// exactly one is long.
    pub fn triangulation(&self, orbits: &[OrbitB]) -> Result<TriangulationB> {
        let mut os = orbits.to_vec();
        os.sort();
        os.dedup();
        let t = TriangulationB { orbits: os };
        let s = self.to_set(&t)?;
        self.check_vertex(s)?;
        Ok(t)
    }

    pub(crate) fn check_vertex(&self, s: ElementSet) -> Result<()> {
        let longs = s
            .iter()
            .filter(|&i| matches!(self.orbit(i), OrbitB::Long { .. }))
            .count();
        if !self.complex.is_facet(s) || longs != 1 {
            return Err(Error::ModelConsistency(format!(
                "{} is not a centrally symmetric triangulation of the {}-gon",
                self.format_set(s),
                self.size
            )));
        }
        Ok(())
    }

    /// Fan at `0` and `0̄`: the long diagonal `{0, 0̄}` and the pairs
    /// `{(0,i), (0̄,ī)}` for `i = 2..=n`.
    pub fn seed_b(&self) -> TriangulationB {
        let mut orbits = vec![OrbitB::Long { p: 0 }];
        for i in 2..=self.n as u32 {
            orbits.push(orbit_of_diagonal(0, i, self.size).expect("fan diagonal"));
        }
        orbits.sort();
        TriangulationB { orbits }
    }

    pub fn flips_b(&self, t: &TriangulationB) -> Result<Vec<FlipB>> {
        let s = self.to_set(t)?;
        self.check_vertex(s)?;
        Ok(self
            .complex
            .flips(s)?
            .into_iter()
            .map(|f| FlipB {
                removed: self.orbit(f.removed),
                added: self.orbit(f.added),
                result: self.from_set(f.result),
            })
            .collect())
    }

    /// All underlying diagonals of a vertex.
    pub fn diagonals_of(&self, s: ElementSet) -> Vec<(u32, u32)> {
        let mut v: Vec<_> = s
            .iter()
            .flat_map(|i| self.orbit(i).diagonals(self.size))
            .collect();
        v.sort();
        v
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|i| self.orbit(i).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FlipModel for TypeB {
    fn key(&self) -> String {
        format!("B-{}", self.n)
    }
    fn family(&self) -> &'static str {
        "B"
    }
    fn rank(&self) -> usize {
        self.n
    }
    fn element_labels(&self) -> Vec<String> {
        self.orbits.iter().map(|o| o.to_string()).collect()
    }
    fn universe_size(&self) -> usize {
        self.orbits.len()
    }
    fn seed(&self) -> ElementSet {
        self.to_set(&self.seed_b()).expect("fan orbits are valid")
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
