//! Normalization maps `N_χ` sending any vertex to a vertex containing `χ`,
//! for types A, B/C and D, and an exhaustive checker of their four defining
//! properties:
//!
//! - P0: `N_χ(T)` is a vertex containing `χ`;
//! - P1: `N_χ(T) = T` when `χ ∈ T`;
//! - P2: images of adjacent vertices coincide or are adjacent;
//! - P3: if `T'` is obtained from `T` by flipping in `χ`, both images are `T'`.
//!
//! Diagonal-like `χ` use the rubber-band rule: every chord crossing `χ` is
//! replaced by chords pulled toward the anchor endpoint `p` (and `p̄`).

use serde::Serialize;

use crate::engine::{self, FlipGraph};
use crate::error::{input, Error, Result};
use crate::model::FlipModel;
use crate::par;
use crate::polygon::{
    ccw_steps, interleaved, is_boundary, DiagonalA, OrbitB, TriangulationA, TriangulationB,
    TypeA, TypeB,
};
use crate::set::{ElementId, ElementSet};
use crate::typed::{chord_crosses_d, ChordD, PairD, PseudotriangulationD, Side, TypeD};

/// Models that carry a normalization map.
pub trait Normalize: FlipModel {
    /// Admissible anchors for `χ`, default first. Empty when `χ` takes none.
    fn anchors(&self, chi: ElementId) -> Vec<u32>;

    /// `N_χ(t)` with the given anchor (default when `None`).
    fn normalize_set(&self, chi: ElementId, anchor: Option<u32>, t: ElementSet)
        -> Result<ElementSet>;
}

fn pick_anchor(model: &dyn Normalize, chi: ElementId, anchor: Option<u32>) -> Result<u32> {
    let allowed = model.anchors(chi);
    match anchor {
        None => Ok(allowed[0]),
        Some(p) if allowed.contains(&p) => Ok(p),
        Some(p) => input(format!("anchor {p} is not an endpoint of element {chi}")),
    }
}

fn check_chi(model: &dyn FlipModel, chi: ElementId) -> Result<()> {
    if chi as usize >= model.universe_size() {
        return input(format!(
            "element {chi} out of range for {} ({} elements)",
            model.key(),
            model.universe_size()
        ));
    }
    Ok(())
}

fn check_input(model: &dyn FlipModel, t: ElementSet) -> Result<()> {
    if !model.is_vertex(t) {
        return input(format!("{t:?} is not a vertex of {}", model.key()));
    }
    Ok(())
}

fn check_output(model: &dyn FlipModel, chi: ElementId, r: ElementSet) -> Result<ElementSet> {
    if !model.is_vertex(r) || !r.contains(chi) {
        return Err(Error::Internal(format!(
            "normalization in {} produced {r:?}, not a vertex containing {chi}",
            model.key()
        )));
    }
    Ok(r)
}

/// Whether `z` lies strictly inside the counterclockwise arc `from -> to`.
fn in_arc(z: u32, from: u32, to: u32, m: u32) -> bool {
    let s = ccw_steps(from, z, m);
    s > 0 && s < ccw_steps(from, to, m)
}

/// Open arc cut off by the short side of the non-long diagonal `{p, q}`.
fn in_short_arc(z: u32, p: u32, q: u32, m: u32) -> bool {
    if ccw_steps(p, q, m) < m / 2 {
        in_arc(z, p, q, m)
    } else {
        in_arc(z, q, p, m)
    }
}

impl Normalize for TypeA {
    fn anchors(&self, chi: ElementId) -> Vec<u32> {
        let d = self.diagonal(chi);
        vec![d.a, d.b]
    }

    fn normalize_set(
        &self,
        chi: ElementId,
        anchor: Option<u32>,
        t: ElementSet,
    ) -> Result<ElementSet> {
        check_chi(self, chi)?;
        check_input(self, t)?;
        let p = pick_anchor(self, chi, anchor)?;
        let c = self.diagonal(chi);
        let m = self.polygon_size();
        let mut out = ElementSet::singleton(chi);
        for id in t {
            let d = self.diagonal(id);
            if !interleaved(d.a, d.b, c.a, c.b) {
                out.insert(id);
                continue;
            }
            for z in [d.a, d.b] {
                if !is_boundary(z, p, m) {
                    out.insert(self.id_of(DiagonalA::new(z, p, m)?)?);
                }
            }
        }
        check_output(self, chi, out)
    }
}

pub fn normalize_a(
    model: &TypeA,
    chi: DiagonalA,
    anchor: u32,
    t: &TriangulationA,
) -> Result<TriangulationA> {
    let id = model.id_of(chi)?;
    let s = model.to_set(t)?;
    Ok(model.from_set(model.normalize_set(id, Some(anchor), s)?))
}

/// Replacement diagonals are dropped when they are boundary edges.
fn add_orbit_b(model: &TypeB, out: &mut ElementSet, u: u32, v: u32) -> Result<()> {
    if u != v && !is_boundary(u, v, model.polygon_size()) {
        out.insert(model.orbit_id_of_diagonal(u, v)?);
    }
    Ok(())
}

impl Normalize for TypeB {
    fn anchors(&self, chi: ElementId) -> Vec<u32> {
        match self.orbit(chi) {
            OrbitB::SymPair { a, b } => vec![a, b, self.bar(a), self.bar(b)],
            OrbitB::Long { .. } => vec![],
        }
    }

    fn normalize_set(
        &self,
        chi: ElementId,
        anchor: Option<u32>,
        t: ElementSet,
    ) -> Result<ElementSet> {
        check_chi(self, chi)?;
        check_input(self, t)?;
        let m = self.polygon_size();
        let mut out = ElementSet::singleton(chi);
        match self.orbit(chi) {
            OrbitB::Long { p } => {
                if anchor.is_some_and(|a| a != p && a != self.bar(p)) {
                    return input(format!("anchor must be an endpoint of long:{p}"));
                }
                let pb = self.bar(p);
                for id in t {
                    let crossing: Vec<_> = self
                        .orbit(id)
                        .diagonals(m)
                        .into_iter()
                        .filter(|&(x, y)| interleaved(x, y, p, pb))
                        .collect();
                    if crossing.is_empty() {
                        out.insert(id);
                    }
                    for (x, y) in crossing {
                        for z in [x, y] {
                            // clockwise from p to p̄ means counterclockwise from p̄ to p
                            let hub = if in_arc(z, pb, p, m) { pb } else { p };
                            add_orbit_b(self, &mut out, z, hub)?;
                        }
                    }
                }
            }
            OrbitB::SymPair { .. } => {
                let p = pick_anchor(self, chi, anchor)?;
                let q = self
                    .orbit(chi)
                    .diagonals(m)
                    .into_iter()
                    .find_map(|(a, b)| match (a == p, b == p) {
                        (true, _) => Some(b),
                        (_, true) => Some(a),
                        _ => None,
                    })
                    .expect("anchor is an endpoint");
                let (pb, qb) = (self.bar(p), self.bar(q));
                for id in t {
                    let diags = self.orbit(id).diagonals(m);
                    if !diags
                        .iter()
                        .any(|&(x, y)| interleaved(x, y, p, q) || interleaved(x, y, pb, qb))
                    {
                        out.insert(id);
                        continue;
                    }
                    for (x, y) in diags {
                        match (interleaved(x, y, p, q), interleaved(x, y, pb, qb)) {
                            (false, false) => {}
                            (true, false) => {
                                add_orbit_b(self, &mut out, x, p)?;
                                add_orbit_b(self, &mut out, p, y)?;
                            }
                            (false, true) => {
                                add_orbit_b(self, &mut out, x, pb)?;
                                add_orbit_b(self, &mut out, pb, y)?;
                            }
                            (true, true) => {
                                let (x, y) = if in_short_arc(x, p, q, m) { (x, y) } else { (y, x) };
                                if !in_short_arc(x, p, q, m) || !in_short_arc(y, pb, qb, m) {
                                    return Err(Error::Internal(format!(
                                        "{x}-{y} crosses both diagonals of {} without separating its endpoints",
                                        self.orbit(chi)
                                    )));
                                }
                                add_orbit_b(self, &mut out, x, p)?;
                                add_orbit_b(self, &mut out, p, pb)?;
                                add_orbit_b(self, &mut out, pb, y)?;
                            }
                        }
                    }
                }
            }
        }
        check_output(self, chi, out)
    }
}

pub fn normalize_b(
    model: &TypeB,
    chi: OrbitB,
    anchor: Option<u32>,
    t: &TriangulationB,
) -> Result<TriangulationB> {
    let id = model.id_of(chi)?;
    let s = model.to_set(t)?;
    Ok(model.from_set(model.normalize_set(id, anchor, s)?))
}

impl TypeD {
    fn add_diagonal(&self, out: &mut ElementSet, u: u32, v: u32) -> Result<()> {
        let m = 2 * self.n();
        if u == v || is_boundary(u, v, m) {
            return Ok(());
        }
        if ccw_steps(u, v, m) == self.n() {
            return Err(Error::Internal(format!(
                "rubber-band replacement produced the long diagonal {u}-{v}"
            )));
        }
        out.insert(self.id_of_chord(ChordD::diagonal(u, v, self.n())?)?);
        Ok(())
    }

    fn add_both_centrals(&self, out: &mut ElementSet, p: u32) {
        out.insert(self.central_id(p, Side::L));
        out.insert(self.central_id(p, Side::R));
    }

    fn normalize_diagonal_pair(
        &self,
        chi: ElementId,
        p: u32,
        q: u32,
        t: ElementSet,
    ) -> Result<ElementSet> {
        let n = self.n();
        let m = 2 * n;
        let (pb, qb) = (self.bar(p), self.bar(q));
        let chi_chords = [ChordD::diagonal(p, q, n)?, ChordD::diagonal(pb, qb, n)?];
        let mut out = ElementSet::singleton(chi);
        for id in t {
            let chords = self.pair(id).chords(n);
            let mut crossed = false;
            for c in chords {
                let hits = (
                    chord_crosses_d(c, chi_chords[0], n)?,
                    chord_crosses_d(c, chi_chords[1], n)?,
                );
                if hits == (false, false) {
                    continue;
                }
                crossed = true;
                match c {
                    ChordD::Central { v, side } => {
                        if hits.0 {
                            self.add_diagonal(&mut out, v, p)?;
                        }
                        if hits.1 {
                            self.add_diagonal(&mut out, v, pb)?;
                        }
                        out.insert(self.central_id(p, side));
                    }
                    ChordD::Diagonal { a: x, b: y } => match hits {
                        (true, false) | (false, true) => {
                            let (hub, other) = if hits.0 { (p, pb) } else { (pb, p) };
                            if x != other && y != other {
                                self.add_diagonal(&mut out, x, hub)?;
                                self.add_diagonal(&mut out, hub, y)?;
                            } else {
                                let z = if x == other { y } else { x };
                                self.add_diagonal(&mut out, z, hub)?;
                                self.add_both_centrals(&mut out, p);
                            }
                        }
                        _ => {
                            let (x, y) = if in_short_arc(x, p, q, m) { (x, y) } else { (y, x) };
                            if !in_short_arc(x, p, q, m) || !in_short_arc(y, pb, qb, m) {
                                return Err(Error::Internal(format!(
                                    "{x}-{y} crosses both chords of {} without separating its endpoints",
                                    self.pair(chi)
                                )));
                            }
                            self.add_diagonal(&mut out, x, p)?;
                            self.add_diagonal(&mut out, pb, y)?;
                            self.add_both_centrals(&mut out, p);
                        }
                    },
                }
            }
            if !crossed {
                out.insert(id);
            }
        }
        Ok(out)
    }

    /// Keeps the pairs compatible with the central pair `χ = (p, side)`,
    /// inserts `χ`, then completes greedily in the order of [`CentralFill`].
    fn normalize_central_pair(
        &self,
        chi: ElementId,
        t: ElementSet,
        fill: CentralFill,
    ) -> Result<ElementSet> {
        let complex = self.complex();
        let (p, side) = match self.pair(chi) {
            PairD::Central { p, side } => (p, side),
            PairD::Diagonal { .. } => unreachable!(),
        };
        let mut out = ElementSet::singleton(chi);
        for id in t {
            if complex.compatible(id, chi) {
                out.insert(id);
            }
        }
        let n = self.n() as i64;
        let m = 2 * n;
        let diag = |u: i64, v: i64| -> Option<ElementId> {
            let c = ChordD::diagonal(u.rem_euclid(m) as u32, v.rem_euclid(m) as u32, self.n()).ok()?;
            self.id_of_chord(c).ok()
        };
        let central = |q: i64| Some(self.central_id(q.rem_euclid(m) as u32, side));
        let (p, dir) = (p as i64, if side == Side::L { 1 } else { -1 });
        let mut order: Vec<Option<ElementId>> = Vec::new();
        match fill {
            CentralFill::Interleaved => {
                for i in 1..n {
                    order.push(diag(p, p - dir * (i + 1)));
                    order.push(central(p + dir * i));
                }
            }
            CentralFill::SameSideFirst => {
                order.extend((1..n).map(|i| central(p + dir * i)));
                order.extend((2..m - 1).map(|k| diag(p, p + k)));
            }
        }
        let rest = (0..self.pairs().len() as ElementId).map(Some);
        for id in order.into_iter().chain(rest).flatten() {
            if complex.addable(out).contains(id) {
                out.insert(id);
            }
        }
        Ok(out)
    }

    /// [`Normalize::normalize_set`] with an explicit completion order for
    /// central pairs.
    pub fn normalize_with_fill(
        &self,
        chi: ElementId,
        anchor: Option<u32>,
        t: ElementSet,
        fill: CentralFill,
    ) -> Result<ElementSet> {
        check_chi(self, chi)?;
        check_input(self, t)?;
        let out = match self.pair(chi) {
            PairD::Central { .. } => {
                if anchor.is_some() {
                    return input("central pairs take no anchor");
                }
                self.normalize_central_pair(chi, t, fill)?
            }
            PairD::Diagonal { a, b } => {
                let p = pick_anchor(self, chi, anchor)?;
                let (pb, bb) = (self.bar(a), self.bar(b));
                let q = if p == a {
                    b
                } else if p == b {
                    a
                } else if p == pb {
                    bb
                } else {
                    pb
                };
                self.normalize_diagonal_pair(chi, p, q, t)?
            }
        };
        check_output(self, chi, out)
    }
}

/// Completion order used when normalizing toward a central pair `(p, side)`.
/// With `s = +1` for left and `-1` for right:
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum CentralFill {
    /// For `i = 1..n`: the diagonal pair `{p, p - s(i+1)}`, then the central
    /// pair `p + s·i` on the same side. Remaining pairs in canonical order.
    #[default]
    Interleaved,
    /// All same-side central pairs, then the fan at `p`, then the rest.
    SameSideFirst,
}

impl Normalize for TypeD {
    fn anchors(&self, chi: ElementId) -> Vec<u32> {
        match self.pair(chi) {
            PairD::Diagonal { a, b } => vec![a, b, self.bar(a), self.bar(b)],
            PairD::Central { .. } => vec![],
        }
    }

    fn normalize_set(
        &self,
        chi: ElementId,
        anchor: Option<u32>,
        t: ElementSet,
    ) -> Result<ElementSet> {
        self.normalize_with_fill(chi, anchor, t, CentralFill::default())
    }
}

pub fn normalize_d(
    model: &TypeD,
    chi: PairD,
    anchor: Option<u32>,
    t: &PseudotriangulationD,
) -> Result<PseudotriangulationD> {
    let id = model.id_of(chi)?;
    let s = model.to_set(t)?;
    Ok(model.from_set(model.normalize_set(id, anchor, s)?))
}

/// Which admissible anchor `verify_properties` uses for every `χ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnchorChoice {
    Default,
    /// The second admissible anchor (the other endpoint of the
    /// representative diagonal).
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub chi: ElementId,
    pub anchor: Option<u32>,
    pub input: ElementSet,
    /// Second input vertex for P2/P3.
    pub neighbor: Option<ElementSet>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub checked: u64,
    pub failures: Vec<PropertyFailure>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub model: String,
    pub p0: PropertyTally,
    pub p1: PropertyTally,
    pub p2: PropertyTally,
    pub p3: PropertyTally,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        [&self.p0, &self.p1, &self.p2, &self.p3]
            .iter()
            .all(|t| t.failures.is_empty())
    }

    fn merge(&mut self, other: PropertyReport) {
        for (a, b) in [
            (&mut self.p0, other.p0),
            (&mut self.p1, other.p1),
            (&mut self.p2, other.p2),
            (&mut self.p3, other.p3),
        ] {
            a.checked += b.checked;
            a.failures.extend(b.failures);
        }
    }
}

fn anchor_for(model: &dyn Normalize, chi: ElementId, choice: AnchorChoice) -> Option<u32> {
    let a = model.anchors(chi);
    match choice {
        AnchorChoice::Default => a.first().copied(),
        AnchorChoice::Other => a.get(1).or(a.first()).copied(),
    }
}

fn check_chi_exhaustive<M: Normalize>(
    model: &M,
    g: &FlipGraph,
    chi: ElementId,
    anchor: Option<u32>,
) -> PropertyReport {
    let mut r = PropertyReport::default();
    let fail = |input, neighbor, detail: String| PropertyFailure {
        chi,
        anchor,
        input,
        neighbor,
        detail,
    };
    let mut image: Vec<Option<usize>> = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let t = g.vertex(i);
        r.p0.checked += 1;
        let img = match model.normalize_set(chi, anchor, t) {
            Ok(out) => match g.index_of(out) {
                Some(j) => Some(j),
                None => {
                    r.p0.failures.push(fail(t, None, format!("{out:?} is not a vertex")));
                    None
                }
            },
            Err(e) => {
                r.p0.failures.push(fail(t, None, e.to_string()));
                None
            }
        };
        if t.contains(chi) {
            r.p1.checked += 1;
            if img != Some(i) {
                r.p1.failures.push(fail(t, None, format!("image {img:?} differs from input")));
            }
        }
        image.push(img);
    }
    for u in 0..g.len() {
        for e in g.neighbors(u) {
            let w = e.to as usize;
            let (Some(iu), Some(iw)) = (image[u], image[w]) else {
                continue;
            };
            if u < w {
                r.p2.checked += 1;
                let ok = iu == iw || g.neighbors(iu).iter().any(|f| f.to as usize == iw);
                if !ok {
                    r.p2.failures.push(fail(
                        g.vertex(u),
                        Some(g.vertex(w)),
                        format!("images {iu} and {iw} are neither equal nor adjacent"),
                    ));
                }
            }
            if e.added == chi {
                r.p3.checked += 1;
                if iu != w || iw != w {
                    r.p3.failures.push(fail(
                        g.vertex(u),
                        Some(g.vertex(w)),
                        format!("images {iu} and {iw}, expected {w} for both"),
                    ));
                }
            }
        }
    }
    r
}

/// Exhaustive P0–P3 check over every element and every vertex / edge.
pub fn verify_properties<M: Normalize>(
    model: &M,
    choice: AnchorChoice,
    vertex_cap: usize,
) -> Result<PropertyReport> {
    let g = engine::build_graph(model, vertex_cap)?;
    verify_properties_on(model, &g, choice)
}

pub fn verify_properties_on<M: Normalize>(
    model: &M,
    g: &FlipGraph,
    choice: AnchorChoice,
) -> Result<PropertyReport> {
    let parts = par::map_range(model.universe_size(), |chi| {
        let chi = chi as ElementId;
        check_chi_exhaustive(model, g, chi, anchor_for(model, chi, choice))
    });
    let mut report = PropertyReport {
        model: model.key(),
        ..PropertyReport::default()
    };
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}

/// A geodesic from `s` to `t` whose first step flips out `first_flip`.
/// `χ'`, the element that flip adds, must lie in `t`.
pub fn normalized_geodesic<M: Normalize>(
    model: &M,
    g: &FlipGraph,
    s: usize,
    t: usize,
    first_flip: ElementId,
) -> Result<Vec<usize>> {
    if s >= g.len() || t >= g.len() {
        return input("vertex index out of range");
    }
    let edge = g
        .neighbors(s)
        .iter()
        .find(|e| e.removed == first_flip)
        .ok_or_else(|| Error::Input(format!("element {first_flip} is not in vertex {s}")))?;
    let chi = edge.added;
    if !g.vertex(t).contains(chi) {
        return input(format!(
            "flipping {first_flip} in vertex {s} adds {chi}, which is not in vertex {t}"
        ));
    }
    let base = engine::shortest_path(g, s, t)?;
    let mut path = vec![s];
    for &v in &base {
        let img = model.normalize_set(chi, None, g.vertex(v))?;
        let j = g
            .index_of(img)
            .ok_or_else(|| Error::Internal(format!("normalized image {img:?} is not a vertex")))?;
        if *path.last().unwrap() != j {
            path.push(j);
        }
    }
    if (!g.is_path(&path) || path.len() > base.len() || path.get(1) != Some(&(edge.to as usize)))
        && !(s == t && path.len() == 1) {
            return Err(Error::Internal(format!(
                "normalized path {path:?} is not a geodesic starting with the prescribed flip"
            )));
        }
    Ok(path)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GeodesicSweep {
    pub triples: u64,
    pub failures: Vec<(usize, usize, ElementId, String)>,
}

/// Runs [`normalized_geodesic`] on every qualifying `(s, t, flip)` triple.
pub fn normalized_geodesic_sweep<M: Normalize>(model: &M, g: &FlipGraph) -> GeodesicSweep {
    let parts = par::map_range(g.len(), |s| {
        let mut out = GeodesicSweep::default();
        let ds = engine::distances(g, s).map(|f| f.distances).unwrap_or_default();
        for t in 0..g.len() {
            let target = g.vertex(t);
            for e in g.neighbors(s) {
                if target.contains(e.removed) || !target.contains(e.added) {
                    continue;
                }
                out.triples += 1;
                match normalized_geodesic(model, g, s, t, e.removed) {
                    Ok(p) => {
                        if ds.get(t).is_none_or(|&d| p.len() != d as usize + 1) {
                            out.failures.push((s, t, e.removed, "not a geodesic".into()));
                        }
                    }
                    Err(err) => out.failures.push((s, t, e.removed, err.to_string())),
                }
            }
        }
        out
    });
    let mut sweep = GeodesicSweep::default();
    for p in parts {
        sweep.triples += p.triples;
        sweep.failures.extend(p.failures);
    }
    sweep
}
