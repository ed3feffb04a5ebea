//! Byte-stable serializations of flip graphs (JSON, DOT, eccentricity CSV)
//! and a checksummed on-disk cache.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{self, Edge, FlipGraph};
use crate::error::{input, Error, Result};
use crate::model::FlipModel;
use crate::set::{ElementId, ElementSet};

/// Bumped whenever the JSON layout changes; part of every cache key.
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "FLIPGRAPH_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    CsvEcc,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "csv-ecc" => Ok(Format::CsvEcc),
            _ => input(format!("unknown export format {s:?} (json, dot, csv-ecc)")),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    model: String,
    family: String,
    rank: usize,
    elements: Vec<String>,
    /// Element ids of each vertex, in canonical vertex order.
    vertices: Vec<Vec<ElementId>>,
    /// `[i, j, removed, added]` with `i < j`: flipping `removed` out of
    /// vertex `i` adds `added` and gives vertex `j`.
    edges: Vec<[u32; 4]>,
}

pub fn to_json(g: &FlipGraph) -> Result<String> {
    let doc = GraphDoc {
        model: g.model.clone(),
        family: g.family.clone(),
        rank: g.rank,
        elements: g.labels.clone(),
        vertices: g.vertices().iter().map(|v| v.to_ids()).collect(),
        edges: g
            .edge_list()
            .into_iter()
            .map(|(i, j, r, a)| [i as u32, j as u32, r, a])
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))
}

pub fn from_json(text: &str) -> Result<FlipGraph> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed graph JSON: {e}")))?;
    let universe = doc.elements.len();
    let vertices = doc
        .vertices
        .iter()
        .map(|ids| {
            let s = ElementSet::try_from_ids(ids.iter().copied(), universe)?;
            if s.len() != doc.rank {
                return input(format!("vertex {ids:?} does not have {} elements", doc.rank));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for &[i, j, removed, added] in &doc.edges {
        let (iu, ju) = (i as usize, j as usize);
        if iu >= vertices.len() || ju >= vertices.len() {
            return input(format!("edge [{i}, {j}] out of range"));
        }
        let (removed, added) = (removed as ElementId, added as ElementId);
        if vertices[iu].without(removed).with(added) != vertices[ju] {
            return input(format!("edge [{i}, {j}] is not the stated flip"));
        }
        adjacency[iu].push(Edge {
            to: j,
            removed,
            added,
        });
        adjacency[ju].push(Edge {
            to: i,
            removed: added,
            added: removed,
        });
    }
    FlipGraph::from_parts(doc.model, doc.family, doc.rank, doc.elements, vertices, adjacency)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(g: &FlipGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", dot_escape(&g.model));
    for i in 0..g.len() {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", dot_escape(&g.format_vertex(i)));
    }
    for (i, j, r, a) in g.edge_list() {
        let label = format!("{} / {}", g.labels[r as usize], g.labels[a as usize]);
        let _ = writeln!(out, "  {i} -- {j} [label=\"{}\"];", dot_escape(&label));
    }
    out.push_str("}\n");
    out
}

pub fn to_csv_ecc(g: &FlipGraph) -> Result<String> {
    let mut out = String::from("vertexIndex,eccentricity,witnessIndex\n");
    for (i, e) in engine::eccentricities(g)?.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{}", e.eccentricity, e.witness);
    }
    Ok(out)
}

pub fn export(g: &FlipGraph, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(g),
        Format::Dot => Ok(to_dot(g)),
        Format::CsvEcc => to_csv_ecc(g),
    }
}

pub fn checksum(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CacheOutcome {
    Hit,
    Built,
    /// A cache file existed but was corrupt and has been replaced.
    Rebuilt,
}

/// Directory of cached flip graphs. Each file holds the SHA-256 of the
/// payload on its first line and the JSON export after it.
#[derive(Debug, Clone)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GraphCache { dir: dir.into() }
    }

    /// `$FLIPGRAPH_CACHE_DIR`, else `fallback`.
    pub fn from_env(fallback: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => GraphCache::new(d),
            _ => GraphCache::new(fallback),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, model: &str, rank: usize) -> PathBuf {
        let safe: String = model
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}-r{rank}-v{FORMAT_VERSION}.json"))
    }

    pub fn write(&self, g: &FlipGraph) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let payload = to_json(g)?;
        let path = self.path_for(&g.model, g.rank);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, format!("{}\n{payload}", checksum(payload.as_bytes())))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when there is no cache file.
    pub fn read(&self, model: &str, rank: usize) -> Result<Option<FlipGraph>> {
        let path = self.path_for(model, rank);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = || Error::Checksum(path.display().to_string());
        let (sum, payload) = text.split_once('\n').ok_or_else(corrupt)?;
        if sum != checksum(payload.as_bytes()) {
            return Err(corrupt());
        }
        let g = from_json(payload).map_err(|_| corrupt())?;
        if g.model != model || g.rank != rank {
            return Err(corrupt());
        }
        Ok(Some(g))
    }

    /// Cached graph for `model`, building (and storing) it on a miss or
    /// after a checksum failure.
    pub fn load_or_build(&self, model: &dyn FlipModel, cap: usize) -> Result<(FlipGraph, CacheOutcome)> {
        let outcome = match self.read(&model.key(), model.rank()) {
            Ok(Some(g)) => return Ok((g, CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Built,
            Err(Error::Checksum(_)) => CacheOutcome::Rebuilt,
            Err(e) => return Err(e),
        };
        let g = engine::build_graph(model, cap)?;
        self.write(&g)?;
        Ok((g, outcome))
    }
}
