//! Model selection from command-line flags and parsing of vertices given as
//! element labels.

use std::path::Path;

use clap::{Args, ValueEnum};
use flipgraph::graphassoc::{Graph, GraphAssoc, Preset, Tube};
use flipgraph::multiassoc::MultiAssoc;
use flipgraph::normalization::Normalize;
use flipgraph::polygon::{DiagonalA, OrbitB, TypeA, TypeB};
use flipgraph::typed::{PairD, TypeD};
use flipgraph::{ElementId, ElementSet, Error, FlipModel, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    /// Triangulations of an (n+3)-gon.
    A,
    /// Centrally symmetric triangulations of a (2n+2)-gon.
    B,
    /// Centrally symmetric pseudotriangulations of a 2n-gon with a disk.
    D,
    /// k-triangulations of an m-gon.
    K,
    /// Nested sets of a graph.
    G,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long = "type", value_enum, ignore_case = true)]
    pub family: Family,
    /// Rank n for types A, B and D.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Polygon size for type K.
    #[arg(long)]
    pub m: Option<u32>,
    /// Crossing parameter for type K.
    #[arg(long)]
    pub k: Option<u32>,
    #[command(flatten)]
    pub graph: GraphArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Edge list `a-b,c-d,...` or a file with one `a b` or `a-b` per line.
    #[arg(long)]
    pub edges: Option<String>,
    /// path, cycle, star (center plus `size` leaves) or complete.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub size: Option<usize>,
}

impl GraphArgs {
    pub fn build(&self) -> Result<Graph> {
        match (&self.edges, &self.preset) {
            (Some(spec), None) => {
                let path = Path::new(spec);
                let (name, text) = if path.is_file() {
                    let stem = path
                        .file_stem()
                        .map_or("edges".into(), |s| s.to_string_lossy().into_owned());
                    (stem, std::fs::read_to_string(path)?)
                } else {
                    ("edges".to_string(), spec.clone())
                };
                Graph::from_edges(name, &parse_edges(&text)?)
            }
            (None, Some(p)) => {
                let size = self
                    .size
                    .ok_or_else(|| Error::Input("--preset needs --size".into()))?;
                Graph::preset(p.parse::<Preset>()?, size)
            }
            _ => Err(Error::Input("give exactly one of --edges or --preset".into())),
        }
    }
}

fn parse_edges(text: &str) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for item in text.split([',', '\n', ';']) {
        let item = item.trim();
        if item.is_empty() || item.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = item.split(|c: char| c == '-' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::Input(format!("bad edge `{item}`")))
        };
        match parts.as_slice() {
            [a, b] => out.push((num(a)?, num(b)?)),
            _ => return Err(Error::Input(format!("bad edge `{item}`"))),
        }
    }
    Ok(out)
}

pub enum AnyModel {
    A(TypeA),
    B(TypeB),
    D(TypeD),
    K(MultiAssoc),
    G(GraphAssoc),
}

impl ModelArgs {
    fn rank(&self) -> Result<usize> {
        self.rank
            .ok_or_else(|| Error::Input(format!("--type {:?} needs --rank", self.family)))
    }

    pub fn build(&self) -> Result<AnyModel> {
        Ok(match self.family {
            Family::A => AnyModel::A(TypeA::new(self.rank()?)?),
            Family::B => AnyModel::B(TypeB::new(self.rank()?)?),
            Family::D => AnyModel::D(TypeD::new(self.rank()?)?),
            Family::K => {
                let (m, k) = self
                    .m
                    .zip(self.k)
                    .ok_or_else(|| Error::Input("--type K needs --m and --k".into()))?;
                AnyModel::K(MultiAssoc::new(m, k)?)
            }
            Family::G => AnyModel::G(GraphAssoc::new(self.graph.build()?)?),
        })
    }
}

impl AnyModel {
    pub fn flip_model(&self) -> &dyn FlipModel {
        match self {
            AnyModel::A(m) => m,
            AnyModel::B(m) => m,
            AnyModel::D(m) => m,
            AnyModel::K(m) => m,
            AnyModel::G(m) => m,
        }
    }

    pub fn normalizer(&self) -> Result<&dyn Normalize> {
        match self {
            AnyModel::A(m) => Ok(m),
            AnyModel::B(m) => Ok(m),
            AnyModel::D(m) => Ok(m),
            _ => Err(Error::Input("normalization is defined for types A, B and D".into())),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<ElementId> {
        let s = s.trim();
        match self {
            AnyModel::A(m) => m.id_of(DiagonalA::parse(s, m.polygon_size())?),
            AnyModel::B(m) => m.id_of(OrbitB::parse(s, m.polygon_size())?),
            AnyModel::D(m) => m.id_of(PairD::parse(s, m.n())?),
            AnyModel::K(m) => {
                let (a, b) = s
                    .split_once('-')
                    .ok_or_else(|| Error::Input(format!("expected `a-b`, got `{s}`")))?;
                let num = |t: &str| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Input(format!("bad diagonal `{s}`")))
                };
                m.id_of(num(a)?, num(b)?)
            }
            AnyModel::G(m) => {
                let body = s.trim_start_matches('{').trim_end_matches('}');
                let mut mask = 0u32;
                for v in body.split([',', ' ', '.']).filter(|t| !t.is_empty()) {
                    let v: u32 = v
                        .parse()
                        .map_err(|_| Error::Input(format!("bad tube `{s}`")))?;
                    if v >= 32 {
                        return Err(Error::Input(format!("bad tube `{s}`")));
                    }
                    mask |= 1 << v;
                }
                m.id_of(Tube(mask))
            }
        }
    }

    /// A vertex as a list of element labels. Tubes are separated by `;`,
    /// other elements by `,`, `;` or whitespace.
    pub fn parse_vertex(&self, s: &str) -> Result<ElementSet> {
        let items: Vec<&str> = match self {
            AnyModel::G(_) => s.split(';').collect(),
            _ => s.split([',', ';', ' ']).collect(),
        };
        let set: ElementSet = items
            .into_iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_element(t))
            .collect::<Result<_>>()?;
        let model = self.flip_model();
        if !model.is_vertex(set) {
            return Err(Error::Input(format!("`{s}` is not a vertex of {}", model.key())));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_parsing() {
        assert_eq!(parse_edges("0-1, 1-2").unwrap(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_edges("# c\n0 1\n1 2\n").unwrap(), vec![(0, 1), (1, 2)]);
        assert!(parse_edges("0-x").is_err());
    }
}
