//! JSON instance and orientation files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub u: String,
    pub v: String,
    pub len: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub denominator: i64,
    pub nodes: Vec<String>,
    pub root: String,
    pub edges: Vec<EdgeRecord>,
}

impl InstanceFile {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        Self {
            denominator: g.denominator(),
            nodes: g.names().to_vec(),
            root: g.name(g.root()).to_string(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord { id: e.id.0, u: g.name(e.u).to_string(), v: g.name(e.v).to_string(), len: e.len })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| e.id);
        if edges.iter().enumerate().any(|(i, e)| e.id != i) {
            return Err(Error::MalformedInstance("edge ids must be unique and dense from 0".into()));
        }
        let index = |name: &str| {
            self.nodes
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::MalformedInstance(format!("unknown node {name}")))
        };
        let list = edges
            .iter()
            .map(|e| Ok((index(&e.u)?, index(&e.v)?, e.len)))
            .collect::<Result<Vec<_>>>()?;
        WeightedGraph::new(self.nodes.clone(), &self.root, &list, self.denominator)
    }
}

pub fn read_instance(text: &str) -> Result<WeightedGraph> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedInstance(format!("instance JSON: {e}")))?;
    file.to_graph()
}

/// Canonical pretty-printed form, newline terminated.
pub fn write_instance(g: &WeightedGraph) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_graph(g)).expect("instance serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Uv,
    Vu,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub id: usize,
    pub dir: Dir,
}

/// Orientation as `[{"id", "dir"}]`; `forward[e]` means u→v.
pub fn write_orientation(forward: &[bool]) -> String {
    let recs: Vec<ArcRecord> = forward
        .iter()
        .enumerate()
        .map(|(id, &f)| ArcRecord { id, dir: if f { Dir::Uv } else { Dir::Vu } })
        .collect();
    let mut s = serde_json::to_string_pretty(&recs).expect("orientation serializes");
    s.push('\n');
    s
}

pub fn read_orientation(g: &WeightedGraph, text: &str) -> Result<Vec<bool>> {
    let recs: Vec<ArcRecord> =
        serde_json::from_str(text).map_err(|e| Error::MalformedInstance(format!("orientation JSON: {e}")))?;
    let mut out = vec![None; g.edge_count()];
    for r in recs {
        let slot = out.get_mut(r.id).ok_or_else(|| Error::MalformedInstance(format!("unknown edge {}", r.id)))?;
        *slot = Some(r.dir == Dir::Uv);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| Error::MalformedInstance(format!("edge {} has no direction", EdgeId(i).0))))
        .collect()
}
