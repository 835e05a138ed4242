//! Seeded planar instance generators.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::figures;
use crate::graph::{bridges, validate_graph, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Delaunay,
    GridWithDeletions,
    Wheel,
    PaperFigure,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delaunay" => Ok(Model::Delaunay),
            "grid-with-deletions" | "grid" => Ok(Model::GridWithDeletions),
            "wheel" => Ok(Model::Wheel),
            "paper-figure" => Ok(Model::PaperFigure),
            other => Err(Error::MalformedInstance(format!("unknown model {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lengths {
    Unit,
    /// Uniform integer lengths in `1..=k`.
    Uniform(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: Model,
    pub nodes: usize,
    pub seed: u64,
    pub lengths: Lengths,
    /// Built-in name for [`Model::PaperFigure`].
    pub figure: Option<String>,
}

impl GenSpec {
    pub fn new(model: Model, nodes: usize, seed: u64, lengths: Lengths) -> Self {
        Self { model, nodes, seed, lengths, figure: None }
    }
}

const TRIES: u64 = 10;

/// Builds the instance described by `spec`; the root is node 0.
pub fn generate(spec: &GenSpec) -> Result<WeightedGraph> {
    if spec.model == Model::PaperFigure {
        let name = spec.figure.as_deref().unwrap_or("lcafig");
        return Ok(figures::figure(name)?.graph);
    }
    if spec.nodes < 3 {
        return Err(Error::GenerationFailed(format!("need at least 3 nodes, got {}", spec.nodes)));
    }
    for attempt in 0..TRIES {
        // derived seed per retry, still deterministic
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let pairs = match spec.model {
            Model::Delaunay => delaunay(spec.nodes, &mut rng),
            Model::GridWithDeletions => grid(spec.nodes, &mut rng),
            Model::Wheel => Some(wheel(spec.nodes)),
            Model::PaperFigure => unreachable!(),
        };
        let Some(pairs) = pairs else { continue };
        let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let edges: Vec<(usize, usize, i64)> = pairs
            .into_iter()
            .map(|(a, b)| {
                let len = match spec.lengths {
                    Lengths::Unit => 1,
                    Lengths::Uniform(k) => rng.random_range(1..=k.max(1)),
                };
                (a, b, len)
            })
            .collect();
        let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let g = WeightedGraph::new(names, "n0", &edges, 1)?;
        if validate_graph(&g).check().is_ok() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!("{:?} with {} nodes after {TRIES} tries", spec.model, spec.nodes)))
}

fn delaunay(n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut t: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    for _ in 0..n {
        let p = Point2::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0));
        t.insert(p).ok()?;
    }
    if t.num_vertices() != n {
        return None;
    }
    let mut out: Vec<(usize, usize)> = t
        .undirected_edges()
        .map(|e| {
            let [a, b] = e.vertices();
            let (a, b) = (a.fix().index(), b.fix().index());
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort();
    Some(out)
}

/// Near-square grid with about `n` nodes, then random deletions that keep
/// the graph free of bridges.
fn grid(n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let cols = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(cols).max(2);
    let cols = cols.max(2);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.insert((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.insert((id(r, c), id(r + 1, c)));
            }
        }
    }
    let total = rows * cols;
    let mut list: Vec<(usize, usize)> = edges.iter().copied().collect();
    let attempts = list.len() / 3;
    for _ in 0..attempts {
        let i = rng.random_range(0..list.len());
        let removed = list.remove(i);
        if !bridge_free(total, &list) {
            list.insert(i, removed);
        }
    }
    Some(list)
}

fn bridge_free(n: usize, pairs: &[(usize, usize)]) -> bool {
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let edges: Vec<(usize, usize, i64)> = pairs.iter().map(|&(a, b)| (a, b, 1)).collect();
    match WeightedGraph::new(names, "n0", &edges, 1) {
        Ok(g) => {
            let (connected, br) = bridges(&g);
            connected && br.is_empty()
        }
        Err(_) => false,
    }
}

/// Hub 0 joined to a rim of `n - 1` nodes.
fn wheel(n: usize) -> Vec<(usize, usize)> {
    let rim = n - 1;
    let mut out = Vec::new();
    for i in 1..=rim {
        out.push((0, i));
        out.push((i, if i == rim { 1 } else { i + 1 }));
    }
    out
}
