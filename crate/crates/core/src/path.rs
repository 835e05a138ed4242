use std::collections::HashSet;

use crate::cost::{set_key, Key};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};

/// Walk with pairwise distinct edges. Nodes may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathSeq {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    pub len: i64,
}

impl PathSeq {
    pub fn single(v: NodeId) -> Self {
        Self { nodes: vec![v], edges: Vec::new(), len: 0 }
    }

    /// Follows `edges` from `start`. Fails if an edge is not incident to the
    /// current node or an edge repeats.
    pub fn from_edges(g: &WeightedGraph, start: NodeId, edges: &[EdgeId]) -> Result<Self> {
        let mut nodes = Vec::with_capacity(edges.len() + 1);
        nodes.push(start);
        let mut seen = HashSet::with_capacity(edges.len());
        let mut cur = start;
        let mut len = 0;
        for &e in edges {
            let edge = g.edge(e);
            if !seen.insert(e) || (edge.u != cur && edge.v != cur) {
                return Err(Error::MalformedInstance(format!("edge {} does not continue the walk", e.0)));
            }
            cur = edge.other(cur);
            nodes.push(cur);
            len += edge.len;
        }
        Ok(Self { nodes, edges: edges.to_vec(), len })
    }

    /// Follows a node sequence, picking the smallest-id edge between consecutive nodes.
    pub fn from_nodes(g: &WeightedGraph, nodes: &[NodeId]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut used = HashSet::new();
        for w in nodes.windows(2) {
            let e = g
                .incident(w[0])
                .iter()
                .copied()
                .filter(|&e| g.edge(e).other(w[0]) == w[1] && !used.contains(&e))
                .min()
                .ok_or_else(|| Error::MalformedInstance(format!("no edge {}-{}", g.name(w[0]), g.name(w[1]))))?;
            used.insert(e);
            edges.push(e);
        }
        Self::from_edges(g, nodes[0], &edges)
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Self { nodes, edges, len: self.len }
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }

    pub fn position(&self, v: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&x| x == v)
    }

    pub fn edge_set(&self) -> HashSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    /// Nodes `i..=j` (node positions); reversed when `j < i`.
    pub fn slice(&self, g: &WeightedGraph, i: usize, j: usize) -> Self {
        if i <= j {
            let edges = self.edges[i..j].to_vec();
            let len = g.total_len(&edges);
            Self { nodes: self.nodes[i..=j].to_vec(), edges, len }
        } else {
            self.slice(g, j, i).reversed()
        }
    }

    /// Subpath between the first occurrences of `a` and `b`, oriented from `a` to `b`.
    pub fn subpath(&self, g: &WeightedGraph, a: NodeId, b: NodeId) -> Result<Self> {
        let i = self.position(a).ok_or(Error::NodeNotOnPath(a))?;
        let j = self.position(b).ok_or(Error::NodeNotOnPath(b))?;
        Ok(self.slice(g, i, j))
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.last() != other.first() {
            return Err(Error::MalformedInstance("concatenated walks do not meet".into()));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        let distinct: HashSet<_> = edges.iter().collect();
        if distinct.len() != edges.len() {
            return Err(Error::MalformedInstance("concatenation repeats an edge".into()));
        }
        Ok(Self { nodes, edges, len: self.len + other.len })
    }

    pub fn key(&self, g: &WeightedGraph) -> Key {
        set_key(g, &self.edges)
    }
}

/// Closed walk with distinct edges: the notion of cycle used throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleWalk {
    pub walk: PathSeq,
}

impl CycleWalk {
    pub fn new(walk: PathSeq) -> Result<Self> {
        if !walk.is_closed() || walk.edges.is_empty() {
            return Err(Error::MalformedInstance("walk is not closed".into()));
        }
        Ok(Self { walk })
    }

    pub fn from_nodes(g: &WeightedGraph, nodes: &[NodeId]) -> Result<Self> {
        Self::new(PathSeq::from_nodes(g, nodes)?)
    }

    pub fn len(&self) -> i64 {
        self.walk.len
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.walk.edges
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.walk.nodes
    }

    pub fn key(&self, g: &WeightedGraph) -> Key {
        self.walk.key(g)
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.walk.contains_node(v)
    }

    pub fn sorted_edges(&self) -> Vec<EdgeId> {
        let mut e = self.walk.edges.clone();
        e.sort();
        e
    }

    /// Same cycle traversed from the first occurrence of `v`.
    pub fn rotated_to(&self, v: NodeId) -> Result<Self> {
        let i = self.walk.position(v).ok_or(Error::NodeNotOnPath(v))?;
        Ok(self.rotated(i))
    }

    pub fn rotated(&self, i: usize) -> Self {
        let k = self.walk.edges.len();
        let i = i % k;
        let mut nodes: Vec<NodeId> = self.walk.nodes[i..k].to_vec();
        nodes.extend_from_slice(&self.walk.nodes[..=i]);
        let mut edges = self.walk.edges[i..].to_vec();
        edges.extend_from_slice(&self.walk.edges[..i]);
        Self { walk: PathSeq { nodes, edges, len: self.walk.len } }
    }

    pub fn reversed(&self) -> Self {
        Self { walk: self.walk.reversed() }
    }

    /// Representative independent of starting point and direction: starts at
    /// the smallest edge id and continues towards its smaller neighbouring id.
    pub fn canonical(&self) -> Self {
        let k = self.walk.edges.len();
        let (i, _) = self.walk.edges.iter().enumerate().min_by_key(|(_, e)| **e).unwrap();
        let fwd = self.rotated(i);
        if k < 3 {
            let first_node = fwd.walk.nodes[0].min(fwd.walk.nodes[1]);
            return if fwd.walk.nodes[0] == first_node { fwd } else { fwd.reversed().rotated(k - 1) };
        }
        let next = self.walk.edges[(i + 1) % k];
        let prev = self.walk.edges[(i + k - 1) % k];
        if next < prev {
            fwd
        } else {
            // reversing the rotation that ends with the smallest edge puts it first
            self.rotated(i + 1).reversed()
        }
    }
}

/// Result of `E(p) \ E(q)` for a walk `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Difference {
    Empty,
    Path(PathSeq),
    Cycle(PathSeq),
    /// Edges that do not form a single contiguous piece of `p`.
    Edges(Vec<EdgeId>),
}

/// Edge-set difference, returned as a path when it is one contiguous piece of
/// `p` (cyclically when `p` is closed).
pub fn path_difference(g: &WeightedGraph, p: &PathSeq, q: &PathSeq) -> Difference {
    let remove = q.edge_set();
    let keep: Vec<bool> = p.edges.iter().map(|e| !remove.contains(e)).collect();
    let k = keep.len();
    let kept = keep.iter().filter(|&&b| b).count();
    if kept == 0 {
        return Difference::Empty;
    }
    if kept == k {
        return if p.is_closed() { Difference::Cycle(p.clone()) } else { Difference::Path(p.clone()) };
    }
    let closed = p.is_closed();
    // start of a run: kept edge whose predecessor is removed (or the first edge of an open walk)
    let starts: Vec<usize> = (0..k)
        .filter(|&i| keep[i] && if i == 0 { closed && !keep[k - 1] || !closed } else { !keep[i - 1] })
        .collect();
    let edges: Vec<EdgeId> = p.edges.iter().zip(&keep).filter(|(_, &b)| b).map(|(e, _)| *e).collect();
    if starts.len() != 1 {
        return Difference::Edges(edges);
    }
    let s = starts[0];
    let mut run = Vec::with_capacity(kept);
    let mut i = s;
    while keep[i] && run.len() < kept {
        run.push(p.edges[i]);
        i = if closed { (i + 1) % k } else { i + 1 };
        if i >= k {
            break;
        }
    }
    match PathSeq::from_edges(g, p.nodes[s], &run) {
        Ok(path) if path.is_closed() && !path.edges.is_empty() => Difference::Cycle(path),
        Ok(path) => Difference::Path(path),
        Err(_) => Difference::Edges(edges),
    }
}
