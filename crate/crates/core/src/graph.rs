use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: NodeId,
    pub v: NodeId,
    /// Length in units of `1 / denominator`.
    pub len: i64,
}

impl Edge {
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph with scaled-integer lengths and a root node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeId>>,
    root: NodeId,
    denominator: i64,
}

impl WeightedGraph {
    /// Builds a graph; edge `i` of `edges` gets id `i`.
    pub fn new(
        names: Vec<String>,
        root: &str,
        edges: &[(usize, usize, i64)],
        denominator: i64,
    ) -> Result<Self> {
        if denominator <= 0 {
            return Err(Error::MalformedInstance(format!(
                "denominator must be positive, got {denominator}"
            )));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), NodeId(i)).is_some() {
                return Err(Error::MalformedInstance(format!("duplicate node {name}")));
            }
        }
        let root = *index
            .get(root)
            .ok_or_else(|| Error::MalformedInstance(format!("root {root} is not a node")))?;
        let mut adj = vec![Vec::new(); names.len()];
        let mut list = Vec::with_capacity(edges.len());
        for (i, &(u, v, len)) in edges.iter().enumerate() {
            if u >= names.len() || v >= names.len() {
                return Err(Error::MalformedInstance(format!("edge {i} has an unknown endpoint")));
            }
            adj[u].push(EdgeId(i));
            if u != v {
                adj[v].push(EdgeId(i));
            }
            list.push(Edge { id: EdgeId(i), u: NodeId(u), v: NodeId(v), len });
        }
        Ok(Self { names, index, edges: list, adj, root, denominator })
    }

    /// Convenience constructor from named endpoints, used by built-in instances.
    pub fn from_named(
        names: &[&str],
        root: &str,
        edges: &[(&str, &str, i64)],
        denominator: i64,
    ) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let pos: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut list = Vec::with_capacity(edges.len());
        for (a, b, len) in edges {
            let (Some(&u), Some(&v)) = (pos.get(a), pos.get(b)) else {
                return Err(Error::MalformedInstance(format!("edge {a}-{b} has an unknown endpoint")));
            };
            list.push((u, v, *len));
        }
        Self::new(names, root, &list, denominator)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn len(&self, e: EdgeId) -> i64 {
        self.edges[e.0].len
    }

    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        &self.adj[v.0]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn total_len(&self, edges: &[EdgeId]) -> i64 {
        edges.iter().map(|&e| self.len(e)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub bridges: Vec<EdgeId>,
    pub negative: Vec<EdgeId>,
    pub self_loops: Vec<EdgeId>,
    /// Distinct unordered endpoint pairs, i.e. the edge count of the simple reduction.
    pub simple_edges: usize,
    /// `|E| <= 3|V| - 6` on the simple reduction (vacuous below three nodes).
    pub euler_ok: bool,
}

impl ValidationReport {
    pub fn two_edge_connected(&self) -> bool {
        self.connected && self.bridges.is_empty()
    }

    /// First hard error, if any. The Euler condition is reported but not fatal.
    pub fn check(&self) -> Result<()> {
        if let Some(&e) = self.self_loops.first() {
            return Err(Error::SelfLoop(e));
        }
        if let Some(&e) = self.negative.first() {
            return Err(Error::NegativeLength(e));
        }
        if !self.connected {
            return Err(Error::NotTwoEdgeConnected(None));
        }
        if let Some(&e) = self.bridges.first() {
            return Err(Error::NotTwoEdgeConnected(Some(e)));
        }
        Ok(())
    }
}

pub fn validate_graph(g: &WeightedGraph) -> ValidationReport {
    let self_loops: Vec<EdgeId> = g.edges.iter().filter(|e| e.u == e.v).map(|e| e.id).collect();
    let negative: Vec<EdgeId> = g.edges.iter().filter(|e| e.len < 0).map(|e| e.id).collect();
    let pairs: HashSet<(NodeId, NodeId)> = g
        .edges
        .iter()
        .filter(|e| e.u != e.v)
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    let n = g.node_count();
    let euler_ok = n < 3 || pairs.len() <= 3 * n - 6;
    let (connected, bridges) = bridges(g);
    ValidationReport { connected, bridges, negative, self_loops, simple_edges: pairs.len(), euler_ok }
}

/// Connectivity flag and bridge list via iterative low-link DFS.
/// Parallel edges are distinguished by id, so a doubled edge is never a bridge.
pub fn bridges(g: &WeightedGraph) -> (bool, Vec<EdgeId>) {
    let n = g.node_count();
    if n == 0 {
        return (true, Vec::new());
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (node, edge used to enter, next incident index)
    let mut stack: Vec<(usize, Option<EdgeId>, usize)> = Vec::new();
    let start = g.root.0;
    disc[start] = time;
    low[start] = time;
    time += 1;
    stack.push((start, None, 0));
    while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
        if *next < g.adj[v].len() {
            let e = g.adj[v][*next];
            *next += 1;
            if Some(e) == via {
                continue;
            }
            let w = g.edges[e.0].other(NodeId(v)).0;
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push((w, Some(e), 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                low[p] = low[p].min(low[v]);
                if low[v] > disc[p] {
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    (disc.iter().all(|&d| d != usize::MAX), out)
}
