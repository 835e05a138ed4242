//! Bound checks, cycle diameters and exhaustive oracles.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rayon::prelude::*;
use serde::Serialize;

use crate::cost::Ratio;
use crate::error::{Error, Result};
use crate::family::{build_families, CycleFamily};
use crate::graph::{validate_graph, NodeId, WeightedGraph};
use crate::orient::{check_properties, extract_diagnostics, orient_graph, Orientation, Oriented, PropertyViolation};
use crate::shortest::min_cycle_len_between;
use crate::uncross::cancel_crossings;

/// Arcs of an oriented graph, forwards and backwards.
#[derive(Debug, Clone)]
pub struct DirectedView<'a> {
    pub g: &'a WeightedGraph,
    out: Vec<Vec<(NodeId, i64)>>,
    inc: Vec<Vec<(NodeId, i64)>>,
}

impl<'a> DirectedView<'a> {
    pub fn new(g: &'a WeightedGraph, o: &Orientation) -> Self {
        let n = g.node_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in g.edges() {
            if let Some((t, h)) = o.arc(g, e.id) {
                out[t.0].push((h, e.len));
                inc[h.0].push((t, e.len));
            }
        }
        Self { g, out, inc }
    }

    fn dijkstra(adj: &[Vec<(NodeId, i64)>], src: NodeId) -> Vec<Option<i64>> {
        let mut dist = vec![None; adj.len()];
        let mut heap = BinaryHeap::from([Reverse((0i64, src))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v.0].is_some() {
                continue;
            }
            dist[v.0] = Some(d);
            for &(w, l) in &adj[v.0] {
                if dist[w.0].is_none() {
                    heap.push(Reverse((d + l, w)));
                }
            }
        }
        dist
    }

    /// Directed distances from `src`.
    pub fn distances_from(&self, src: NodeId) -> Vec<Option<i64>> {
        Self::dijkstra(&self.out, src)
    }

    /// Directed distances to `dst`.
    pub fn distances_to(&self, dst: NodeId) -> Vec<Option<i64>> {
        Self::dijkstra(&self.inc, dst)
    }
}

/// `dist(z, v) + dist(v, z)`.
pub fn directed_cycle_through(h: &DirectedView<'_>, v: NodeId) -> Result<i64> {
    let z = h.g.root();
    let from = h.distances_from(z);
    let to = h.distances_to(z);
    match (from[v.0], to[v.0]) {
        (Some(a), Some(b)) => Ok(a + b),
        _ => Err(Error::Unreachable(z, v)),
    }
}

/// Maximum over node pairs of the shortest closed walk with distinct edges
/// through both.
pub fn cycle_diameter(g: &WeightedGraph) -> Result<i64> {
    let n = g.node_count();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs
        .par_iter()
        .map(|&(a, b)| min_cycle_len_between(g, NodeId(a), NodeId(b)).ok_or(Error::NoCycle(NodeId(a), NodeId(b))))
        .try_reduce(|| 0, |x, y| Ok(x.max(y)))
}

/// Maximum over ordered pairs of `dist(u, v) + dist(v, u)`.
pub fn directed_cycle_diameter(h: &DirectedView<'_>) -> Result<i64> {
    let n = h.g.node_count();
    let all: Vec<Vec<Option<i64>>> = (0..n).map(|v| h.distances_from(NodeId(v))).collect();
    let mut best = 0;
    for u in 0..n {
        for v in u + 1..n {
            match (all[u][v], all[v][u]) {
                (Some(a), Some(b)) => best = best.max(a + b),
                _ => return Err(Error::NotStronglyConnected),
            }
        }
    }
    Ok(best)
}

/// Minimum directed cycle diameter over all orientations, with the witness of
/// smallest index. Reversing every edge keeps the diameter, so the first edge
/// is fixed `u -> v`.
pub fn oracle_opt_orientation(g: &WeightedGraph, max_edges: usize) -> Result<(i64, Vec<bool>)> {
    let m = g.edge_count();
    if m > max_edges {
        return Err(Error::TooLarge(m, max_edges));
    }
    if m == 0 {
        return Err(Error::NotStronglyConnected);
    }
    let to_bools = |mask: u64| -> Vec<bool> { (0..m).map(|i| mask >> i & 1 == 0).collect() };
    let best = (0..1u64 << (m - 1))
        .into_par_iter()
        .filter_map(|half| {
            let mask = half << 1;
            let o = Orientation::from_bools(&to_bools(mask));
            directed_cycle_diameter(&DirectedView::new(g, &o)).ok().map(|d| (d, mask))
        })
        .min();
    best.map(|(d, mask)| (d, to_bools(mask))).ok_or(Error::NotStronglyConnected)
}

/// Shortest closed walk with distinct edges through `u` and `v`, by pairing
/// edge-disjoint simple paths. `None` when no such walk exists.
pub fn oracle_min_cycle(g: &WeightedGraph, u: NodeId, v: NodeId, node_bound: usize) -> Result<Option<i64>> {
    if g.node_count() > node_bound {
        return Err(Error::TooLarge(g.node_count(), node_bound));
    }
    if u == v {
        return Ok(None);
    }
    let mut paths: Vec<(i64, Vec<bool>)> = Vec::new();
    let mut used = vec![false; g.edge_count()];
    let mut seen = vec![false; g.node_count()];
    fn dfs(
        g: &WeightedGraph,
        cur: NodeId,
        target: NodeId,
        len: i64,
        used: &mut Vec<bool>,
        seen: &mut Vec<bool>,
        out: &mut Vec<(i64, Vec<bool>)>,
    ) {
        if cur == target {
            out.push((len, used.clone()));
            return;
        }
        seen[cur.0] = true;
        for &e in g.incident(cur) {
            let w = g.edge(e).other(cur);
            if !seen[w.0] {
                used[e.0] = true;
                dfs(g, w, target, len + g.len(e), used, seen, out);
                used[e.0] = false;
            }
        }
        seen[cur.0] = false;
    }
    dfs(g, u, v, 0, &mut used, &mut seen, &mut paths);
    paths.sort_by_key(|p| p.0);
    let mut best: Option<i64> = None;
    for (i, (la, a)) in paths.iter().enumerate() {
        if best.is_some_and(|b| 2 * la >= b) {
            break;
        }
        for (lb, b) in &paths[i + 1..] {
            if best.is_some_and(|x| la + lb >= x) {
                break;
            }
            if a.iter().zip(b).all(|(x, y)| !(*x && *y)) {
                best = Some(la + lb);
            }
        }
    }
    Ok(best)
}

/// Per-node chain of serving-cycle lengths and the directed cycle through the root.
#[derive(Debug, Clone, Serialize)]
pub struct NodeBound {
    pub node: String,
    /// `l(C*(v))`, `l(C_afterUncross(v))`, `l(C_final(v))`.
    pub c_star: i64,
    pub c_after: i64,
    pub c_final: i64,
    pub directed: Option<i64>,
    pub r9: Ratio,
    pub growth: Ratio,
    pub r27: Ratio,
    pub r405: Option<Ratio>,
}

/// Directed closed walk through the root and the served nodes of a final cycle.
#[derive(Debug, Clone, Serialize)]
pub struct CycleBound {
    pub family: usize,
    pub cycle: usize,
    pub len: i64,
    pub walk: Option<i64>,
    pub r15: Option<Ratio>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub nodes: usize,
    pub edges: usize,
    pub families: usize,
    pub rewrites: usize,
    pub d_g: i64,
    pub d_h: Option<i64>,
    pub d_opt: Option<i64>,
    pub ratio1620: Option<Ratio>,
    pub max_r9: Ratio,
    pub max_growth: Ratio,
    pub max_r27: Ratio,
    pub max_r405: Option<Ratio>,
    pub max_r15: Option<Ratio>,
    pub per_node: Vec<NodeBound>,
    pub per_cycle: Vec<CycleBound>,
    pub unreachable: Vec<String>,
    pub properties: Vec<PropertyViolation>,
    pub broken_i: usize,
    pub notes: BTreeMap<String, usize>,
    /// Every failed check, in words. Empty on a passing run.
    pub violations: Vec<String>,
    #[serde(skip)]
    pub orientation: Option<Orientation>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    /// Run the exhaustive optimum when the graph has at most this many edges.
    pub oracle_max_edges: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { oracle_max_edges: 14 }
    }
}

/// Everything the pipeline produces for one graph.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub original: Vec<CycleFamily>,
    pub uncrossed: Vec<CycleFamily>,
    pub rewrites: usize,
    pub orientation: Orientation,
    pub oriented: Vec<Oriented>,
}

/// Families, crossing removal and orientation.
pub fn run_pipeline(g: &WeightedGraph) -> Result<Pipeline> {
    validate_graph(g).check()?;
    let original = build_families(g)?;
    let mut uncrossed = Vec::with_capacity(original.len());
    let mut rewrites = 0;
    for f in &original {
        let u = cancel_crossings(g, f)?;
        rewrites += u.stats.rewrites;
        uncrossed.push(u.family);
    }
    let (orientation, oriented) = orient_graph(g, &uncrossed)?;
    Ok(Pipeline { original, uncrossed, rewrites, orientation, oriented })
}

fn serving_len(fams: &[CycleFamily], v: NodeId) -> Option<i64> {
    fams.iter().find_map(|f| f.serving_cycle(v).map(|c| c.len()))
}

/// Directed closed walk from the root through `nodes` in the given order and back.
fn walk_through(from: &[Vec<Option<i64>>], z: NodeId, nodes: &[NodeId]) -> Option<i64> {
    let mut total = 0;
    let mut cur = z;
    for &v in nodes.iter().chain(std::iter::once(&z)) {
        total += from[cur.0][v.0]?;
        cur = v;
    }
    Some(total)
}

/// Runs the pipeline and checks every bound.
pub fn full_report(g: &WeightedGraph, opts: ReportOptions) -> Result<BoundReport> {
    let p = run_pipeline(g)?;
    let z = g.root();
    let h = DirectedView::new(g, &p.orientation);
    let n = g.node_count();
    let from: Vec<Vec<Option<i64>>> = (0..n).map(|v| h.distances_from(NodeId(v))).collect();
    let mut violations = Vec::new();
    let d_g = cycle_diameter(g)?;
    let final_fams: Vec<CycleFamily> = p.oriented.iter().map(|o| o.family.clone()).collect();

    let mut per_node = Vec::new();
    let mut unreachable = Vec::new();
    for v in g.nodes().filter(|&v| v != z) {
        let c_star = serving_len(&p.original, v).ok_or(Error::NoCycle(z, v))?;
        let c_after = serving_len(&p.uncrossed, v).ok_or(Error::NoCycle(z, v))?;
        let c_final = serving_len(&final_fams, v).ok_or(Error::NoCycle(z, v))?;
        let directed = match (from[z.0][v.0], from[v.0][z.0]) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        if directed.is_none() {
            unreachable.push(g.name(v).to_string());
        }
        let nb = NodeBound {
            node: g.name(v).to_string(),
            c_star,
            c_after,
            c_final,
            directed,
            r9: Ratio::new(c_after, c_star),
            growth: Ratio::new(c_final, c_after),
            r27: Ratio::new(c_final, c_star),
            r405: directed.map(|d| Ratio::new(d, c_star)),
        };
        let name = &nb.node;
        if !nb.r9.at_most(9) {
            violations.push(format!("node {name}: after/original = {}/{} > 9", c_after, c_star));
        }
        if !nb.growth.at_most(3) {
            violations.push(format!("node {name}: final/after = {}/{} > 3", c_final, c_after));
        }
        if !nb.r27.at_most(27) {
            violations.push(format!("node {name}: final/original = {}/{} > 27", c_final, c_star));
        }
        if let Some(r) = nb.r405 {
            if !r.at_most(405) {
                violations.push(format!("node {name}: directed/original = {}/{} > 405", r.num, r.den));
            }
        }
        if c_star > d_g {
            violations.push(format!("node {name}: serving cycle {c_star} exceeds cycle diameter {d_g}"));
        }
        per_node.push(nb);
    }
    for name in &unreachable {
        violations.push(format!("node {name} has no directed cycle through the root"));
    }

    let mut per_cycle = Vec::new();
    let mut properties = Vec::new();
    let mut broken_i = 0;
    let mut notes: BTreeMap<String, usize> = BTreeMap::new();
    for (fi, o) in p.oriented.iter().enumerate() {
        for (k, v) in &o.notes {
            *notes.entry(k.clone()).or_default() += v;
        }
        properties.extend(check_properties(o));
        broken_i += extract_diagnostics(g, o).broken.len();
        for c in &o.family.cycles {
            if c.served.is_empty() {
                continue;
            }
            let mut order: Vec<NodeId> = c.served.clone();
            order.sort_by_key(|v| c.ps.position(*v));
            let fwd = walk_through(&from, z, &order);
            order.reverse();
            let bwd = walk_through(&from, z, &order);
            let walk = match (fwd, bwd) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let r15 = walk.map(|w| Ratio::new(w, c.len()));
            match r15 {
                Some(r) if !r.at_most(15) => {
                    violations.push(format!("family {fi} cycle {}: directed walk {}/{} > 15", c.id, r.num, r.den))
                }
                None => violations.push(format!("family {fi} cycle {}: no directed walk through its served nodes", c.id)),
                _ => {}
            }
            per_cycle.push(CycleBound { family: fi, cycle: c.id, len: c.len(), walk, r15 });
        }
    }
    for pv in &properties {
        violations.push(format!("property {} violated by cycles {:?}", pv.property, pv.cycles));
    }

    let d_h = directed_cycle_diameter(&h).ok();
    let d_opt = if g.edge_count() <= opts.oracle_max_edges {
        Some(oracle_opt_orientation(g, opts.oracle_max_edges)?.0)
    } else {
        None
    };
    let ratio1620 = match (d_h, d_opt) {
        (Some(a), Some(b)) => Some(Ratio::new(a, b)),
        _ => None,
    };
    if let Some(r) = ratio1620 {
        if !r.at_most(1620) {
            violations.push(format!("directed diameter {}/{} > 1620 times the optimum", r.num, r.den));
        }
    }
    let max = |it: &mut dyn Iterator<Item = Ratio>| it.max().unwrap_or(Ratio::one());
    Ok(BoundReport {
        nodes: n,
        edges: g.edge_count(),
        families: p.original.len(),
        rewrites: p.rewrites,
        d_g,
        d_h,
        d_opt,
        ratio1620,
        max_r9: max(&mut per_node.iter().map(|b| b.r9)),
        max_growth: max(&mut per_node.iter().map(|b| b.growth)),
        max_r27: max(&mut per_node.iter().map(|b| b.r27)),
        max_r405: per_node.iter().map(|b| b.r405).collect::<Option<Vec<_>>>().map(|v| max(&mut v.into_iter())),
        max_r15: per_cycle.iter().map(|b| b.r15).collect::<Option<Vec<_>>>().map(|v| max(&mut v.into_iter())),
        per_node,
        per_cycle,
        unreachable,
        properties,
        broken_i,
        notes,
        violations,
        orientation: Some(p.orientation),
    })
}
