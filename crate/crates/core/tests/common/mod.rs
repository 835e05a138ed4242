//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the crate's search code.

#![allow(dead_code)]

use planar_orient::generate::{generate, GenSpec, Lengths, Model};
use planar_orient::{EdgeId, NodeId, WeightedGraph};

/// Every node-simple path from `a` to `b`, as edge lists.
pub fn simple_paths(g: &WeightedGraph, a: NodeId, b: NodeId) -> Vec<Vec<EdgeId>> {
    fn go(g: &WeightedGraph, cur: NodeId, b: NodeId, seen: &mut Vec<bool>, path: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if cur == b {
            out.push(path.clone());
            return;
        }
        for e in g.edges() {
            let next = if e.u == cur {
                e.v
            } else if e.v == cur {
                e.u
            } else {
                continue;
            };
            if seen[next.0] {
                continue;
            }
            seen[next.0] = true;
            path.push(e.id);
            go(g, next, b, seen, path, out);
            path.pop();
            seen[next.0] = false;
        }
    }
    let mut seen = vec![false; g.node_count()];
    seen[a.0] = true;
    let mut out = Vec::new();
    go(g, a, b, &mut seen, &mut Vec::new(), &mut out);
    out
}

pub fn total(g: &WeightedGraph, edges: &[EdgeId]) -> i64 {
    edges.iter().map(|&e| g.edge(e).len).sum()
}

/// Shortest pair of edge-disjoint `a`-`b` paths, by enumeration.
pub fn enum_min_cycle(g: &WeightedGraph, a: NodeId, b: NodeId) -> Option<i64> {
    let paths = simple_paths(g, a, b);
    let mut best: Option<i64> = None;
    for (i, p) in paths.iter().enumerate() {
        for q in &paths[i + 1..] {
            if p.iter().any(|e| q.contains(e)) {
                continue;
            }
            let l = total(g, p) + total(g, q);
            best = Some(best.map_or(l, |x| x.min(l)));
        }
    }
    best
}

/// All-pairs directed distances; `forward[e]` means u→v.
pub fn floyd(g: &WeightedGraph, forward: &[bool]) -> Vec<Vec<Option<i64>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for e in g.edges() {
        let (s, t) = if forward[e.id.0] { (e.u, e.v) } else { (e.v, e.u) };
        let cur = d[s.0][t.0];
        if cur.is_none_or(|c| e.len < c) {
            d[s.0][t.0] = Some(e.len);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Max over node pairs of the shortest directed closed walk through both.
pub fn directed_diameter(d: &[Vec<Option<i64>>]) -> Option<i64> {
    let n = d.len();
    let mut best = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                best = best.max(d[i][j]? + d[j][i]?);
            }
        }
    }
    Some(best)
}

/// Optimal directed cycle diameter over all `2^m` orientations.
pub fn brute_d_opt(g: &WeightedGraph) -> Option<i64> {
    let m = g.edge_count();
    (0u64..1 << m)
        .filter_map(|mask| {
            let dirs: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            directed_diameter(&floyd(g, &dirs))
        })
        .min()
}

pub fn corpus_spec(i: u64) -> GenSpec {
    let model = match i % 3 {
        0 => Model::Delaunay,
        1 => Model::GridWithDeletions,
        _ => Model::Wheel,
    };
    let n = 4 + (i as usize * 7) % 37;
    let lengths = if i % 2 == 0 { Lengths::Unit } else { Lengths::Uniform(9) };
    GenSpec::new(model, n, i, lengths)
}

/// Small instances for the enumeration oracles.
pub fn small_graphs() -> Vec<WeightedGraph> {
    let mut out = Vec::new();
    for i in 0..40u64 {
        let model = [Model::Delaunay, Model::GridWithDeletions, Model::Wheel][(i % 3) as usize];
        let n = 4 + (i as usize % 7);
        let lengths = if i % 2 == 0 { Lengths::Unit } else { Lengths::Uniform(5) };
        if let Ok(g) = generate(&GenSpec::new(model, n, i, lengths)) {
            if g.node_count() <= 10 {
                out.push(g);
            }
        }
    }
    out
}

pub fn k4() -> WeightedGraph {
    WeightedGraph::from_named(
        &["z", "a", "b", "c"],
        "z",
        &[("z", "a", 1), ("z", "b", 1), ("z", "c", 1), ("a", "b", 1), ("b", "c", 1), ("c", "a", 1)],
        1,
    )
    .unwrap()
}
