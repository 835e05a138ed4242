use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cost::{edge_key, edge_key_signed, Key};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::path::{CycleWalk, PathSeq};

/// Single-source shortest paths under the exact key order. `allowed` filters edges.
pub fn dijkstra_keys(
    g: &WeightedGraph,
    src: NodeId,
    allowed: &dyn Fn(EdgeId) -> bool,
) -> (Vec<Option<Key>>, Vec<Option<EdgeId>>) {
    let n = g.node_count();
    let mut dist: Vec<Option<Key>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src.0] = Some(Key::zero());
    heap.push(Reverse((Key::zero(), src.0)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &e in g.incident(NodeId(v)) {
            if !allowed(e) {
                continue;
            }
            let w = g.edge(e).other(NodeId(v)).0;
            if done[w] {
                continue;
            }
            let cand = &d + edge_key(g, e);
            if dist[w].as_ref().is_none_or(|old| cand < *old) {
                dist[w] = Some(cand.clone());
                pred[w] = Some(e);
                heap.push(Reverse((cand, w)));
            }
        }
    }
    (dist, pred)
}

fn trace(g: &WeightedGraph, pred: &[Option<EdgeId>], a: NodeId, b: NodeId) -> Result<PathSeq> {
    let mut edges = Vec::new();
    let mut cur = b;
    while cur != a {
        let e = pred[cur.0].ok_or(Error::Unreachable(a, b))?;
        edges.push(e);
        cur = g.edge(e).other(cur);
    }
    edges.reverse();
    PathSeq::from_edges(g, a, &edges)
}

/// Unique minimum-key path from `a` to `b`.
pub fn shortest_path(g: &WeightedGraph, a: NodeId, b: NodeId) -> Result<PathSeq> {
    shortest_path_within(g, a, b, &|_| true)
}

pub fn shortest_path_within(
    g: &WeightedGraph,
    a: NodeId,
    b: NodeId,
    allowed: &dyn Fn(EdgeId) -> bool,
) -> Result<PathSeq> {
    let (dist, pred) = dijkstra_keys(g, a, allowed);
    if dist[b.0].is_none() {
        return Err(Error::Unreachable(a, b));
    }
    trace(g, &pred, a, b)
}

/// Plain shortest-path lengths from `src`.
pub fn distances(g: &WeightedGraph, src: NodeId) -> Vec<Option<i64>> {
    let n = g.node_count();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[src.0] = Some(0);
    heap.push(Reverse((0i64, src.0)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].is_some_and(|x| d > x) {
            continue;
        }
        for &e in g.incident(NodeId(v)) {
            let w = g.edge(e).other(NodeId(v)).0;
            let cand = d + g.len(e);
            if dist[w].is_none_or(|old| cand < old) {
                dist[w] = Some(cand);
                heap.push(Reverse((cand, w)));
            }
        }
    }
    dist
}

/// Two units of flow from `s` to `t` over unit-capacity arcs in both
/// directions of every edge (successive shortest paths, Bellman-Ford on the
/// residual network). Returns the cost and the per-arc flow, arc `2e` being
/// `u -> v` and arc `2e+1` being `v -> u`.
fn two_unit_flow<C>(g: &WeightedGraph, s: NodeId, t: NodeId, cost: &dyn Fn(EdgeId) -> C) -> Option<(C, Vec<bool>)>
where
    C: Clone + Ord + Zero + Add<Output = C> + Sub<Output = C> + Neg<Output = C>,
{
    let m = g.edge_count();
    let n = g.node_count();
    let costs: Vec<C> = (0..m).map(|e| cost(EdgeId(e))).collect();
    let mut flow = vec![false; 2 * m];
    let mut total = C::zero();
    for _ in 0..2 {
        let mut dist: Vec<Option<C>> = vec![None; n];
        // (arc used, whether it is a cancellation of the opposite arc)
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        dist[s.0] = Some(C::zero());
        for _ in 0..n {
            let mut changed = false;
            for e in g.edges() {
                if e.u == e.v {
                    continue;
                }
                let i = e.id.0;
                for (tail, head, fwd, back) in [(e.u, e.v, 2 * i, 2 * i + 1), (e.v, e.u, 2 * i + 1, 2 * i)] {
                    let Some(dt) = dist[tail.0].clone() else { continue };
                    // moving tail -> head either cancels flow on the opposite arc or uses the free arc
                    let step = if flow[back] {
                        Some((dt - costs[i].clone(), back, true))
                    } else if !flow[fwd] {
                        Some((dt + costs[i].clone(), fwd, false))
                    } else {
                        None
                    };
                    if let Some((cand, arc, cancel)) = step {
                        if dist[head.0].as_ref().is_none_or(|old| cand < *old) {
                            dist[head.0] = Some(cand);
                            pred[head.0] = Some((arc, cancel));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let d = dist[t.0].clone()?;
        total = total + d;
        let mut cur = t;
        while cur != s {
            let (arc, cancel) = pred[cur.0].unwrap();
            let e = g.edge(EdgeId(arc / 2));
            let (tail, head) = if arc % 2 == 0 { (e.u, e.v) } else { (e.v, e.u) };
            flow[arc] = !cancel;
            cur = if cancel { head } else { tail };
        }
    }
    for i in 0..m {
        if flow[2 * i] && flow[2 * i + 1] {
            flow[2 * i] = false;
            flow[2 * i + 1] = false;
        }
    }
    Some((total, flow))
}

/// Length of the shortest closed walk with distinct edges through `a` and `b`.
pub fn min_cycle_len_between(g: &WeightedGraph, a: NodeId, b: NodeId) -> Option<i64> {
    if a == b {
        return None;
    }
    two_unit_flow(g, a, b, &|e| g.len(e)).map(|(c, _)| c)
}

/// Minimum-key closed walk with distinct edges through `a` and `b`,
/// traversed from `a`.
pub fn min_cycle_between(g: &WeightedGraph, a: NodeId, b: NodeId) -> Result<CycleWalk> {
    if a == b {
        return Err(Error::NoCycle(a, b));
    }
    let (_, flow) = two_unit_flow::<BigInt>(g, a, b, &|e| edge_key_signed(g, e)).ok_or(Error::NoCycle(a, b))?;
    let mut out: Vec<Vec<(EdgeId, NodeId)>> = vec![Vec::new(); g.node_count()];
    for e in g.edges() {
        if flow[2 * e.id.0] {
            out[e.u.0].push((e.id, e.v));
        }
        if flow[2 * e.id.0 + 1] {
            out[e.v.0].push((e.id, e.u));
        }
    }
    for list in &mut out {
        list.sort();
        list.reverse();
    }
    let walk_path = |out: &mut Vec<Vec<(EdgeId, NodeId)>>| -> Result<Vec<EdgeId>> {
        let mut edges = Vec::new();
        let mut cur = a;
        while cur != b {
            let (e, w) = out[cur.0].pop().ok_or(Error::NoCycle(a, b))?;
            edges.push(e);
            cur = w;
        }
        Ok(edges)
    };
    let first = walk_path(&mut out)?;
    let mut second = walk_path(&mut out)?;
    second.reverse();
    let mut edges = first;
    edges.extend(second);
    CycleWalk::new(PathSeq::from_edges(g, a, &edges)?)
}

/// Serving cycle of `v`: the minimum-key cycle through `v` and the root, traversed from the root.
pub fn min_cycle_through(g: &WeightedGraph, v: NodeId) -> Result<CycleWalk> {
    min_cycle_between(g, g.root(), v)
}
