//! Crossing brothers and the rewriting that removes not-very-heavy outer
//! crossings, one processed father at a time.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use serde_json::json;

use crate::cost::Ratio;
use crate::error::{Error, Result};
use crate::family::{grow, meet, Attachment, CycleFamily, CycleId, Work};
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::path::{CycleWalk, PathSeq};
use crate::shortest::shortest_path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingKind {
    Inner,
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingRecord {
    /// Left cycle (its span starts first), right cycle.
    pub pair: (CycleId, CycleId),
    pub x: NodeId,
    pub kind: CrossingKind,
    pub nvh: bool,
}

/// A cycle below a father, with its span along the father's son path.
#[derive(Debug, Clone)]
pub(crate) struct Spanned<'a> {
    pub id: usize,
    pub walk: &'a CycleWalk,
    pub c_ps: (usize, usize),
    pub lo: usize,
    pub hi: usize,
    pub served: Vec<NodeId>,
}

/// Geometry of one crossing pair. `p1`/`q1` run from `x` to the outer and
/// inner end of the left cycle, `p2`/`q2` likewise for the right cycle.
#[derive(Debug, Clone)]
pub(crate) struct Cross {
    pub x: NodeId,
    pub p1: PathSeq,
    pub q1: PathSeq,
    pub p2: PathSeq,
    pub q2: PathSeq,
    pub kind: CrossingKind,
    pub nvh: bool,
}

fn split_at(g: &WeightedGraph, c: &Spanned<'_>, x: NodeId, outer_end: NodeId) -> (PathSeq, PathSeq) {
    let (s, t) = c.c_ps;
    let nodes = c.walk.nodes();
    let ix = (s..=t).find(|&i| nodes[i] == x).expect("cross-node lies on the son path");
    if nodes[s] == outer_end {
        (c.walk.walk.slice(g, ix, s), c.walk.walk.slice(g, ix, t))
    } else {
        (c.walk.walk.slice(g, ix, t), c.walk.walk.slice(g, ix, s))
    }
}

fn span_len(g: &WeightedGraph, pwalk: &CycleWalk, pr: (usize, usize), lo: usize, hi: usize) -> i64 {
    g.total_len(&pwalk.edges()[pr.0 + lo..pr.0 + hi])
}

/// Crossing of `a` (left) and `b` (right) with respect to the father walk;
/// `None` unless the spans interleave strictly at four distinct nodes and the
/// two cycles share a node off the father.
pub(crate) fn crossing(
    g: &WeightedGraph,
    pwalk: &CycleWalk,
    pr: (usize, usize),
    a: &Spanned<'_>,
    b: &Spanned<'_>,
) -> Result<Option<Cross>> {
    if !(a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) {
        return Ok(None);
    }
    let pn = pwalk.nodes();
    let ends: HashSet<NodeId> = [a.lo, b.lo, a.hi, b.hi].iter().map(|&i| pn[pr.0 + i]).collect();
    if ends.len() < 4 {
        // both outer ends are the root at the two ends of the root cycle
        return Ok(None);
    }
    let on_parent: HashSet<NodeId> = pwalk.nodes().iter().copied().collect();
    let on_b: HashSet<NodeId> = b.walk.nodes().iter().copied().collect();
    // son paths on opposite sides of the father interleave without meeting
    let Some(x) = a.walk.nodes().iter().copied().filter(|v| !on_parent.contains(v) && on_b.contains(v)).min() else {
        return Ok(None);
    };
    let (k, h) = (pn[pr.0 + a.lo], pn[pr.0 + b.hi]);
    let (p1, q1) = split_at(g, a, x, k);
    let (p2, q2) = split_at(g, b, x, h);
    let within = |set: &[NodeId], p: &PathSeq| set.iter().all(|v| p.contains_node(*v));
    let outer = within(&a.served, &p1) && within(&b.served, &p2);
    let inner = within(&a.served, &q1) && within(&b.served, &q2);
    // served sets split across both sides are reported as outer
    let kind = if inner && !outer { CrossingKind::Inner } else { CrossingKind::Outer };
    let ps_len = span_len(g, pwalk, pr, 0, pr.1 - pr.0);
    let widest = span_len(g, pwalk, pr, a.lo, a.hi).max(span_len(g, pwalk, pr, b.lo, b.hi));
    let nvh = outer && 3 * widest <= 2 * ps_len;
    Ok(Some(Cross { x, p1, q1, p2, q2, kind, nvh }))
}

/// Crossing pairs among the sons of `parent` in a finished family.
pub fn detect_crossings(g: &WeightedGraph, fam: &CycleFamily, parent: CycleId) -> Result<Vec<CrossingRecord>> {
    let p = fam.cycle(parent);
    let spans: Vec<Spanned<'_>> = p
        .sons
        .iter()
        .filter_map(|&s| {
            let c = fam.cycle(s);
            match c.attach {
                Attachment::Span { lo, hi } => Some(Spanned {
                    id: s,
                    walk: &c.cycle,
                    c_ps: c.ps_range,
                    lo,
                    hi,
                    served: c.served.clone(),
                }),
                _ => None,
            }
        })
        .collect();
    let mut out = Vec::new();
    for a in &spans {
        for b in &spans {
            if let Some(c) = crossing(g, &p.cycle, p.ps_range, a, b)? {
                out.push(CrossingRecord { pair: (a.id, b.id), x: c.x, kind: c.kind, nvh: c.nvh });
            }
        }
    }
    out.sort_by_key(|r| r.pair);
    Ok(out)
}

/// Shortcut bookkeeping: `SC(C)` per cycle lives in the family; this keeps
/// every shortcut edge with the processing step that created it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShortcutLedger {
    pub created: BTreeMap<EdgeId, usize>,
    /// Every shortcut path as created, for the shortest-path check.
    pub paths: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UncrossStats {
    pub rewrites: usize,
    /// Pairs whose rewrite would repeat an edge or break the father intersection.
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct Uncrossed {
    pub family: CycleFamily,
    pub ledger: ShortcutLedger,
    pub stats: UncrossStats,
    /// One JSON object per processed pair.
    pub trace: Vec<serde_json::Value>,
}

/// Maximal suffix of `p` made of shortcut edges created before `step`.
fn r_len(g: &WeightedGraph, p: &PathSeq, ledger: &ShortcutLedger, step: usize) -> i64 {
    let mut len = 0;
    for &e in p.edges.iter().rev() {
        match ledger.created.get(&e) {
            Some(&s) if s < step => len += g.len(e),
            _ => break,
        }
    }
    len
}

fn cost(g: &WeightedGraph, p: &PathSeq, ledger: &ShortcutLedger, step: usize) -> i64 {
    2 * p.len - r_len(g, p, ledger, step)
}

/// Position of `v` on the father walk within `[from, to]`.
fn position_in(pwalk: &CycleWalk, from: usize, to: usize, v: NodeId) -> Option<usize> {
    (from..=to).find(|&i| pwalk.nodes()[i] == v)
}

/// Candidate set for one side: the inner path of the starting cycle plus the
/// alternating chain of further not-very-heavy outer crossings.
#[allow(clippy::too_many_arguments)]
fn chain_candidates(
    g: &WeightedGraph,
    pwalk: &CycleWalk,
    pr: (usize, usize),
    spans: &[Spanned<'_>],
    nvh: &BTreeMap<(usize, usize), Cross>,
    start: usize,
    first: PathSeq,
    first_right: bool,
    window: (usize, usize),
) -> Vec<PathSeq> {
    let x = first.first();
    let mut out = vec![first];
    let mut visited: BTreeSet<usize> = BTreeSet::from([start]);
    // (cycle index, its candidate path; for the start cycle the son path is used)
    let mut frontier: Vec<(usize, Option<PathSeq>)> = vec![(start, None)];
    let mut right = first_right;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (ci, via) in &frontier {
            for (&(l, r), cr) in nvh {
                let other = if right && l == *ci {
                    r
                } else if !right && r == *ci {
                    l
                } else {
                    continue;
                };
                if visited.contains(&other) {
                    continue;
                }
                let tail = if right { &cr.q2 } else { &cr.q1 };
                let prefix = match via {
                    None => {
                        let c = &spans[*ci];
                        let nodes = c.walk.nodes();
                        let find = |v: NodeId| (c.c_ps.0..=c.c_ps.1).find(|&i| nodes[i] == v);
                        match (find(x), find(cr.x)) {
                            (Some(i), Some(j)) => c.walk.walk.slice(g, i, j),
                            _ => continue,
                        }
                    }
                    Some(p) => match p.position(cr.x) {
                        Some(j) => p.slice(g, 0, j),
                        None => continue,
                    },
                };
                let Ok(path) = prefix.concat(tail) else { continue };
                if position_in(pwalk, pr.0 + window.0, pr.0 + window.1, path.last()).is_none() {
                    continue;
                }
                visited.insert(other);
                out.push(path.clone());
                next.push((other, Some(path)));
            }
        }
        frontier = next;
        right = !right;
    }
    out
}

fn minus(sc: &BTreeMap<EdgeId, usize>, p: &HashSet<EdgeId>) -> BTreeMap<EdgeId, usize> {
    sc.iter().filter(|(e, _)| !p.contains(e)).map(|(&e, &s)| (e, s)).collect()
}

fn with(mut sc: BTreeMap<EdgeId, usize>, add: impl IntoIterator<Item = EdgeId>, step: usize) -> BTreeMap<EdgeId, usize> {
    for e in add {
        sc.entry(e).or_insert(step);
    }
    sc
}

/// Runs the hereditary construction again, removing not-very-heavy outer
/// crossings below each father before its sons are fixed.
pub fn cancel_crossings(g: &WeightedGraph, fam: &CycleFamily) -> Result<Uncrossed> {
    let list = fam
        .cycles
        .iter()
        .map(|c| (c.cycle.clone(), c.served.iter().copied().collect::<BTreeSet<_>>()))
        .collect();
    let mut ledger = ShortcutLedger::default();
    let mut stats = UncrossStats::default();
    let mut trace = Vec::new();
    let family = grow(g, Work::new(g, list), &mut |g, work, p, bucket| {
        process_father(g, work, p, bucket, &mut ledger, &mut stats, &mut trace)
    })
    .map_err(|e| match e {
        // a rewritten closed trail can meet a later descendant in two paths
        Error::MalformedIntersection { cycle, parent } => Error::UnsupportedInstance(format!(
            "uncrossing left cycle {cycle} meeting {parent} in more than one path"
        )),
        e => e,
    })?;
    Ok(Uncrossed { family, ledger, stats, trace })
}

fn process_father(
    g: &WeightedGraph,
    work: &mut Work,
    p: usize,
    bucket: &mut Vec<usize>,
    ledger: &mut ShortcutLedger,
    stats: &mut UncrossStats,
    trace: &mut Vec<serde_json::Value>,
) -> Result<()> {
    let pwalk = work.cycles[p].walk.clone();
    let pr = work.ps_range(p);
    let mut done: HashSet<(Vec<EdgeId>, Vec<EdgeId>)> = HashSet::new();
    // each rewrite removes one pair for good, so this bound is never the exit in practice
    let limit = 4 * bucket.len() * bucket.len() + 16;
    for _ in 0..limit {
        bucket.retain(|&c| work.cycles[c].alive);
        let spans: Vec<Spanned<'_>> = bucket
            .iter()
            .filter_map(|&c| {
                let wc = &work.cycles[c];
                let m = meet(&pwalk, pr, &wc.walk)?;
                match m.attach {
                    Attachment::Span { lo, hi } => Some(Spanned {
                        id: c,
                        walk: &wc.walk,
                        c_ps: m.c_ps,
                        lo,
                        hi,
                        served: wc.served.iter().copied().collect(),
                    }),
                    _ => None,
                }
            })
            .collect();
        let mut nvh: BTreeMap<(usize, usize), Cross> = BTreeMap::new();
        for (i, a) in spans.iter().enumerate() {
            for (j, b) in spans.iter().enumerate() {
                if let Some(c) = crossing(g, &pwalk, pr, a, b)? {
                    if c.nvh {
                        nvh.insert((i, j), c);
                    }
                }
            }
        }
        let pick = nvh
            .keys()
            .filter(|&&(i, j)| !done.contains(&(spans[i].walk.sorted_edges(), spans[j].walk.sorted_edges())))
            .min_by_key(|&&(i, j)| (spans[i].lo, spans[j].lo, spans[i].id, spans[j].id))
            .copied();
        let Some((i, j)) = pick else { return Ok(()) };
        done.insert((spans[i].walk.sorted_edges(), spans[j].walk.sorted_edges()));
        let plan = plan_pair(g, &pwalk, pr, &spans, &nvh, i, j, ledger, work.step)?;
        let (a, b) = (spans[i].id, spans[j].id);
        drop(spans);
        apply_plan(g, work, p, bucket, a, b, plan, ledger, stats, trace)?;
    }
    Ok(())
}

/// Everything UNCROSS-CYCLES decides before touching the family.
#[derive(Debug)]
struct Plan {
    x: NodeId,
    then_branch: bool,
    chosen: PathSeq,
    sp: PathSeq,
    new_a: Option<CycleWalk>,
    new_b: Option<CycleWalk>,
    q1: HashSet<EdgeId>,
    q2: HashSet<EdgeId>,
    window: (usize, usize),
}

#[allow(clippy::too_many_arguments)]
fn plan_pair(
    g: &WeightedGraph,
    pwalk: &CycleWalk,
    pr: (usize, usize),
    spans: &[Spanned<'_>],
    nvh: &BTreeMap<(usize, usize), Cross>,
    i: usize,
    j: usize,
    ledger: &ShortcutLedger,
    step: usize,
) -> Result<Plan> {
    let cr = &nvh[&(i, j)];
    let (a, b) = (&spans[i], &spans[j]);
    // ends must land on [g, l]
    let window = (b.lo, a.hi);
    let u1 = chain_candidates(g, pwalk, pr, spans, nvh, i, cr.q1.clone(), true, window);
    let u2 = chain_candidates(g, pwalk, pr, spans, nvh, j, cr.q2.clone(), false, window);
    let best = |set: &[PathSeq]| -> Result<(i64, PathSeq)> {
        set.iter()
            .map(|p| (cost(g, p, ledger, step), p.clone()))
            .min_by_key(|(c, _)| *c)
            .ok_or(Error::EmptyCandidate(a.id, b.id))
    };
    let (c1, p1) = best(&u1)?;
    let (c2, p2) = best(&u2)?;
    let then_branch = c1 < c2;
    let chosen = if then_branch { p1 } else { p2 };
    let end = chosen.last();
    let sp = shortest_path(g, cr.x, end)?;
    let pe = position_in(pwalk, pr.0 + window.0, pr.0 + window.1, end).ok_or(Error::EmptyCandidate(a.id, b.id))?;
    let (pk, ph) = (pr.0 + a.lo, pr.0 + b.hi);
    let pe_edges = pwalk.edges();
    let z = pwalk.nodes()[0];
    // (P', SP, P^{k,end}(C)) walked from the root
    let mut ea = pe_edges[..pk].to_vec();
    ea.extend(cr.p1.reversed().edges);
    ea.extend(sp.edges.iter().copied());
    ea.extend_from_slice(&pe_edges[pe..]);
    // (P'', SP, P^{end,h}(C)) walked from the root
    let mut eb = pe_edges[..pe].to_vec();
    eb.extend(sp.reversed().edges);
    eb.extend(cr.p2.edges.iter().copied());
    eb.extend_from_slice(&pe_edges[ph..]);
    let close = |edges: Vec<EdgeId>| -> Option<CycleWalk> {
        let walk = CycleWalk::new(PathSeq::from_edges(g, z, &edges).ok()?).ok()?;
        match meet(pwalk, pr, &walk)?.attach {
            Attachment::Span { .. } => Some(walk),
            _ => None,
        }
    };
    Ok(Plan {
        x: cr.x,
        then_branch,
        chosen,
        new_a: close(ea),
        new_b: close(eb),
        sp,
        q1: cr.q1.edge_set(),
        q2: cr.q2.edge_set(),
        window,
    })
}

#[allow(clippy::too_many_arguments)]
fn apply_plan(
    g: &WeightedGraph,
    work: &mut Work,
    p: usize,
    bucket: &mut Vec<usize>,
    a: usize,
    b: usize,
    plan: Plan,
    ledger: &mut ShortcutLedger,
    stats: &mut UncrossStats,
    trace: &mut Vec<serde_json::Value>,
) -> Result<()> {
    let names = |nodes: &[NodeId]| nodes.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    let step = work.step;
    let (Some(new_a), Some(new_b)) = (plan.new_a, plan.new_b) else {
        stats.skipped += 1;
        trace.push(json!({
            "step": step, "father": p, "pair": [a, b], "x": g.name(plan.x), "skipped": true,
        }));
        return Ok(());
    };
    let sp_set = plan.sp.edge_set();
    let sp_edges = plan.sp.edges.clone();
    let (sc_a, sc_b) = {
        let (sa, sb) = (&work.cycles[a].sc, &work.cycles[b].sc);
        if plan.then_branch {
            let q1_not_sp: HashSet<EdgeId> = plan.q1.difference(&sp_set).copied().collect();
            (
                with(minus(sa, &q1_not_sp), sp_edges.iter().copied().filter(|e| !plan.q1.contains(e)), step),
                with(minus(sb, &plan.q2), sp_edges.iter().copied(), step),
            )
        } else {
            let q2_not_sp: HashSet<EdgeId> = plan.q2.difference(&sp_set).copied().collect();
            (
                with(minus(sa, &plan.q1), sp_edges.iter().copied(), step),
                with(minus(sb, &q2_not_sp), sp_edges.iter().copied().filter(|e| !plan.q2.contains(e)), step),
            )
        }
    };
    let old: HashSet<EdgeId> = work.cycles[a]
        .walk
        .edges()
        .iter()
        .chain(work.cycles[b].walk.edges())
        .chain(work.cycles[p].walk.edges())
        .copied()
        .collect();
    let fresh: Vec<EdgeId> = sp_edges.iter().copied().filter(|e| !old.contains(e)).collect();
    if !fresh.is_empty() {
        ledger.paths.push(sp_edges.clone());
    }
    for &e in &fresh {
        ledger.created.entry(e).or_insert(step);
    }
    let delta_a: Vec<usize> = sc_a.keys().filter(|e| !work.cycles[a].sc.contains_key(e)).map(|e| e.0).collect();
    let delta_b: Vec<usize> = sc_b.keys().filter(|e| !work.cycles[b].sc.contains_key(e)).map(|e| e.0).collect();
    let served_a = work.cycles[a].served.clone();
    let served_b = work.cycles[b].served.clone();
    let replace = |work: &mut Work, old: usize, walk: CycleWalk, served, sc: BTreeMap<EdgeId, usize>| -> usize {
        if walk.sorted_edges() == work.cycles[old].walk.sorted_edges() {
            work.cycles[old].sc = sc;
            return old;
        }
        work.cycles[old].alive = false;
        let key = walk.key(g);
        let id = work.insert(walk, key, served, BTreeMap::new());
        let slot = &mut work.cycles[id].sc;
        for (e, s) in sc {
            slot.entry(e).or_insert(s);
        }
        id
    };
    let ia = replace(work, a, new_a, served_a, sc_a);
    let ib = replace(work, b, new_b, served_b, sc_b);
    for id in [ia, ib] {
        if !bucket.contains(&id) {
            bucket.push(id);
        }
    }
    stats.rewrites += 1;
    trace.push(json!({
        "step": step,
        "father": p,
        "pair": [a, b],
        "x": g.name(plan.x),
        "branch": if plan.then_branch { "then" } else { "else" },
        "chosen": names(&plan.chosen.nodes),
        "sp": names(&plan.sp.nodes),
        "window": [plan.window.0, plan.window.1],
        "result": [ia, ib],
        "sc_added": [delta_a, delta_b],
    }));
    Ok(())
}

/// Per-node ratio `l(C_after(v)) / l(C*(v))`, checked against nine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeRatios {
    pub per_node: BTreeMap<NodeId, Ratio>,
    pub max: Ratio,
}

pub fn node_ratios(before: &[CycleFamily], after: &[CycleFamily]) -> Result<NodeRatios> {
    let lengths = |fams: &[CycleFamily]| -> BTreeMap<NodeId, i64> {
        let mut out = BTreeMap::new();
        for f in fams {
            for (&v, &c) in &f.serving {
                out.insert(v, f.cycle(c).len());
            }
        }
        out
    };
    let (lb, la) = (lengths(before), lengths(after));
    let mut per_node = BTreeMap::new();
    let mut max = Ratio::one();
    for (v, &b) in &lb {
        let a = *la.get(v).ok_or_else(|| Error::BoundViolation(format!("node {} lost its serving cycle", v.0)))?;
        let r = Ratio::new(a, b);
        max = max.max(r);
        per_node.insert(*v, r);
    }
    Ok(NodeRatios { per_node, max })
}

pub fn assert_nine_bound(before: &[CycleFamily], after: &[CycleFamily]) -> Result<NodeRatios> {
    let r = node_ratios(before, after)?;
    if !r.max.at_most(9) {
        return Err(Error::BoundViolation(format!("serving cycle grew by {}/{} > 9", r.max.num, r.max.den)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family_from_cycles;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_named(&["z", "a", "b"], "z", &[("z", "a", 1), ("a", "b", 1), ("b", "z", 1)], 1).unwrap()
    }

    #[test]
    fn no_crossings_leave_family_unchanged() {
        let g = triangle();
        let fam = crate::family::build_families(&g).unwrap().remove(0);
        let out = cancel_crossings(&g, &fam).unwrap();
        assert_eq!(out.family, fam);
        assert!(out.family.shortcuts.iter().all(|s| s.is_empty()));
        assert_eq!(assert_nine_bound(&[fam], &[out.family]).unwrap().max, Ratio::one());
    }

    #[test]
    fn r_counts_only_old_shortcut_suffix() {
        let g = triangle();
        let p = PathSeq::from_edges(&g, NodeId(0), &[EdgeId(0), EdgeId(1)]).unwrap();
        let mut ledger = ShortcutLedger::default();
        ledger.created.insert(EdgeId(1), 1);
        assert_eq!(cost(&g, &p, &ledger, 2), 3);
        assert_eq!(cost(&g, &p, &ledger, 1), 4);
        ledger.created.insert(EdgeId(0), 1);
        assert_eq!(cost(&g, &p, &ledger, 2), 2);
    }

    #[test]
    fn nested_sons_do_not_cross() {
        let g = WeightedGraph::from_named(
            &["z", "a", "b", "c", "d"],
            "z",
            &[("z", "a", 1), ("a", "b", 1), ("b", "z", 1), ("a", "c", 2), ("c", "b", 2), ("a", "d", 3), ("d", "b", 3)],
            1,
        )
        .unwrap();
        let walks = ["zabz", "zacbz", "zadbz"]
            .iter()
            .map(|s| {
                let nodes: Vec<NodeId> = s.chars().map(|ch| g.node(&ch.to_string()).unwrap()).collect();
                CycleWalk::from_nodes(&g, &nodes).unwrap()
            })
            .collect();
        let fam = build_family_from_cycles(&g, walks).unwrap();
        assert!(detect_crossings(&g, &fam, fam.root).unwrap().is_empty());
    }
}
