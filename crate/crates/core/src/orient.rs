//! Orientation of a cycle family: the root cycle first, then the sons of
//! every cycle generation by generation, block by block, containment level by
//! containment level.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{reattach, regenerate, Attachment, CycleFamily, CycleId, WeightClass};
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::tree::{analyze_brothers, build_tree};
use crate::uncross::{detect_crossings, CrossingKind, CrossingRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeDir {
    Unset,
    UtoV,
    VtoU,
}

/// Direction per edge plus the cycle that last set it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub dirs: Vec<EdgeDir>,
    /// Setter of each edge. Cycle ids are local to the family owning the edge;
    /// families share no edges.
    pub setter: Vec<Option<CycleId>>,
}

impl Orientation {
    pub fn new(edge_count: usize) -> Self {
        Self { dirs: vec![EdgeDir::Unset; edge_count], setter: vec![None; edge_count] }
    }

    /// `true` means `u -> v`.
    pub fn from_bools(bools: &[bool]) -> Self {
        Self {
            dirs: bools.iter().map(|&b| if b { EdgeDir::UtoV } else { EdgeDir::VtoU }).collect(),
            setter: vec![None; bools.len()],
        }
    }

    pub fn is_set(&self, e: EdgeId) -> bool {
        self.dirs[e.0] != EdgeDir::Unset
    }

    /// Tail and head of a directed edge.
    pub fn arc(&self, g: &WeightedGraph, e: EdgeId) -> Option<(NodeId, NodeId)> {
        let edge = g.edge(e);
        match self.dirs[e.0] {
            EdgeDir::Unset => None,
            EdgeDir::UtoV => Some((edge.u, edge.v)),
            EdgeDir::VtoU => Some((edge.v, edge.u)),
        }
    }

    /// `None` while some edge is unset.
    pub fn as_bools(&self) -> Option<Vec<bool>> {
        self.dirs
            .iter()
            .map(|d| match d {
                EdgeDir::Unset => None,
                EdgeDir::UtoV => Some(true),
                EdgeDir::VtoU => Some(false),
            })
            .collect()
    }

    /// Directs every unset edge from its lower to its higher endpoint id.
    pub fn complete_low_to_high(&mut self, g: &WeightedGraph) {
        for edge in g.edges() {
            if self.dirs[edge.id.0] == EdgeDir::Unset {
                self.dirs[edge.id.0] = if edge.u <= edge.v { EdgeDir::UtoV } else { EdgeDir::VtoU };
            }
        }
    }

    /// +1 if `e` is directed away from `from`, -1 if towards it, 0 if unset.
    pub fn rel(&self, g: &WeightedGraph, e: EdgeId, from: NodeId) -> i8 {
        match self.arc(g, e) {
            None => 0,
            Some((t, _)) if t == from => 1,
            Some(_) => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Forwards,
    Backwards,
}

/// Boundary state handed to the DIRECT procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirParams {
    pub l1: i8,
    pub l2: i8,
}

impl DirParams {
    /// From the first edge of the block's first son path (`rel1`, seen from
    /// its left end) and the last edge of the last son path (`rel2`, seen from
    /// its tail, so +1 means "into u").
    pub fn from_boundary(rel1: i8, rel2: i8) -> Self {
        Self { l1: rel1, l2: rel2 }
    }
}

/// Two cycles that wanted opposite directions on shared edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Competition {
    pub winner: CycleId,
    pub loser: CycleId,
    pub edges: Vec<EdgeId>,
    pub beta: i64,
    /// Whether existing directions were changed.
    pub flipped: bool,
}

/// Father change made by DIRECT-ONE.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reassignment {
    pub cycle: CycleId,
    pub from: CycleId,
    pub to: CycleId,
}

/// Result of orienting one family.
#[derive(Debug, Clone)]
pub struct Oriented {
    /// The family after father changes and serving changes.
    pub family: CycleFamily,
    pub orientation: Orientation,
    pub class: Vec<Option<Class>>,
    /// Whether the son path of each cycle is directed in its walk order.
    pub ps_fwd: Vec<bool>,
    /// Blocks in processing order, members in their father's direction.
    pub blocks: Vec<Vec<CycleId>>,
    /// Crossing pairs met while processing, with their father.
    pub crossings: Vec<(CycleId, CrossingRecord)>,
    pub competitions: Vec<Competition>,
    pub reassigned: Vec<Reassignment>,
    pub trace: Vec<Value>,
    /// Counters for situations the procedures handle by fallback.
    pub notes: BTreeMap<String, usize>,
}

struct Run<'g> {
    g: &'g WeightedGraph,
    fam: CycleFamily,
    o: Orientation,
    class: Vec<Option<Class>>,
    ps_fwd: Vec<bool>,
    blocks: Vec<Vec<CycleId>>,
    crossings: Vec<(CycleId, CrossingRecord)>,
    competitions: Vec<Competition>,
    reassigned: Vec<Reassignment>,
    trace: Vec<Value>,
    notes: BTreeMap<String, usize>,
    /// Cycles whose directed son path relies on each edge's current direction.
    users: Vec<BTreeSet<CycleId>>,
    /// `relies[c]`: cycles whose directed paths `c` continues along after a conflict.
    relies: Vec<BTreeSet<CycleId>>,
}

type Step = (EdgeId, NodeId);

fn reverse(g: &WeightedGraph, path: &[Step]) -> Vec<Step> {
    path.iter().rev().map(|&(e, from)| (e, g.edge(e).other(from))).collect()
}

impl<'g> Run<'g> {
    fn note(&mut self, what: &str) {
        *self.notes.entry(what.to_string()).or_default() += 1;
    }

    fn light(&self, c: CycleId) -> bool {
        self.fam.cycles[c].weight == WeightClass::Light
    }

    fn len(&self, c: CycleId) -> i64 {
        self.fam.cycles[c].len()
    }

    /// Left and right end of the father path in the father's direction, and
    /// whether the forward traversal of the son path follows the walk order.
    fn ends(&self, c: CycleId) -> (NodeId, NodeId, bool) {
        let z = self.g.root();
        let cy = &self.fam.cycles[c];
        let Some(f) = cy.father else { return (z, z, true) };
        let fp = &self.fam.cycles[f].ps.nodes;
        match cy.attach {
            Attachment::Span { lo, hi } => {
                let (a, b) = (fp[lo], fp[hi]);
                let (v1, v2) = if self.ps_fwd[f] { (a, b) } else { (b, a) };
                if v1 != v2 {
                    (v1, v2, cy.ps.first() == v1)
                } else {
                    (v1, v2, self.sense(c, f))
                }
            }
            Attachment::Point(p) => (fp[p], fp[p], self.sense(c, f)),
            Attachment::Detached => (z, z, true),
        }
    }

    /// Whether the walk of `c` runs along the direction of its father's son path.
    fn sense(&self, c: CycleId, f: CycleId) -> bool {
        let fc = &self.fam.cycles[f];
        let cy = &self.fam.cycles[c];
        for (i, e) in fc.ps.edges.iter().enumerate() {
            if let Some(j) = cy.cycle.edges().iter().position(|x| x == e) {
                let same = cy.cycle.nodes()[j] == fc.ps.nodes[i];
                return same == self.ps_fwd[f];
            }
        }
        true
    }

    /// Son path from `v1` to `v2`.
    fn fwd_path(&self, c: CycleId) -> Vec<Step> {
        let ps = &self.fam.cycles[c].ps;
        let (_, _, wo) = self.ends(c);
        let path: Vec<Step> = ps.edges.iter().copied().zip(ps.nodes.iter().copied()).collect();
        if wo {
            path
        } else {
            reverse(self.g, &path)
        }
    }

    fn set(&mut self, c: CycleId, (e, from): Step, force: bool) {
        let want = if self.g.edge(e).u == from { EdgeDir::UtoV } else { EdgeDir::VtoU };
        let cur = self.o.dirs[e.0];
        if cur == want {
            self.users[e.0].insert(c);
            return;
        }
        if cur == EdgeDir::Unset || force {
            self.o.dirs[e.0] = want;
            self.o.setter[e.0] = Some(c);
            self.users[e.0] = BTreeSet::from([c]);
        } else {
            self.note("kept-existing-direction");
            let by: Vec<CycleId> = self.users[e.0].iter().copied().filter(|&u| u != c).collect();
            self.relies[c].extend(by);
        }
    }

    fn orient_path(&mut self, c: CycleId, path: &[Step]) {
        for &s in path {
            self.set(c, s, false);
        }
    }

    /// Orients the son path of `c` forwards (`v1 -> v2`) or backwards, then
    /// competes for either end edge that an earlier cycle directed against it.
    fn orient_cycle(&mut self, c: CycleId, forwards: bool) -> Result<()> {
        let mut path = self.fwd_path(c);
        if !forwards {
            path = reverse(self.g, &path);
        }
        self.orient_path(c, &path);
        self.mark(c, forwards);
        let g = self.g;
        let opposed = |o: &Orientation, s: Option<&Step>| s.is_some_and(|&(e, from)| o.rel(g, e, from) == -1);
        if opposed(&self.o, path.first()) {
            self.compete(c, &path, true)?;
        }
        if path.len() > 1 && opposed(&self.o, path.last()) {
            self.compete(c, &path, false)?;
        }
        Ok(())
    }

    fn mark(&mut self, c: CycleId, forwards: bool) {
        let (_, _, wo) = self.ends(c);
        self.class[c] = Some(if forwards { Class::Forwards } else { Class::Backwards });
        self.ps_fwd[c] = wo == forwards;
    }

    fn special_contained(&self, c: CycleId) -> bool {
        let cy = &self.fam.cycles[c];
        let (Some(b), Some(f)) = (cy.container, cy.father) else { return false };
        let only = self.fam.cycles[f].sons.iter().filter(|&&s| self.fam.cycles[s].container == Some(b)).count() == 1;
        let bps: HashSet<EdgeId> = self.fam.cycles[b].ps.edges.iter().copied().collect();
        let shares = cy.ps.edges.iter().any(|e| bps.contains(e));
        only && shares && self.class[b] == Some(Class::Forwards)
    }

    /// Moves served nodes of `loser` lying on `edges` to `winner`, unless the
    /// loser still reaches them along its own direction.
    fn absorb(&mut self, winner: CycleId, loser: CycleId, edges: &[EdgeId]) {
        let g = self.g;
        let lpath = {
            let p = self.fwd_path(loser);
            if self.class[loser] == Some(Class::Backwards) {
                reverse(g, &p)
            } else {
                p
            }
        };
        let contested: HashSet<EdgeId> = edges.iter().copied().collect();
        let mut kept: HashSet<NodeId> = HashSet::new();
        for &(e, from) in &lpath {
            if !contested.contains(&e) && self.o.rel(g, e, from) == 1 {
                kept.insert(from);
                kept.insert(g.edge(e).other(from));
            }
        }
        let on: HashSet<NodeId> = edges.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
        let moved: Vec<NodeId> = self.fam.cycles[loser]
            .served
            .iter()
            .copied()
            .filter(|v| on.contains(v) && !kept.contains(v))
            .collect();
        if moved.is_empty() {
            return;
        }
        self.fam.cycles[loser].served.retain(|v| !moved.contains(v));
        let w = &mut self.fam.cycles[winner].served;
        w.extend(moved.iter().copied());
        w.sort();
        w.dedup();
        for v in moved {
            self.fam.serving.insert(v, winner);
        }
    }

    /// Oriented cycles containing any of `edges`.
    fn oriented_through<'s>(&'s self, edges: &'s [EdgeId]) -> impl Iterator<Item = CycleId> + 's {
        self.fam.cycles.iter().filter(move |k| {
            self.class[k.id].is_some() && k.cycle.edges().iter().any(|e| edges.contains(e))
        }).map(|k| k.id)
    }

    /// Cycles relying on `d`, directly or through other cycles.
    fn dependents(&self, d: CycleId) -> BTreeSet<CycleId> {
        let mut out = BTreeSet::new();
        let mut todo = vec![d];
        while let Some(x) = todo.pop() {
            for (r, rel) in self.relies.iter().enumerate() {
                if rel.contains(&x) && r != d && out.insert(r) {
                    todo.push(r);
                }
            }
        }
        out
    }

    /// Competition of `c` against the setter of the boundary edge at the start
    /// (`at_start`) or end of its forward path.
    fn compete(&mut self, c: CycleId, path: &[Step], at_start: bool) -> Result<()> {
        let g = self.g;
        let idx: Vec<usize> = if at_start { (0..path.len()).collect() } else { (0..path.len()).rev().collect() };
        let Some(&first) = idx.first() else { return Ok(()) };
        let (e, from) = path[first];
        if self.o.rel(g, e, from) != -1 {
            // the caller passed -1 but the boundary edge does not oppose `c`
            self.note("boundary-without-conflict");
            return Ok(());
        }
        let comp = self.o.setter[e.0].ok_or(Error::LedgerMiss(e))?;
        if comp == c {
            return Ok(());
        }
        let comp_ps: HashSet<EdgeId> = self.fam.cycles[comp].ps.edges.iter().copied().collect();
        let mut seg: Vec<usize> = idx.iter().copied().take_while(|&i| comp_ps.contains(&path[i].0)).collect();
        if seg.is_empty() {
            self.note("setter-path-changed");
            seg.push(first);
        }
        let beta = if self.class[comp] == Some(Class::Forwards) {
            0
        } else {
            let cset: HashSet<EdgeId> = self.fam.cycles[c].cycle.edges().iter().copied().collect();
            let pc = &self.fam.cycles[comp].pc;
            g.total_len(&pc.edges.iter().copied().filter(|e| !cset.contains(e)).collect::<Vec<_>>())
        };
        let (lc, lcomp) = (self.len(c), self.len(comp));
        let mut wins = lc < lcomp + 2 * beta
            || (lc == lcomp + 2 * beta && self.fam.cycles[c].key < self.fam.cycles[comp].key);
        let edges: Vec<EdgeId> = seg.iter().map(|&i| path[i].0).collect();
        // a third cycle directed along a contested edge, or continuing along
        // the competitor's path, would lose its way back to the root
        if wins
            && (edges.iter().any(|e| self.users[e.0].iter().any(|&u| u != c && u != comp))
                || self.dependents(comp).iter().any(|&r| r != c)
                || self.oriented_through(&edges).any(|r| r != c && r != comp))
        {
            self.note("flip-blocked-shared-edge");
            wins = false;
        }
        if wins {
            for &i in &seg {
                self.set(c, path[i], true);
            }
            self.relies[comp].insert(c);
            self.absorb(c, comp, &edges);
            if self.fam.cycles[comp].key < self.fam.cycles[c].key {
                self.adopt(c, comp);
            }
        }
        self.trace.push(json!({"proc": "compete", "cycle": c, "competitor": comp, "beta": beta, "won": wins}));
        self.competitions.push(Competition {
            winner: if wins { c } else { comp },
            loser: if wins { comp } else { c },
            edges,
            beta,
            flipped: wins,
        });
        Ok(())
    }

    /// Sons of `comp` whose father path lies on the son paths of both `comp`
    /// and `c` become sons of `c`.
    fn adopt(&mut self, c: CycleId, comp: CycleId) {
        let cps: HashSet<EdgeId> = self.fam.cycles[c].ps.edges.iter().copied().collect();
        let cnodes: HashSet<NodeId> = self.fam.cycles[c].ps.nodes.iter().copied().collect();
        let sons = self.fam.cycles[comp].sons.clone();
        let mut changed = false;
        for d in sons {
            let dc = &self.fam.cycles[d];
            let inside = if dc.pf.edges.is_empty() {
                dc.attach != Attachment::Detached && cnodes.contains(&dc.pf.first())
            } else {
                dc.pf.edges.iter().all(|e| cps.contains(e))
            };
            if !inside {
                continue;
            }
            if self.class[d].is_some() {
                self.note("adopt-skipped-oriented");
                continue;
            }
            let served = self.fam.cycles[d].served.clone();
            if reattach(self.g, &mut self.fam, d, c) {
                for v in served {
                    self.fam.serving.insert(v, d);
                }
                self.reassigned.push(Reassignment { cycle: d, from: comp, to: c });
                changed = true;
            } else {
                self.note("adopt-skipped-walk");
            }
        }
        if changed {
            regenerate(&mut self.fam);
            build_tree(&mut self.fam);
        }
    }

    fn one(&mut self, c: CycleId, l1: i8, l2: i8) -> Result<()> {
        self.trace.push(json!({"proc": "one", "cycle": c, "l1": l1, "l2": l2}));
        // a -1 end competes inside orient_cycle
        let backwards = (l1 == -1 || l2 == -1) && self.light(c) && !self.special_contained(c) && l1 != 1 && l2 != 1;
        self.orient_cycle(c, !backwards)
    }

    fn two(&mut self, c1: CycleId, c2: CycleId, l1: i8, l2: i8) -> Result<()> {
        self.trace.push(json!({"proc": "two", "cycles": [c1, c2], "l1": l1, "l2": l2}));
        if !(self.light(c1) && self.light(c2)) {
            self.one(c1, l1, 1)?;
            return self.one(c2, -1, l2);
        }
        if l1 != -1 && l2 != 1 {
            self.orient_cycle(c1, true)?;
            self.orient_cycle(c2, false)?;
        } else if (l1 == 0 && l2 == 1) || (l1 == -1 && l2 != -1) {
            self.orient_cycle(c1, false)?;
            self.orient_cycle(c2, true)?;
        } else {
            // (1, 1): v1 -> u -> v3; (-1, -1): the mirror. The shorter cycle
            // keeps its direction on the shared spur.
            let forwards = l1 == 1;
            let g = self.g;
            let dir = |p: Vec<Step>| if forwards { p } else { reverse(g, &p) };
            let p1 = dir(self.fwd_path(c1));
            let p2 = dir(self.fwd_path(c2));
            let e2: HashSet<EdgeId> = p2.iter().map(|s| s.0).collect();
            let shared: Vec<EdgeId> = p1.iter().map(|s| s.0).filter(|e| e2.contains(e)).collect();
            let (w, wp, l, lp) =
                if self.fam.cycles[c1].key < self.fam.cycles[c2].key { (c1, &p1, c2, &p2) } else { (c2, &p2, c1, &p1) };
            let (wp, lp) = (wp.clone(), lp.clone());
            self.orient_path(w, &wp);
            let rest: Vec<Step> = lp.iter().copied().filter(|s| !shared.contains(&s.0)).collect();
            self.orient_path(l, &rest);
            self.mark(c1, forwards);
            self.mark(c2, forwards);
            if !shared.is_empty() {
                self.absorb(w, l, &shared);
                self.competitions.push(Competition { winner: w, loser: l, edges: shared, beta: 0, flipped: false });
            }
        }
        Ok(())
    }

    fn forwards_run(&mut self, cs: &[CycleId], first_forwards: bool) -> Result<()> {
        self.trace.push(json!({"proc": if first_forwards { "forwards" } else { "backwards" }, "cycles": cs}));
        for (i, &c) in cs.iter().enumerate() {
            self.orient_cycle(c, (i % 2 == 0) == first_forwards)?;
        }
        Ok(())
    }

    fn crossing_kind(&self, a: CycleId, b: CycleId) -> Option<CrossingKind> {
        self.crossings
            .iter()
            .find(|(_, r)| r.pair == (a, b) || r.pair == (b, a))
            .map(|(_, r)| r.kind)
    }

    fn inner_crossing(&mut self, c1: CycleId, c2: CycleId, l1: i8, l2: i8) -> Result<()> {
        self.trace.push(json!({"proc": "inner-crossing", "cycles": [c1, c2], "l1": l1, "l2": l2}));
        let container = self.fam.cycles[c1].container.or(self.fam.cycles[c2].container);
        let fwd = match container.and_then(|b| self.class[b]) {
            Some(cl) => cl == Class::Forwards,
            None => {
                // no oriented containing brother: follow the father
                self.note("inner-crossing-without-container");
                true
            }
        };
        if fwd {
            self.one(c1, l1, 1)?;
            self.one(c2, 1, l2)
        } else {
            self.one(c1, l1, -1)?;
            self.one(c2, -1, l2)
        }
    }

    fn direct_k(&mut self, cs: &[CycleId], l1: i8, l2: i8) -> Result<()> {
        match cs.len() {
            0 => Ok(()),
            1 => self.one(cs[0], l1, l2),
            2 if self.crossing_kind(cs[0], cs[1]) == Some(CrossingKind::Outer) => {
                // outer-crossing brothers both go forwards, even when light
                self.trace.push(json!({"proc": "outer-crossing", "cycles": cs, "l1": l1, "l2": l2}));
                self.one(cs[0], l1, 1)?;
                self.one(cs[1], 1, l2)
            }
            2 => self.two(cs[0], cs[1], l1, l2),
            _ => self.many(cs, l1, l2),
        }
    }

    fn many(&mut self, cs: &[CycleId], l1: i8, l2: i8) -> Result<()> {
        self.trace.push(json!({"proc": "many", "cycles": cs, "l1": l1, "l2": l2}));
        let n = cs.len();
        let pf_len = |i: usize| self.fam.cycles[cs[i]].pf.len;
        let m1 = (0..n).max_by_key(|&i| (pf_len(i), std::cmp::Reverse(i))).unwrap();
        let m2 = (0..n).filter(|&i| i != m1).max_by_key(|&i| (pf_len(i), std::cmp::Reverse(i))).unwrap();
        let even = n % 2 == 0;
        let outer_pair = (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).find(|&(i, k)| {
            self.crossing_kind(cs[i], cs[k]) == Some(CrossingKind::Outer)
        });
        let light_cross = if self.light(cs[m1]) { outer_pair } else { None };
        if self.light(cs[m1]) && outer_pair.is_none() {
            if l1 != -1 && ((even && l2 != 1) || (!even && l2 != -1)) {
                self.forwards_run(cs, true)?;
            } else if l1 != 1 && ((even && l2 != -1) || (!even && l2 != 1)) {
                self.forwards_run(cs, false)?;
            } else if l1 == 1 && ((even && l2 == 1) || (!even && l2 == -1)) {
                self.two(cs[0], cs[1], 1, 1)?;
                self.forwards_run(&cs[2..], false)?;
            } else if !even && l1 == -1 && l2 == 1 {
                self.two(cs[n - 2], cs[n - 1], 1, 1)?;
                self.forwards_run(&cs[..n - 2], false)?;
            } else {
                self.one(cs[0], -1, -1)?;
                self.two(cs[1], cs[2], 1, 1)?;
                self.forwards_run(&cs[3..], false)?;
            }
            return Ok(());
        }
        let partner = (0..n).find(|&i| i != m1 && self.crossing_kind(cs[m1], cs[i]).is_some());
        if self.light(cs[m2]) && partner.is_none() && light_cross.is_none() {
            if m1 == 0 {
                self.one(cs[0], l1, 1)?;
                self.direct_k(&cs[1..], -1, l2)?;
            } else if m1 == n - 1 {
                self.one(cs[n - 1], 1, l2)?;
                self.direct_k(&cs[..n - 1], l1, -1)?;
            } else {
                self.one(cs[m1], 1, 1)?;
                self.direct_k(&cs[..m1], l1, -1)?;
                self.direct_k(&cs[m1 + 1..], -1, l2)?;
            }
            return Ok(());
        }
        let crossing = partner.is_some() || light_cross.is_some();
        let (j, k) = match (partner, light_cross) {
            (Some(p), _) => (m1.min(p), m1.max(p)),
            (None, Some(pair)) => pair,
            (None, None) => (m1.min(m2), m1.max(m2)),
        };
        if j == 0 {
            self.one(cs[0], l1, 1)?;
        } else {
            self.one(cs[j], 1, 1)?;
        }
        let delta = if k == n - 1 { l2 } else { 1 };
        if j + 1 == k && !crossing {
            self.one(cs[k], -1, delta)?;
        } else {
            self.one(cs[k], 1, delta)?;
        }
        if j > 0 {
            self.direct_k(&cs[..j], l1, -1)?;
        }
        if j + 1 < k {
            self.direct_k(&cs[j + 1..k], -1, -1)?;
        }
        if k + 1 < n {
            self.direct_k(&cs[k + 1..], -1, l2)?;
        }
        Ok(())
    }

    fn direct(&mut self, block: &[CycleId]) -> Result<()> {
        let g = self.g;
        let first = self.fwd_path(block[0]);
        let last = self.fwd_path(*block.last().unwrap());
        let l1 = first.first().map_or(0, |&(e, from)| self.o.rel(g, e, from));
        let l2 = last.last().map_or(0, |&(e, from)| self.o.rel(g, e, from));
        let p = DirParams::from_boundary(l1, l2);
        self.trace.push(json!({"proc": "direct", "block": block, "l1": p.l1, "l2": p.l2}));
        if block.len() == 2 && self.crossing_kind(block[0], block[1]) == Some(CrossingKind::Inner) {
            self.inner_crossing(block[0], block[1], p.l1, p.l2)
        } else {
            self.direct_k(block, p.l1, p.l2)
        }
    }

    /// Sons of `f` whose closest containing brother is `container`.
    fn direct_brothers(&mut self, f: CycleId, container: Option<CycleId>) -> Result<()> {
        let len = self.fam.cycles[f].ps.edges.len();
        let items: Vec<(CycleId, Attachment)> = self.fam.cycles[f]
            .sons
            .iter()
            .map(|&s| {
                let a = self.fam.cycles[s].attach;
                (s, if self.ps_fwd[f] { a } else { a.mirrored(len) })
            })
            .collect();
        let info = analyze_brothers(&items);
        let group: BTreeSet<CycleId> = items.iter().map(|x| x.0).filter(|c| info.container[c] == container).collect();
        let outer = self
            .crossings
            .iter()
            .filter(|(p, r)| *p == f && r.kind == CrossingKind::Outer && group.contains(&r.pair.0) && group.contains(&r.pair.1))
            .count();
        if outer > 1 {
            return Err(Error::UnsupportedInstance(format!(
                "{outer} very heavy outer crossings below cycle {f} in one containment level"
            )));
        }
        for (_, cont, members) in info.blocks {
            if cont != container {
                continue;
            }
            if members.iter().any(|&m| self.class[m].is_some()) {
                self.note("block-already-oriented");
                continue;
            }
            self.blocks.push(members.clone());
            self.direct(&members)?;
            for &c in &members {
                self.direct_brothers(f, Some(c))?;
            }
        }
        Ok(())
    }
}

/// Orients the edges of one family. Edges outside the family stay unset.
pub fn main_orient(g: &WeightedGraph, fam: &CycleFamily) -> Result<Oriented> {
    let n = fam.len();
    let mut run = Run {
        g,
        fam: fam.clone(),
        o: Orientation::new(g.edge_count()),
        class: vec![None; n],
        ps_fwd: vec![true; n],
        blocks: Vec::new(),
        crossings: Vec::new(),
        competitions: Vec::new(),
        reassigned: Vec::new(),
        trace: Vec::new(),
        notes: BTreeMap::new(),
        users: vec![BTreeSet::new(); g.edge_count()],
        relies: vec![BTreeSet::new(); n],
    };
    let root = fam.root;
    let path: Vec<Step> = {
        let w = &fam.cycles[root].cycle;
        w.edges().iter().copied().zip(w.nodes().iter().copied()).collect()
    };
    run.orient_path(root, &path);
    run.class[root] = Some(Class::Forwards);
    let mut done: BTreeSet<CycleId> = BTreeSet::new();
    let mut gen = 0;
    loop {
        let fathers: Vec<CycleId> = (0..n)
            .filter(|&c| run.fam.cycles[c].generation == gen && !done.contains(&c) && run.class[c].is_some())
            .collect();
        if fathers.is_empty() && run.fam.cycles.iter().all(|c| c.generation <= gen) {
            break;
        }
        for f in fathers {
            done.insert(f);
            if run.fam.cycles[f].sons.is_empty() {
                continue;
            }
            for r in detect_crossings(g, &run.fam, f)? {
                run.crossings.push((f, r));
            }
            run.direct_brothers(f, None)?;
        }
        gen += 1;
    }
    for c in 0..n {
        if run.class[c].is_none() {
            // unreachable in a consistent tree; orient forwards so the family is total
            run.note("cycle-missed");
            run.orient_cycle(c, true)?;
        }
    }
    for c in 0..n {
        let edges = run.fam.cycles[c].cycle.edges().to_vec();
        for e in edges {
            if !run.o.is_set(e) {
                run.note("edge-missed");
                let path = run.fwd_path(c);
                run.orient_path(c, &path);
            }
        }
    }
    Ok(Oriented {
        family: run.fam,
        orientation: run.o,
        class: run.class,
        ps_fwd: run.ps_fwd,
        blocks: run.blocks,
        crossings: run.crossings,
        competitions: run.competitions,
        reassigned: run.reassigned,
        trace: run.trace,
        notes: run.notes,
    })
}

/// Orients every family and directs the remaining edges low to high.
pub fn orient_graph(g: &WeightedGraph, fams: &[CycleFamily]) -> Result<(Orientation, Vec<Oriented>)> {
    let mut all = Orientation::new(g.edge_count());
    let mut out = Vec::with_capacity(fams.len());
    for fam in fams {
        let o = main_orient(g, fam)?;
        for e in 0..g.edge_count() {
            if o.orientation.dirs[e] != EdgeDir::Unset {
                all.dirs[e] = o.orientation.dirs[e];
                all.setter[e] = o.orientation.setter[e];
            }
        }
        out.push(o);
    }
    all.complete_low_to_high(g);
    Ok((all, out))
}

/// Directed structure of one cycle's son path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDiagnostics {
    pub cycle: CycleId,
    pub class: Option<Class>,
    /// Class read off the final directions; `None` without served nodes.
    pub measured: Option<Class>,
    /// `I(C)`: the maximal directed run of the son path holding `U(C)`.
    pub i_path: Vec<NodeId>,
    pub t: Option<NodeId>,
    pub h: Option<NodeId>,
    pub j_t: Vec<NodeId>,
    pub j_h: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosticPaths {
    pub cycles: Vec<CycleDiagnostics>,
    /// Cycles whose served nodes are not on one directed run.
    pub broken: Vec<CycleId>,
}

/// Directed runs of `path` (in traversal order): maximal index ranges of edges
/// with the given relative direction.
fn runs_with(g: &WeightedGraph, o: &Orientation, path: &[Step], sign: i8) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < path.len() {
        if o.rel(g, path[i].0, path[i].1) == sign {
            let s = i;
            while i < path.len() && o.rel(g, path[i].0, path[i].1) == sign {
                i += 1;
            }
            out.push((s, i));
        } else {
            i += 1;
        }
    }
    out
}

/// `I`, `t`, `h`, `J_t`, `J_h` and the measured class of every non-root cycle.
pub fn extract_diagnostics(g: &WeightedGraph, or: &Oriented) -> DiagnosticPaths {
    let run = Run {
        g,
        fam: or.family.clone(),
        o: or.orientation.clone(),
        class: or.class.clone(),
        ps_fwd: or.ps_fwd.clone(),
        blocks: Vec::new(),
        crossings: Vec::new(),
        competitions: Vec::new(),
        reassigned: Vec::new(),
        trace: Vec::new(),
        notes: BTreeMap::new(),
        users: vec![BTreeSet::new(); g.edge_count()],
        relies: vec![BTreeSet::new(); or.family.len()],
    };
    let o = &or.orientation;
    let mut cycles = Vec::new();
    let mut broken = Vec::new();
    for c in 0..or.family.len() {
        let cy = &or.family.cycles[c];
        if cy.father.is_none() {
            continue;
        }
        let fwd = run.fwd_path(c);
        let nodes_of = |p: &[Step], (s, t): (usize, usize)| -> Vec<NodeId> {
            let mut v: Vec<NodeId> = p[s..t].iter().map(|x| x.1).collect();
            if t > s {
                v.push(g.edge(p[t - 1].0).other(p[t - 1].1));
            }
            v
        };
        let holds = |nodes: &[NodeId]| cy.served.iter().all(|u| nodes.contains(u));
        let mut found = None;
        for (path, class) in [(fwd.clone(), Class::Forwards), (reverse(g, &fwd), Class::Backwards)] {
            for r in runs_with(g, o, &path, 1) {
                let nodes = nodes_of(&path, r);
                if holds(&nodes) && found.is_none() {
                    found = Some((path.clone(), r, nodes, class));
                }
            }
        }
        match found {
            Some((path, (s, t), nodes, class)) => {
                // J_t runs backwards from t against the traversal, J_h likewise after h
                let mut js = s;
                while js > 0 && o.rel(g, path[js - 1].0, path[js - 1].1) == -1 {
                    js -= 1;
                }
                let mut jh = t;
                while jh < path.len() && o.rel(g, path[jh].0, path[jh].1) == -1 {
                    jh += 1;
                }
                let j_t = if js < s { nodes_of(&path, (js, s)) } else { Vec::new() };
                let j_h = if jh > t { nodes_of(&path, (t, jh)) } else { Vec::new() };
                cycles.push(CycleDiagnostics {
                    cycle: c,
                    class: or.class[c],
                    measured: if cy.served.is_empty() { None } else { Some(class) },
                    t: nodes.first().copied(),
                    h: nodes.last().copied(),
                    i_path: nodes,
                    j_t,
                    j_h,
                });
            }
            None => {
                broken.push(c);
                cycles.push(CycleDiagnostics {
                    cycle: c,
                    class: or.class[c],
                    measured: None,
                    i_path: Vec::new(),
                    t: None,
                    h: None,
                    j_t: Vec::new(),
                    j_h: Vec::new(),
                });
            }
        }
    }
    DiagnosticPaths { cycles, broken }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    pub property: u8,
    pub cycles: Vec<CycleId>,
}

/// Checks Properties 1 to 5 on a finished orientation.
pub fn check_properties(or: &Oriented) -> Vec<PropertyViolation> {
    let fam = &or.family;
    let back = |c: CycleId| or.class[c] == Some(Class::Backwards);
    let mut out = Vec::new();
    for c in &fam.cycles {
        if c.father.is_some() && c.weight != WeightClass::Light && back(c.id) {
            out.push(PropertyViolation { property: 1, cycles: vec![c.id] });
        }
    }
    for b in &or.blocks {
        let n = b.len();
        if n > 2 && ((back(b[0]) && back(b[1])) || (back(b[n - 2]) && back(b[n - 1]))) {
            out.push(PropertyViolation { property: 2, cycles: b.clone() });
        }
    }
    for (_, r) in &or.crossings {
        let (a, b) = r.pair;
        // inner and outer are only defined for brothers in one containment level
        if fam.cycles[a].lc != fam.cycles[b].lc {
            continue;
        }
        match r.kind {
            CrossingKind::Inner => {
                let cont = fam.cycles[a].container.or(fam.cycles[b].container);
                if let Some(k) = cont {
                    if or.class[a] != or.class[k] || or.class[b] != or.class[k] {
                        out.push(PropertyViolation { property: 3, cycles: vec![a, b, k] });
                    }
                }
            }
            CrossingKind::Outer => {
                if back(a) || back(b) {
                    out.push(PropertyViolation { property: 4, cycles: vec![a, b] });
                }
            }
        }
    }
    for c in &fam.cycles {
        let (Some(b), Some(f)) = (c.container, c.father) else { continue };
        let only = fam.cycles[f].sons.iter().filter(|&&s| fam.cycles[s].container == Some(b)).count() == 1;
        let bps: HashSet<EdgeId> = fam.cycles[b].ps.edges.iter().copied().collect();
        let shares = c.ps.edges.iter().any(|e| bps.contains(e));
        if only && shares && or.class[b] == Some(Class::Forwards) && back(c.id) {
            out.push(PropertyViolation { property: 5, cycles: vec![c.id, b] });
        }
    }
    out
}
