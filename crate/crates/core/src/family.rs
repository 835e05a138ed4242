//! Serving cycles through the root and their hereditary tree.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::cost::Key;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::path::{CycleWalk, PathSeq};
use crate::shortest::min_cycle_through;
use crate::tree;

pub type CycleId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightClass {
    Light,
    Heavy,
    VeryHeavy,
}

/// Where a son meets its father's son path. Positions are node indices along
/// the father's `ps`, in the father's construction direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attachment {
    /// `P_f` is the father subpath between the two positions.
    Span { lo: usize, hi: usize },
    /// The son contains its father and leaves it in a closed walk at one node.
    Point(usize),
    /// The son shares no edge with its father and meets it only at the root.
    Detached,
}

impl Attachment {
    /// Interval on the father's son path; `None` for detached sons.
    pub fn interval(&self) -> Option<(usize, usize)> {
        match *self {
            Attachment::Span { lo, hi } => Some((lo, hi)),
            Attachment::Point(p) => Some((p, p)),
            Attachment::Detached => None,
        }
    }

    /// Same attachment seen from the other end of a son path of `len` edges.
    pub fn mirrored(&self, len: usize) -> Self {
        match *self {
            Attachment::Span { lo, hi } => Attachment::Span { lo: len - hi, hi: len - lo },
            Attachment::Point(p) => Attachment::Point(len - p),
            Attachment::Detached => Attachment::Detached,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServingCycle {
    pub id: CycleId,
    /// Traversed from the root.
    pub cycle: CycleWalk,
    pub key: Key,
    /// `U(C)`, sorted.
    pub served: Vec<NodeId>,
    pub father: Option<CycleId>,
    pub sons: Vec<CycleId>,
    pub attach: Attachment,
    /// `C \ F(C)`, in the order of `cycle`. For the root, the whole cycle.
    pub ps: PathSeq,
    /// Edge index range of `ps` inside `cycle`.
    pub ps_range: (usize, usize),
    /// `F(C) \ C`, in the father's traversal order.
    pub pf: PathSeq,
    /// `C ∩ F(C)`, from the end of `ps` through the root back to its start.
    pub pc: PathSeq,
    pub generation: usize,
    pub lc: usize,
    /// Closest containing brother.
    pub container: Option<CycleId>,
    pub weight: WeightClass,
}

impl ServingCycle {
    pub fn len(&self) -> i64 {
        self.cycle.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDescriptor {
    pub father: CycleId,
    pub lc: usize,
    pub container: Option<CycleId>,
    pub members: Vec<CycleId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFamily {
    pub root: CycleId,
    pub cycles: Vec<ServingCycle>,
    pub serving: BTreeMap<NodeId, CycleId>,
    /// `SC(C)`: shortcut edges per cycle, with the processing step that created them.
    pub shortcuts: Vec<BTreeMap<EdgeId, usize>>,
    pub blocks: Vec<BlockDescriptor>,
}

impl CycleFamily {
    pub fn cycle(&self, id: CycleId) -> &ServingCycle {
        &self.cycles[id]
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn serving_cycle(&self, v: NodeId) -> Option<&ServingCycle> {
        self.serving.get(&v).map(|&c| &self.cycles[c])
    }

    pub fn ancestors(&self, id: CycleId) -> Vec<CycleId> {
        let mut out = Vec::new();
        let mut cur = self.cycles[id].father;
        while let Some(f) = cur {
            out.push(f);
            cur = self.cycles[f].father;
        }
        out
    }

    pub fn is_ancestor(&self, a: CycleId, b: CycleId) -> bool {
        self.ancestors(b).contains(&a)
    }

    pub fn max_generation(&self) -> usize {
        self.cycles.iter().map(|c| c.generation).max().unwrap_or(0)
    }

    /// Debug/golden dump.
    pub fn dump(&self, g: &WeightedGraph) -> FamilyDump {
        FamilyDump {
            root: self.root,
            cycles: self
                .cycles
                .iter()
                .map(|c| CycleDump {
                    id: c.id,
                    nodes: c.cycle.nodes().iter().map(|&v| g.name(v).to_string()).collect(),
                    length: c.len(),
                    father: c.father,
                    served: c.served.iter().map(|&v| g.name(v).to_string()).collect(),
                    generation: c.generation,
                    lc: c.lc,
                    weight: c.weight,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyDump {
    pub root: CycleId,
    pub cycles: Vec<CycleDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleDump {
    pub id: CycleId,
    pub nodes: Vec<String>,
    pub length: i64,
    pub father: Option<CycleId>,
    pub served: Vec<String>,
    pub generation: usize,
    pub lc: usize,
    pub weight: WeightClass,
}

/// How a candidate meets a prospective father.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Meeting {
    pub attach: Attachment,
    /// Edge range of the candidate's son path in its own walk.
    pub c_ps: (usize, usize),
    /// Edge range of the father path in the father's walk.
    pub p_pf: (usize, usize),
}

fn runs(flags: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < flags.len() {
        if flags[i] {
            let s = i;
            while i < flags.len() && flags[i] {
                i += 1;
            }
            out.push((s, i));
        } else {
            i += 1;
        }
    }
    out
}

/// Intersection pattern of `c` with `parent`, whose son path occupies edge
/// range `pr` of its walk. `None` when the pattern is not a single common
/// path through the root plus a single son path.
pub(crate) fn meet(parent: &CycleWalk, pr: (usize, usize), c: &CycleWalk) -> Option<Meeting> {
    let pset: HashSet<EdgeId> = parent.edges().iter().copied().collect();
    let cset: HashSet<EdgeId> = c.edges().iter().copied().collect();
    let k = c.edges().len();
    let own: Vec<bool> = c.edges().iter().map(|e| !pset.contains(e)).collect();
    let own_runs = runs(&own);
    if own_runs.len() == 1 && own_runs[0] == (0, k) {
        return Some(Meeting { attach: Attachment::Detached, c_ps: (0, k), p_pf: (pr.0, pr.0) });
    }
    if own_runs.len() != 1 {
        return None;
    }
    let (s, t) = own_runs[0];
    let kp = parent.edges().len();
    let only_parent: Vec<bool> = parent.edges().iter().map(|e| !cset.contains(e)).collect();
    let pruns = runs(&only_parent);
    let cn = c.nodes();
    let pn = parent.nodes();
    match pruns.len() {
        0 => {
            let same_dir = if s == 0 { c.edges()[t] == parent.edges()[0] } else { c.edges()[0] == parent.edges()[0] };
            let pos = match (s == 0, same_dir) {
                (true, true) => 0,
                (true, false) => kp,
                (false, true) => s,
                (false, false) => kp - s,
            };
            if pos < pr.0 || pos > pr.1 || pn[pos] != cn[s] || cn[s] != cn[t] {
                return None;
            }
            Some(Meeting { attach: Attachment::Point(pos - pr.0), c_ps: (s, t), p_pf: (pos, pos) })
        }
        1 => {
            let (a, b) = pruns[0];
            if a < pr.0 || b > pr.1 {
                return None;
            }
            let mut ends_p = [pn[a], pn[b]];
            let mut ends_c = [cn[s], cn[t]];
            ends_p.sort();
            ends_c.sort();
            if ends_p != ends_c {
                return None;
            }
            Some(Meeting { attach: Attachment::Span { lo: a - pr.0, hi: b - pr.0 }, c_ps: (s, t), p_pf: (a, b) })
        }
        _ => None,
    }
}

/// Common path `C ∩ F`: from the end of the son path, through the root, to its start.
pub(crate) fn common_path(g: &WeightedGraph, c: &CycleWalk, c_ps: (usize, usize)) -> PathSeq {
    let (s, t) = c_ps;
    let k = c.edges().len();
    let mut edges = c.edges()[t..k].to_vec();
    edges.extend_from_slice(&c.edges()[..s]);
    PathSeq::from_edges(g, c.nodes()[t], &edges).expect("common path is part of a walk")
}

/// One cycle under construction.
#[derive(Debug, Clone)]
pub(crate) struct WorkCycle {
    pub walk: CycleWalk,
    pub key: Key,
    pub served: BTreeSet<NodeId>,
    pub sc: BTreeMap<EdgeId, usize>,
    pub alive: bool,
}

/// Placement of a cycle in the tree under construction.
#[derive(Debug, Clone)]
pub(crate) struct Placed {
    pub father: Option<usize>,
    pub meeting: Meeting,
    pub generation: usize,
}

/// Mutable state of the generation-by-generation construction.
#[derive(Debug, Clone)]
pub(crate) struct Work {
    pub cycles: Vec<WorkCycle>,
    pub placed: BTreeMap<usize, Placed>,
    /// Processing step counter (one per processed father).
    pub step: usize,
}

impl Work {
    pub fn new(g: &WeightedGraph, cycles: Vec<(CycleWalk, BTreeSet<NodeId>)>) -> Self {
        let cycles = cycles
            .into_iter()
            .map(|(walk, served)| WorkCycle { key: walk.key(g), walk, served, sc: BTreeMap::new(), alive: true })
            .collect();
        Self { cycles, placed: BTreeMap::new(), step: 0 }
    }

    /// Son-path edge range of a placed cycle.
    pub fn ps_range(&self, id: usize) -> (usize, usize) {
        self.placed[&id].meeting.c_ps
    }

    /// Adds a cycle or merges served nodes into an identical existing one.
    pub fn insert(&mut self, walk: CycleWalk, key: Key, served: BTreeSet<NodeId>, sc: BTreeMap<EdgeId, usize>) -> usize {
        let sorted = walk.sorted_edges();
        if let Some(i) = self.cycles.iter().position(|c| c.alive && c.walk.sorted_edges() == sorted) {
            self.cycles[i].served.extend(served);
            for (e, s) in sc {
                self.cycles[i].sc.entry(e).or_insert(s);
            }
            return i;
        }
        self.cycles.push(WorkCycle { walk, key, served, sc, alive: true });
        self.cycles.len() - 1
    }
}

/// Key used to group candidates below one father.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum GroupKey {
    Attached(Attachment),
    /// Detached candidates, split by the smallest member of their edge-sharing class.
    Detached(usize),
}

/// Partition of a bucket below `parent` into son groups, each sorted by key.
pub(crate) fn partition(
    work: &Work,
    parent: usize,
    bucket: &[usize],
) -> Result<BTreeMap<GroupKey, Vec<usize>>> {
    let pwalk = &work.cycles[parent].walk;
    let pr = work.ps_range(parent);
    let mut groups: BTreeMap<GroupKey, Vec<usize>> = BTreeMap::new();
    let mut detached = Vec::new();
    for &c in bucket {
        let m = meet(pwalk, pr, &work.cycles[c].walk)
            .ok_or(Error::MalformedIntersection { cycle: c, parent })?;
        match m.attach {
            Attachment::Detached => detached.push(c),
            a => groups.entry(GroupKey::Attached(a)).or_default().push(c),
        }
    }
    // edge-sharing classes among detached candidates
    let mut class: HashMap<usize, usize> = detached.iter().map(|&c| (c, c)).collect();
    fn find(class: &mut HashMap<usize, usize>, x: usize) -> usize {
        let p = class[&x];
        if p == x {
            x
        } else {
            let r = find(class, p);
            class.insert(x, r);
            r
        }
    }
    for (i, &a) in detached.iter().enumerate() {
        let ea: HashSet<EdgeId> = work.cycles[a].walk.edges().iter().copied().collect();
        for &b in &detached[i + 1..] {
            if work.cycles[b].walk.edges().iter().any(|e| ea.contains(e)) {
                let (ra, rb) = (find(&mut class, a), find(&mut class, b));
                if ra != rb {
                    class.insert(ra.max(rb), ra.min(rb));
                }
            }
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &c in &detached {
        let r = find(&mut class, c);
        members.entry(r).or_default().push(c);
    }
    for (_, list) in members {
        let label = *list.iter().min().unwrap();
        groups.insert(GroupKey::Detached(label), list);
    }
    for list in groups.values_mut() {
        list.sort_by(|&a, &b| work.cycles[a].key.cmp(&work.cycles[b].key));
    }
    Ok(groups)
}

/// Hook run on each father before its sons are fixed.
pub(crate) type FatherHook<'a> = dyn FnMut(&WeightedGraph, &mut Work, usize, &mut Vec<usize>) -> Result<()> + 'a;

/// Builds the hereditary tree generation by generation. `cycles` must be one
/// component; the minimum-key cycle becomes the root.
pub(crate) fn grow(g: &WeightedGraph, mut work: Work, hook: &mut FatherHook<'_>) -> Result<CycleFamily> {
    let root = (0..work.cycles.len())
        .filter(|&i| work.cycles[i].alive)
        .min_by(|&a, &b| work.cycles[a].key.cmp(&work.cycles[b].key))
        .ok_or_else(|| Error::MalformedInstance("empty family".into()))?;
    let k = work.cycles[root].walk.edges().len();
    work.placed.insert(
        root,
        Placed { father: None, meeting: Meeting { attach: Attachment::Detached, c_ps: (0, k), p_pf: (0, 0) }, generation: 0 },
    );
    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    buckets.insert(root, (0..work.cycles.len()).filter(|&i| i != root && work.cycles[i].alive).collect());
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        let mut bucket = buckets.remove(&p).unwrap_or_default();
        work.step += 1;
        hook(g, &mut work, p, &mut bucket)?;
        bucket.retain(|&c| work.cycles[c].alive);
        let groups = partition(&work, p, &bucket)?;
        let pwalk = work.cycles[p].walk.clone();
        let pr = work.ps_range(p);
        let generation = work.placed[&p].generation + 1;
        for (_, members) in groups {
            let son = members[0];
            let meeting = meet(&pwalk, pr, &work.cycles[son].walk).expect("partitioned candidates meet");
            work.placed.insert(son, Placed { father: Some(p), meeting, generation });
            buckets.insert(son, members[1..].to_vec());
            queue.push_back(son);
        }
    }
    finish(g, work)
}

fn finish(g: &WeightedGraph, work: Work) -> Result<CycleFamily> {
    // compact ids in placement order sorted by key
    let mut ids: Vec<usize> = work.placed.keys().copied().filter(|&i| work.cycles[i].alive).collect();
    ids.sort_by(|&a, &b| work.cycles[a].key.cmp(&work.cycles[b].key));
    let new_id: HashMap<usize, usize> = ids.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let mut cycles = Vec::with_capacity(ids.len());
    let mut shortcuts = Vec::with_capacity(ids.len());
    let mut serving = BTreeMap::new();
    for (n, &o) in ids.iter().enumerate() {
        let wc = &work.cycles[o];
        let pl = &work.placed[&o];
        let father = pl.father.map(|f| new_id[&f]);
        let (s, t) = pl.meeting.c_ps;
        let ps = wc.walk.walk.slice(g, s, t);
        let (pf, pc) = match pl.father {
            Some(f) => {
                let (a, b) = pl.meeting.p_pf;
                (work.cycles[f].walk.walk.slice(g, a, b), common_path(g, &wc.walk, (s, t)))
            }
            None => (PathSeq::single(g.root()), PathSeq::single(g.root())),
        };
        for &v in &wc.served {
            serving.insert(v, n);
        }
        cycles.push(ServingCycle {
            id: n,
            cycle: wc.walk.clone(),
            key: wc.key.clone(),
            served: wc.served.iter().copied().collect(),
            father,
            sons: Vec::new(),
            attach: pl.meeting.attach,
            ps,
            ps_range: (s, t),
            pf,
            pc,
            generation: pl.generation,
            lc: 0,
            container: None,
            weight: WeightClass::Light,
        });
        shortcuts.push(wc.sc.clone());
    }
    for n in 0..cycles.len() {
        if let Some(f) = cycles[n].father {
            cycles[f].sons.push(n);
        }
    }
    let mut fam = CycleFamily { root: 0, cycles, serving, shortcuts, blocks: Vec::new() };
    tree::build_tree(&mut fam);
    Ok(fam)
}

/// Moves `d` below `father`: its walk becomes the father's walk with the
/// father path of `d` replaced by the son path of `d`. Returns `false`, leaving
/// the family untouched, when that walk is not a valid son of `father`.
pub(crate) fn reattach(g: &WeightedGraph, fam: &mut CycleFamily, d: CycleId, father: CycleId) -> bool {
    let dc = &fam.cycles[d];
    let fc = &fam.cycles[father];
    let (s, t) = (dc.ps.first(), dc.ps.last());
    let mut pf_sorted = dc.pf.edges.clone();
    pf_sorted.sort();
    let k = fc.cycle.edges().len();
    let (r0, r1) = fc.ps_range;
    for (w, pr) in [(fc.cycle.clone(), (r0, r1)), (fc.cycle.reversed(), (k - r1, k - r0))] {
        let wn = w.nodes();
        for a in pr.0..=pr.1 {
            if wn[a] != s {
                continue;
            }
            for b in a..=pr.1 {
                let mut seg = w.edges()[a..b].to_vec();
                seg.sort();
                if wn[b] != t || seg != pf_sorted {
                    continue;
                }
                let mut edges = w.edges()[..a].to_vec();
                edges.extend_from_slice(&dc.ps.edges);
                edges.extend_from_slice(&w.edges()[b..]);
                let Ok(walk) = PathSeq::from_edges(g, g.root(), &edges).and_then(CycleWalk::new) else {
                    continue;
                };
                let Some(m) = meet(&fc.cycle, fc.ps_range, &walk) else { continue };
                if m.attach == Attachment::Detached {
                    continue;
                }
                let old = dc.father;
                let (cs, ct) = m.c_ps;
                let ps = walk.walk.slice(g, cs, ct);
                let pf = fc.cycle.walk.slice(g, m.p_pf.0, m.p_pf.1);
                let pc = common_path(g, &walk, m.c_ps);
                let weight = tree::weight_class(pf.len, fc.ps.len);
                let c = &mut fam.cycles[d];
                c.key = walk.key(g);
                c.cycle = walk;
                c.ps = ps;
                c.ps_range = m.c_ps;
                c.pf = pf;
                c.pc = pc;
                c.attach = m.attach;
                c.father = Some(father);
                c.weight = weight;
                if let Some(o) = old {
                    fam.cycles[o].sons.retain(|&x| x != d);
                }
                let sons = &mut fam.cycles[father].sons;
                sons.push(d);
                sons.sort();
                return true;
            }
        }
    }
    false
}

/// Recomputes generations from the root after fathers changed.
pub(crate) fn regenerate(fam: &mut CycleFamily) {
    let mut queue = std::collections::VecDeque::from([(fam.root, 0)]);
    while let Some((c, gen)) = queue.pop_front() {
        fam.cycles[c].generation = gen;
        for &s in &fam.cycles[c].sons {
            queue.push_back((s, gen + 1));
        }
    }
}

/// Serving cycles `C(v)` for every non-root node, deduplicated, each with the
/// nodes it serves.
pub fn serving_cycles(g: &WeightedGraph) -> Result<Vec<(CycleWalk, BTreeSet<NodeId>)>> {
    let mut by_edges: BTreeMap<Vec<EdgeId>, usize> = BTreeMap::new();
    let mut out: Vec<(CycleWalk, BTreeSet<NodeId>)> = Vec::new();
    for v in g.nodes() {
        if v == g.root() {
            continue;
        }
        let c = min_cycle_through(g, v)?;
        let sorted = c.sorted_edges();
        match by_edges.get(&sorted) {
            Some(&i) => {
                out[i].1.insert(v);
            }
            None => {
                by_edges.insert(sorted, out.len());
                out.push((c, BTreeSet::from([v])));
            }
        }
    }
    Ok(out)
}

/// Groups cycles by the connected components of their union minus the root.
pub fn split_components(g: &WeightedGraph, cycles: &[(CycleWalk, BTreeSet<NodeId>)]) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let z = g.root();
    for (c, _) in cycles {
        for e in c.edges() {
            let edge = g.edge(*e);
            if edge.u != z && edge.v != z {
                let (a, b) = (find(&mut parent, edge.u.0), find(&mut parent, edge.v.0));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, (c, _)) in cycles.iter().enumerate() {
        let v = c.nodes().iter().find(|&&v| v != z).copied().expect("cycle has a non-root node");
        comps.entry(find(&mut parent, v.0)).or_default().push(i);
    }
    comps.into_values().collect()
}

/// Tree over explicitly given cycles of one component. Served sets are
/// recomputed as `U(C) = {v : C is the minimum cycle containing v}`.
pub fn build_family_from_cycles(g: &WeightedGraph, cycles: Vec<CycleWalk>) -> Result<CycleFamily> {
    let z = g.root();
    let mut cycles: Vec<CycleWalk> = cycles
        .into_iter()
        .map(|c| c.rotated_to(z))
        .collect::<Result<_>>()?;
    cycles.sort_by_key(|c| c.key(g));
    let mut served = vec![BTreeSet::new(); cycles.len()];
    for v in g.nodes() {
        if v == z {
            continue;
        }
        if let Some(i) = cycles.iter().position(|c| c.contains_node(v)) {
            served[i].insert(v);
        }
    }
    let list = cycles.into_iter().zip(served).collect();
    grow(g, Work::new(g, list), &mut |_, _, _, _| Ok(()))
}

/// One family per component of the serving-cycle union minus the root.
pub fn build_families(g: &WeightedGraph) -> Result<Vec<CycleFamily>> {
    let all = serving_cycles(g)?;
    split_components(g, &all)
        .into_iter()
        .map(|idx| {
            let list = idx.iter().map(|&i| all[i].clone()).collect();
            grow(g, Work::new(g, list), &mut |_, _, _, _| Ok(()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle z-a-b with a square a-c-d-b on its far edge, plus a second
    /// triangle z-e-f that only touches the rest at the root.
    fn house() -> WeightedGraph {
        WeightedGraph::from_named(
            &["z", "a", "b", "c", "d", "e", "f"],
            "z",
            &[
                ("z", "a", 1),
                ("a", "b", 1),
                ("b", "z", 1),
                ("a", "c", 1),
                ("c", "d", 1),
                ("d", "b", 1),
                ("z", "e", 1),
                ("e", "f", 1),
                ("f", "z", 1),
            ],
            1,
        )
        .unwrap()
    }

    fn walk(g: &WeightedGraph, edges: &[usize]) -> CycleWalk {
        let edges: Vec<EdgeId> = edges.iter().map(|&e| EdgeId(e)).collect();
        CycleWalk::new(PathSeq::from_edges(g, g.root(), &edges).unwrap()).unwrap()
    }

    #[test]
    fn runs_are_maximal() {
        assert_eq!(runs(&[true, true, false, true, false, false, true]), vec![(0, 2), (3, 4), (6, 7)]);
        assert!(runs(&[false, false]).is_empty());
    }

    #[test]
    fn mirrored_attachment_reads_from_the_other_end() {
        assert_eq!(Attachment::Span { lo: 0, hi: 1 }.mirrored(3), Attachment::Span { lo: 2, hi: 3 });
        assert_eq!(Attachment::Point(1).mirrored(4), Attachment::Point(3));
        assert_eq!(Attachment::Detached.mirrored(4), Attachment::Detached);
        assert_eq!(Attachment::Point(2).interval(), Some((2, 2)));
    }

    #[test]
    fn meet_classifies_span_and_detached() {
        let g = house();
        let tri = walk(&g, &[0, 1, 2]);
        let square = walk(&g, &[0, 3, 4, 5, 2]);
        let other = walk(&g, &[6, 7, 8]);
        let m = meet(&tri, (0, 3), &square).unwrap();
        assert_eq!(m.attach, Attachment::Span { lo: 1, hi: 2 });
        assert_eq!(m.c_ps, (1, 4));
        assert_eq!(meet(&tri, (0, 3), &other).unwrap().attach, Attachment::Detached);
    }

    #[test]
    fn serving_cycles_merge_nodes_on_one_cycle() {
        let g = house();
        let cycles = serving_cycles(&g).unwrap();
        let sizes: Vec<(usize, usize)> = cycles.iter().map(|(c, u)| (c.edges().len(), u.len())).collect();
        assert_eq!(sizes, vec![(3, 2), (5, 2), (3, 2)]);
        let comps = split_components(&g, &cycles);
        assert_eq!(comps, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn families_hang_the_square_below_the_triangle() {
        let g = house();
        let fams = build_families(&g).unwrap();
        assert_eq!(fams.len(), 2);
        let f = &fams[0];
        let son = f.cycles.iter().find(|c| c.father.is_some()).unwrap();
        assert_eq!(son.father, Some(f.root));
        assert_eq!(son.generation, 1);
        assert_eq!(son.pf.edges, vec![EdgeId(1)]);
        assert_eq!(son.ps.len, 3);
        assert_eq!(f.ancestors(son.id), vec![f.root]);
        assert!(f.is_ancestor(f.root, son.id));
        assert_eq!(f.serving_cycle(g.node("c").unwrap()).map(|c| c.id), Some(son.id));
        assert_eq!(fams[1].len(), 1);
    }
}
