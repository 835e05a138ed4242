//! Generations, containment levels, blocks and ancestry.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::{Attachment, BlockDescriptor, CycleFamily, CycleId, WeightClass};

/// Containment structure among the sons of one father.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Brothers {
    pub lc: BTreeMap<CycleId, usize>,
    pub container: BTreeMap<CycleId, Option<CycleId>>,
    /// Blocks in position order, each sorted by left end.
    pub blocks: Vec<(usize, Option<CycleId>, Vec<CycleId>)>,
}

impl Brothers {
    /// Brothers whose closest containing brother is `container`, in position order.
    pub fn contained_in(&self, container: Option<CycleId>, items: &[(CycleId, Attachment)]) -> Vec<CycleId> {
        let mut out: Vec<(usize, usize, CycleId)> = items
            .iter()
            .filter(|(c, _)| self.container[c] == container)
            .map(|(c, a)| {
                let (lo, hi) = a.interval().unwrap_or((usize::MAX, usize::MAX));
                (lo, hi, *c)
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, _, c)| c).collect()
    }
}

fn strictly_contains(b: (usize, usize), c: (usize, usize)) -> bool {
    b != c && b.0 <= c.0 && c.1 <= b.1
}

/// Containment levels, closest containers and blocks of brothers given by
/// their attachments (already expressed in the father's direction).
pub fn analyze_brothers(items: &[(CycleId, Attachment)]) -> Brothers {
    let mut out = Brothers::default();
    for &(c, a) in items {
        let container = a.interval().and_then(|ci| {
            items
                .iter()
                .filter_map(|&(b, ba)| ba.interval().map(|bi| (b, bi)))
                .filter(|&(b, bi)| b != c && strictly_contains(bi, ci))
                .min_by_key(|&(b, bi)| (bi.1 - bi.0, std::cmp::Reverse(bi.0), b))
                .map(|(b, _)| b)
        });
        out.container.insert(c, container);
    }
    for &(c, _) in items {
        let mut depth = 0;
        let mut cur = out.container[&c];
        while let Some(b) = cur {
            depth += 1;
            cur = out.container[&b];
        }
        out.lc.insert(c, depth);
    }
    let mut groups: BTreeMap<Option<CycleId>, Vec<(usize, usize, CycleId)>> = BTreeMap::new();
    let mut detached = Vec::new();
    for &(c, a) in items {
        match a.interval() {
            Some((lo, hi)) => groups.entry(out.container[&c]).or_default().push((lo, hi, c)),
            None => detached.push(c),
        }
    }
    let mut blocks: Vec<(usize, usize, Option<CycleId>, Vec<CycleId>)> = Vec::new();
    for (container, mut list) in groups {
        list.sort();
        let lc = out.lc[&list[0].2];
        let mut cur: Vec<CycleId> = Vec::new();
        let mut start = list[0].0;
        let mut last_hi = 0;
        for (lo, hi, c) in list {
            if !cur.is_empty() && lo > last_hi {
                blocks.push((lc, start, container, std::mem::take(&mut cur)));
                start = lo;
            }
            cur.push(c);
            last_hi = hi;
        }
        blocks.push((lc, start, container, cur));
    }
    blocks.sort_by_key(|(lc, start, _, members)| (*lc, *start, members[0]));
    out.blocks = blocks.into_iter().map(|(lc, _, container, m)| (lc, container, m)).collect();
    for c in detached {
        out.blocks.push((0, None, vec![c]));
    }
    out
}

pub fn weight_class(pf_len: i64, father_ps_len: i64) -> WeightClass {
    if 3 * pf_len > 2 * father_ps_len {
        WeightClass::VeryHeavy
    } else if 3 * pf_len > father_ps_len {
        WeightClass::Heavy
    } else {
        WeightClass::Light
    }
}

/// Fills weight classes, containment levels, closest containers and blocks,
/// with brothers ordered in their father's construction direction.
pub fn build_tree(fam: &mut CycleFamily) {
    fam.blocks.clear();
    for f in 0..fam.cycles.len() {
        let sons = fam.cycles[f].sons.clone();
        if sons.is_empty() {
            continue;
        }
        let ps_len = fam.cycles[f].ps.len;
        let items: Vec<(CycleId, Attachment)> = sons.iter().map(|&s| (s, fam.cycles[s].attach)).collect();
        let info = analyze_brothers(&items);
        for &s in &sons {
            let c = &mut fam.cycles[s];
            c.weight = weight_class(c.pf.len, ps_len);
            c.lc = info.lc[&s];
            c.container = info.container[&s];
        }
        for (lc, container, members) in info.blocks {
            fam.blocks.push(BlockDescriptor { father: f, lc, container, members });
        }
    }
}

pub fn lowest_common_ancestor(fam: &CycleFamily, a: CycleId, b: CycleId) -> Result<CycleId> {
    if a == b || fam.is_ancestor(a, b) || fam.is_ancestor(b, a) {
        return Err(Error::AncestorRelation(a, b));
    }
    let anc_a = fam.ancestors(a);
    fam.ancestors(b)
        .into_iter()
        .find(|x| anc_a.contains(x))
        .ok_or(Error::AncestorRelation(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(lo: usize, hi: usize) -> Attachment {
        Attachment::Span { lo, hi }
    }

    #[test]
    fn nested_spans_give_levels() {
        let items = vec![(0, span(0, 10)), (1, span(2, 8)), (2, span(3, 7)), (3, span(10, 12))];
        let b = analyze_brothers(&items);
        assert_eq!(b.lc[&0], 0);
        assert_eq!(b.lc[&1], 1);
        assert_eq!(b.lc[&2], 2);
        assert_eq!(b.container[&2], Some(1));
        assert_eq!(b.blocks[0], (0, None, vec![0, 3]));
    }

    #[test]
    fn gaps_split_blocks() {
        let items = vec![(0, span(0, 2)), (1, span(3, 5)), (2, span(5, 6)), (3, span(4, 7))];
        let b = analyze_brothers(&items);
        // 2 lies inside 3, so it is one level deeper
        assert_eq!(b.lc[&2], 1);
        assert_eq!(b.blocks[0].2, vec![0]);
        assert_eq!(b.blocks[1].2, vec![1, 3]);
        assert_eq!(b.blocks[2], (1, Some(3), vec![2]));
    }

    #[test]
    fn weights() {
        assert_eq!(weight_class(1, 3), WeightClass::Light);
        assert_eq!(weight_class(2, 5), WeightClass::Heavy);
        assert_eq!(weight_class(7, 10), WeightClass::VeryHeavy);
        assert_eq!(weight_class(0, 0), WeightClass::Light);
    }
}
