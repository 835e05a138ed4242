//! Small hand-built instances whose cycle structure is known exactly.
//!
//! Each figure lists its graph and, where the structure is given as a list of
//! cycles rather than derived from shortest cycles, the cycles themselves.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::path::CycleWalk;

#[derive(Debug, Clone)]
pub struct Figure {
    pub name: &'static str,
    pub graph: WeightedGraph,
    /// Named cycles as node-name sequences starting and ending at the root.
    pub cycles: Vec<(&'static str, Vec<&'static str>)>,
}

impl Figure {
    pub fn cycle_walks(&self) -> Result<Vec<(&'static str, CycleWalk)>> {
        self.cycles
            .iter()
            .map(|(name, seq)| {
                let nodes = seq
                    .iter()
                    .map(|s| self.graph.node(s).ok_or_else(|| Error::MalformedInstance(format!("unknown node {s}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*name, CycleWalk::from_nodes(&self.graph, &nodes)?))
            })
            .collect()
    }

    pub fn walk(&self, name: &str) -> Result<CycleWalk> {
        self.cycle_walks()?
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::MalformedInstance(format!("no cycle {name}")))
    }
}

pub const NAMES: [&str; 7] = ["lcafig", "deffig", "intervalfig", "inncrossfig", "bigexfig", "crfig", "gdeffig"];

pub fn figure(name: &str) -> Result<Figure> {
    match name {
        "lcafig" => lcafig(),
        "deffig" => deffig(),
        "intervalfig" => intervalfig(),
        "inncrossfig" => inncrossfig(),
        "bigexfig" => bigexfig(),
        "crfig" => crfig(),
        "gdeffig" => gdeffig(),
        other => Err(Error::MalformedInstance(format!("unknown figure {other}"))),
    }
}

fn chars(s: &'static str) -> Vec<&'static str> {
    // single-letter node names
    (0..s.len()).map(|i| &s[i..i + 1]).collect()
}

fn unit(names: &[&str], edges: &[(&str, &str)]) -> Result<WeightedGraph> {
    let list: Vec<(&str, &str, i64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
    WeightedGraph::from_named(names, "z", &list, 1)
}

fn lcafig() -> Result<Figure> {
    let graph = unit(
        &chars("zabcdefghijk"),
        &[
            ("z", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "z"),
            ("a", "e"), ("e", "f"), ("f", "g"), ("g", "h"), ("h", "b"),
            ("e", "j"), ("j", "f"), ("g", "k"), ("k", "h"), ("c", "i"), ("i", "d"),
        ],
    )?;
    Ok(Figure {
        name: "lcafig",
        graph,
        cycles: vec![
            ("C0", chars("zabcdz")),
            ("C1", chars("zaefghbcdz")),
            ("C2", chars("zaejfghbcdz")),
            ("C3", chars("zaefgkhbcdz")),
            ("C4", chars("zabcidz")),
        ],
    })
}

/// Lengths in halves: an unlabeled edge has length zero.
fn deffig() -> Result<Figure> {
    let edges: Vec<(&str, &str, i64)> = vec![
        ("z", "a", 0), ("a", "e", 0), ("e", "h", 0), ("h", "n", 0), ("n", "z", 0),
        ("a", "b", 0), ("b", "e", 0), ("b", "c", 0), ("c", "f", 2), ("f", "i", 2), ("i", "h", 0),
        ("c", "d", 0), ("d", "g", 6), ("g", "f", 2), ("g", "j", 6), ("j", "i", 0),
        ("d", "k", 6), ("k", "j", 0), ("i", "l", 2), ("l", "o", 2), ("o", "n", 0),
        ("l", "m", 10), ("m", "r", 4), ("r", "o", 0), ("j", "m", 6), ("k", "r", 3),
    ];
    let graph = WeightedGraph::from_named(&chars("zabcdefghijklmnor"), "z", &edges, 2)?;
    Ok(Figure {
        name: "deffig",
        graph,
        cycles: vec![
            ("C0", chars("zaehnz")),
            ("C1", chars("zabehnz")),
            ("C2", chars("zabcfihnz")),
            ("C3", chars("zabcdgfihnz")),
            ("C4", chars("zabcfgjihnz")),
            ("C5", chars("zabcdkjihnz")),
            ("C6", chars("zaehilonz")),
            ("C7", chars("zaehilmronz")),
            ("C8", chars("zaehijmronz")),
            ("C9", chars("zaehijkronz")),
        ],
    })
}

/// Son paths drawn above a long father path; lengths are Manhattan distances
/// of the drawing, the root hangs below both ends.
fn intervalfig() -> Result<Figure> {
    let pts: &[(&str, i64, i64)] = &[
        ("L", 12, 285), ("A0", 282, 285), ("v1", 912, 285), ("v2", 2082, 285), ("v3", 2487, 285),
        ("w", 2802, 285), ("v4", 3972, 285), ("u", 4557, 285), ("v5", 5457, 285), ("v6", 6267, 285),
        ("v7", 6897, 285), ("v8", 7707, 285), ("v9", 8472, 285), ("v10", 9327, 285), ("R", 9687, 285),
        ("P1", 282, 3480), ("P2", 7707, 3480), ("P3", 9327, 3480),
        ("T1", 912, 1230), ("T2", 2082, 1230), ("T3", 2802, 1230), ("X", 2802, 652), ("T4", 3297, 1230),
        ("T5", 3972, 1230), ("T6", 4557, 1230), ("T7", 5457, 1230), ("T8", 6267, 1230), ("T9", 6897, 1230),
        ("Q8", 7707, 1230), ("Q9", 8472, 1230), ("Q10", 9327, 1230),
    ];
    let pos = |n: &str| pts.iter().find(|p| p.0 == n).map(|p| (p.1, p.2)).unwrap();
    let seg = |a: &'static str, b: &'static str| {
        let (pa, pb) = (pos(a), pos(b));
        (a, b, (pa.0 - pb.0).abs() + (pa.1 - pb.1).abs())
    };
    let base = ["L", "A0", "v1", "v2", "v3", "w", "v4", "u", "v5", "v6", "v7", "v8", "v9", "v10", "R"];
    let mut edges = vec![("z", "L", 1000), ("R", "z", 1000)];
    for w in base.windows(2) {
        edges.push(seg(w[0], w[1]));
    }
    for (a, b) in [
        ("A0", "P1"), ("P1", "P2"), ("P2", "Q8"), ("Q8", "v8"), ("P2", "P3"), ("P3", "Q10"), ("Q10", "v10"),
        ("v1", "T1"), ("T1", "T2"), ("T2", "v2"), ("T2", "T3"), ("T3", "X"), ("X", "w"),
        ("v3", "X"), ("X", "T4"), ("T4", "T5"), ("T5", "v4"), ("T5", "T6"), ("T6", "u"),
        ("v5", "T7"), ("T7", "T8"), ("T8", "v6"), ("T8", "T9"), ("T9", "v7"), ("T9", "Q8"),
        ("Q8", "Q9"), ("Q9", "v9"), ("Q9", "Q10"),
    ] {
        edges.push(seg(a, b));
    }
    let mut names = vec!["z"];
    names.extend(pts.iter().map(|p| p.0));
    let graph = WeightedGraph::from_named(&names, "z", &edges, 1)?;
    // every son follows the father path except between its two ends
    let son = |from: &'static str, detour: &[&'static str], to: &'static str| -> Vec<&'static str> {
        let mut seq = vec!["z"];
        let i = base.iter().position(|&b| b == from).unwrap();
        let j = base.iter().position(|&b| b == to).unwrap();
        seq.extend_from_slice(&base[..=i]);
        seq.extend_from_slice(detour);
        seq.extend_from_slice(&base[j..]);
        seq.push("z");
        seq
    };
    let mut c0 = vec!["z"];
    c0.extend_from_slice(&base);
    c0.push("z");
    Ok(Figure {
        name: "intervalfig",
        graph,
        cycles: vec![
            ("C0", c0),
            ("C'", son("A0", &["P1", "P2", "Q8"], "v8")),
            ("C''", son("v8", &["Q8", "P2", "P3", "Q10"], "v10")),
            ("C1", son("v1", &["T1", "T2"], "v2")),
            ("C2", son("v2", &["T2", "T3", "X"], "w")),
            ("C3", son("v3", &["X", "T4", "T5"], "v4")),
            ("C4", son("v4", &["T5", "T6"], "u")),
            ("C5", son("v5", &["T7", "T8"], "v6")),
            ("C6", son("v6", &["T8", "T9"], "v7")),
            ("C7", son("v7", &["T9", "Q8"], "v8")),
            ("C8", son("v8", &["Q8", "Q9"], "v9")),
            ("C9", son("v9", &["Q9", "Q10"], "v10")),
        ],
    })
}

/// Two crossing brothers whose served nodes lie on the inner sides, below a
/// common containing brother. Here the serving cycles are the listed ones.
fn inncrossfig() -> Result<Figure> {
    let edges = [
        ("z", "k", 1), ("k", "g", 1), ("g", "l", 1), ("l", "h", 1), ("h", "z", 1),
        ("k", "x", 2), ("x", "h", 2), ("x", "p", 1), ("p", "l", 1), ("g", "q", 1), ("q", "x", 1),
    ];
    let graph = WeightedGraph::from_named(&chars("zkglhxpq"), "z", &edges, 1)?;
    Ok(Figure {
        name: "inncrossfig",
        graph,
        cycles: vec![
            ("F", chars("zkglhz")),
            ("C'", chars("zkxhz")),
            ("C1", chars("zkxplhz")),
            ("C2", chars("zkgqxhz")),
        ],
    })
}

fn bigexfig() -> Result<Figure> {
    let graph = unit(
        &chars("zabcdefghijklmnopqrstuv"),
        &[
            ("z", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "g"), ("g", "h"),
            ("h", "i"), ("i", "z"), ("a", "j"), ("j", "b"), ("j", "k"), ("k", "l"), ("l", "m"), ("m", "n"),
            ("n", "c"), ("k", "o"), ("o", "l"), ("o", "p"), ("p", "m"), ("p", "n"), ("d", "q"), ("q", "v"),
            ("v", "i"), ("v", "u"), ("u", "h"), ("q", "r"), ("r", "e"), ("r", "s"), ("s", "f"), ("s", "t"),
            ("t", "g"), ("t", "u"),
        ],
    )?;
    Ok(Figure {
        name: "bigexfig",
        graph,
        cycles: vec![
            ("C0", chars("zabcdefghiz")),
            ("C1", chars("zajbcdefghiz")),
            ("C2", chars("zabjklmncdefghiz")),
            ("C3", chars("zabjkolmncdefghiz")),
            ("C4", chars("zabjklopmncdefghiz")),
            ("C5", chars("zabjklmpncdefghiz")),
            ("C6", chars("zabcdqviz")),
            ("C7", chars("zabcdqvuhiz")),
            ("C8", chars("zabcdqrefghiz")),
            ("C9", chars("zabcdersfghiz")),
            ("C10", chars("zabcdefstghiz")),
            ("C11", chars("zabcdefgtuhiz")),
        ],
    })
}

/// Outer crossing below the root: `C'` serves `p` on its outer side,
/// `C''` serves `x` and `q` on its outer side, and `x-g` is the shortcut.
fn crfig() -> Result<Figure> {
    let edges = [
        ("z", "k", 1), ("k", "g", 1), ("g", "l", 3), ("l", "h", 1), ("h", "z", 1),
        ("k", "p", 2), ("p", "x", 2), ("x", "l", 3), ("g", "x", 1), ("x", "q", 3), ("q", "h", 2),
    ];
    let graph = WeightedGraph::from_named(&chars("zkglhpxq"), "z", &edges, 1)?;
    Ok(Figure {
        name: "crfig",
        graph,
        cycles: vec![
            ("C", chars("zkglhz")),
            ("C'", chars("zkpxlhz")),
            ("C''", chars("zkgxqhz")),
            ("Ĉ", chars("zkpxglhz")),
        ],
    })
}

/// Three blobs that meet only at the root.
fn gdeffig() -> Result<Figure> {
    let graph = unit(
        &chars("zabcdefghi"),
        &[
            ("z", "a"), ("a", "b"), ("b", "z"), ("a", "c"), ("c", "b"),
            ("z", "d"), ("d", "e"), ("e", "f"), ("f", "z"), ("d", "f"),
            ("z", "g"), ("g", "h"), ("h", "z"), ("g", "i"), ("i", "h"),
        ],
    )?;
    Ok(Figure { name: "gdeffig", graph, cycles: Vec::new() })
}
