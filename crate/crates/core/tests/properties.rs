mod common;

use std::collections::BTreeMap;

use planar_orient::cost::set_key;
use planar_orient::family::build_families;
use planar_orient::generate::{generate, GenSpec, Lengths, Model};
use planar_orient::shortest::{min_cycle_through, shortest_path};
use planar_orient::verify::{full_report, ReportOptions};
use planar_orient::{EdgeId, WeightedGraph};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = WeightedGraph> {
    (0usize..3, 4usize..18, any::<u64>(), prop_oneof![Just(0i64), 1i64..10]).prop_filter_map(
        "generation failed",
        |(model, n, seed, k)| {
            let model = [Model::Delaunay, Model::GridWithDeletions, Model::Wheel][model];
            let lengths = if k == 0 { Lengths::Unit } else { Lengths::Uniform(k) };
            generate(&GenSpec::new(model, n, seed, lengths)).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_ignores_rotation_and_direction(g in instance(), pick in any::<usize>(), rot in any::<usize>()) {
        let v = planar_orient::NodeId(1 + pick % (g.node_count() - 1));
        let c = min_cycle_through(&g, v).unwrap();
        let k = c.edges().len();
        let turned = c.rotated(rot % k);
        prop_assert_eq!(turned.canonical(), c.canonical());
        prop_assert_eq!(turned.reversed().canonical(), c.canonical());
        prop_assert_eq!(turned.key(&g), c.key(&g));
    }

    #[test]
    fn keys_order_edge_sets_totally(g in instance(), a in any::<u64>(), b in any::<u64>()) {
        let m = g.edge_count().min(63);
        let set = |mask: u64| (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect::<Vec<_>>();
        let (sa, sb) = (set(a), set(b));
        let (ka, kb) = (set_key(&g, &sa), set_key(&g, &sb));
        prop_assert_eq!(ka == kb, sa == sb);
        let (la, lb) = (g.total_len(&sa), g.total_len(&sb));
        if la != lb {
            prop_assert_eq!(la < lb, ka < kb);
        }
    }

    #[test]
    fn subpaths_add_up(g in instance(), pick in any::<usize>(), mid in any::<usize>()) {
        let z = g.root();
        let v = planar_orient::NodeId(1 + pick % (g.node_count() - 1));
        let p = shortest_path(&g, z, v).unwrap();
        let w = p.nodes[mid % p.nodes.len()];
        let left = p.subpath(&g, z, w).unwrap();
        let right = p.subpath(&g, w, v).unwrap();
        prop_assert_eq!(left.len + right.len, p.len);
        prop_assert_eq!(left.edges.len() + right.edges.len(), p.edges.len());
    }

    #[test]
    fn served_sets_cover_every_node_once(g in instance()) {
        let fams = build_families(&g).unwrap();
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &fams {
            for c in &f.cycles {
                for &v in &c.served {
                    *count.entry(v.0).or_default() += 1;
                    prop_assert!(c.cycle.contains_node(v));
                    prop_assert_eq!(c.len(), min_cycle_through(&g, v).unwrap().len());
                }
            }
        }
        for v in g.nodes().filter(|&v| v != g.root()) {
            prop_assert_eq!(count.get(&v.0).copied(), Some(1), "node {}", g.name(v));
        }
    }

    #[test]
    fn fathers_are_shorter(g in instance()) {
        for f in build_families(&g).unwrap() {
            for c in &f.cycles {
                if let Some(p) = c.father {
                    prop_assert!(f.cycle(p).key < c.key);
                    prop_assert!(f.cycle(p).len() <= c.len());
                    prop_assert_eq!(f.cycle(p).generation + 1, c.generation);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_meets_every_bound(g in instance()) {
        let r = full_report(&g, ReportOptions { oracle_max_edges: 0 }).unwrap();
        prop_assert!(r.passed(), "{:?}", r.violations);
        prop_assert!(r.unreachable.is_empty());
    }
}
