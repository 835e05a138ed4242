mod common;

use common::*;
use planar_orient::cost::set_key;
use planar_orient::orient::Orientation;
use planar_orient::shortest::{distances, min_cycle_len_between, min_cycle_through, shortest_path};
use planar_orient::verify::{
    cycle_diameter, directed_cycle_diameter, directed_cycle_through, oracle_min_cycle, oracle_opt_orientation,
    run_pipeline, DirectedView,
};
use planar_orient::NodeId;

#[test]
fn min_cycle_matches_enumeration_on_small_graphs() {
    let graphs = small_graphs();
    assert!(graphs.len() >= 20);
    for g in &graphs {
        for a in g.nodes() {
            for b in g.nodes().filter(|&b| b > a) {
                let want = enum_min_cycle(g, a, b);
                assert_eq!(min_cycle_len_between(g, a, b), want, "{a:?} {b:?}");
                assert_eq!(oracle_min_cycle(g, a, b, 10).unwrap(), want);
            }
        }
    }
}

#[test]
fn serving_cycle_has_minimum_length() {
    for g in &small_graphs() {
        for v in g.nodes().filter(|&v| v != g.root()) {
            let c = min_cycle_through(g, v).unwrap();
            assert_eq!(Some(c.len()), enum_min_cycle(g, g.root(), v));
            assert!(c.contains_node(v) && c.nodes()[0] == g.root());
        }
    }
}

#[test]
fn shortest_path_is_the_minimum_key_simple_path() {
    for g in small_graphs().iter().take(15) {
        let z = g.root();
        let dist = distances(g, z);
        for v in g.nodes().filter(|&v| v != z) {
            let best = simple_paths(g, z, v).into_iter().min_by_key(|p| set_key(g, p)).unwrap();
            let got = shortest_path(g, z, v).unwrap();
            assert_eq!(got.edges, best);
            assert_eq!(Some(got.len), dist[v.0]);
        }
    }
}

#[test]
fn k4_values() {
    let g = k4();
    for v in g.nodes().filter(|&v| v != g.root()) {
        assert_eq!(min_cycle_through(&g, v).unwrap().len(), 3);
    }
    assert_eq!(cycle_diameter(&g).unwrap(), 3);
    let (d_opt, dirs) = oracle_opt_orientation(&g, 14).unwrap();
    assert_eq!(Some(d_opt), brute_d_opt(&g));
    assert_eq!(directed_diameter(&floyd(&g, &dirs)), Some(d_opt));
}

#[test]
fn oriented_k4_matches_floyd() {
    let g = k4();
    let p = run_pipeline(&g).unwrap();
    let dirs = p.orientation.as_bools().unwrap();
    let d = floyd(&g, &dirs);
    let h = DirectedView::new(&g, &p.orientation);
    let z = g.root();
    for v in g.nodes().filter(|&v| v != z) {
        let want = d[z.0][v.0].unwrap() + d[v.0][z.0].unwrap();
        assert_eq!(directed_cycle_through(&h, v).unwrap(), want);
    }
    assert_eq!(directed_cycle_diameter(&h).ok(), directed_diameter(&d));
}

#[test]
fn every_strong_orientation_of_k4_agrees_with_floyd() {
    let g = k4();
    for mask in 0u32..64 {
        let dirs: Vec<bool> = (0..6).map(|i| mask >> i & 1 == 1).collect();
        let o = Orientation::from_bools(&dirs);
        let h = DirectedView::new(&g, &o);
        assert_eq!(directed_cycle_diameter(&h).ok(), directed_diameter(&floyd(&g, &dirs)), "mask {mask}");
    }
}

#[test]
fn d_opt_matches_unreduced_search() {
    // the crate fixes one edge's direction; the test searches all 2^m
    for g in small_graphs().iter().filter(|g| g.edge_count() <= 12).take(12) {
        assert_eq!(Some(oracle_opt_orientation(g, 14).unwrap().0), brute_d_opt(g));
    }
}

#[test]
fn cycle_diameter_is_max_pairwise_cycle() {
    for g in small_graphs().iter().take(10) {
        let mut want = 0;
        for a in g.nodes() {
            for b in g.nodes().filter(|&b| b > a) {
                want = want.max(enum_min_cycle(g, a, b).unwrap());
            }
        }
        assert_eq!(cycle_diameter(g).unwrap(), want);
    }
}

#[test]
fn unit_triangle_d_opt_is_three() {
    let g = planar_orient::WeightedGraph::from_named(
        &["z", "a", "b"],
        "z",
        &[("z", "a", 1), ("a", "b", 1), ("b", "z", 1)],
        1,
    )
    .unwrap();
    assert_eq!(oracle_opt_orientation(&g, 14).unwrap().0, 3);
    assert_eq!(directed_cycle_through(&DirectedView::new(&g, &run_pipeline(&g).unwrap().orientation), NodeId(1)).unwrap(), 3);
}
