use std::collections::BTreeSet;

use halfint::flows::{
    bitfix_routing, congestion, expansion_lower_bound, hexagon_routing, product_routing,
    punctured_routing, CongestionReport,
};
use halfint::graphs::{cartesian_product, Graph};
use halfint::ratlin::{convex_combination, minimal_circuit};
use halfint::skeleton::{hull_edges, hull_vertices, skeleton_graph, PointSet};
use halfint::xi::{build, crossing_edge_count, vertex_count_closed_form};
use halfint::zonotope::{
    decompose, graphical_generators, is_half_integral, realize_half_integral, recognize_graphical,
    zonotope_vertices, zonotope_vertices_with_signs, cube_vertex_map, Component, GeneratorSet,
};
use halfint::{RatPoint, Rational, Scalar};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn halved_triangle() -> GeneratorSet {
    let g = |v: [(i64, i64); 3]| RatPoint::from_fracs(&v);
    GeneratorSet::canonicalize(
        3,
        vec![
            g([(1, 2), (-1, 2), (0, 1)]),
            g([(0, 1), (1, 2), (-1, 2)]),
            g([(1, 2), (0, 1), (-1, 2)]),
        ],
    )
    .unwrap()
}

/// Points of {0, 1/2, 1}^d meeting the defining conditions of the vertex set,
/// scanned in base 3.
fn xi_oracle(d: usize) -> BTreeSet<RatPoint> {
    let lo = (d - 1) / 2;
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(d as u32) {
        let digits: Vec<usize> = (0..d).map(|i| code / 3usize.pow(i as u32) % 3).collect();
        let halves = digits.iter().filter(|&&x| x == 1).count();
        let twice_sum: usize = digits.iter().sum();
        let keep = if halves == 0 {
            twice_sum == 2 * lo || twice_sum == 2 * lo + 2
        } else {
            halves == lo && (twice_sum < 2 * lo || twice_sum > 2 * lo + 2)
        };
        if keep {
            out.insert(RatPoint::from_fracs(
                &digits.iter().map(|&x| (x as i64, 2)).collect::<Vec<_>>(),
            ));
        }
    }
    out
}

/// Minimum of boundary/min(|S|, n−|S|) over all proper nonempty subsets.
fn naive_expansion(g: &Graph) -> Rational {
    let n = g.n();
    (1u32..(1 << n) - 1)
        .map(|m| {
            let inside = |v: usize| m >> v & 1 == 1;
            let boundary = g.edges().iter().filter(|&&(a, b)| inside(a) != inside(b)).count();
            let k = m.count_ones() as usize;
            r(boundary as i64, k.min(n - k) as i64)
        })
        .min()
        .unwrap()
}

#[test]
fn xi_vertex_sets_match_definition() {
    for d in [3, 7] {
        let xi = build(d).unwrap();
        let built: BTreeSet<RatPoint> = xi.vertices.points().iter().cloned().collect();
        assert_eq!(built, xi_oracle(d), "d={d}");
    }
    let xi3 = build(3).unwrap();
    let integral = xi3.vertices.points().iter().filter(|p| p.coords().iter().all(|c| c.is_integer())).count();
    assert_eq!((integral, xi3.vertices.len() - integral), (6, 6));
    assert_eq!(vertex_count_closed_form(7).unwrap(), (70, 350));
    assert_eq!(vertex_count_closed_form(11).unwrap(), (924, 20328));
    assert_eq!(
        [3, 7, 11].map(|d| crossing_edge_count(d).unwrap()),
        [6, 140, 2772]
    );
    assert!(build(5).is_err());
}

#[test]
fn xi3_edge_center_is_a_vertex() {
    let xi = build(3).unwrap();
    let target = RatPoint::from_fracs(&[(1, 2), (0, 1), (0, 1)]);
    // f(x) = x₁ − 2Σx attains its maximum only at the target
    let f = |p: &RatPoint| &p[0] - p.sum() * r(2, 1);
    let best = f(&target);
    let others: Vec<&RatPoint> = xi.vertices.points().iter().filter(|p| **p != target).collect();
    assert_eq!(others.len(), 11);
    assert!(others.iter().all(|p| f(p) < best));
    assert!(!convex_combination(&others, &target).is_feasible());
    assert_eq!(hull_vertices(&xi.vertices), (0..12).collect::<Vec<_>>());
}

#[test]
fn xi3_skeleton_and_expansion() {
    let xi = build(3).unwrap();
    let edges = hull_edges(&xi.vertices).unwrap();
    assert_eq!(edges.len(), 18);
    let skel = xi.skeleton().unwrap();
    // truncated cube corners: every vertex has degree 3
    assert!((0..12).all(|v| skel.degree(v) == 3));
    let (h, witness) = skel.expansion_bruteforce().unwrap();
    assert_eq!(h, naive_expansion(&skel));
    assert_eq!(h, r(2, 3));
    assert_eq!(witness.subset_size, 6);
    assert_eq!(witness.boundary_size, 4);
}

#[test]
fn graph_examples() {
    let c6 = Graph::cycle(6);
    assert_eq!(c6.cut_ratio(&[0, 1, 2]).unwrap().ratio, r(2, 3));
    let (h, w) = c6.expansion_bruteforce().unwrap();
    assert_eq!(h, naive_expansion(&c6));
    assert_eq!(w.subset, vec![0, 1, 2]);
    assert_eq!(Graph::hypercube(2).expansion_bruteforce().unwrap().0, r(1, 1));
    let p = cartesian_product(&c6, &Graph::complete(2));
    assert_eq!((p.n(), p.edge_count()), (12, 18));
}

#[test]
fn circuit_of_the_halved_triangle() {
    let c = minimal_circuit(halved_triangle().generators()).unwrap();
    assert_eq!(c.indices, vec![0, 1, 2]);
    assert_eq!(c.coefficients, vec![r(1, 1), r(1, 1), r(-1, 1)]);
}

#[test]
fn zonotope_examples() {
    let tri = halved_triangle();
    let vs = zonotope_vertices(&tri).unwrap();
    assert_eq!(vs.len(), 6);
    let skel = skeleton_graph(&vs).unwrap();
    assert_eq!(skel.edge_count(), 6);
    assert!((0..6).all(|v| skel.degree(v) == 2));
    assert_eq!(zonotope_vertices(&graphical_generators::<Rational>(&Graph::cycle(4))).unwrap().len(), 14);

    let hi = is_half_integral(&tri).unwrap();
    assert_eq!(hi.translation, Some(RatPoint::from_fracs(&[(0, 1), (1, 2), (1, 1)])));

    let dec = recognize_graphical(&tri).unwrap();
    assert_eq!(dec.components, vec![Component::Cycle(3)]);
    assert_eq!(realize_half_integral::<Rational>(&Graph::cycle(3)).unwrap(), tri);

    let c3p2 = Graph::disjoint_union(&[("a".into(), Graph::cycle(3)), ("b".into(), Graph::path(2))]);
    let gs = realize_half_integral::<Rational>(&c3p2).unwrap();
    assert_eq!((gs.len(), gs.dim()), (4, 4));
    let dec = recognize_graphical(&gs).unwrap();
    assert_eq!(dec.block_supports, vec![vec![0, 1, 2], vec![3]]);
    assert_eq!(dec.components, vec![Component::Cycle(3), Component::Path(1)]);

    let c4p3 = Graph::disjoint_union(&[("a".into(), Graph::cycle(4)), ("b".into(), Graph::path(3))]);
    let gs = realize_half_integral::<Rational>(&c4p3).unwrap();
    assert_eq!((gs.len(), gs.dim()), (6, 6));
}

#[test]
fn five_cycle_zonotope_is_a_punctured_cube() {
    let gs = graphical_generators::<Rational>(&Graph::cycle(5));
    let dec = decompose(&gs).unwrap();
    let vs = zonotope_vertices_with_signs(&gs).unwrap();
    assert_eq!(vs.len(), 30);
    let signs: Vec<Vec<bool>> = vs.iter().map(|(_, s)| s.clone()).collect();
    let ps = PointSet::new(5, vs.into_iter().map(|(p, _)| p).collect()).unwrap();
    let skel = skeleton_graph(&ps).unwrap();
    let images = cube_vertex_map(&signs, &dec.witnesses[0]);
    assert!(images.iter().all(|&m| m != 0 && m != 31));
    let map: Vec<usize> = images.into_iter().map(|m| m - 1).collect();
    assert!(skel.is_isomorphic_via(&halfint::flows::punctured_hypercube(5), &map).unwrap());
}

#[test]
fn routing_golden_values() {
    let q3 = bitfix_routing(3).unwrap();
    assert!(q3.arc_flows().unwrap().iter().all(|(_, f)| *f == r(4, 1)));
    let rep = congestion(&q3).unwrap();
    assert_eq!((rep.max_arc_flow.clone(), rep.congestion.clone()), (r(4, 1), r(1, 2)));
    assert_eq!(congestion(&bitfix_routing(6).unwrap()).unwrap().congestion, r(1, 2));

    let hex = congestion(&hexagon_routing()).unwrap();
    assert_eq!((hex.max_arc_flow.clone(), hex.congestion.clone()), (r(9, 2), r(3, 4)));

    let p3 = punctured_routing(3).unwrap();
    assert!(!p3.within_hypothesis);
    let c3 = congestion(&p3.routing).unwrap();
    assert_eq!((c3.max_arc_flow, c3.congestion), (r(5, 1), r(5, 6)));

    let c4 = congestion(&punctured_routing(4).unwrap().routing).unwrap();
    assert!(c4.max_arc_flow <= r(12, 1) && c4.congestion <= r(6, 7));
    let c5 = congestion(&punctured_routing(5).unwrap().routing).unwrap();
    assert!(c5.congestion <= r(4, 5));

    let sq = product_routing(&bitfix_routing(1).unwrap(), &bitfix_routing(1).unwrap()).unwrap();
    assert_eq!(congestion(&sq).unwrap().congestion, r(1, 2));
    let q33 = product_routing(&q3, &q3).unwrap();
    assert!(congestion(&q33).unwrap().congestion <= r(1, 2));
    let q2h = product_routing(&bitfix_routing(2).unwrap(), &hexagon_routing()).unwrap();
    assert!(congestion(&q2h).unwrap().congestion <= r(3, 4));
}

#[test]
fn certificate_bounds() {
    let report = |c: Rational| CongestionReport {
        max_arc_flow: c.clone(),
        n: 1,
        congestion: c,
        argmax_arc: ("0".into(), "1".into()),
    };
    assert_eq!(expansion_lower_bound(&report(r(1, 2))).unwrap(), r(1, 1));
    assert_eq!(expansion_lower_bound(&report(r(6, 7))).unwrap(), r(7, 12));
    assert_eq!(expansion_lower_bound(&report(r(3, 4))).unwrap(), r(2, 3));
}
