//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use halfint::flows::{
    bitfix_routing, congestion, expansion_lower_bound, hexagon_routing, product_routing,
    punctured_hypercube, punctured_routing, Routing,
};
use halfint::graphs::{cartesian_product, Graph};
use halfint::ratlin::Point;
use halfint::skeleton::{hull_vertices, skeleton_graph, PointSet};
use halfint::xi::{build, count_by_enumeration, crossing_edges, cut_report, vertex_count_closed_form};
use halfint::zonotope::{
    component_signature, components_signature, coordinate_budget, cube_vertex_map, decompose,
    graphical_generators, is_half_integral, realize_half_integral, recognize_graphical,
    zonotope_vertices_with_signs, GeneratorSet,
};
use halfint::{RatPoint, Rational, Scalar};

type Outcome = Result<String, String>;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_counts() -> Outcome {
    let mut totals = Vec::new();
    for (d, want) in [(3, 12u128), (7, 420), (11, 21252)] {
        let xi = build(d).map_err(|e| e.to_string())?;
        let enumerated = count_by_enumeration(d).map_err(|e| e.to_string())?;
        let (integral, centers) = vertex_count_closed_form(d).map_err(|e| e.to_string())?;
        let built = xi.vertices.len() as u128;
        let counted = (enumerated.integral + enumerated.centers) as u128;
        ensure(
            built == want && counted == want && integral + centers == want,
            || format!("d={d}: built {built}, enumerated {counted}, closed form {}, want {want}", integral + centers),
        )?;
        ensure(
            enumerated.integral as u128 == integral && enumerated.centers as u128 == centers,
            || format!("d={d}: integral/centers split differs from closed form"),
        )?;
        totals.push(built.to_string());
    }
    Ok(format!("totals {}", totals.join(", ")))
}

fn c2_hull_vertices() -> Outcome {
    let mut out = Vec::new();
    for d in [3, 7] {
        let xi = build(d).map_err(|e| e.to_string())?;
        let hv = hull_vertices(&xi.vertices);
        let n = xi.vertices.len();
        ensure(hv == (0..n).collect::<Vec<_>>(), || {
            format!("d={d}: {} of {n} points are vertices", hv.len())
        })?;
        out.push(format!("d={d}: {n}/{n}"));
    }
    Ok(out.join(", "))
}

fn c3_crossing_edges() -> Outcome {
    let mut out = Vec::new();
    for d in [3, 7] {
        let xi = build(d).map_err(|e| e.to_string())?;
        let skel = skeleton_graph(&xi.vertices).map_err(|e| e.to_string())?;
        let pts = xi.vertices.points();
        let twice = |p: &RatPoint| p.sum() * Rational::from_int(2);
        let dd = Rational::from_int(d as i64);
        let found: BTreeSet<(RatPoint, RatPoint)> = skel
            .edges()
            .iter()
            .filter_map(|&(i, j)| {
                let (a, b) = (&pts[i], &pts[j]);
                let (sa, sb) = (twice(a), twice(b));
                if sa < dd && sb > dd {
                    Some((a.clone(), b.clone()))
                } else if sb < dd && sa > dd {
                    Some((b.clone(), a.clone()))
                } else {
                    None
                }
            })
            .collect();
        let want: BTreeSet<_> = crossing_edges(d).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(found == want, || {
            format!("d={d}: skeleton has {} crossing edges, expected {}", found.len(), want.len())
        })?;
        out.push(format!("d={d}: {} crossing of {} edges", found.len(), skel.edge_count()));
    }
    Ok(out.join(", "))
}

fn c4_trajectory() -> Outcome {
    let want = [(7, r(2, 3)), (11, r(2772, 10626)), (15, r(51480, 604890)), (19, r(923780, 35750286))];
    let mut prev: Option<Rational> = None;
    let mut first_below = None;
    for (d, ratio) in want {
        let rep = cut_report(d).map_err(|e| e.to_string())?;
        ensure(rep.ratio == ratio, || format!("d={d}: ratio {} != {ratio}", rep.ratio))?;
        if let Some(p) = &prev {
            ensure(rep.normalized_square < *p, || format!("d={d}: normalized square not decreasing"))?;
        }
        if rep.below_decay_bound && first_below.is_none() {
            first_below = Some(d);
        }
        prev = Some(rep.normalized_square);
    }
    ensure(first_below == Some(19), || format!("first d below d/√2^d: {first_below:?}, expected 19"))?;
    Ok("ratios exact, normalized square decreasing, first below bound at d=19".into())
}

fn c5_bitfix() -> Outcome {
    for d in 1..=6 {
        let rt = bitfix_routing(d).map_err(|e| e.to_string())?;
        rt.validate().map_err(|e| e.to_string())?;
        let flows = rt.arc_flows().map_err(|e| e.to_string())?;
        let want = Rational::from_int(1i64 << (d - 1));
        ensure(flows.len() == 2 * rt.graph().edge_count(), || format!("d={d}: some arc unused"))?;
        ensure(flows.iter().all(|(_, f)| *f == want), || format!("d={d}: arc flow differs from {want}"))?;
        let rep = congestion(&rt).map_err(|e| e.to_string())?;
        ensure(rep.congestion == r(1, 2), || format!("d={d}: congestion {}", rep.congestion))?;
        let bound = expansion_lower_bound(&rep).map_err(|e| e.to_string())?;
        ensure(bound == r(1, 1), || format!("d={d}: bound {bound}"))?;
        if d <= 4 {
            let (h, _) = Graph::hypercube(d).expansion_bruteforce().map_err(|e| e.to_string())?;
            ensure(h == r(1, 1), || format!("d={d}: expansion {h}"))?;
        }
    }
    Ok("arc flows 2^(d-1) for d<=6, congestion 1/2, bound 1 = h(Q_d) for d<=4".into())
}

fn c6_punctured() -> Outcome {
    let mut out = Vec::new();
    for d in 4..=6 {
        let pr = punctured_routing(d).map_err(|e| e.to_string())?;
        pr.routing.validate().map_err(|e| e.to_string())?;
        let rep = congestion(&pr.routing).map_err(|e| e.to_string())?;
        let cap = Rational::from_int(3i64 << (d - 2));
        ensure(rep.max_arc_flow <= cap, || format!("d={d}: max arc flow {} > {cap}", rep.max_arc_flow))?;
        ensure(rep.congestion <= r(6, 7), || format!("d={d}: congestion {}", rep.congestion))?;
        out.push(format!("d={d}: {}", rep.congestion));
    }
    for d in 3..=5 {
        let gs = graphical_generators::<Rational>(&Graph::cycle(d));
        let dec = decompose(&gs).map_err(|e| e.to_string())?;
        let vs = zonotope_vertices_with_signs(&gs).map_err(|e| e.to_string())?;
        let signs: Vec<Vec<bool>> = vs.iter().map(|(_, s)| s.clone()).collect();
        let ps = PointSet::new(d, vs.into_iter().map(|(p, _)| p).collect()).map_err(|e| e.to_string())?;
        let skel = skeleton_graph(&ps).map_err(|e| e.to_string())?;
        let cube = punctured_hypercube(d);
        ensure(skel.n() == (1 << d) - 2, || format!("Z(C_{d}) has {} vertices", skel.n()))?;
        let map: Vec<usize> = cube_vertex_map(&signs, &dec.witnesses[0])
            .into_iter()
            .map(|v| v.wrapping_sub(1))
            .collect();
        let iso = skel.is_isomorphic_via(&cube, &map).map_err(|e| e.to_string())?;
        ensure(iso, || format!("Z(C_{d}): witness map is not an isomorphism"))?;
    }
    Ok(format!("congestion {}; Z(C_3..5) mapped onto punctured cubes", out.join(", ")))
}

fn c7_hexagon() -> Outcome {
    let rt = hexagon_routing();
    rt.validate().map_err(|e| e.to_string())?;
    let rep = congestion(&rt).map_err(|e| e.to_string())?;
    ensure(rep.congestion == r(3, 4), || format!("congestion {}", rep.congestion))?;
    let bound = expansion_lower_bound(&rep).map_err(|e| e.to_string())?;
    let (h, _) = Graph::cycle(6).expansion_bruteforce().map_err(|e| e.to_string())?;
    ensure(h == r(2, 3) && h >= bound, || format!("h(C6) = {h}, bound {bound}"))?;
    Ok(format!("congestion 3/4, h(C6) = {h} >= {bound}"))
}

fn c8_products() -> Outcome {
    let mut factors: Vec<(String, Routing)> = Vec::new();
    for d in 1..=3 {
        factors.push((format!("Q{d}"), bitfix_routing(d).map_err(|e| e.to_string())?));
    }
    factors.push(("C6".into(), hexagon_routing()));
    factors.push(("PQ4".into(), punctured_routing(4).map_err(|e| e.to_string())?.routing));
    let own: Vec<Rational> = factors
        .iter()
        .map(|(_, rt)| congestion(rt).map(|c| c.congestion))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;

    // Multisets of factor indices (non-decreasing) with at most 24 vertices.
    let mut combos: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 1)];
    while let Some((combo, n)) = stack.pop() {
        let start = combo.last().copied().unwrap_or(0);
        for (i, (_, rt)) in factors.iter().enumerate().skip(start) {
            let m = n * rt.graph().n();
            if m <= 24 {
                let mut next = combo.clone();
                next.push(i);
                combos.push(next.clone());
                stack.push((next, m));
            }
        }
    }
    combos.sort();

    let mut worst = r(1, 1);
    for combo in &combos {
        let mut rt = factors[combo[0]].1.clone();
        for &i in &combo[1..] {
            rt = product_routing(&rt, &factors[i].1).map_err(|e| e.to_string())?;
        }
        let name = combo.iter().map(|&i| factors[i].0.as_str()).collect::<Vec<_>>().join("x");
        rt.validate().map_err(|e| format!("{name}: {e}"))?;
        let c = congestion(&rt).map_err(|e| e.to_string())?.congestion;
        let cap = combo.iter().map(|&i| own[i].clone()).max().expect("nonempty");
        ensure(c <= cap && cap <= r(6, 7), || format!("{name}: congestion {c} > {cap}"))?;
        let g = combo[1..]
            .iter()
            .fold(factors[combo[0]].1.graph().clone(), |acc, &i| cartesian_product(&acc, factors[i].1.graph()));
        ensure(g == *rt.graph(), || format!("{name}: routing graph differs from product graph"))?;
        let (h, _) = g.expansion_bruteforce().map_err(|e| e.to_string())?;
        ensure(h >= r(7, 12), || format!("{name}: expansion {h} < 7/12"))?;
        if h < worst {
            worst = h;
        }
    }
    Ok(format!("{} instances, smallest expansion {worst}", combos.len()))
}

/// Non-isomorphic graphs of maximum degree 2 on `1..=max_n` vertices.
fn degree_two_graphs(max_n: usize) -> Vec<Graph> {
    // Component kinds: cycles on 3..=max_n vertices, paths on 1..=max_n vertices.
    let kinds: Vec<(bool, usize)> = (3..=max_n)
        .map(|k| (true, k))
        .chain((1..=max_n).map(|k| (false, k)))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((combo, n)) = stack.pop() {
        let start = combo.last().copied().unwrap_or(0);
        for (i, &(_, k)) in kinds.iter().enumerate().skip(start) {
            if n + k <= max_n {
                let mut next = combo.clone();
                next.push(i);
                let parts: Vec<(String, Graph)> = next
                    .iter()
                    .enumerate()
                    .map(|(c, &j)| {
                        let (cyc, k) = kinds[j];
                        (format!("{c}:"), if cyc { Graph::cycle(k) } else { Graph::path(k) })
                    })
                    .collect();
                out.push(Graph::disjoint_union(&parts));
                stack.push((next, n + k));
            }
        }
    }
    out
}

fn c9_round_trip() -> Outcome {
    let graphs = degree_two_graphs(8);
    let mut circuits = 0;
    for g in &graphs {
        let gs = realize_half_integral::<Rational>(g).map_err(|e| e.to_string())?;
        let dec = recognize_graphical(&gs).map_err(|e| format!("{}: {e}", g.to_json_string()))?;
        ensure(components_signature(&dec.components) == component_signature(g), || {
            format!("{}: components {:?}", g.to_json_string(), dec.components)
        })?;
        for w in &dec.witnesses {
            circuits += 1;
            ensure(w.lambda.iter().all(|l| l.abs() == 1), || format!("circuit {:?}: λ {:?}", w.block, w.lambda))?;
            let sum = w.block.iter().zip(&w.lambda).fold(Point::zeros(gs.dim()), |acc: RatPoint, (&i, &l)| {
                acc.add(&gs.generators()[i].scale(&Rational::from_int(l as i64)))
            });
            ensure(sum.is_zero(), || format!("circuit {:?}: Σλg ≠ 0", w.block))?;
        }
        let mut seen = BTreeSet::new();
        for support in &dec.block_supports {
            for &c in support {
                ensure(seen.insert(c), || format!("{}: coordinate {c} in two blocks", g.to_json_string()))?;
            }
        }
    }
    Ok(format!("{} graphs, {circuits} circuits", graphs.len()))
}

fn c10_octagon() -> Outcome {
    let g = |a: (i64, i64), b: (i64, i64)| RatPoint::from_fracs(&[a, b]);
    let gs = GeneratorSet::canonicalize(
        2,
        vec![g((1, 3), (0, 1)), g((0, 1), (1, 3)), g((1, 3), (1, 3)), g((1, 3), (-1, 3))],
    )
    .map_err(|e| e.to_string())?;
    let hi = is_half_integral(&gs).map_err(|e| e.to_string())?;
    ensure(!hi.half_integral, || "octagon reported half-integral".into())?;
    let budget = coordinate_budget(&gs);
    ensure(!budget.passes, || "octagon passes the coordinate budget".into())?;
    let named: Vec<usize> = budget.violations.iter().map(|v| v.coordinate).collect();
    ensure(named.contains(&0), || format!("violations name coordinates {named:?}, not 0"))?;
    Ok(format!("rejected; violating coordinates {named:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("xi counts", c1_counts),
        ("xi hull vertices", c2_hull_vertices),
        ("xi crossing edges", c3_crossing_edges),
        ("xi cut trajectory", c4_trajectory),
        ("cube bit-fixing", c5_bitfix),
        ("punctured cube", c6_punctured),
        ("hexagon", c7_hexagon),
        ("products", c8_products),
        ("degree-2 round trip", c9_round_trip),
        ("octagon rejection", c10_octagon),
    ];
    let only: Vec<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect())
        .unwrap_or_default();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {id:>2} PASS [{secs:8.2}s] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{secs:8.2}s] {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
