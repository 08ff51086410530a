//! Piecewise circle maps: evaluation, structural checks and the
//! mateability report on catalog maps and small synthetic maps.

use bsmaps_core::catalog::{
    bowen_series, completely_folding, higher_bowen_series, non_example_b, non_example_c, octagon_vertex,
    punctured_sphere_group, reflection_map_n,
};
use bsmaps_core::circle_maps::{mateability_report, BreakPointClass, ItemStatus, PiecewiseMap};
use bsmaps_core::moebius::{
    cayley_inverse, cayley_transform, from_turn, turn_of, BoundaryPoint, Model, MoebiusMap,
};
use bsmaps_core::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Disk map conjugate through the Cayley transform to `t ↦ λt`: fixes 1
/// with derivative `λ` and −1 with derivative `1/λ`.
fn dilation(lambda: f64) -> MoebiusMap {
    let s = MoebiusMap::new(
        c(lambda, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        c(1.0, 0.0),
        false,
        Model::HalfPlane,
    )
    .unwrap();
    cayley_inverse()
        .compose(&s)
        .unwrap()
        .compose(&cayley_transform())
        .unwrap()
}

fn catalog_maps() -> Vec<(String, PiecewiseMap)> {
    let mut out = Vec::new();
    for d in 2..=4 {
        out.push((format!("BS({d})"), bowen_series(d).unwrap().map));
    }
    for k in 3..=4 {
        out.push((format!("hBS({k})"), higher_bowen_series(k).unwrap().map));
        out.push((format!("cfm({k})"), completely_folding(k).unwrap().map));
    }
    out.push(("C".into(), non_example_c().unwrap().map));
    out.push(("B(3)".into(), non_example_b(3).unwrap().map));
    out
}

#[test]
fn bs2_evaluation_examples() {
    let bs = bowen_series(2).unwrap();
    assert!(close(bs.map.evaluate_z(c(1.0, 0.0)), c(1.0, 0.0), 1e-12));
    // At −i the half-open convention picks the arc starting there; by
    // continuity the value agrees with g_2^{-1}. Oracle: g_2^{-1} is the
    // inversion in the circle of center −1+i after conjugation, and i lies
    // on that circle.
    let g2 = punctured_sphere_group(2).unwrap().generators()[1];
    let v = bs.map.evaluate_z(c(0.0, -1.0));
    let oracle = {
        let z = c(0.0, -1.0).conj();
        let center = c(-1.0, 1.0);
        center + 1.0 / (z - center).conj()
    };
    assert!(close(v, oracle, 1e-12));
    assert!(close(g2.inverse().apply_disk(c(0.0, -1.0)), oracle, 1e-12));
    assert!(close(oracle, c(0.0, 1.0), 1e-12));
}

#[test]
fn reflection_map_at_minus_i() {
    let n = reflection_map_n().unwrap();
    assert!(close(n.evaluate_z(c(0.0, -1.0)), c(0.0, 1.0), 1e-12));
}

#[test]
fn continuity_of_catalog_maps() {
    for d in 2..=5 {
        assert!(bowen_series(d).unwrap().map.check_continuity().passed());
    }
    for k in 3..=6 {
        assert!(higher_bowen_series(k).unwrap().map.check_continuity().passed());
    }
}

#[test]
fn corrupted_piece_reports_both_ends() {
    let bs = bowen_series(2).unwrap().map;
    let breaks = bs.break_points();
    let mut maps: Vec<MoebiusMap> = bs.pieces().iter().map(|p| p.map).collect();
    maps[1] = MoebiusMap::rotation(0.1);
    let bad = PiecewiseMap::new(breaks.clone(), maps, None).unwrap();
    let rep = bad.check_continuity();
    let pts: Vec<Complex64> = rep.discontinuities.iter().map(|p| p.z()).collect();
    assert_eq!(pts.len(), 2);
    assert!(close(pts[0], breaks[1], 1e-12));
    assert!(close(pts[1], breaks[2], 1e-12));
}

#[test]
fn degrees_of_iterates_multiply() {
    let bs = bowen_series(2).unwrap().map;
    assert_eq!(bs.covering_degree().unwrap(), 3);
    assert_eq!(bs.refine_iterate(1).unwrap(), bs);
    assert_eq!(bs.refine_iterate(2).unwrap().covering_degree().unwrap(), 9);
    assert_eq!(higher_bowen_series(3).unwrap().map.covering_degree().unwrap(), 4);
}

#[test]
fn non_example_b_degree_matches_preimage_count() {
    let b = non_example_b(3).unwrap().map;
    assert!(b.check_continuity().passed());
    let deg = b.covering_degree().unwrap();
    // Brute force: count sign changes of the lifted angle against a regular
    // value on a fine grid.
    let target = 0.123_456_7;
    let n = 10_000;
    let mut count = 0;
    for j in 0..n {
        let a = turn_of(b.evaluate_z(from_turn(j as f64 / n as f64)));
        let bb = turn_of(b.evaluate_z(from_turn((j + 1) as f64 / n as f64)));
        let step = bsmaps_core::moebius::ccw_turns(a, bb);
        if step < 0.5 && bsmaps_core::moebius::ccw_turns(a, target) < step {
            count += 1;
        }
    }
    assert_eq!(deg, count);
}

#[test]
fn rotation_breaks_markov_property() {
    let breaks = vec![c(1.0, 0.0), c(-1.0, 0.0)];
    let r = MoebiusMap::rotation(0.1);
    let pm = PiecewiseMap::new(breaks, vec![r, r], None).unwrap();
    assert!(pm.check_markov().is_err());
}

#[test]
fn minimizing_cfm3_removes_two_vertices() {
    let cfm = completely_folding(3).unwrap().map;
    let min = cfm.minimize();
    let mut want: Vec<f64> = [1, 2, 3, 5, 6, 7]
        .iter()
        .map(|&n| turn_of(octagon_vertex(n)))
        .collect();
    let mut got: Vec<f64> = min.break_points().iter().map(|z| turn_of(*z)).collect();
    want.sort_by(f64::total_cmp);
    got.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 6);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).abs() < 1e-9, "{got:?} vs {want:?}");
    }
}

#[test]
fn minimize_keeps_bs_and_merges_split_arcs() {
    let bs = bowen_series(3).unwrap().map;
    assert_eq!(bs.minimize(), bs);
    let mut breaks = bs.break_points();
    let mut maps: Vec<MoebiusMap> = bs.pieces().iter().map(|p| p.map).collect();
    let mut labels = bs.labels().unwrap();
    breaks.insert(1, from_turn(0.05));
    maps.insert(1, maps[0]);
    labels.insert(1, labels[0].clone());
    let split = PiecewiseMap::new(breaks, maps, Some(labels)).unwrap();
    assert_eq!(split.len(), bs.len() + 1);
    let merged = split.minimize();
    assert_eq!(merged.len(), bs.len());
    for (a, b) in merged.pieces().iter().zip(bs.pieces()) {
        assert!(close(a.arc.start(), b.arc.start(), 1e-12));
        assert!(a.map.approx_eq(&b.map, 1e-12));
    }
}

#[test]
fn multiplier_examples() {
    let bs = bowen_series(2).unwrap().map;
    let m = bs.one_sided_multipliers(c(1.0, 0.0)).unwrap();
    assert_eq!(m.period, 1);
    assert!((m.right - 1.0).abs() < 1e-12 && (m.left - 1.0).abs() < 1e-12);

    let hbs = higher_bowen_series(3).unwrap().map;
    let m = hbs.one_sided_multipliers(c(-1.0, 0.0)).unwrap();
    assert_eq!(m.period, 1);
    assert!(m.right.is_finite() && m.left.is_finite());
    let class = bsmaps_core::circle_maps::classify_multipliers(m.right, m.left);
    assert_ne!(class, BreakPointClass::Mixed);

    // A single hyperbolic piece: both multipliers equal |g′| at the repeller.
    let g = dilation(2.5);
    let pm = PiecewiseMap::new(vec![c(0.0, 1.0), c(0.0, -1.0)], vec![g, g], None).unwrap();
    let m = pm.one_sided_multipliers(c(1.0, 0.0)).unwrap();
    let oracle = g.circle_derivative(BoundaryPoint::Disk(c(1.0, 0.0)));
    assert!((oracle - 2.5).abs() < 1e-12);
    assert!((m.right - oracle).abs() < 1e-12 && (m.left - oracle).abs() < 1e-12);
}

#[test]
fn aperiodic_point_rejected() {
    let bs = bowen_series(2).unwrap().map;
    assert!(bs.one_sided_multipliers(from_turn(0.1234567)).is_err());
}

#[test]
fn break_point_classification() {
    for d in 2..=4 {
        let rep = bowen_series(d).unwrap().map.classify_break_points();
        assert!(rep.passed());
        for e in &rep.entries {
            assert_eq!(e.class, BreakPointClass::SymmetricallyParabolic);
        }
    }
    assert!(higher_bowen_series(3)
        .unwrap()
        .map
        .classify_break_points()
        .passed());

    let pm = PiecewiseMap::new(
        vec![c(1.0, 0.0), c(-1.0, 0.0)],
        vec![dilation(2.0), dilation(3.0)],
        None,
    )
    .unwrap();
    let rep = pm.classify_break_points();
    assert!(!rep.passed());
    assert_eq!(rep.entries[0].class, BreakPointClass::AsymmetricallyHyperbolic);
    assert!((rep.entries[0].right.unwrap() - 2.0).abs() < 1e-9);
    assert!((rep.entries[0].left.unwrap() - 3.0).abs() < 1e-9);
    let csv = rep.to_csv();
    assert!(csv.starts_with("turn,period,right,left,class\n"));
    assert!(csv.contains("asymmetrically-hyperbolic"));
}

#[test]
fn expansivity_proxy_examples() {
    let bs = bowen_series(2).unwrap().map;
    let p = bs.expansivity_proxy(8, 0.1).unwrap();
    assert!(p.passed);
    assert!(p.diameters.windows(2).all(|w| w[1] < w[0]));
    assert!(*p.diameters.last().unwrap() < 0.1);

    let id = MoebiusMap::identity(Model::Disk);
    let pm = PiecewiseMap::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![id, id], None).unwrap();
    assert!(!pm.expansivity_proxy(4, 0.1).unwrap().passed);
}

#[test]
fn fundamental_domains() {
    let fd = bowen_series(2).unwrap().map.fundamental_domain().unwrap();
    let v = fd.polygon.vertices();
    let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
    assert_eq!(v.len(), 4);
    for (a, b) in v.iter().zip(want) {
        assert!(close(*a, b, 1e-12));
    }
    assert_eq!(fd.exterior.len(), 4);

    let fd = higher_bowen_series(3).unwrap().map.fundamental_domain().unwrap();
    let mut got: Vec<f64> = fd.polygon.vertices().iter().map(|z| turn_of(*z)).collect();
    got.sort_by(f64::total_cmp);
    // Oracle: the hexagon on −1, −i, 1, (3+4i)/5, i, (−3+4i)/5.
    let mut want: Vec<f64> = [
        c(-1.0, 0.0),
        c(0.0, -1.0),
        c(1.0, 0.0),
        c(0.6, 0.8),
        c(0.0, 1.0),
        c(-0.6, 0.8),
    ]
    .iter()
    .map(|z| turn_of(*z))
    .collect();
    want.sort_by(f64::total_cmp);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).abs() < 1e-9);
    }

    let id = MoebiusMap::identity(Model::Disk);
    let pm = PiecewiseMap::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![id, id], None).unwrap();
    assert_eq!(pm.fundamental_domain().unwrap().polygon.vertices().len(), 2);
}

#[test]
fn mateability_of_bs3_and_degree_one_map() {
    let lm = bowen_series(3).unwrap();
    let rep = mateability_report(&lm.map, Some(&lm.group), 3);
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.item(1).status, ItemStatus::HeuristicPass);
    assert_eq!(rep.item(3).status, ItemStatus::ProxyPass);

    let r = MoebiusMap::rotation(0.5);
    let pm = PiecewiseMap::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![r, r], None).unwrap();
    let rep = mateability_report(&pm, None, 3);
    assert_eq!(rep.item(3).status, ItemStatus::Fail);
    assert_eq!(rep.item(1).status, ItemStatus::NotAssessed);
}

#[test]
fn column_sums_equal_degree() {
    // Every arc is covered exactly `degree` times. Rows are uniform only
    // for the maps without folding pieces.
    for (name, pm) in catalog_maps() {
        let deg = pm.covering_degree().unwrap() as usize;
        let m = pm.check_markov().unwrap();
        let k = m.size();
        for l in 0..k {
            let col: usize = (0..k).map(|j| m.entries[j][l] as usize).sum();
            assert_eq!(col, deg, "{name} column {l}");
        }
        let uniform_rows = name.starts_with("BS") || name.starts_with("hBS");
        if uniform_rows {
            assert!(m.row_sums().iter().all(|&s| s == deg), "{name}");
        }
    }
}

#[test]
fn break_points_map_to_break_points() {
    for (name, pm) in catalog_maps() {
        for z in pm.break_points() {
            let w = pm.evaluate_z(z);
            assert!(pm.break_index(w, 1e-9).is_some(), "{name}: image of {z} is {w}");
        }
    }
}

#[test]
fn multipliers_are_not_attracting() {
    for (name, pm) in catalog_maps() {
        for e in pm.classify_break_points().entries {
            if let (Some(r), Some(l)) = (e.right, e.left) {
                assert!(r >= 1.0 - 1e-7 && l >= 1.0 - 1e-7, "{name}: {e:?}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let lm = higher_bowen_series(3).unwrap();
    let v = lm.map.to_json();
    assert_eq!(v["breaks"].as_array().unwrap().len(), 6);
    assert_eq!(v["labels"][0], "h");
    let back = PiecewiseMap::from_json(&v).unwrap();
    assert_eq!(back.len(), lm.map.len());
    for (a, b) in back.pieces().iter().zip(lm.map.pieces()) {
        assert!(close(a.arc.start(), b.arc.start(), 1e-14));
        assert!(a.map.approx_eq(&b.map, 1e-14));
        assert_eq!(a.label, b.label);
    }
}

#[test]
fn transition_matrix_csv_has_header() {
    let csv = bowen_series(2).unwrap().map.check_markov().unwrap().to_csv();
    let first = csv.lines().next().unwrap();
    assert_eq!(first.split(',').count(), 5);
    assert_eq!(csv.lines().count(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refined_iterate_matches_composition(which in 0usize..4, n in 1usize..=3, t in 0.0..1.0f64) {
        let maps = [
            bowen_series(2).unwrap().map,
            bowen_series(3).unwrap().map,
            higher_bowen_series(3).unwrap().map,
            non_example_c().unwrap().map,
        ];
        let pm = &maps[which];
        let it = pm.refine_iterate(n).unwrap();
        let z = from_turn(t);
        prop_assert!(close(it.evaluate_z(z), pm.iterate_z(z, n), 1e-8));
    }

    #[test]
    fn minimize_is_idempotent_and_pointwise(k in 3usize..=5, t in 0.0..1.0f64) {
        let cfm = completely_folding(k).unwrap().map;
        let m1 = cfm.minimize();
        prop_assert_eq!(m1.minimize(), m1.clone());
        let z = from_turn(t);
        prop_assert!(close(m1.evaluate_z(z), cfm.evaluate_z(z), 1e-10));
    }
}
