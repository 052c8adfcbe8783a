mod common;

use dgeom::lattice::{build_lattice_patch, build_mixed_lattice, square_box, square_rect, Family, LatticePatch, StepDirection};
use dgeom::percolation::{
    check_crossing_duality, estimate_crossing_prob, estimate_russo_derivative, label_clusters, mixed_class_probs,
    pivotal_edges, sample_config, star_triangle_law, verify_coupling, BondConfig, EdgeTriple, MixedStepper, Orientation,
    Rect, RectIndex,
};
use dgeom::rng::stream_rng;
use dgeom::scalar::ratio;
use dgeom::Rational;
use num_traits::{One, Zero};

fn edge_probs(patch: &LatticePatch, class: &[Rational]) -> Vec<Rational> {
    patch.edges().iter().map(|e| class[e.class as usize].clone()).collect()
}

#[test]
fn union_find_labels_match_breadth_first_search() {
    let patches = [
        square_rect(9, 7).unwrap(),
        build_lattice_patch(Family::Triangular, 6, 6).unwrap(),
        build_lattice_patch(Family::Hexagonal, 5, 5).unwrap(),
        build_lattice_patch(Family::Archimedean3122, 3, 3).unwrap(),
    ];
    for patch in &patches {
        for s in 0..20 {
            let cfg = sample_config(patch, &[0.5; 4][..patch.class_count()], 1, s).unwrap();
            let lab = label_clusters(&cfg);
            let oracle = common::bfs_labels(patch.num_vertices(), &common::open_edges(patch, &cfg.open));
            assert_eq!(lab.labels(), &oracle[..]);
        }
    }
}

#[test]
fn star_triangle_laws_match_enumerated_graphs() {
    for t in common::critical_rational_triples() {
        assert!(t.kappa().is_zero());
        let law = star_triangle_law(&t);
        let (tri, star) = common::partition_laws(&t.p);
        assert_eq!(law.triangle, tri);
        assert_eq!(law.star, star);
        assert_eq!(tri, star);
        assert!(law.tv.is_zero());
        let c = verify_coupling(&t);
        assert!(c.t_tv.is_zero() && c.s_tv.is_zero() && c.partition_preserved);
    }
}

#[test]
fn off_critical_laws_differ() {
    let t = EdgeTriple::new(ratio(1, 3), ratio(1, 3), ratio(1, 3)).unwrap();
    let (tri, star) = common::partition_laws(&t.p);
    assert_ne!(tri, star);
    assert_eq!(star_triangle_law(&t).star, star);
}

#[test]
fn one_swap_pushes_product_measure_forward_exactly() {
    let lat = build_mixed_lattice(1, 3, 2).unwrap();
    let plan = lat.plan_step(StepDirection::Down).unwrap();
    assert_eq!(plan.swaps.len(), 1);
    let triple = EdgeTriple::critical_completion(ratio(1, 2), ratio(1, 4)).unwrap();
    assert_eq!(triple.p[2], ratio(2, 7));
    let class = mixed_class_probs(&triple);
    let src = edge_probs(&plan.source().patch, &class);
    let dst = edge_probs(&plan.target().patch, &class);
    let law = common::swap_pushforward(&plan, &src, &dst, None);
    let mut total = Rational::zero();
    for mask in 0..1u64 << dst.len() {
        let got = law.get(&mask).cloned().unwrap_or_else(Rational::zero);
        assert_eq!(got, common::product_weight(&dst, mask), "mask {mask:b}");
        total += got;
    }
    assert!(total.is_one());
}

#[test]
fn stepper_outputs_lie_in_the_exact_support() {
    let lat = build_mixed_lattice(1, 3, 2).unwrap();
    let plan = lat.plan_step(StepDirection::Down).unwrap();
    let triple = EdgeTriple::critical_completion(ratio(1, 2), ratio(1, 4)).unwrap();
    let class = mixed_class_probs(&triple);
    let src = edge_probs(&plan.source().patch, &class);
    let dst = edge_probs(&plan.target().patch, &class);
    let stepper = MixedStepper::new(&plan, &triple).unwrap();
    let mut rng = stream_rng(17, 0);
    for c in (0..1u64 << src.len()).step_by(97) {
        let open: Vec<bool> = (0..src.len()).map(|e| c >> e & 1 == 1).collect();
        let support = common::swap_pushforward(&plan, &src, &dst, Some(c));
        for _ in 0..5 {
            let out = stepper.apply(&open, &mut rng).unwrap();
            let mask = out.iter().enumerate().fold(0u64, |m, (e, &b)| m | (b as u64) << e);
            assert!(support.get(&mask).is_some_and(|p| !p.is_zero()), "config {c:b} gave {mask:b}");
        }
    }
}

#[test]
fn primal_or_dual_crossing_always() {
    let patch = square_rect(8, 7).unwrap();
    for s in 0..300 {
        let cfg = sample_config(&patch, &[0.5, 0.5], 4, s).unwrap();
        assert!(check_crossing_duality(&cfg).unwrap());
    }
}

#[test]
fn crossing_probability_matches_enumeration() {
    let patch = square_rect(3, 2).unwrap();
    let rect = Rect::new(0.0, 0.0, 3.0, 2.0);
    let probs = [0.3, 0.6];
    let idx = RectIndex::new(&patch, rect, Orientation::Horizontal).unwrap();
    let m = patch.num_edges();
    let mut exact = 0.0;
    for mask in 0..1u64 << m {
        let open: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
        if idx.crosses(&open) {
            exact += patch
                .edges()
                .iter()
                .zip(&open)
                .map(|(e, &b)| if b { probs[e.class as usize] } else { 1.0 - probs[e.class as usize] })
                .product::<f64>();
        }
    }
    let r = estimate_crossing_prob(&patch, &probs, rect, Orientation::Horizontal, 20_000, 2, 1).unwrap();
    assert!((r.estimate - exact).abs() < 4.0 * r.se.unwrap(), "{} vs {exact}", r.estimate);
}

#[test]
fn pivotal_edges_flip_the_event() {
    let patch = square_rect(5, 4).unwrap();
    let idx = RectIndex::new(&patch, Rect::new(0.0, 0.0, 5.0, 4.0), Orientation::Horizontal).unwrap();
    for s in 0..100 {
        let cfg = sample_config(&patch, &[0.5, 0.5], 8, s).unwrap();
        let piv = pivotal_edges(&idx, &patch, &cfg.open);
        let before = idx.crosses(&cfg.open);
        for e in 0..patch.num_edges() {
            let mut o = cfg.open.clone();
            o[e] = !o[e];
            assert_eq!(idx.crosses(&o) != before, piv.contains(&(e as u32)), "edge {e} sample {s}");
        }
    }
}

#[test]
fn russo_count_tracks_finite_difference() {
    let patch = square_rect(7, 6).unwrap();
    let r = estimate_russo_derivative(&patch, 0.5, Rect::new(0.0, 0.0, 7.0, 6.0), Orientation::Horizontal, 0.02, 20_000, 3, 1).unwrap();
    let fd = r.metric_f64("finite_difference").unwrap();
    let fd_se = r.metric_f64("finite_difference_se").unwrap();
    let derivative = r.estimate;
    assert!((derivative - fd).abs() < 4.0 * (fd_se + r.se.unwrap()), "{derivative} vs {fd} ± {fd_se}");
}

#[test]
fn boxes_have_the_expected_boundary() {
    let b = square_box(3).unwrap();
    assert_eq!(b.boundary().len(), 24);
    let cfg = BondConfig::all(&b, true);
    assert_eq!(label_clusters(&cfg).count(), 1);
}
