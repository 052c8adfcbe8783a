mod common;

use dgeom::geometry::Point;
use dgeom::lattice::{build_region, lattice_ball, lattice_origin, Family};
use dgeom::saw::{
    bridge_decompose, check_submultiplicativity, count_saws, count_saws_parallel, estimate_connective_constant,
    fisher_lattice_constant, hexagonal_connective_constant, parafermionic_observable, reconstruct, turning_angle,
    SawPath, DEFAULT_BUDGET,
};

fn counts(family: Family, n: usize) -> Vec<u64> {
    let ball = lattice_ball(family, n + 1).unwrap();
    let o = ball.vertex_at(lattice_origin(family).unwrap()).unwrap();
    count_saws(&ball, o, n, DEFAULT_BUDGET).unwrap()
}

fn path_of(steps: &[(i64, i64)]) -> SawPath {
    let mut pts = vec![Point::default()];
    for &(dx, dy) in steps {
        pts.push(*pts.last().unwrap() + Point::hex(dx, dy));
    }
    SawPath::new(pts, None, None).unwrap()
}

#[test]
fn counts_agree_with_depth_first_oracle() {
    assert_eq!(counts(Family::Hexagonal, 14), common::saw_counts_hex(14));
    assert_eq!(counts(Family::Square, 10), common::saw_counts_square(10));
}

#[test]
fn parallel_counts_match_serial() {
    let ball = lattice_ball(Family::Square, 10).unwrap();
    let o = ball.vertex_at(Point::default()).unwrap();
    assert_eq!(
        count_saws_parallel(&ball, o, 9, DEFAULT_BUDGET, 3).unwrap(),
        count_saws(&ball, o, 9, DEFAULT_BUDGET).unwrap()
    );
}

#[test]
fn small_balls_and_budgets_are_rejected() {
    let ball = lattice_ball(Family::Hexagonal, 3).unwrap();
    let o = ball.vertex_at(Point::default()).unwrap();
    assert!(count_saws(&ball, o, 6, DEFAULT_BUDGET).is_err());
    let big = lattice_ball(Family::Hexagonal, 12).unwrap();
    let o = big.vertex_at(Point::default()).unwrap();
    assert!(count_saws(&big, o, 10, 50).is_err());
}

#[test]
fn submultiplicative_on_triangular() {
    assert_eq!(check_submultiplicativity(&counts(Family::Triangular, 8)), None);
    assert_eq!(check_submultiplicativity(&[4, 17]), Some((1, 1)));
}

#[test]
fn connective_estimate_is_bracketed() {
    let c = counts(Family::Hexagonal, 16);
    let e = estimate_connective_constant(&c, 3).unwrap();
    let k: f64 = hexagonal_connective_constant();
    assert!(e.upper_bound >= k);
    assert!(e.ratios[10..].iter().all(|r| (1.7..=2.0).contains(r)));
}

#[test]
fn every_short_walk_round_trips_through_bridges() {
    let mut total = 0;
    for len in 1..=10 {
        for steps in common::hex_walks(len) {
            let p = path_of(&steps);
            let d = bridge_decompose(&p).unwrap();
            assert!(d.is_monotone(), "{steps:?}");
            for b in &d.bridges {
                let h: Vec<(f64, f64)> = b.points.iter().map(|q| { let (x, y) = q.to_f64(); (y, x) }).collect();
                let (first, last) = (h[0], *h.last().unwrap());
                let (lo, hi) = if first < last { (first, last) } else { (last, first) };
                assert!(h.iter().all(|&x| lo <= x && x <= hi), "not a bridge in {steps:?}");
            }
            assert_eq!(reconstruct(&d).unwrap().points, p.points, "{steps:?}");
            total += 1;
        }
    }
    assert_eq!(total as u64, common::saw_counts_hex(10).iter().sum::<u64>());
}

#[test]
fn turning_is_sum_of_turns() {
    for steps in common::hex_walks(7) {
        let p = path_of(&steps);
        let mut turn = 0;
        for w in steps.windows(2) {
            let cross = w[0].0 * w[1].1 - w[0].1 * w[1].0;
            turn += cross.signum() as i32;
        }
        assert_eq!(turning_angle(&p).unwrap(), turn, "{steps:?}");
    }
}

#[test]
fn fisher_root_matches_newton() {
    for k in [1.5, hexagonal_connective_constant::<f64>(), 2.5, 8.0 / 3.0] {
        assert!((fisher_lattice_constant(k).unwrap() - common::fisher_newton(k)).abs() < 1e-10);
    }
    assert!(fisher_lattice_constant(1.0).is_err());
}

#[test]
fn observable_identity_fails_off_critical_sigma() {
    let region = build_region(1, 2).unwrap();
    let x = 1.0 / hexagonal_connective_constant::<f64>();
    let good = parafermionic_observable(&region, 0.625, x, DEFAULT_BUDGET).unwrap();
    let bad = parafermionic_observable(&region, 0.5, x, DEFAULT_BUDGET).unwrap();
    assert!(good.max_residual() < 1e-10);
    assert!(bad.max_residual() > 1e-6);
}
