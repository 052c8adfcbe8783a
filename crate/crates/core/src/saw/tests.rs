use super::*;
use crate::geometry::Point;
use crate::lattice::{build_region, lattice_ball, Family, MidClass};

#[test]
fn small_counts() {
    let hex = lattice_ball(Family::Hexagonal, 8).unwrap();
    let o = hex.vertex_at(Point::default()).unwrap();
    let c = count_saws(&hex, o, 6, DEFAULT_BUDGET).unwrap();
    assert_eq!(&c[..2], &[3, 6]);
    assert_eq!(c[5], 90);
    let sq = lattice_ball(Family::Square, 4).unwrap();
    let o = sq.vertex_at(Point::default()).unwrap();
    assert_eq!(&count_saws(&sq, o, 2, DEFAULT_BUDGET).unwrap()[..], &[4, 12]);
    assert_eq!(count_saws_parallel(&sq, o, 4, DEFAULT_BUDGET, 2).unwrap(), count_saws(&sq, o, 4, DEFAULT_BUDGET).unwrap());
}

#[test]
fn too_small_patch_is_rejected() {
    let sq = lattice_ball(Family::Square, 3).unwrap();
    let o = sq.vertex_at(Point::default()).unwrap();
    assert!(count_saws(&sq, o, 4, DEFAULT_BUDGET).is_err());
    assert!(count_saws(&sq, o, 3, DEFAULT_BUDGET).is_ok());
}

#[test]
fn budget_is_a_hard_error() {
    let sq = lattice_ball(Family::Square, 8).unwrap();
    let o = sq.vertex_at(Point::default()).unwrap();
    let err = count_saws(&sq, o, 8, 100).unwrap_err();
    assert_eq!(err.kind(), crate::ErrorKind::Budget);
}

#[test]
fn submultiplicativity_witness() {
    assert_eq!(check_submultiplicativity(&[3, 10, 20]), Some((1, 1)));
    assert_eq!(check_submultiplicativity(&[4, 12, 36, 100]), None);
}

#[test]
fn region_walk_turning_by_class() {
    let r = build_region(1, 2).unwrap();
    let counts = enumerate_region_walks(&r, DEFAULT_BUDGET).unwrap();
    for m in 0..r.num_midpoints() as u32 {
        let expected: Option<&[i32]> = match r.classes[m as usize] {
            MidClass::L => Some(&[3, -3]),
            MidClass::U => Some(&[0]),
            MidClass::TPlus => Some(&[-2]),
            MidClass::TMinus => Some(&[2]),
            _ => None,
        };
        if let Some(ok) = expected {
            for (t, _, _) in counts.entries(m) {
                assert!(ok.contains(&t), "{:?} {t}", r.classes[m as usize]);
            }
        }
    }
}

#[test]
fn observable_identity_small() {
    for (h, v) in [(1, 1), (1, 2), (2, 2)] {
        let r = build_region(h, v).unwrap();
        let rep = parafermionic_observable(&r, critical_sigma::<f64>(), chi::<f64>(), DEFAULT_BUDGET).unwrap();
        assert!(rep.max_residual() < 1e-10, "{h},{v}: {}", rep.max_residual());
        assert!((rep.boundary_combination() - 1.0).abs() < 1e-9);
        assert_eq!(rep.values[r.start as usize], (1.0, 0.0));
        let off = verify_vertex_identity(&r, 0.625, 0.9 * chi::<f64>(), DEFAULT_BUDGET).unwrap();
        assert!(off > 1e-6);
    }
}

#[test]
fn identity_on_all_small_regions() {
    for h in 1..=2 {
        for v in 1..=4 {
            let r = build_region(h, v).unwrap();
            let counts = enumerate_region_walks(&r, DEFAULT_BUDGET).unwrap();
            let rep = observable_from_counts(&r, &counts, 0.625, chi::<f64>());
            assert!(rep.max_residual() < 1e-10);
            assert!((rep.boundary_combination() - 1.0).abs() < 1e-9);
            let off = observable_from_counts(&r, &counts, 0.625, 1.1 * chi::<f64>());
            assert!(off.max_residual() > 1e-6);
        }
    }
}

#[test]
fn lambda_increases_with_h() {
    for v in 1..=3 {
        let a = boundary_sums(&build_region(1, v).unwrap(), chi::<f64>(), DEFAULT_BUDGET).unwrap();
        let b = boundary_sums(&build_region(2, v).unwrap(), chi::<f64>(), DEFAULT_BUDGET).unwrap();
        assert!(a.lambda <= b.lambda && a.upsilon <= b.upsilon);
    }
}

#[test]
fn critical_weight_factor_vanishes() {
    let s = 0.625f64;
    let w = 2.0 * ((2.0 * std::f64::consts::PI / 3.0) * (2.0 * s + 1.0)).cos();
    assert!(w.abs() < 1e-15);
    // 1 + xθe^{iσπ/3} + x·θ̄e^{−iσπ/3} = 1 + 2x cos(2π/3 + σπ/3)
    let x = -1.0 / (2.0 * (2.0 * std::f64::consts::PI / 3.0 + s * std::f64::consts::PI / 3.0).cos());
    assert!((x - chi::<f64>()).abs() < 1e-15);
    assert!((x - 0.5411961).abs() < 1e-7);
}

fn walk(steps: &[(i64, i64)]) -> SawPath {
    let mut pts = vec![Point::default()];
    for &(dx, dy) in steps {
        let p = *pts.last().unwrap() + Point::hex(dx, dy);
        pts.push(p);
    }
    SawPath::new(pts, None, None).unwrap()
}

#[test]
fn turning_examples() {
    // up, then up-left: one left turn
    let p = walk(&[(0, 2), (-1, 1)]);
    assert_eq!(turning_angle(&p).unwrap(), 1);
    let q = walk(&[(0, 2), (1, 1), (0, 2), (-1, 1), (0, 2)]);
    assert_eq!(q.turning_thirds, 0);
    let mut bad = p.clone();
    bad.points.push(Point::hex(5, 5));
    assert!(turning_angle(&bad).is_err());
}

#[test]
fn monotone_walk_is_one_bridge() {
    let p = walk(&[(0, 2), (1, 1), (0, 2), (-1, 1), (0, 2)]);
    let d = bridge_decompose(&p).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(reconstruct(&d).unwrap(), p);
}

#[test]
fn half_plane_walk_with_four_bridges() {
    let p = walk(&[
        (0, 2), (1, 1), (0, 2), (1, 1), (0, 2), (1, 1), (1, -1), (0, -2),
        (1, -1), (0, -2), (1, -1), (1, 1), (0, 2), (1, 1), (1, -1), (0, -2),
    ]);
    assert!(p.points.iter().skip(1).all(|q| q.y.a > 0));
    let d = bridge_decompose(&p).unwrap();
    assert_eq!(d.len(), 4);
    assert!(d.is_monotone());
    assert_eq!(reconstruct(&d).unwrap(), p);
}
