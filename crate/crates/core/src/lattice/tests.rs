use super::*;
use crate::geometry::Point;

#[test]
fn unit_cells() {
    let sq = build_lattice_patch(Family::Square, 1, 1).unwrap();
    assert_eq!((sq.num_vertices(), sq.num_edges()), (4, 4));
    let hex = build_lattice_patch(Family::Hexagonal, 1, 1).unwrap();
    assert_eq!((hex.num_vertices(), hex.num_edges()), (6, 6));
}

#[test]
fn archimedean_triples_hexagonal_vertices() {
    let hex = build_lattice_patch(Family::Hexagonal, 2, 2).unwrap();
    let arch = build_lattice_patch(Family::Archimedean3122, 2, 2).unwrap();
    assert_eq!(arch.num_vertices(), 3 * hex.num_vertices());
    assert_eq!(arch.num_edges(), 3 * hex.num_vertices() + hex.num_edges());
    assert_eq!(arch.classes(), vec![0, 1]);
}

#[test]
fn patches_are_valid_and_planar() {
    for family in [Family::Square, Family::Triangular, Family::Hexagonal, Family::Archimedean3122] {
        for (w, h) in [(1, 1), (2, 3), (4, 2)] {
            let p = build_lattice_patch(family, w, h).unwrap();
            p.validate().unwrap();
            p.check_planarity().unwrap();
        }
    }
}

#[test]
fn hexagonal_orientation() {
    let hex = build_lattice_patch(Family::Hexagonal, 2, 2).unwrap();
    let a = hex.vertex_at(Point::hex(0, 0)).unwrap();
    let b = hex.vertex_at(Point::hex(0, 2)).unwrap();
    assert!(hex.neighbors(a).iter().any(|&(w, _)| w == b));
    assert_eq!(hex.classes(), vec![0, 1, 2]);
}

#[test]
fn vertex_cap_is_enforced() {
    let err = build_lattice_patch_capped(Family::Square, 100, 100, 1000).unwrap_err();
    assert_eq!(err.kind(), crate::ErrorKind::Validation);
    assert!(build_lattice_patch(Family::Square, 0, 3).is_err());
}

#[test]
fn lattice_ball_degrees() {
    for (family, deg) in [
        (Family::Square, 4),
        (Family::Triangular, 6),
        (Family::Hexagonal, 3),
        (Family::Archimedean3122, 3),
    ] {
        let ball = lattice_ball(family, 4).unwrap();
        ball.validate().unwrap();
        let o = ball.vertex_at(lattice_origin(family).unwrap()).unwrap();
        let dist = ball.distances_from(o);
        for v in 0..ball.num_vertices() as VertexId {
            if dist[v as usize].unwrap() < 4 {
                assert_eq!(ball.degree(v), deg, "{family}");
            }
        }
    }
}

#[test]
fn region_counts() {
    for (h, v) in [(1, 1), (2, 5), (3, 2), (2, 2)] {
        let r = build_region(h, v).unwrap();
        let count = |c| r.class_members(c).len();
        assert_eq!(count(MidClass::Start), 1);
        assert_eq!(count(MidClass::L) + 1, 2 * h + 1);
        assert_eq!(count(MidClass::TPlus), v);
        assert_eq!(count(MidClass::TMinus), v);
        assert_eq!(count(MidClass::U), 2 * h + 1 + v);
        assert_eq!(r.midpoint(r.start), (0.0, 0.5));
    }
    assert!(build_region(0, 1).is_err());
}

#[test]
fn torus_counts() {
    for (n, rot) in [(2, false), (4, false), (4, true), (5, false)] {
        let t = build_torus(n, rot).unwrap();
        assert_eq!(t.patch.num_vertices(), n * n);
        assert_eq!(t.patch.num_edges(), 2 * n * n);
        for v in 0..(n * n) as VertexId {
            assert_eq!(t.patch.degree(v), 4);
        }
        t.patch.validate().unwrap();
    }
    assert!(build_torus(3, true).is_err());
    assert!(build_torus(1, false).is_err());
}

#[test]
fn torus_lift_rejects_oversized_rect() {
    let t = build_torus(8, false).unwrap();
    let r = t.lift_rect(0, 0, 6, 4).unwrap();
    assert_eq!(r.sites.len(), 24);
    assert_eq!(r.links.len(), 5 * 4 + 6 * 3);
    assert!(t.lift_rect(0, 0, 9, 4).is_err());
}

#[test]
fn square_dual_counts() {
    let p = build_lattice_patch(Family::Square, 3, 3).unwrap();
    let (d, map) = dual_patch(&p).unwrap();
    assert_eq!(d.num_vertices(), 9 + 1);
    assert_eq!(d.num_edges(), p.num_edges());
    assert!(map.outer.is_some());
    let (dd, map2) = dual_patch(&d).unwrap();
    assert_eq!(dd.num_vertices(), p.num_vertices());
    assert!(map2.outer.is_none());
}

#[test]
fn triangular_dual_is_hexagonal() {
    let p = build_lattice_patch(Family::Triangular, 3, 3).unwrap();
    let (d, _) = dual_patch(&p).unwrap();
    assert_eq!(d.family, Family::Hexagonal);
    let h = build_lattice_patch(Family::Hexagonal, 2, 2).unwrap();
    assert_eq!(dual_patch(&h).unwrap().0.family, Family::Triangular);
}

#[test]
fn json_round_trip() {
    let p = build_lattice_patch(Family::Triangular, 2, 2).unwrap();
    let g = GraphFile::from_patch(&p);
    let back = GraphFile::from_json(&g.to_json()).unwrap().to_patch().unwrap();
    assert_eq!(back.positions(), p.positions());
    assert_eq!(back.edges(), p.edges());
}

#[test]
fn mixed_layers() {
    let m = build_mixed_lattice(2, 6, 5).unwrap();
    assert_eq!((m.interface_height(), m.triangular_layers(), m.top_vertical()), (2, 3, 0));
    m.patch.validate().unwrap();
    assert_eq!(m.patch.num_vertices(), 6 * 6);
    assert_eq!(m.patch.num_edges(), 6 * 6 + 2 * 6 + 3 * 2 * 6);
    assert!(build_mixed_lattice(6, 6, 5).is_err());
}

#[test]
fn mixed_step_moves_interface() {
    let m = build_mixed_lattice(3, 5, 6).unwrap();
    let plan = m.plan_step(StepDirection::Down).unwrap();
    let next = plan.target();
    assert_eq!((next.interface_height(), next.triangular_layers(), next.top_vertical()), (2, 3, 1));
    let back = next.plan_step(StepDirection::Up).unwrap();
    assert_eq!(back.target().layers, m.layers);
    assert_eq!(back.target().patch.positions(), m.patch.positions());
    for s in &plan.swaps {
        assert_eq!(s.copies.len() + 3 * s.stars.len() + s.spokes.len(), s.target_edges);
    }
    assert!(m.plan_step(StepDirection::Up).is_err());
    assert!(build_mixed_lattice(0, 5, 3).unwrap().plan_step(StepDirection::Down).is_err());
}
