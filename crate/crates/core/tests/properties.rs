mod common;

use std::collections::HashSet;

use dgeom::geometry::Point;
use dgeom::lattice::{build_torus, square_rect};
use dgeom::percolation::{label_open, star_triangle_law, EdgeTriple};
use dgeom::rc::{dual_parameter, BoundaryCondition, HeatBath, RcParams};
use dgeom::saw::{bridge_decompose, reconstruct, SawPath};
use dgeom::scalar::ratio;
use num_traits::Zero;
use proptest::prelude::*;

fn walk(choices: &[u8]) -> SawPath {
    let mut p = (0i64, 0i64);
    let mut seen = HashSet::from([p]);
    let mut pts = vec![Point::default()];
    for &c in choices {
        let free: Vec<(i64, i64)> = common::hex_steps(p)
            .into_iter()
            .map(|d| (p.0 + d.0, p.1 + d.1))
            .filter(|q| !seen.contains(q))
            .collect();
        if free.is_empty() {
            break;
        }
        p = free[c as usize % free.len()];
        seen.insert(p);
        pts.push(Point::hex(p.0, p.1));
    }
    SawPath::new(pts, None, None).unwrap()
}

proptest! {
    #[test]
    fn duality_is_an_involution(p in 0.01f64..0.99, q in 1.0f64..10.0) {
        let back = dual_parameter(dual_parameter(p, q).unwrap(), q).unwrap();
        prop_assert!((back - p).abs() < 1e-12);
    }

    #[test]
    fn rational_duality_is_an_involution(a in 1i64..50, b in 1i64..50, q in 1i64..6) {
        let p = ratio(a, a + b);
        let q = ratio(q, 1);
        prop_assert_eq!(dual_parameter(dual_parameter(p.clone(), q.clone()).unwrap(), q).unwrap(), p);
    }

    #[test]
    fn completed_triples_are_critical(a in 1i64..40, b in 1i64..40, c in 1i64..40, d in 1i64..40) {
        if let Ok(t) = EdgeTriple::critical_completion(ratio(a, a + b), ratio(c, c + d)) {
            prop_assert!(t.kappa().is_zero());
            let law = star_triangle_law(&t);
            let (tri, star) = common::partition_laws(&t.p);
            prop_assert_eq!(&law.triangle, &tri);
            prop_assert_eq!(&law.star, &star);
            prop_assert!(law.tv.is_zero());
        }
    }

    #[test]
    fn union_find_agrees_with_search(n in 1usize..40, raw in prop::collection::vec((0u32..40, 0u32..40), 0..80)) {
        let edges: Vec<(u32, u32)> = raw.into_iter().map(|(u, v)| (u % n as u32, v % n as u32)).collect();
        let l = label_open(n, edges.iter().copied());
        let oracle = common::bfs_labels(n, &edges);
        prop_assert_eq!(l.labels(), &oracle[..]);
        prop_assert_eq!(l.count(), oracle.iter().collect::<HashSet<_>>().len());
    }

    #[test]
    fn cached_cluster_count_matches_recount(
        updates in prop::collection::vec((0usize..1000, 0.0f64..1.0), 1..200),
        q in 1.0f64..4.0,
        which in 0usize..3,
    ) {
        let torus = build_torus(4, false).unwrap();
        let rect = square_rect(3, 3).unwrap();
        let (patch, bc) = match which {
            0 => (&rect, BoundaryCondition::Free),
            1 => (&rect, BoundaryCondition::Wired),
            _ => (&torus.patch, BoundaryCondition::Periodic),
        };
        let mut chain = HeatBath::new(patch, RcParams::new(0.5, q).unwrap(), bc, 0, 0).unwrap();
        for (e, u) in updates {
            chain.update((e % patch.num_edges()) as u32, u);
            prop_assert_eq!(chain.cluster_count(), chain.config().unwrap().recount());
        }
    }

    #[test]
    fn bridges_reassemble_the_walk(choices in prop::collection::vec(0u8..3, 0..60)) {
        let p = walk(&choices);
        let d = bridge_decompose(&p).unwrap();
        prop_assert!(d.is_monotone());
        prop_assert_eq!(reconstruct(&d).unwrap().points, p.points);
    }
}
