//! Planar duality via rotation systems and face tracing.

use crate::error::{Error, Result};
use crate::geometry::{Point, Surd};

use super::patch::{assemble, Edge, EdgeId, Family, LatticePatch, VertexId};

/// `e ↔ e★` together with the face behind every dual vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMap {
    /// Dual edge of each primal edge.
    pub to_dual: Vec<EdgeId>,
    /// Primal edge of each dual edge.
    pub to_primal: Vec<EdgeId>,
    /// Boundary darts of the face represented by each dual vertex.
    pub faces: Vec<Vec<u32>>,
    pub outer: Option<VertexId>,
}

/// Darts leaving each vertex, anticlockwise.
pub fn rotation_system(patch: &LatticePatch) -> Vec<Vec<u32>> {
    if let Some(rot) = &patch.rotation {
        return rot.clone();
    }
    (0..patch.num_vertices() as VertexId)
        .map(|v| {
            let mut darts: Vec<(u32, Point)> = patch
                .neighbors(v)
                .iter()
                .flat_map(|&(_, e)| {
                    let ed = patch.edge(e);
                    let mut out = Vec::with_capacity(2);
                    if ed.u == v {
                        out.push((2 * e, patch.position(ed.v) + ed.wrap - patch.position(v)));
                    }
                    if ed.v == v {
                        out.push((2 * e + 1, patch.position(ed.u) - ed.wrap - patch.position(v)));
                    }
                    out
                })
                .collect();
            darts.sort_by(|a, b| a.1.angle_cmp(b.1).then(a.0.cmp(&b.0)));
            darts.dedup_by_key(|d| d.0);
            darts.into_iter().map(|d| d.0).collect()
        })
        .collect()
}

fn dart_tail(patch: &LatticePatch, d: u32) -> VertexId {
    let e = patch.edge(d / 2);
    if d % 2 == 0 {
        e.u
    } else {
        e.v
    }
}

/// Faces as dart cycles, each face on the left of its darts.
pub fn trace_faces(patch: &LatticePatch) -> (Vec<Vec<u32>>, Vec<usize>) {
    let rot = rotation_system(patch);
    let nd = 2 * patch.num_edges();
    let mut pos = vec![0usize; nd];
    for r in &rot {
        for (i, &d) in r.iter().enumerate() {
            pos[d as usize] = i;
        }
    }
    let mut face_of = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for start in 0..nd as u32 {
        if face_of[start as usize] != usize::MAX {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        loop {
            face_of[d as usize] = faces.len();
            cycle.push(d);
            let rev = d ^ 1;
            let head = dart_tail(patch, rev);
            let r = &rot[head as usize];
            d = r[(pos[rev as usize] + r.len() - 1) % r.len()];
            if d == start {
                break;
            }
        }
        faces.push(cycle);
    }
    (faces, face_of)
}

fn face_area_x2(patch: &LatticePatch, face: &[u32]) -> Surd {
    // doubled coordinates: this is eight times the signed area
    let mut acc = Surd::ZERO;
    let mut p = patch.position(dart_tail(patch, face[0]));
    for &d in face {
        let e = patch.edge(d / 2);
        let step = if d % 2 == 0 {
            patch.position(e.v) + e.wrap - patch.position(e.u)
        } else {
            patch.position(e.u) - e.wrap - patch.position(e.v)
        };
        let q = p + step;
        acc = acc + p.cross(q);
        p = q;
    }
    acc
}

/// Planar dual: one vertex per bounded face and one for the outer face.
///
/// Duals of duals carry a combinatorial embedding in which every face is
/// bounded, so the second dual has no outer vertex.
pub fn dual_patch(patch: &LatticePatch) -> Result<(LatticePatch, DualMap)> {
    if patch.is_periodic() {
        return Err(Error::invalid("periodic patches have no planar dual"));
    }
    if !patch.is_connected() {
        return Err(Error::invalid("dual requires a connected patch"));
    }
    let family = match patch.family {
        Family::Square => Family::Square,
        Family::Triangular => Family::Hexagonal,
        Family::Hexagonal => Family::Triangular,
        other => return Err(Error::invalid(format!("the dual of a {other} patch is not a supported family"))),
    };
    let (faces, face_of) = trace_faces(patch);
    let euler = patch.num_vertices() as i64 - patch.num_edges() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::invalid(format!("embedding is not planar (V - E + F = {euler})")));
    }
    let spherical = patch.outer.is_some() || patch.rotation.is_some();
    let outer_face = if spherical {
        None
    } else {
        let negative: Vec<usize> =
            (0..faces.len()).filter(|&f| face_area_x2(patch, &faces[f]).signum() < 0).collect();
        if negative.len() != 1 {
            return Err(Error::invalid("embedding is not planar: expected exactly one outer face"));
        }
        Some(negative[0])
    };
    // dual vertices: bounded faces first, sorted by representative point
    let rep = |f: usize| -> Point {
        let pts: Vec<Point> = faces[f]
            .iter()
            .map(|&d| dart_tail(patch, d))
            .filter(|&v| Some(v) != patch.outer)
            .map(|v| patch.position(v))
            .collect();
        let k = pts.len() as i64;
        let s = pts.iter().fold(Point::default(), |a, &b| a + b);
        let div = |x: Surd| x.a % k == 0 && x.b % k == 0;
        if k > 0 && div(s.x) && div(s.y) {
            Point::new(Surd::new(s.x.a / k, s.x.b / k), Surd::new(s.y.a / k, s.y.b / k))
        } else {
            pts.first().copied().unwrap_or_default()
        }
    };
    let mut order: Vec<usize> = (0..faces.len()).filter(|&f| Some(f) != outer_face).collect();
    let reps: Vec<Point> = (0..faces.len()).map(rep).collect();
    order.sort_by(|&a, &b| reps[a].axial().cmp(&reps[b].axial()).then(a.cmp(&b)));
    if let Some(o) = outer_face {
        order.push(o);
    }
    let mut vid = vec![0u32; faces.len()];
    for (i, &f) in order.iter().enumerate() {
        vid[f] = i as VertexId;
    }
    let mut positions: Vec<Point> = order.iter().map(|&f| reps[f]).collect();
    let outer = outer_face.map(|o| vid[o]);
    if let Some(ov) = outer {
        let (mut lx, mut ly) = (Surd::ZERO, Surd::ZERO);
        for p in patch.positions() {
            lx = lx.min(p.x);
            ly = ly.min(p.y);
        }
        positions[ov as usize] = Point::new(lx - Surd::int(4), ly - Surd::int(4));
    }
    let mut edges = Vec::with_capacity(patch.num_edges());
    for (e, ed) in patch.edges().iter().enumerate() {
        // dart 2e leaves u with face `left` on its left; e★ crosses from right to left
        let left = vid[face_of[2 * e]];
        let right = vid[face_of[2 * e + 1]];
        let class = match patch.family {
            Family::Square => 1 - ed.class,
            _ => ed.class,
        };
        edges.push(Edge { u: right, v: left, class, wrap: Point::default() });
    }
    // rotation of the dual: walking a face anticlockwise meets its edges in
    // anticlockwise order around the dual vertex
    let mut rotation = vec![Vec::new(); faces.len()];
    for (f, cycle) in faces.iter().enumerate() {
        let v = vid[f] as usize;
        for &d in cycle {
            let e = d / 2;
            // e★ leaves the face on the left of d; that face is e★'s v-end exactly when d = 2e
            rotation[v].push(if d % 2 == 0 { 2 * e + 1 } else { 2 * e });
        }
    }
    let mut dual = assemble(family, positions, edges, false, outer);
    dual.rotation = Some(rotation);
    if let Some(ov) = outer {
        let mut bd: Vec<VertexId> = dual.neighbors(ov).iter().map(|&(w, _)| w).filter(|&w| w != ov).collect();
        bd.sort_unstable();
        bd.dedup();
        dual = dual.with_boundary(bd);
    }
    let faces_by_vertex: Vec<Vec<u32>> = order.iter().map(|&f| faces[f].clone()).collect();
    let ident: Vec<EdgeId> = (0..patch.num_edges() as EdgeId).collect();
    Ok((
        dual,
        DualMap { to_dual: ident.clone(), to_primal: ident, faces: faces_by_vertex, outer },
    ))
}

/// True when `a` and `b` are the same graph under `map` (vertex of `a` → vertex of `b`).
pub fn is_isomorphism(a: &LatticePatch, b: &LatticePatch, map: &[VertexId]) -> bool {
    if a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() || map.len() != a.num_vertices() {
        return false;
    }
    let mut image = map.to_vec();
    image.sort_unstable();
    image.dedup();
    if image.len() != map.len() {
        return false;
    }
    let key = |u: VertexId, v: VertexId| if u <= v { (u, v) } else { (v, u) };
    let mut ea: Vec<(VertexId, VertexId)> =
        a.edges().iter().map(|e| key(map[e.u as usize], map[e.v as usize])).collect();
    let mut eb: Vec<(VertexId, VertexId)> = b.edges().iter().map(|e| key(e.u, e.v)).collect();
    ea.sort_unstable();
    eb.sort_unstable();
    ea == eb
}
