use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::Point;

use super::patch::{EdgeId, Family, LatticePatch, PatchBuilder, VertexId};

/// `n × n` square-lattice torus. Vertex `(i, j)` is drawn at `(i, j)`, or at
/// `(i - j, i + j)` when rotated (edges of length √2 along the diagonals).
#[derive(Debug, Clone)]
pub struct TorusPatch {
    pub patch: LatticePatch,
    pub n: usize,
    pub rotated: bool,
    coords: Vec<(i64, i64)>,
    index: Vec<VertexId>,
    /// Edge from `(i,j)` to `(i+1,j)`, per vertex.
    right: Vec<EdgeId>,
    /// Edge from `(i,j)` to `(i,j+1)`, per vertex.
    up: Vec<EdgeId>,
}

pub fn build_torus(n: usize, rotated: bool) -> Result<TorusPatch> {
    if n < 2 {
        return Err(Error::invalid("torus side must be at least 2"));
    }
    if rotated && n % 2 == 1 {
        return Err(Error::invalid("rotated torus needs an even side"));
    }
    let m = n as i64;
    let draw = |i: i64, j: i64| {
        if rotated {
            Point::half(2 * (i - j), 2 * (i + j))
        } else {
            Point::half(2 * i, 2 * j)
        }
    };
    let period_i = draw(m, 0);
    let period_j = draw(0, m);
    let mut b = PatchBuilder::new(Family::Square).periodic();
    for i in 0..m {
        for j in 0..m {
            b.vertex(draw(i, j))?;
        }
    }
    for i in 0..m {
        for j in 0..m {
            let wrap_i = if i + 1 == m { period_i } else { Point::default() };
            let wrap_j = if j + 1 == m { period_j } else { Point::default() };
            b.wrapped_edge(draw(i, j), draw((i + 1) % m, j), wrap_i, 0)?;
            b.wrapped_edge(draw(i, j), draw(i, (j + 1) % m), wrap_j, 1)?;
        }
    }
    let patch = b.finish();
    let mut coords = vec![(0, 0); n * n];
    let mut index = vec![0; n * n];
    for i in 0..m {
        for j in 0..m {
            let v = patch.vertex_at(draw(i, j)).expect("torus vertex");
            coords[v as usize] = (i, j);
            index[(i * m + j) as usize] = v;
        }
    }
    let mut right = vec![0; n * n];
    let mut up = vec![0; n * n];
    let mut lookup: HashMap<(VertexId, VertexId, u8), EdgeId> = HashMap::new();
    for (e, ed) in patch.edges().iter().enumerate() {
        lookup.insert((ed.u, ed.v, ed.class), e as EdgeId);
        lookup.insert((ed.v, ed.u, ed.class), e as EdgeId);
    }
    for v in 0..(n * n) as VertexId {
        let (i, j) = coords[v as usize];
        let vi = index[(((i + 1) % m) * m + j) as usize];
        let vj = index[(i * m + (j + 1) % m) as usize];
        if n == 2 {
            // both edges between the same pair exist; pick by wrap
            right[v as usize] = find_wrapped(&patch, v, vi, 0, i + 1 == m);
            up[v as usize] = find_wrapped(&patch, v, vj, 1, j + 1 == m);
        } else {
            right[v as usize] = lookup[&(v, vi, 0)];
            up[v as usize] = lookup[&(v, vj, 1)];
        }
    }
    Ok(TorusPatch { patch, n, rotated, coords, index, right, up })
}

fn find_wrapped(patch: &LatticePatch, u: VertexId, v: VertexId, class: u8, wraps: bool) -> EdgeId {
    patch
        .neighbors(u)
        .iter()
        .map(|&(_, e)| e)
        .find(|&e| {
            let ed = patch.edge(e);
            ed.class == class && ed.other(u) == v && (ed.wrap != Point::default()) == wraps
        })
        .expect("2-torus edge")
}

/// A drawn rectangle lifted to the torus: its lattice points, the torus
/// vertices they cover and the edges joining them.
#[derive(Debug, Clone)]
pub struct LiftedRect {
    pub sites: Vec<VertexId>,
    /// `(site, site, torus edge)`.
    pub links: Vec<(u32, u32, EdgeId)>,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl TorusPatch {
    pub fn coords(&self, v: VertexId) -> (i64, i64) {
        self.coords[v as usize]
    }

    pub fn vertex(&self, i: i64, j: i64) -> VertexId {
        let m = self.n as i64;
        self.index[(i.rem_euclid(m) * m + j.rem_euclid(m)) as usize]
    }

    pub fn right_edge(&self, v: VertexId) -> EdgeId {
        self.right[v as usize]
    }

    pub fn up_edge(&self, v: VertexId) -> EdgeId {
        self.up[v as usize]
    }

    /// Lattice points of the drawn half-open rectangle `[x0, x0+w) × [y0, y0+h)`.
    /// Fails if two points cover the same torus vertex.
    pub fn lift_rect(&self, x0: i64, y0: i64, w: i64, h: i64) -> Result<LiftedRect> {
        if w <= 0 || h <= 0 {
            return Err(Error::invalid("empty rectangle"));
        }
        let mut site_of: HashMap<(i64, i64), u32> = HashMap::new();
        let mut sites = Vec::new();
        let mut seen = vec![false; self.n * self.n];
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                let Some((i, j)) = self.undraw(x, y) else { continue };
                let v = self.vertex(i, j);
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::invalid(format!(
                        "rectangle {w}x{h} does not fit in the {n}-torus",
                        n = self.n
                    )));
                }
                site_of.insert((x, y), sites.len() as u32);
                sites.push(v);
            }
        }
        let (di, dj) = if self.rotated { ((1, 1), (-1, 1)) } else { ((1, 0), (0, 1)) };
        let mut links = Vec::new();
        for (&(x, y), &s) in &site_of {
            let v = sites[s as usize];
            if let Some(&t) = site_of.get(&(x + di.0, y + di.1)) {
                links.push((s, t, self.right_edge(v)));
            }
            if let Some(&t) = site_of.get(&(x + dj.0, y + dj.1)) {
                links.push((s, t, self.up_edge(v)));
            }
        }
        links.sort_unstable();
        let xs: Vec<i64> = site_of.keys().map(|k| k.0).collect();
        let (xmin, xmax) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let mut left: Vec<u32> = site_of.iter().filter(|(k, _)| k.0 == xmin).map(|(_, &s)| s).collect();
        let mut right: Vec<u32> = site_of.iter().filter(|(k, _)| k.0 == xmax).map(|(_, &s)| s).collect();
        left.sort_unstable();
        right.sort_unstable();
        Ok(LiftedRect { sites, links, left, right })
    }

    /// Lattice indices of the drawn point `(x, y)`, if it is a lattice point.
    fn undraw(&self, x: i64, y: i64) -> Option<(i64, i64)> {
        if self.rotated {
            if (x + y).rem_euclid(2) != 0 {
                return None;
            }
            Some(((x + y) / 2, (y - x) / 2))
        } else {
            Some((x, y))
        }
    }
}
