use crate::error::{Error, Result};
use crate::geometry::Point;

use super::mixed::build_mixed_lattice;
use super::patch::{Family, LatticePatch, PatchBuilder, DEFAULT_MAX_VERTICES};

/// Builds a rectangular window of `family` with `width × height` cells.
///
/// Mixed patches built here use the interface at half height; use
/// [`build_mixed_lattice`] for control over the interface.
pub fn build_lattice_patch(family: Family, width: usize, height: usize) -> Result<LatticePatch> {
    build_lattice_patch_capped(family, width, height, DEFAULT_MAX_VERTICES)
}

pub fn build_lattice_patch_capped(
    family: Family,
    width: usize,
    height: usize,
    max_vertices: usize,
) -> Result<LatticePatch> {
    if width == 0 || height == 0 {
        return Err(Error::invalid("width and height must be at least 1"));
    }
    let estimate = (width + 2).saturating_mul(height + 2).saturating_mul(match family {
        Family::Archimedean3122 => 6,
        Family::Hexagonal => 2,
        _ => 1,
    });
    if estimate > max_vertices.saturating_mul(2) {
        return Err(Error::invalid(format!(
            "{width}x{height} {family} patch exceeds the maximum of {max_vertices} vertices"
        )));
    }
    match family {
        Family::Square => square(width, height, max_vertices),
        Family::Triangular => triangular(width, height, max_vertices),
        Family::Hexagonal => hexagonal(width, height, max_vertices),
        Family::Archimedean3122 => archimedean(width, height, max_vertices),
        Family::Mixed => Ok(build_mixed_lattice(height / 2, width, height)?.patch),
    }
}

fn square(w: usize, h: usize, max: usize) -> Result<LatticePatch> {
    let mut b = PatchBuilder::new(Family::Square).max_vertices(max);
    let (w, h) = (w as i64, h as i64);
    for j in 0..=h {
        for i in 0..=w {
            let p = Point::half(2 * i, 2 * j);
            b.vertex(p)?;
            if i < w {
                b.edge(p, Point::half(2 * i + 2, 2 * j), 0)?;
            }
            if j < h {
                b.edge(p, Point::half(2 * i, 2 * j + 2), 1)?;
            }
        }
    }
    Ok(b.finish())
}

/// Triangular lattice with edge length √3: rows at height `3j/2`, odd rows
/// shifted by `√3/2`.
fn triangular(w: usize, h: usize, max: usize) -> Result<LatticePatch> {
    let mut b = PatchBuilder::new(Family::Triangular).max_vertices(max);
    let (w, h) = (w as i64, h as i64);
    let bx = |i: i64, j: i64| 2 * i + j.rem_euclid(2);
    for j in 0..=h {
        for i in 0..=w {
            let p = Point::hex(bx(i, j), 3 * j);
            b.vertex(p)?;
            if i < w {
                b.edge(p, Point::hex(bx(i + 1, j), 3 * j), 0)?;
            }
            if j < h {
                let lo = bx(0, j + 1);
                let hi = bx(w, j + 1);
                let x = bx(i, j);
                // up-right neighbour is the left edge of an upward triangle
                if x + 1 <= hi {
                    b.edge(p, Point::hex(x + 1, 3 * j + 3), 2)?;
                }
                if x - 1 >= lo {
                    b.edge(p, Point::hex(x - 1, 3 * j + 3), 1)?;
                }
            }
        }
    }
    Ok(b.finish())
}

/// Offsets of the six corners of a hexagon around its centre, anticlockwise
/// from the top, in `(√3/2, 1/2)` units.
const HEX_CORNERS: [(i64, i64); 6] = [(0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1), (1, 1)];

/// Class of the hexagonal edge joining `p` and `q`.
pub(crate) fn hex_class(p: Point, q: Point) -> u8 {
    let d = q - p;
    if d.x.is_zero() {
        0
    } else if (d.x.signum() > 0) == (d.y.signum() > 0) {
        1
    } else {
        2
    }
}

fn hex_cells(w: usize, h: usize) -> Vec<(i64, i64)> {
    let mut centres = Vec::with_capacity(w * h);
    for j in 0..h as i64 {
        for i in 0..w as i64 {
            centres.push((1 + 2 * i + j.rem_euclid(2), 1 + 3 * j));
        }
    }
    centres
}

/// Honeycomb made of `w × h` hexagons with vertical edges; the vertex
/// `(0,0)` carries the vertical edge to `(0,1)`.
fn hexagonal(w: usize, h: usize, max: usize) -> Result<LatticePatch> {
    let mut b = PatchBuilder::new(Family::Hexagonal).max_vertices(max);
    for (cx, cy) in hex_cells(w, h) {
        for k in 0..6 {
            let (ax, ay) = HEX_CORNERS[k];
            let (bx, by) = HEX_CORNERS[(k + 1) % 6];
            let p = Point::hex(cx + ax, cy + ay);
            let q = Point::hex(cx + bx, cy + by);
            b.edge(p, q, hex_class(p, q))?;
        }
    }
    Ok(b.finish())
}

/// Unit vectors (doubled coordinates) from a hexagonal vertex along its three edges.
pub(crate) fn hex_directions(p: Point) -> [Point; 3] {
    if p.y.a.rem_euclid(3) == 0 {
        // type A: up, down-left, down-right
        [Point::hex(0, 2), Point::hex(-1, -1), Point::hex(1, -1)]
    } else {
        [Point::hex(0, -2), Point::hex(-1, 1), Point::hex(1, 1)]
    }
}

/// Each vertex of a (scaled by 3) honeycomb becomes a triangle of side √3;
/// the remaining edges have length 1.
fn archimedean(w: usize, h: usize, max: usize) -> Result<LatticePatch> {
    let hex = hexagonal(w, h, max)?;
    let mut b = PatchBuilder::new(Family::Archimedean3122).max_vertices(max);
    let scale = |p: Point| p.scale(3);
    for (v, &p) in hex.positions().iter().enumerate() {
        let c = scale(p);
        let dirs = hex_directions(p);
        for k in 0..3 {
            b.edge(c + dirs[k], c + dirs[(k + 1) % 3], 0)?;
        }
        for &(w, _) in hex.neighbors(v as u32) {
            if (w as usize) > v {
                let q = hex.position(w);
                let d = q - p;
                b.edge(c + d, scale(q) - d, 1)?;
            }
        }
    }
    Ok(b.finish())
}

/// Square-lattice window used for the duality crossing: `[0, w] × [0, h]`.
pub fn square_rect(w: usize, h: usize) -> Result<LatticePatch> {
    square(w, h, DEFAULT_MAX_VERTICES)
}

/// Square box `[-r, r]²`.
pub fn square_box(r: usize) -> Result<LatticePatch> {
    let mut b = PatchBuilder::new(Family::Square);
    let r = r as i64;
    for j in -r..=r {
        for i in -r..=r {
            let p = Point::half(2 * i, 2 * j);
            b.vertex(p)?;
            if i < r {
                b.edge(p, Point::half(2 * i + 2, 2 * j), 0)?;
            }
            if j < r {
                b.edge(p, Point::half(2 * i, 2 * j + 2), 1)?;
            }
        }
    }
    Ok(b.finish())
}

/// Lattice ball of graph radius `r` around the origin of the infinite `family`
/// lattice (hexagonal origin is the type-A vertex `(0,0)`).
pub fn lattice_ball(family: Family, r: usize) -> Result<LatticePatch> {
    use std::collections::{HashMap, VecDeque};
    let origin = lattice_origin(family)?;
    let mut b = PatchBuilder::new(family);
    let mut dist: HashMap<Point, usize> = HashMap::from([(origin, 0)]);
    let mut queue = VecDeque::from([origin]);
    b.vertex(origin)?;
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == r {
            continue;
        }
        for (q, _) in infinite_neighbors(family, p)? {
            if !dist.contains_key(&q) {
                dist.insert(q, d + 1);
                queue.push_back(q);
            }
        }
    }
    let inside: Vec<Point> = dist.keys().copied().collect();
    for &p in &inside {
        for (q, class) in infinite_neighbors(family, p)? {
            if dist.contains_key(&q) {
                b.edge(p, q, class)?;
            }
        }
    }
    Ok(b.finish())
}

/// Reference vertex of the infinite lattice: `(0,0)`, or the top corner of the
/// triangle replacing it for the 3-12-2 lattice.
pub fn lattice_origin(family: Family) -> Result<Point> {
    match family {
        Family::Archimedean3122 => Ok(Point::hex(0, 2)),
        Family::Mixed => Err(Error::invalid("mixed lattices have no translation-invariant infinite form")),
        _ => Ok(Point::default()),
    }
}

/// Neighbours of `p` in the infinite lattice, with edge classes.
pub fn infinite_neighbors(family: Family, p: Point) -> Result<Vec<(Point, u8)>> {
    Ok(match family {
        Family::Square => [(2, 0, 0), (-2, 0, 0), (0, 2, 1), (0, -2, 1)]
            .iter()
            .map(|&(dx, dy, c)| (p + Point::half(dx, dy), c))
            .collect(),
        Family::Triangular => [(2, 0, 0), (-2, 0, 0), (1, 3, 2), (-1, -3, 2), (-1, 3, 1), (1, -3, 1)]
            .iter()
            .map(|&(dx, dy, c)| (p + Point::hex(dx, dy), c))
            .collect(),
        Family::Hexagonal => hex_directions(p).iter().map(|&d| (p + d, hex_class(p, p + d))).collect(),
        Family::Archimedean3122 => {
            // corners sit at 3c + d with c a hexagonal vertex and d one of its unit directions
            let (c, d) = archimedean_corner(p)?;
            let dirs = hex_directions(c);
            let mut out: Vec<(Point, u8)> = dirs
                .iter()
                .filter(|&&e| e != d)
                .map(|&e| (c.scale(3) + e, 0))
                .collect();
            // the non-triangular edge ends at the facing corner 3(c+d) - d
            out.push((p + d, 1));
            out
        }
        Family::Mixed => return Err(Error::invalid("mixed lattices have no translation-invariant infinite form")),
    })
}

/// True when `p` is a vertex of the infinite honeycomb.
pub(crate) fn is_hex_vertex(p: Point) -> bool {
    if p.x.a != 0 || p.y.b != 0 {
        return false;
    }
    let (bx, ay) = (p.x.b, p.y.a);
    match ay.rem_euclid(3) {
        0 => bx.rem_euclid(2) == (ay / 3).rem_euclid(2),
        2 => bx.rem_euclid(2) == ((ay - 2) / 3).rem_euclid(2),
        _ => false,
    }
}

/// Splits a corner of the 3-12-2 lattice as `3c + d`.
fn archimedean_corner(p: Point) -> Result<(Point, Point)> {
    let units = [(0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)];
    for (dx, dy) in units {
        let d = Point::hex(dx, dy);
        let r = p - d;
        if r.x.b % 3 == 0 && r.y.a % 3 == 0 && r.x.a == 0 && r.y.b == 0 {
            let c = Point::hex(r.x.b / 3, r.y.a / 3);
            if is_hex_vertex(c) && hex_directions(c).contains(&d) {
                return Ok((c, d));
            }
        }
    }
    Err(Error::invalid("point is not a vertex of the 3-12-2 lattice"))
}
