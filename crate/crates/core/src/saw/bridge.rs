use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Surd};

use super::path::SawPath;

/// Height with the horizontal coordinate as a tie-break: `(y, x)` compared
/// lexicographically, so distinct vertices never share a height.
pub type Height = (Surd, Surd);

fn height(p: Point) -> Height {
    (p.y, p.x)
}

fn sub(a: Height, b: Height) -> Height {
    (a.0 - b.0, a.1 - b.1)
}

/// Bridges of a walk, in walk order.
///
/// The first `lower` bridges come from the part before the earliest lowest
/// vertex `c`; their displacements increase along the walk. The rest come from
/// the part after `c`, with decreasing displacements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDecomposition {
    pub bridges: Vec<SawPath>,
    pub lower: usize,
}

impl BridgeDecomposition {
    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    /// Height spans `T_{−i}, …, T_{−1}, T_0, …, T_j`, in walk order.
    pub fn displacements(&self) -> Vec<Height> {
        self.bridges
            .iter()
            .map(|b| {
                let (s, e) = (height(b.points[0]), height(*b.points.last().unwrap()));
                if s <= e {
                    sub(e, s)
                } else {
                    sub(s, e)
                }
            })
            .collect()
    }

    /// `T_{−i} < ⋯ < T_{−1}` and `T_0 > ⋯ > T_j`.
    pub fn is_monotone(&self) -> bool {
        let d = self.displacements();
        let (lo, hi) = d.split_at(self.lower);
        lo.windows(2).all(|w| w[0] < w[1]) && hi.windows(2).all(|w| w[0] > w[1])
    }
}

/// Split points of a walk whose first vertex is strictly lowest: alternately
/// the last highest and the final lowest vertex of the remainder.
fn half_plane_splits(points: &[Point]) -> Vec<usize> {
    let mut cuts = vec![0];
    let mut i = 0;
    let mut up = true;
    while i + 1 < points.len() {
        let rest = (i + 1..points.len()).map(|k| (height(points[k]), k));
        // heights are distinct, so first/last among extremal vertices coincide
        let j = if up { rest.max().unwrap().1 } else { rest.min().unwrap().1 };
        cuts.push(j);
        i = j;
        up = !up;
    }
    cuts
}

pub fn bridge_decompose(path: &SawPath) -> Result<BridgeDecomposition> {
    let pts = &path.points;
    if pts.len() == 1 {
        return Ok(BridgeDecomposition { bridges: vec![path.clone()], lower: 0 });
    }
    let c = (0..pts.len()).min_by_key(|&k| (height(pts[k]), k)).unwrap();
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    // part before c, read backwards from c
    let rev: Vec<Point> = pts[..=c].iter().rev().copied().collect();
    let back = half_plane_splits(&rev);
    let mut lower: Vec<(usize, usize)> = back.windows(2).map(|w| (c - w[1], c - w[0])).collect();
    lower.reverse();
    pieces.extend(&lower);
    let fwd = half_plane_splits(&pts[c..]);
    pieces.extend(fwd.windows(2).map(|w| (c + w[0], c + w[1])));
    let last = pieces.len() - 1;
    let bridges = pieces
        .iter()
        .enumerate()
        .map(|(i, &(s, e))| {
            let head = if i == 0 { path.head } else { None };
            let tail = if i == last { path.tail } else { None };
            SawPath::new(pts[s..=e].to_vec(), head, tail)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BridgeDecomposition { bridges, lower: lower.len() })
}

/// Concatenates the bridges back into the original walk.
pub fn reconstruct(dec: &BridgeDecomposition) -> Result<SawPath> {
    let first = dec.bridges.first().ok_or_else(|| Error::invalid("empty decomposition"))?;
    let mut points = first.points.clone();
    for b in &dec.bridges[1..] {
        if b.points[0] != *points.last().unwrap() {
            return Err(Error::invalid("consecutive bridges do not share an endpoint"));
        }
        points.extend_from_slice(&b.points[1..]);
    }
    SawPath::new(points, first.head, dec.bridges.last().unwrap().tail)
}
