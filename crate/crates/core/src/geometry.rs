//! Exact planar geometry in the ring `Z[√3]`.
//!
//! Every lattice used here has vertex coordinates of the form
//! `a·(1/2) + b·(√3/2)` per axis. A [`Point`] stores the integer pairs
//! `(a, b)` for each axis, i.e. the doubled coordinate `a + b√3`, so that
//! orientation and intersection predicates are decided without rounding.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element `a + b√3` of `Z[√3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Surd {
    pub a: i64,
    pub b: i64,
}

impl Surd {
    pub const ZERO: Surd = Surd { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Surd { a, b }
    }

    pub const fn int(a: i64) -> Self {
        Surd { a, b: 0 }
    }

    pub const fn sqrt3(b: i64) -> Self {
        Surd { a: 0, b }
    }

    /// Exact sign of `a + b√3`.
    pub fn signum(self) -> i32 {
        let (a, b) = (self.a as i128, self.b as i128);
        match (a.signum(), b.signum()) {
            (0, s) | (s, 0) => s as i32,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, -1) => (a * a - 3 * b * b).signum() as i32,
            _ => (3 * b * b - a * a).signum() as i32,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * 3f64.sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.a, -self.b)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        Surd::new(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl Mul<i64> for Surd {
    type Output = Surd;
    fn mul(self, k: i64) -> Surd {
        Surd::new(self.a * k, self.b * k)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

/// A point with doubled coordinates: the Euclidean point is `(x/2, y/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: Surd,
    pub y: Surd,
}

impl Point {
    pub const fn new(x: Surd, y: Surd) -> Self {
        Point { x, y }
    }

    /// Point whose x is a multiple of `√3/2` and y a multiple of `1/2`.
    pub const fn hex(bx: i64, ay: i64) -> Self {
        Point { x: Surd::sqrt3(bx), y: Surd::int(ay) }
    }

    /// Point whose coordinates are multiples of `1/2`.
    pub const fn half(ax: i64, ay: i64) -> Self {
        Point { x: Surd::int(ax), y: Surd::int(ay) }
    }

    /// Euclidean coordinates.
    pub fn to_f64(self) -> (f64, f64) {
        (self.x.to_f64() / 2.0, self.y.to_f64() / 2.0)
    }

    /// Four times the squared Euclidean length of the vector `self`.
    pub fn norm2_x4(self) -> Surd {
        self.x * self.x + self.y * self.y
    }

    /// Cross product of doubled vectors (four times the Euclidean one).
    pub fn cross(self, o: Point) -> Surd {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Point) -> Surd {
        self.x * o.x + self.y * o.y
    }

    pub fn scale(self, k: i64) -> Point {
        Point { x: self.x * k, y: self.y * k }
    }

    /// Axial integer coordinates: the non-trivial component of each axis.
    pub fn axial(self) -> [i64; 2] {
        let pick = |s: Surd| if s.b != 0 { s.b } else { s.a };
        [pick(self.x), pick(self.y)]
    }

    /// Half-plane index used for angular sorting (0 for angles in `[0, π)`).
    fn half_plane(self) -> u8 {
        let sy = self.y.signum();
        if sy > 0 || (sy == 0 && self.x.signum() > 0) {
            0
        } else {
            1
        }
    }

    /// Exact comparison of polar angles in `[0, 2π)`.
    pub fn angle_cmp(self, o: Point) -> Ordering {
        self.half_plane()
            .cmp(&o.half_plane())
            .then_with(|| 0.cmp(&self.cross(o).signum()))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Orientation of the triple `(a, b, c)`: `1` anticlockwise, `-1` clockwise.
pub fn orient(a: Point, b: Point, c: Point) -> i32 {
    (b - a).cross(c - a).signum()
}

/// Whether segments `p1p2` and `q1q2` meet anywhere other than at a shared endpoint.
pub fn segments_cross_improperly(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let shared = [p1, p2].iter().filter(|p| **p == q1 || **p == q2).count();
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);
    if shared == 2 {
        return true;
    }
    if shared == 1 {
        // Touching at one endpoint is fine unless the segments overlap collinearly.
        if o1 == 0 && o2 == 0 {
            let (common, p_other, q_other) = if p1 == q1 {
                (p1, p2, q2)
            } else if p1 == q2 {
                (p1, p2, q1)
            } else if p2 == q1 {
                (p2, p1, q2)
            } else {
                (p2, p1, q1)
            };
            return (p_other - common).dot(q_other - common).signum() > 0;
        }
        return false;
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let on = |a: Point, b: Point, c: Point| {
        orient(a, b, c) == 0
            && c.x >= a.x.min(b.x)
            && c.x <= a.x.max(b.x)
            && c.y >= a.y.min(b.y)
            && c.y <= a.y.max(b.y)
    };
    on(p1, p2, q1) || on(p1, p2, q2) || on(q1, q2, p1) || on(q1, q2, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_sign_is_exact() {
        assert_eq!(Surd::new(2, -1).signum(), 1); // 2 - 1.732
        assert_eq!(Surd::new(-2, 1).signum(), -1);
        assert_eq!(Surd::new(1, -1).signum(), -1);
        assert_eq!(Surd::new(7, -4).signum(), 1); // 7 - 6.928
        assert_eq!(Surd::ZERO.signum(), 0);
        assert!(Surd::int(2) > Surd::sqrt3(1));
    }

    #[test]
    fn angle_order_goes_anticlockwise() {
        let mut v = vec![
            Point::half(0, -2),
            Point::half(2, 0),
            Point::half(-2, 0),
            Point::half(0, 2),
            Point::hex(1, 1),
        ];
        v.sort_by(|a, b| a.angle_cmp(*b));
        assert_eq!(
            v,
            vec![
                Point::half(2, 0),
                Point::hex(1, 1),
                Point::half(0, 2),
                Point::half(-2, 0),
                Point::half(0, -2)
            ]
        );
    }

    #[test]
    fn segment_crossing_predicate() {
        let o = Point::half(0, 0);
        let a = Point::half(2, 2);
        assert!(segments_cross_improperly(o, a, Point::half(0, 2), Point::half(2, 0)));
        assert!(!segments_cross_improperly(o, a, a, Point::half(4, 0)));
        assert!(segments_cross_improperly(o, Point::half(4, 0), Point::half(2, 0), Point::half(6, 0)));
        assert!(!segments_cross_improperly(o, Point::half(2, 0), Point::half(0, 2), Point::half(2, 2)));
    }
}
