//! Exact plane arithmetic over the field Q(sqrt 3).
//!
//! Every vertex of the unit-triangle tessellation has coordinates of the
//! form `a + b*sqrt(3)` with rational `a`, `b`, and rotating by 120 degrees
//! keeps that shape. Doing all position arithmetic exactly removes drift
//! entirely: triangles reached along different rotation paths land on
//! bit-identical coordinates, so deduplication is a plain map lookup.
//! Floating point appears only when coordinates are finally written out.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub type Rat = Rational64;

/// An exact number `a + b*sqrt(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sqrt3 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt3 {
    pub const fn new(a: Rat, b: Rat) -> Sqrt3 {
        Sqrt3 { a, b }
    }

    pub fn zero() -> Sqrt3 {
        Sqrt3::new(Rat::new_raw(0, 1), Rat::new_raw(0, 1))
    }

    pub fn from_int(n: i64) -> Sqrt3 {
        Sqrt3::new(Rat::from_integer(n), Rat::zero())
    }

    pub fn from_rat(a: Rat) -> Sqrt3 {
        Sqrt3::new(a, Rat::zero())
    }

    /// `n/d * sqrt(3)`.
    pub fn sqrt3_times(n: i64, d: i64) -> Sqrt3 {
        Sqrt3::new(Rat::zero(), Rat::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of `a + b*sqrt(3)`, decided by comparing `a^2` against `3 b^2`
    /// when the two parts disagree in sign.
    pub fn sign(&self) -> Ordering {
        let (sa, sb) = (cmp_zero(self.a), cmp_zero(self.b));
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) | (Ordering::Less, Ordering::Greater) => {
                // a and b*sqrt(3) pull in opposite directions; the larger
                // square (with 3 b^2 for the radical part) wins, carrying
                // the sign of its side.
                let lhs = self.a * self.a;
                let rhs = self.b * self.b * Rat::from_integer(3);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        to_f64(self.a) + to_f64(self.b) * 3f64.sqrt()
    }
}

fn cmp_zero(r: Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Add for Sqrt3 {
    type Output = Sqrt3;
    fn add(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Sqrt3 {
    type Output = Sqrt3;
    fn sub(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for Sqrt3 {
    type Output = Sqrt3;
    fn mul(self, rhs: Sqrt3) -> Sqrt3 {
        // (a + b r)(c + d r) = ac + 3bd + (ad + bc) r  with  r^2 = 3.
        Sqrt3::new(
            self.a * rhs.a + Rat::from_integer(3) * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl Neg for Sqrt3 {
    type Output = Sqrt3;
    fn neg(self) -> Sqrt3 {
        Sqrt3::new(-self.a, -self.b)
    }
}

impl Ord for Sqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).sign()
    }
}

impl PartialOrd for Sqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.to_f64())
    }
}

/// A point of the plane with exact coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Sqrt3,
    pub y: Sqrt3,
}

impl Point {
    pub const fn new(x: Sqrt3, y: Sqrt3) -> Point {
        Point { x, y }
    }

    pub fn origin() -> Point {
        Point::new(Sqrt3::zero(), Sqrt3::zero())
    }

    /// The lattice point `m*(1,0) + n*(1/2, sqrt(3)/2)`.
    pub fn from_unit_coords(m: i64, n: i64) -> Point {
        Point::new(
            Sqrt3::from_rat(Rat::from_integer(m) + Rat::new(n, 2)),
            Sqrt3::sqrt3_times(n, 2),
        )
    }

    /// Inverse of [`Point::from_unit_coords`]; `None` off the lattice.
    pub fn unit_coords(&self) -> Option<(i64, i64)> {
        if !self.x.b.is_zero() || !self.y.a.is_zero() {
            return None;
        }
        let n2 = self.y.b * Rat::from_integer(2);
        if !n2.is_integer() {
            return None;
        }
        let n = n2.to_integer();
        let m = self.x.a - Rat::new(n, 2);
        if !m.is_integer() {
            return None;
        }
        Some((m.to_integer(), n))
    }

    pub fn norm2(&self) -> Sqrt3 {
        self.x * self.x + self.y * self.y
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Rotates `p` by 120 degrees about `center`, anticlockwise when
/// `clockwise` is false.
pub fn rotate_120(p: Point, center: Point, clockwise: bool) -> Point {
    let v = p - center;
    let half = Sqrt3::from_rat(Rat::new(-1, 2));
    let s = Sqrt3::sqrt3_times(if clockwise { -1 } else { 1 }, 2);
    let x = half * v.x - s * v.y;
    let y = s * v.x + half * v.y;
    center + Point::new(x, y)
}

/// Squared distance between two points.
pub fn dist2(p: Point, q: Point) -> Sqrt3 {
    (p - q).norm2()
}

/// Cross product of `(b - a)` and `(c - b)`: positive for an anticlockwise
/// turn.
pub fn orientation(a: Point, b: Point, c: Point) -> Ordering {
    let u = b - a;
    let v = c - b;
    (u.x * v.y - u.y * v.x).sign()
}

/// Color class of a tessellation vertex in unit coordinates: 0, 1, and 2
/// tag the three sublattices (the one through the origin, the one on the
/// positive x axis, and the remaining one).
pub fn vertex_color(m: i64, n: i64) -> u8 {
    (m - n).rem_euclid(3) as u8
}
