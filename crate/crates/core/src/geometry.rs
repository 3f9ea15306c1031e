//! Equilateral triangle construction and crossing counts against a square grid.
//!
//! A grid line at position `n` crosses the segment between coordinates `a`
//! and `b` when `min(a, b) < n <= max(a, b)`. Every count in this module uses
//! that half-open rule, so a vertex lying exactly on a line is resolved
//! deterministically rather than resampled.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn coord(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::X, Axis::Y];
}

/// An equilateral triangle given by its center, side length and rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSpec<T> {
    center: Point<T>,
    side: T,
    circumradius: T,
    rotation: T,
}

impl<T: Scalar> TriangleSpec<T> {
    /// `rotation` is reduced into `[0, 2π)`.
    pub fn new(center: Point<T>, side: T, rotation: T) -> Result<Self> {
        if !side.is_positive_finite() {
            return Err(Error::invalid(format!("triangle side must be positive and finite, got {side}")));
        }
        if !rotation.is_finite() {
            return Err(Error::invalid(format!("rotation must be finite, got {rotation}")));
        }
        if !center.x.is_finite() || !center.y.is_finite() {
            return Err(Error::invalid("triangle center must be finite"));
        }
        Ok(TriangleSpec {
            center,
            side,
            circumradius: side / T::lit(3.0).sqrt(),
            rotation: reduce_angle(rotation),
        })
    }

    pub fn center(&self) -> Point<T> {
        self.center
    }

    pub fn side(&self) -> T {
        self.side
    }

    pub fn circumradius(&self) -> T {
        self.circumradius
    }

    pub fn rotation(&self) -> T {
        self.rotation
    }

    /// Vertex `k` sits at angle `rotation + k·2π/3` on the circumcircle.
    pub fn vertices(&self) -> Vertices<T> {
        let step = T::third_turn();
        let vertex = |k: usize| {
            let (sin, cos) = (self.rotation + step * T::lit(k as f64)).sin_cos();
            Point::new(self.center.x + self.circumradius * cos, self.center.y + self.circumradius * sin)
        };
        Vertices([vertex(0), vertex(1), vertex(2)])
    }
}

fn reduce_angle<T: Scalar>(angle: T) -> T {
    let tau = T::TAU();
    if angle >= T::zero() && angle < tau {
        return angle;
    }
    let reduced = angle - tau * (angle / tau).floor();
    if reduced >= tau || reduced < T::zero() {
        T::zero()
    } else {
        reduced
    }
}

/// The three vertices of a cast triangle, in construction order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertices<T>(pub [Point<T>; 3]);

impl<T: Scalar> Vertices<T> {
    pub fn points(&self) -> &[Point<T>; 3] {
        &self.0
    }

    /// Sides as vertex pairs `(0,1)`, `(1,2)`, `(2,0)`.
    pub fn edges(&self) -> [(Point<T>, Point<T>); 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (c, a)]
    }

    pub fn centroid(&self) -> Point<T> {
        let three = T::lit(3.0);
        let [a, b, c] = self.0;
        Point::new((a.x + b.x + c.x) / three, (a.y + b.y + c.y) / three)
    }

    pub fn translated(&self, dx: T, dy: T) -> Self {
        Vertices(self.0.map(|p| Point::new(p.x + dx, p.y + dy)))
    }
}

pub fn make_triangle<T: Scalar>(center: Point<T>, side: T, rotation: T) -> Result<Vertices<T>> {
    Ok(TriangleSpec::new(center, side, rotation)?.vertices())
}

/// Vertex coordinates along `axis`, ascending.
pub fn sorted_axis_coords<T: Scalar>(v: &Vertices<T>, axis: Axis) -> [T; 3] {
    let mut c = v.0.map(|p| p.coord(axis));
    // Three-element sorting network; NaNs never occur for valid vertices.
    if c[0] > c[1] {
        c.swap(0, 1);
    }
    if c[1] > c[2] {
        c.swap(1, 2);
    }
    if c[0] > c[1] {
        c.swap(0, 1);
    }
    c
}

/// Number of index pairs `(i, j)`, `i < j`, with `coords[i] < line_pos <= coords[j]`.
///
/// `coords` must be nondecreasing. For a triangle these pairs are exactly its
/// three sides, so this equals the number of sides the line crosses.
#[inline]
pub fn count_line_crossings_sorted<T: Scalar>(coords: &[T; 3], line_pos: T) -> u32 {
    let [a0, a1, a2] = *coords;
    let inside = |lo: T, hi: T| u32::from(lo < line_pos && line_pos <= hi);
    inside(a0, a1) + inside(a0, a2) + inside(a1, a2)
}

#[inline]
pub fn segment_crosses_line<T: Scalar>(p: T, q: T, line_pos: T) -> bool {
    p.min(q) < line_pos && line_pos <= p.max(q)
}

/// A square tiling with spacing `L`. Vertical lines sit at `offset_x + k·L`,
/// horizontal lines at `offset_y + k·L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    spacing: T,
    offset_x: T,
    offset_y: T,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(spacing: T, offset_x: T, offset_y: T) -> Result<Self> {
        if !spacing.is_positive_finite() {
            return Err(Error::invalid(format!("grid spacing must be positive and finite, got {spacing}")));
        }
        for (name, off) in [("offset_x", offset_x), ("offset_y", offset_y)] {
            if !(off >= T::zero() && off < spacing) {
                return Err(Error::invalid(format!("{name} must lie in [0, {spacing}), got {off}")));
            }
        }
        Ok(GridSpec { spacing, offset_x, offset_y })
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn offset(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.offset_x,
            Axis::Y => self.offset_y,
        }
    }

    /// Position of line `k` of the family perpendicular to `axis`.
    #[inline]
    pub fn line_position(&self, axis: Axis, k: i64) -> T {
        self.offset(axis) + T::lit(k as f64) * self.spacing
    }

    /// Indices of every line that could satisfy `lo < pos <= hi`, with one
    /// extra index of slack on each side (the exact test is left to the caller).
    pub fn candidate_lines(&self, axis: Axis, lo: T, hi: T) -> std::ops::RangeInclusive<i64> {
        let off = self.offset(axis);
        let first = ((lo - off) / self.spacing).floor().to_i64().unwrap_or(0);
        let last = ((hi - off) / self.spacing).ceil().to_i64().unwrap_or(-1);
        first..=last
    }

    /// Lines with `lo <= pos <= hi`, as positions.
    pub fn lines_between(&self, axis: Axis, lo: T, hi: T) -> Vec<T> {
        self.candidate_lines(axis, lo, hi)
            .map(|k| self.line_position(axis, k))
            .filter(|&pos| pos >= lo && pos <= hi)
            .collect()
    }
}

/// Crossings of one cast, split by line family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct CrossingTally {
    /// Crossings with vertical lines (`x = const`).
    pub count_x: u32,
    /// Crossings with horizontal lines (`y = const`).
    pub count_y: u32,
}

impl CrossingTally {
    pub fn total(&self) -> u32 {
        self.count_x + self.count_y
    }

    pub fn count(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.count_x,
            Axis::Y => self.count_y,
        }
    }
}

/// Counts crossings using sorted vertex coordinates and the lines inside the
/// triangle's bounding box.
pub fn crossings_per_cast<T: Scalar>(v: &Vertices<T>, grid: &GridSpec<T>) -> CrossingTally {
    let family = |axis: Axis| {
        let coords = sorted_axis_coords(v, axis);
        grid.candidate_lines(axis, coords[0], coords[2])
            .map(|k| count_line_crossings_sorted(&coords, grid.line_position(axis, k)))
            .sum()
    };
    CrossingTally { count_x: family(Axis::X), count_y: family(Axis::Y) }
}

/// Counts crossings side by side with [`segment_crosses_line`], enumerating
/// lines per side. Slower than [`crossings_per_cast`]; used to cross-check it.
pub fn crossings_direct<T: Scalar>(v: &Vertices<T>, grid: &GridSpec<T>) -> CrossingTally {
    let family = |axis: Axis| -> u32 {
        v.edges()
            .iter()
            .map(|(p, q)| {
                let (a, b) = (p.coord(axis), q.coord(axis));
                grid.candidate_lines(axis, a.min(b), a.max(b))
                    .filter(|&k| segment_crosses_line(a, b, grid.line_position(axis, k)))
                    .count() as u32
            })
            .sum()
    };
    CrossingTally { count_x: family(Axis::X), count_y: family(Axis::Y) }
}
