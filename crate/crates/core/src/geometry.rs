//! Planar primitives: points, labeled point sets, distances, orientation,
//! proper segment crossing, and strict-convex-position handling.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point in the plane. Coordinates must be finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

// Points serialize as `[x, y]` pairs.
impl<S: Serialize> Serialize for Point<S> {
    fn serialize<T: Serializer>(&self, serializer: T) -> std::result::Result<T::Ok, T::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.end()
    }
}

impl<'de, S: Deserialize<'de>> Deserialize<'de> for Point<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairVisitor<S>(std::marker::PhantomData<S>);

        impl<'de, S: Deserialize<'de>> Visitor<'de> for PairVisitor<S> {
            type Value = Point<S>;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a two-element [x, y] array")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Point<S>, A::Error> {
                let x = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let y = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(1, &self))?;
                if seq.next_element::<serde::de::IgnoredAny>()?.is_some() {
                    return Err(serde::de::Error::invalid_length(3, &self));
                }
                Ok(Point { x, y })
            }
        }

        deserializer.deserialize_seq(PairVisitor(std::marker::PhantomData))
    }
}

/// Role tag attached to a point by the instance generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Plain,
    Circle,
    CenterCluster,
    GadgetL,
    GadgetR,
    ClusterLeft,
    ClusterRight,
    Apex,
}

/// Ordered, optionally labeled point set. Indices `0..n` identify points in
/// every structure built on top (trees, paths, DP tables).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet<S> {
    pub points: Vec<Point<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

impl<S: Scalar> PointSet<S> {
    pub fn new(points: Vec<Point<S>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("point set must be non-empty".into()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "point {i} has non-finite coordinates"
            )));
        }
        Ok(PointSet {
            points,
            labels: None,
        })
    }

    pub fn with_labels(points: Vec<Point<S>>, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        let mut ps = Self::new(points)?;
        ps.labels = Some(labels);
        Ok(ps)
    }

    /// Convenience constructor from raw coordinate pairs.
    pub fn from_coords(coords: &[(S, S)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Euclidean distance between two points.
pub fn distance<S: Scalar>(a: Point<S>, b: Point<S>) -> S {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    (dx * dx + dy * dy).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

/// Cross product `(b - a) x (c - a)`, the doubled signed area of `abc`.
pub fn cross<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>) -> S {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Signed-area orientation test with absolute tolerance on the cross product.
pub fn orientation<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>) -> Orientation {
    let v = cross(a, b, c);
    if v.abs() <= S::orient_eps() {
        Orientation::Collinear
    } else if v > S::zero() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Proper crossing test for the open segments `ab` and `cd`.
///
/// True only when the segments intersect at a point interior to both.
/// Segments that merely share an endpoint, touch, overlap collinearly, or
/// have zero length do not cross.
pub fn segments_cross<S: Scalar>(a: Point<S>, b: Point<S>, c: Point<S>, d: Point<S>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    let straddle = |p: Orientation, q: Orientation| {
        (p == Orientation::Clockwise && q == Orientation::CounterClockwise)
            || (p == Orientation::CounterClockwise && q == Orientation::Clockwise)
    };
    straddle(o1, o2) && straddle(o3, o4)
}

fn lex_less<S: Scalar>(a: Point<S>, b: Point<S>) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

/// Strictly convex hull in counterclockwise order (collinear boundary points
/// dropped), via the monotone chain. Returns indices into `ps`.
fn strict_hull_ccw<S: Scalar>(ps: &PointSet<S>) -> Vec<usize> {
    let pts = &ps.points;
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i]
            .x
            .partial_cmp(&pts[j].x)
            .unwrap()
            .then(pts[i].y.partial_cmp(&pts[j].y).unwrap())
    });

    let build = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut chain: Vec<usize> = Vec::new();
        for i in iter {
            while chain.len() >= 2 {
                let a = pts[chain[chain.len() - 2]];
                let b = pts[chain[chain.len() - 1]];
                if orientation(a, b, pts[i]) == Orientation::CounterClockwise {
                    break;
                }
                chain.pop();
            }
            chain.push(i);
        }
        chain
    };

    let lower = build(&mut idx.iter().copied());
    let upper = build(&mut idx.iter().rev().copied());

    let mut hull = lower;
    hull.pop();
    hull.extend(upper.iter().take(upper.len().saturating_sub(1)));
    hull
}

/// True iff every point is a vertex of the convex hull and no three
/// consecutive hull vertices are collinear within tolerance.
pub fn is_strictly_convex_position<S: Scalar>(ps: &PointSet<S>) -> Result<bool> {
    if ps.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "convex-position test needs at least 3 points, got {}",
            ps.len()
        )));
    }
    Ok(strict_hull_ccw(ps).len() == ps.len())
}

/// Index of some point witnessing a convexity violation (not a strict hull
/// vertex), for diagnostics. `None` when the set is strictly convex.
pub fn convexity_violation<S: Scalar>(ps: &PointSet<S>) -> Option<usize> {
    if ps.len() < 3 {
        return Some(0);
    }
    let hull = strict_hull_ccw(ps);
    if hull.len() == ps.len() {
        return None;
    }
    let on_hull: std::collections::HashSet<usize> = hull.into_iter().collect();
    (0..ps.len()).find(|i| !on_hull.contains(i))
}

/// Clockwise hull order of a strictly convex point set, starting at the
/// lexicographically smallest point. Returns a permutation of `0..n`.
pub fn convex_clockwise_order<S: Scalar>(ps: &PointSet<S>) -> Result<Vec<usize>> {
    if !is_strictly_convex_position(ps)? {
        let witness = convexity_violation(ps)
            .map(|i| format!(" (point {i} is not a strict hull vertex)"))
            .unwrap_or_default();
        return Err(Error::InvalidInput(format!(
            "points are not in strictly convex position{witness}"
        )));
    }
    let mut order = strict_hull_ccw(ps);
    order.reverse(); // counterclockwise -> clockwise

    let start = (0..order.len())
        .min_by(|&a, &b| {
            if lex_less(ps.points[order[a]], ps.points[order[b]]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
        .unwrap();
    order.rotate_left(start);
    Ok(order)
}
