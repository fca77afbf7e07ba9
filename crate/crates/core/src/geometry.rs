//! Exact rational planar primitives.
//!
//! Every predicate here is evaluated over arbitrary-precision rationals, so
//! the answer to "is this point on that edge" is never a rounding artifact.
//! Convex figures may be degenerate: a single point or a segment is a valid
//! compact convex set, and under open semantics denotes the empty set.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact scalar used for all coordinates.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Whether a set is read as a closed (compact) set or as the interior of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Closed,
    Open,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Closed => "closed",
            Semantics::Open => "open",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed" => Ok(Semantics::Closed),
            "open" => Ok(Semantics::Open),
            other => Err(Error::Parse(format!("unknown semantics `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(int(x), int(y))
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point2, t: &Rational) -> Point2 {
        Point2::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        self.lerp(other, &rat(1, 2))
    }

    /// `self + t * (dx, dy)`.
    pub fn offset(&self, dx: &Rational, dy: &Rational, t: &Rational) -> Point2 {
        Point2::new(&self.x + t * dx, &self.y + t * dy)
    }

    pub fn max_abs_coordinate(&self) -> Rational {
        std::cmp::max(self.x.abs(), self.y.abs())
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b - a) × (c - a)`.
pub fn cross(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// `(b - a) · (c - a)`.
pub fn dot(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.x - &a.x) * (&c.x - &a.x) + (&b.y - &a.y) * (&c.y - &a.y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

fn sign_of(v: &Rational) -> Ordering {
    v.cmp(&Rational::zero())
}

/// Turn direction of the path `a -> b -> c`.
pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> Orientation {
    match sign_of(&cross(a, b, c)) {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// True when `p` lies on the segment `a b` strictly between its endpoints.
pub fn on_open_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    a != b && cross(a, b, p).is_zero() && dot(a, b, p).is_positive() && dot(b, a, p).is_positive()
}

/// True when `p` lies on the closed segment `a b`.
pub fn on_closed_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    p == a || p == b || on_open_segment(p, a, b)
}

/// The line `a·x + b·y = c` in canonical integer form.
///
/// Coefficients are coprime integers and the first nonzero of `(a, b)` is
/// positive, so two descriptions of the same locus compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line2 {
    a: Rational,
    b: Rational,
    c: Rational,
}

/// Which closed side of a line to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfplaneSide {
    /// `a·x + b·y ≤ c`
    Le,
    /// `a·x + b·y ≥ c`
    Ge,
}

impl Line2 {
    /// Returns `None` when `a` and `b` are both zero.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Line2> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let lcm = [&a, &b, &c]
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut ints: Vec<BigInt> = [&a, &b, &c]
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
        let lead = if ints[0].is_zero() {
            &ints[1]
        } else {
            &ints[0]
        };
        if lead.is_negative() {
            for v in ints.iter_mut() {
                *v = -&*v;
            }
        }
        let [a, b, c]: [BigInt; 3] = ints.try_into().expect("three coefficients");
        Some(Line2 {
            a: Rational::from_integer(a),
            b: Rational::from_integer(b),
            c: Rational::from_integer(c),
        })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Option<Line2> {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line2::new(a, b, c)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `a·x + b·y - c`; zero exactly on the line.
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.eval(p).is_zero()
    }

    /// Direction vector `(-b, a)`.
    pub fn direction(&self) -> (Rational, Rational) {
        (-&self.b, self.a.clone())
    }

    /// Normal vector `(a, b)`.
    pub fn normal(&self) -> (Rational, Rational) {
        (self.a.clone(), self.b.clone())
    }

    /// Position of `p` along the line direction; orders points on the line.
    pub fn parameter(&self, p: &Point2) -> Rational {
        &self.a * &p.y - &self.b * &p.x
    }

    pub fn intersection(&self, other: &Line2) -> Option<Point2> {
        let det = &self.a * &other.b - &other.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &other.c * &self.b) / &det;
        let y = (&self.a * &other.c - &other.a * &self.c) / &det;
        Some(Point2::new(x, y))
    }

    pub fn is_parallel(&self, other: &Line2) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }
}

impl fmt::Display for Line2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// A compact convex polygon, possibly degenerate.
///
/// Vertices form a counter-clockwise cycle in strictly convex position and
/// start at the lexicographically least vertex. One vertex is a point, two
/// vertices a segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvexFigure {
    vertices: Vec<Point2>,
}

impl ConvexFigure {
    /// Validates and canonicalizes a vertex cycle.
    ///
    /// Either orientation is accepted; the stored cycle is always CCW.
    /// Rejects repeated vertices, collinear triples and non-convex cycles.
    pub fn new(vertices: Vec<Point2>) -> Result<ConvexFigure, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidFigure("figure has no vertices".into()));
        }
        let hull = convex_hull(&vertices).expect("nonempty input");
        if hull.vertices.len() != vertices.len() {
            return Err(Error::InvalidFigure(format!(
                "{} vertices given but only {} are in strictly convex position",
                vertices.len(),
                hull.vertices.len()
            )));
        }
        if vertices.len() >= 3 {
            let forward = is_rotation_of(&vertices, &hull.vertices);
            let mut reversed = vertices.clone();
            reversed.reverse();
            if !forward && !is_rotation_of(&reversed, &hull.vertices) {
                return Err(Error::InvalidFigure(
                    "vertices are not listed in cyclic order".into(),
                ));
            }
        }
        Ok(hull)
    }

    pub fn point(p: Point2) -> ConvexFigure {
        ConvexFigure { vertices: vec![p] }
    }

    /// Panics when `p == q`.
    pub fn segment(p: Point2, q: Point2) -> ConvexFigure {
        assert!(p != q, "segment endpoints must differ");
        let mut v = vec![p, q];
        v.sort();
        ConvexFigure { vertices: v }
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> ConvexFigure {
        convex_hull(&[
            Point2::new(x0.clone(), y0.clone()),
            Point2::new(x1.clone(), y0),
            Point2::new(x1, y1.clone()),
            Point2::new(x0, y1),
        ])
        .expect("nonempty")
    }

    /// A `k`-gon inscribed in the circle of radius `radius` about `center`,
    /// close to regular.
    ///
    /// Vertices are exact rational points on the circle, taken from the
    /// parametrization `((1 - t²) / (1 + t²), 2t / (1 + t²))` with `t`
    /// rounded to a multiple of `2^-16`. Panics for `k < 3`.
    pub fn inscribed(k: usize, center: &Point2, radius: &Rational) -> ConvexFigure {
        assert!(k >= 3, "an inscribed polygon needs at least 3 vertices");
        let scale = f64::from(1u32 << 16);
        let points: Vec<Point2> = (0..k)
            .map(|j| {
                // the quarter offset keeps every half-angle away from π/2
                let half = std::f64::consts::PI * (j as f64 + 0.25) / k as f64;
                let t = rat((half.tan() * scale).round() as i64, 1 << 16);
                let d = Rational::one() + &t * &t;
                let x = (Rational::one() - &t * &t) / &d;
                let y = (int(2) * &t) / d;
                Point2::new(&center.x + radius * x, &center.y + radius * y)
            })
            .collect();
        let hull = convex_hull(&points).expect("nonempty");
        assert_eq!(hull.len(), k, "rounded parameters collided");
        hull
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Points and segments have empty interior.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Boundary edges as vertex pairs. A segment has one edge, a point none.
    pub fn edges(&self) -> Vec<(&Point2, &Point2)> {
        match self.vertices.len() {
            0 | 1 => Vec::new(),
            2 => vec![(&self.vertices[0], &self.vertices[1])],
            k => (0..k)
                .map(|i| (&self.vertices[i], &self.vertices[(i + 1) % k]))
                .collect(),
        }
    }

    pub fn supporting_lines(&self) -> Vec<Line2> {
        self.edges()
            .into_iter()
            .map(|(p, q)| Line2::through(p, q).expect("distinct vertices"))
            .collect()
    }

    pub fn vertex_index(&self, p: &Point2) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn has_vertex(&self, p: &Point2) -> bool {
        self.vertex_index(p).is_some()
    }

    pub fn contains(&self, p: &Point2, semantics: Semantics) -> bool {
        membership(self, p, semantics)
    }

    /// True when `p` lies on some edge, endpoints excluded.
    pub fn on_open_edge(&self, p: &Point2) -> Option<usize> {
        self.edges()
            .into_iter()
            .position(|(a, b)| on_open_segment(p, a, b))
    }

    /// Vertex average; lies in the relative interior of the figure.
    pub fn vertex_centroid(&self) -> Point2 {
        let k = int(self.vertices.len() as i64);
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((Rational::zero(), Rational::zero()), |(sx, sy), v| {
                (sx + &v.x, sy + &v.y)
            });
        Point2::new(sx / &k, sy / &k)
    }

    /// `(min x, min y, max x, max y)`.
    pub fn bounding_box(&self) -> (Rational, Rational, Rational, Rational) {
        let first = &self.vertices[0];
        let mut bb = (
            first.x.clone(),
            first.y.clone(),
            first.x.clone(),
            first.y.clone(),
        );
        for v in &self.vertices[1..] {
            if v.x < bb.0 {
                bb.0 = v.x.clone();
            }
            if v.y < bb.1 {
                bb.1 = v.y.clone();
            }
            if v.x > bb.2 {
                bb.2 = v.x.clone();
            }
            if v.y > bb.3 {
                bb.3 = v.y.clone();
            }
        }
        bb
    }

    /// Every vertex of `self` lies in `other`, i.e. `self ⊆ other`.
    pub fn is_subset_of(&self, other: &ConvexFigure) -> bool {
        self.vertices
            .iter()
            .all(|v| membership(other, v, Semantics::Closed))
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> ConvexFigure {
        ConvexFigure {
            vertices: self
                .vertices
                .iter()
                .map(|v| Point2::new(&v.x + dx, &v.y + dy))
                .collect(),
        }
    }
}

impl fmt::Display for ConvexFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

fn is_rotation_of(cycle: &[Point2], canonical: &[Point2]) -> bool {
    let Some(start) = cycle.iter().position(|p| *p == canonical[0]) else {
        return false;
    };
    (0..cycle.len()).all(|i| cycle[(start + i) % cycle.len()] == canonical[i])
}

/// Smallest convex figure containing all `points`, or `None` for no input.
///
/// Monotone chain with strict turns: collinear and duplicate inputs collapse,
/// so the result may be a segment or a point.
pub fn convex_hull(points: &[Point2]) -> Option<ConvexFigure> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return None,
        1 | 2 => return Some(ConvexFigure { vertices: pts }),
        _ => {}
    }
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // All-collinear input leaves just the two extremes.
    Some(ConvexFigure { vertices: lower })
}

/// Point membership in `figure` read as a closed set or as its interior.
///
/// Points and segments have empty interior, so they never contain anything
/// under open semantics.
pub fn membership(figure: &ConvexFigure, p: &Point2, semantics: Semantics) -> bool {
    let v = &figure.vertices;
    match (v.len(), semantics) {
        (0, _) => false,
        (1 | 2, Semantics::Open) => false,
        (1, Semantics::Closed) => v[0] == *p,
        (2, Semantics::Closed) => on_closed_segment(p, &v[0], &v[1]),
        (k, Semantics::Closed) => (0..k).all(|i| !cross(&v[i], &v[(i + 1) % k], p).is_negative()),
        (k, Semantics::Open) => (0..k).all(|i| cross(&v[i], &v[(i + 1) % k], p).is_positive()),
    }
}

/// Keeps the part of `figure` where the affine function `f` is nonnegative.
fn clip_affine<F>(figure: &ConvexFigure, f: F) -> Option<ConvexFigure>
where
    F: Fn(&Point2) -> Rational,
{
    let v = &figure.vertices;
    let vals: Vec<Rational> = v.iter().map(&f).collect();
    if vals.iter().all(|s| !s.is_negative()) {
        return Some(figure.clone());
    }
    if vals.iter().all(|s| s.is_negative()) {
        return None;
    }
    let k = v.len();
    let mut out = Vec::with_capacity(k + 2);
    for i in 0..k {
        let j = (i + 1) % k;
        if !vals[i].is_negative() {
            out.push(v[i].clone());
        }
        if (vals[i].is_positive() && vals[j].is_negative())
            || (vals[i].is_negative() && vals[j].is_positive())
        {
            let t = &vals[i] / (&vals[i] - &vals[j]);
            out.push(v[i].lerp(&v[j], &t));
        }
    }
    convex_hull(&out)
}

/// `figure ∩ {a·x + b·y ≤ c}` (or `≥`), closed.
pub fn clip_halfplane(
    figure: &ConvexFigure,
    line: &Line2,
    keep: HalfplaneSide,
) -> Option<ConvexFigure> {
    match keep {
        HalfplaneSide::Le => clip_affine(figure, |p| -line.eval(p)),
        HalfplaneSide::Ge => clip_affine(figure, |p| line.eval(p)),
    }
}

/// Keeps the closed part of `figure` to the left of the directed line `p -> q`.
pub fn clip_left_of(figure: &ConvexFigure, p: &Point2, q: &Point2) -> Option<ConvexFigure> {
    clip_affine(figure, |r| cross(p, q, r))
}

/// Exact closed intersection of two convex figures.
pub fn intersect_figures(f: &ConvexFigure, g: &ConvexFigure) -> Option<ConvexFigure> {
    let gv = &g.vertices;
    match gv.len() {
        0 => None,
        1 => membership(f, &gv[0], Semantics::Closed).then(|| g.clone()),
        2 => {
            let (p, q) = (&gv[0], &gv[1]);
            let on_line = clip_affine(f, |r| cross(p, q, r))
                .and_then(|h| clip_affine(&h, |r| -cross(p, q, r)))?;
            clip_affine(&on_line, |r| dot(p, q, r)).and_then(|h| clip_affine(&h, |r| dot(q, p, r)))
        }
        k => {
            let mut acc = f.clone();
            for i in 0..k {
                acc = clip_left_of(&acc, &gv[i], &gv[(i + 1) % k])?;
            }
            Some(acc)
        }
    }
}
