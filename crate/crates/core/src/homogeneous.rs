//! Integer homogeneous coordinates for the arrangement hot path.
//!
//! A point is `(X, Y, W)` with `W > 0` standing for `(X/W, Y/W)`. Every line
//! in the arrangement has integer coefficients, so side tests reduce to the
//! sign of `aX + bY - cW` and never normalize a fraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::{ConvexFigure, Line2, Point2, Rational, Semantics};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct HPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl HPoint {
    /// Reduced form: `gcd(X, Y, W) = 1`, `W > 0`. Equal points compare equal.
    pub fn new(x: BigInt, y: BigInt, w: BigInt) -> HPoint {
        debug_assert!(!w.is_zero());
        let g = x.gcd(&y).gcd(&w);
        let (mut x, mut y, mut w) = if g.is_one() {
            (x, y, w)
        } else {
            (x / &g, y / &g, w / &g)
        };
        if w.is_negative() {
            x = -x;
            y = -y;
            w = -w;
        }
        HPoint { x, y, w }
    }

    pub fn from_point(p: &Point2) -> HPoint {
        let w = p.x.denom().lcm(p.y.denom());
        HPoint::new(
            p.x.numer() * (&w / p.x.denom()),
            p.y.numer() * (&w / p.y.denom()),
            w,
        )
    }

    pub fn to_point(&self) -> Point2 {
        Point2::new(
            Rational::new(self.x.clone(), self.w.clone()),
            Rational::new(self.y.clone(), self.w.clone()),
        )
    }

    /// `self + (num/den) * (dx, dy)` with `den > 0`.
    pub fn offset(&self, dx: &BigInt, dy: &BigInt, num: &BigInt, den: &BigInt) -> HPoint {
        let nw = num * &self.w;
        HPoint::new(
            &self.x * den + &nw * dx,
            &self.y * den + &nw * dy,
            &self.w * den,
        )
    }

    pub fn midpoint(&self, other: &HPoint) -> HPoint {
        HPoint::new(
            &self.x * &other.w + &other.x * &self.w,
            &self.y * &other.w + &other.y * &self.w,
            BigInt::from(2) * &self.w * &other.w,
        )
    }
}

/// Integer line `a·x + b·y = c`.
#[derive(Clone, Debug)]
pub(crate) struct HLine {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HLine {
    pub fn from_line(l: &Line2) -> HLine {
        // canonical lines already have integral coefficients
        HLine {
            a: l.a().to_integer(),
            b: l.b().to_integer(),
            c: l.c().to_integer(),
        }
    }

    /// `W · (a·x + b·y - c)`; same sign as the affine value.
    pub fn eval(&self, p: &HPoint) -> BigInt {
        &self.a * &p.x + &self.b * &p.y - &self.c * &p.w
    }

    /// `W · (a·y - b·x)`, the position along the line.
    pub fn parameter(&self, p: &HPoint) -> BigInt {
        &self.a * &p.y - &self.b * &p.x
    }

    pub fn intersection(&self, o: &HLine) -> Option<HPoint> {
        let det = &self.a * &o.b - &o.a * &self.b;
        if det.is_zero() {
            return None;
        }
        Some(HPoint::new(
            &self.c * &o.b - &o.c * &self.b,
            &self.a * &o.c - &o.a * &self.c,
            det,
        ))
    }
}

/// Compares `p/q` with `r/s` for positive `q`, `s`.
pub(crate) fn cmp_fractions(p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> std::cmp::Ordering {
    (p * s).cmp(&(r * q))
}

/// Orders points on `line` by their position along it.
pub(crate) fn cmp_along(line: &HLine, p: &HPoint, q: &HPoint) -> std::cmp::Ordering {
    cmp_fractions(&line.parameter(p), &p.w, &line.parameter(q), &q.w)
}

/// A figure prepared for repeated membership tests.
#[derive(Clone, Debug)]
pub(crate) enum FigureTest {
    Point(HPoint),
    /// Supporting line plus the endpoint parameters in increasing order.
    Segment {
        line: HLine,
        lo: (BigInt, BigInt),
        hi: (BigInt, BigInt),
    },
    /// Lines oriented so the figure is where every value is nonnegative.
    Polygon(Vec<HLine>),
}

impl FigureTest {
    pub fn new(f: &ConvexFigure) -> FigureTest {
        let v = f.vertices();
        match v.len() {
            1 => FigureTest::Point(HPoint::from_point(&v[0])),
            2 => {
                let line = HLine::from_line(&Line2::through(&v[0], &v[1]).expect("distinct"));
                let (p, q) = (HPoint::from_point(&v[0]), HPoint::from_point(&v[1]));
                let mut lo = (line.parameter(&p), p.w.clone());
                let mut hi = (line.parameter(&q), q.w.clone());
                if cmp_fractions(&lo.0, &lo.1, &hi.0, &hi.1).is_gt() {
                    std::mem::swap(&mut lo, &mut hi);
                }
                FigureTest::Segment { line, lo, hi }
            }
            k => {
                let lines = (0..k)
                    .map(|i| {
                        let l = Line2::through(&v[i], &v[(i + 1) % k]).expect("distinct");
                        let mut h = HLine::from_line(&l);
                        let probe = HPoint::from_point(&v[(i + 2) % k]);
                        if h.eval(&probe).is_negative() {
                            h = HLine {
                                a: -h.a,
                                b: -h.b,
                                c: -h.c,
                            };
                        }
                        h
                    })
                    .collect();
                FigureTest::Polygon(lines)
            }
        }
    }

    pub fn contains(&self, p: &HPoint, semantics: Semantics) -> bool {
        match (self, semantics) {
            (FigureTest::Polygon(lines), Semantics::Closed) => {
                lines.iter().all(|l| !l.eval(p).is_negative())
            }
            (FigureTest::Polygon(lines), Semantics::Open) => {
                lines.iter().all(|l| l.eval(p).is_positive())
            }
            (_, Semantics::Open) => false,
            (FigureTest::Point(q), Semantics::Closed) => q == p,
            (FigureTest::Segment { line, lo, hi }, Semantics::Closed) => {
                if !line.eval(p).is_zero() {
                    return false;
                }
                let t = line.parameter(p);
                cmp_fractions(&lo.0, &lo.1, &t, &p.w).is_le()
                    && cmp_fractions(&t, &p.w, &hi.0, &hi.1).is_le()
            }
        }
    }
}
