//! Oracles shared by the integration tests. They avoid the library's own
//! predicates wherever that is practical.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use convcode_core::geometry::rat;
use convcode_core::{
    convex_hull, Code, Codeword, ConvexFigure, Point2, Rational, Realization, Semantics,
};

/// Denominator of the finest sampling grid.
pub const FINE: i64 = 1024;

/// Random polygon (or lower-dimensional hull) with vertices on the quarter
/// grid inside `[0, 16]²`.
pub fn random_figure<R: Rng>(
    rng: &mut R,
    semantics: Semantics,
    max_vertices: usize,
) -> ConvexFigure {
    let min = match semantics {
        Semantics::Closed => 1,
        Semantics::Open => 3,
    };
    loop {
        let k = rng.gen_range(min..=max_vertices);
        let pts: Vec<Point2> = (0..k)
            .map(|_| Point2::new(rat(rng.gen_range(0..=64), 4), rat(rng.gen_range(0..=64), 4)))
            .collect();
        let hull = convex_hull(&pts).unwrap();
        if semantics == Semantics::Closed || !hull.is_degenerate() {
            return hull;
        }
    }
}

pub fn random_realization<R: Rng>(
    rng: &mut R,
    n: usize,
    semantics: Semantics,
    max_vertices: usize,
) -> Realization {
    let figures = (0..n)
        .map(|_| random_figure(rng, semantics, max_vertices))
        .collect();
    Realization::new(semantics, figures).unwrap()
}

/// Random polygon with at least three vertices, closed semantics.
pub fn random_polygon<R: Rng>(rng: &mut R, max_vertices: usize) -> ConvexFigure {
    random_figure(rng, Semantics::Open, max_vertices)
}

/// Membership on a common integer scale.
pub struct IntOracle {
    scale: i128,
    semantics: Semantics,
    figures: Vec<Vec<(i128, i128)>>,
    lo: (i128, i128),
    hi: (i128, i128),
}

fn scaled(r: &Rational, scale: &BigInt) -> i128 {
    let v = r * Rational::from_integer(scale.clone());
    assert!(v.is_integer());
    v.to_integer().to_i128().expect("coordinate fits")
}

impl IntOracle {
    pub fn new(r: &Realization) -> IntOracle {
        IntOracle::try_new(r).expect("oracle scale too large")
    }

    /// `None` when the common denominator is too large for `i128` products.
    pub fn try_new(r: &Realization) -> Option<IntOracle> {
        let mut scale = BigInt::from(FINE);
        for f in r.figures() {
            for p in f.vertices() {
                scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
            }
        }
        if scale.bits() >= 40 {
            return None;
        }
        let figures: Vec<Vec<(i128, i128)>> = r
            .figures()
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|p| (scaled(&p.x, &scale), scaled(&p.y, &scale)))
                    .collect()
            })
            .collect();
        let all = figures.iter().flatten();
        let lo = all
            .clone()
            .fold((i128::MAX, i128::MAX), |a, p| (a.0.min(p.0), a.1.min(p.1)));
        let hi = all.fold((i128::MIN, i128::MIN), |a, p| (a.0.max(p.0), a.1.max(p.1)));
        Some(IntOracle {
            scale: scale.to_i128().unwrap(),
            semantics: r.semantics(),
            figures,
            lo,
            hi,
        })
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn contains(&self, index: usize, p: (i128, i128)) -> bool {
        let v = &self.figures[index];
        let open = self.semantics == Semantics::Open;
        let cross = |a: (i128, i128), b: (i128, i128)| {
            (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0)
        };
        match v.len() {
            1 => !open && v[0] == p,
            2 => {
                !open
                    && cross(v[0], v[1]) == 0
                    && p.0 >= v[0].0.min(v[1].0)
                    && p.0 <= v[0].0.max(v[1].0)
                    && p.1 >= v[0].1.min(v[1].1)
                    && p.1 <= v[0].1.max(v[1].1)
            }
            k => {
                let signs: Vec<i128> = (0..k)
                    .map(|i| cross(v[i], v[(i + 1) % k]).signum())
                    .collect();
                if open {
                    signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0)
                } else {
                    signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
                }
            }
        }
    }

    pub fn pattern(&self, p: (i128, i128)) -> Codeword {
        let bits = (0..self.figures.len())
            .filter(|&i| self.contains(i, p))
            .fold(0u64, |b, i| b | (1 << i));
        Codeword::from_bits(bits)
    }

    pub fn pattern_at(&self, p: &Point2) -> Codeword {
        let s = BigInt::from(self.scale);
        let x = p.x.clone() * Rational::from_integer(s.clone());
        let y = p.y.clone() * Rational::from_integer(s);
        if !x.is_integer() || !y.is_integer() {
            // off the integer lattice: fall back to exact rationals
            return exact_pattern(&self.figures, self.scale, self.semantics, p);
        }
        self.pattern((
            x.to_integer().to_i128().unwrap(),
            y.to_integer().to_i128().unwrap(),
        ))
    }

    /// Sampled point in the bounding box plus one unit of margin. A quarter
    /// of the samples use coarse denominators to land on edges and vertices.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (i128, i128) {
        let step = match rng.gen_range(0..8) {
            0 => self.scale / 4,
            1 => self.scale / 8,
            _ => 1,
        };
        let lo = (
            (self.lo.0 - self.scale) / step,
            (self.lo.1 - self.scale) / step,
        );
        let hi = (
            (self.hi.0 + self.scale) / step,
            (self.hi.1 + self.scale) / step,
        );
        (
            rng.gen_range(lo.0..=hi.0) * step,
            rng.gen_range(lo.1..=hi.1) * step,
        )
    }

    /// A point outside every set.
    pub fn far(&self) -> (i128, i128) {
        (self.hi.0 + 7 * self.scale, self.hi.1 + 3 * self.scale)
    }
}

fn exact_pattern(
    figures: &[Vec<(i128, i128)>],
    scale: i128,
    semantics: Semantics,
    p: &Point2,
) -> Codeword {
    let s = Rational::from_integer(BigInt::from(scale));
    let px = &p.x * &s;
    let py = &p.y * &s;
    let open = semantics == Semantics::Open;
    let mut bits = 0u64;
    for (i, v) in figures.iter().enumerate() {
        let r = |t: i128| Rational::from_integer(BigInt::from(t));
        let cross = |a: (i128, i128), b: (i128, i128)| {
            (r(b.0) - r(a.0)) * (&py - r(a.1)) - (r(b.1) - r(a.1)) * (&px - r(a.0))
        };
        let inside = match v.len() {
            1 => !open && r(v[0].0) == px && r(v[0].1) == py,
            2 => {
                !open
                    && cross(v[0], v[1]).is_zero()
                    && px >= r(v[0].0.min(v[1].0))
                    && px <= r(v[0].0.max(v[1].0))
                    && py >= r(v[0].1.min(v[1].1))
                    && py <= r(v[0].1.max(v[1].1))
            }
            k => {
                let signs: Vec<i8> = (0..k)
                    .map(|j| {
                        let c = cross(v[j], v[(j + 1) % k]);
                        if c.is_positive() {
                            1
                        } else if c.is_negative() {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect();
                if open {
                    signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0)
                } else {
                    signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
                }
            }
        };
        if inside {
            bits |= 1 << i;
        }
    }
    Codeword::from_bits(bits)
}

/// Patterns seen at `samples` random points and the far point that are
/// missing from `code`.
pub fn sampled_violations<R: Rng>(
    r: &Realization,
    code: &Code,
    samples: usize,
    rng: &mut R,
) -> Vec<Codeword> {
    let oracle = IntOracle::new(r);
    let mut bad = Vec::new();
    let far = oracle.pattern(oracle.far());
    if !code.contains(far) {
        bad.push(far);
    }
    for _ in 0..samples {
        let w = oracle.pattern(oracle.sample(rng));
        if !code.contains(w) && !bad.contains(&w) {
            bad.push(w);
        }
    }
    bad
}

/// Keeps the part of the polygon `poly` where `f ≥ 0`, for affine `f`.
fn clip(poly: &[Point2], f: &dyn Fn(&Point2) -> Rational) -> Vec<Point2> {
    let k = poly.len();
    let mut out = Vec::new();
    for i in 0..k {
        let a = &poly[i];
        let b = &poly[(i + 1) % k];
        let fa = f(a);
        let fb = f(b);
        if !fa.is_negative() {
            out.push(a.clone());
        }
        if (fa.is_positive() && fb.is_negative()) || (fa.is_negative() && fb.is_positive()) {
            let t = &fa / (&fa - &fb);
            out.push(Point2::new(
                &a.x + (&b.x - &a.x) * &t,
                &a.y + (&b.y - &a.y) * &t,
            ));
        }
    }
    out
}

fn cross3(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn dot3(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a.x - &o.x) * (&b.x - &o.x) + (&a.y - &o.y) * (&b.y - &o.y)
}

/// `(C ∖ B) ∪ cone_p(∂B ∩ C)` for a polygon `C`, a boundary point `p` and a
/// convex neighborhood `B` of `p` whose boundary meets `C` in one arc.
///
/// The arc spans a convex angle at `p`, and the union is `C` cut down to
/// that angle. Returns `None` when `∂B` misses `C`.
pub fn cone_construction(c: &ConvexFigure, p: &Point2, b: &ConvexFigure) -> Option<ConvexFigure> {
    let mut arc: Vec<Point2> = Vec::new();
    let bv = b.vertices();
    for i in 0..bv.len() {
        let (s, t) = (&bv[i], &bv[(i + 1) % bv.len()]);
        // the chord of C along this edge, by clipping the segment to C
        let mut seg = vec![s.clone(), t.clone()];
        let cv = c.vertices();
        let ccw = cv.len() >= 3;
        assert!(ccw, "C must be a polygon");
        for j in 0..cv.len() {
            let (u, w) = (cv[j].clone(), cv[(j + 1) % cv.len()].clone());
            seg = clip(&seg, &|q: &Point2| cross3(&u, &w, q));
            if seg.is_empty() {
                break;
            }
        }
        arc.extend(seg);
    }
    if arc.is_empty() {
        return None;
    }
    let e1 = arc
        .iter()
        .find(|e| arc.iter().all(|q| !cross3(p, e, q).is_negative()))?
        .clone();
    let e2 = arc
        .iter()
        .find(|e| arc.iter().all(|q| !cross3(p, e, q).is_positive()))?
        .clone();
    let mut poly: Vec<Point2> = c.vertices().to_vec();
    poly = clip(&poly, &|q: &Point2| cross3(p, &e1, q));
    poly = clip(&poly, &|q: &Point2| -cross3(p, &e2, q));
    if arc.iter().all(|q| cross3(p, &e1, q).is_zero()) {
        // every arc point on one ray: the union is a segment
        poly = clip(&poly, &|q: &Point2| -cross3(p, &e1, q));
        poly = clip(&poly, &|q: &Point2| dot3(p, &e1, q));
    }
    convex_hull(&poly)
}

/// Random `(C, p, B)` with `p` on the boundary of the polygon `C` and inside
/// the polygon `B`.
pub fn random_triple<R: Rng>(rng: &mut R) -> (ConvexFigure, Point2, ConvexFigure) {
    let c = random_polygon(rng, 8);
    let v = c.vertices();
    let i = rng.gen_range(0..v.len());
    let t = rat(rng.gen_range(0..8), 8);
    let p = v[i].lerp(&v[(i + 1) % v.len()], &t);
    loop {
        let k = rng.gen_range(3..=6);
        let pts: Vec<Point2> = (0..k)
            .map(|_| {
                let dx = rat(rng.gen_range(-24..=24), 4);
                let dy = rat(rng.gen_range(-24..=24), 4);
                Point2::new(&p.x + dx, &p.y + dy)
            })
            .collect();
        let b = convex_hull(&pts).unwrap();
        if b.len() >= 3 && b.contains(&p, Semantics::Open) {
            return (c, p, b);
        }
    }
}

/// Section of a closed polygon by the line `a·x + b·y = c`, as its extreme
/// points.
pub fn closed_section(
    f: &ConvexFigure,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Option<(Point2, Point2)> {
    let g = |q: &Point2| a * &q.x + b * &q.y - c;
    let mut poly = f.vertices().to_vec();
    poly = clip(&poly, &|q: &Point2| g(q));
    poly = clip(&poly, &|q: &Point2| -g(q));
    let lo = poly.iter().min()?.clone();
    let hi = poly.iter().max()?.clone();
    Some((lo, hi))
}

/// Section of the interior of a polygon by a line: the open interval between
/// the closed section's endpoints when the line crosses the interior.
pub fn open_section(
    f: &ConvexFigure,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Option<(Point2, Point2)> {
    let (s, t) = closed_section(f, a, b, c)?;
    if s == t {
        return None;
    }
    let m = s.midpoint(&t);
    let v = f.vertices();
    let k = v.len();
    let signs: Vec<Rational> = (0..k).map(|i| cross3(&v[i], &v[(i + 1) % k], &m)).collect();
    let strict = signs.iter().all(|x| x.is_positive()) || signs.iter().all(|x| x.is_negative());
    strict.then_some((s, t))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}
