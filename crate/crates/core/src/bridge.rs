//! From open realizations to closed ones and back.
//!
//! Closing an open realization can only add codewords whose sets meet in a
//! region with empty interior. Each such region lies on a line `L_σ`. Pinning
//! a small triangle per open codeword and a quadrilateral straddling every
//! `L_σ` inside each set it crosses lets the closed minimizer run on the
//! closure; taking interiors afterwards gives back the open code.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::code::{code_of, representatives_of, Code, Codeword, Realization};
use crate::decider::bounds::{representative_bound, vertex_bound};
use crate::error::Error;
use crate::geometry::{
    clip_halfplane, int, intersect_figures, rat, ConvexFigure, HalfplaneSide, Line2, Point2,
    Rational, Semantics,
};
use crate::shrink::{minimize, MinimizeConfig, MinimizeOutcome};

/// Halvings allowed while shrinking a triangle into its cell.
const TRIANGLE_HALVINGS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLine {
    pub sigma: Codeword,
    pub line: Line2,
}

/// Pinned points for minimizing the closure of an open realization.
#[derive(Clone, Debug)]
pub struct OpenReductionCertificate {
    /// Sorted, without repeats.
    pub points: Vec<Point2>,
    /// One triangle per open codeword.
    pub triangles: Vec<(Codeword, [Point2; 3])>,
    /// `(σ, i, [a, c, b, d])` with `a b` the diagonal on `L_σ`.
    pub quadrilaterals: Vec<(Codeword, usize, [Point2; 4])>,
    pub sigma_lines: Vec<SigmaLine>,
    /// `4(n + 1) 2^n`.
    pub point_bound: BigUint,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub closed: Realization,
    /// Sets that are empty when open but nonempty once closed.
    pub degenerate: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EmptyInteriorReport {
    /// `code(cl U) ∖ code(U)`.
    pub new_words: Vec<Codeword>,
    /// The closed intersection for each new word.
    pub intersections: Vec<(Codeword, Option<ConvexFigure>)>,
    /// New words whose intersection has nonempty interior.
    pub violations: Vec<Codeword>,
}

impl EmptyInteriorReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct OpenMinimizeOutcome {
    pub realization: Realization,
    pub closed: MinimizeOutcome,
    pub certificate: OpenReductionCertificate,
    /// `L_σ ∩ U'_i = L_σ ∩ U_i` for every σ-line and every set.
    pub sigma_lines_preserved: bool,
    /// `4 · 6^n (n + 1)!`.
    pub total_bound: BigUint,
    pub within_total_bound: bool,
}

fn require_open(u: &Realization) -> Result<(), Error> {
    if u.semantics() != Semantics::Open {
        return Err(Error::InvalidArgument(
            "expected an open realization".into(),
        ));
    }
    Ok(())
}

fn reject_degenerate(u: &Realization) -> Result<(), Error> {
    match u.figures().iter().position(ConvexFigure::is_degenerate) {
        Some(i) => Err(Error::DegenerateSet { index: i + 1 }),
        None => Ok(()),
    }
}

/// Same figures read as closed sets.
pub fn closure_realization(u: &Realization) -> Result<ClosureReport, Error> {
    require_open(u)?;
    let degenerate = (0..u.n())
        .filter(|&i| u.figure(i).is_degenerate())
        .collect();
    Ok(ClosureReport {
        closed: u.with_semantics(Semantics::Closed),
        degenerate,
    })
}

/// Closed intersection of the figures named by `w`; `None` when empty.
///
/// Panics on the empty word, whose intersection is the whole plane.
pub fn intersection_of(r: &Realization, w: Codeword) -> Option<ConvexFigure> {
    let mut idx = w.indices();
    let first = idx.next().expect("nonempty codeword");
    let mut acc = r.figure(first).clone();
    for i in idx {
        acc = intersect_figures(&acc, r.figure(i))?;
    }
    Some(acc)
}

/// Checks that every codeword gained by closing `u` comes from an
/// intersection with empty interior.
pub fn check_empty_interior_lemma(u: &Realization) -> Result<EmptyInteriorReport, Error> {
    let closure = closure_realization(u)?.closed;
    let new_words = code_of(&closure).difference(&code_of(u));
    let mut intersections = Vec::new();
    let mut violations = Vec::new();
    for &w in &new_words {
        if w.is_empty() {
            violations.push(w);
            intersections.push((w, None));
            continue;
        }
        let x = intersection_of(&closure, w);
        if x.as_ref().is_some_and(|f| !f.is_degenerate()) {
            violations.push(w);
        }
        intersections.push((w, x));
    }
    Ok(EmptyInteriorReport {
        new_words,
        intersections,
        violations,
    })
}

/// A line through a degenerate nonempty intersection. For a single point
/// the horizontal line through it is used.
fn sigma_line(x: &ConvexFigure) -> Line2 {
    let v = x.vertices();
    match v.len() {
        1 => Line2::new(int(0), int(1), v[0].y.clone()).expect("b = 1"),
        2 => Line2::through(&v[0], &v[1]).expect("distinct endpoints"),
        _ => unreachable!("full-dimensional intersection"),
    }
}

/// `L ∩ X` as a closed figure.
fn line_section(x: &ConvexFigure, line: &Line2) -> Option<ConvexFigure> {
    clip_halfplane(x, line, HalfplaneSide::Le)
        .and_then(|h| clip_halfplane(&h, line, HalfplaneSide::Ge))
}

/// The two sides of `X` cut by `L`, when `L` meets the interior of `X`.
fn split_by(x: &ConvexFigure, line: &Line2) -> Option<(ConvexFigure, ConvexFigure)> {
    let lo = clip_halfplane(x, line, HalfplaneSide::Le)?;
    let hi = clip_halfplane(x, line, HalfplaneSide::Ge)?;
    (!lo.is_degenerate() && !hi.is_degenerate()).then_some((lo, hi))
}

/// `L ∩ U` for the open set `U = int X`, as the endpoints of an open
/// interval; `None` when empty.
pub fn open_section(x: &ConvexFigure, line: &Line2) -> Option<(Point2, Point2)> {
    split_by(x, line)?;
    let seg = line_section(x, line)?;
    match seg.vertices() {
        [a, b] => Some((a.clone(), b.clone())),
        _ => None,
    }
}

/// Smallest triangle `p + δ·{(1,0), (-1,1), (-1,-1)}`, `δ = 1, 1/2, …`,
/// with all vertices in every `U_i`, `i ∈ c`.
fn triangle_around(u: &Realization, c: Codeword, p: &Point2) -> Option<[Point2; 3]> {
    let mut delta = Rational::from_integer(1.into());
    for _ in 0..TRIANGLE_HALVINGS {
        let tri = [
            Point2::new(&p.x + &delta, p.y.clone()),
            Point2::new(&p.x - &delta, &p.y + &delta),
            Point2::new(&p.x - &delta, &p.y - &delta),
        ];
        let inside = c
            .indices()
            .all(|i| tri.iter().all(|t| u.figure(i).contains(t, Semantics::Open)));
        if inside {
            return Some(tri);
        }
        delta *= rat(1, 2);
    }
    None
}

/// Builds the pinned point set for minimizing the closure of `u`.
///
/// Starts from closed-code representatives, adds a triangle per open
/// codeword around its representative, and a quadrilateral in `X_i` with
/// diagonal `L_σ ∩ X_i` whenever `L_σ` crosses `U_i`.
pub fn build_open_representatives(u: &Realization) -> Result<OpenReductionCertificate, Error> {
    require_open(u)?;
    reject_degenerate(u)?;
    let n = u.n();
    let closure = u.with_semantics(Semantics::Closed);
    let closed_code = code_of(&closure);
    let mut points: BTreeSet<Point2> = representatives_of(&closure)
        .into_iter()
        .map(|(_, p)| p)
        .collect();

    let mut triangles = Vec::new();
    for (c, p) in representatives_of(u) {
        let tri = triangle_around(u, c, &p).ok_or_else(|| {
            Error::Verification(format!("no triangle fits around the cell of {c}"))
        })?;
        points.extend(tri.iter().cloned());
        triangles.push((c, tri));
    }

    let sigmas: BTreeSet<Codeword> = closed_code
        .iter()
        .flat_map(|w| {
            let bits = w.bits();
            // every nonempty subset of w
            let mut subs = Vec::new();
            let mut s = bits;
            while s != 0 {
                subs.push(Codeword::from_bits(s));
                s = (s - 1) & bits;
            }
            subs
        })
        .collect();
    let mut sigma_lines: Vec<SigmaLine> = Vec::new();
    for sigma in sigmas {
        let Some(x) = intersection_of(&closure, sigma) else {
            continue;
        };
        if !x.is_degenerate() {
            continue;
        }
        let line = sigma_line(&x);
        if sigma_lines.iter().all(|s| s.line != line) {
            sigma_lines.push(SigmaLine { sigma, line });
        }
    }

    let mut quadrilaterals = Vec::new();
    for s in &sigma_lines {
        for i in 0..n {
            let x = closure.figure(i);
            let Some((lo, hi)) = split_by(x, &s.line) else {
                continue;
            };
            let seg = line_section(x, &s.line).expect("line crosses the interior");
            let [a, b] = seg.vertices() else {
                unreachable!("a line through the interior meets X in a segment")
            };
            let quad = [
                a.clone(),
                lo.vertex_centroid(),
                b.clone(),
                hi.vertex_centroid(),
            ];
            points.extend(quad.iter().cloned());
            quadrilaterals.push((s.sigma, i, quad));
        }
    }

    let points: Vec<Point2> = points.into_iter().collect();
    let point_bound = representative_bound(n, Semantics::Open);
    if BigUint::from(points.len()) > point_bound {
        return Err(Error::Verification(format!(
            "{} pinned points exceed the bound {point_bound}",
            points.len()
        )));
    }
    Ok(OpenReductionCertificate {
        points,
        triangles,
        quadrilaterals,
        sigma_lines,
        point_bound,
    })
}

/// Checks conditions (1) and (2) of the certificate directly: triangle
/// vertices in the open sets with the cell's representative inside, and
/// quadrilaterals in `X_i` with the right diagonal.
pub fn certificate_is_valid(u: &Realization, cert: &OpenReductionCertificate) -> bool {
    let closure = u.with_semantics(Semantics::Closed);
    let pinned: BTreeSet<&Point2> = cert.points.iter().collect();
    let triangles_ok = cert.triangles.iter().all(|(c, tri)| {
        let in_sets = c
            .indices()
            .all(|i| tri.iter().all(|t| u.figure(i).contains(t, Semantics::Open)));
        let hull = ConvexFigure::new(tri.to_vec());
        let witness = representatives_of(u)
            .into_iter()
            .find(|(w, _)| w == c)
            .map(|(_, p)| p);
        in_sets
            && tri.iter().all(|t| pinned.contains(t))
            && matches!((hull, witness), (Ok(h), Some(p)) if h.contains(&p, Semantics::Open))
    });
    let quads_ok = cert.quadrilaterals.iter().all(|(sigma, i, q)| {
        let x = closure.figure(*i);
        let Some(s) = cert.sigma_lines.iter().find(|s| s.sigma == *sigma) else {
            return false;
        };
        let diagonal = line_section(x, &s.line);
        let expected = ConvexFigure::segment(q[0].clone(), q[2].clone());
        q.iter()
            .all(|p| x.contains(p, Semantics::Closed) && pinned.contains(p))
            && diagonal.as_ref() == Some(&expected)
            && ConvexFigure::new(q.to_vec()).is_ok()
    });
    let lines_ok = cert.sigma_lines.iter().all(|s| {
        intersection_of(&closure, s.sigma)
            .is_some_and(|x| x.is_degenerate() && x.vertices().iter().all(|v| s.line.contains(v)))
    });
    triangles_ok && quads_ok && lines_ok && BigUint::from(cert.points.len()) <= cert.point_bound
}

/// Minimizes an open realization through its closure.
///
/// The closure is minimized against the certificate's pinned points, then
/// read as open again. The open code is re-verified before returning.
pub fn open_minimize(
    u: &Realization,
    config: &MinimizeConfig,
) -> Result<OpenMinimizeOutcome, Error> {
    let certificate = build_open_representatives(u)?;
    let closure = u.with_semantics(Semantics::Closed);
    let closed = minimize(&closure, &certificate.points, config)?;
    let reopened = closed.realization.with_semantics(Semantics::Open);
    let before: Code = code_of(u);
    let after = code_of(&reopened);
    if after != before {
        return Err(Error::Verification(format!(
            "open code changed from {before} to {after}"
        )));
    }
    let sigma_lines_preserved = certificate.sigma_lines.iter().all(|s| {
        (0..u.n()).all(|i| {
            open_section(u.figure(i), &s.line) == open_section(reopened.figure(i), &s.line)
        })
    });
    let total_bound = vertex_bound(u.n(), Semantics::Open)?.total;
    let within_total_bound = BigUint::from(reopened.total_vertices()) <= total_bound;
    Ok(OpenMinimizeOutcome {
        realization: reopened,
        closed,
        certificate,
        sigma_lines_preserved,
        total_bound,
        within_total_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn sq(x0: i64, y0: i64, x1: i64, y1: i64) -> ConvexFigure {
        ConvexFigure::rectangle(int(x0), int(y0), int(x1), int(y1))
    }

    fn word(labels: &[usize]) -> Codeword {
        Codeword::from_labels(labels)
    }

    #[test]
    fn closure_flips_semantics_and_flags_degenerate_sets() {
        let u = Realization::open(vec![sq(0, 0, 1, 1)]).unwrap();
        let c = closure_realization(&u).unwrap();
        assert_eq!(c.closed, Realization::closed(vec![sq(0, 0, 1, 1)]).unwrap());
        assert!(c.degenerate.is_empty());

        let seg = ConvexFigure::segment(p(0, 0), p(1, 0));
        let u = Realization::open(vec![sq(3, 3, 4, 4), seg]).unwrap();
        assert_eq!(closure_realization(&u).unwrap().degenerate, vec![1]);
        assert!(closure_realization(&u.with_semantics(Semantics::Closed)).is_err());
    }

    #[test]
    fn shared_edge_gains_only_the_flat_word() {
        let u = Realization::open(vec![sq(0, 0, 1, 1), sq(1, 0, 2, 1)]).unwrap();
        let report = check_empty_interior_lemma(&u).unwrap();
        assert_eq!(report.new_words, vec![word(&[1, 2])]);
        assert!(report.holds());
        let (_, x) = &report.intersections[0];
        assert_eq!(x.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn overlapping_squares_gain_nothing() {
        let u = Realization::open(vec![sq(0, 0, 2, 2), sq(1, 1, 3, 3)]).unwrap();
        let report = check_empty_interior_lemma(&u).unwrap();
        assert!(report.new_words.is_empty() && report.holds());
    }

    #[test]
    fn single_square_certificate() {
        let u = Realization::open(vec![sq(0, 0, 1, 1)]).unwrap();
        let cert = build_open_representatives(&u).unwrap();
        assert!(cert.sigma_lines.is_empty());
        assert!(cert.quadrilaterals.is_empty());
        assert_eq!(cert.triangles.len(), 2);
        assert!(cert.points.len() <= 16);
        assert_eq!(cert.point_bound, BigUint::from(16u32));
        assert!(certificate_is_valid(&u, &cert));
    }

    #[test]
    fn shared_edge_certificate() {
        let u = Realization::open(vec![sq(0, 0, 1, 1), sq(1, 0, 2, 1)]).unwrap();
        let cert = build_open_representatives(&u).unwrap();
        let x_eq_1 = Line2::new(int(1), int(0), int(1)).unwrap();
        assert_eq!(cert.sigma_lines.len(), 1);
        assert_eq!(cert.sigma_lines[0].line, x_eq_1);
        // x = 1 is on the boundary of both squares, so it crosses neither
        assert!(cert.quadrilaterals.is_empty());
        assert!(certificate_is_valid(&u, &cert));
    }

    #[test]
    fn crossing_line_gets_quadrilaterals() {
        // squares 1 and 2 touch along x = 2, which cuts through square 3
        let u = Realization::open(vec![sq(0, 0, 2, 2), sq(2, 0, 4, 2), sq(1, 1, 3, 5)]).unwrap();
        let cert = build_open_representatives(&u).unwrap();
        let x_eq_2 = Line2::new(int(1), int(0), int(2)).unwrap();
        assert!(cert.sigma_lines.iter().any(|s| s.line == x_eq_2));
        let crossing: Vec<usize> = cert
            .quadrilaterals
            .iter()
            .filter(|(s, _, _)| {
                cert.sigma_lines
                    .iter()
                    .any(|l| l.sigma == *s && l.line == x_eq_2)
            })
            .map(|(_, i, _)| *i)
            .collect();
        assert_eq!(crossing, vec![2]);
        assert!(certificate_is_valid(&u, &cert));
    }

    #[test]
    fn degenerate_members_are_rejected() {
        let seg = ConvexFigure::segment(p(0, 0), p(1, 0));
        let u = Realization::open(vec![sq(0, 0, 1, 1), seg]).unwrap();
        assert!(matches!(
            build_open_representatives(&u),
            Err(Error::DegenerateSet { index: 2 })
        ));
        assert!(matches!(
            open_minimize(&u, &MinimizeConfig::default()),
            Err(Error::DegenerateSet { index: 2 })
        ));
    }

    #[test]
    fn open_polygon_shrinks() {
        let f = ConvexFigure::inscribed(30, &p(0, 0), &int(50));
        let u = Realization::open(vec![f]).unwrap();
        let out = open_minimize(&u, &MinimizeConfig::default()).unwrap();
        assert!(out.realization.total_vertices() < 30);
        assert_eq!(code_of(&out.realization), code_of(&u));
        assert!(out.within_total_bound);
        assert!(out.sigma_lines_preserved);
    }

    #[test]
    fn shared_edge_open_minimize() {
        let u = Realization::open(vec![sq(0, 0, 1, 1), sq(1, 0, 2, 1)]).unwrap();
        let out = open_minimize(&u, &MinimizeConfig::default()).unwrap();
        assert_eq!(
            code_of(&out.realization),
            Code::from_label_lists(2, &[&[], &[1], &[2]]).unwrap()
        );
        assert!(out.sigma_lines_preserved);
    }

    #[test]
    fn open_triangle_is_a_fixed_point() {
        let t = ConvexFigure::new(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap();
        let u = Realization::open(vec![t]).unwrap();
        let out = open_minimize(&u, &MinimizeConfig::default()).unwrap();
        assert_eq!(out.realization, u);
    }
}
