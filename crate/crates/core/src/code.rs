//! Convex codes of polygonal realizations.
//!
//! Every figure, closed or open, is a Boolean combination of halfplanes
//! bounded by the supporting lines of figure edges. Intersection patterns
//! are therefore constant on each face of the arrangement of those lines
//! (refined by figure vertices), and one point per face is enough to read
//! off the whole code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::{ConvexFigure, Line2, Point2, Rational, Semantics};
use crate::homogeneous::{cmp_along, cmp_fractions, FigureTest, HLine, HPoint};

/// Largest number of sets a realization may have.
pub const MAX_SETS: usize = 63;

/// A subset of the set indices, stored as a bitset.
///
/// Bit `i` is set index `i` (zero-based); labels shown to users are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword(u64);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    pub fn from_bits(bits: u64) -> Codeword {
        Codeword(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a codeword from 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Codeword {
        labels.iter().fold(Codeword::EMPTY, |w, &l| {
            assert!((1..=MAX_SETS).contains(&l), "label {l} out of range");
            w.with(l - 1)
        })
    }

    pub fn with(self, index: usize) -> Codeword {
        Codeword(self.0 | (1 << index))
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Codeword) -> bool {
        self.0 & !other.0 == 0
    }

    /// Zero-based member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// Highest index set, plus one.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically by labels.
impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A set of codewords over `n` sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Code {
    n: usize,
    words: BTreeSet<Codeword>,
}

impl Code {
    pub fn new(n: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Code, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a code needs at least one set".into(),
            ));
        }
        if n > MAX_SETS {
            return Err(Error::Oversize { n, cap: MAX_SETS });
        }
        let words: BTreeSet<Codeword> = words.into_iter().collect();
        if let Some(w) = words.iter().find(|w| w.span() > n) {
            return Err(Error::InvalidArgument(format!(
                "codeword {w} mentions a set beyond n = {n}"
            )));
        }
        Ok(Code { n, words })
    }

    /// Code from lists of 1-based labels.
    pub fn from_label_lists(n: usize, lists: &[&[usize]]) -> Result<Code, Error> {
        if let Some(l) = lists
            .iter()
            .flat_map(|l| l.iter())
            .find(|&&l| l == 0 || l > n)
        {
            return Err(Error::InvalidArgument(format!("label {l} outside 1..={n}")));
        }
        Code::new(n, lists.iter().map(|l| Codeword::from_labels(l)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: Codeword) -> bool {
        self.words.contains(&w)
    }

    pub fn iter(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().copied()
    }

    /// Subsets of `[n]` that are not codewords, in codeword order.
    pub fn non_words(&self) -> Vec<Codeword> {
        let mut out: Vec<Codeword> = (0..1u64 << self.n)
            .map(Codeword::from_bits)
            .filter(|w| !self.words.contains(w))
            .collect();
        out.sort();
        out
    }

    /// Codewords of `self` missing from `other`.
    pub fn difference(&self, other: &Code) -> Vec<Codeword> {
        self.words.difference(&other.words).copied().collect()
    }

    /// Restriction to the first `k` sets: `{ c ∩ [k] }`.
    pub fn project(&self, k: usize) -> BTreeSet<Codeword> {
        let mask = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        self.words
            .iter()
            .map(|w| Codeword::from_bits(w.bits() & mask))
            .collect()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// An ordered tuple of convex figures read under one semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Realization {
    semantics: Semantics,
    figures: Vec<ConvexFigure>,
}

impl Realization {
    pub fn new(semantics: Semantics, figures: Vec<ConvexFigure>) -> Result<Realization, Error> {
        if figures.is_empty() {
            return Err(Error::InvalidRealization("no figures".into()));
        }
        if figures.len() > MAX_SETS {
            return Err(Error::Oversize {
                n: figures.len(),
                cap: MAX_SETS,
            });
        }
        Ok(Realization { semantics, figures })
    }

    pub fn closed(figures: Vec<ConvexFigure>) -> Result<Realization, Error> {
        Realization::new(Semantics::Closed, figures)
    }

    pub fn open(figures: Vec<ConvexFigure>) -> Result<Realization, Error> {
        Realization::new(Semantics::Open, figures)
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn figures(&self) -> &[ConvexFigure] {
        &self.figures
    }

    pub fn figure(&self, index: usize) -> &ConvexFigure {
        &self.figures[index]
    }

    pub fn n(&self) -> usize {
        self.figures.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.figures.iter().map(ConvexFigure::len).sum()
    }

    pub fn with_semantics(&self, semantics: Semantics) -> Realization {
        Realization {
            semantics,
            figures: self.figures.clone(),
        }
    }

    pub fn with_figure(&self, index: usize, figure: ConvexFigure) -> Realization {
        let mut figures = self.figures.clone();
        figures[index] = figure;
        Realization {
            semantics: self.semantics,
            figures,
        }
    }

    pub fn into_figures(self) -> Vec<ConvexFigure> {
        self.figures
    }

    /// Distinct vertex locations over all figures, sorted.
    pub fn vertex_locations(&self) -> Vec<Point2> {
        let mut out: Vec<Point2> = self
            .figures
            .iter()
            .flat_map(|f| f.vertices().iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Largest absolute coordinate over all vertices.
    pub fn max_abs_coordinate(&self) -> Rational {
        self.figures
            .iter()
            .flat_map(|f| f.vertices())
            .map(Point2::max_abs_coordinate)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// A point outside every figure.
    pub fn far_point(&self) -> Point2 {
        let m = self.max_abs_coordinate() + Rational::one();
        Point2::new(m.clone(), m)
    }
}

/// Intersection pattern at `p`: set `i` is present iff `p` is in figure `i`.
pub fn pattern_at(r: &Realization, p: &Point2) -> Codeword {
    r.figures
        .iter()
        .enumerate()
        .filter(|(_, f)| f.contains(p, r.semantics))
        .fold(Codeword::EMPTY, |w, (i, _)| w.with(i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRep {
    pub point: Point2,
    /// 0 for vertices, 1 for points on exactly one line, 2 otherwise.
    pub dimension: u8,
}

/// Lines spanned by figure edges and one point per face.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub lines: Vec<Line2>,
    pub face_reps: Vec<FaceRep>,
}

impl Arrangement {
    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.face_reps.iter().map(|r| &r.point)
    }
}

/// Enumerates a representative point for every face of the refined
/// arrangement spanned by `r`.
///
/// Points on each line are broken at every pairwise intersection and at every
/// figure vertex lying on it. Each resulting open interval (including the two
/// unbounded rays) contributes its midpoint, and each midpoint is pushed off
/// the line along both normals by half the distance to the nearest other line.
pub fn build_arrangement(r: &Realization) -> Arrangement {
    let (lines, points) = arrangement_points(r);
    let mut face_reps: Vec<FaceRep> = points
        .into_iter()
        .map(|(p, dimension)| FaceRep {
            point: p.to_point(),
            dimension,
        })
        .collect();
    face_reps.sort_by(|a, b| a.point.cmp(&b.point).then(a.dimension.cmp(&b.dimension)));
    face_reps.dedup_by(|later, earlier| later.point == earlier.point);
    Arrangement { lines, face_reps }
}

/// The arrangement in integer homogeneous form, unsorted and possibly with
/// repeated points.
fn arrangement_points(r: &Realization) -> (Vec<Line2>, Vec<(HPoint, u8)>) {
    let mut lines: Vec<Line2> = r
        .figures
        .iter()
        .flat_map(ConvexFigure::supporting_lines)
        .collect();
    lines.sort();
    lines.dedup();
    let hlines: Vec<HLine> = lines.iter().map(HLine::from_line).collect();

    let mut reps: Vec<(HPoint, u8)> = Vec::new();
    let mut on_line: Vec<Vec<HPoint>> = vec![Vec::new(); lines.len()];
    for i in 0..hlines.len() {
        for j in i + 1..hlines.len() {
            if let Some(x) = hlines[i].intersection(&hlines[j]) {
                on_line[i].push(x.clone());
                on_line[j].push(x.clone());
                reps.push((x, 0));
            }
        }
    }

    let mut isolated: BTreeSet<HPoint> = BTreeSet::new();
    for v in r.vertex_locations() {
        let v = HPoint::from_point(&v);
        let mut hit = false;
        for (k, line) in hlines.iter().enumerate() {
            if line.eval(&v).is_zero() {
                on_line[k].push(v.clone());
                hit = true;
            }
        }
        if !hit {
            isolated.insert(v.clone());
        }
        reps.push((v, 0));
    }

    let one = BigInt::one();
    let minus_one = -BigInt::one();
    for (k, line) in hlines.iter().enumerate() {
        let pts = &mut on_line[k];
        pts.sort_by(|p, q| cmp_along(line, p, q));
        pts.dedup();
        let (dx, dy) = (-&line.b, line.a.clone());
        let mut cells = Vec::with_capacity(pts.len() + 1);
        cells.push(pts[0].offset(&dx, &dy, &minus_one, &one));
        for w in pts.windows(2) {
            cells.push(w[0].midpoint(&w[1]));
        }
        cells.push(pts[pts.len() - 1].offset(&dx, &dy, &one, &one));

        let rates: Vec<(usize, BigInt)> = hlines
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(j, other)| (j, &other.a * &line.a + &other.b * &line.b))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        for m in cells {
            let values: Vec<BigInt> = rates.iter().map(|(j, _)| hlines[*j].eval(&m)).collect();
            for sign in [1i8, -1] {
                // crossing of m + s·sign·ν with line j at s = -value / (sign·rate·W)
                let mut nearest: Option<(BigInt, BigInt)> = None;
                for ((_, rate), value) in rates.iter().zip(&values) {
                    let mut den = rate * &m.w;
                    let mut num = -value.clone();
                    if sign < 0 {
                        den = -den;
                    }
                    if den.is_negative() {
                        den = -den;
                        num = -num;
                    }
                    if !num.is_positive() {
                        continue;
                    }
                    let closer = nearest
                        .as_ref()
                        .is_none_or(|(n, d)| cmp_fractions(&num, &den, n, d).is_lt());
                    if closer {
                        nearest = Some((num, den));
                    }
                }
                let (num, mut den) = match nearest {
                    Some((n, d)) => (n, d * 2),
                    None => (one.clone(), one.clone()),
                };
                let (nx, ny) = if sign > 0 {
                    (line.a.clone(), line.b.clone())
                } else {
                    (-&line.a, -&line.b)
                };
                let mut q = m.offset(&nx, &ny, &num, &den);
                while isolated.contains(&q) {
                    den *= 2;
                    q = m.offset(&nx, &ny, &num, &den);
                }
                reps.push((q, 2));
            }
            reps.push((m, 1));
        }
    }

    reps.push((HPoint::from_point(&r.far_point()), 2));
    (lines, reps)
}

/// Membership tests for every figure of a realization.
struct Tester {
    semantics: Semantics,
    figures: Vec<FigureTest>,
}

impl Tester {
    fn new(r: &Realization) -> Tester {
        Tester {
            semantics: r.semantics,
            figures: r.figures.iter().map(FigureTest::new).collect(),
        }
    }

    fn pattern(&self, p: &HPoint) -> Codeword {
        self.figures
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(p, self.semantics))
            .fold(Codeword::EMPTY, |w, (i, _)| w.with(i))
    }
}

/// The convex code of `r`: all intersection patterns over the plane.
pub fn code_of(r: &Realization) -> Code {
    let (_, points) = arrangement_points(r);
    let tester = Tester::new(r);
    let words: BTreeSet<Codeword> = points.par_iter().map(|(p, _)| tester.pattern(p)).collect();
    Code { n: r.n(), words }
}

/// One point per codeword: the lexicographically least face representative
/// carrying that pattern.
pub fn representatives_of(r: &Realization) -> Vec<(Codeword, Point2)> {
    let (_, points) = arrangement_points(r);
    let tester = Tester::new(r);
    let tagged: Vec<(Codeword, Point2)> = points
        .par_iter()
        .map(|(p, _)| (tester.pattern(p), p.to_point()))
        .collect();
    let mut chosen: BTreeMap<Codeword, Point2> = BTreeMap::new();
    for (w, p) in tagged {
        match chosen.get_mut(&w) {
            Some(best) if *best <= p => {}
            Some(best) => *best = p,
            None => {
                chosen.insert(w, p);
            }
        }
    }
    chosen.into_iter().collect()
}

/// Patterns at a fixed list of points.
pub fn patterns_at(r: &Realization, points: &[Point2]) -> Vec<Codeword> {
    let tester = Tester::new(r);
    points
        .iter()
        .map(|p| tester.pattern(&HPoint::from_point(p)))
        .collect()
}
