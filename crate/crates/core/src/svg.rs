//! Static SVG pictures of realizations.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::code::{Codeword, Realization};
use crate::geometry::{int, rat, Point2, Rational, Semantics};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const DIGITS: u32 = 4;

/// Fixed-point decimal with `digits` places, rounded half away from zero.
pub fn decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.numer() * &scale;
    let den = r.denom();
    let (q, rem) = scaled.abs().div_rem(den);
    let q = if rem * 2 >= *den { q + 1 } else { q };
    let negative = scaled.is_negative() && !q.is_zero();
    let digits_str = format!("{:0>width$}", q.to_string(), width = digits as usize + 1);
    let (int_part, frac) = digits_str.split_at(digits_str.len() - digits as usize);
    let frac = frac.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

fn coord(p: &Point2) -> String {
    // y grows downward in SVG
    format!("{} {}", decimal(&p.x, DIGITS), decimal(&-&p.y, DIGITS))
}

/// Renders `r` with one translucent region per set, labeled by index, and
/// optional representative points drawn as dots.
///
/// The view box fits the sets only, so far representatives such as the one
/// for the empty word fall outside the picture.
///
/// The output depends only on the inputs.
pub fn render_svg(r: &Realization, reps: Option<&[(Codeword, Point2)]>) -> String {
    let pts: Vec<&Point2> = r.figures().iter().flat_map(|f| f.vertices()).collect();
    let min_x = pts
        .iter()
        .map(|p| &p.x)
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let max_x = pts
        .iter()
        .map(|p| &p.x)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let min_y = pts
        .iter()
        .map(|p| &p.y)
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let max_y = pts
        .iter()
        .map(|p| &p.y)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let mut size = std::cmp::max(&max_x - &min_x, &max_y - &min_y);
    if size.is_zero() {
        size = Rational::one();
    }
    let margin = &size * rat(1, 10);
    let x0 = &min_x - &margin;
    let y0 = -(&max_y + &margin);
    let w = &max_x - &min_x + int(2) * &margin;
    let h = &max_y - &min_y + int(2) * &margin;
    let dot = &size * rat(1, 100);
    let font = &size * rat(1, 20);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        decimal(&x0, DIGITS),
        decimal(&y0, DIGITS),
        decimal(&w, DIGITS),
        decimal(&h, DIGITS)
    );
    let dash = match r.semantics() {
        Semantics::Closed => "",
        Semantics::Open => r#" stroke-dasharray="4 3""#,
    };
    for (i, f) in r.figures().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let v = f.vertices();
        if v.len() == 1 {
            let _ = writeln!(
                out,
                r#"  <circle class="set" cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
                decimal(&v[0].x, DIGITS),
                decimal(&-&v[0].y, DIGITS),
                decimal(&dot, DIGITS)
            );
        } else {
            let mut d = format!("M {}", coord(&v[0]));
            for p in &v[1..] {
                let _ = write!(d, " L {}", coord(p));
            }
            let fill = if v.len() >= 3 {
                d.push_str(" Z");
                format!(r#"fill="{color}" fill-opacity="0.3""#)
            } else {
                r#"fill="none""#.to_string()
            };
            let _ = writeln!(
                out,
                r#"  <path class="set" d="{d}" {fill} stroke="{color}" stroke-width="2" vector-effect="non-scaling-stroke"{dash}/>"#
            );
        }
        let c = f.vertex_centroid();
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="{}" fill="{color}" text-anchor="middle">{}</text>"#,
            decimal(&c.x, DIGITS),
            decimal(&-&c.y, DIGITS),
            decimal(&font, DIGITS),
            i + 1
        );
    }
    for (w, p) in reps.unwrap_or(&[]) {
        let _ = writeln!(
            out,
            r#"  <circle class="rep" cx="{}" cy="{}" r="{}" fill="black"><title>{w}</title></circle>"#,
            decimal(&p.x, DIGITS),
            decimal(&-&p.y, DIGITS),
            decimal(&dot, DIGITS)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::representatives_of;
    use crate::geometry::ConvexFigure;

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&int(-7), 4), "-7");
        assert_eq!(decimal(&rat(-1, 100000), 4), "0");
        assert_eq!(decimal(&rat(5, 2), 4), "2.5");
    }

    #[test]
    fn triangle_has_one_path() {
        let t = ConvexFigure::new(vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(3, 0),
            Point2::from_ints(0, 3),
        ])
        .unwrap();
        let r = Realization::closed(vec![t]).unwrap();
        let svg = render_svg(&r, None);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"viewBox="-0.3 -3.3 3.6 3.6""#));
        assert_eq!(svg, render_svg(&r, None));
    }

    #[test]
    fn reps_overlay_has_one_dot_per_codeword() {
        let a = ConvexFigure::rectangle(int(0), int(0), int(2), int(2));
        let b = ConvexFigure::rectangle(int(1), int(1), int(3), int(3));
        let r = Realization::closed(vec![a, b]).unwrap();
        let reps = representatives_of(&r);
        let svg = render_svg(&r, Some(&reps));
        assert_eq!(svg.matches(r#"class="rep""#).count(), 4);
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains(r#"viewBox="-0.3 -3.3 3.6 3.6""#));
    }
}
