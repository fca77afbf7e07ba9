//! JSON documents for realizations and codes.
//!
//! Coordinates are exact rationals written as strings, `"p"` or `"p/q"`, so
//! a round trip never loses precision.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::code::{Code, Codeword, Realization};
use crate::error::Error;
use crate::geometry::{ConvexFigure, Point2, Rational, Semantics};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub label: usize,
    pub vertices: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationDocument {
    pub semantics: String,
    pub sets: Vec<SetDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub n: usize,
    pub codewords: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeEntry {
    pub codeword: Vec<usize>,
    pub point: [String; 2],
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("`{s}` is not a rational of the form p or p/q"));
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Lowest terms, `"p"` when integral.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn point_strings(p: &Point2) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

pub fn realization_to_document(r: &Realization) -> RealizationDocument {
    RealizationDocument {
        semantics: r.semantics().to_string(),
        sets: r
            .figures()
            .iter()
            .enumerate()
            .map(|(i, f)| SetDocument {
                label: i + 1,
                vertices: f.vertices().iter().map(point_strings).collect(),
            })
            .collect(),
    }
}

/// Validates labels and coordinates and builds the realization.
///
/// Parse problems map to [`Error::Parse`]; vertex lists that do not form a
/// convex figure map to [`Error::InvalidFigure`].
pub fn document_to_realization(doc: &RealizationDocument) -> Result<Realization, Error> {
    let semantics = Semantics::from_str(&doc.semantics)?;
    if doc.sets.is_empty() {
        return Err(Error::Parse("a realization needs at least one set".into()));
    }
    let mut figures = Vec::with_capacity(doc.sets.len());
    for (i, set) in doc.sets.iter().enumerate() {
        if set.label != i + 1 {
            return Err(Error::Parse(format!(
                "set labels must be 1..n in order; found {} at position {}",
                set.label,
                i + 1
            )));
        }
        let vertices = set
            .vertices
            .iter()
            .map(|[x, y]| Ok(Point2::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let figure = ConvexFigure::new(vertices).map_err(|e| match e {
            Error::InvalidFigure(msg) => Error::InvalidFigure(format!("set {}: {msg}", i + 1)),
            other => other,
        })?;
        figures.push(figure);
    }
    Realization::new(semantics, figures)
}

pub fn parse_realization(text: &str) -> Result<Realization, Error> {
    let doc: RealizationDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    document_to_realization(&doc)
}

/// Pretty JSON with a trailing newline.
pub fn write_realization(r: &Realization) -> String {
    to_json(&realization_to_document(r))
}

pub fn code_to_document(code: &Code) -> CodeDocument {
    CodeDocument {
        n: code.n(),
        codewords: code.iter().map(Codeword::labels).collect(),
    }
}

pub fn document_to_code(doc: &CodeDocument) -> Result<Code, Error> {
    let lists: Vec<&[usize]> = doc.codewords.iter().map(Vec::as_slice).collect();
    Code::from_label_lists(doc.n, &lists).map_err(|e| match e {
        Error::InvalidArgument(msg) => Error::Parse(msg),
        other => other,
    })
}

pub fn parse_code(text: &str) -> Result<Code, Error> {
    let doc: CodeDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    document_to_code(&doc)
}

pub fn write_code(code: &Code) -> String {
    to_json(&code_to_document(code))
}

pub fn representatives_to_entries(reps: &[(Codeword, Point2)]) -> Vec<RepresentativeEntry> {
    reps.iter()
        .map(|(w, p)| RepresentativeEntry {
            codeword: w.labels(),
            point: point_strings(p),
        })
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat};

    #[test]
    fn rationals_parse_and_print() {
        assert_eq!(parse_rational("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn realization_round_trip() {
        let tri = ConvexFigure::new(vec![
            Point2::new(rat(1, 3), int(0)),
            Point2::from_ints(4, 0),
            Point2::new(int(0), rat(7, 2)),
        ])
        .unwrap();
        let seg = ConvexFigure::segment(Point2::from_ints(0, 0), Point2::from_ints(1, 1));
        let r = Realization::open(vec![tri, seg]).unwrap();
        let text = write_realization(&r);
        assert_eq!(parse_realization(&text).unwrap(), r);
        assert!(text.contains("\"1/3\""));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn realization_errors_are_classified() {
        let bad_label = r#"{"semantics":"closed","sets":[{"label":2,"vertices":[["0","0"]]}]}"#;
        assert!(matches!(parse_realization(bad_label), Err(Error::Parse(_))));
        let bad_num = r#"{"semantics":"closed","sets":[{"label":1,"vertices":[["x","0"]]}]}"#;
        assert!(matches!(parse_realization(bad_num), Err(Error::Parse(_))));
        let bad_sem = r#"{"semantics":"ajar","sets":[{"label":1,"vertices":[["0","0"]]}]}"#;
        assert!(matches!(parse_realization(bad_sem), Err(Error::Parse(_))));
        let collinear = r#"{"semantics":"closed","sets":[{"label":1,
            "vertices":[["0","0"],["1","0"],["2","0"]]}]}"#;
        assert!(matches!(
            parse_realization(collinear),
            Err(Error::InvalidFigure(_))
        ));
        assert!(matches!(parse_realization("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn code_round_trip() {
        let code = Code::from_label_lists(2, &[&[], &[1], &[2, 1]]).unwrap();
        let text = write_code(&code);
        assert_eq!(parse_code(&text).unwrap(), code);
        let doc: CodeDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.codewords, vec![vec![], vec![1], vec![1, 2]]);
        assert!(matches!(
            parse_code(r#"{"n":1,"codewords":[[2]]}"#),
            Err(Error::Parse(_))
        ));
    }
}
