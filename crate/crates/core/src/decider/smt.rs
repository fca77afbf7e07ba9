//! SMT-LIB 2 text for realizability sentences, and a reader for the subset
//! we emit.

use std::fmt::Write as _;

use super::sentence::{Cmp, Formula, Sentence, Term};
use crate::error::Error;

const INDENT: &str = "  ";

fn render_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Const(c) if *c < 0 => {
            let _ = write!(out, "(- {})", c.unsigned_abs());
        }
        Term::Const(c) => {
            let _ = write!(out, "{c}");
        }
        Term::Add(ts) | Term::Mul(ts) => {
            out.push_str(if matches!(t, Term::Add(_)) {
                "(+"
            } else {
                "(*"
            });
            for t in ts {
                out.push(' ');
                render_term(t, out);
            }
            out.push(')');
        }
    }
}

fn render_binders(vars: &[String], out: &mut String) {
    out.push('(');
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "({v} Real)");
    }
    out.push(')');
}

fn render_formula(f: &Formula, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
    match f {
        Formula::Atom(cmp, l, r) => {
            let _ = write!(out, "({} ", cmp.symbol());
            render_term(l, out);
            out.push(' ');
            render_term(r, out);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(not\n");
            render_formula(g, depth + 1, out);
            out.push(')');
        }
        Formula::And(gs) | Formula::Or(gs) => {
            out.push_str(if matches!(f, Formula::And(_)) {
                "(and"
            } else {
                "(or"
            });
            for g in gs {
                out.push('\n');
                render_formula(g, depth + 1, out);
            }
            out.push(')');
        }
        Formula::Implies(a, b) => {
            out.push_str("(=>\n");
            render_formula(a, depth + 1, out);
            out.push('\n');
            render_formula(b, depth + 1, out);
            out.push(')');
        }
        Formula::Exists(vars, g) | Formula::Forall(vars, g) => {
            out.push_str(if matches!(f, Formula::Exists(..)) {
                "(exists "
            } else {
                "(forall "
            });
            render_binders(vars, out);
            out.push('\n');
            render_formula(g, depth + 1, out);
            out.push(')');
        }
    }
}

/// Renders `s` as an SMT-LIB 2 script for quantified nonlinear real
/// arithmetic. The output is a pure function of `s`, LF-terminated.
pub fn render_smt(s: &Sentence) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "; planar realizability: n={} halfplanes={} semantics={}",
        s.n, s.halfplanes, s.semantics
    );
    let _ = writeln!(out, "; code: {}", s.code);
    out.push_str("(set-logic NRA)\n");
    out.push_str("(assert\n");
    render_formula(&s.body, 1, &mut out);
    out.push_str(")\n(check-sat)\n(exit)\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn read_sexps(tokens: &[String]) -> Result<Vec<Sexp>, Error> {
    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    for t in tokens {
        match t.as_str() {
            "(" => stack.push(Vec::new()),
            ")" => {
                let done = stack.pop().expect("stack never empty");
                stack
                    .last_mut()
                    .ok_or_else(|| Error::Parse("unbalanced `)`".into()))?
                    .push(Sexp::List(done));
            }
            _ => stack
                .last_mut()
                .expect("stack never empty")
                .push(Sexp::Atom(t.clone())),
        }
        if stack.is_empty() {
            return Err(Error::Parse("unbalanced `)`".into()));
        }
    }
    if stack.len() != 1 {
        return Err(Error::Parse("unbalanced `(`".into()));
    }
    Ok(stack.pop().expect("one frame"))
}

fn to_term(s: &Sexp) -> Result<Term, Error> {
    match s {
        Sexp::Atom(a) => Ok(match a.parse::<i64>() {
            Ok(v) => Term::Const(v),
            Err(_) => Term::Var(a.clone()),
        }),
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Atom(op), args)) => {
                let args = args.iter().map(to_term).collect::<Result<Vec<_>, _>>()?;
                match (op.as_str(), args.as_slice()) {
                    ("+", _) => Ok(Term::Add(args)),
                    ("*", _) => Ok(Term::Mul(args)),
                    ("-", [Term::Const(c)]) => Ok(Term::Const(-c)),
                    _ => Err(Error::Parse(format!("unsupported term operator `{op}`"))),
                }
            }
            _ => Err(Error::Parse("malformed term".into())),
        },
    }
}

fn to_binders(s: &Sexp) -> Result<Vec<String>, Error> {
    let Sexp::List(items) = s else {
        return Err(Error::Parse("expected binder list".into()));
    };
    items
        .iter()
        .map(|b| match b {
            Sexp::List(pair) => match pair.as_slice() {
                [Sexp::Atom(v), Sexp::Atom(sort)] if sort == "Real" => Ok(v.clone()),
                _ => Err(Error::Parse("expected `(name Real)`".into())),
            },
            _ => Err(Error::Parse("expected `(name Real)`".into())),
        })
        .collect()
}

fn to_formula(s: &Sexp) -> Result<Formula, Error> {
    let Sexp::List(items) = s else {
        return Err(Error::Parse("expected a formula".into()));
    };
    let Some((Sexp::Atom(op), args)) = items.split_first() else {
        return Err(Error::Parse("malformed formula".into()));
    };
    let formulas = |xs: &[Sexp]| xs.iter().map(to_formula).collect::<Result<Vec<_>, _>>();
    let cmp = match op.as_str() {
        "<" => Some(Cmp::Lt),
        "<=" => Some(Cmp::Le),
        ">=" => Some(Cmp::Ge),
        ">" => Some(Cmp::Gt),
        _ => None,
    };
    if let Some(cmp) = cmp {
        return match args {
            [l, r] => Ok(Formula::Atom(cmp, to_term(l)?, to_term(r)?)),
            _ => Err(Error::Parse(format!("`{op}` takes two arguments"))),
        };
    }
    match (op.as_str(), args) {
        ("and", _) => Ok(Formula::And(formulas(args)?)),
        ("or", _) => Ok(Formula::Or(formulas(args)?)),
        ("not", [g]) => Ok(Formula::Not(Box::new(to_formula(g)?))),
        ("=>", [a, b]) => Ok(Formula::Implies(
            Box::new(to_formula(a)?),
            Box::new(to_formula(b)?),
        )),
        ("exists", [vars, body]) => Ok(Formula::Exists(
            to_binders(vars)?,
            Box::new(to_formula(body)?),
        )),
        ("forall", [vars, body]) => Ok(Formula::Forall(
            to_binders(vars)?,
            Box::new(to_formula(body)?),
        )),
        _ => Err(Error::Parse(format!("unsupported formula `{op}`"))),
    }
}

/// Reads back the asserted formula from text produced by [`render_smt`].
pub fn parse_smt(text: &str) -> Result<Formula, Error> {
    let commands = read_sexps(&tokenize(text))?;
    let mut asserted = None;
    for c in &commands {
        if let Sexp::List(items) = c {
            if let [Sexp::Atom(head), body] = items.as_slice() {
                if head == "assert" {
                    if asserted.is_some() {
                        return Err(Error::Parse("more than one assertion".into()));
                    }
                    asserted = Some(to_formula(body)?);
                }
            }
        }
    }
    asserted.ok_or_else(|| Error::Parse("no assertion found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Code;
    use crate::decider::sentence::emit_sentence;
    use crate::geometry::Semantics;

    #[test]
    fn round_trips_through_parser() {
        let code = Code::from_label_lists(2, &[&[], &[1], &[2], &[1, 2]]).unwrap();
        for semantics in [Semantics::Closed, Semantics::Open] {
            let s = emit_sentence(&code, 3, semantics).unwrap();
            let text = render_smt(&s);
            assert_eq!(parse_smt(&text).unwrap(), s.body);
        }
    }

    #[test]
    fn text_shape() {
        let code = Code::from_label_lists(1, &[&[], &[1]]).unwrap();
        let s = emit_sentence(&code, 3, Semantics::Closed).unwrap();
        let text = render_smt(&s);
        assert!(text.contains("(set-logic NRA)"));
        assert!(text.ends_with("(check-sat)\n(exit)\n"));
        assert!(!text.contains('\r'));
        assert_eq!(text.matches(" Real)").count(), 9 + 2 * 2 + 1 + 2);
        assert!(text.contains("(<= (+ (* a_1_1 x) (* b_1_1 y)) c_1_1)"));
        assert_eq!(text, render_smt(&s));
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(parse_smt("(assert (and").is_err());
        assert!(parse_smt("(check-sat)").is_err());
        assert!(parse_smt("(assert (frobnicate x))").is_err());
        let neg = parse_smt("(assert (< (- 3) x))").unwrap();
        assert_eq!(
            neg,
            Formula::Atom(Cmp::Lt, Term::Const(-3), Term::Var("x".into()))
        );
    }
}
