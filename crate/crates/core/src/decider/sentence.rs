//! The realizability sentence over the ordered field of reals.
//!
//! Each set `i` is the intersection of `N` halfplanes
//! `a_i_j·x + b_i_j·y ≤ c_i_j` (strict for open semantics). With
//! `Ψ_i(x, y)` the membership test for set `i`, the code `C` has a
//! realization by such sets iff
//!
//! ```text
//! ∃ a, b, c .  ⋀_i Γ_i  ∧  ⋀_{S ∈ C} Φ(S)  ∧  ⋀_{S ∉ C} ¬Φ(S)
//! Φ(S) = ∃ x, y . ⋀_{i ∈ S} Ψ_i(x, y) ∧ ⋀_{i ∉ S} ¬Ψ_i(x, y)
//! Γ_i  = ∃ r ∀ x, y . x² + y² ≤ r ∨ ¬Ψ_i(x, y)
//! ```
//!
//! `Γ_i` says set `i` is bounded. Both `x` and `y` are universally bound in
//! it; the disjunction is the implication `x² + y² > r ⇒ ¬Ψ_i` written with
//! a non-strict atom.

use crate::code::{Code, Codeword};
use crate::error::Error;
use crate::geometry::Semantics;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(i64),
    Add(Vec<Term>),
    Mul(Vec<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Ge,
    Gt,
}

impl Cmp {
    pub fn is_strict(self) -> bool {
        matches!(self, Cmp::Lt | Cmp::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Cmp, Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

impl Formula {
    fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Visits every atom.
    pub fn atoms(&self) -> Vec<(Cmp, &Term, &Term)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<(Cmp, &'a Term, &'a Term)>) {
        match self {
            Formula::Atom(c, l, r) => out.push((*c, l, r)),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.collect_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub n: usize,
    /// Halfplanes per set.
    pub halfplanes: usize,
    pub code: Code,
    pub semantics: Semantics,
    pub body: Formula,
}

/// Structural counts read back off a sentence body.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SentenceCounts {
    pub coefficient_vars: usize,
    pub gamma: usize,
    pub phi: usize,
    pub negated_phi: usize,
    pub psi_atoms: usize,
    pub strict_psi_atoms: usize,
}

pub fn coefficient_name(kind: char, set: usize, halfplane: usize) -> String {
    format!("{kind}_{set}_{halfplane}")
}

fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

/// `Ψ_i(x, y)` for the 1-based set label `set`.
fn psi(set: usize, halfplanes: usize, semantics: Semantics) -> Formula {
    let cmp = match semantics {
        Semantics::Closed => Cmp::Le,
        Semantics::Open => Cmp::Lt,
    };
    Formula::And(
        (1..=halfplanes)
            .map(|j| {
                let lhs = Term::Add(vec![
                    Term::Mul(vec![Term::Var(coefficient_name('a', set, j)), var("x")]),
                    Term::Mul(vec![Term::Var(coefficient_name('b', set, j)), var("y")]),
                ]);
                Formula::Atom(cmp, lhs, Term::Var(coefficient_name('c', set, j)))
            })
            .collect(),
    )
}

fn phi(word: Codeword, n: usize, halfplanes: usize, semantics: Semantics) -> Formula {
    let parts = (0..n)
        .map(|i| {
            let p = psi(i + 1, halfplanes, semantics);
            if word.contains(i) {
                p
            } else {
                Formula::not(p)
            }
        })
        .collect();
    Formula::Exists(vec!["x".into(), "y".into()], Box::new(Formula::And(parts)))
}

fn gamma(set: usize, halfplanes: usize, semantics: Semantics) -> Formula {
    let radius = Formula::Atom(
        Cmp::Le,
        Term::Add(vec![
            Term::Mul(vec![var("x"), var("x")]),
            Term::Mul(vec![var("y"), var("y")]),
        ]),
        var("r"),
    );
    Formula::Exists(
        vec!["r".into()],
        Box::new(Formula::Forall(
            vec!["x".into(), "y".into()],
            Box::new(Formula::Or(vec![
                radius,
                Formula::not(psi(set, halfplanes, semantics)),
            ])),
        )),
    )
}

/// Builds the sentence asserting that `code` is realized by `n` sets, each
/// an intersection of `halfplanes` halfplanes.
///
/// Sets with fewer edges are covered by repeating a halfplane.
pub fn emit_sentence(
    code: &Code,
    halfplanes: usize,
    semantics: Semantics,
) -> Result<Sentence, Error> {
    if !code.contains(Codeword::EMPTY) {
        return Err(Error::MissingEmptyWord);
    }
    if halfplanes < 3 {
        return Err(Error::InvalidHalfplaneCount(halfplanes));
    }
    let n = code.n();
    let mut vars = Vec::with_capacity(3 * n * halfplanes);
    for i in 1..=n {
        for j in 1..=halfplanes {
            for kind in ['a', 'b', 'c'] {
                vars.push(coefficient_name(kind, i, j));
            }
        }
    }
    let mut conjuncts: Vec<Formula> = (1..=n).map(|i| gamma(i, halfplanes, semantics)).collect();
    conjuncts.extend(code.iter().map(|w| phi(w, n, halfplanes, semantics)));
    conjuncts.extend(
        code.non_words()
            .into_iter()
            .map(|w| Formula::not(phi(w, n, halfplanes, semantics))),
    );
    Ok(Sentence {
        n,
        halfplanes,
        code: code.clone(),
        semantics,
        body: Formula::Exists(vars, Box::new(Formula::And(conjuncts))),
    })
}

fn is_psi_atom(lhs: &Term) -> bool {
    match lhs {
        Term::Add(parts) => parts.iter().any(|p| match p {
            Term::Mul(fs) => fs
                .first()
                .is_some_and(|f| matches!(f, Term::Var(v) if v.starts_with("a_"))),
            _ => false,
        }),
        _ => false,
    }
}

/// Counts read off a body shaped like [`emit_sentence`]'s output.
pub fn count_structure(body: &Formula) -> SentenceCounts {
    let mut counts = SentenceCounts::default();
    let Formula::Exists(vars, inner) = body else {
        return counts;
    };
    counts.coefficient_vars = vars.len();
    if let Formula::And(conjuncts) = inner.as_ref() {
        for c in conjuncts {
            match c {
                Formula::Exists(v, _) if v.len() == 1 => counts.gamma += 1,
                Formula::Exists(_, _) => counts.phi += 1,
                Formula::Not(f) if matches!(f.as_ref(), Formula::Exists(_, _)) => {
                    counts.negated_phi += 1
                }
                _ => {}
            }
        }
    }
    for (cmp, lhs, _) in body.atoms() {
        if is_psi_atom(lhs) {
            counts.psi_atoms += 1;
            if cmp.is_strict() {
                counts.strict_psi_atoms += 1;
            }
        }
    }
    counts
}

impl Sentence {
    pub fn counts(&self) -> SentenceCounts {
        count_structure(&self.body)
    }
}
