//! Abstract syntax of epistemic logic programs, plus the text parser, the
//! naive grounder and structural checks.
//!
//! Programs are sets of rules `A1 | ... | Ag :- L1, ..., Ln.` whose bodies may
//! mix objective literals (`a`, `not a`) with subjective ones built from the
//! epistemic operator `K` (`K a`, `K not a`, `not K a`, `not K not a`).

mod ground;
mod parser;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

pub use ground::ground;
pub use parser::parse_program;
pub use validate::{validate_elp, Diagnostic};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(s) | Term::Var(s) => f.write_str(s),
        }
    }
}

/// A predicate applied to terms. Zero-arity atoms print as the bare name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>) -> Self {
        Atom {
            predicate: predicate.into(),
            args: Vec::new(),
        }
    }

    pub fn with_args(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn is_ground(&self) -> bool {
        !self.args.iter().any(Term::is_var)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl From<&str> for Atom {
    fn from(name: &str) -> Self {
        Atom::new(name)
    }
}

pub type AtomSet = BTreeSet<Atom>;

/// Builds an atom set from zero-arity names; handy in tests and fixtures.
pub fn atom_set<'a>(names: impl IntoIterator<Item = &'a str>) -> AtomSet {
    names.into_iter().map(Atom::new).collect()
}

/// `a` or `not a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectiveLiteral {
    pub atom: Atom,
    pub default_negated: bool,
}

impl ObjectiveLiteral {
    pub fn pos(atom: impl Into<Atom>) -> Self {
        ObjectiveLiteral {
            atom: atom.into(),
            default_negated: false,
        }
    }

    pub fn neg(atom: impl Into<Atom>) -> Self {
        ObjectiveLiteral {
            atom: atom.into(),
            default_negated: true,
        }
    }

    /// Truth of the literal in a single interpretation.
    pub fn holds_in(&self, atoms: &AtomSet) -> bool {
        atoms.contains(&self.atom) != self.default_negated
    }
}

impl fmt::Display for ObjectiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.default_negated {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// `K L` or `not K L` for an objective literal `L`. Subjective literals never
/// nest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubjectiveLiteral {
    pub inner: ObjectiveLiteral,
    pub epistemically_negated: bool,
}

impl SubjectiveLiteral {
    /// `K inner`
    pub fn know(inner: ObjectiveLiteral) -> Self {
        SubjectiveLiteral {
            inner,
            epistemically_negated: false,
        }
    }

    /// `not K inner`
    pub fn not_know(inner: ObjectiveLiteral) -> Self {
        SubjectiveLiteral {
            inner,
            epistemically_negated: true,
        }
    }

    /// The literal with the outer `not` toggled: `K L` <-> `not K L`.
    pub fn complement(&self) -> Self {
        SubjectiveLiteral {
            inner: self.inner.clone(),
            epistemically_negated: !self.epistemically_negated,
        }
    }

    /// The positive form `K L` of this literal.
    pub fn positive(&self) -> Self {
        SubjectiveLiteral::know(self.inner.clone())
    }

    pub fn atom(&self) -> &Atom {
        &self.inner.atom
    }
}

impl fmt::Display for SubjectiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.epistemically_negated {
            f.write_str("not ")?;
        }
        write!(f, "K {}", self.inner)
    }
}

/// A rule with a disjunctive head. An empty head is `⊥` (a constraint).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: BTreeSet<Atom>,
    pub body_obj: BTreeSet<ObjectiveLiteral>,
    pub body_subj: BTreeSet<SubjectiveLiteral>,
}

impl Rule {
    pub fn new<H, O, S>(head: H, body_obj: O, body_subj: S) -> Self
    where
        H: IntoIterator<Item = Atom>,
        O: IntoIterator<Item = ObjectiveLiteral>,
        S: IntoIterator<Item = SubjectiveLiteral>,
    {
        Rule {
            head: head.into_iter().collect(),
            body_obj: body_obj.into_iter().collect(),
            body_subj: body_subj.into_iter().collect(),
        }
    }

    pub fn fact<H: IntoIterator<Item = Atom>>(head: H) -> Self {
        Rule::new(head, [], [])
    }

    pub fn is_fact(&self) -> bool {
        self.body_obj.is_empty() && self.body_subj.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_subjective_rule(&self) -> bool {
        self.body_obj.is_empty() && !self.body_subj.is_empty()
    }

    pub fn is_subjective_constraint(&self) -> bool {
        self.is_constraint() && !self.body_subj.is_empty()
    }

    pub fn is_objective(&self) -> bool {
        self.body_subj.is_empty()
    }

    pub fn is_disjunctive(&self) -> bool {
        self.head.len() > 1
    }

    pub fn head_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head.iter()
    }

    pub fn body_obj_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.body_obj.iter().map(|l| &l.atom)
    }

    pub fn body_subj_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.body_subj.iter().map(|l| &l.inner.atom)
    }

    /// `Atoms(r)`
    pub fn atoms(&self) -> AtomSet {
        self.head_atoms()
            .chain(self.body_obj_atoms())
            .chain(self.body_subj_atoms())
            .cloned()
            .collect()
    }

    pub fn is_ground(&self) -> bool {
        self.head_atoms()
            .chain(self.body_obj_atoms())
            .chain(self.body_subj_atoms())
            .all(Atom::is_ground)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .body_obj
            .iter()
            .map(ToString::to_string)
            .chain(self.body_subj.iter().map(ToString::to_string))
            .collect();
        if self.head.is_empty() {
            if body.is_empty() {
                return f.write_str("bot.");
            }
            return write!(f, ":- {}.", body.join(", "));
        }
        let head: Vec<String> = self.head.iter().map(ToString::to_string).collect();
        f.write_str(&head.join(" | "))?;
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

/// An ordered list of rules. Duplicates are kept as written; grounding and the
/// solvers treat the program as a set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    /// The atom universe `At`.
    pub fn atoms(&self) -> AtomSet {
        self.rules.iter().flat_map(Rule::atoms).collect()
    }

    pub fn is_objective(&self) -> bool {
        self.rules.iter().all(Rule::is_objective)
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    /// Distinct subjective literals in rule bodies.
    pub fn subjective_literals(&self) -> BTreeSet<SubjectiveLiteral> {
        self.rules
            .iter()
            .flat_map(|r| r.body_subj.iter().cloned())
            .collect()
    }

    /// The rules as a set; used wherever programs are compared semantically.
    pub fn rule_set(&self) -> BTreeSet<Rule> {
        self.rules.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// First atom (in rule order) that still carries a variable.
    pub(crate) fn first_non_ground_atom(&self) -> Option<&Atom> {
        self.rules
            .iter()
            .flat_map(|r| {
                r.head_atoms()
                    .chain(r.body_obj_atoms())
                    .chain(r.body_subj_atoms())
            })
            .find(|a| !a.is_ground())
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program {
            rules: iter.into_iter().collect(),
        }
    }
}

/// Canonical text: one rule per line, literals sorted inside heads and bodies.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_kinds() {
        let fact = Rule::fact([Atom::new("a"), Atom::new("b")]);
        assert!(fact.is_fact() && fact.is_disjunctive() && !fact.is_constraint());

        let subj = Rule::new(
            [Atom::new("p")],
            [],
            [SubjectiveLiteral::not_know(ObjectiveLiteral::pos("q"))],
        );
        assert!(subj.is_subjective_rule());
        assert!(!subj.is_subjective_constraint());

        let sc = Rule::new([], [], [SubjectiveLiteral::know(ObjectiveLiteral::pos("p"))]);
        assert!(sc.is_subjective_constraint());
    }

    #[test]
    fn display_forms() {
        let lits = [
            SubjectiveLiteral::know(ObjectiveLiteral::pos("a")),
            SubjectiveLiteral::know(ObjectiveLiteral::neg("a")),
            SubjectiveLiteral::not_know(ObjectiveLiteral::pos("a")),
            SubjectiveLiteral::not_know(ObjectiveLiteral::neg("a")),
        ];
        let shown: Vec<String> = lits.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["K a", "K not a", "not K a", "not K not a"]);

        let r = Rule::new(
            [],
            [ObjectiveLiteral::pos("c")],
            [SubjectiveLiteral::not_know(ObjectiveLiteral::pos("p"))],
        );
        assert_eq!(r.to_string(), ":- c, not K p.");
        assert_eq!(Rule::default().to_string(), "bot.");
        let a = Atom::with_args("eligible", vec![Term::Const("mike".into())]);
        assert_eq!(a.to_string(), "eligible(mike)");
    }

    #[test]
    fn universe_is_union_of_rule_atoms() {
        let p = Program::new(vec![
            Rule::fact([Atom::new("a")]),
            Rule::new(
                [Atom::new("b")],
                [ObjectiveLiteral::neg("c")],
                [SubjectiveLiteral::know(ObjectiveLiteral::pos("d"))],
            ),
        ]);
        assert_eq!(p.atoms(), atom_set(["a", "b", "c", "d"]));
    }
}
