use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{Atom, Program, SubjectiveLiteral};

/// A constraint whose satisfaction depends on a subjective literal through
/// objective rules rather than directly in its own body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Index of the constraint in `Program::rules`.
    pub constraint: usize,
    /// Index of the rule carrying the subjective literal.
    pub rule: usize,
    pub literal: SubjectiveLiteral,
    /// Dependency path from a constraint body atom to the head of `rule`.
    pub path: Vec<Atom>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(ToString::to_string).collect();
        write!(
            f,
            "constraint #{} depends on `{}` (rule #{}) through {}",
            self.constraint,
            self.literal,
            self.rule,
            path.join(" -> ")
        )
    }
}

/// Reports constraints that depend indirectly on subjective literals.
///
/// Dependencies follow the positive/negative dependency graph: a constraint
/// depends on every atom of its objective body, and an atom depends on the
/// objective body atoms of every rule that has it in the head. Each
/// (constraint, subjective literal) pair reached this way yields one
/// diagnostic. Subjective literals written directly in a constraint body are
/// the accepted plain form and are not reported.
pub fn validate_elp(p: &Program) -> Vec<Diagnostic> {
    let mut defining: BTreeMap<&Atom, Vec<usize>> = BTreeMap::new();
    for (i, r) in p.rules.iter().enumerate() {
        for a in r.head_atoms() {
            defining.entry(a).or_default().push(i);
        }
    }

    let mut out = Vec::new();
    for (ci, c) in p.rules.iter().enumerate() {
        if !c.is_constraint() {
            continue;
        }
        // BFS over atoms, remembering the predecessor to rebuild paths.
        let mut parent: BTreeMap<&Atom, Option<&Atom>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for a in c.body_obj_atoms() {
            if !parent.contains_key(a) {
                parent.insert(a, None);
                queue.push_back(a);
            }
        }
        let mut reported: BTreeSet<(usize, &SubjectiveLiteral)> = BTreeSet::new();
        while let Some(a) = queue.pop_front() {
            for &ri in defining.get(a).map(Vec::as_slice).unwrap_or(&[]) {
                let r = &p.rules[ri];
                for lit in &r.body_subj {
                    if reported.insert((ri, lit)) {
                        let mut path = vec![a.clone()];
                        let mut cur = parent[a];
                        while let Some(prev) = cur {
                            path.push(prev.clone());
                            cur = parent[prev];
                        }
                        path.reverse();
                        out.push(Diagnostic {
                            constraint: ci,
                            rule: ri,
                            literal: lit.clone(),
                            path,
                        });
                    }
                }
                for b in r.body_obj_atoms() {
                    if !parent.contains_key(b) {
                        parent.insert(b, Some(a));
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    out
}
