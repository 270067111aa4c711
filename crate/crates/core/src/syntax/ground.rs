use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Atom, ObjectiveLiteral, Program, Rule, SubjectiveLiteral, Term};
use crate::error::{Error, Result};

fn constants(p: &Program) -> BTreeSet<String> {
    p.rules
        .iter()
        .flat_map(|r| {
            r.head_atoms()
                .chain(r.body_obj_atoms())
                .chain(r.body_subj_atoms())
        })
        .flat_map(|a| a.args.iter())
        .filter_map(|t| match t {
            Term::Const(c) => Some(c.clone()),
            Term::Var(_) => None,
        })
        .collect()
}

fn variables(r: &Rule) -> BTreeSet<String> {
    r.head_atoms()
        .chain(r.body_obj_atoms())
        .chain(r.body_subj_atoms())
        .flat_map(|a| a.args.iter())
        .filter_map(|t| match t {
            Term::Var(v) => Some(v.clone()),
            Term::Const(_) => None,
        })
        .collect()
}

type Binding<'a> = BTreeMap<&'a str, &'a str>;

fn subst_atom(a: &Atom, b: &Binding<'_>) -> Atom {
    Atom {
        predicate: a.predicate.clone(),
        args: a
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => Term::Const(b[v.as_str()].to_string()),
                c => c.clone(),
            })
            .collect(),
    }
}

fn subst_rule(r: &Rule, b: &Binding<'_>) -> Rule {
    Rule {
        head: r.head.iter().map(|a| subst_atom(a, b)).collect(),
        body_obj: r
            .body_obj
            .iter()
            .map(|l| ObjectiveLiteral {
                atom: subst_atom(&l.atom, b),
                default_negated: l.default_negated,
            })
            .collect(),
        body_subj: r
            .body_subj
            .iter()
            .map(|l| SubjectiveLiteral {
                inner: ObjectiveLiteral {
                    atom: subst_atom(&l.inner.atom, b),
                    default_negated: l.inner.default_negated,
                },
                epistemically_negated: l.epistemically_negated,
            })
            .collect(),
    }
}

/// Replaces variables with the program's constants in every possible way.
///
/// No safety analysis is done: each rule is instantiated over the full cross
/// product of its variables and the constants of the whole program. Duplicate
/// ground rules are dropped, keeping the first occurrence.
pub fn ground(p: &Program) -> Result<Program> {
    let consts: Vec<String> = constants(p).into_iter().collect();
    let mut seen = HashSet::new();
    let mut rules = Vec::new();
    let mut push = |r: Rule| {
        if seen.insert(r.clone()) {
            rules.push(r);
        }
    };

    for rule in &p.rules {
        let vars: Vec<String> = variables(rule).into_iter().collect();
        if vars.is_empty() {
            push(rule.clone());
            continue;
        }
        if consts.is_empty() {
            return Err(Error::NoConstants);
        }
        // odometer over consts^vars
        let mut idx = vec![0usize; vars.len()];
        loop {
            let binding: Binding<'_> = vars
                .iter()
                .zip(&idx)
                .map(|(v, &i)| (v.as_str(), consts[i].as_str()))
                .collect();
            push(subst_rule(rule, &binding));

            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < consts.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(Program::new(rules))
}
