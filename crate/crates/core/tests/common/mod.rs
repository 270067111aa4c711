//! Brute-force reference implementations, written without the library's
//! solver, reducts or splitting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use elpsplit_core::syntax::{parse_program, Atom, ObjectiveLiteral, Program, Rule, SubjectiveLiteral};
use elpsplit_core::{Interpretation, WorldView};

pub type Sets = BTreeSet<BTreeSet<String>>;

pub fn prog(text: &str) -> Program {
    parse_program(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn wv(sets: &[&[&str]]) -> WorldView {
    WorldView::from_sets(sets.iter().map(|s| s.iter().copied().collect::<Interpretation>()))
}

pub fn wvs(views: &[&[&[&str]]]) -> BTreeSet<WorldView> {
    views.iter().map(|v| wv(v)).collect()
}

pub fn to_sets<'a>(it: impl IntoIterator<Item = &'a Interpretation>) -> Sets {
    it.into_iter()
        .map(|i| i.iter().map(ToString::to_string).collect())
        .collect()
}

struct MaskRule {
    head: u32,
    pos: u32,
    neg: u32,
}

/// Answer sets of an objective program by checking every interpretation
/// against the minimal models of its own reduct.
pub fn answer_sets(p: &Program) -> Sets {
    assert!(p.is_objective());
    let atoms: Vec<Atom> = p
        .rules
        .iter()
        .flat_map(|r| r.head.iter().chain(r.body_obj.iter().map(|l| &l.atom)))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(atoms.len() <= 16);
    let bit = |a: &Atom| 1u32 << atoms.iter().position(|b| b == a).unwrap();
    let rules: Vec<MaskRule> = p
        .rules
        .iter()
        .map(|r| MaskRule {
            head: r.head.iter().map(bit).fold(0, |m, b| m | b),
            pos: r.body_obj.iter().filter(|l| !l.default_negated).map(|l| bit(&l.atom)).fold(0, |m, b| m | b),
            neg: r.body_obj.iter().filter(|l| l.default_negated).map(|l| bit(&l.atom)).fold(0, |m, b| m | b),
        })
        .collect();

    let mut out = Sets::new();
    for m in 0u32..1 << atoms.len() {
        let reduct: Vec<&MaskRule> = rules.iter().filter(|r| r.neg & m == 0).collect();
        let model = |x: u32| reduct.iter().all(|r| r.pos & !x != 0 || r.head & x != 0);
        if !model(m) {
            continue;
        }
        // proper submasks of m
        let mut sub = m;
        let mut minimal = true;
        while sub != 0 {
            sub = (sub - 1) & m;
            if model(sub) {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.insert(
                (0..atoms.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| atoms[i].to_string())
                    .collect(),
            );
        }
    }
    out
}

fn holds(l: &ObjectiveLiteral, set: &BTreeSet<String>) -> bool {
    set.contains(&l.atom.to_string()) != l.default_negated
}

fn knows(w: &Sets, l: &ObjectiveLiteral) -> bool {
    w.iter().all(|s| holds(l, s))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reading {
    G91,
    K15,
    S16,
}

/// World views by guessing a truth value for every distinct subjective
/// literal independently and keeping the guesses that reproduce themselves.
pub fn world_views(p: &Program, reading: Reading) -> BTreeSet<Sets> {
    let lits: Vec<SubjectiveLiteral> = p
        .rules
        .iter()
        .flat_map(|r| r.body_subj.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(lits.len() <= 12);
    let mut out = BTreeSet::new();
    for guess in 0u32..1 << lits.len() {
        let value: BTreeMap<&SubjectiveLiteral, bool> =
            lits.iter().enumerate().map(|(i, l)| (l, guess >> i & 1 == 1)).collect();
        let mut rules = Vec::new();
        'rules: for r in &p.rules {
            let mut body_obj = r.body_obj.clone();
            for l in &r.body_subj {
                if !value[l] {
                    continue 'rules;
                }
                if reading != Reading::G91 && !l.epistemically_negated {
                    body_obj.insert(l.inner.clone());
                }
            }
            rules.push(Rule {
                head: r.head.clone(),
                body_obj,
                body_subj: BTreeSet::new(),
            });
        }
        let w = answer_sets(&Program::new(rules));
        if w.is_empty() {
            continue;
        }
        let stable = lits
            .iter()
            .all(|l| (knows(&w, &l.inner) != l.epistemically_negated) == value[l]);
        if stable {
            out.insert(w);
        }
    }
    if reading == Reading::S16 {
        let inner: BTreeSet<&ObjectiveLiteral> = lits.iter().map(|l| &l.inner).collect();
        let unknown = |w: &Sets| -> BTreeSet<&ObjectiveLiteral> {
            inner.iter().copied().filter(|l| !knows(w, l)).collect()
        };
        let all = out.clone();
        out.retain(|w| {
            let mine = unknown(w);
            !all.iter().any(|v| {
                let theirs = unknown(v);
                mine.is_subset(&theirs) && mine != theirs
            })
        });
    }
    out
}

pub fn view_sets(views: &BTreeSet<WorldView>) -> BTreeSet<Sets> {
    views.iter().map(|w| to_sets(w.iter())).collect()
}

/// Looks for a level mapping with values below `|At|` by backtracking.
pub fn stratifiable(p: &Program) -> bool {
    let atoms: Vec<Atom> = p.atoms().into_iter().collect();
    let n = atoms.len();
    let idx = |a: &Atom| atoms.iter().position(|b| b == a).unwrap();
    let rules: Vec<(Vec<usize>, Vec<usize>)> = p
        .rules
        .iter()
        .map(|r| {
            let obj = r.head.iter().chain(r.body_obj.iter().map(|l| &l.atom)).map(idx).collect();
            let subj = r.body_subj.iter().map(|l| idx(&l.inner.atom)).collect();
            (obj, subj)
        })
        .collect();

    fn ok(rules: &[(Vec<usize>, Vec<usize>)], lvl: &[Option<usize>]) -> bool {
        rules.iter().all(|(obj, subj)| {
            let o: Vec<usize> = obj.iter().filter_map(|&i| lvl[i]).collect();
            if o.windows(2).any(|w| w[0] != w[1]) {
                return false;
            }
            o.first().is_none_or(|&lo| subj.iter().filter_map(|&i| lvl[i]).all(|ls| lo > ls))
        })
    }

    fn go(rules: &[(Vec<usize>, Vec<usize>)], lvl: &mut Vec<Option<usize>>, i: usize, n: usize) -> bool {
        if i == n {
            return true;
        }
        for l in 0..n.max(1) {
            lvl[i] = Some(l);
            if ok(rules, lvl) && go(rules, lvl, i + 1, n) {
                return true;
            }
        }
        lvl[i] = None;
        false
    }

    go(&rules, &mut vec![None; n], 0, n)
}

/// Checks both level conditions for every rule.
pub fn respects_levels(p: &Program, lvl: &BTreeMap<Atom, usize>) -> bool {
    p.rules.iter().all(|r| {
        let obj: Vec<usize> = r
            .head
            .iter()
            .chain(r.body_obj.iter().map(|l| &l.atom))
            .map(|a| lvl[a])
            .collect();
        obj.windows(2).all(|w| w[0] == w[1])
            && obj
                .first()
                .is_none_or(|&lo| r.body_subj.iter().all(|l| lo > lvl[&l.inner.atom]))
    })
}
