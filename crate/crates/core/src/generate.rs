//! Random ground programs for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::Rng;

use crate::syntax::{Atom, AtomSet, ObjectiveLiteral, Program, Rule, SubjectiveLiteral};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub atoms: usize,
    pub rules: usize,
    /// Distinct `K L` bases the program may use.
    pub max_subjective: usize,
    pub max_body: usize,
    pub disjunction: bool,
    pub constraints: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            atoms: 6,
            rules: 8,
            max_subjective: 4,
            max_body: 2,
            disjunction: true,
            constraints: true,
        }
    }
}

/// `a`, `b`, ..., `z`, then `a1`, `b1`, ...
pub fn atom_names(n: usize) -> Vec<Atom> {
    (0..n)
        .map(|i| {
            let letter = char::from(b'a' + (i % 26) as u8);
            if i < 26 {
                Atom::new(letter.to_string())
            } else {
                Atom::new(format!("{letter}{}", i / 26))
            }
        })
        .collect()
}

fn pick<'a, R: Rng + ?Sized>(rng: &mut R, pool: &'a [Atom]) -> &'a Atom {
    &pool[rng.random_range(0..pool.len())]
}

fn literal<R: Rng + ?Sized>(rng: &mut R, pool: &[Atom], neg: f64) -> ObjectiveLiteral {
    let a = pick(rng, pool).clone();
    if rng.random_bool(neg) {
        ObjectiveLiteral::neg(a)
    } else {
        ObjectiveLiteral::pos(a)
    }
}

/// A fixed set of at most `n` inner literals over `pool` to build `K L` from.
fn bases<R: Rng + ?Sized>(rng: &mut R, pool: &[Atom], n: usize) -> Vec<ObjectiveLiteral> {
    let mut out = BTreeSet::new();
    for _ in 0..n {
        if pool.is_empty() {
            break;
        }
        out.insert(literal(rng, pool, 0.25));
    }
    out.into_iter().collect()
}

fn subjective<R: Rng + ?Sized>(rng: &mut R, bases: &[ObjectiveLiteral]) -> SubjectiveLiteral {
    let inner = bases[rng.random_range(0..bases.len())].clone();
    if rng.random_bool(0.5) {
        SubjectiveLiteral::not_know(inner)
    } else {
        SubjectiveLiteral::know(inner)
    }
}

struct Pools<'a> {
    head: &'a [Atom],
    body: &'a [Atom],
    bases: &'a [ObjectiveLiteral],
}

fn rule<R: Rng + ?Sized>(rng: &mut R, pools: &Pools<'_>, params: &GenParams) -> Rule {
    let mut r = Rule::default();
    let constraint = params.constraints && rng.random_bool(0.15);
    if !constraint {
        r.head.insert(pick(rng, pools.head).clone());
        if params.disjunction && rng.random_bool(0.25) {
            r.head.insert(pick(rng, pools.head).clone());
        }
    }
    let n_obj = rng.random_range(0..=params.max_body);
    for _ in 0..n_obj {
        r.body_obj.insert(literal(rng, pools.body, 0.4));
    }
    if !pools.bases.is_empty() && rng.random_bool(if constraint { 0.7 } else { 0.4 }) {
        r.body_subj.insert(subjective(rng, pools.bases));
    }
    r
}

/// A random objective program with disjunction, default negation and
/// constraints as allowed by `params`.
pub fn random_objective<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> Program {
    let atoms = atom_names(params.atoms);
    let pools = Pools {
        head: &atoms,
        body: &atoms,
        bases: &[],
    };
    (0..params.rules).map(|_| rule(rng, &pools, params)).collect()
}

/// A random epistemic program with no structure imposed.
pub fn random_elp<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> Program {
    let atoms = atom_names(params.atoms);
    let bases = bases(rng, &atoms, params.max_subjective);
    let pools = Pools {
        head: &atoms,
        body: &atoms,
        bases: &bases,
    };
    (0..params.rules).map(|_| rule(rng, &pools, params)).collect()
}

/// A random epistemic program built around a splitting set: the first `k`
/// atoms (`1 ≤ k < atoms`) form the bottom, and top rules only see them under
/// `K`. Returns the program and that set.
pub fn random_splittable<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> (Program, AtomSet) {
    let atoms = atom_names(params.atoms.max(2));
    let k = rng.random_range(1..atoms.len());
    let (lower, upper) = atoms.split_at(k);
    let all_bases = bases(rng, &atoms, params.max_subjective);
    let lower_bases: Vec<_> = all_bases
        .iter()
        .filter(|b| lower.contains(&b.atom))
        .cloned()
        .collect();
    let bottom = Pools {
        head: lower,
        body: lower,
        bases: &lower_bases,
    };
    let top = Pools {
        head: upper,
        body: upper,
        bases: &all_bases,
    };
    let n_bottom = rng.random_range(1..params.rules.max(2));
    let program = (0..params.rules)
        .map(|i| {
            let pools = if i < n_bottom { &bottom } else { &top };
            rule(rng, pools, params)
        })
        .collect();
    (program, lower.iter().cloned().collect())
}

/// A random epistemically stratified program without constraints whose
/// objective negation is stratified inside every level. Such programs always
/// have exactly one world view. Also returns the level prefixes
/// `{λ < 1} ⊂ {λ < 2} ⊂ ...`, each of which is a splitting set.
pub fn random_stratified<R: Rng + ?Sized>(
    rng: &mut R,
    params: &GenParams,
    levels: usize,
) -> (Program, Vec<AtomSet>) {
    let levels = levels.clamp(1, params.atoms.max(1));
    let atoms = atom_names(params.atoms.max(1));
    // every level gets at least one atom; strata order negation inside a level
    let mut level_of: Vec<usize> = (0..atoms.len()).map(|i| i.min(levels - 1)).collect();
    for l in level_of.iter_mut().skip(levels) {
        *l = rng.random_range(0..levels);
    }
    let stratum: Vec<usize> = (0..atoms.len()).map(|_| rng.random_range(0..2)).collect();
    let at = |pred: &dyn Fn(usize) -> bool| -> Vec<Atom> {
        (0..atoms.len()).filter(|&i| pred(i)).map(|i| atoms[i].clone()).collect()
    };

    let mut rules = Vec::new();
    let mut used_bases: BTreeSet<ObjectiveLiteral> = BTreeSet::new();
    for _ in 0..params.rules {
        let level = rng.random_range(0..levels);
        let s = rng.random_range(0..2);
        let heads = at(&|i| level_of[i] == level && stratum[i] == s);
        if heads.is_empty() {
            continue;
        }
        let positive = at(&|i| level_of[i] == level && stratum[i] <= s);
        let negative = at(&|i| level_of[i] == level && stratum[i] < s);
        let below = at(&|i| level_of[i] < level);

        let mut r = Rule::default();
        r.head.insert(pick(rng, &heads).clone());
        if params.disjunction && rng.random_bool(0.5) {
            r.head.insert(pick(rng, &heads).clone());
        }
        for _ in 0..rng.random_range(0..=params.max_body) {
            if !negative.is_empty() && rng.random_bool(0.4) {
                r.body_obj.insert(ObjectiveLiteral::neg(pick(rng, &negative).clone()));
            } else {
                r.body_obj.insert(ObjectiveLiteral::pos(pick(rng, &positive).clone()));
            }
        }
        if !below.is_empty() && rng.random_bool(0.6) {
            let inner = literal(rng, &below, 0.25);
            if used_bases.len() < params.max_subjective || used_bases.contains(&inner) {
                used_bases.insert(inner.clone());
                r.body_subj.insert(if rng.random_bool(0.5) {
                    SubjectiveLiteral::not_know(inner)
                } else {
                    SubjectiveLiteral::know(inner)
                });
            }
        }
        rules.push(r);
    }

    let program = Program::new(rules);
    let present = program.atoms();
    let prefixes = (1..levels)
        .map(|k| at(&|i| level_of[i] < k).into_iter().filter(|a| present.contains(a)).collect())
        .collect();
    (program, prefixes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::is_splitting_set;
    use crate::stratify::stratify;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn names() {
        let n = atom_names(28);
        assert_eq!(n[0].to_string(), "a");
        assert_eq!(n[25].to_string(), "z");
        assert_eq!(n[27].to_string(), "b1");
    }

    #[test]
    fn objective_programs_are_objective() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..50 {
            let p = random_objective(&mut rng, &GenParams::default());
            assert!(p.is_objective());
            assert!(p.atoms().len() <= 6);
        }
    }

    #[test]
    fn splittable_programs_split() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..200 {
            let (p, u) = random_splittable(&mut rng, &GenParams::default());
            assert!(is_splitting_set(&u, &p), "{p}");
            assert!(crate::semantics::knowledge_bases(&p).len() <= 4);
        }
    }

    #[test]
    fn stratified_programs_stratify() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let (p, prefixes) = random_stratified(&mut rng, &GenParams::default(), 3);
            assert!(stratify(&p).is_stratified(), "{p}");
            assert!(p.rules.iter().all(|r| !r.is_constraint()));
            for u in &prefixes {
                assert!(is_splitting_set(u, &p), "{p} / {u:?}");
            }
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_elp(&mut StdRng::seed_from_u64(9), &GenParams::default());
        let b = random_elp(&mut StdRng::seed_from_u64(9), &GenParams::default());
        assert_eq!(a, b);
    }
}
