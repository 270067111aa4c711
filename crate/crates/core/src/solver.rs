//! Answer sets of ground objective programs.
//!
//! `I` is an answer set of `Π` iff it is a minimal model of the
//! Gelfond-Lifschitz reduct `Π^I`. Candidates are enumerated by ascending
//! cardinality over the atoms that occur in some head, skipping supersets of
//! answer sets already found, since answer sets form an anti-chain.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Atom, AtomSet, Program, Rule};

/// Upper bound on the number of head atoms the enumerator will search over.
pub const MAX_SEARCH_ATOMS: usize = 24;

/// A set of ground atoms: an answer set, or one belief set of a world view.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(AtomSet);

impl Interpretation {
    pub fn new(atoms: AtomSet) -> Self {
        Interpretation(atoms)
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.0
    }

    pub fn into_atoms(self) -> AtomSet {
        self.0
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.union(&other.0).cloned().collect())
    }
}

impl From<AtomSet> for Interpretation {
    fn from(atoms: AtomSet) -> Self {
        Interpretation(atoms)
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a str> for Interpretation {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        Interpretation(iter.into_iter().map(Atom::new).collect())
    }
}

/// `{a,b,c}` with atoms in canonical order.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

fn require_objective(p: &Program) -> Result<()> {
    match p.rules.iter().find(|r| !r.is_objective()) {
        Some(r) => Err(Error::NotObjective(r.to_string())),
        None => Ok(()),
    }
}

fn require_ground(p: &Program) -> Result<()> {
    match p.first_non_ground_atom() {
        Some(a) => Err(Error::NotGround(a.clone())),
        None => Ok(()),
    }
}

/// The Gelfond-Lifschitz reduct `Π^I`: drop every rule with a literal
/// `not A` such that `A ∈ I`, then drop the remaining negative literals.
pub fn gl_reduct(p: &Program, i: &Interpretation) -> Result<Program> {
    require_objective(p)?;
    Ok(p.rules
        .iter()
        .filter(|r| {
            !r.body_obj
                .iter()
                .any(|l| l.default_negated && i.contains(&l.atom))
        })
        .map(|r| Rule {
            head: r.head.clone(),
            body_obj: r
                .body_obj
                .iter()
                .filter(|l| !l.default_negated)
                .cloned()
                .collect(),
            body_subj: BTreeSet::new(),
        })
        .collect())
}

/// Least Herbrand model of a positive, non-disjunctive program, computed with
/// the immediate consequence operator. Constraints do not take part in the
/// fixpoint; a constraint whose body holds in the result is reported as
/// [`Error::Inconsistent`].
pub fn least_model(p: &Program) -> Result<Interpretation> {
    require_objective(p)?;
    if let Some(r) = p.rules.iter().find(|r| r.is_disjunctive()) {
        return Err(Error::Disjunctive(r.to_string()));
    }
    if let Some(r) = p
        .rules
        .iter()
        .find(|r| r.body_obj.iter().any(|l| l.default_negated))
    {
        return Err(Error::NotPositive(r.to_string()));
    }

    let mut model = AtomSet::new();
    loop {
        let mut changed = false;
        for r in &p.rules {
            let Some(h) = r.head.iter().next() else {
                continue;
            };
            if !model.contains(h) && r.body_obj_atoms().all(|a| model.contains(a)) {
                model.insert(h.clone());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if let Some(c) = p
        .rules
        .iter()
        .find(|r| r.is_constraint() && r.body_obj_atoms().all(|a| model.contains(a)))
    {
        return Err(Error::Inconsistent(c.to_string()));
    }
    Ok(Interpretation(model))
}

/// The GL operator `Γ_Π(I)`: least model of the definite part of `Π^I`.
/// Constraints are ignored.
pub fn gamma(p: &Program, i: &Interpretation) -> Result<Interpretation> {
    let reduct = gl_reduct(p, i)?;
    let definite: Program = reduct
        .rules
        .into_iter()
        .filter(|r| !r.is_constraint())
        .collect();
    least_model(&definite)
}

/// Classical satisfaction: every rule whose body holds in `i` has a head atom
/// in `i` (an empty head is false). Default negation is read classically
/// w.r.t. `i`. Subjective literals are not evaluated; call this on objective
/// programs only.
pub fn is_classical_model(p: &Program, i: &Interpretation) -> bool {
    p.rules.iter().all(|r| {
        let body = r.body_obj.iter().all(|l| l.holds_in(i.atoms()));
        !body || r.head.iter().any(|a| i.contains(a))
    })
}

#[derive(Debug, Clone, Copy)]
struct Clause {
    head: u64,
    pos: u64,
    neg: u64,
}

/// Bitmask form of a program restricted to its head atoms.
///
/// Atoms that never occur in a head are false in every answer set, so a rule
/// with such an atom in its positive body can never fire and is dropped, and
/// a negative literal over one is always true and is dropped too.
struct Compiled {
    atoms: Vec<Atom>,
    clauses: Vec<Clause>,
    normal: bool,
}

impl Compiled {
    fn new(p: &Program) -> Result<Self> {
        require_objective(p)?;
        require_ground(p)?;
        let atoms: Vec<Atom> = p
            .rules
            .iter()
            .flat_map(|r| r.head.iter().cloned())
            .collect::<AtomSet>()
            .into_iter()
            .collect();
        if atoms.len() > MAX_SEARCH_ATOMS {
            return Err(Error::CapExceeded {
                what: "head atom",
                found: atoms.len(),
                limit: MAX_SEARCH_ATOMS,
            });
        }
        let bit = |a: &Atom| atoms.binary_search(a).ok().map(|i| 1u64 << i);

        let mut clauses = Vec::new();
        'rules: for r in &p.rules {
            let mut c = Clause {
                head: 0,
                pos: 0,
                neg: 0,
            };
            for a in &r.head {
                c.head |= bit(a).expect("head atoms are indexed");
            }
            for l in &r.body_obj {
                match (bit(&l.atom), l.default_negated) {
                    (Some(b), false) => c.pos |= b,
                    (Some(b), true) => c.neg |= b,
                    (None, false) => continue 'rules,
                    (None, true) => {}
                }
            }
            clauses.push(c);
        }
        let normal = clauses.iter().all(|c| c.head.count_ones() <= 1);
        Ok(Compiled {
            atoms,
            clauses,
            normal,
        })
    }

    fn is_model(&self, m: u64) -> bool {
        self.clauses
            .iter()
            .all(|c| c.pos & !m != 0 || c.neg & m != 0 || c.head & m != 0)
    }

    /// Assumes `m` is a model of the reduct w.r.t. `m`.
    fn is_minimal(&self, m: u64) -> bool {
        let reduct: Vec<Clause> = self
            .clauses
            .iter()
            .filter(|c| c.neg & m == 0)
            .copied()
            .collect();
        if self.normal {
            // the least model lies inside every model, so `m` is minimal iff
            // it equals the least model
            let mut lm = 0u64;
            loop {
                let next = reduct
                    .iter()
                    .filter(|c| c.pos & !lm == 0)
                    .fold(lm, |acc, c| acc | c.head);
                if next == lm {
                    break;
                }
                lm = next;
            }
            return lm == m;
        }
        let sat = |j: u64| reduct.iter().all(|c| c.pos & !j != 0 || c.head & j != 0);
        let mut j = m;
        while j != 0 {
            j = (j - 1) & m;
            if sat(j) {
                return false;
            }
        }
        true
    }

    fn decode(&self, m: u64) -> Interpretation {
        Interpretation(
            (0..self.atoms.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| self.atoms[i].clone())
                .collect(),
        )
    }
}

/// All subsets of `0..n` with exactly `k` elements, as bitmasks, via Gosper's
/// hack.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first).filter(|&m| m < limit || (k == 0));
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            Some(succ).filter(|&m| m < limit)
        };
        Some(cur)
    })
}

/// Answer sets of a ground objective program, in canonical order. An empty
/// result means the program is inconsistent.
pub fn answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    let c = Compiled::new(p)?;
    let n = c.atoms.len();
    let mut found: Vec<u64> = Vec::new();
    for k in 0..=n {
        for m in subsets_of_size(n, k) {
            if found.iter().any(|&a| a & !m == 0) {
                continue;
            }
            if c.is_model(m) && c.is_minimal(m) {
                found.push(m);
            }
        }
    }
    let mut out: Vec<Interpretation> = found.into_iter().map(|m| c.decode(m)).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn prog(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn interp(atoms: &[&str]) -> Interpretation {
        atoms.iter().copied().collect()
    }

    fn sets(p: &str) -> Vec<Interpretation> {
        answer_sets(&prog(p)).unwrap()
    }

    const PI62_ASP: &str = "f :- a. e :- c. :- not p. a :- p. a :- q.
                            p :- not q. q :- not p. c.";
    const PI62_ASP_BOTTOM: &str = "a :- p. a :- q. p :- not q. q :- not p. c.";

    #[test]
    fn reduct_of_even_loop() {
        let r = gl_reduct(&prog("a :- not b. b :- not a."), &interp(&["a"])).unwrap();
        assert_eq!(r.rule_set(), prog("a.").rule_set());
    }

    #[test]
    fn reduct_of_bottom_part() {
        let p = prog("p :- not q. q :- not p. a :- p. a :- q. c.");
        let r = gl_reduct(&p, &interp(&["c", "p", "a"])).unwrap();
        assert_eq!(r.rule_set(), prog("p. a :- p. a :- q. c.").rule_set());
    }

    #[test]
    fn reduct_of_positive_program_is_identity() {
        let p = prog("a. b :- a. c | d :- b. :- c, d.");
        assert_eq!(gl_reduct(&p, &interp(&["a", "c"])).unwrap(), p);
    }

    #[test]
    fn reduct_rejects_subjective() {
        let p = prog("a :- K b.");
        assert!(matches!(
            gl_reduct(&p, &Interpretation::default()),
            Err(Error::NotObjective(_))
        ));
    }

    #[test]
    fn least_models() {
        assert_eq!(least_model(&prog("a. b :- a.")).unwrap(), interp(&["a", "b"]));
        assert_eq!(
            least_model(&prog("p. a :- p. c.")).unwrap(),
            interp(&["p", "a", "c"])
        );
        assert_eq!(least_model(&prog("a :- b.")).unwrap(), interp(&[]));
    }

    #[test]
    fn least_model_errors() {
        assert!(matches!(
            least_model(&prog("a. :- a.")),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            least_model(&prog("a | b.")),
            Err(Error::Disjunctive(_))
        ));
        assert!(matches!(
            least_model(&prog("a :- not b.")),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn classical_models() {
        assert!(is_classical_model(&prog("a | b."), &interp(&["a"])));
        assert!(!is_classical_model(&prog(":- not p."), &interp(&[])));
        assert!(!is_classical_model(&prog("a :- b."), &interp(&["b"])));
    }

    #[test]
    fn disjunctive_fact() {
        assert_eq!(sets("p | q."), vec![interp(&["p"]), interp(&["q"])]);
    }

    #[test]
    fn asp_program_and_its_bottom() {
        assert_eq!(sets(PI62_ASP), vec![interp(&["c", "p", "a", "e", "f"])]);
        assert_eq!(
            sets(PI62_ASP_BOTTOM),
            vec![interp(&["c", "a", "p"]), interp(&["c", "a", "q"])]
        );
    }

    #[test]
    fn inconsistent_programs() {
        assert!(sets("a :- not a.").is_empty());
        assert!(sets("a. :- a.").is_empty());
        assert!(sets("bot.").is_empty());
    }

    #[test]
    fn empty_program_has_the_empty_answer_set() {
        assert_eq!(sets(""), vec![Interpretation::default()]);
    }

    #[test]
    fn disjunctive_minimality() {
        // {a,b} is a model of the reduct but {a} and {b} are smaller ones
        assert_eq!(sets("a | b. a :- b."), vec![interp(&["a"])]);
        // head-cycle: a | b, a :- b, b :- a has the single answer set {a,b}
        assert_eq!(sets("a | b. a :- b. b :- a."), vec![interp(&["a", "b"])]);
    }

    #[test]
    fn body_atoms_outside_heads() {
        assert_eq!(sets("a :- x. b :- not y."), vec![interp(&["b"])]);
    }

    #[test]
    fn gamma_fixpoints_on_normal_programs() {
        let p = prog("a :- not b. b :- not a. c :- a.");
        for i in [interp(&["a", "c"]), interp(&["b"])] {
            assert_eq!(gamma(&p, &i).unwrap(), i);
        }
        assert_ne!(gamma(&p, &interp(&["a"])).unwrap(), interp(&["a"]));
    }

    #[test]
    fn rejects_non_ground() {
        assert!(matches!(
            answer_sets(&prog("p(X) :- q(X).")),
            Err(Error::NotGround(_))
        ));
    }

    #[test]
    fn gosper_enumeration_counts() {
        for n in 0..6 {
            for k in 0..=n {
                let got: Vec<u64> = subsets_of_size(n, k).collect();
                let expected = (0u64..1 << n)
                    .filter(|m| m.count_ones() as usize == k)
                    .count();
                assert_eq!(got.len(), expected, "n={n} k={k}");
                assert!(got.iter().all(|m| m.count_ones() as usize == k));
            }
        }
    }
}
