//! Epistemic splitting sets and bottom-up composition of world views.
//!
//! `U` splits `Π` when every rule either lives entirely inside `U` or
//! mentions `U` only under `K` (its head and objective body avoid `U`). Rules
//! of the second kind form the top, everything else the bottom.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::semantics::{rewrite_subjective, world_views, wv_satisfies, Limits, ReductKind, Semantics, WorldView};
use crate::syntax::{Atom, AtomSet, Program, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub u: AtomSet,
    /// `B_U(Π)`
    pub bottom: Program,
    /// `T_U(Π)`
    pub top: Program,
}

/// `Atoms(r) ⊆ U`
fn inside(r: &Rule, u: &AtomSet) -> bool {
    r.head_atoms()
        .chain(r.body_obj_atoms())
        .chain(r.body_subj_atoms())
        .all(|a| u.contains(a))
}

/// `(Body_obj(r) ∪ Head(r)) ∩ U = ∅`
fn above(r: &Rule, u: &AtomSet) -> bool {
    !r.head_atoms().chain(r.body_obj_atoms()).any(|a| u.contains(a))
}

pub(crate) fn show_set(u: &AtomSet) -> String {
    u.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn is_splitting_set(u: &AtomSet, p: &Program) -> bool {
    p.rules.iter().all(|r| inside(r, u) || above(r, u))
}

/// Splits `p` along `u`. Every rule satisfying the top condition goes to the
/// top, so subjective rules and subjective constraints that qualify for both
/// sides end up there; the rest must lie inside `u`.
pub fn split(u: &AtomSet, p: &Program) -> Result<Splitting> {
    let mut bottom = Vec::new();
    let mut top = Vec::new();
    for r in &p.rules {
        if above(r, u) {
            top.push(r.clone());
        } else if inside(r, u) {
            bottom.push(r.clone());
        } else {
            return Err(Error::InvalidSplittingSet(show_set(u)));
        }
    }
    Ok(Splitting {
        u: u.clone(),
        bottom: Program::new(bottom),
        top: Program::new(top),
    })
}

/// Every epistemic splitting set of `p`, smallest first, then in
/// lexicographic order. Includes `∅` and `At`.
pub fn enumerate_splitting_sets(p: &Program, limits: &Limits) -> Result<Vec<AtomSet>> {
    let atoms: Vec<Atom> = p.atoms().into_iter().collect();
    if atoms.len() > limits.max_atoms {
        return Err(Error::CapExceeded {
            what: "atom",
            found: atoms.len(),
            limit: limits.max_atoms,
        });
    }
    let mask = |it: &mut dyn Iterator<Item = &Atom>| {
        it.fold(0u64, |m, a| m | 1 << atoms.binary_search(a).expect("atom indexed"))
    };
    // (all atoms of the rule, head and objective body atoms)
    let rules: Vec<(u64, u64)> = p
        .rules
        .iter()
        .map(|r| {
            let all = mask(&mut r.head_atoms().chain(r.body_obj_atoms()).chain(r.body_subj_atoms()));
            let lower = mask(&mut r.head_atoms().chain(r.body_obj_atoms()));
            (all, lower)
        })
        .collect();

    let mut out: Vec<AtomSet> = (0u64..1 << atoms.len())
        .filter(|&u| rules.iter().all(|&(all, lower)| all & !u == 0 || lower & u == 0))
        .map(|u| {
            (0..atoms.len())
                .filter(|i| u >> i & 1 == 1)
                .map(|i| atoms[i].clone())
                .collect()
        })
        .collect();
    out.sort_by(|a: &AtomSet, b: &AtomSet| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `E_U(Π, W)`: subjective literals of the top whose atom is in `u` become
/// `⊤` if `w` satisfies them and `⊥` otherwise. Other subjective literals are
/// left alone.
pub fn subjective_reduct(top: &Program, u: &AtomSet, w: &WorldView) -> Program {
    rewrite_subjective(
        top,
        |l| u.contains(l.atom()),
        |l| wv_satisfies(w, l),
        ReductKind::G91,
    )
}

/// `W_b ⊔ W_t = { I_b ∪ I_t }` over all pairs.
pub fn wbt(wb: &WorldView, wt: &WorldView) -> WorldView {
    let sets: BTreeSet<_> = wb
        .iter()
        .flat_map(|ib| wt.iter().map(move |it| ib.union(it)))
        .collect();
    WorldView::new(sets).expect("product of non-empty world views is non-empty")
}

/// World views of `p` assembled bottom-up along `u`: each world view of the
/// bottom simplifies the top, and each world view of the simplified top is
/// joined to it with [`wbt`].
pub fn esp_world_views(
    p: &Program,
    u: &AtomSet,
    semantics: Semantics,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    esp_layered(p, std::slice::from_ref(u), semantics, limits)
}

/// Bottom-up composition over nested splitting sets, innermost first. Each
/// set must split the bottom produced by the next one out.
pub fn esp_layered(
    p: &Program,
    layers: &[AtomSet],
    semantics: Semantics,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    let Some((u, inner)) = layers.split_last() else {
        return world_views(p, semantics, limits);
    };
    let sp = split(u, p)?;
    let bottoms = esp_layered(&sp.bottom, inner, semantics, limits)?;
    let mut out = BTreeSet::new();
    for wb in &bottoms {
        let top = subjective_reduct(&sp.top, u, wb);
        for wt in world_views(&top, semantics, limits)? {
            out.insert(wbt(wb, &wt));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{answer_sets, Interpretation};
    use crate::syntax::{atom_set, parse_program};

    fn prog(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn wv(sets: &[&[&str]]) -> WorldView {
        WorldView::from_sets(sets.iter().map(|s| s.iter().copied().collect::<Interpretation>()))
    }

    const PI1: &str = "p | q. :- not K p.";
    const PI62_ELP: &str = "f :- K a. e :- K c. :- not K p.
                            a :- p. a :- q. p :- not K q. q :- not K p. c.";
    const PI3: &str = "e :- h. e :- m, f. ne :- not f, not h. f | h.
                       in :- not K e, not K ne. a :- K in.";

    #[test]
    fn splitting_set_checks() {
        let p = prog(PI1);
        assert!(is_splitting_set(&atom_set(["p", "q"]), &p));
        assert!(is_splitting_set(&p.atoms(), &p));
        assert!(!is_splitting_set(&atom_set(["b"]), &prog("a :- b.")));
    }

    #[test]
    fn split_pi1() {
        let sp = split(&atom_set(["p", "q"]), &prog(PI1)).unwrap();
        assert_eq!(sp.bottom, prog("p | q."));
        assert_eq!(sp.top, prog(":- not K p."));
    }

    #[test]
    fn split_pi3_top_is_r5() {
        let p = prog(PI3);
        let u = atom_set(["e", "h", "m", "f", "ne", "in"]);
        let sp = split(&u, &p).unwrap();
        assert_eq!(sp.top, prog("a :- K in."));
        assert_eq!(sp.bottom.len(), 5);
    }

    #[test]
    fn split_on_whole_universe() {
        let p = prog("a | b. :- not K a. c :- K a. :- b, K a.");
        let sp = split(&p.atoms(), &p).unwrap();
        assert_eq!(sp.top, prog(":- not K a."));
        assert_eq!(sp.bottom, prog("a | b. c :- K a. :- b, K a."));
    }

    #[test]
    fn invalid_split_is_an_error() {
        assert!(matches!(
            split(&atom_set(["b"]), &prog("a :- b.")),
            Err(Error::InvalidSplittingSet(_))
        ));
    }

    #[test]
    fn enumeration() {
        let sets = enumerate_splitting_sets(&prog(PI1), &Limits::default()).unwrap();
        assert!(sets.contains(&atom_set(["p", "q"])));
        assert_eq!(sets.first(), Some(&AtomSet::new()));
        // two independent groups: the lower one splits
        let p = prog("a :- b. b. c :- K a. d :- c.");
        let sets = enumerate_splitting_sets(&p, &Limits::default()).unwrap();
        assert!(sets.contains(&atom_set(["a", "b"])));
        assert!(sets.contains(&p.atoms()));
        assert!(!sets.contains(&atom_set(["a"])));
    }

    #[test]
    fn enumeration_cap() {
        let limits = Limits {
            max_atoms: 2,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_splitting_sets(&prog("a. b. c."), &limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn subjective_reduct_of_the_elp_top() {
        let p = prog(PI62_ELP);
        let u = atom_set(["a", "c", "p", "q"]);
        let sp = split(&u, &p).unwrap();
        assert_eq!(sp.top.rule_set(), prog("f :- K a. e :- K c. :- not K p.").rule_set());
        let t1 = subjective_reduct(&sp.top, &u, &wv(&[&["c", "p", "a"]]));
        assert_eq!(t1.rule_set(), prog("f. e.").rule_set());
        let t2 = subjective_reduct(&sp.top, &u, &wv(&[&["c", "q", "a"]]));
        assert_eq!(t2.rule_set(), prog("f. e. bot.").rule_set());
        assert!(answer_sets(&t2).unwrap().is_empty());
        let untouched = prog("x :- K y.");
        assert_eq!(subjective_reduct(&untouched, &u, &wv(&[&["a"]])), untouched);
    }

    #[test]
    fn wbt_cases() {
        let a = wv(&[&["c", "p", "a"]]);
        assert_eq!(wbt(&a, &wv(&[&["e", "f"]])), wv(&[&["c", "p", "a", "e", "f"]]));
        assert_eq!(wbt(&a, &WorldView::empty_belief()), a);
        assert_eq!(
            wbt(&wv(&[&["a"], &["b"]]), &wv(&[&["x"], &["y"]])),
            wv(&[&["a", "x"], &["a", "y"], &["b", "x"], &["b", "y"]])
        );
    }

    #[test]
    fn esp_on_example_programs() {
        let limits = Limits::default();
        let got = esp_world_views(
            &prog(PI62_ELP),
            &atom_set(["a", "c", "p", "q"]),
            Semantics::G91,
            &limits,
        )
        .unwrap();
        assert_eq!(got, [wv(&[&["c", "p", "a", "e", "f"]])].into());

        let pi0 = prog("a | b. :- not K a.");
        let got = esp_world_views(&pi0, &atom_set(["a", "b"]), Semantics::G91, &limits).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn esp_on_objective_program_is_classic_splitting() {
        let p = prog("a :- not b. b :- not a. c :- not d. d | e.");
        let u = atom_set(["a", "b"]);
        let expected = WorldView::new(answer_sets(&p).unwrap().into_iter().collect()).unwrap();
        for s in Semantics::ALL {
            let got = esp_world_views(&p, &u, s, &Limits::default()).unwrap();
            assert_eq!(expected.len(), 4);
            assert_eq!(got, [expected.clone()].into());
        }
    }

    #[test]
    fn esp_layered_pi3() {
        let layers = [
            atom_set(["e", "h", "m", "f", "ne"]),
            atom_set(["e", "h", "m", "f", "ne", "in"]),
        ];
        let got = esp_layered(&prog(PI3), &layers, Semantics::G91, &Limits::default()).unwrap();
        assert_eq!(got, [wv(&[&["h", "e", "in", "a"], &["f", "in", "a"]])].into());
    }
}
