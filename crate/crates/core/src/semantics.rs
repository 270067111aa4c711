//! World views of ground epistemic logic programs.
//!
//! A world view is found by guessing a truth value for every distinct `K L`
//! in the program (the value of `not K L` follows), building the objective
//! reduct the chosen semantics prescribes for that guess, and keeping the
//! reduct's answer sets `W` when `W` is non-empty and reproduces the guess.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::solver::{answer_sets, Interpretation};
use crate::syntax::{ObjectiveLiteral, Program, Rule, SubjectiveLiteral};

/// Default cap on distinct `K L` literals (the guess space is `2^k`).
pub const DEFAULT_MAX_SUBJECTIVE: usize = 10;

/// Default cap on atoms for splitting-set enumeration.
pub const DEFAULT_MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_subjective: usize,
    pub max_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subjective: DEFAULT_MAX_SUBJECTIVE,
            max_atoms: DEFAULT_MAX_ATOMS,
        }
    }
}

/// A non-empty set of belief sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldView(BTreeSet<Interpretation>);

impl WorldView {
    /// `None` for an empty collection.
    pub fn new(belief_sets: BTreeSet<Interpretation>) -> Option<Self> {
        (!belief_sets.is_empty()).then_some(WorldView(belief_sets))
    }

    /// Panics on an empty collection.
    pub fn from_sets<I, S>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Interpretation>,
    {
        WorldView::new(sets.into_iter().map(Into::into).collect())
            .expect("a world view needs at least one belief set")
    }

    /// `{∅}`, the identity of [`crate::splitting::wbt`].
    pub fn empty_belief() -> Self {
        WorldView(BTreeSet::from([Interpretation::default()]))
    }

    pub fn belief_sets(&self) -> &BTreeSet<Interpretation> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interpretation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `[ {a,b} {c} ]`
impl fmt::Display for WorldView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in &self.0 {
            write!(f, " {i}")?;
        }
        f.write_str(" ]")
    }
}

/// `W ⊨ K L` iff `L` holds in every belief set; `not K L` is the complement.
pub fn wv_satisfies(w: &WorldView, l: &SubjectiveLiteral) -> bool {
    let known = w.iter().all(|i| l.inner.holds_in(i.atoms()));
    known != l.epistemically_negated
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    G91,
    K15Paper,
    K15Classic,
    S16,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::G91,
        Semantics::K15Paper,
        Semantics::K15Classic,
        Semantics::S16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::G91 => "g91",
            Semantics::K15Paper => "k15",
            Semantics::K15Classic => "k15-classic",
            Semantics::S16 => "s16",
        }
    }

    /// The reduct family used for the fixpoint check. S16 candidates are the
    /// default K15 world views.
    fn reduct_kind(self) -> ReductKind {
        match self {
            Semantics::G91 => ReductKind::G91,
            Semantics::K15Paper | Semantics::S16 => ReductKind::K15(K15Variant::Paper),
            Semantics::K15Classic => ReductKind::K15(K15Variant::Classic),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g91" => Ok(Semantics::G91),
            "k15" | "k15-paper" => Ok(Semantics::K15Paper),
            "k15-classic" => Ok(Semantics::K15Classic),
            "s16" => Ok(Semantics::S16),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// The two readings of the K15 reduct.
///
/// `Paper` applies the two substitution steps literally: every occurrence of
/// a subjective literal that `W` does not satisfy becomes `⊥`, including the
/// `K L` nested inside a satisfied `not K L` (which therefore becomes
/// `not ⊥`, i.e. `⊤`); the remaining `K L` become `L`. `Classic` uses the
/// usual table: unsatisfied literals are `⊥`, satisfied `K L` is `L`,
/// satisfied `not K L` is `⊤`. Both readings yield the same reduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K15Variant {
    Paper,
    Classic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ReductKind {
    G91,
    K15(K15Variant),
}

/// What a subjective body literal turns into.
enum Subst {
    True,
    False,
    Objective(ObjectiveLiteral),
}

fn substitute(kind: ReductKind, lit: &SubjectiveLiteral, truth: bool) -> Subst {
    match kind {
        ReductKind::G91 => {
            if truth {
                Subst::True
            } else {
                Subst::False
            }
        }
        ReductKind::K15(K15Variant::Classic) => match (truth, lit.epistemically_negated) {
            (false, _) => Subst::False,
            (true, false) => Subst::Objective(lit.inner.clone()),
            (true, true) => Subst::True,
        },
        ReductKind::K15(K15Variant::Paper) => {
            // step (i): the literal itself is unsatisfied
            if !truth {
                return Subst::False;
            }
            // a satisfied `not K L` holds an unsatisfied `K L`, which step (i)
            // rewrites to ⊥; `not ⊥` is ⊤
            if lit.epistemically_negated {
                return Subst::True;
            }
            // step (ii)
            Subst::Objective(lit.inner.clone())
        }
    }
}

/// Rewrites every subjective literal for which `select` holds, using `truth`
/// to evaluate it. A rule that receives `⊥` in its body is removed; `⊤` is
/// dropped from the body.
pub(crate) fn rewrite_subjective<S, T>(p: &Program, select: S, truth: T, kind: ReductKind) -> Program
where
    S: Fn(&SubjectiveLiteral) -> bool,
    T: Fn(&SubjectiveLiteral) -> bool,
{
    let mut out = Vec::with_capacity(p.rules.len());
    'rules: for r in &p.rules {
        let mut rule = Rule {
            head: r.head.clone(),
            body_obj: r.body_obj.clone(),
            body_subj: BTreeSet::new(),
        };
        for lit in &r.body_subj {
            if !select(lit) {
                rule.body_subj.insert(lit.clone());
                continue;
            }
            match substitute(kind, lit, truth(lit)) {
                Subst::True => {}
                Subst::False => continue 'rules,
                Subst::Objective(o) => {
                    rule.body_obj.insert(o);
                }
            }
        }
        out.push(rule);
    }
    Program::new(out)
}

/// Every subjective literal becomes `⊤` when `w` satisfies it and `⊥`
/// otherwise.
pub fn g91_reduct(p: &Program, w: &WorldView) -> Program {
    rewrite_subjective(p, |_| true, |l| wv_satisfies(w, l), ReductKind::G91)
}

pub fn k15_reduct(p: &Program, w: &WorldView, variant: K15Variant) -> Program {
    rewrite_subjective(p, |_| true, |l| wv_satisfies(w, l), ReductKind::K15(variant))
}

/// The objective reduct `semantics` uses to test whether `w` is a fixpoint.
pub fn reduct(p: &Program, w: &WorldView, semantics: Semantics) -> Program {
    match semantics.reduct_kind() {
        ReductKind::G91 => g91_reduct(p, w),
        ReductKind::K15(v) => k15_reduct(p, w, v),
    }
}

/// Fixpoint check: `w` equals the set of answer sets of its own reduct.
/// For S16 this checks K15 world-view-hood only; maximality is a property of
/// the whole collection (see [`s16_filter`]).
pub fn is_world_view(p: &Program, w: &WorldView, semantics: Semantics) -> Result<bool> {
    let sets = answer_sets(&reduct(p, w, semantics))?;
    Ok(sets.len() == w.len() && sets.iter().eq(w.iter()))
}

/// The distinct `K L` bases of a program: one per inner objective literal.
pub fn knowledge_bases(p: &Program) -> BTreeSet<ObjectiveLiteral> {
    p.subjective_literals()
        .into_iter()
        .map(|l| l.inner)
        .collect()
}

fn world_views_of_kind(p: &Program, kind: ReductKind, limits: &Limits) -> Result<BTreeSet<WorldView>> {
    let bases: Vec<ObjectiveLiteral> = knowledge_bases(p).into_iter().collect();
    if bases.len() > limits.max_subjective {
        return Err(Error::CapExceeded {
            what: "subjective literal",
            found: bases.len(),
            limit: limits.max_subjective,
        });
    }
    let index: BTreeMap<&ObjectiveLiteral, usize> =
        bases.iter().enumerate().map(|(i, b)| (b, i)).collect();

    let mut out = BTreeSet::new();
    for guess in 0u64..1 << bases.len() {
        let known = |l: &ObjectiveLiteral| guess >> index[l] & 1 == 1;
        let reduct = rewrite_subjective(
            p,
            |_| true,
            |l| known(&l.inner) != l.epistemically_negated,
            kind,
        );
        let Some(w) = WorldView::new(answer_sets(&reduct)?.into_iter().collect()) else {
            continue;
        };
        let consistent = bases
            .iter()
            .all(|b| wv_satisfies(&w, &SubjectiveLiteral::know(b.clone())) == known(b));
        if consistent {
            out.insert(w);
        }
    }
    Ok(out)
}

/// All world views of a ground program under `semantics`, in canonical order.
///
/// For an objective program this is `{ answer_sets(p) }`, or nothing when
/// the program is inconsistent.
pub fn world_views(p: &Program, semantics: Semantics, limits: &Limits) -> Result<BTreeSet<WorldView>> {
    let candidates = world_views_of_kind(p, semantics.reduct_kind(), limits)?;
    Ok(match semantics {
        Semantics::S16 => s16_filter(&candidates, p),
        _ => candidates,
    })
}

/// `K L` literals of `p` that `w` does not satisfy.
pub fn unknown_literals(w: &WorldView, p: &Program) -> BTreeSet<SubjectiveLiteral> {
    knowledge_bases(p)
        .into_iter()
        .map(SubjectiveLiteral::know)
        .filter(|l| !wv_satisfies(w, l))
        .collect()
}

/// Keeps the world views whose set of unknown `K L` literals is maximal with
/// respect to strict inclusion among the candidates.
pub fn s16_filter(candidates: &BTreeSet<WorldView>, p: &Program) -> BTreeSet<WorldView> {
    let unknown: Vec<(&WorldView, BTreeSet<SubjectiveLiteral>)> = candidates
        .iter()
        .map(|w| (w, unknown_literals(w, p)))
        .collect();
    unknown
        .iter()
        .filter(|(_, u)| {
            !unknown
                .iter()
                .any(|(_, other)| u.len() < other.len() && u.is_subset(other))
        })
        .map(|(w, _)| (*w).clone())
        .collect()
}
