//! Top-down epistemic splitting.
//!
//! The top is solved first, with every interface literal `K L` replaced by a
//! fresh atom `kl` (and `not K L` by `nkl`). Each world view of that detached
//! top tells which interface literals it assumed, and a bottom world view is
//! accepted when it agrees with those assumptions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::semantics::{is_world_view, world_views, wv_satisfies, Limits, Semantics, WorldView};
use crate::solver::Interpretation;
use crate::splitting::{esp_world_views, split, wbt, Splitting};
use crate::syntax::{Atom, AtomSet, ObjectiveLiteral, Program, Rule, SubjectiveLiteral};

/// Upper bound on the belief sets of a bottom world view when every fulfilling
/// subset is enumerated.
pub const MAX_SUBSET_BASE: usize = 16;

/// One interface literal `K L` and the fresh atoms standing for `K L` and
/// `not K L`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InterfacePair {
    pub literal: ObjectiveLiteral,
    pub positive: Atom,
    pub negative: Atom,
}

impl InterfacePair {
    pub fn know(&self) -> SubjectiveLiteral {
        SubjectiveLiteral::know(self.literal.clone())
    }

    pub fn not_know(&self) -> SubjectiveLiteral {
        SubjectiveLiteral::not_know(self.literal.clone())
    }
}

/// `T'_U(Π)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetachedTop {
    pub u: AtomSet,
    /// The substituted top followed by one `kl | nkl` fact per pair.
    pub program: Program,
    pub pairs: Vec<InterfacePair>,
    substituted: Program,
}

impl DetachedTop {
    /// `f_U(Π)`
    pub fn fresh_atoms(&self) -> AtomSet {
        self.pairs
            .iter()
            .flat_map(|p| [p.positive.clone(), p.negative.clone()])
            .collect()
    }

    /// Removes the fresh atoms from every belief set.
    pub fn strip(&self, w: &WorldView) -> WorldView {
        let fresh = self.fresh_atoms();
        WorldView::from_sets(
            w.iter()
                .map(|i| i.iter().filter(|a| !fresh.contains(*a)).cloned().collect::<Interpretation>()),
        )
    }

    /// Pairs whose fresh atoms occur in some constraint of the detached top.
    fn constrained(&self) -> BTreeSet<&ObjectiveLiteral> {
        let in_constraints: AtomSet = self
            .program
            .rules
            .iter()
            .filter(|r| r.is_constraint())
            .flat_map(|r| r.body_obj_atoms().cloned())
            .collect();
        self.pairs
            .iter()
            .filter(|p| in_constraints.contains(&p.positive) || in_constraints.contains(&p.negative))
            .map(|p| &p.literal)
            .collect()
    }
}

/// `F_U(Π)`: the subjective literals of the top that refer to `U`, together
/// with their epistemic negations.
pub fn interface_literals(sp: &Splitting) -> BTreeSet<SubjectiveLiteral> {
    sp.top
        .subjective_literals()
        .into_iter()
        .filter(|l| sp.u.contains(l.atom()))
        .flat_map(|l| [SubjectiveLiteral::know(l.inner.clone()), SubjectiveLiteral::not_know(l.inner)])
        .collect()
}

fn fresh_pair(literal: &ObjectiveLiteral, taken: &AtomSet) -> (Atom, Atom) {
    let stem = if literal.default_negated {
        format!("not_{}", literal.atom.predicate)
    } else {
        literal.atom.predicate.clone()
    };
    let make = |prefix: &str, suffix: &str| {
        Atom::with_args(format!("{prefix}{stem}{suffix}"), literal.atom.args.clone())
    };
    let mut n = 0usize;
    loop {
        let suffix = if n == 0 { String::new() } else { format!("_{n}") };
        let (k, nk) = (make("k", &suffix), make("nk", &suffix));
        if !taken.contains(&k) && !taken.contains(&nk) {
            return (k, nk);
        }
        n += 1;
    }
}

/// Builds `T'_U(Π)`. For `L = a` the fresh atoms are `ka`/`nka`; for
/// `L = not a` they are `knot_a`/`nknot_a`. Clashes get a `_1`, `_2`, ...
/// suffix.
pub fn detach(sp: &Splitting) -> DetachedTop {
    let mut taken = sp.bottom.atoms();
    taken.extend(sp.top.atoms());

    let mut pairs = Vec::new();
    let mut index: BTreeMap<ObjectiveLiteral, usize> = BTreeMap::new();
    for l in interface_literals(sp) {
        if index.contains_key(&l.inner) {
            continue;
        }
        let (positive, negative) = fresh_pair(&l.inner, &taken);
        taken.insert(positive.clone());
        taken.insert(negative.clone());
        index.insert(l.inner.clone(), pairs.len());
        pairs.push(InterfacePair {
            literal: l.inner,
            positive,
            negative,
        });
    }

    let substituted: Program = sp
        .top
        .rules
        .iter()
        .map(|r| {
            let mut rule = Rule {
                head: r.head.clone(),
                body_obj: r.body_obj.clone(),
                body_subj: BTreeSet::new(),
            };
            for l in &r.body_subj {
                match index.get(&l.inner).filter(|_| sp.u.contains(l.atom())) {
                    Some(&i) => {
                        let pair = &pairs[i];
                        let atom = if l.epistemically_negated {
                            &pair.negative
                        } else {
                            &pair.positive
                        };
                        rule.body_obj.insert(ObjectiveLiteral::pos(atom.clone()));
                    }
                    None => {
                        rule.body_subj.insert(l.clone());
                    }
                }
            }
            rule
        })
        .collect();

    let mut program = substituted.clone();
    program.rules.extend(
        pairs
            .iter()
            .map(|p| Rule::fact([p.positive.clone(), p.negative.clone()])),
    );
    DetachedTop {
        u: sp.u.clone(),
        program,
        pairs,
        substituted,
    }
}

/// Interface world views of the detached top.
///
/// Each choice of `kl` or `nkl` per pair is fixed as a fact and the resulting
/// program is solved on its own, so every world view is homogeneous on every
/// pair. Results are sorted.
pub fn interface_world_views(dt: &DetachedTop, semantics: Semantics, limits: &Limits) -> Result<Vec<WorldView>> {
    let z = dt.pairs.len();
    if z > limits.max_subjective {
        return Err(Error::CapExceeded {
            what: "interface pair",
            found: z,
            limit: limits.max_subjective,
        });
    }
    let mut out = BTreeSet::new();
    for hypothesis in 0u64..1 << z {
        let mut p = dt.substituted.clone();
        p.rules.extend(dt.pairs.iter().enumerate().map(|(i, pair)| {
            let chosen = if hypothesis >> i & 1 == 1 {
                &pair.positive
            } else {
                &pair.negative
            };
            Rule::fact([chosen.clone()])
        }));
        out.extend(world_views(&p, semantics, limits)?);
    }
    Ok(out.into_iter().collect())
}

/// Splits `w` on each pair in turn into the belief sets containing `kl` and
/// the rest, dropping empty fragments.
pub fn split_on_interface(w: &WorldView, dt: &DetachedTop) -> Vec<WorldView> {
    let mut parts: Vec<BTreeSet<Interpretation>> = vec![w.belief_sets().clone()];
    for pair in &dt.pairs {
        parts = parts
            .into_iter()
            .flat_map(|part| {
                let (with, without): (BTreeSet<_>, BTreeSet<_>) =
                    part.into_iter().partition(|i| i.contains(&pair.positive));
                [with, without]
            })
            .filter(|part| !part.is_empty())
            .collect();
    }
    let mut out: Vec<WorldView> = parts.into_iter().filter_map(WorldView::new).collect();
    out.sort();
    out
}

/// `ES`, split into the constraint set `EC` and the requirement set `RQ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequisiteSets {
    pub es: BTreeSet<SubjectiveLiteral>,
    pub ec: BTreeSet<SubjectiveLiteral>,
    pub rq: BTreeSet<SubjectiveLiteral>,
}

fn positives(s: &BTreeSet<SubjectiveLiteral>) -> BTreeSet<SubjectiveLiteral> {
    s.iter().filter(|l| !l.epistemically_negated).cloned().collect()
}

impl RequisiteSets {
    /// The `K L` members of `ec`, leaving out `not K L`.
    pub fn ec_positive(&self) -> BTreeSet<SubjectiveLiteral> {
        positives(&self.ec)
    }

    pub fn rq_positive(&self) -> BTreeSet<SubjectiveLiteral> {
        positives(&self.rq)
    }
}

/// Reads the interface assumptions off an interface world view. A pair goes
/// to `ec` when either of its fresh atoms occurs in a constraint of the
/// detached top.
pub fn requisite_sets(w_prime: &WorldView, dt: &DetachedTop) -> Result<RequisiteSets> {
    let constrained = dt.constrained();
    let mut out = RequisiteSets::default();
    for pair in &dt.pairs {
        let k = w_prime.iter().filter(|i| i.contains(&pair.positive)).count();
        let nk = w_prime.iter().filter(|i| i.contains(&pair.negative)).count();
        let lit = match (k, nk) {
            (k, 0) if k == w_prime.len() => pair.know(),
            (0, nk) if nk == w_prime.len() => pair.not_know(),
            _ => return Err(Error::NotHomogeneous(pair.positive.clone(), pair.negative.clone())),
        };
        if constrained.contains(&pair.literal) {
            out.ec.insert(lit.clone());
        } else {
            out.rq.insert(lit.clone());
        }
        out.es.insert(lit);
    }
    Ok(out)
}

/// `w` satisfies every literal of `e`.
pub fn fulfills(w: &WorldView, e: &BTreeSet<SubjectiveLiteral>) -> bool {
    e.iter().all(|l| wv_satisfies(w, l))
}

/// Replaces each body occurrence of `K L ∈ ec` by `L`.
pub fn top_down_influence(bottom: &Program, ec: &BTreeSet<SubjectiveLiteral>) -> Program {
    bottom
        .rules
        .iter()
        .map(|r| {
            let mut rule = r.clone();
            for l in &r.body_subj {
                if !l.epistemically_negated && ec.contains(l) {
                    rule.body_subj.remove(l);
                    rule.body_obj.insert(l.inner.clone());
                }
            }
            rule
        })
        .collect()
}

/// Which subsets of a bottom world view qualify when `EC` is non-empty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SubsetPolicy {
    #[default]
    Maximal,
    All,
}

/// One top world view and what it asks of the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub interface_world_view: WorldView,
    pub top_world_view: WorldView,
    pub requisites: RequisiteSets,
}

struct TopSide {
    sp: Splitting,
    traces: Vec<Trace>,
}

fn solve_top(p: &Program, u: &AtomSet, semantics: Semantics, limits: &Limits) -> Result<TopSide> {
    let sp = split(u, p)?;
    let dt = detach(&sp);
    let traces = interface_world_views(&dt, semantics, limits)?
        .into_iter()
        .map(|w| {
            Ok(Trace {
                requisites: requisite_sets(&w, &dt)?,
                top_world_view: dt.strip(&w),
                interface_world_view: w,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TopSide { sp, traces })
}

/// Candidate world views built from whole bottom world views that fulfill
/// `ES`.
pub fn tdespb_candidates(
    p: &Program,
    u: &AtomSet,
    semantics: Semantics,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    tdespb_layered(p, std::slice::from_ref(u), semantics, limits)
}

/// [`tdespb_candidates`] over nested splitting sets, innermost first. The
/// bottom of each split is itself composed top-down along the inner sets.
pub fn tdespb_layered(
    p: &Program,
    layers: &[AtomSet],
    semantics: Semantics,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    let Some((u, inner)) = layers.split_last() else {
        return world_views(p, semantics, limits);
    };
    let top = solve_top(p, u, semantics, limits)?;
    let bottoms = tdespb_layered(&top.sp.bottom, inner, semantics, limits)?;
    let mut out = BTreeSet::new();
    for t in &top.traces {
        for wb in bottoms.iter().filter(|wb| fulfills(wb, &t.requisites.es)) {
            out.insert(wbt(wb, &t.top_world_view));
        }
    }
    Ok(out)
}

/// Non-empty subsets of `w` that fulfill `es`.
fn fulfilling_subsets(
    w: &WorldView,
    es: &BTreeSet<SubjectiveLiteral>,
    policy: SubsetPolicy,
) -> Result<Vec<WorldView>> {
    // every fulfilling subset lies inside the belief sets meeting all `K L`
    let required = positives(es);
    let base: Vec<&Interpretation> = w
        .iter()
        .filter(|i| required.iter().all(|l| l.inner.holds_in(i.atoms())))
        .collect();
    match policy {
        SubsetPolicy::Maximal => Ok(WorldView::new(base.into_iter().cloned().collect())
            .filter(|c| fulfills(c, es))
            .into_iter()
            .collect()),
        SubsetPolicy::All => {
            if base.len() > MAX_SUBSET_BASE {
                return Err(Error::CapExceeded {
                    what: "belief set",
                    found: base.len(),
                    limit: MAX_SUBSET_BASE,
                });
            }
            Ok((1u64..1 << base.len())
                .filter_map(|m| {
                    WorldView::new(
                        (0..base.len())
                            .filter(|i| m >> i & 1 == 1)
                            .map(|i| base[i].clone())
                            .collect(),
                    )
                })
                .filter(|c| fulfills(c, es))
                .collect())
        }
    }
}

/// Candidate world views allowing top-down influence and subset selection.
///
/// When a top world view has an empty `EC`, bottom world views are taken
/// whole and must fulfill `RQ`. Otherwise the bottom is first rewritten by
/// [`top_down_influence`] and a non-empty subset of one of its world views
/// that fulfills all of `ES` is selected, according to `policy`.
pub fn tdesp_candidates(
    p: &Program,
    u: &AtomSet,
    semantics: Semantics,
    policy: SubsetPolicy,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    tdesp_layered(p, std::slice::from_ref(u), semantics, policy, limits)
}

pub fn tdesp_layered(
    p: &Program,
    layers: &[AtomSet],
    semantics: Semantics,
    policy: SubsetPolicy,
    limits: &Limits,
) -> Result<BTreeSet<WorldView>> {
    let Some((u, inner)) = layers.split_last() else {
        return world_views(p, semantics, limits);
    };
    let top = solve_top(p, u, semantics, limits)?;
    let mut cache: BTreeMap<BTreeSet<SubjectiveLiteral>, BTreeSet<WorldView>> = BTreeMap::new();
    let mut out = BTreeSet::new();
    for t in &top.traces {
        let ec = &t.requisites.ec;
        if !cache.contains_key(ec) {
            let bottom = top_down_influence(&top.sp.bottom, ec);
            cache.insert(ec.clone(), tdesp_layered(&bottom, inner, semantics, policy, limits)?);
        }
        for wb in &cache[ec] {
            if ec.is_empty() {
                if fulfills(wb, &t.requisites.rq) {
                    out.insert(wbt(wb, &t.top_world_view));
                }
                continue;
            }
            for sub in fulfilling_subsets(wb, &t.requisites.es, policy)? {
                out.insert(wbt(&sub, &t.top_world_view));
            }
        }
    }
    Ok(out)
}

/// Pairwise agreement between the four ways of computing world views.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub esp_eq_direct: bool,
    pub tdespb_eq_direct: bool,
    pub tdesp_eq_direct: bool,
    pub tdespb_eq_esp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub semantics: Semantics,
    pub u: AtomSet,
    pub direct: BTreeSet<WorldView>,
    pub esp: BTreeSet<WorldView>,
    pub tdespb: BTreeSet<WorldView>,
    pub tdesp: BTreeSet<WorldView>,
    /// Whether each TDESP candidate passes the fixpoint check of the
    /// semantics.
    pub tdesp_fixpoint: Vec<(WorldView, bool)>,
    pub traces: Vec<Trace>,
    /// The bottom or the top of the split has no rules.
    pub degenerate: bool,
}

impl EquivalenceReport {
    pub fn verdicts(&self) -> Verdicts {
        Verdicts {
            esp_eq_direct: self.esp == self.direct,
            tdespb_eq_direct: self.tdespb == self.direct,
            tdesp_eq_direct: self.tdesp == self.direct,
            tdespb_eq_esp: self.tdespb == self.esp,
        }
    }
}

pub fn check_equivalence(
    p: &Program,
    u: &AtomSet,
    semantics: Semantics,
    policy: SubsetPolicy,
    limits: &Limits,
) -> Result<EquivalenceReport> {
    let top = solve_top(p, u, semantics, limits)?;
    let tdesp = tdesp_candidates(p, u, semantics, policy, limits)?;
    let tdesp_fixpoint = tdesp
        .iter()
        .map(|w| Ok((w.clone(), is_world_view(p, w, semantics)?)))
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport {
        semantics,
        u: u.clone(),
        direct: world_views(p, semantics, limits)?,
        esp: esp_world_views(p, u, semantics, limits)?,
        tdespb: tdespb_candidates(p, u, semantics, limits)?,
        tdesp,
        tdesp_fixpoint,
        degenerate: top.sp.bottom.is_empty() || top.sp.top.is_empty(),
        traces: top.traces,
    })
}
