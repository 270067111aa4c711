mod common;

use elpsplit_core::{stratify, world_views, Limits, Semantics};

// A subjective constraint passes the level test but can still rule out every
// candidate, so stratification alone does not promise a world view.
#[test]
fn stratified_constraint_can_leave_no_world_view() {
    let p = common::prog("p | q. :- not K p.");
    assert!(stratify(&p).is_stratified());
    assert!(common::stratifiable(&p));
    for s in Semantics::ALL {
        assert!(world_views(&p, s, &Limits::default()).unwrap().is_empty(), "{s:?}");
    }
}

#[test]
fn constraint_free_stratified_program_has_one_world_view() {
    let p = common::prog(include_str!("../../../programs/pi3.elp"));
    assert!(stratify(&p).is_stratified());
    for s in Semantics::ALL {
        assert_eq!(world_views(&p, s, &Limits::default()).unwrap().len(), 1, "{s:?}");
    }
}
