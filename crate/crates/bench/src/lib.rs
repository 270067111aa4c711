//! Fixtures shared by the benchmarks.

use rand::rngs::StdRng;
use rand::SeedableRng;

use elpsplit_core::generate::{random_splittable, random_stratified, GenParams};
use elpsplit_core::syntax::atom_set;
use elpsplit_core::{parse_program, AtomSet, Program};

pub struct Fixture {
    pub name: &'static str,
    pub program: Program,
    /// Nested splitting sets, innermost first.
    pub layers: Vec<AtomSet>,
}

fn fixture(name: &'static str, text: &str, layers: &[&[&str]]) -> Fixture {
    Fixture {
        name,
        program: parse_program(text).expect("fixture parses"),
        layers: layers.iter().map(|l| atom_set(l.iter().copied())).collect(),
    }
}

pub fn named() -> Vec<Fixture> {
    vec![
        fixture(
            "pi62",
            "f :- K a. e :- K c. :- not K p. a :- p. a :- q. p :- not K q. q :- not K p. c.",
            &[&["a", "c", "p", "q"]],
        ),
        fixture(
            "pi3",
            "e :- h. e :- m, f. ne :- not f, not h. f | h. in :- not K e, not K ne. a :- K in.",
            &[&["e", "h", "m", "f", "ne"], &["e", "h", "m", "f", "ne", "in"]],
        ),
        fixture("pi1", "p | q. :- not K p.", &[&["p", "q"]]),
    ]
}

/// Random programs with a splitting set, of the given size.
pub fn splittable(seed: u64, count: usize, atoms: usize) -> Vec<Fixture> {
    let mut rng = StdRng::seed_from_u64(seed);
    let params = GenParams {
        atoms,
        rules: atoms + atoms / 2,
        max_subjective: 4,
        ..GenParams::default()
    };
    (0..count)
        .map(|_| {
            let (program, u) = random_splittable(&mut rng, &params);
            Fixture {
                name: "random",
                program,
                layers: vec![u],
            }
        })
        .collect()
}

/// Random stratified programs with their level prefixes as layers.
pub fn stratified(seed: u64, count: usize, levels: usize) -> Vec<Fixture> {
    let mut rng = StdRng::seed_from_u64(seed);
    let params = GenParams {
        atoms: 3 * levels,
        rules: 4 * levels,
        max_subjective: 4,
        ..GenParams::default()
    };
    (0..count)
        .map(|_| {
            let (program, layers) = random_stratified(&mut rng, &params, levels);
            Fixture {
                name: "stratified",
                program,
                layers,
            }
        })
        .collect()
}
