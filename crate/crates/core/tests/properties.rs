//! Randomised checks against brute-force oracles written independently of
//! the library: rules are kept as bitmasks over five named atoms and every
//! notion is evaluated straight from its definition.

use elemloop::classify::{is_e_tight, is_hcf, is_hef, is_tight, shift};
use elemloop::elementary::{elementary_loops, is_elementary_loop};
use elemloop::graph::loops;
use elemloop::semantics::{models, stable_models};
use elemloop::stability::{bounding_loops, modular_stable_check, r_omega};
use elemloop::unfounded::{
    all_criteria, elementarily_unfounded_sets, is_unfounded, minimal_unfounded_sets,
};
use elemloop::{parse_str, render_program, AtomSet, Guard, Program};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];
const FULL: u32 = (1 << NAMES.len()) - 1;
const G: Guard = Guard::DEFAULT;

#[derive(Clone, Copy, Debug)]
struct R {
    head: u32,
    pos: u32,
    neg: u32,
    dneg: u32,
}

/// Each atom joins the set independently with probability `p`.
fn set_with(p: f64) -> impl Strategy<Value = u32> {
    prop::collection::vec(prop::bool::weighted(p), NAMES.len()).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| 1 << i)
            .sum()
    })
}

fn rule() -> impl Strategy<Value = R> {
    (set_with(0.3), set_with(0.3), set_with(0.12), set_with(0.06)).prop_map(
        |(head, pos, neg, dneg)| R {
            head,
            pos,
            neg,
            dneg,
        },
    )
}

fn rules() -> impl Strategy<Value = Vec<R>> {
    prop::collection::vec(rule(), 0..7)
}

fn text(rs: &[R]) -> String {
    let part = |m: u32, prefix: &str| -> Vec<String> {
        (0..NAMES.len())
            .filter(|i| m >> i & 1 == 1)
            .map(|i| format!("{prefix}{}", NAMES[i]))
            .collect()
    };
    rs.iter()
        .map(|r| {
            let body = [
                part(r.pos, ""),
                part(r.neg, "not "),
                part(r.dneg, "not not "),
            ]
            .concat();
            format!("{} :- {}.\n", part(r.head, "").join(" ; "), body.join(", "))
        })
        .collect()
}

fn mask(p: &Program, s: &AtomSet) -> u32 {
    s.iter()
        .map(|a| 1 << NAMES.iter().position(|n| *n == p.name(a)).unwrap())
        .sum()
}

fn unmask(p: &Program, m: u32) -> AtomSet {
    (0..NAMES.len())
        .filter(|i| m >> i & 1 == 1)
        .filter_map(|i| p.table().get(NAMES[i]))
        .collect()
}

fn masks(p: &Program, sets: &[AtomSet]) -> Vec<u32> {
    let mut v: Vec<u32> = sets.iter().map(|s| mask(p, s)).collect();
    v.sort();
    v
}

fn subsets(m: u32) -> impl Iterator<Item = u32> {
    (0..=m).filter(move |s| s & !m == 0)
}

fn mentioned(rs: &[R]) -> u32 {
    rs.iter()
        .fold(0, |acc, r| acc | r.head | r.pos | r.neg | r.dneg)
}

fn body_holds(r: &R, x: u32) -> bool {
    r.pos & !x == 0 && r.neg & x == 0 && r.dneg & !x == 0
}

fn is_model(rs: &[R], x: u32) -> bool {
    rs.iter().all(|r| !body_holds(r, x) || r.head & x != 0)
}

fn is_stable(rs: &[R], x: u32) -> bool {
    let reduct: Vec<R> = rs
        .iter()
        .filter(|r| r.neg & x == 0 && r.dneg & !x == 0)
        .map(|r| R {
            neg: 0,
            dneg: 0,
            ..*r
        })
        .collect();
    is_model(rs, x) && subsets(x).all(|y| y == x || !is_model(&reduct, y))
}

fn successors(rs: &[R], a: usize) -> u32 {
    rs.iter()
        .filter(|r| r.head >> a & 1 == 1)
        .fold(0, |acc, r| acc | r.pos)
}

fn reach(rs: &[R], from: usize, within: u32) -> u32 {
    let mut seen = 1 << from;
    loop {
        let next = (0..NAMES.len())
            .filter(|i| seen >> i & 1 == 1)
            .fold(seen, |acc, i| acc | successors(rs, i) & within);
        if next == seen {
            return seen;
        }
        seen = next;
    }
}

fn is_loop(rs: &[R], l: u32) -> bool {
    l != 0
        && (0..NAMES.len())
            .filter(|i| l >> i & 1 == 1)
            .all(|i| reach(rs, i, l) == l)
}

fn outbound(rs: &[R], y: u32, x: u32) -> bool {
    let rest = x & !y;
    rs.iter()
        .any(|r| r.head & y != 0 && r.pos & rest != 0 && r.pos & y == 0 && r.head & rest == 0)
}

fn is_elementary(rs: &[R], x: u32) -> bool {
    is_loop(rs, x) && subsets(x).all(|y| y == 0 || y == x || outbound(rs, y, x))
}

fn unfounded(rs: &[R], y: u32, x: u32) -> bool {
    rs.iter()
        .all(|r| r.head & y == 0 || !body_holds(r, x) || r.pos & y != 0 || r.head & !y & x != 0)
}

/// A nonempty set in which every atom depends on another member.
fn has_cycle(rs: &[R]) -> bool {
    subsets(mentioned(rs))
        .any(|l| l != 0 && (0..NAMES.len()).all(|i| l >> i & 1 == 0 || successors(rs, i) & l != 0))
}

fn head_cycle(rs: &[R]) -> bool {
    rs.iter().any(|r| {
        (0..NAMES.len()).any(|i| {
            (0..NAMES.len()).any(|j| {
                i != j
                    && r.head >> i & 1 == 1
                    && r.head >> j & 1 == 1
                    && reach(rs, i, FULL) >> j & 1 == 1
                    && reach(rs, j, FULL) >> i & 1 == 1
            })
        })
    })
}

fn parsed(rs: &[R]) -> Program {
    parse_str(&text(rs)).expect("generated text parses")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(rs in rules()) {
        let p = parsed(&rs);
        let again = parse_str(&render_program(&p)).unwrap();
        prop_assert_eq!(render_program(&again), render_program(&p));
        prop_assert!(again.same_structure(&p));
    }

    #[test]
    fn models_and_stable_models_match_definitions(rs in rules()) {
        let p = parsed(&rs);
        let atoms = mentioned(&rs);
        let want_models: Vec<u32> = subsets(atoms).filter(|&x| is_model(&rs, x)).collect();
        let want_stable: Vec<u32> = want_models.iter().copied().filter(|&x| is_stable(&rs, x)).collect();
        prop_assert_eq!(masks(&p, &models(&p, G).unwrap()), want_models);
        prop_assert_eq!(masks(&p, &stable_models(&p, G).unwrap()), want_stable);
    }

    #[test]
    fn loops_and_elementary_loops_match_definitions(rs in rules()) {
        let p = parsed(&rs);
        let atoms = mentioned(&rs);
        let want_loops: Vec<u32> = subsets(atoms).filter(|&l| is_loop(&rs, l)).collect();
        let want_el: Vec<u32> = want_loops.iter().copied().filter(|&l| is_elementary(&rs, l)).collect();
        prop_assert_eq!(masks(&p, &loops(&p, G).unwrap()), want_loops);
        prop_assert_eq!(masks(&p, &elementary_loops(&p, G).unwrap()), want_el.clone());
        for x in subsets(atoms).filter(|&x| x != 0) {
            prop_assert_eq!(is_elementary_loop(&p, &unmask(&p, x), G).unwrap(), want_el.contains(&x));
        }
    }

    #[test]
    fn every_criterion_decides_stability(rs in rules()) {
        let p = parsed(&rs);
        for x in models(&p, G).unwrap() {
            let want = is_stable(&rs, mask(&p, &x));
            for v in all_criteria(&p, &x, G).unwrap() {
                prop_assert_eq!(v.holds, want, "criterion {}", v.criterion);
            }
            prop_assert_eq!(modular_stable_check(&p, &x, G).unwrap(), want);
        }
    }

    #[test]
    fn unfounded_sets_match_definition(rs in rules()) {
        let p = parsed(&rs);
        let atoms = mentioned(&rs);
        for x in subsets(atoms).filter(|&x| is_model(&rs, x)) {
            let xs = unmask(&p, x);
            let all: Vec<u32> = subsets(atoms).filter(|&y| y != 0 && unfounded(&rs, y, x)).collect();
            for y in subsets(atoms) {
                prop_assert_eq!(is_unfounded(&p, &unmask(&p, y), &xs), y == 0 || all.contains(&y));
            }
            let minimal: Vec<u32> = all.iter().copied().filter(|&y| all.iter().all(|&z| z == y || z & !y != 0)).collect();
            prop_assert_eq!(masks(&p, &minimal_unfounded_sets(&p, &xs, G).unwrap()), minimal.clone());
            // Stable models are exactly the models without nonempty unfounded subsets.
            prop_assert_eq!(is_stable(&rs, x), !all.iter().any(|&y| y & !x == 0));
            for y in elementarily_unfounded_sets(&p, &xs, G).unwrap() {
                prop_assert!(all.contains(&mask(&p, &y)));
            }
        }
    }

    #[test]
    fn shrinking_and_bounding_loops_stay_inside(rs in rules()) {
        let p = parsed(&rs);
        for x in models(&p, G).unwrap() {
            let xm = mask(&p, &x);
            let z = mask(&p, &r_omega(&p, &x, &x));
            prop_assert_eq!(z & !xm, 0);
            // Whatever the operator removes cannot belong to an unfounded subset of x.
            let atoms = mentioned(&rs);
            for y in subsets(atoms).filter(|&y| y != 0 && y & !xm == 0 && unfounded(&rs, y, xm)) {
                prop_assert_eq!(y & !z, 0);
            }
            for l in bounding_loops(&p, &x) {
                prop_assert_eq!(mask(&p, &l) & !z, 0);
            }
        }
    }

    #[test]
    fn classes_match_definitions(rs in rules()) {
        let p = parsed(&rs);
        prop_assert_eq!(is_tight(&p), !has_cycle(&rs));
        prop_assert_eq!(is_e_tight(&p), is_tight(&p));
        prop_assert_eq!(is_hcf(&p), !head_cycle(&rs));
        if is_hcf(&p) {
            prop_assert!(is_hef(&p, G).unwrap());
        }
    }

    #[test]
    fn shifting_head_elementary_loop_free_programs_keeps_stable_models(rs in rules()) {
        let p = parsed(&rs);
        prop_assume!(is_hef(&p, G).unwrap());
        let shifted = shift(&p);
        let want: Vec<u32> = subsets(mentioned(&rs)).filter(|&x| is_stable(&rs, x)).collect();
        prop_assert_eq!(masks(&p, &stable_models(&shifted, G).unwrap()), want);
    }
}

#[test]
fn generated_programs_are_varied() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let (mut cyclic, mut disjunctive_cyclic, mut several_stable) = (0, 0, 0);
    for _ in 0..256 {
        let rs = rules().new_tree(&mut runner).unwrap().current();
        cyclic += has_cycle(&rs) as u32;
        disjunctive_cyclic += head_cycle(&rs) as u32;
        several_stable += (subsets(mentioned(&rs))
            .filter(|&x| is_stable(&rs, x))
            .count()
            > 1) as u32;
    }
    eprintln!("cyclic {cyclic}  head cycles {disjunctive_cyclic}  several stable {several_stable}");
    assert!(cyclic > 25 && disjunctive_cyclic > 5 && several_stable > 10);
}
