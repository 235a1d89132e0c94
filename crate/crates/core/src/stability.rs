//! The shrinking operator over candidate unfounded atoms, bounding loops,
//! and stability checking one bounding loop at a time.

use crate::atoms::AtomSet;
use crate::classify::is_hef;
use crate::elementary::{restrict_x, restrict_xy};
use crate::error::{Error, Guard, Result};
use crate::graph::{is_loop, maximal_loops_within};
use crate::program::Program;
use crate::semantics::{is_model, is_supported};
use crate::unfounded::unfounded_subset;

/// Which head condition removes an atom `a` in one step of the operator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Removal {
    /// `A ∩ (x ∪ {a}) = {a}`.
    #[default]
    HeadWithAtom,
    /// `A ∩ x = {a}`; yields the same fixpoint whenever `y ⊆ x`.
    HeadInModel,
}

/// `R^ω(y)` relative to `x`: repeatedly drop, all at once, every atom `a`
/// of the current set `R` that has a rule in `Π_x` whose head meets
/// `x ∪ {a}` exactly in `a` and whose positive body avoids `R`.
pub fn r_omega(p: &Program, x: &AtomSet, y: &AtomSet) -> AtomSet {
    r_omega_with(p, x, y, Removal::HeadWithAtom)
}

pub fn r_omega_with(p: &Program, x: &AtomSet, y: &AtomSet, removal: Removal) -> AtomSet {
    let px = restrict_x(p, x);
    let mut current = y.clone();
    loop {
        let removable: AtomSet = current
            .iter()
            .filter(|&a| {
                px.rules().iter().any(|r| {
                    let head_ok = match removal {
                        Removal::HeadWithAtom => {
                            let mut xa = x.clone();
                            xa.insert(a);
                            r.head.single_common(&xa) == Some(a)
                        }
                        Removal::HeadInModel => r.head.single_common(x) == Some(a),
                    };
                    head_ok && !r.pos.intersects(&current)
                })
            })
            .collect();
        if removable.is_empty() {
            return current;
        }
        current = current.difference(&removable);
    }
}

/// `R^ω(x) = ∅`. This certifies that `x` contains no nonempty unfounded
/// set; the converse holds for head-elementary-loop-free programs.
pub fn unfounded_free_by_r(p: &Program, x: &AtomSet) -> Result<bool> {
    if !x.is_subset(&p.atoms()) {
        return Err(Error::PreconditionViolated(
            "the set must consist of occurring atoms".into(),
        ));
    }
    Ok(r_omega(p, x, x).is_empty())
}

/// Bounding loops of `p` w.r.t. `x`, in canonical order.
///
/// Starting from `x`: shrink with `R^ω` to `z`; if `z` is a loop of
/// `Π_{X,Z}` it is a bounding loop, otherwise continue from each maximal
/// loop of `Π_{X,Z}` inside `z`. Every such loop is a proper subset of `z`,
/// so the recursion terminates.
pub fn bounding_loops(p: &Program, x: &AtomSet) -> Vec<AtomSet> {
    let mut out = Vec::new();
    let mut work = vec![x.clone()];
    while let Some(y) = work.pop() {
        let z = r_omega(p, x, &y);
        if z.is_empty() {
            continue;
        }
        let sub = restrict_xy(p, x, &z);
        if is_loop(&sub, &z) {
            out.push(z);
        } else {
            work.extend(maximal_loops_within(&sub, &z));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A bounding loop with what is known about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingLoop {
    pub atoms: AtomSet,
    /// Whether `Π_{X,Y}` is head-elementary-loop-free; `None` past the guard.
    pub hef_subprogram: Option<bool>,
    /// The first nonempty subset unfounded w.r.t. `x`; `None` also past the guard.
    pub unfounded_witness: Option<AtomSet>,
}

pub fn bounding_loop_report(p: &Program, x: &AtomSet, guard: Guard) -> Vec<BoundingLoop> {
    bounding_loops(p, x)
        .into_iter()
        .map(|y| BoundingLoop {
            hef_subprogram: is_hef(&restrict_xy(p, x, &y), guard).ok(),
            unfounded_witness: unfounded_subset(p, &y, x, guard).ok().flatten(),
            atoms: y,
        })
        .collect()
}

/// `x` is supported and no bounding loop contains a nonempty unfounded
/// set. A bounding loop whose `Π_{X,Y}` is head-elementary-loop-free always
/// contains one; other loops are searched directly, falling back to a
/// search over all of `x` when a loop is too large for either test.
pub fn modular_stable_check(p: &Program, x: &AtomSet, guard: Guard) -> Result<bool> {
    if !is_model(x, p) {
        return Err(Error::PreconditionViolated(
            "modular stability check needs a model".into(),
        ));
    }
    if !is_supported(p, x) {
        return Ok(false);
    }
    for y in bounding_loops(p, x) {
        match is_hef(&restrict_xy(p, x, &y), guard) {
            Ok(true) => return Ok(false),
            _ => match unfounded_subset(p, &y, x, guard) {
                Ok(Some(_)) => return Ok(false),
                Ok(None) => {}
                Err(_) => return Ok(unfounded_subset(p, x, x, guard)?.is_none()),
            },
        }
    }
    Ok(true)
}

/// For comparison only: the maximal loops of `Π_{X,R^ω(X)}` inside
/// `R^ω(x)`.
pub fn baseline_maximal_loops(p: &Program, x: &AtomSet) -> Vec<AtomSet> {
    let z = r_omega(p, x, x);
    maximal_loops_within(&restrict_xy(p, x, &z), &z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_str;
    use crate::semantics::{is_stable, models};

    const CONJUNCTIVE_TRIANGLE: &str = "p :- not s.  p :- r.  q :- r.  r :- p, q.";
    const CHOICE_TRIANGLE: &str = "p :- r. q :- r. r :- p, q. p ; q.";
    const LAYERED: &str = "p :- r. q :- r. r :- p, q. s :- p. s :- t. t :- s, u. \
                       p ; q :- u. s ; t :- q. r ; u :- t. u ; v.";
    const G: Guard = Guard::DEFAULT;

    fn set(p: &Program, names: &[&str]) -> AtomSet {
        p.set_of(names).unwrap()
    }

    #[test]
    fn layered_walkthrough() {
        let p = parse_str(LAYERED).unwrap();
        let x = set(&p, &["p", "q", "r", "s", "t", "u"]);
        let y = r_omega(&p, &x, &x);
        assert_eq!(y, set(&p, &["p", "q", "r", "s", "t"]));
        let sub = restrict_xy(&p, &x, &y);
        assert_eq!(
            maximal_loops_within(&sub, &y),
            vec![set(&p, &["s", "t"]), set(&p, &["p", "q", "r"])]
        );
        assert!(r_omega(&p, &x, &set(&p, &["s", "t"])).is_empty());
        let pqr = set(&p, &["p", "q", "r"]);
        assert_eq!(r_omega(&p, &x, &pqr), pqr);
        assert_eq!(bounding_loops(&p, &x), vec![pqr.clone()]);
        assert!(is_hef(&restrict_xy(&p, &x, &pqr), G).unwrap());
        assert!(!modular_stable_check(&p, &x, G).unwrap());

        let report = bounding_loop_report(&p, &x, G);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].hef_subprogram, Some(true));
        assert!(report[0].unfounded_witness.is_some());
    }

    #[test]
    fn choice_triangle_operator() {
        let p = parse_str(CHOICE_TRIANGLE).unwrap();
        assert!(unfounded_free_by_r(&p, &set(&p, &["p"])).unwrap());
        let pqr = set(&p, &["p", "q", "r"]);
        assert_eq!(r_omega(&p, &pqr, &pqr), pqr);
        assert!(!unfounded_free_by_r(&p, &pqr).unwrap());
        assert_eq!(bounding_loops(&p, &pqr), vec![pqr.clone()]);
        assert!(!modular_stable_check(&p, &pqr, G).unwrap());
        assert!(unfounded_free_by_r(&Program::empty(), &AtomSet::new()).unwrap());
        assert!(bounding_loops(&p, &AtomSet::new()).is_empty());
    }

    #[test]
    fn modular_matches_stability() {
        for text in [
            CONJUNCTIVE_TRIANGLE,
            CHOICE_TRIANGLE,
            LAYERED,
            "p ; q :- r. p ; r :- q. q ; r :- p.",
            "a :- b. b :- a. a ; b :- not c. c ; d.",
        ] {
            let p = parse_str(text).unwrap();
            for x in models(&p, G).unwrap() {
                assert_eq!(
                    modular_stable_check(&p, &x, G).unwrap(),
                    is_stable(&p, &x, G).unwrap(),
                    "{text} {x:?}"
                );
                assert_eq!(
                    r_omega_with(&p, &x, &x, Removal::HeadInModel),
                    r_omega(&p, &x, &x)
                );
            }
        }
        let tri = parse_str(CONJUNCTIVE_TRIANGLE).unwrap();
        assert!(modular_stable_check(&tri, &set(&tri, &["p"]), G).unwrap());
        assert!(modular_stable_check(&tri, &set(&tri, &["q"]), G).is_err());
    }

    #[test]
    fn baseline() {
        let p = parse_str(LAYERED).unwrap();
        let x = set(&p, &["p", "q", "r", "s", "t", "u"]);
        assert_eq!(baseline_maximal_loops(&p, &x).len(), 2);
    }
}
