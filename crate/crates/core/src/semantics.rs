//! Satisfaction, reducts, stable models and supportedness.

use crate::atoms::{Atom, AtomSet};
use crate::error::{Guard, Result};
use crate::program::{Program, Rule};

pub fn atoms(p: &Program) -> AtomSet {
    p.atoms()
}

/// `x ⊨ B ∧ ¬N ∧ ¬¬D → ⋁A`. A constraint is satisfied only when its body fails.
pub fn satisfies_rule(x: &AtomSet, r: &Rule) -> bool {
    !r.body_holds(x) || r.head.intersects(x)
}

pub fn is_model(x: &AtomSet, p: &Program) -> bool {
    p.rules().iter().all(|r| satisfies_rule(x, r))
}

/// The reduct `p^x`: drop rules whose `F` fails under `x`, strip `F` from
/// the survivors.
pub fn reduct(p: &Program, x: &AtomSet) -> Program {
    p.with_rules(
        p.rules()
            .iter()
            .filter(|r| r.negative_body_holds(x))
            .map(|r| {
                Rule::new(
                    r.head.clone(),
                    r.pos.clone(),
                    AtomSet::new(),
                    AtomSet::new(),
                )
            })
            .collect(),
    )
}

/// Least model of the definite program `{a ← B | A ← B ∈ q, A ∩ x = {a}}`
/// restricted to `x`.
fn singleton_head_closure(q: &Program, x: &AtomSet) -> AtomSet {
    let rules: Vec<(Atom, &AtomSet)> = q
        .rules()
        .iter()
        .filter_map(|r| r.head.single_common(x).map(|a| (a, &r.pos)))
        .filter(|(_, pos)| pos.is_subset(x))
        .collect();
    let mut derived = AtomSet::new();
    loop {
        let before = derived.len();
        for (a, pos) in &rules {
            if !derived.contains(*a) && pos.is_subset(&derived) {
                derived.insert(*a);
            }
        }
        if derived.len() == before {
            return derived;
        }
    }
}

/// Is `x` minimal among the sets satisfying `reduct(p, x)`?
///
/// Only proper subsets of `x` can refute minimality, so the search ranges
/// over `2^|x|` candidates. Before searching, a closure check accepts `x`
/// outright when the rules whose head meets `x` in exactly one atom already
/// derive all of `x`: any model of the reduct inside `x` is closed under
/// those rules.
pub fn is_stable(p: &Program, x: &AtomSet, guard: Guard) -> Result<bool> {
    Ok(smaller_reduct_model(p, x, guard)?.is_none() && is_model(x, &reduct(p, x)))
}

/// A proper subset of `x` that satisfies `reduct(p, x)`, if there is one.
/// Returns `None` also when `x` itself is not a model of the reduct.
pub fn smaller_reduct_model(p: &Program, x: &AtomSet, guard: Guard) -> Result<Option<AtomSet>> {
    let red = reduct(p, x);
    if !is_model(x, &red) {
        return Ok(None);
    }
    if singleton_head_closure(&red, x) == *x {
        return Ok(None);
    }
    guard.check("stability check", x.len())?;
    // Only rules whose body lies inside x can fire on a subset of x.
    let relevant = red.filter(|r| r.pos.is_subset(x));
    Ok(std::iter::once(AtomSet::new())
        .chain(x.proper_subsets_by_size())
        .filter(|y| y.len() < x.len())
        .find(|y| is_model(y, &relevant)))
}

/// All stable models, in canonical order.
pub fn stable_models(p: &Program, guard: Guard) -> Result<Vec<AtomSet>> {
    let universe = p.atoms();
    guard.check("stable model enumeration", universe.len())?;
    let mut out = Vec::new();
    for x in universe.subsets() {
        if is_model(&x, p) && is_stable(p, &x, guard)? {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// All models over `atoms(p)`, in canonical order.
pub fn models(p: &Program, guard: Guard) -> Result<Vec<AtomSet>> {
    let universe = p.atoms();
    guard.check("model enumeration", universe.len())?;
    let mut out: Vec<AtomSet> = universe.subsets().filter(|x| is_model(x, p)).collect();
    out.sort();
    Ok(out)
}

/// Every `a ∈ x` has a rule whose body holds under `x` and whose head meets
/// `x` in exactly `{a}`.
pub fn is_supported(p: &Program, x: &AtomSet) -> bool {
    unsupported_atom(p, x).is_none()
}

pub fn unsupported_atom(p: &Program, x: &AtomSet) -> Option<Atom> {
    let mut supported = AtomSet::new();
    for r in p.rules() {
        if r.body_holds(x) {
            if let Some(a) = r.head.single_common(x) {
                supported.insert(a);
            }
        }
    }
    x.iter().find(|a| !supported.contains(*a))
}
