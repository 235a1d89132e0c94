//! External support, loop formulas, unfounded and elementarily unfounded
//! sets, and the equivalent characterisations of stable models.

use std::fmt;
use std::str::FromStr;

use crate::atoms::AtomSet;
use crate::elementary::{elementary_loops, is_elementary_loop, restrict_xy};
use crate::error::{Error, Guard, Result};
use crate::graph::loops;
use crate::program::Program;
use crate::semantics::{is_model, smaller_reduct_model};

/// `x ⊨ ES(y)`: some rule with head meeting `y` and positive body outside
/// `y` has its body true in `x` and its other head atoms false in `x`.
pub fn externally_supported(p: &Program, y: &AtomSet, x: &AtomSet) -> bool {
    p.rules().iter().any(|r| {
        r.head.intersects(y)
            && !r.pos.intersects(y)
            && r.body_holds(x)
            && !r.head.difference(y).intersects(x)
    })
}

/// `x ⊨ (⋀y → ES(y))`.
pub fn loop_formula_holds(p: &Program, y: &AtomSet, x: &AtomSet) -> Result<bool> {
    if y.is_empty() {
        return Err(Error::PreconditionViolated(
            "loop formula of the empty set".into(),
        ));
    }
    Ok(!y.is_subset(x) || externally_supported(p, y, x))
}

/// The loop formula of `y` as text, for inspection: `⊤`, `⊥`, `¬`, `∧`,
/// `∨` and `→` over atom names.
pub fn loop_formula_text(p: &Program, y: &AtomSet) -> String {
    let t = p.table();
    let conj = |parts: Vec<String>| {
        if parts.is_empty() {
            "⊤".to_string()
        } else {
            parts.join(" ∧ ")
        }
    };
    let disjuncts: Vec<String> = p
        .rules()
        .iter()
        .filter(|r| r.head.intersects(y) && !r.pos.intersects(y))
        .map(|r| {
            let mut parts: Vec<String> = r.pos.iter().map(|a| t.name(a).to_owned()).collect();
            parts.extend(r.neg.iter().map(|a| format!("¬{}", t.name(a))));
            parts.extend(r.dneg.iter().map(|a| format!("¬¬{}", t.name(a))));
            parts.extend(
                r.head
                    .difference(y)
                    .iter()
                    .map(|a| format!("¬{}", t.name(a))),
            );
            let c = conj(parts);
            if c.contains(" ∧ ") {
                format!("({c})")
            } else {
                c
            }
        })
        .collect();
    let support = if disjuncts.is_empty() {
        "⊥".to_string()
    } else {
        disjuncts.join(" ∨ ")
    };
    let mut lhs: Vec<&str> = y.iter().map(|a| t.name(a)).collect();
    lhs.sort_unstable();
    format!("{} → {}", lhs.join(" ∧ "), support)
}

/// Not externally supported. The empty set is always unfounded.
pub fn is_unfounded(p: &Program, y: &AtomSet, x: &AtomSet) -> bool {
    !externally_supported(p, y, x)
}

/// The first nonempty subset of `y` (ascending size) unfounded w.r.t. `x`.
pub fn unfounded_subset(
    p: &Program,
    y: &AtomSet,
    x: &AtomSet,
    guard: Guard,
) -> Result<Option<AtomSet>> {
    guard.check("unfounded subset search", y.len())?;
    Ok(y.subsets_by_size().find(|z| is_unfounded(p, z, x)))
}

fn require_occurring(p: &Program, y: &AtomSet) -> Result<()> {
    if y.is_empty() || !y.is_subset(&p.atoms()) {
        return Err(Error::PreconditionViolated(
            "elementarily unfounded sets are nonempty sets of occurring atoms".into(),
        ));
    }
    Ok(())
}

/// An unfounded singleton, or an unfounded elementary loop of `Π_{X,Y}`.
pub fn is_elementarily_unfounded(
    p: &Program,
    y: &AtomSet,
    x: &AtomSet,
    guard: Guard,
) -> Result<bool> {
    require_occurring(p, y)?;
    if !is_unfounded(p, y, x) {
        return Ok(false);
    }
    if y.len() == 1 {
        return Ok(true);
    }
    is_elementary_loop(&restrict_xy(p, x, y), y, guard)
}

/// All elementarily unfounded sets w.r.t. `x`, in canonical order.
///
/// Every atom of a non-singleton elementary loop of `Π_{X,Y}` is in the
/// positive body of a rule whose body holds in `x`, so beyond singletons
/// only subsets of `x` need to be examined.
pub fn elementarily_unfounded_sets(p: &Program, x: &AtomSet, guard: Guard) -> Result<Vec<AtomSet>> {
    let occurring = p.atoms();
    let inside = x.intersection(&occurring);
    guard.check("elementarily unfounded set enumeration", inside.len())?;
    let mut out: Vec<AtomSet> = occurring
        .iter()
        .map(AtomSet::singleton)
        .filter(|y| is_unfounded(p, y, x))
        .collect();
    for y in inside.subsets_by_size().filter(|y| y.len() >= 2) {
        if is_unfounded(p, &y, x) && is_elementary_loop(&restrict_xy(p, x, &y), &y, guard)? {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// Brute force: nonempty sets of occurring atoms that are unfounded w.r.t.
/// `x` and have no nonempty unfounded proper subset.
pub fn minimal_unfounded_sets(p: &Program, x: &AtomSet, guard: Guard) -> Result<Vec<AtomSet>> {
    let occurring = p.atoms();
    guard.check("minimal unfounded set enumeration", occurring.len())?;
    let mut out: Vec<AtomSet> = Vec::new();
    for y in occurring.subsets_by_size() {
        if out.iter().any(|m| m.is_subset(&y)) {
            continue;
        }
        if is_unfounded(p, &y, x) {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// The equivalent conditions under which a model is stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabilityCriterion {
    /// Minimal model of the reduct.
    A,
    /// Every nonempty set of occurring atoms satisfies its loop formula.
    B,
    /// No nonempty subset of the model is unfounded.
    Bprime,
    /// Every loop satisfies its loop formula.
    C,
    /// Every elementary loop satisfies its loop formula.
    D,
    /// Every set maximal among those that are elementary loops of their own
    /// `Π_{X,Z}`, and every occurring singleton, satisfies its loop formula.
    E,
    /// The model contains no elementarily unfounded set.
    Eprime,
}

impl StabilityCriterion {
    pub const ALL: [StabilityCriterion; 7] = [
        StabilityCriterion::A,
        StabilityCriterion::B,
        StabilityCriterion::Bprime,
        StabilityCriterion::C,
        StabilityCriterion::D,
        StabilityCriterion::E,
        StabilityCriterion::Eprime,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StabilityCriterion::A => "a",
            StabilityCriterion::B => "b",
            StabilityCriterion::Bprime => "bprime",
            StabilityCriterion::C => "c",
            StabilityCriterion::D => "d",
            StabilityCriterion::E => "e",
            StabilityCriterion::Eprime => "eprime",
        }
    }
}

impl fmt::Display for StabilityCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StabilityCriterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        StabilityCriterion::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown criterion `{s}`"))
    }
}

/// The outcome of one criterion. `witness` is the first set (canonical
/// order) that makes the criterion fail; for `A` it is a smaller model of
/// the reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub criterion: StabilityCriterion,
    pub holds: bool,
    pub witness: Option<AtomSet>,
}

pub fn stable_via(p: &Program, x: &AtomSet, c: StabilityCriterion, guard: Guard) -> Result<bool> {
    Ok(stable_via_witness(p, x, c, guard)?.holds)
}

pub fn stable_via_witness(
    p: &Program,
    x: &AtomSet,
    c: StabilityCriterion,
    guard: Guard,
) -> Result<Verdict> {
    if !x.is_subset(&p.atoms()) || !is_model(x, p) {
        return Err(Error::PreconditionViolated(
            "stability criteria apply to models over occurring atoms".into(),
        ));
    }
    let lf_holds = |y: &AtomSet| !y.is_subset(x) || externally_supported(p, y, x);
    let first_failing = |candidates: Vec<AtomSet>| candidates.into_iter().find(|y| !lf_holds(y));
    let witness = match c {
        StabilityCriterion::A => smaller_reduct_model(p, x, guard)?,
        StabilityCriterion::B => {
            let occurring = p.atoms();
            guard.check("loop formula sweep", occurring.len())?;
            let found = occurring.subsets_by_size().find(|y| !lf_holds(y));
            found
        }
        StabilityCriterion::Bprime => unfounded_subset(p, x, x, guard)?,
        StabilityCriterion::C => first_failing(loops(p, guard)?),
        StabilityCriterion::D => first_failing(elementary_loops(p, guard)?),
        StabilityCriterion::E => first_failing(maximal_self_elementary(p, x, guard)?),
        StabilityCriterion::Eprime => elementarily_unfounded_sets(p, x, guard)?
            .into_iter()
            .find(|y| y.is_subset(x)),
    };
    Ok(Verdict {
        criterion: c,
        holds: witness.is_none(),
        witness,
    })
}

/// Sets maximal among those `Z` that are elementary loops of `Π_{X,Z}`,
/// together with every occurring singleton, in canonical order. Only sets
/// inside `x` can fail a loop formula, and non-singleton members of the
/// family lie inside `x`, so singletons outside `x` are the only members
/// taken from beyond it.
pub fn maximal_self_elementary(p: &Program, x: &AtomSet, guard: Guard) -> Result<Vec<AtomSet>> {
    let occurring = p.atoms();
    let inside = x.intersection(&occurring);
    guard.check("maximal elementary set enumeration", inside.len())?;
    let mut family = Vec::new();
    for z in inside.subsets_by_size() {
        if is_elementary_loop(&restrict_xy(p, x, &z), &z, guard)? {
            family.push(z);
        }
    }
    let mut out: Vec<AtomSet> = family
        .iter()
        .filter(|z| !family.iter().any(|w| z.is_proper_subset(w)))
        .cloned()
        .collect();
    for a in &occurring {
        let s = AtomSet::singleton(a);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// Every criterion evaluated on `x`.
pub fn all_criteria(p: &Program, x: &AtomSet, guard: Guard) -> Result<Vec<Verdict>> {
    StabilityCriterion::ALL
        .iter()
        .map(|&c| stable_via_witness(p, x, c, guard))
        .collect()
}
