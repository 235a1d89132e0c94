//! Outbound sets, elementary loops and the program restrictions `Π_X` and
//! `Π_{X,Y}`.

use crate::atoms::AtomSet;
use crate::error::{Error, Guard, Result};
use crate::graph::{dependency_graph, elementary_subgraph, is_loop};
use crate::program::Program;

/// How `is_elementary_loop` decides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Elementary subgraph when every rule has at most one head atom or the
    /// program is head-cycle-free, subset enumeration otherwise.
    #[default]
    Auto,
    /// Subset enumeration only.
    Definition,
    /// Elementary subgraph regardless of the program; exact only for
    /// head-elementary-loop-free programs.
    AssumeHef,
}

/// A rule projected onto `x` as bitmasks over the positions of `x`:
/// `(A ∩ x, B ∩ x)`, kept only when both are nonempty.
fn projections(p: &Program, x: &AtomSet) -> Vec<(u64, u64)> {
    let mask = |s: &AtomSet| {
        x.iter()
            .enumerate()
            .filter(|(_, a)| s.contains(*a))
            .fold(0u64, |m, (i, _)| m | (1 << i))
    };
    let mut out: Vec<(u64, u64)> = p
        .rules()
        .iter()
        .map(|r| (mask(&r.head), mask(&r.pos)))
        .filter(|&(h, b)| h != 0 && b != 0)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// With `y ⊂ x`, the four outbound conditions reduce to
/// `∅ ≠ A ∩ x ⊆ y` and `∅ ≠ B ∩ x ⊆ x ∖ y`.
fn outbound_mask(rules: &[(u64, u64)], y: u64) -> bool {
    rules.iter().any(|&(h, b)| h & !y == 0 && b & y == 0)
}

/// Some rule has `A ∩ y ≠ ∅`, `B ∩ (x ∖ y) ≠ ∅`, `A ∩ (x ∖ y) = ∅` and
/// `B ∩ y = ∅`.
pub fn is_outbound(p: &Program, y: &AtomSet, x: &AtomSet) -> Result<bool> {
    if !y.is_subset(x) {
        return Err(Error::PreconditionViolated(
            "outbound test needs y ⊆ x".into(),
        ));
    }
    let rest = x.difference(y);
    Ok(p.rules().iter().any(|r| {
        r.head.intersects(y)
            && r.pos.intersects(&rest)
            && !r.head.intersects(&rest)
            && !r.pos.intersects(y)
    }))
}

/// Whether the elementary subgraph characterises elementary loops of `p`.
/// Rules without head atoms never make a set outbound nor add subgraph
/// edges, and doubly negated literals play no part in either, so the
/// nondisjunctive case covers every program with at most one head atom per
/// rule. Head-cycle-free programs are head-elementary-loop-free.
pub fn subgraph_is_exact(p: &Program) -> bool {
    p.rules().iter().all(|r| r.head.len() <= 1) || crate::classify::is_hcf(p)
}

pub fn is_elementary_loop(p: &Program, x: &AtomSet, guard: Guard) -> Result<bool> {
    is_elementary_loop_with(p, x, Method::Auto, guard)
}

pub fn is_elementary_loop_with(
    p: &Program,
    x: &AtomSet,
    method: Method,
    guard: Guard,
) -> Result<bool> {
    if x.is_empty() || !x.is_subset(&p.atoms()) {
        return Ok(false);
    }
    if x.len() == 1 {
        return Ok(true);
    }
    let fast = match method {
        Method::Auto => subgraph_is_exact(p),
        Method::Definition => false,
        Method::AssumeHef => true,
    };
    if fast {
        Ok(elementary_subgraph(p, x)?.is_strongly_connected())
    } else {
        is_elementary_loop_by_definition(p, x, guard)
    }
}

/// Every nonempty proper subset of `x` is outbound in `x`, checked in order
/// of ascending size so that a small counterexample ends the search early.
pub fn is_elementary_loop_by_definition(p: &Program, x: &AtomSet, guard: Guard) -> Result<bool> {
    Ok(non_outbound_subset(p, x, guard)?.is_none() && !x.is_empty() && x.is_subset(&p.atoms()))
}

/// The first nonempty proper subset of `x` (ascending size) that is not
/// outbound in `x`.
pub fn non_outbound_subset(p: &Program, x: &AtomSet, guard: Guard) -> Result<Option<AtomSet>> {
    if x.len() <= 1 {
        return Ok(None);
    }
    guard.check("elementary loop test", x.len())?;
    let rules = projections(p, x);
    let full = (1u64 << x.len()) - 1;
    let mut by_size: Vec<u64> = (1..full).collect();
    by_size.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    Ok(by_size
        .into_iter()
        .find(|&m| !outbound_mask(&rules, m))
        .map(|m| x.select(m)))
}

/// All elementary loops in canonical order.
pub fn elementary_loops(p: &Program, guard: Guard) -> Result<Vec<AtomSet>> {
    elementary_loops_with(p, Method::Auto, guard)
}

pub fn elementary_loops_with(p: &Program, method: Method, guard: Guard) -> Result<Vec<AtomSet>> {
    let comps = dependency_graph(p).sccs();
    for c in &comps {
        guard.check("elementary loop enumeration", c.len())?;
    }
    let fast = match method {
        Method::Auto => subgraph_is_exact(p),
        Method::Definition => false,
        Method::AssumeHef => true,
    };
    let mut out = Vec::new();
    for c in &comps {
        if fast {
            for s in c.subsets_by_size() {
                if s.len() == 1 || elementary_subgraph(p, &s)?.is_strongly_connected() {
                    out.push(s);
                }
            }
        } else {
            out.extend(elementary_within(p, c));
        }
    }
    out.sort();
    Ok(out)
}

/// Elementary loops inside one component. A set is elementary iff every
/// smaller elementary loop inside it is outbound in it, so each candidate is
/// tested only against the elementary loops already found.
pub(crate) fn elementary_within(p: &Program, c: &AtomSet) -> Vec<AtomSet> {
    let n = c.len();
    let rules = projections(p, c);
    let mut found: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut masks: Vec<u64> = (1..(1u64 << n)).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|m| m.count_ones());
    for x in masks {
        // Outbound in x only depends on rules restricted to x.
        let local: Vec<(u64, u64)> = rules
            .iter()
            .map(|&(h, b)| (h & x, b & x))
            .filter(|&(h, b)| h != 0 && b != 0)
            .collect();
        let elementary = found
            .iter()
            .filter(|&&e| e & x == e && e != x)
            .all(|&e| outbound_mask(&local, e));
        if elementary {
            found.push(x);
        }
    }
    found.into_iter().map(|m| c.select(m)).collect()
}

/// `Π_{X,Y}`: rules whose body holds under `x` and whose head atoms outside
/// `y` are all false in `x`.
pub fn restrict_xy(p: &Program, x: &AtomSet, y: &AtomSet) -> Program {
    p.filter(|r| r.body_holds(x) && !r.head.difference(y).intersects(x))
}

/// `Π_X`.
pub fn restrict_x(p: &Program, x: &AtomSet) -> Program {
    restrict_xy(p, x, x)
}

/// A single atom without a self-edge in the dependency graph.
pub fn is_trivial_loop(p: &Program, l: &AtomSet) -> bool {
    match l.as_slice() {
        [a] => {
            p.atoms().contains(*a)
                && !p
                    .rules()
                    .iter()
                    .any(|r| r.head.contains(*a) && r.pos.contains(*a))
        }
        _ => false,
    }
}

/// The comparison notion for nondisjunctive programs: `l` is a nontrivial
/// loop and every proper subset `l'` that is a nontrivial loop has a rule
/// with head in `l'`, positive body disjoint from `l'` and meeting `l`.
pub fn is_gs_elementary(p: &Program, l: &AtomSet) -> Result<bool> {
    if !p.is_nondisjunctive() {
        return Err(Error::PreconditionViolated(
            "this comparison is defined for nondisjunctive programs only".into(),
        ));
    }
    if !is_loop(p, l) || is_trivial_loop(p, l) {
        return Ok(false);
    }
    let nontrivial_loop = |s: &AtomSet| is_loop(p, s) && !is_trivial_loop(p, s);
    Ok(l.proper_subsets_by_size()
        .filter(|s| nontrivial_loop(s))
        .all(|s| {
            p.rules()
                .iter()
                .any(|r| r.head.is_subset(&s) && !r.pos.intersects(&s) && r.pos.intersects(l))
        }))
}
