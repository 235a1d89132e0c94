//! Program classes, shifting, inherent tightness and the reduction from
//! unfounded-freeness to elementary-loop recognition.

use std::collections::VecDeque;

use crate::atoms::{Atom, AtomSet};
use crate::elementary::{elementary_within, is_trivial_loop, restrict_x};
use crate::error::{Guard, Result};
use crate::graph::{dependency_graph, is_loop, Digraph};
use crate::program::{Program, Rule};
use crate::semantics::is_supported;

/// No self-edge and no strongly connected component with two atoms: every
/// loop is trivial.
pub fn is_tight(p: &Program) -> bool {
    let g = dependency_graph(p);
    g.edges().iter().all(|(a, b)| a != b) && g.sccs().iter().all(|c| c.len() == 1)
}

/// Vertex set of a shortest cycle of `g`, ties broken by the smallest start
/// atom. `None` when `g` is acyclic.
pub fn shortest_cycle(g: &Digraph) -> Option<AtomSet> {
    let vs: Vec<Atom> = g.vertices().iter().collect();
    let pos = |a: Atom| vs.binary_search(&a).unwrap();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); vs.len()];
    for &(a, b) in g.edges() {
        succ[pos(a)].push(pos(b));
    }
    let mut best: Option<Vec<usize>> = None;
    for start in 0..vs.len() {
        let mut parent: Vec<Option<usize>> = vec![None; vs.len()];
        let mut seen = vec![false; vs.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut closing = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &v in &succ[u] {
                if v == start {
                    closing = Some(u);
                    break 'bfs;
                }
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if let Some(mut u) = closing {
            let mut cycle = vec![u];
            while let Some(q) = parent[u] {
                cycle.push(q);
                u = q;
            }
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best.map(|c| c.into_iter().map(|i| vs[i]).collect())
}

/// A nontrivial loop, when `p` is not tight.
pub fn tight_witness(p: &Program) -> Option<AtomSet> {
    shortest_cycle(&dependency_graph(p))
}

/// Every elementary loop is trivial. A program is e-tight exactly when it
/// is tight, so this is answered without enumeration.
pub fn is_e_tight(p: &Program) -> bool {
    is_tight(p)
}

/// Enumerates elementary loops and checks that each is trivial.
pub fn is_e_tight_by_enumeration(p: &Program, guard: Guard) -> Result<bool> {
    Ok(crate::elementary::elementary_loops(p, guard)?
        .iter()
        .all(|l| is_trivial_loop(p, l)))
}

/// No rule has two head atoms in one strongly connected component. Every
/// loop lies inside a component and every component is a loop, so this is
/// the head-cycle-free condition.
pub fn is_hcf(p: &Program) -> bool {
    hcf_witness(p).is_none()
}

/// The first rule (by index) whose head meets a component twice, and that
/// component.
pub fn hcf_witness(p: &Program) -> Option<(usize, AtomSet)> {
    let comps = dependency_graph(p).sccs();
    p.rules().iter().enumerate().find_map(|(i, r)| {
        if r.head.len() < 2 {
            return None;
        }
        comps
            .iter()
            .find(|c| r.head.intersection_len(c) >= 2)
            .map(|c| (i, c.clone()))
    })
}

/// No rule has two head atoms in one elementary loop.
pub fn is_hef(p: &Program, guard: Guard) -> Result<bool> {
    Ok(hef_witness(p, guard)?.is_none())
}

/// The smallest violating elementary loop (canonical order) with the first
/// rule whose head meets it twice. Only components that some head meets
/// twice can hold a violation, so only those are enumerated.
pub fn hef_witness(p: &Program, guard: Guard) -> Result<Option<(usize, AtomSet)>> {
    let comps = dependency_graph(p).sccs();
    let suspects: Vec<&AtomSet> = comps
        .iter()
        .filter(|c| p.rules().iter().any(|r| r.head.intersection_len(c) >= 2))
        .collect();
    for c in &suspects {
        guard.check("head-elementary-loop-free test", c.len())?;
    }
    let mut best: Option<(usize, AtomSet)> = None;
    for c in suspects {
        for l in elementary_within(p, c) {
            if l.len() < 2 || best.as_ref().is_some_and(|(_, b)| *b <= l) {
                continue;
            }
            if let Some(i) = p
                .rules()
                .iter()
                .position(|r| r.head.intersection_len(&l) >= 2)
            {
                best = Some((i, l));
            }
        }
    }
    Ok(best)
}

/// Replace every rule with `k > 1` head atoms by `k` rules, one per head
/// atom, each negating the other head atoms in its body. The replacements
/// take the original rule's position, in head-atom order.
pub fn shift(p: &Program) -> Program {
    let mut rules = Vec::with_capacity(p.len());
    for r in p.rules() {
        if r.head.len() <= 1 {
            rules.push(r.clone());
            continue;
        }
        for a in &r.head {
            let mut others = r.head.clone();
            others.remove(a);
            rules.push(Rule::new(
                AtomSet::singleton(a),
                r.pos.clone(),
                r.neg.union(&others),
                r.dneg.clone(),
            ));
        }
    }
    p.with_rules(rules)
}

/// Some tight subset of `p` supports `x`.
///
/// Decided by derivation: starting from nothing, admit `a ∈ x` once a rule
/// of `Π_x` has `A ∩ x = {a}` and its positive body already admitted. The
/// rules used along the way form an acyclic supporting subset; conversely a
/// tight supporting subset orders `x` so that this derivation admits it.
pub fn is_inherently_tight(p: &Program, x: &AtomSet) -> bool {
    let px = restrict_x(p, x);
    let support: Vec<(Atom, &AtomSet)> = px
        .rules()
        .iter()
        .filter_map(|r| r.head.single_common(x).map(|a| (a, &r.pos)))
        .collect();
    let mut derived = AtomSet::new();
    loop {
        let before = derived.len();
        for (a, pos) in &support {
            if !derived.contains(*a) && pos.is_subset(&derived) {
                derived.insert(*a);
            }
        }
        if derived.len() == before {
            break;
        }
    }
    derived == *x
}

/// Brute force over every subset of the rules of `p`.
pub fn is_inherently_tight_by_subsets(p: &Program, x: &AtomSet, guard: Guard) -> Result<bool> {
    guard.check("rule subset enumeration", p.len())?;
    let n = p.len();
    Ok((0..(1u64 << n)).any(|mask| {
        let sub: Vec<Rule> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| p.rules()[i].clone())
            .collect();
        let q = p.with_rules(sub);
        is_tight(&q) && is_supported(&q, x)
    }))
}

/// A program `q` and fresh atom `e` for which `x ∪ {e}` is an elementary
/// loop of `q` exactly when `x` contains no nonempty unfounded set of `p`
/// w.r.t. `x`: each rule `A ← B, F` of `Π_x` becomes `A ← e, B, F`, and
/// `e ← a` is added for each `a ∈ x ∪ {e}`.
pub fn unfoundedfree_reduction(p: &Program, x: &AtomSet) -> (Program, Atom) {
    let mut table = p.table().clone();
    let e = table.intern(&p.table().fresh_name("e"));
    let mut rules: Vec<Rule> = restrict_x(p, x)
        .rules()
        .iter()
        .map(|r| {
            let mut pos = r.pos.clone();
            pos.insert(e);
            Rule::new(r.head.clone(), pos, r.neg.clone(), r.dneg.clone())
        })
        .collect();
    for a in x.iter().chain(std::iter::once(e)) {
        rules.push(Rule::new(
            AtomSet::singleton(e),
            AtomSet::singleton(a),
            AtomSet::new(),
            AtomSet::new(),
        ));
    }
    (Program::new(table, rules), e)
}

/// Class membership of a program with one witness per failed class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub tight: bool,
    pub e_tight: bool,
    pub hcf: bool,
    /// `None` when the test exceeded the guard.
    pub hef: Option<bool>,
    pub tight_witness: Option<AtomSet>,
    pub hcf_witness: Option<(usize, AtomSet)>,
    pub hef_witness: Option<(usize, AtomSet)>,
}

pub fn classify(p: &Program, guard: Guard) -> ClassReport {
    let tight_witness = tight_witness(p);
    let hcf_witness = hcf_witness(p);
    let hef = hef_witness(p, guard).ok();
    debug_assert!(tight_witness.as_ref().is_none_or(|w| is_loop(p, w)));
    ClassReport {
        tight: tight_witness.is_none(),
        e_tight: tight_witness.is_none(),
        hcf: hcf_witness.is_none(),
        hef: hef.as_ref().map(Option::is_none),
        tight_witness,
        hcf_witness,
        hef_witness: hef.flatten(),
    }
}
