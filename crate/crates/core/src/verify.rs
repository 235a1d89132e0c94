//! Seeded random programs and the cross-module property catalogue.
//!
//! Every property is checked on every generated program. A failing program
//! is shrunk greedily, rules first and then atoms, while the same property
//! still fails.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::atoms::{AtomSet, AtomTable};
use crate::classify::{
    is_e_tight_by_enumeration, is_hcf, is_hef, is_inherently_tight, is_inherently_tight_by_subsets,
    is_tight, shift, unfoundedfree_reduction,
};
use crate::elementary::{
    elementary_loops, is_elementary_loop, is_elementary_loop_by_definition,
    is_elementary_loop_with, is_gs_elementary, is_outbound, is_trivial_loop, restrict_x,
    restrict_xy, Method,
};
use crate::error::{Error, Guard};
use crate::graph::{dependency_graph, elementary_subgraph, is_loop};
use crate::parser::render_program;
use crate::program::{Program, Rule};
use crate::semantics::{is_model, is_stable, models, stable_models};
use crate::stability::{
    bounding_loops, modular_stable_check, r_omega, r_omega_with, unfounded_free_by_r, Removal,
};
use crate::unfounded::{
    all_criteria, elementarily_unfounded_sets, externally_supported, is_unfounded,
    loop_formula_holds, minimal_unfounded_sets, unfounded_subset,
};

const POOL: &str = "pqrstuvwxyzabcdefghijklmno";

/// Bounds for generated programs.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub max_rules: usize,
    pub atoms: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            max_rules: 10,
            atoms: 6,
        }
    }
}

fn pool_name(i: usize) -> String {
    POOL.chars()
        .nth(i)
        .map(String::from)
        .unwrap_or_else(|| format!("x{i}"))
}

// Part sizes range over 0..=3; the weights keep most rules applicable.
const HEAD_WEIGHTS: [u32; 4] = [1, 6, 3, 1];
const POS_WEIGHTS: [u32; 4] = [4, 5, 2, 1];
const NEG_WEIGHTS: [u32; 4] = [8, 3, 1, 1];
const DNEG_WEIGHTS: [u32; 4] = [12, 2, 1, 1];

/// Program number `index` of the stream determined by `seed`.
pub fn random_program(seed: u64, index: u64, cfg: GenConfig) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut table = AtomTable::new();
    let pool: Vec<_> = (0..cfg.atoms.max(1))
        .map(|i| table.intern(&pool_name(i)))
        .collect();
    let dist = |w: &[u32; 4]| WeightedIndex::new(w).expect("valid weights");
    let (dh, dp, dn, dd) = (
        dist(&HEAD_WEIGHTS),
        dist(&POS_WEIGHTS),
        dist(&NEG_WEIGHTS),
        dist(&DNEG_WEIGHTS),
    );
    let n_rules = rng.random_range(1..=cfg.max_rules.max(1));
    let part = |rng: &mut ChaCha8Rng, d: &WeightedIndex<u32>| -> AtomSet {
        let k = d.sample(rng).min(pool.len());
        sample(rng, pool.len(), k)
            .into_iter()
            .map(|i| pool[i])
            .collect()
    };
    let rules = (0..n_rules)
        .map(|_| {
            let head = part(&mut rng, &dh);
            let pos = part(&mut rng, &dp);
            let neg = part(&mut rng, &dn);
            let dneg = part(&mut rng, &dd);
            Rule::new(head, pos, neg, dneg)
        })
        .collect();
    Program::new(table, rules)
}

/// Keeps the first head atom of each rule, drops constraints and doubly
/// negated literals: a nondisjunctive program with a related shape.
pub fn nondisjunctive_projection(p: &Program) -> Program {
    p.with_rules(
        p.rules()
            .iter()
            .filter_map(|r| {
                let a = r.head.first()?;
                Some(Rule::new(
                    AtomSet::singleton(a),
                    r.pos.clone(),
                    r.neg.clone(),
                    AtomSet::new(),
                ))
            })
            .collect(),
    )
}

/// Replaceable pieces, so that a deliberately broken implementation can be
/// shown to be caught.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub shift: fn(&Program) -> Program,
}

impl Default for Hooks {
    fn default() -> Self {
        Self { shift }
    }
}

/// Shifting that forgets to negate the other head atoms.
pub fn broken_shift(p: &Program) -> Program {
    p.with_rules(
        p.rules()
            .iter()
            .flat_map(|r| {
                if r.head.len() <= 1 {
                    vec![r.clone()]
                } else {
                    r.head
                        .iter()
                        .map(|a| {
                            Rule::new(
                                AtomSet::singleton(a),
                                r.pos.clone(),
                                r.neg.clone(),
                                r.dneg.clone(),
                            )
                        })
                        .collect()
                }
            })
            .collect(),
    )
}

enum Failure {
    Violation(String),
    /// An enumeration went past the guard; the instance is skipped.
    Skipped,
}

impl From<Error> for Failure {
    fn from(_: Error) -> Self {
        Failure::Skipped
    }
}

type Check = Result<(), Failure>;
type Property = fn(&Program, &Hooks, Guard) -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(Failure::Violation(msg()))
    }
}

fn show(p: &Program, s: &AtomSet) -> String {
    s.display(p.table()).to_string()
}

fn show_all(p: &Program, sets: &[AtomSet]) -> String {
    let parts: Vec<String> = sets.iter().map(|s| show(p, s)).collect();
    format!("[{}]", parts.join(" "))
}

fn interpretations(p: &Program) -> Vec<AtomSet> {
    p.atoms().subsets().collect()
}

/// Name and check, in the order they are run.
pub const PROPERTY_NAMES: &[&str] = &[
    "criteria_agreement",
    "elementarily_unfounded_are_minimal",
    "unfounded_antichain_and_support",
    "elementary_subsets_supported",
    "loop_characterisation",
    "elementary_loop_basics",
    "elementary_subsets_outbound",
    "subgraph_characterisation",
    "gs_elementary_comparison",
    "theorem5_shift_equivalence",
    "shift_soundness",
    "shift_preserves_elementary_loops",
    "tight_iff_e_tight",
    "hcf_implies_hef",
    "inherent_tightness_fixpoint_oracle",
    "inherent_tightness_stability",
    "unfounded_within_r",
    "r_monotonicity",
    "removal_condition_equivalence",
    "bounding_loop_structure",
    "r_soundness",
    "eus_in_bounding_loops",
    "modular_stability",
    "hef_bounding_loop_unfounded",
    "r_completeness_for_hef",
    "gadget_equivalence",
    "outbound_support_propagation",
    "elementary_loop_formula_strength",
];

fn property(name: &str) -> Property {
    match name {
        "criteria_agreement" => criteria_agreement,
        "elementarily_unfounded_are_minimal" => eus_are_minimal,
        "unfounded_antichain_and_support" => antichain_and_support,
        "elementary_subsets_supported" => subsets_supported,
        "loop_characterisation" => loop_characterisation,
        "elementary_loop_basics" => elementary_basics,
        "elementary_subsets_outbound" => elementary_subsets_outbound,
        "subgraph_characterisation" => subgraph_characterisation,
        "gs_elementary_comparison" => gs_comparison,
        "shift_preserves_elementary_loops" => shift_elementary_loops,
        "tight_iff_e_tight" => tight_iff_e_tight,
        "hcf_implies_hef" => hcf_hef,
        "theorem5_shift_equivalence" => shift_equivalence,
        "shift_soundness" => shift_soundness,
        "inherent_tightness_fixpoint_oracle" => inherent_oracle,
        "inherent_tightness_stability" => inherent_stability,
        "unfounded_within_r" => unfounded_within_r,
        "r_monotonicity" => r_monotone,
        "removal_condition_equivalence" => removal_equivalence,
        "bounding_loop_structure" => bounding_structure,
        "r_soundness" => r_soundness,
        "eus_in_bounding_loops" => eus_in_bounding,
        "modular_stability" => modular_stability,
        "hef_bounding_loop_unfounded" => hef_bounding_unfounded,
        "r_completeness_for_hef" => r_completeness,
        "gadget_equivalence" => gadget_equivalence,
        "outbound_support_propagation" => support_propagation,
        "elementary_loop_formula_strength" => formula_strength,
        _ => unreachable!("unknown property {name}"),
    }
}

fn criteria_agreement(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in models(p, g)? {
        let verdicts = all_criteria(p, &x, g)?;
        let stable = is_stable(p, &x, g)?;
        ensure(verdicts.iter().all(|v| v.holds == stable), || {
            let tags: Vec<String> = verdicts
                .iter()
                .map(|v| format!("{}={}", v.criterion, v.holds))
                .collect();
            format!("model {}: {}", show(p, &x), tags.join(" "))
        })?;
    }
    Ok(())
}

fn eus_are_minimal(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        let eus = elementarily_unfounded_sets(p, &x, g)?;
        let mus = minimal_unfounded_sets(p, &x, g)?;
        ensure(eus == mus, || {
            format!(
                "w.r.t. {}: {} vs {}",
                show(p, &x),
                show_all(p, &eus),
                show_all(p, &mus)
            )
        })?;
    }
    Ok(())
}

fn antichain_and_support(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        let eus = elementarily_unfounded_sets(p, &x, g)?;
        for y in &eus {
            ensure(!externally_supported(p, y, &x), || {
                format!("{} supported", show(p, y))
            })?;
            for z in y.proper_subsets_by_size() {
                ensure(externally_supported(p, &z, &x), || {
                    format!(
                        "{} ⊂ {} unsupported w.r.t. {}",
                        show(p, &z),
                        show(p, y),
                        show(p, &x)
                    )
                })?;
            }
            ensure(is_elementary_loop(p, y, g)?, || {
                format!("{} not an elementary loop", show(p, y))
            })?;
            for w in &eus {
                ensure(!y.is_proper_subset(w), || {
                    format!("{} ⊂ {}", show(p, y), show(p, w))
                })?;
            }
        }
    }
    Ok(())
}

fn subsets_supported(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        for y in x.subsets_by_size().filter(|y| y.len() >= 2) {
            if is_elementary_loop(&restrict_xy(p, &x, &y), &y, g)? {
                for z in y.proper_subsets_by_size() {
                    ensure(externally_supported(p, &z, &x), || {
                        format!("{} ⊂ {} w.r.t. {}", show(p, &z), show(p, &y), show(p, &x))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn loop_characterisation(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p).into_iter().filter(|x| !x.is_empty()) {
        let alt = x.proper_subsets_by_size().all(|y| {
            let rest = x.difference(&y);
            p.rules()
                .iter()
                .any(|r| r.head.intersects(&y) && r.pos.intersects(&rest))
        });
        ensure(is_loop(p, &x) == alt, || show(p, &x).to_string())?;
    }
    Ok(())
}

fn elementary_basics(p: &Program, _: &Hooks, g: Guard) -> Check {
    let dep = dependency_graph(p);
    for x in interpretations(p).into_iter().filter(|x| !x.is_empty()) {
        let el = is_elementary_loop(p, &x, g)?;
        ensure(!el || is_loop(p, &x), || {
            format!("{} elementary but no loop", show(p, &x))
        })?;
        if x.len() == 1 {
            ensure(el, || format!("singleton {} not elementary", show(p, &x)))?;
        }
        let sub = elementary_subgraph(p, &x)?;
        ensure(sub.edges().is_subset(dep.edges()), || {
            format!("subgraph of {} not inside", show(p, &x))
        })?;
    }
    let listed = elementary_loops(p, g)?;
    let mut by_def = Vec::new();
    for x in interpretations(p) {
        if is_elementary_loop_by_definition(p, &x, g)? {
            by_def.push(x);
        }
    }
    by_def.sort();
    ensure(listed == by_def, || {
        format!("{} vs {}", show_all(p, &listed), show_all(p, &by_def))
    })
}

fn elementary_subsets_outbound(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p).into_iter().filter(|x| !x.is_empty()) {
        let mut alt = true;
        for y in x.proper_subsets_by_size() {
            if is_elementary_loop_by_definition(p, &y, g)? && !is_outbound(p, &y, &x)? {
                alt = false;
                break;
            }
        }
        ensure(is_elementary_loop_by_definition(p, &x, g)? == alt, || {
            show(p, &x)
        })?;
    }
    Ok(())
}

fn subgraph_characterisation(p: &Program, _: &Hooks, g: Guard) -> Check {
    let nd = nondisjunctive_projection(p);
    let mut cases = vec![nd];
    if is_hef(p, g)? {
        cases.push(p.clone());
    }
    for q in cases {
        for x in q.atoms().subsets().filter(|x| !x.is_empty()) {
            let sub = elementary_subgraph(&q, &x)?.is_strongly_connected();
            let def = is_elementary_loop_by_definition(&q, &x, g)?;
            ensure(sub == def, || {
                format!(
                    "{}: subgraph {sub}, definition {def}\n{}",
                    show(&q, &x),
                    render_program(&q)
                )
            })?;
        }
    }
    Ok(())
}

fn gs_comparison(p: &Program, _: &Hooks, g: Guard) -> Check {
    let nd = nondisjunctive_projection(p);
    for l in nd.atoms().subsets() {
        let gs = is_gs_elementary(&nd, &l)?;
        let ours = is_elementary_loop(&nd, &l, g)? && !is_trivial_loop(&nd, &l);
        ensure(gs == ours, || {
            format!("{}\n{}", show(&nd, &l), render_program(&nd))
        })?;
    }
    Ok(())
}

fn shift_elementary_loops(p: &Program, h: &Hooks, g: Guard) -> Check {
    let sh = (h.shift)(p);
    for x in interpretations(p).into_iter().filter(|x| !x.is_empty()) {
        if is_elementary_loop(p, &x, g)? {
            ensure(is_elementary_loop(&sh, &x, g)?, || {
                format!("{} lost under shifting", show(p, &x))
            })?;
        }
        let shx = restrict_x(&sh, &x);
        for y in x.subsets_by_size() {
            if is_elementary_loop(&shx, &y, g)? {
                ensure(is_elementary_loop(p, &y, g)?, || {
                    format!(
                        "{} elementary in shifted Π_X for {}",
                        show(p, &y),
                        show(p, &x)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn tight_iff_e_tight(p: &Program, _: &Hooks, g: Guard) -> Check {
    let (t, e) = (is_tight(p), is_e_tight_by_enumeration(p, g)?);
    ensure(t == e, || format!("tight {t}, e-tight {e}"))
}

fn hcf_hef(p: &Program, _: &Hooks, g: Guard) -> Check {
    ensure(!is_hcf(p) || is_hef(p, g)?, || {
        "head-cycle-free but not HEF".into()
    })
}

fn shift_equivalence(p: &Program, h: &Hooks, g: Guard) -> Check {
    if !is_hef(p, g)? {
        return Ok(());
    }
    let (a, b) = (stable_models(p, g)?, stable_models(&(h.shift)(p), g)?);
    ensure(a == b, || {
        format!("{} vs shifted {}", show_all(p, &a), show_all(p, &b))
    })
}

fn shift_soundness(p: &Program, h: &Hooks, g: Guard) -> Check {
    let a = stable_models(p, g)?;
    let b = stable_models(&(h.shift)(p), g)?;
    ensure(b.iter().all(|x| a.contains(x)), || {
        format!("{} ⊄ {}", show_all(p, &b), show_all(p, &a))
    })
}

fn inherent_oracle(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        let (fix, brute) = (
            is_inherently_tight(p, &x),
            is_inherently_tight_by_subsets(p, &x, g)?,
        );
        ensure(fix == brute, || {
            format!("{}: fixpoint {fix}, subsets {brute}", show(p, &x))
        })?;
    }
    Ok(())
}

fn inherent_stability(p: &Program, _: &Hooks, g: Guard) -> Check {
    let hef = is_hef(p, g)?;
    let nd = nondisjunctive_projection(p);
    let mut cases = vec![(p.clone(), hef), (nd, true)];
    cases.dedup_by(|a, b| a.0 == b.0);
    for (q, exact) in cases {
        for x in models(&q, g)? {
            let (it, st) = (is_inherently_tight(&q, &x), is_stable(&q, &x, g)?);
            ensure(!it || st, || {
                format!("{} inherently tight, not stable", show(&q, &x))
            })?;
            if exact {
                ensure(it == st, || {
                    format!("{}: inherently tight {it}, stable {st}", show(&q, &x))
                })?;
            }
        }
    }
    Ok(())
}

fn unfounded_within_r(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p) {
        for y in x.subsets() {
            let r = r_omega(p, &x, &y);
            for z in y.subsets_by_size() {
                if is_unfounded(p, &z, &x) {
                    ensure(z.is_subset(&r), || {
                        format!("{} ⊄ R({})", show(p, &z), show(p, &y))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn r_monotone(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p) {
        for y in x.subsets() {
            let ry = r_omega(p, &x, &y);
            for z in y.subsets() {
                ensure(r_omega(p, &x, &z).is_subset(&ry), || {
                    format!("{} ⊆ {}", show(p, &z), show(p, &y))
                })?;
            }
        }
    }
    Ok(())
}

fn removal_equivalence(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p) {
        for y in x.subsets() {
            let (a, b) = (
                r_omega(p, &x, &y),
                r_omega_with(p, &x, &y, Removal::HeadInModel),
            );
            ensure(a == b, || {
                format!("R({}) w.r.t. {}", show(p, &y), show(p, &x))
            })?;
        }
    }
    Ok(())
}

fn bounding_structure(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p) {
        let bl = bounding_loops(p, &x);
        for (i, y) in bl.iter().enumerate() {
            ensure(y.is_subset(&x), || {
                format!("{} ⊄ {}", show(p, y), show(p, &x))
            })?;
            ensure(is_loop(&restrict_xy(p, &x, y), y), || {
                format!("{} not a loop of its subprogram", show(p, y))
            })?;
            ensure(r_omega(p, &x, y) == *y, || {
                format!("{} not a fixpoint", show(p, y))
            })?;
            for z in &bl[i + 1..] {
                ensure(y.is_disjoint(z), || {
                    format!("{} meets {}", show(p, y), show(p, z))
                })?;
            }
        }
    }
    Ok(())
}

fn r_soundness(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        if unfounded_free_by_r(p, &x)? {
            ensure(unfounded_subset(p, &x, &x, g)?.is_none(), || {
                format!("R empty on {}", show(p, &x))
            })?;
        }
    }
    Ok(())
}

fn eus_in_bounding(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        let bl = bounding_loops(p, &x);
        for y in elementarily_unfounded_sets(p, &x, g)?
            .into_iter()
            .filter(|y| y.is_subset(&x))
        {
            ensure(y.len() == 1 || bl.iter().any(|b| y.is_subset(b)), || {
                format!(
                    "{} outside every bounding loop of {}",
                    show(p, &y),
                    show(p, &x)
                )
            })?;
        }
    }
    Ok(())
}

fn modular_stability(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in models(p, g)? {
        let (m, s) = (modular_stable_check(p, &x, g)?, is_stable(p, &x, g)?);
        ensure(m == s, || {
            format!("{}: modular {m}, stable {s}", show(p, &x))
        })?;
    }
    Ok(())
}

fn hef_bounding_unfounded(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        for y in bounding_loops(p, &x) {
            if is_hef(&restrict_xy(p, &x, &y), g)? {
                let mus = minimal_unfounded_sets(p, &x, g)?;
                ensure(mus.iter().any(|m| m.is_subset(&y)), || {
                    format!(
                        "bounding loop {} w.r.t. {} has no unfounded subset",
                        show(p, &y),
                        show(p, &x)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn r_completeness(p: &Program, _: &Hooks, g: Guard) -> Check {
    if !is_hef(p, g)? {
        return Ok(());
    }
    for x in interpretations(p) {
        let by_r = unfounded_free_by_r(p, &x)?;
        let direct = unfounded_subset(p, &x, &x, g)?.is_none();
        ensure(by_r == direct, || {
            format!("{}: R {by_r}, direct {direct}", show(p, &x))
        })?;
        let stable = is_model(&x, p) && is_stable(p, &x, g)?;
        ensure(stable == (is_model(&x, p) && by_r), || {
            format!("{}: stability", show(p, &x))
        })?;
    }
    Ok(())
}

fn gadget_equivalence(p: &Program, _: &Hooks, g: Guard) -> Check {
    for x in interpretations(p) {
        let free = unfounded_subset(p, &x, &x, g)?.is_none();
        let (q, e) = unfoundedfree_reduction(p, &x);
        let mut y = x.clone();
        y.insert(e);
        let el = is_elementary_loop_with(&q, &y, Method::Definition, g)?;
        ensure(free == el, || {
            format!("{}: unfounded-free {free}, gadget {el}", show(p, &x))
        })?;
    }
    Ok(())
}

fn support_propagation(p: &Program, _: &Hooks, _: Guard) -> Check {
    for x in interpretations(p) {
        for y in x.subsets().filter(|y| !y.is_empty()) {
            for z in y.subsets_by_size() {
                if z.is_proper_subset(&y)
                    && !is_outbound(p, &z, &y).unwrap_or(true)
                    && externally_supported(p, &z, &x)
                {
                    ensure(externally_supported(p, &y, &x), || {
                        format!("{} ⊂ {} w.r.t. {}", show(p, &z), show(p, &y), show(p, &x))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn formula_strength(p: &Program, _: &Hooks, g: Guard) -> Check {
    let all = interpretations(p);
    for y in all.iter().filter(|y| !y.is_empty()) {
        let mut found = false;
        for z in y.subsets_by_size() {
            if !is_elementary_loop(p, &z, g)? {
                continue;
            }
            let stronger = all.iter().all(|i| {
                !loop_formula_holds(p, &z, i).unwrap_or(true)
                    || loop_formula_holds(p, y, i).unwrap_or(true)
            });
            if stronger {
                found = true;
                break;
            }
        }
        ensure(found, || {
            format!(
                "no elementary loop inside {} implies its loop formula",
                show(p, y)
            )
        })?;
    }
    Ok(())
}

/// A violated property with its shrunk program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: &'static str,
    /// Index of the first generated program that violated the property.
    pub index: u64,
    pub message: String,
    pub program: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub programs: usize,
    pub checks: usize,
    pub skipped: usize,
    /// One counterexample per violated property, in catalogue order.
    pub failures: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub count: u64,
    pub gen: GenConfig,
    pub guard: Guard,
    pub hooks: Hooks,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 500,
            gen: GenConfig::default(),
            guard: Guard::DEFAULT,
            hooks: Hooks::default(),
        }
    }
}

#[derive(Default)]
struct Outcome {
    checks: usize,
    skipped: usize,
    violated: Vec<usize>,
}

fn check_all(p: &Program, hooks: &Hooks, guard: Guard) -> Outcome {
    let mut out = Outcome::default();
    for (k, &name) in PROPERTY_NAMES.iter().enumerate() {
        match property(name)(p, hooks, guard) {
            Ok(()) => out.checks += 1,
            Err(Failure::Skipped) => out.skipped += 1,
            Err(Failure::Violation(_)) => out.violated.push(k),
        }
    }
    out
}

fn violates(p: &Program, name: &str, hooks: &Hooks, guard: Guard) -> Option<String> {
    match property(name)(p, hooks, guard) {
        Err(Failure::Violation(m)) => Some(m),
        _ => None,
    }
}

/// Greedy shrinking: drop single rules, then remove single atoms from every
/// rule, as long as the named property still fails.
pub fn minimize(p: &Program, name: &str, hooks: &Hooks, guard: Guard) -> (Program, String) {
    let mut current = p.clone();
    let mut message = violates(&current, name, hooks, guard).unwrap_or_default();
    let mut i = 0;
    while i < current.len() {
        let mut rules = current.rules().to_vec();
        rules.remove(i);
        let candidate = current.with_rules(rules);
        match violates(&candidate, name, hooks, guard) {
            Some(m) => {
                current = candidate;
                message = m;
            }
            None => i += 1,
        }
    }
    for a in &current.atoms() {
        let drop = |s: &AtomSet| {
            let mut s = s.clone();
            s.remove(a);
            s
        };
        let candidate = current.with_rules(
            current
                .rules()
                .iter()
                .map(|r| Rule::new(drop(&r.head), drop(&r.pos), drop(&r.neg), drop(&r.dneg)))
                .collect(),
        );
        if let Some(m) = violates(&candidate, name, hooks, guard) {
            current = candidate;
            message = m;
        }
    }
    (current, message)
}

/// Runs every property on `count` programs. Programs are checked in
/// parallel and merged in index order, so the report does not depend on
/// scheduling.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let outcomes: Vec<(u64, Program, Outcome)> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let p = random_program(cfg.seed, i, cfg.gen);
            let o = check_all(&p, &cfg.hooks, cfg.guard);
            (i, p, o)
        })
        .collect();
    let mut report = VerifyReport {
        programs: outcomes.len(),
        ..Default::default()
    };
    let mut first: Vec<Option<(u64, Program)>> = vec![None; PROPERTY_NAMES.len()];
    for (i, p, o) in outcomes {
        report.checks += o.checks;
        report.skipped += o.skipped;
        for k in o.violated {
            first[k].get_or_insert_with(|| (i, p.clone()));
        }
    }
    report.failures = first
        .into_par_iter()
        .enumerate()
        .filter_map(|(k, hit)| {
            let (index, p) = hit?;
            let name = PROPERTY_NAMES[k];
            let (small, message) = minimize(&p, name, &cfg.hooks, cfg.guard);
            Some(Counterexample {
                property: name,
                index,
                message,
                program: render_program(&small),
            })
        })
        .collect();
    report
}
