//! Serializable analysis reports.
//!
//! Sets are written as arrays of atom names sorted by name, and lists of
//! sets are sorted by size and then lexicographically, so output depends
//! only on the program text and the options.

use serde::Serialize;

use crate::atoms::AtomSet;
use crate::classify::{classify, ClassReport};
use crate::elementary::{elementary_loops_with, Method};
use crate::error::{Guard, Result};
use crate::graph::loops;
use crate::parser::render_program;
use crate::program::Program;
use crate::semantics::{is_stable, models};
use crate::stability::{baseline_maximal_loops, bounding_loop_report};
use crate::unfounded::{all_criteria, elementarily_unfounded_sets, Verdict};

pub type NameSet = Vec<String>;

pub fn names(p: &Program, s: &AtomSet) -> NameSet {
    let mut v = s.names(p.table());
    v.sort();
    v
}

pub fn name_sets<'a>(p: &Program, sets: impl IntoIterator<Item = &'a AtomSet>) -> Vec<NameSet> {
    let mut v: Vec<NameSet> = sets.into_iter().map(|s| names(p, s)).collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RuleWitness {
    pub rule: usize,
    pub atoms: NameSet,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witnesses {
    pub tight: Option<NameSet>,
    pub hcf: Option<RuleWitness>,
    pub hef: Option<RuleWitness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Classification {
    pub tight: bool,
    pub e_tight: bool,
    pub hcf: bool,
    pub hef: Option<bool>,
    pub witnesses: Witnesses,
}

impl Classification {
    pub fn new(p: &Program, c: &ClassReport) -> Self {
        let rule = |w: &Option<(usize, AtomSet)>| {
            w.as_ref().map(|(i, s)| RuleWitness {
                rule: *i,
                atoms: names(p, s),
            })
        };
        Self {
            tight: c.tight,
            e_tight: c.e_tight,
            hcf: c.hcf,
            hef: c.hef,
            witnesses: Witnesses {
                tight: c.tight_witness.as_ref().map(|s| names(p, s)),
                hcf: rule(&c.hcf_witness),
                hef: rule(&c.hef_witness),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriterionResult {
    pub criterion: String,
    pub holds: bool,
    pub witness: Option<NameSet>,
}

impl CriterionResult {
    pub fn new(p: &Program, v: &Verdict) -> Self {
        Self {
            criterion: v.criterion.to_string(),
            holds: v.holds,
            witness: v.witness.as_ref().map(|s| names(p, s)),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundingLoopEntry {
    pub atoms: NameSet,
    pub hef_subprogram: Option<bool>,
    pub unfounded_witness: Option<NameSet>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModelResult {
    pub model: NameSet,
    pub stable: bool,
    pub criteria: Vec<CriterionResult>,
    pub elementarily_unfounded_sets: Vec<NameSet>,
    pub bounding_loops: Vec<BoundingLoopEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_maximal_loops: Option<Vec<NameSet>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub program: String,
    pub rules: usize,
    pub atoms: NameSet,
    pub loops: Vec<NameSet>,
    pub elementary_loops: Vec<NameSet>,
    pub classification: Classification,
    pub stable_models: Vec<NameSet>,
    pub models: Vec<ModelResult>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub guard: Guard,
    pub assume_hef: bool,
    pub baseline: bool,
}

pub fn analyze(p: &Program, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let g = opts.guard;
    let method = if opts.assume_hef {
        Method::AssumeHef
    } else {
        Method::Auto
    };
    let class = classify(p, g);
    let mut per_model = Vec::new();
    let mut stable = Vec::new();
    for x in models(p, g)? {
        let is_st = is_stable(p, &x, g)?;
        if is_st {
            stable.push(x.clone());
        }
        let criteria = all_criteria(p, &x, g)?;
        per_model.push(ModelResult {
            model: names(p, &x),
            stable: is_st,
            criteria: criteria
                .iter()
                .map(|v| CriterionResult::new(p, v))
                .collect(),
            elementarily_unfounded_sets: name_sets(p, &elementarily_unfounded_sets(p, &x, g)?),
            bounding_loops: bounding_loop_report(p, &x, g)
                .into_iter()
                .map(|b| BoundingLoopEntry {
                    atoms: names(p, &b.atoms),
                    hef_subprogram: b.hef_subprogram,
                    unfounded_witness: b.unfounded_witness.as_ref().map(|s| names(p, s)),
                })
                .collect(),
            baseline_maximal_loops: opts
                .baseline
                .then(|| name_sets(p, &baseline_maximal_loops(p, &x))),
        });
    }
    per_model.sort_by(|a, b| {
        a.model
            .len()
            .cmp(&b.model.len())
            .then_with(|| a.model.cmp(&b.model))
    });
    Ok(AnalysisReport {
        program: render_program(p),
        rules: p.len(),
        atoms: names(p, &p.atoms()),
        loops: name_sets(p, &loops(p, g)?),
        elementary_loops: name_sets(p, &elementary_loops_with(p, method, g)?),
        classification: Classification::new(p, &class),
        stable_models: name_sets(p, &stable),
        models: per_model,
    })
}

fn braces(s: &[String]) -> String {
    format!("{{{}}}", s.join(","))
}

fn brace_list(sets: &[NameSet]) -> String {
    if sets.is_empty() {
        return "-".into();
    }
    sets.iter().map(|s| braces(s)).collect::<Vec<_>>().join(" ")
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

/// Aligned plain-text rendering.
pub fn render_text(r: &AnalysisReport) -> String {
    let c = &r.classification;
    let rows: Vec<(&str, String)> = vec![
        ("rules", r.rules.to_string()),
        ("atoms", braces(&r.atoms)),
        ("loops", brace_list(&r.loops)),
        ("elementary loops", brace_list(&r.elementary_loops)),
        ("tight", flag(Some(c.tight)).into()),
        ("e-tight", flag(Some(c.e_tight)).into()),
        ("head-cycle-free", flag(Some(c.hcf)).into()),
        ("head-elementary-loop-free", flag(c.hef).into()),
        ("stable models", brace_list(&r.stable_models)),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    if !r.models.is_empty() {
        out.push_str("\nmodel");
        let mw = r
            .models
            .iter()
            .map(|m| braces(&m.model).len())
            .max()
            .unwrap_or(0)
            .max(5);
        out.push_str(&" ".repeat(mw - 5 + 2));
        out.push_str("stable  bounding loops  elementarily unfounded\n");
        for m in &r.models {
            let bl: Vec<NameSet> = m.bounding_loops.iter().map(|b| b.atoms.clone()).collect();
            out.push_str(&format!(
                "{:<mw$}  {:<6}  {:<14} {}\n",
                braces(&m.model),
                if m.stable { "yes" } else { "no" },
                brace_list(&bl),
                brace_list(&m.elementarily_unfounded_sets)
            ));
        }
    }
    out
}
