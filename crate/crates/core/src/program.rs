//! Disjunctive rules and programs.

use crate::atoms::{Atom, AtomSet, AtomTable};

/// A rule `A ← B, not N, not not D`.
///
/// `head` may be empty, in which case the rule is a constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: AtomSet,
    pub pos: AtomSet,
    pub neg: AtomSet,
    pub dneg: AtomSet,
}

impl Rule {
    pub fn new(head: AtomSet, pos: AtomSet, neg: AtomSet, dneg: AtomSet) -> Self {
        Self {
            head,
            pos,
            neg,
            dneg,
        }
    }

    /// Every atom mentioned anywhere in the rule.
    pub fn atoms(&self) -> AtomSet {
        self.head
            .union(&self.pos)
            .union(&self.neg)
            .union(&self.dneg)
    }

    /// `x ⊨ B, F`: the whole body holds under `x`.
    pub fn body_holds(&self, x: &AtomSet) -> bool {
        self.pos.is_subset(x) && self.neg.is_disjoint(x) && self.dneg.is_subset(x)
    }

    /// `x ⊨ F`: the negative and doubly negated parts hold under `x`.
    pub fn negative_body_holds(&self, x: &AtomSet) -> bool {
        self.neg.is_disjoint(x) && self.dneg.is_subset(x)
    }

    pub fn is_nondisjunctive(&self) -> bool {
        self.head.len() == 1 && self.dneg.is_empty()
    }
}

/// An ordered sequence of rules over an atom table.
///
/// The table may hold more names than the rules mention (subprograms share
/// the table of the program they were cut from); [`Program::atoms`] is always
/// computed from the rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    table: AtomTable,
}

impl Program {
    pub fn new(table: AtomTable, rules: Vec<Rule>) -> Self {
        debug_assert!(rules
            .iter()
            .all(|r| r.atoms().iter().all(|a| a.index() < table.len())));
        Self { rules, table }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn table(&self) -> &AtomTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// A program over the same atom table with different rules.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Program {
        Program::new(self.table.clone(), rules)
    }

    /// Keep the rules for which `keep` holds, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&Rule) -> bool) -> Program {
        self.with_rules(self.rules.iter().filter(|r| keep(r)).cloned().collect())
    }

    /// The atoms occurring anywhere in the rules.
    pub fn atoms(&self) -> AtomSet {
        let mut seen = vec![false; self.table.len()];
        for r in &self.rules {
            for a in r.head.iter().chain(&r.pos).chain(&r.neg).chain(&r.dneg) {
                seen[a.index()] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Atom(i as u32))
            .collect()
    }

    /// Every rule has a single head atom and no doubly negated literals.
    pub fn is_nondisjunctive(&self) -> bool {
        self.rules.iter().all(Rule::is_nondisjunctive)
    }

    pub fn name(&self, a: Atom) -> &str {
        self.table.name(a)
    }

    /// Resolve atom names against this program's table.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> crate::Result<AtomSet> {
        self.table
            .set_of(names)
            .map_err(|n| crate::Error::PreconditionViolated(format!("unknown atom `{n}`")))
    }

    /// Structural equality modulo atom renaming: same rule sequence when
    /// every atom is read by name.
    pub fn same_structure(&self, other: &Program) -> bool {
        let named = |p: &Program, s: &AtomSet| {
            let mut v: Vec<String> = s.names(&p.table);
            v.sort();
            v
        };
        self.rules.len() == other.rules.len()
            && self.rules.iter().zip(&other.rules).all(|(r, q)| {
                named(self, &r.head) == named(other, &q.head)
                    && named(self, &r.pos) == named(other, &q.pos)
                    && named(self, &r.neg) == named(other, &q.neg)
                    && named(self, &r.dneg) == named(other, &q.dneg)
            })
    }
}

/// Incremental construction of a program by atom names.
#[derive(Debug, Default)]
pub struct ProgramBuilder {
    table: AtomTable,
    rules: Vec<Rule>,
}

impl ProgramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_table(table: AtomTable) -> Self {
        Self {
            table,
            rules: Vec::new(),
        }
    }

    pub fn atom(&mut self, name: &str) -> Atom {
        self.table.intern(name)
    }

    fn set(&mut self, names: &[&str]) -> AtomSet {
        names.iter().map(|n| self.table.intern(n)).collect()
    }

    pub fn rule(&mut self, head: &[&str], pos: &[&str], neg: &[&str], dneg: &[&str]) -> &mut Self {
        let rule = Rule::new(self.set(head), self.set(pos), self.set(neg), self.set(dneg));
        self.rules.push(rule);
        self
    }

    pub fn push(&mut self, rule: Rule) -> &mut Self {
        self.rules.push(rule);
        self
    }

    pub fn build(self) -> Program {
        Program::new(self.table, self.rules)
    }
}
