//! Atoms, finite atom sets and the name table that interns them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use smallvec::SmallVec;

/// An interned propositional atom. The index is stable for the lifetime of
/// the [`AtomTable`] that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite set of atoms, stored sorted by index.
///
/// Sets produced by the analyses are small (rule bodies, loop candidates),
/// so the members live inline until they outgrow the small buffer.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AtomSet(SmallVec<[Atom; 8]>);

impl AtomSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: Atom) -> Self {
        let mut s = SmallVec::new();
        s.push(a);
        Self(s)
    }

    /// Build from members that are already strictly ascending.
    fn from_sorted(members: SmallVec<[Atom; 8]>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// Returns `true` if `a` was not already present.
    pub fn insert(&mut self, a: Atom) -> bool {
        match self.0.binary_search(&a) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, a);
                true
            }
        }
    }

    pub fn remove(&mut self, a: Atom) -> bool {
        match self.0.binary_search(&a) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Atom> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Atom] {
        &self.0
    }

    pub fn first(&self) -> Option<Atom> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut theirs = other.0.iter();
        'outer: for a in &self.0 {
            for b in theirs.by_ref() {
                match b.cmp(a) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &AtomSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.merge_count(other) == 0
    }

    pub fn intersects(&self, other: &AtomSet) -> bool {
        !self.is_disjoint(other)
    }

    /// `|self ∩ other|`, computed without allocating.
    pub fn intersection_len(&self, other: &AtomSet) -> usize {
        self.merge_count(other)
    }

    fn merge_count(&self, other: &AtomSet) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// True iff `self ∩ other` is exactly `{a}`.
    pub fn meets_exactly(&self, other: &AtomSet, a: Atom) -> bool {
        self.contains(a) && other.contains(a) && self.intersection_len(other) == 1
    }

    /// The unique common atom, if `|self ∩ other| = 1`.
    pub fn single_common(&self, other: &AtomSet) -> Option<Atom> {
        let mut it = self.0.iter().filter(|a| other.contains(**a));
        match (it.next(), it.next()) {
            (Some(&a), None) => Some(a),
            _ => None,
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let merged = self
            .0
            .iter()
            .merge(other.0.iter())
            .dedup()
            .copied()
            .collect();
        AtomSet::from_sorted(merged)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet::from_sorted(
            self.0
                .iter()
                .copied()
                .filter(|a| other.contains(*a))
                .collect(),
        )
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet::from_sorted(
            self.0
                .iter()
                .copied()
                .filter(|a| !other.contains(*a))
                .collect(),
        )
    }

    /// Subset of `self` selected by the low bits of `mask` (bit `i` picks the
    /// `i`-th smallest member).
    pub fn select(&self, mask: u64) -> AtomSet {
        AtomSet::from_sorted(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| *a)
                .collect(),
        )
    }

    /// All subsets of `self` (including `∅` and `self`), in mask order.
    ///
    /// Callers must bound `self.len()`; see [`crate::Guard`].
    pub fn subsets(&self) -> impl Iterator<Item = AtomSet> + '_ {
        assert!(
            self.len() < 64,
            "subset enumeration over {} atoms",
            self.len()
        );
        (0..1u64 << self.len()).map(move |m| self.select(m))
    }

    /// Nonempty subsets of `self` in canonical order: ascending cardinality,
    /// then lexicographic by atom index.
    pub fn subsets_by_size(&self) -> impl Iterator<Item = AtomSet> + '_ {
        (1..=self.len()).flat_map(move |k| {
            self.0
                .iter()
                .copied()
                .combinations(k)
                .map(|c| AtomSet::from_sorted(c.into_iter().collect()))
        })
    }

    /// Nonempty proper subsets of `self` in canonical order.
    pub fn proper_subsets_by_size(&self) -> impl Iterator<Item = AtomSet> + '_ {
        let n = self.len();
        self.subsets_by_size().filter(move |s| s.len() < n)
    }

    /// Render with the names of `table`, e.g. `{p,q}`.
    pub fn display<'a>(&'a self, table: &'a AtomTable) -> impl fmt::Display + 'a {
        DisplaySet { set: self, table }
    }

    pub fn names(&self, table: &AtomTable) -> Vec<String> {
        self.iter().map(|a| table.name(a).to_owned()).collect()
    }
}

/// Canonical order: ascending cardinality, then lexicographic on the sorted
/// member indices.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut v: SmallVec<[Atom; 8]> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        AtomSet(v)
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter);
        self.0.sort_unstable();
        self.0.dedup();
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = Atom;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Atom>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter().map(|a| a.0)).finish()
    }
}

struct DisplaySet<'a> {
    set: &'a AtomSet,
    table: &'a AtomTable,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.set.iter().map(|a| self.table.name(a)).join(",")
        )
    }
}

/// Bijection between atom names and indices. Indices are handed out in
/// first-registration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.index.get(name) {
            return a;
        }
        let a = Atom(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), a);
        a
    }

    pub fn get(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// A name not yet in the table: `base`, then `base1`, `base2`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_owned();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.index.contains_key(n))
            .expect("unbounded suffix search")
    }

    /// Resolve a list of names to a set; unknown names are an error.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet, String> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.get(n).ok_or_else(|| n.to_owned())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(xs: &[u32]) -> AtomSet {
        xs.iter().map(|&i| Atom(i)).collect()
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = vec![set(&[1, 2]), set(&[3]), set(&[0, 5]), set(&[0])];
        v.sort();
        assert_eq!(v, vec![set(&[0]), set(&[3]), set(&[0, 5]), set(&[1, 2])]);
    }

    #[test]
    fn subsets_by_size_enumerates_nonempty() {
        let s = set(&[0, 1, 2]);
        let subs: Vec<_> = s.subsets_by_size().collect();
        assert_eq!(subs.len(), 7);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.proper_subsets_by_size().count(), 6);
    }

    #[test]
    fn fresh_names_skip_taken() {
        let mut t = AtomTable::new();
        assert_eq!(t.fresh_name("e"), "e");
        t.intern("e");
        t.intern("e1");
        assert_eq!(t.fresh_name("e"), "e2");
    }

    proptest! {
        #[test]
        fn set_ops_agree_with_btreeset(a in prop::collection::btree_set(0u32..20, 0..10),
                                       b in prop::collection::btree_set(0u32..20, 0..10)) {
            let sa: AtomSet = a.iter().map(|&i| Atom(i)).collect();
            let sb: AtomSet = b.iter().map(|&i| Atom(i)).collect();
            let to = |s: &AtomSet| s.iter().map(|x| x.0).collect::<Vec<_>>();
            prop_assert_eq!(to(&sa.union(&sb)), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(to(&sa.intersection(&sb)), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(to(&sa.difference(&sb)), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
            prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
        }
    }
}
