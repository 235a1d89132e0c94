//! Positive dependency graphs, strongly connected components, loops and the
//! elementary subgraph.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::atoms::{Atom, AtomSet, AtomTable};
use crate::error::{Error, Guard, Result};
use crate::program::Program;

/// A directed graph whose vertices are atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    vertices: AtomSet,
    edges: BTreeSet<(Atom, Atom)>,
}

impl Digraph {
    pub fn new(vertices: AtomSet, edges: BTreeSet<(Atom, Atom)>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|(a, b)| vertices.contains(*a) && vertices.contains(*b)));
        Self { vertices, edges }
    }

    pub fn vertices(&self) -> &AtomSet {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(Atom, Atom)> {
        &self.edges
    }

    pub fn has_edge(&self, a: Atom, b: Atom) -> bool {
        self.edges.contains(&(a, b))
    }

    /// The subgraph induced by `s ∩ vertices`.
    pub fn induced(&self, s: &AtomSet) -> Digraph {
        let vertices = self.vertices.intersection(s);
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| vertices.contains(*a) && vertices.contains(*b))
            .copied()
            .collect();
        Digraph { vertices, edges }
    }

    /// Strongly connected components, each sorted, ordered by minimum atom.
    pub fn sccs(&self) -> Vec<AtomSet> {
        sccs_of(&self.vertices, self.edges.iter().copied())
    }

    /// A graph with a single vertex counts as strongly connected; the empty
    /// graph does not.
    pub fn is_strongly_connected(&self) -> bool {
        !self.vertices.is_empty() && self.sccs().len() == 1
    }

    /// Graphviz rendering, one edge per line, vertices labelled by name.
    pub fn to_dot(&self, table: &AtomTable, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", table.name(v));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", table.name(*a), table.name(*b));
        }
        out.push_str("}\n");
        out
    }
}

/// Tarjan over a dense relabelling of `vertices`.
fn sccs_of(vertices: &AtomSet, edges: impl Iterator<Item = (Atom, Atom)>) -> Vec<AtomSet> {
    let mut g: DiGraph<Atom, ()> = DiGraph::with_capacity(vertices.len(), 0);
    let mut node: HashMap<Atom, NodeIndex> = HashMap::with_capacity(vertices.len());
    for v in vertices {
        node.insert(v, g.add_node(v));
    }
    for (a, b) in edges {
        if let (Some(&na), Some(&nb)) = (node.get(&a), node.get(&b)) {
            g.add_edge(na, nb, ());
        }
    }
    let mut comps: Vec<AtomSet> = tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|n| g[n]).collect())
        .collect();
    comps.sort_by_key(|c: &AtomSet| c.first());
    comps
}

/// Edges `a → b` for every rule with `a` in the head and `b` in the positive
/// body. Vertices are `atoms(p)`.
pub fn dependency_graph(p: &Program) -> Digraph {
    let mut edges = BTreeSet::new();
    for r in p.rules() {
        for a in &r.head {
            for b in &r.pos {
                edges.insert((a, b));
            }
        }
    }
    Digraph::new(p.atoms(), edges)
}

pub fn sccs(g: &Digraph) -> Vec<AtomSet> {
    g.sccs()
}

/// Dependency-graph edges with both endpoints in `x`.
fn edges_within(p: &Program, x: &AtomSet) -> Vec<(Atom, Atom)> {
    let mut out = Vec::new();
    for r in p.rules() {
        for a in r.head.iter().filter(|a| x.contains(*a)) {
            for b in r.pos.iter().filter(|b| x.contains(*b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `x` is a nonempty set of occurring atoms whose induced dependency
/// subgraph is strongly connected.
pub fn is_loop(p: &Program, x: &AtomSet) -> bool {
    !x.is_empty()
        && x.is_subset(&p.atoms())
        && sccs_of(x, edges_within(p, x).into_iter()).len() == 1
}

/// Largest SCC of the dependency graph; enumerations range over its subsets.
pub fn largest_scc(p: &Program) -> usize {
    dependency_graph(p)
        .sccs()
        .iter()
        .map(AtomSet::len)
        .max()
        .unwrap_or(0)
}

/// Every loop of `p`, in canonical order. Loops never cross SCC boundaries,
/// so only subsets of each component are examined.
pub fn loops(p: &Program, guard: Guard) -> Result<Vec<AtomSet>> {
    let comps = dependency_graph(p).sccs();
    for c in &comps {
        guard.check("loop enumeration", c.len())?;
    }
    let mut out: Vec<AtomSet> = comps
        .iter()
        .flat_map(|c| c.subsets_by_size().collect::<Vec<_>>())
        .filter(|s| s.len() == 1 || is_loop(p, s))
        .collect();
    out.sort();
    Ok(out)
}

/// The SCCs of the dependency graph of `p` restricted to `s` that are loops
/// of `p`: the maximal loops of `p` contained in `s`.
pub fn maximal_loops_within(p: &Program, s: &AtomSet) -> Vec<AtomSet> {
    let occurring = p.atoms();
    let vertices = s.intersection(&occurring);
    let mut out: Vec<AtomSet> = sccs_of(&vertices, edges_within(p, &vertices).into_iter())
        .into_iter()
        .collect();
    out.sort();
    out
}

/// The elementary subgraph `(x, EC(x))`.
///
/// `EC⁰ = ∅`; `EC^{i+1}` has an edge `a → b` for each rule with
/// `A ∩ x = {a}` and `b ∈ B ∩ x` whose atoms `B ∩ x` all lie in one SCC of
/// `(x, ECⁱ)`. Rules only ever switch on, so each round re-examines just the
/// rules still pending and stops once a round adds nothing.
pub fn elementary_subgraph(p: &Program, x: &AtomSet) -> Result<Digraph> {
    if !x.is_subset(&p.atoms()) {
        return Err(Error::PreconditionViolated(
            "elementary subgraph requested for atoms that do not occur in the program".into(),
        ));
    }
    let index: HashMap<Atom, usize> = x.iter().enumerate().map(|(i, a)| (a, i)).collect();

    // (head atom, positive body atoms inside x), both as dense indices.
    let mut pending: Vec<(usize, Vec<usize>)> = p
        .rules()
        .iter()
        .filter_map(|r| {
            let a = r.head.single_common(x)?;
            let body: Vec<usize> = r
                .pos
                .iter()
                .filter_map(|b| index.get(&b).copied())
                .collect();
            (!body.is_empty()).then(|| (index[&a], body))
        })
        .collect();

    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(x.len(), 0);
    for _ in 0..x.len() {
        g.add_node(());
    }
    let mut component = vec![0usize; x.len()];
    loop {
        for (label, comp) in tarjan_scc(&g).into_iter().enumerate() {
            for n in comp {
                component[n.index()] = label;
            }
        }
        let before = pending.len();
        pending.retain(|(a, body)| {
            let c = component[body[0]];
            if body.iter().all(|&b| component[b] == c) {
                for &b in body {
                    g.update_edge(NodeIndex::new(*a), NodeIndex::new(b), ());
                }
                false
            } else {
                true
            }
        });
        if pending.len() == before {
            break;
        }
    }

    let atoms: Vec<Atom> = x.iter().collect();
    let edges = g
        .raw_edges()
        .iter()
        .map(|e| (atoms[e.source().index()], atoms[e.target().index()]))
        .collect();
    Ok(Digraph::new(x.clone(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_str;

    const CONJUNCTIVE_TRIANGLE: &str = "p :- not s.  p :- r.  q :- r.  r :- p, q.";
    const SPLIT_TRIANGLE: &str = "p :- not s.  p :- r.  q :- r.  r :- p.  r :- q.";
    const ROTATING_CHOICE: &str = "p ; q :- r. p ; r :- q. q ; r :- p.";

    fn set(p: &Program, names: &[&str]) -> AtomSet {
        p.set_of(names).unwrap()
    }

    fn edges(p: &Program, g: &Digraph) -> BTreeSet<(String, String)> {
        g.edges()
            .iter()
            .map(|(a, b)| (p.name(*a).to_owned(), p.name(*b).to_owned()))
            .collect()
    }

    fn named_edges(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        list.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    /// Mutual reachability by repeated relaxation, independent of Tarjan.
    #[allow(clippy::needless_range_loop)]
    fn scc_oracle(g: &Digraph) -> Vec<AtomSet> {
        let vs: Vec<Atom> = g.vertices().iter().collect();
        let n = vs.len();
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            reach[i][i] = true;
        }
        for (a, b) in g.edges() {
            let i = vs.iter().position(|v| v == a).unwrap();
            let j = vs.iter().position(|v| v == b).unwrap();
            reach[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        let mut comps: Vec<AtomSet> = Vec::new();
        for i in 0..n {
            let c: AtomSet = (0..n)
                .filter(|&j| reach[i][j] && reach[j][i])
                .map(|j| vs[j])
                .collect();
            if !comps.contains(&c) {
                comps.push(c);
            }
        }
        comps.sort_by_key(|c| c.first());
        comps
    }

    #[test]
    fn conjunctive_triangle_dependency_graph() {
        let p = parse_str(CONJUNCTIVE_TRIANGLE).unwrap();
        let g = dependency_graph(&p);
        assert_eq!(
            edges(&p, &g),
            named_edges(&[("p", "r"), ("r", "p"), ("q", "r"), ("r", "q")])
        );
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(sccs(&g), scc_oracle(&g));
        assert_eq!(sccs(&g), vec![set(&p, &["p", "q", "r"]), set(&p, &["s"])]);
    }

    #[test]
    fn facts_have_no_edges() {
        let p = parse_str("a. b ; c. :- a, b.").unwrap();
        let g = dependency_graph(&p);
        assert!(g.edges().is_empty());
        assert_eq!(g.sccs().len(), 3);
    }

    #[test]
    fn rotating_choice_dependency_graph() {
        let p = parse_str(ROTATING_CHOICE).unwrap();
        let g = dependency_graph(&p);
        let expected = named_edges(&[
            ("p", "r"),
            ("q", "r"),
            ("p", "q"),
            ("r", "q"),
            ("q", "p"),
            ("r", "p"),
        ]);
        assert_eq!(edges(&p, &g), expected);
    }

    #[test]
    fn conjunctive_triangle_loops() {
        let p = parse_str(CONJUNCTIVE_TRIANGLE).unwrap();
        let expected: Vec<AtomSet> = {
            let mut v: Vec<_> = [
                &["p"][..],
                &["q"],
                &["r"],
                &["s"],
                &["p", "r"],
                &["q", "r"],
                &["p", "q", "r"],
            ]
            .iter()
            .map(|n| set(&p, n))
            .collect();
            v.sort();
            v
        };
        assert_eq!(loops(&p, Guard::DEFAULT).unwrap(), expected);
        for x in p.atoms().subsets() {
            assert_eq!(is_loop(&p, &x), expected.contains(&x), "{x:?}");
        }
        assert!(!is_loop(&p, &set(&p, &["p", "q"])));
        assert!(!is_loop(&p, &AtomSet::new()));

        let split = parse_str(SPLIT_TRIANGLE).unwrap();
        let l2: Vec<Vec<String>> = loops(&split, Guard::DEFAULT)
            .unwrap()
            .iter()
            .map(|s| s.names(split.table()))
            .collect();
        let l1: Vec<Vec<String>> = expected.iter().map(|s| s.names(p.table())).collect();
        assert_eq!(l1, l2);

        let uf = parse_str(ROTATING_CHOICE).unwrap();
        assert_eq!(loops(&uf, Guard::DEFAULT).unwrap().len(), 7);
    }

    #[test]
    fn maximal_loops() {
        let p = parse_str(CONJUNCTIVE_TRIANGLE).unwrap();
        assert_eq!(
            maximal_loops_within(&p, &p.atoms()),
            vec![set(&p, &["s"]), set(&p, &["p", "q", "r"])]
        );
        assert!(maximal_loops_within(&p, &AtomSet::new()).is_empty());
        // Atoms outside the program never form loops.
        let mut t = p.table().clone();
        let stray = t.intern("zz");
        let p2 = Program::new(t, p.rules().to_vec());
        assert!(maximal_loops_within(&p2, &AtomSet::singleton(stray)).is_empty());
    }

    #[test]
    fn triangle_elementary_subgraph() {
        let p = parse_str(CONJUNCTIVE_TRIANGLE).unwrap();
        let g = elementary_subgraph(&p, &set(&p, &["p", "q", "r"])).unwrap();
        assert_eq!(edges(&p, &g), named_edges(&[("p", "r"), ("q", "r")]));
        assert!(!g.is_strongly_connected());
        assert_eq!(g.sccs().len(), 3);

        let split = parse_str(SPLIT_TRIANGLE).unwrap();
        assert!(elementary_subgraph(&split, &set(&split, &["p", "q", "r"]))
            .unwrap()
            .is_strongly_connected());

        let single = elementary_subgraph(&p, &set(&p, &["s"])).unwrap();
        assert!(single.is_strongly_connected() && single.edges().is_empty());

        let mut t = p.table().clone();
        let stray = t.intern("zz");
        let p2 = Program::new(t, p.rules().to_vec());
        assert!(matches!(
            elementary_subgraph(&p2, &AtomSet::singleton(stray)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dot_export() {
        let p = parse_str("a :- b.").unwrap();
        let dot = dependency_graph(&p).to_dot(p.table(), "dep");
        assert_eq!(
            dot,
            "digraph dep {\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\";\n}\n"
        );
    }
}
