//! Epistemic stratification.
//!
//! A program is stratified when its atoms can be given levels such that all
//! objective atoms of a rule share one level and every atom under `K` sits
//! strictly below them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::syntax::{Atom, Program};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratification {
    /// The least level mapping.
    Stratified(BTreeMap<Atom, usize>),
    /// Atoms along a cycle of strict level constraints, each standing for
    /// its class of equal-level atoms. The first atom is repeated at the end.
    Unstratified(Vec<Atom>),
}

impl Stratification {
    pub fn is_stratified(&self) -> bool {
        matches!(self, Stratification::Stratified(_))
    }

    pub fn levels(&self) -> Option<&BTreeMap<Atom, usize>> {
        match self {
            Stratification::Stratified(l) => Some(l),
            Stratification::Unstratified(_) => None,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let parent = self.0[x];
        if parent == x {
            return x;
        }
        let root = self.find(parent);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so representatives are stable
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

/// Decides whether `p` is epistemically stratified.
pub fn stratify(p: &Program) -> Stratification {
    let atoms: Vec<Atom> = p.atoms().into_iter().collect();
    let idx = |a: &Atom| atoms.binary_search(a).expect("atom indexed");

    let mut uf = UnionFind((0..atoms.len()).collect());
    for r in &p.rules {
        let mut objective = r.head_atoms().chain(r.body_obj_atoms()).map(idx);
        if let Some(first) = objective.next() {
            for other in objective {
                uf.union(first, other);
            }
        }
    }

    let mut graph: DiGraph<usize, ()> = DiGraph::new();
    let mut node: BTreeMap<usize, NodeIndex> = BTreeMap::new();
    for i in 0..atoms.len() {
        let root = uf.find(i);
        node.entry(root).or_insert_with(|| graph.add_node(root));
    }
    let mut edges = BTreeSet::new();
    for r in &p.rules {
        for a in r.head_atoms().chain(r.body_obj_atoms()) {
            for b in r.body_subj_atoms() {
                let (ca, cb) = (uf.find(idx(a)), uf.find(idx(b)));
                if edges.insert((ca, cb)) {
                    graph.add_edge(node[&ca], node[&cb], ());
                }
            }
        }
    }

    let Ok(order) = toposort(&graph, None) else {
        return Stratification::Unstratified(find_cycle(&graph, &atoms));
    };
    // sinks first: a class sits one above its highest strict successor
    let mut level: BTreeMap<NodeIndex, usize> = BTreeMap::new();
    for &n in order.iter().rev() {
        let l = graph
            .neighbors(n)
            .map(|m| level[&m] + 1)
            .max()
            .unwrap_or(0);
        level.insert(n, l);
    }
    Stratification::Stratified(
        atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), level[&node[&uf.find(i)]]))
            .collect(),
    )
}

fn find_cycle(graph: &DiGraph<usize, ()>, atoms: &[Atom]) -> Vec<Atom> {
    let scc = tarjan_scc(graph)
        .into_iter()
        .find(|c| c.len() > 1 || graph.contains_edge(c[0], c[0]))
        .expect("a graph without topological order has a cycle");
    let start = scc[0];
    if graph.contains_edge(start, start) {
        let a = atoms[graph[start]].clone();
        return vec![a.clone(), a];
    }
    let members: BTreeSet<NodeIndex> = scc.iter().copied().collect();
    // shortest path from `start` back to itself inside the component
    let mut parent: BTreeMap<NodeIndex, NodeIndex> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    'bfs: while let Some(n) = queue.pop_front() {
        for m in graph.neighbors(n) {
            if !members.contains(&m) || parent.contains_key(&m) {
                continue;
            }
            parent.insert(m, n);
            if m == start {
                break 'bfs;
            }
            queue.push_back(m);
        }
    }
    let mut path = vec![start];
    let mut cur = parent[&start];
    while cur != start {
        path.push(cur);
        cur = parent[&cur];
    }
    path.push(start);
    path.reverse();
    path.into_iter().map(|n| atoms[graph[n]].clone()).collect()
}
