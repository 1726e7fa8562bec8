use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::pattern::{Edge, Qubit};

/// An undirected simple graph with distinguished input and output vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    vertices: BTreeSet<Qubit>,
    edges: BTreeSet<Edge>,
    adj: BTreeMap<Qubit, BTreeSet<Qubit>>,
    pub inputs: BTreeSet<Qubit>,
    pub outputs: BTreeSet<Qubit>,
}

impl Geometry {
    /// Endpoints of `edges` are added to the vertex set.
    pub fn new(
        vertices: BTreeSet<Qubit>,
        edges: BTreeSet<Edge>,
        inputs: BTreeSet<Qubit>,
        outputs: BTreeSet<Qubit>,
    ) -> Geometry {
        let mut vertices = vertices;
        let mut adj: BTreeMap<Qubit, BTreeSet<Qubit>> =
            vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for e in &edges {
            vertices.insert(e.lo());
            vertices.insert(e.hi());
            adj.entry(e.lo()).or_default().insert(e.hi());
            adj.entry(e.hi()).or_default().insert(e.lo());
        }
        Geometry {
            vertices,
            edges,
            adj,
            inputs,
            outputs,
        }
    }

    /// Convenience constructor from raw ids.
    pub fn from_edges(
        n_or_vertices: impl IntoIterator<Item = u32>,
        edges: &[(u32, u32)],
        inputs: impl IntoIterator<Item = u32>,
        outputs: impl IntoIterator<Item = u32>,
    ) -> Geometry {
        Geometry::new(
            n_or_vertices.into_iter().map(Qubit).collect(),
            edges
                .iter()
                .map(|&(a, b)| Edge::new(Qubit(a), Qubit(b)))
                .collect(),
            inputs.into_iter().map(Qubit).collect(),
            outputs.into_iter().map(Qubit).collect(),
        )
    }

    pub fn vertices(&self) -> &BTreeSet<Qubit> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn neighbors(&self, v: Qubit) -> impl Iterator<Item = Qubit> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn adjacent(&self, a: Qubit, b: Qubit) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn degree(&self, v: Qubit) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices
            .iter()
            .map(|&v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn non_outputs(&self) -> BTreeSet<Qubit> {
        self.vertices.difference(&self.outputs).copied().collect()
    }

    pub fn non_inputs(&self) -> BTreeSet<Qubit> {
        self.vertices.difference(&self.inputs).copied().collect()
    }

    /// A proper 2-colouring `(side A, side B)` when the graph is bipartite.
    pub fn bipartition(&self) -> Option<(BTreeSet<Qubit>, BTreeSet<Qubit>)> {
        let mut side: BTreeMap<Qubit, bool> = BTreeMap::new();
        for &root in &self.vertices {
            if side.contains_key(&root) {
                continue;
            }
            side.insert(root, false);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let sv = side[&v];
                for w in self.neighbors(v) {
                    match side.get(&w) {
                        Some(&sw) if sw == sv => return None,
                        Some(_) => {}
                        None => {
                            side.insert(w, !sv);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let (a, b): (Vec<_>, Vec<_>) = side.into_iter().partition(|&(_, s)| !s);
        Some((
            a.into_iter().map(|(v, _)| v).collect(),
            b.into_iter().map(|(v, _)| v).collect(),
        ))
    }
}
