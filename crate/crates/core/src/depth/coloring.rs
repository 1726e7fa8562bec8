//! Proper edge colourings: alternating-path recolouring for bipartite graphs
//! (exactly Δ colours) and Misra–Gries otherwise (at most Δ+1 colours).

use std::collections::{BTreeMap, HashMap};

use crate::geometry::Geometry;
use crate::pattern::{Edge, Qubit};

/// Colour (time step, starting at 1) of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeColoring {
    pub color: BTreeMap<Edge, usize>,
}

impl EdgeColoring {
    pub fn num_colors(&self) -> usize {
        self.color.values().copied().max().unwrap_or(0)
    }

    /// No two edges sharing an endpoint have the same colour.
    pub fn is_proper(&self) -> bool {
        let mut seen: HashMap<(Qubit, usize), Edge> = HashMap::new();
        for (&e, &c) in &self.color {
            for v in [e.lo(), e.hi()] {
                if seen.insert((v, c), e).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Edges grouped by colour, colour 1 first.
    pub fn classes(&self) -> Vec<Vec<Edge>> {
        let mut out = vec![Vec::new(); self.num_colors()];
        for (&e, &c) in &self.color {
            out[c - 1].push(e);
        }
        out
    }
}

/// Working state: the colour of each edge plus, per vertex, the neighbour
/// reached through each colour.
struct Painter {
    color: BTreeMap<Edge, usize>,
    at: HashMap<Qubit, HashMap<usize, Qubit>>,
}

impl Painter {
    fn new() -> Painter {
        Painter {
            color: BTreeMap::new(),
            at: HashMap::new(),
        }
    }

    fn is_free(&self, v: Qubit, c: usize) -> bool {
        self.at.get(&v).is_none_or(|m| !m.contains_key(&c))
    }

    fn first_free(&self, v: Qubit, palette: usize) -> usize {
        (1..=palette)
            .find(|&c| self.is_free(v, c))
            .expect("palette larger than degree always has a free colour")
    }

    fn get(&self, a: Qubit, b: Qubit) -> Option<usize> {
        self.color.get(&Edge::new(a, b)).copied()
    }

    fn set(&mut self, a: Qubit, b: Qubit, c: usize) {
        self.clear(a, b);
        self.color.insert(Edge::new(a, b), c);
        self.at.entry(a).or_default().insert(c, b);
        self.at.entry(b).or_default().insert(c, a);
    }

    fn clear(&mut self, a: Qubit, b: Qubit) {
        if let Some(old) = self.color.remove(&Edge::new(a, b)) {
            self.at.entry(a).or_default().remove(&old);
            self.at.entry(b).or_default().remove(&old);
        }
    }

    fn via(&self, v: Qubit, c: usize) -> Option<Qubit> {
        self.at.get(&v).and_then(|m| m.get(&c).copied())
    }

    /// Swaps colours `c` and `d` along the maximal path that leaves `start`
    /// through colour `d` and then alternates `c`, `d`, ...
    fn flip_path(&mut self, start: Qubit, c: usize, d: usize) {
        let mut path = Vec::new();
        let mut v = start;
        let mut want = d;
        while let Some(w) = self.via(v, want) {
            path.push((v, w, want));
            v = w;
            want = if want == d { c } else { d };
            if path.len() > self.color.len() {
                break;
            }
        }
        for &(a, b, _) in &path {
            self.clear(a, b);
        }
        for (a, b, col) in path {
            self.set(a, b, if col == c { d } else { c });
        }
    }

    fn finish(self) -> EdgeColoring {
        EdgeColoring { color: self.color }
    }
}

/// Δ-colouring of a bipartite graph by alternating-path recolouring.
/// Returns `None` when the graph is not bipartite.
pub fn bipartite_coloring(g: &Geometry) -> Option<EdgeColoring> {
    g.bipartition()?;
    let delta = g.max_degree();
    let mut p = Painter::new();
    for &e in g.edges() {
        let (u, v) = (e.lo(), e.hi());
        let a = p.first_free(u, delta);
        if !p.is_free(v, a) {
            let b = p.first_free(v, delta);
            // In a bipartite graph the a/b path from v never returns to u.
            p.flip_path(v, b, a);
        }
        p.set(u, v, a);
    }
    Some(p.finish())
}

/// Misra–Gries colouring with at most Δ+1 colours.
pub fn misra_gries(g: &Geometry) -> EdgeColoring {
    let palette = g.max_degree() + 1;
    let mut p = Painter::new();
    for &e in g.edges() {
        let (x, y) = (e.lo(), e.hi());
        // Maximal fan of x starting at y.
        let mut fan = vec![y];
        loop {
            let last = *fan.last().unwrap();
            let next = g
                .neighbors(x)
                .find(|&z| !fan.contains(&z) && p.get(x, z).is_some_and(|c| p.is_free(last, c)));
            match next {
                Some(z) => fan.push(z),
                None => break,
            }
        }
        let c = p.first_free(x, palette);
        let d = p.first_free(*fan.last().unwrap(), palette);
        if c != d {
            p.flip_path(x, c, d);
        }
        // First fan vertex with d free such that the prefix is still a fan.
        let mut w = fan.len() - 1;
        for i in 0..fan.len() {
            let prefix_ok = (1..=i).all(|j| {
                p.get(x, fan[j])
                    .is_some_and(|col| p.is_free(fan[j - 1], col))
            });
            if prefix_ok && p.is_free(fan[i], d) {
                w = i;
                break;
            }
        }
        for j in 0..w {
            let next = p.get(x, fan[j + 1]).expect("fan edges are coloured");
            p.clear(x, fan[j + 1]);
            p.set(x, fan[j], next);
        }
        p.set(x, fan[w], d);
    }
    p.finish()
}

/// Preparation depth of a geometry: the number of colours of a proper edge
/// colouring (Δ when bipartite, at most Δ+1 otherwise) and the colouring.
pub fn preparation_depth(g: &Geometry) -> (usize, EdgeColoring) {
    let col = bipartite_coloring(g).unwrap_or_else(|| misra_gries(g));
    debug_assert!(col.is_proper());
    (col.num_colors(), col)
}
