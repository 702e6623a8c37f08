//! Multigraphs and their graphic matroids.

mod cycles;
mod gadgets;
mod whitney;

pub use cycles::{
    cycle_basis, is_matroid_automorphism, is_matroid_automorphism_system, is_matroid_isomorphism, CycleBasis,
};
pub use gadgets::{color_gadget_graphic, color_gadget_graphic_with_base, gen_modk_gadget, modk_shift};
pub use whitney::{random_2iso_pair, replay, whitney_cleave, whitney_identify, whitney_twist, WhitneyOp};

use crate::error::{Error, Result};
use crate::matroid::MatroidOracle;
use crate::text::{content_lines, numbers};
use std::fmt;

/// Loopless multigraph on vertices `0..n` with edges `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    colors: Option<Vec<u32>>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge {i} ({u},{v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::input(format!("edge {i} is a self-loop at {u}")));
            }
        }
        Ok(Multigraph { n, edges, colors: None })
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.edges.len() {
            return Err(Error::input(format!("{} colours for {} edges", colors.len(), self.edges.len())));
        }
        self.colors = (!colors.is_empty()).then_some(colors);
        Ok(self)
    }

    pub fn uncolored(&self) -> Self {
        Multigraph { colors: None, ..self.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    /// Colour of `e`, 0 when the graph is uncoloured.
    pub fn color(&self, e: usize) -> u32 {
        self.colors.as_ref().map_or(0, |c| c[e])
    }

    /// Colour array, all zeros when uncoloured.
    pub fn color_vec(&self) -> Vec<u32> {
        (0..self.edges.len()).map(|e| self.color(e)).collect()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: u32) -> usize {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        if let Some(c) = &mut self.colors {
            c.push(color);
        } else if color != 0 {
            let mut c = vec![0; self.edges.len()];
            c.push(color);
            self.colors = Some(c);
        }
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    /// `(neighbour, edge)` lists per vertex, edges in id order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Renames vertex `v` to `vertex_map[v]` and edge `e` to `edge_map[e]`.
    pub fn relabeled(&self, vertex_map: &[usize], edge_map: &[usize]) -> Self {
        let m = self.edges.len();
        let mut edges = vec![(0, 0); m];
        let mut colors = self.colors.as_ref().map(|_| vec![0; m]);
        for e in 0..m {
            let (u, v) = self.edges[e];
            edges[edge_map[e]] = (vertex_map[u], vertex_map[v]);
            if let Some(c) = &mut colors {
                c[edge_map[e]] = self.color(e);
            }
        }
        Multigraph { n: self.n, edges, colors }
    }

    /// Subgraph on the listed edges (renumbered in list order), keeping all vertices.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Self {
        Multigraph {
            n: self.n,
            edges: edges.iter().map(|&e| self.edges[e]).collect(),
            colors: self.colors.as_ref().map(|c| edges.iter().map(|&e| c[e]).collect()),
        }
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[v] = label[r];
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Cut vertices of the graph with `removed` deleted.
    pub fn articulation_points(&self, removed: Option<usize>) -> Vec<usize> {
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut is_cut = vec![false; self.n];
        let mut time = 0;
        for root in 0..self.n {
            if Some(root) == removed || disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent edge, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, pe) = (top.0, top.1);
                if top.2 < adj[v].len() {
                    let (w, e) = adj[v][top.2];
                    top.2 += 1;
                    if e == pe || Some(w) == removed {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..self.n).filter(|&v| is_cut[v]).collect()
    }

    /// Block (biconnected component) label per edge, numbered in discovery order.
    /// Bridges form single-edge blocks.
    pub fn edge_blocks(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let m = self.edges.len();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut block = vec![usize::MAX; m];
        let mut count = 0;
        let mut time = 0;
        let mut estack: Vec<usize> = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, pe) = (top.0, top.1);
                if top.2 < adj[v].len() {
                    let (w, e) = adj[v][top.2];
                    top.2 += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        estack.push(e);
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        low[v] = low[v].min(disc[w]);
                        estack.push(e);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            while let Some(f) = estack.pop() {
                                block[f] = count;
                                if f == pe {
                                    break;
                                }
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        (block, count)
    }

    /// Vertices that carry at least one edge.
    pub fn active_vertices(&self) -> Vec<usize> {
        let d = self.degrees();
        (0..self.n).filter(|&v| d[v] > 0).collect()
    }

    /// True when the edges form a single block: non-empty, connected on the
    /// vertices they touch, and without cut vertices.
    pub fn is_biconnected(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let (label, _) = self.components();
        let active = self.active_vertices();
        active.iter().all(|&v| label[v] == label[active[0]]) && self.articulation_points(None).is_empty()
    }

    /// Pairs `{a, b}` whose removal disconnects the vertices carrying edges.
    pub fn separating_pairs(&self) -> Vec<(usize, usize)> {
        let active = self.active_vertices();
        let mut pairs = Vec::new();
        for (i, &a) in active.iter().enumerate() {
            for &b in &active[i + 1..] {
                let mut uf = UnionFind::new(self.n);
                for &(u, v) in &self.edges {
                    if u != a && u != b && v != a && v != b {
                        uf.union(u, v);
                    }
                }
                let rest: Vec<usize> = active.iter().copied().filter(|&v| v != a && v != b).collect();
                if rest.iter().any(|&v| uf.find(v) != uf.find(rest[0])) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Simple, at least four vertices, and no vertex pair disconnects it.
    pub fn is_3connected(&self) -> bool {
        self.n >= 4
            && self.is_simple()
            && self.active_vertices().len() == self.n
            && self.is_biconnected()
            && (0..self.n).all(|a| {
                let cut = self.articulation_points(Some(a));
                let mut uf = UnionFind::new(self.n);
                for &(u, v) in &self.edges {
                    if u != a && v != a {
                        uf.union(u, v);
                    }
                }
                let first = if a == 0 { 1 } else { 0 };
                cut.is_empty() && (0..self.n).all(|v| v == a || uf.find(v) == uf.find(first))
            })
    }

    /// Parses `graph <n> <m>` followed by `e <u> <v> [color]` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.len() != 3 || words[0] != "graph" {
            return Err(Error::parse(hline, "expected header `graph <n> <m>`"));
        }
        let dims = numbers::<usize>(hline, &header[5..], "vertex and edge counts")?;
        let (n, m) = (dims[0], dims[1]);
        let mut edges = Vec::with_capacity(m);
        let mut colors = Vec::with_capacity(m);
        let mut any_color = false;
        let mut last = hline;
        for (no, line) in lines {
            last = no;
            let rest = line.strip_prefix("e ").ok_or_else(|| Error::parse(no, "expected `e <u> <v> [color]`"))?;
            let vals = numbers::<u64>(no, rest, "`e <u> <v> [color]`")?;
            if vals.len() < 2 || vals.len() > 3 {
                return Err(Error::parse(no, "expected `e <u> <v> [color]`"));
            }
            let (u, v) = (vals[0] as usize, vals[1] as usize);
            if u >= n || v >= n {
                return Err(Error::parse(no, format!("endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::parse(no, "self-loops are not allowed"));
            }
            if vals.len() == 3 {
                any_color = true;
                colors.push(u32::try_from(vals[2]).map_err(|_| Error::parse(no, "colour too large"))?);
            } else {
                colors.push(0);
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(last, format!("declared {m} edges, found {}", edges.len())));
        }
        let g = Multigraph::new(n, edges)?;
        if any_color {
            g.with_colors(colors)
        } else {
            Ok(g)
        }
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} {}", self.n, self.edges.len())?;
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            match &self.colors {
                Some(c) => writeln!(f, "e {u} {v} {}", c[e])?,
                None => writeln!(f, "e {u} {v}")?,
            }
        }
        Ok(())
    }
}

/// The graphic matroid: a set of edges is independent iff it is a forest.
impl MatroidOracle for Multigraph {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n);
        set.iter().all(|&e| {
            let (u, v) = self.edges[e];
            uf.union(u, v)
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Common small graphs.
pub mod named {
    use super::Multigraph;

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Multigraph::new(n, edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("n >= 2")
    }

    pub fn path(edges: usize) -> Multigraph {
        Multigraph::new(edges + 1, (0..edges).map(|i| (i, i + 1)).collect()).expect("valid")
    }

    pub fn star(leaves: usize) -> Multigraph {
        Multigraph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("valid")
    }

    /// Hub 0 joined to a rim cycle on `1..=spokes`.
    pub fn wheel(spokes: usize) -> Multigraph {
        let mut edges: Vec<(usize, usize)> = (1..=spokes).map(|i| (0, i)).collect();
        edges.extend((1..=spokes).map(|i| (i, i % spokes + 1)));
        Multigraph::new(spokes + 1, edges).expect("valid")
    }

    pub fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph::new(10, edges).expect("valid")
    }

    pub fn parallel(copies: usize) -> Multigraph {
        Multigraph::new(2, vec![(0, 1); copies]).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::matroid::{check_axioms, circuits, matroid_rank, rank};

    #[test]
    fn triangle_and_parallel_pair() {
        let t = cycle(3);
        assert!(t.is_independent(&[0, 2]));
        assert!(!t.is_independent(&[0, 1, 2]));
        assert_eq!(rank(&t, &[0, 1, 2]).unwrap(), 2);
        let p = parallel(2);
        assert_eq!(circuits(&p).unwrap().sets(), &[vec![0, 1]]);
        assert_eq!(circuits(&parallel(3)).unwrap().len(), 3);
    }

    #[test]
    fn k4_oracle() {
        let k4 = complete(4);
        assert!(check_axioms(&k4).unwrap().is_ok());
        assert_eq!(matroid_rank(&k4), 3);
        let c = circuits(&k4).unwrap();
        assert_eq!(c.size_profile(), vec![0, 0, 0, 4, 3, 0, 0]);
    }

    #[test]
    fn self_loops_rejected() {
        assert!(Multigraph::new(2, vec![(1, 1)]).is_err());
        let err = Multigraph::parse("graph 2 1\ne 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_round_trip_with_colors() {
        let g = Multigraph::parse("graph 3 3\ne 0 1 2\ne 1 2\ne 0 1 1\n").unwrap();
        assert_eq!(g.color_vec(), vec![2, 0, 1]);
        assert_eq!(Multigraph::parse(&g.to_string()).unwrap(), g);
        let plain = complete(4);
        assert_eq!(Multigraph::parse(&plain.to_string()).unwrap(), plain);
        assert!(Multigraph::parse("graph 3 2\ne 0 1\n").is_err());
        assert!(matches!(Multigraph::parse("graph 3 1\ne 0 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn connectivity_predicates() {
        assert!(complete(4).is_3connected());
        assert!(wheel(5).is_3connected());
        assert!(petersen().is_3connected());
        assert!(!cycle(5).is_3connected());
        assert!(cycle(5).is_biconnected());
        assert!(!path(3).is_biconnected());
        assert!(path(1).is_biconnected());
        assert_eq!(path(3).articulation_points(None), vec![1, 2]);
        let bowtie = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(bowtie.articulation_points(None), vec![0]);
        assert_eq!(cycle(4).separating_pairs(), vec![(0, 2), (1, 3)]);
        assert!(complete(4).separating_pairs().is_empty());
        let (blocks, count) = bowtie.edge_blocks();
        assert_eq!(count, 2);
        assert!(blocks[0] == blocks[1] && blocks[1] == blocks[2] && blocks[3] == blocks[5] && blocks[0] != blocks[3]);
        assert_eq!(path(3).edge_blocks().1, 3);
        assert_eq!(parallel(3).edge_blocks(), (vec![0, 0, 0], 1));
    }

    #[test]
    fn relabeling_preserves_colors() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap().with_colors(vec![5, 6]).unwrap();
        let h = g.relabeled(&[2, 0, 1], &[1, 0]);
        assert_eq!(h.edges(), &[(0, 1), (2, 0)]);
        assert_eq!(h.color_vec(), vec![6, 5]);
    }
}
