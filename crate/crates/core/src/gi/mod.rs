//! Graph isomorphism by colour refinement and individualization, with
//! canonical certificates.

mod tree;

pub use tree::{rooted_code, tree_centers, tree_code, TreeCode};

use crate::error::{Error, Result};
use crate::graph::{color_gadget_graphic_with_base, Multigraph, UnionFind};
use crate::matroid::IsoWitness;
use crate::text::numbers;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A multigraph with vertex colours; edge colours come from the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Multigraph,
    vertex_colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn new(graph: Multigraph, vertex_colors: Vec<u32>) -> Result<Self> {
        if vertex_colors.len() != graph.vertex_count() {
            return Err(Error::input(format!(
                "{} vertex colours for {} vertices",
                vertex_colors.len(),
                graph.vertex_count()
            )));
        }
        Ok(ColoredGraph { graph, vertex_colors })
    }

    pub fn plain(graph: Multigraph) -> Self {
        let n = graph.vertex_count();
        ColoredGraph { graph, vertex_colors: vec![0; n] }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn vertex_colors(&self) -> &[u32] {
        &self.vertex_colors
    }

    /// A graph file with an optional `vcolors <c0> .. <c(n-1)>` line anywhere after the header.
    pub fn parse(text: &str) -> Result<Self> {
        let mut colors = None;
        let mut rest = String::with_capacity(text.len());
        for (i, line) in text.lines().enumerate() {
            match line.trim().strip_prefix("vcolors") {
                Some(tail) if colors.is_none() => {
                    colors = Some((i + 1, numbers::<u32>(i + 1, tail, "vertex colours")?));
                }
                Some(_) => return Err(Error::parse(i + 1, "duplicate `vcolors` line")),
                None => rest.push_str(line),
            }
            rest.push('\n');
        }
        let graph = Multigraph::parse(&rest)?;
        match colors {
            None => Ok(ColoredGraph::plain(graph)),
            Some((no, c)) => ColoredGraph::new(graph, c).map_err(|e| Error::parse(no, e.to_string())),
        }
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph)?;
        if self.vertex_colors.iter().any(|&c| c != 0) {
            write!(f, "vcolors")?;
            for c in &self.vertex_colors {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Complete isomorphism invariant: equal certificates iff isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    colors: Vec<u32>,
    multisets: Vec<Vec<u32>>,
    edges: Vec<(u32, u32, u32)>,
}

/// Parallel classes folded into one adjacency entry keyed by their colour multiset.
struct Folded {
    n: usize,
    colors: Vec<u32>,
    multisets: Vec<Vec<u32>>,
    adj: Vec<Vec<(usize, u32)>>,
    pairs: Vec<(usize, usize, u32)>,
}

impl Folded {
    fn new(g: &ColoredGraph) -> Self {
        let n = g.graph.vertex_count();
        let mut classes: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for (e, &(u, v)) in g.graph.edges().iter().enumerate() {
            classes.entry((u.min(v), u.max(v))).or_default().push(g.graph.color(e));
        }
        for ms in classes.values_mut() {
            ms.sort_unstable();
        }
        let mut multisets: Vec<Vec<u32>> = classes.values().cloned().collect();
        multisets.sort();
        multisets.dedup();
        let mut adj = vec![Vec::new(); n];
        let mut pairs = Vec::new();
        for ((u, v), ms) in &classes {
            let key = multisets.binary_search(ms).unwrap() as u32;
            adj[*u].push((*v, key));
            adj[*v].push((*u, key));
            pairs.push((*u, *v, key));
        }
        Folded { n, colors: g.vertex_colors.clone(), multisets, adj, pairs }
    }

    fn initial_partition(&self) -> Vec<Vec<usize>> {
        let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            by_color.entry(self.colors[v]).or_default().push(v);
        }
        by_color.into_values().collect()
    }

    /// Splits cells until every vertex in a cell sees the same multiset of
    /// (neighbour cell, parallel-class key) pairs. Sub-cells are ordered by signature.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let mut cell_of = vec![0usize; self.n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let mut changed = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, u32)> = self.adj[v].iter().map(|&(w, k)| (cell_of[w], k)).collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
                if next.last().map(Vec::len) != Some(cell.len()) {
                    changed = true;
                }
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn leaf_certificate(&self, cells: &[Vec<usize>]) -> (Vec<(u32, u32, u32)>, Vec<usize>) {
        let mut lab = vec![0usize; self.n];
        for (i, c) in cells.iter().enumerate() {
            lab[c[0]] = i;
        }
        let mut edges: Vec<(u32, u32, u32)> = self
            .pairs
            .iter()
            .map(|&(u, v, k)| {
                let (a, b) = (lab[u] as u32, lab[v] as u32);
                (a.min(b), a.max(b), k)
            })
            .collect();
        edges.sort_unstable();
        (edges, lab)
    }
}

/// A leaf's relabelled edge list together with its labelling.
type Leaf = (Vec<(u32, u32, u32)>, Vec<usize>);

struct Search<'a> {
    g: &'a Folded,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        self.g.refine(&mut cells);
        let Some(target) = (0..cells.len()).filter(|&i| cells[i].len() > 1).min_by_key(|&i| (cells[i].len(), i)) else {
            self.leaf(&cells);
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            prefix.push(v);
            self.run(child, prefix);
            prefix.pop();
        }
    }

    fn same_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let mut uf = UnionFind::new(self.g.n);
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                for (x, &y) in gamma.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        let r = uf.find(v);
        tried.iter().any(|&t| uf.find(t) == r)
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let (cert, lab) = self.g.leaf_certificate(cells);
        if let Some((fc, flab)) = &self.first {
            if *fc == cert {
                self.automorphisms.push(automorphism(flab, &lab));
                return;
            }
        } else {
            self.first = Some((cert.clone(), lab.clone()));
        }
        match &self.best {
            Some((bc, blab)) if *bc == cert => {
                let gamma = automorphism(blab, &lab);
                self.automorphisms.push(gamma);
            }
            Some((bc, _)) if *bc < cert => {}
            _ => self.best = Some((cert, lab)),
        }
    }
}

/// The vertex map sending the labelling `from` onto `to`: `v -> to^-1(from(v))`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; to.len()];
    for (v, &l) in to.iter().enumerate() {
        inv[l] = v;
    }
    from.iter().map(|&l| inv[l]).collect()
}

/// Canonical certificate and the labelling (vertex -> canonical position) producing it.
pub fn canonical_form(g: &ColoredGraph) -> (Certificate, Vec<usize>) {
    let folded = Folded::new(g);
    let mut search = Search { g: &folded, first: None, best: None, automorphisms: Vec::new() };
    search.run(folded.initial_partition(), &mut Vec::new());
    let (edges, lab) = search.best.expect("search visits at least one leaf");
    let mut colors = vec![0; folded.n];
    for v in 0..folded.n {
        colors[lab[v]] = folded.colors[v];
    }
    (Certificate { colors, multisets: folded.multisets.clone(), edges }, lab)
}

/// Colour-preserving vertex bijection `G1 -> G2`, if one exists.
pub fn graph_isomorphism(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Vec<usize>> {
    if g1.graph.vertex_count() != g2.graph.vertex_count() || g1.graph.edge_count() != g2.graph.edge_count() {
        return None;
    }
    let (c1, lab1) = canonical_form(g1);
    let (c2, lab2) = canonical_form(g2);
    (c1 == c2).then(|| automorphism(&lab1, &lab2))
}

/// Extends a vertex bijection to edges, pairing parallel edges of equal colour in id order.
pub fn edge_bijection(g1: &Multigraph, g2: &Multigraph, vertex_map: &[usize]) -> Option<IsoWitness> {
    if g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut pool: HashMap<(usize, usize, u32), Vec<usize>> = HashMap::new();
    for (e, &(u, v)) in g2.edges().iter().enumerate().rev() {
        pool.entry((u.min(v), u.max(v), g2.color(e))).or_default().push(e);
    }
    let mut map = Vec::with_capacity(g1.edge_count());
    for (e, &(u, v)) in g1.edges().iter().enumerate() {
        let (a, b) = (vertex_map[u], vertex_map[v]);
        map.push(pool.get_mut(&(a.min(b), a.max(b), g1.color(e)))?.pop()?);
    }
    IsoWitness::new(map).ok()
}

/// True when `vertex_map` is a colour-preserving isomorphism.
pub fn validates_vertex_map(g1: &ColoredGraph, g2: &ColoredGraph, vertex_map: &[usize]) -> bool {
    let n = g1.graph.vertex_count();
    if vertex_map.len() != n || g2.graph.vertex_count() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for (v, &t) in vertex_map.iter().enumerate() {
        if t >= n || seen[t] || g1.vertex_colors[v] != g2.vertex_colors[t] {
            return false;
        }
        seen[t] = true;
    }
    edge_bijection(&g1.graph, &g2.graph, vertex_map).is_some()
}

const PATH_VERTEX: u32 = u32::MAX;

/// Edge colours of a 3-connected graph folded into paths of length `base + colour + 1`,
/// path vertices marked with a reserved vertex colour.
fn gadgeted(c: &ColoredGraph, base: usize) -> Result<ColoredGraph> {
    let shifted: Vec<u32> = c.graph.color_vec().iter().map(|&x| x + 1).collect();
    let g = c.graph.uncolored().with_colors(shifted)?;
    let out = color_gadget_graphic_with_base(&g, base)?;
    let mut colors = c.vertex_colors.clone();
    colors.resize(out.vertex_count(), PATH_VERTEX);
    ColoredGraph::new(out, colors)
}

fn require_3connected(c: &ColoredGraph) -> Result<()> {
    if !c.graph.is_3connected() {
        return Err(Error::precondition("component is not 3-connected"));
    }
    Ok(())
}

/// Certificate of the path-gadgeted graph. Components compared with each other must
/// share `base`, which must be at least each vertex count.
pub fn colored_3conn_certificate(c: &ColoredGraph, base: usize) -> Result<Certificate> {
    require_3connected(c)?;
    Ok(canonical_form(&gadgeted(c, base)?).0)
}

/// Colour-preserving 2-isomorphism of 3-connected graphs, decided as isomorphism of
/// their path-gadgeted forms and returned as an edge bijection.
pub fn colored_3conn_2iso(c1: &ColoredGraph, c2: &ColoredGraph) -> Result<Option<IsoWitness>> {
    require_3connected(c1)?;
    require_3connected(c2)?;
    if c1.graph.edge_count() != c2.graph.edge_count() || c1.graph.vertex_count() != c2.graph.vertex_count() {
        return Ok(None);
    }
    let base = c1.graph.vertex_count();
    let (g1, g2) = (gadgeted(c1, base)?, gadgeted(c2, base)?);
    let Some(phi) = graph_isomorphism(&g1, &g2) else {
        return Ok(None);
    };
    let witness = edge_bijection(&c1.graph, &c2.graph, &phi[..c1.graph.vertex_count()]);
    match witness {
        Some(w) => Ok(Some(w)),
        None => Err(Error::integrity("gadget isomorphism does not restrict to the original edges")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::matroid::subset::next_permutation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_iso(g1: &ColoredGraph, g2: &ColoredGraph) -> bool {
        let n = g1.graph.vertex_count();
        if n != g2.graph.vertex_count() {
            return false;
        }
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            if validates_vertex_map(g1, g2, &p) {
                return true;
            }
            if !next_permutation(&mut p) {
                return false;
            }
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Multigraph {
        let edges = (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n);
                let v = (u + rng.gen_range(1..n)) % n;
                (u, v)
            })
            .collect();
        let colors = (0..m).map(|_| rng.gen_range(0..2)).collect();
        Multigraph::new(n, edges).unwrap().with_colors(colors).unwrap()
    }

    fn shuffled(rng: &mut ChaCha8Rng, g: &ColoredGraph) -> ColoredGraph {
        let n = g.graph.vertex_count();
        let mut vp: Vec<usize> = (0..n).collect();
        vp.shuffle(rng);
        let mut ep: Vec<usize> = (0..g.graph.edge_count()).collect();
        ep.shuffle(rng);
        let mut colors = vec![0; n];
        for v in 0..n {
            colors[vp[v]] = g.vertex_colors[v];
        }
        ColoredGraph::new(g.graph.relabeled(&vp, &ep), colors).unwrap()
    }

    #[test]
    fn petersen_is_self_isomorphic() {
        let p = ColoredGraph::plain(petersen());
        let phi = graph_isomorphism(&p, &p).unwrap();
        assert!(validates_vertex_map(&p, &p, &phi));
    }

    #[test]
    fn c6_is_not_two_triangles() {
        let c6 = ColoredGraph::plain(cycle(6));
        let tt = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(graph_isomorphism(&c6, &ColoredGraph::plain(tt)).is_none());
    }

    #[test]
    fn random_relabelings_are_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(2..9);
            let m = rng.gen_range(0..14);
            let g = random_graph(&mut rng, n, m);
            let colors = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let g = ColoredGraph::new(g, colors).unwrap();
            let h = shuffled(&mut rng, &g);
            let phi = graph_isomorphism(&g, &h).expect("relabeled copy");
            assert!(validates_vertex_map(&g, &h, &phi));
            let w = edge_bijection(&g.graph, &h.graph, &phi).unwrap();
            for e in 0..g.graph.edge_count() {
                assert_eq!(g.graph.color(e), h.graph.color(w.apply(e)));
            }
        }
    }

    #[test]
    fn agrees_with_factorial_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            let n = rng.gen_range(1..7);
            let m = rng.gen_range(0..9);
            let (g, h) = if n == 1 {
                (Multigraph::new(1, vec![]).unwrap(), Multigraph::new(1, vec![]).unwrap())
            } else {
                (random_graph(&mut rng, n, m), random_graph(&mut rng, n, m))
            };
            let (g, h) = (ColoredGraph::plain(g), ColoredGraph::plain(h));
            let found = graph_isomorphism(&g, &h);
            assert_eq!(found.is_some(), brute_iso(&g, &h));
            if let Some(phi) = found {
                assert!(validates_vertex_map(&g, &h, &phi));
            }
        }
    }

    #[test]
    fn vertex_colors_are_respected() {
        let p = path(2);
        let a = ColoredGraph::new(p.clone(), vec![1, 0, 0]).unwrap();
        let b = ColoredGraph::new(p.clone(), vec![0, 1, 0]).unwrap();
        let c = ColoredGraph::new(p, vec![0, 0, 1]).unwrap();
        assert!(graph_isomorphism(&a, &b).is_none());
        let phi = graph_isomorphism(&a, &c).unwrap();
        assert_eq!(phi, vec![2, 1, 0]);
    }

    #[test]
    fn symmetric_graphs_finish() {
        for g in [complete(9), cycle(30), gen_grid()] {
            let c = ColoredGraph::plain(g);
            assert!(graph_isomorphism(&c, &c).is_some());
        }
    }

    fn gen_grid() -> Multigraph {
        crate::graph::gen_modk_gadget(4).unwrap()
    }

    #[test]
    fn three_connected_colored_2iso() {
        let k4 = complete(4);
        let uni = ColoredGraph::plain(k4.clone());
        let w = colored_3conn_2iso(&uni, &uni).unwrap().unwrap();
        assert_eq!(w.len(), 6);
        let one = ColoredGraph::plain(k4.clone().with_colors(vec![1, 0, 0, 0, 0, 0]).unwrap());
        let two = ColoredGraph::plain(k4.clone().with_colors(vec![0, 0, 0, 0, 0, 2]).unwrap());
        let same = ColoredGraph::plain(k4.clone().with_colors(vec![0, 0, 0, 0, 0, 1]).unwrap());
        assert!(colored_3conn_2iso(&one, &two).unwrap().is_none());
        let w = colored_3conn_2iso(&one, &same).unwrap().unwrap();
        assert_eq!(w.apply(0), 5);
        let w5 = ColoredGraph::plain(wheel(5));
        assert!(colored_3conn_2iso(&w5, &w5).unwrap().is_some());
        assert!(colored_3conn_2iso(&ColoredGraph::plain(cycle(4)), &ColoredGraph::plain(cycle(4))).is_err());
        assert_eq!(colored_3conn_certificate(&one, 6).unwrap(), colored_3conn_certificate(&same, 6).unwrap());
    }
}
