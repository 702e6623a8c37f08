//! Blocks, trees of 3-connected components, and excised-pair surgery.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, UnionFind};
use std::collections::BTreeMap;
use std::fmt;

/// Edge-disjoint blocks of a graph. Bridges are single-edge blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

pub fn biconnected_components(x: &Multigraph) -> Blocks {
    let (label, count) = x.edge_blocks();
    let mut blocks = vec![Vec::new(); count];
    for (e, &b) in label.iter().enumerate() {
        blocks[b].push(e);
    }
    blocks.sort();
    Blocks { blocks, cut_vertices: x.articulation_points(None) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Triconnected,
    Bond,
    Polygon,
    /// Bond holding the real edge added across an excised pair.
    ExcisedStar,
}

impl NodeKind {
    fn name(self) -> &'static str {
        match self {
            NodeKind::Triconnected => "triconnected",
            NodeKind::Bond => "bond",
            NodeKind::Polygon => "polygon",
            NodeKind::ExcisedStar => "excised-star",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Virtual edge `2t` and `2t + 1` are the twins of tree edge `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRef {
    Real(usize),
    Virtual(usize),
}

/// Edge of a component, with endpoints in the vertex numbering of the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentEdge {
    pub u: usize,
    pub v: usize,
    pub id: EdgeRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: NodeKind,
    pub edges: Vec<ComponentEdge>,
}

impl Component {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn real_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(|e| match e.id {
            EdgeRef::Real(id) => Some(id),
            EdgeRef::Virtual(_) => None,
        })
    }

    pub fn virtual_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(|e| match e.id {
            EdgeRef::Virtual(id) => Some(id),
            EdgeRef::Real(_) => None,
        })
    }

    /// The component on compact vertices `0..k` (in order of [`Component::vertices`]),
    /// with edge `i` of the result being `self.edges[i]`.
    pub fn local_graph(&self) -> (Multigraph, Vec<usize>) {
        let vs = self.vertices();
        let index: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges.iter().map(|e| (index[&e.u], index[&e.v])).collect();
        (Multigraph::new(vs.len(), edges).expect("component edges are loopless"), vs)
    }

    fn pair_of(&self, vid: usize) -> Option<(usize, usize)> {
        self.edges.iter().find(|e| e.id == EdgeRef::Virtual(vid)).map(|e| (e.u.min(e.v), e.u.max(e.v)))
    }

    fn verify_shape(&self) -> std::result::Result<(), String> {
        let (g, vs) = self.local_graph();
        let ok = match self.kind {
            NodeKind::Bond | NodeKind::ExcisedStar => vs.len() == 2,
            NodeKind::Polygon => g.edge_count() >= 3 && g.is_connected() && g.degrees().iter().all(|&d| d == 2),
            NodeKind::Triconnected => g.is_3connected(),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{} component on {} vertices has the wrong shape", self.kind, vs.len()))
        }
    }
}

/// Tree edge `t`: virtual edge `2t` lives in node `a`, its twin `2t + 1` in node `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeLink {
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub vertex_count: usize,
    /// Real edges `0..original_edges` come from the decomposed graph; later ids are surgery edges.
    pub original_edges: usize,
    pub nodes: Vec<Component>,
    pub links: Vec<TreeLink>,
    pub excised_pairs: Vec<(usize, usize)>,
}

fn edge(u: usize, v: usize, id: EdgeRef) -> ComponentEdge {
    ComponentEdge { u, v, id }
}

/// Splits a 2-connected multigraph at separating pairs until every piece is a bond,
/// a polygon or 3-connected, then merges adjacent bonds and adjacent polygons.
pub fn triconnected_decompose(x: &Multigraph) -> Result<DecompositionTree> {
    if !x.is_biconnected() {
        return Err(Error::precondition("graph is not 2-connected"));
    }
    let all: Vec<ComponentEdge> =
        x.edges().iter().enumerate().map(|(e, &(u, v))| edge(u, v, EdgeRef::Real(e))).collect();
    let mut done: Vec<Component> = Vec::new();
    let mut links = 0usize;
    let mut work = vec![all];
    while let Some(edges) = work.pop() {
        let comp = Component { kind: NodeKind::Bond, edges };
        let vs = comp.vertices();
        if vs.len() == 2 {
            done.push(comp);
            continue;
        }
        if let Some((a, b)) = multi_pair(&comp.edges) {
            let (bundle, mut rest): (Vec<_>, Vec<_>) =
                comp.edges.into_iter().partition(|e| (e.u.min(e.v), e.u.max(e.v)) == (a, b));
            let mut bond = bundle;
            bond.push(edge(a, b, EdgeRef::Virtual(2 * links + 1)));
            rest.push(edge(a, b, EdgeRef::Virtual(2 * links)));
            links += 1;
            done.push(Component { kind: NodeKind::Bond, edges: bond });
            work.push(rest);
            continue;
        }
        let (g, vs) = comp.local_graph();
        if g.degrees().iter().all(|&d| d == 2) {
            done.push(Component { kind: NodeKind::Polygon, ..comp });
            continue;
        }
        let (la, lb) = match chain_ends(&g) {
            Some(pair) => pair,
            None if g.is_3connected() => {
                done.push(Component { kind: NodeKind::Triconnected, ..comp });
                continue;
            }
            None => *g
                .separating_pairs()
                .first()
                .ok_or_else(|| Error::integrity("2-connected piece with no separating pair is not 3-connected"))?,
        };
        let (a, b) = (vs[la], vs[lb]);
        let mut uf = UnionFind::new(x.vertex_count());
        for e in &comp.edges {
            if ![e.u, e.v].iter().any(|&w| w == a || w == b) {
                uf.union(e.u, e.v);
            }
        }
        let seed = *vs.iter().find(|&&v| v != a && v != b).expect("at least three vertices");
        let root = uf.find(seed);
        let (mut side, mut rest): (Vec<_>, Vec<_>) =
            comp.edges.into_iter().partition(|e| [e.u, e.v].iter().any(|&w| w != a && w != b && uf.find(w) == root));
        side.push(edge(a, b, EdgeRef::Virtual(2 * links)));
        rest.push(edge(a, b, EdgeRef::Virtual(2 * links + 1)));
        links += 1;
        work.push(side);
        work.push(rest);
    }
    let tree = merge_same_kind(done, links);
    Ok(DecompositionTree {
        vertex_count: x.vertex_count(),
        original_edges: x.edge_count(),
        nodes: tree.0,
        links: tree.1,
        excised_pairs: Vec::new(),
    })
}

/// End vertices of a maximal path through degree-2 vertices, when some vertex has degree 2.
fn chain_ends(g: &Multigraph) -> Option<(usize, usize)> {
    let deg = g.degrees();
    let start = deg.iter().position(|&d| d == 2)?;
    let adj = g.adjacency();
    let walk = |first: usize| {
        let (mut prev, mut cur) = (start, first);
        while deg[cur] == 2 && cur != start {
            let next = adj[cur].iter().map(|&(w, _)| w).find(|&w| w != prev).expect("two neighbours");
            (prev, cur) = (cur, next);
        }
        cur
    };
    let (a, b) = (walk(adj[start][0].0), walk(adj[start][1].0));
    (a != b && deg[a] > 2).then_some((a.min(b), a.max(b)))
}

fn multi_pair(edges: &[ComponentEdge]) -> Option<(usize, usize)> {
    let mut seen = BTreeMap::new();
    for e in edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        *seen.entry(key).or_insert(0usize) += 1;
    }
    seen.into_iter().find(|&(_, c)| c >= 2).map(|(k, _)| k)
}

fn owners(nodes: &[Option<Component>], links: usize) -> Vec<usize> {
    let mut owner = vec![usize::MAX; 2 * links];
    for (i, node) in nodes.iter().enumerate() {
        if let Some(c) = node {
            for vid in c.virtual_edges() {
                owner[vid] = i;
            }
        }
    }
    owner
}

fn merge_same_kind(done: Vec<Component>, links: usize) -> (Vec<Component>, Vec<TreeLink>) {
    let mut nodes: Vec<Option<Component>> = done.into_iter().map(Some).collect();
    let mut alive = vec![true; links];
    loop {
        let owner = owners(&nodes, links);
        let found = (0..links).find(|&t| {
            alive[t] && {
                let (ka, kb) =
                    (nodes[owner[2 * t]].as_ref().unwrap().kind, nodes[owner[2 * t + 1]].as_ref().unwrap().kind);
                ka == kb && ka != NodeKind::Triconnected
            }
        });
        let Some(t) = found else {
            break;
        };
        alive[t] = false;
        let absorbed = nodes[owner[2 * t + 1]].take().unwrap();
        let keep = nodes[owner[2 * t]].as_mut().unwrap();
        keep.edges.retain(|e| e.id != EdgeRef::Virtual(2 * t));
        keep.edges.extend(absorbed.edges.into_iter().filter(|e| e.id != EdgeRef::Virtual(2 * t + 1)));
    }
    let mut out: Vec<Component> = nodes.into_iter().flatten().collect();
    let mut link_index = vec![usize::MAX; links];
    let mut next = 0;
    for t in (0..links).filter(|&t| alive[t]) {
        link_index[t] = next;
        next += 1;
    }
    for c in &mut out {
        for e in &mut c.edges {
            if let EdgeRef::Virtual(vid) = e.id {
                e.id = EdgeRef::Virtual(2 * link_index[vid / 2] + vid % 2);
            }
        }
    }
    let mut tree_links = vec![TreeLink { a: 0, b: 0 }; next];
    for (i, c) in out.iter().enumerate() {
        for vid in c.virtual_edges() {
            if vid % 2 == 0 {
                tree_links[vid / 2].a = i;
            } else {
                tree_links[vid / 2].b = i;
            }
        }
    }
    (out, tree_links)
}

/// Adds one real edge across every excised pair. An edge lands in the bond already
/// sitting at its pair, or in a new bond subdividing the tree edge; either way the
/// receiving node becomes an excised star. New edges get ids `m, m + 1, ...` in
/// sorted pair order and colour 0 when `x` is coloured.
pub fn excised_surgery(x: &Multigraph, d: &DecompositionTree) -> Result<(Multigraph, DecompositionTree)> {
    if d.original_edges != x.edge_count() || d.vertex_count != x.vertex_count() {
        return Err(Error::precondition("decomposition does not belong to this graph"));
    }
    let mut t = d.clone();
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (l, link) in d.links.iter().enumerate() {
        let pair = d.nodes[link.a]
            .pair_of(2 * l)
            .ok_or_else(|| Error::integrity(format!("tree edge {l} has no virtual edge in node {}", link.a)))?;
        by_pair.entry(pair).or_default().push(l);
    }
    let mut xp = x.clone();
    for (&(a, b), tree_edges) in &by_pair {
        let id = xp.add_edge(a, b, 0);
        t.excised_pairs.push((a, b));
        let is_bond = |n: &Component| matches!(n.kind, NodeKind::Bond | NodeKind::ExcisedStar);
        let host = tree_edges.iter().flat_map(|&l| [t.links[l].a, t.links[l].b]).find(|&n| is_bond(&t.nodes[n]));
        match host {
            Some(n) => {
                t.nodes[n].kind = NodeKind::ExcisedStar;
                t.nodes[n].edges.push(edge(a, b, EdgeRef::Real(id)));
            }
            None => {
                if tree_edges.len() != 1 {
                    return Err(Error::integrity(format!("pair ({a},{b}) on several tree edges without a bond")));
                }
                let l = tree_edges[0];
                let fresh = t.links.len();
                let star = t.nodes.len();
                let old_b = t.links[l].b;
                for e in &mut t.nodes[old_b].edges {
                    if e.id == EdgeRef::Virtual(2 * l + 1) {
                        e.id = EdgeRef::Virtual(2 * fresh + 1);
                    }
                }
                t.nodes.push(Component {
                    kind: NodeKind::ExcisedStar,
                    edges: vec![
                        edge(a, b, EdgeRef::Virtual(2 * l + 1)),
                        edge(a, b, EdgeRef::Virtual(2 * fresh)),
                        edge(a, b, EdgeRef::Real(id)),
                    ],
                });
                t.links[l].b = star;
                t.links.push(TreeLink { a: star, b: old_b });
            }
        }
    }
    Ok((xp, t))
}

/// Glues components along twin virtual edges and drops the virtual edges. The result
/// is uncoloured.
pub fn recompose(t: &DecompositionTree) -> Result<Multigraph> {
    t.check_twins()?;
    let mut real: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for c in &t.nodes {
        for e in &c.edges {
            if let EdgeRef::Real(id) = e.id {
                if real.insert(id, (e.u, e.v)).is_some() {
                    return Err(Error::integrity(format!("real edge {id} appears twice")));
                }
            }
        }
    }
    if real.keys().enumerate().any(|(i, &id)| i != id) {
        return Err(Error::integrity("real edge ids are not contiguous"));
    }
    Multigraph::new(t.vertex_count, real.into_values().collect())
}

impl DecompositionTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Node adjacency: for each node, `(neighbour, tree edge)` pairs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (l, link) in self.links.iter().enumerate() {
            adj[link.a].push((link.b, l));
            adj[link.b].push((link.a, l));
        }
        adj
    }

    /// Sorted `(kind, edge count)` labels.
    pub fn label_multiset(&self) -> Vec<(NodeKind, usize)> {
        let mut labels: Vec<(NodeKind, usize)> = self.nodes.iter().map(|c| (c.kind, c.edges.len())).collect();
        labels.sort_unstable();
        labels
    }

    fn check_twins(&self) -> Result<()> {
        let mut owner = vec![usize::MAX; 2 * self.links.len()];
        for (i, c) in self.nodes.iter().enumerate() {
            for vid in c.virtual_edges() {
                if vid >= owner.len() || owner[vid] != usize::MAX {
                    return Err(Error::integrity(format!("virtual edge v{vid} is unknown or repeated")));
                }
                owner[vid] = i;
            }
        }
        for (l, link) in self.links.iter().enumerate() {
            if owner[2 * l] != link.a || owner[2 * l + 1] != link.b || link.a == link.b {
                return Err(Error::integrity(format!("tree edge {l} does not join its twin virtual edges")));
            }
            if self.nodes[link.a].pair_of(2 * l) != self.nodes[link.b].pair_of(2 * l + 1) {
                return Err(Error::integrity(format!("twins of tree edge {l} span different pairs")));
            }
        }
        Ok(())
    }

    /// Tree shape, twin pairing and the shape of every component.
    pub fn validate(&self) -> Result<()> {
        self.check_twins()?;
        if self.nodes.is_empty() || self.links.len() + 1 != self.nodes.len() {
            return Err(Error::integrity("node graph is not a tree"));
        }
        let mut uf = UnionFind::new(self.nodes.len());
        for link in &self.links {
            if !uf.union(link.a, link.b) {
                return Err(Error::integrity("node graph has a cycle"));
            }
        }
        for (i, c) in self.nodes.iter().enumerate() {
            c.verify_shape().map_err(|msg| Error::integrity(format!("node {i}: {msg}")))?;
        }
        for link in &self.links {
            let (ka, kb) = (self.nodes[link.a].kind, self.nodes[link.b].kind);
            let bondlike = |k: NodeKind| matches!(k, NodeKind::Bond | NodeKind::ExcisedStar);
            if (ka == NodeKind::Polygon && kb == NodeKind::Polygon) || (bondlike(ka) && bondlike(kb)) {
                return Err(Error::integrity("adjacent nodes of the same kind were not merged"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.nodes.iter().enumerate() {
            write!(f, "node {i} {}", c.kind)?;
            for e in &c.edges {
                match e.id {
                    EdgeRef::Real(id) => write!(f, " {id}")?,
                    EdgeRef::Virtual(id) => write!(f, " v{id}")?,
                }
            }
            writeln!(f)?;
        }
        for (l, link) in self.links.iter().enumerate() {
            writeln!(f, "link {} v{} {} v{}", link.a, 2 * l, link.b, 2 * l + 1)?;
        }
        Ok(())
    }
}
