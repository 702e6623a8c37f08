//! 2-isomorphism of graphs: block matching, refinement over trees of 3-connected
//! components, and witness assembly.

use crate::decompose::{
    biconnected_components, excised_surgery, triconnected_decompose, Component, DecompositionTree, EdgeRef, NodeKind,
};
use crate::error::{Error, Result};
use crate::gi::{
    canonical_form, colored_3conn_2iso, colored_3conn_certificate, edge_bijection, graph_isomorphism, rooted_code,
    tree_code, Certificate, ColoredGraph, TreeCode,
};
use crate::graph::{color_gadget_graphic_with_base, is_matroid_isomorphism, Multigraph};
use crate::matroid::IsoWitness;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GmiOptions {
    /// Send every component through the path gadget and GI: triconnected ones instead of
    /// edge-coloured GI, bonds and polygons instead of colour multisets.
    pub strict: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GmiStats {
    /// Refinement rounds summed over all block pairs.
    pub iterations: usize,
    /// Number of classes after each round, one list per refinement run.
    pub q_history: Vec<Vec<usize>>,
    /// Node counts `n1 + n2` of each refinement run, for the round bound.
    pub tree_sizes: Vec<usize>,
    pub gi_queries: usize,
}

impl GmiStats {
    /// Every run has non-decreasing class counts and at most `2n` rounds.
    pub fn monotone(&self) -> bool {
        self.q_history
            .iter()
            .zip(&self.tree_sizes)
            .all(|(q, &n)| q.windows(2).all(|w| w[0] <= w[1]) && q.len() <= 2 * n.max(1))
    }
}

impl fmt::Display for GmiStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> =
            self.q_history.iter().map(|run| run.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "iterations={} q={} gi_queries={}", self.iterations, q.join(";"), self.gi_queries)
    }
}

/// Node map `psi` between two trees and, per node `t` of the first, a bijection from
/// the edges of component `t` onto those of component `psi[t]` (component edge order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMatch {
    pub psi: Vec<usize>,
    pub chi: Vec<IsoWitness>,
}

pub fn gmi_test(x1: &Multigraph, x2: &Multigraph) -> Result<Option<IsoWitness>> {
    gmi_test_with(x1, x2, GmiOptions::default(), &mut GmiStats::default())
}

struct Block {
    edges: Vec<usize>,
    surgered: Multigraph,
    tree: DecompositionTree,
    profile: (usize, Vec<u32>),
}

fn prepare_blocks(x: &Multigraph) -> Result<(Vec<usize>, Vec<Block>)> {
    let mut bridges = Vec::new();
    let mut blocks = Vec::new();
    for edges in biconnected_components(x).blocks {
        if edges.len() == 1 {
            bridges.push(edges[0]);
            continue;
        }
        let sub = x.edge_subgraph(&edges);
        let d = triconnected_decompose(&sub)?;
        let (surgered, tree) = excised_surgery(&sub, &d)?;
        let mut colors: Vec<u32> = edges.iter().map(|&e| x.color(e)).collect();
        colors.sort_unstable();
        blocks.push(Block { edges, surgered, tree, profile: (sub.active_vertices().len(), colors) });
    }
    Ok((bridges, blocks))
}

/// Colour-preserving 2-isomorphism of arbitrary (optionally edge-coloured) graphs.
pub fn gmi_test_with(
    x1: &Multigraph,
    x2: &Multigraph,
    opts: GmiOptions,
    stats: &mut GmiStats,
) -> Result<Option<IsoWitness>> {
    let m = x1.edge_count();
    if m != x2.edge_count() {
        return Ok(None);
    }
    let (mut br1, bl1) = prepare_blocks(x1)?;
    let (mut br2, bl2) = prepare_blocks(x2)?;
    if bl1.len() != bl2.len() {
        return Ok(None);
    }
    br1.sort_by_key(|&e| (x1.color(e), e));
    br2.sort_by_key(|&e| (x2.color(e), e));
    if br1.iter().map(|&e| x1.color(e)).ne(br2.iter().map(|&e| x2.color(e))) {
        return Ok(None);
    }
    let mut sigma = vec![usize::MAX; m];
    for (&a, &b) in br1.iter().zip(&br2) {
        sigma[a] = b;
    }
    let k = bl1.len();
    let mut cache: Vec<Vec<Option<Option<IsoWitness>>>> = vec![vec![None; k]; k];
    let mut decide = |i: usize, j: usize, stats: &mut GmiStats| -> Result<bool> {
        if cache[i][j].is_none() {
            let w = if bl1[i].profile != bl2[j].profile {
                None
            } else {
                refine_and_decide(&bl1[i].surgered, &bl1[i].tree, &bl2[j].surgered, &bl2[j].tree, opts, stats)?
                    .map(|tm| assemble_witness(&bl1[i].tree, &bl2[j].tree, &tm))
                    .transpose()?
            };
            cache[i][j] = Some(w);
        }
        Ok(cache[i][j].as_ref().unwrap().is_some())
    };
    let mut owner: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let mut seen = vec![false; k];
        if !augment(i, &mut seen, &mut owner, &mut |i, j, s: &mut GmiStats| decide(i, j, s), stats)? {
            return Ok(None);
        }
    }
    for (j, o) in owner.iter().enumerate() {
        let i = o.expect("perfect matching");
        let w = cache[i][j].as_ref().unwrap().as_ref().unwrap();
        let (b1, b2) = (&bl1[i], &bl2[j]);
        for (local, &e) in b1.edges.iter().enumerate() {
            sigma[e] = b2.edges[w.apply(local)];
        }
    }
    let sigma = IsoWitness::new(sigma).map_err(|_| Error::integrity("assembled edge map is not a bijection"))?;
    if (0..m).any(|e| x1.color(e) != x2.color(sigma.apply(e))) || !is_matroid_isomorphism(x1, x2, &sigma)? {
        return Err(Error::integrity("assembled witness does not preserve circuits"));
    }
    Ok(Some(sigma))
}

type Decide<'a> = dyn FnMut(usize, usize, &mut GmiStats) -> Result<bool> + 'a;

fn augment(
    i: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
    decide: &mut Decide<'_>,
    stats: &mut GmiStats,
) -> Result<bool> {
    for j in 0..owner.len() {
        if seen[j] || !decide(i, j, stats)? {
            continue;
        }
        seen[j] = true;
        let free = match owner[j] {
            None => true,
            Some(prev) => augment(prev, seen, owner, decide, stats)?,
        };
        if free {
            owner[j] = Some(i);
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Key {
    Real(u32),
    Surgery,
    Virtual(u64),
    Parent,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Shape {
    Gi(Certificate),
    Multiset(Vec<u32>),
}

struct Side<'a> {
    x: &'a Multigraph,
    t: &'a DecompositionTree,
    adj: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(x: &'a Multigraph, t: &'a DecompositionTree) -> Self {
        let adj = t.adjacency().into_iter().map(|a| a.into_iter().map(|(w, _)| w).collect()).collect();
        Side { x, t, adj }
    }

    fn real_key(&self, id: usize) -> Key {
        if id >= self.t.original_edges {
            Key::Surgery
        } else {
            Key::Real(self.x.color(id))
        }
    }

    /// Node at the far end of the tree edge carrying virtual edge `vid`.
    fn across(&self, vid: usize) -> usize {
        let link = self.t.links[vid / 2];
        if vid.is_multiple_of(2) {
            link.b
        } else {
            link.a
        }
    }
}

fn interned<K: Ord + Clone>(table: &mut BTreeMap<K, u32>, key: &K) -> u32 {
    let next = table.len() as u32;
    *table.entry(key.clone()).or_insert(next)
}

fn colored_local(c: &Component, colors: Vec<u32>) -> Multigraph {
    c.local_graph().0.with_colors(colors).expect("one colour per component edge")
}

fn shape(c: &Component, colors: Vec<u32>, base: usize, opts: GmiOptions, stats: &mut GmiStats) -> Result<Shape> {
    match c.kind {
        NodeKind::Triconnected => {
            stats.gi_queries += 1;
            let g = ColoredGraph::plain(colored_local(c, colors));
            if opts.strict {
                Ok(Shape::Gi(colored_3conn_certificate(&g, base)?))
            } else {
                Ok(Shape::Gi(canonical_form(&g).0))
            }
        }
        _ if opts.strict => {
            // A polygon's matroid is dual to the bond on the same edges.
            stats.gi_queries += 1;
            let shifted: Vec<u32> = colors.iter().map(|&k| k + 1).collect();
            let bond = Multigraph::new(2, vec![(0, 1); colors.len()])?.with_colors(shifted)?;
            let gadget = color_gadget_graphic_with_base(&bond, base.max(2))?;
            Ok(Shape::Gi(canonical_form(&ColoredGraph::plain(gadget)).0))
        }
        _ => {
            let mut colors = colors;
            colors.sort_unstable();
            Ok(Shape::Multiset(colors))
        }
    }
}

fn common_base(t1: &DecompositionTree, t2: &DecompositionTree) -> usize {
    t1.nodes.iter().chain(&t2.nodes).map(|c| c.vertices().len()).max().unwrap_or(2)
}

fn kind_rank(kind: NodeKind) -> u8 {
    match kind {
        NodeKind::Triconnected => 0,
        NodeKind::Bond => 1,
        NodeKind::Polygon => 2,
        NodeKind::ExcisedStar => 3,
    }
}

/// Refines node colours of both trees to a fixed point and compares the coloured trees;
/// on acceptance returns a tree isomorphism with compatible component bijections.
pub fn refine_and_decide(
    x1p: &Multigraph,
    t1: &DecompositionTree,
    x2p: &Multigraph,
    t2: &DecompositionTree,
    opts: GmiOptions,
    stats: &mut GmiStats,
) -> Result<Option<TreeMatch>> {
    let sides = [Side::new(x1p, t1), Side::new(x2p, t2)];
    let sizes = [t1.node_count(), t2.node_count()];
    if sizes[0] != sizes[1] || t1.label_multiset() != t2.label_multiset() {
        return Ok(None);
    }
    let base = common_base(t1, t2);
    let bound = 2 * (sizes[0] + sizes[1]);
    let mut colors: [Vec<u64>; 2] = [vec![0; sizes[0]], vec![0; sizes[1]]];
    let mut history = Vec::new();
    loop {
        if history.len() >= bound {
            return Err(Error::integrity(format!("refinement exceeded {bound} rounds")));
        }
        stats.iterations += 1;
        let mut pair_ids: BTreeMap<(TreeCode, TreeCode), u32> = BTreeMap::new();
        let mut vcolors: [Vec<(TreeCode, TreeCode)>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for link in &sides[s].t.links {
                let ca = rooted_code(&sides[s].adj, &colors[s], link.a, Some(link.b));
                let cb = rooted_code(&sides[s].adj, &colors[s], link.b, Some(link.a));
                vcolors[s].push(if ca <= cb { (ca, cb) } else { (cb, ca) });
            }
        }
        let mut all_pairs: Vec<&(TreeCode, TreeCode)> = vcolors.iter().flatten().collect();
        all_pairs.sort();
        for p in all_pairs {
            interned(&mut pair_ids, p);
        }
        let mut keys: BTreeMap<Key, u32> = BTreeMap::new();
        let mut edge_keys: [Vec<Vec<Key>>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for c in &sides[s].t.nodes {
                let ks: Vec<Key> = c
                    .edges
                    .iter()
                    .map(|e| match e.id {
                        EdgeRef::Real(id) => sides[s].real_key(id),
                        EdgeRef::Virtual(vid) => Key::Virtual(pair_ids[&vcolors[s][vid / 2]] as u64),
                    })
                    .collect();
                edge_keys[s].push(ks);
            }
        }
        let mut all_keys: Vec<Key> = edge_keys.iter().flatten().flatten().copied().collect();
        all_keys.sort_unstable();
        for k in &all_keys {
            interned(&mut keys, k);
        }
        let mut sigs: [Vec<(u64, u8, Shape)>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for (i, c) in sides[s].t.nodes.iter().enumerate() {
                let cols = edge_keys[s][i].iter().map(|k| keys[k]).collect();
                sigs[s].push((colors[s][i], kind_rank(c.kind), shape(c, cols, base, opts, stats)?));
            }
        }
        let mut distinct: Vec<&(u64, u8, Shape)> = sigs.iter().flatten().collect();
        distinct.sort();
        distinct.dedup();
        let q = distinct.len();
        let next: [Vec<u64>; 2] =
            [0, 1].map(|s| sigs[s].iter().map(|sig| distinct.binary_search(&sig).unwrap() as u64).collect());
        let stable = history.last() == Some(&q);
        history.push(q);
        colors = next;
        if stable {
            break;
        }
    }
    stats.q_history.push(history);
    stats.tree_sizes.push(sizes[0] + sizes[1]);
    let edges = |t: &DecompositionTree| t.links.iter().map(|l| (l.a, l.b)).collect::<Vec<_>>();
    if tree_code(sizes[0], &edges(t1), &colors[0])? != tree_code(sizes[1], &edges(t2), &colors[1])? {
        return Ok(None);
    }
    match rooted_match(&sides, base, opts, stats)? {
        Some(tm) => Ok(Some(tm)),
        None => Err(Error::integrity("refined trees agree but admit no compatible component maps")),
    }
}

struct Rooted {
    labels: Vec<u32>,
    colors: Vec<Vec<u32>>,
    parent_link: Vec<Option<usize>>,
}

fn root_at(
    side: &Side<'_>,
    root: usize,
    table: &mut BTreeMap<(u8, Shape), u32>,
    keys: &mut BTreeMap<Key, u32>,
    base: usize,
    opts: GmiOptions,
    stats: &mut GmiStats,
) -> Result<Rooted> {
    let n = side.t.node_count();
    let mut order = vec![root];
    let mut parent_link = vec![None; n];
    let mut visited = vec![false; n];
    visited[root] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for vid in side.t.nodes[v].virtual_edges() {
            let w = side.across(vid);
            if !visited[w] {
                visited[w] = true;
                parent_link[w] = Some(vid / 2);
                order.push(w);
            }
        }
        i += 1;
    }
    let mut labels = vec![0u32; n];
    let mut colors = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let c = &side.t.nodes[v];
        let cols: Vec<u32> = c
            .edges
            .iter()
            .map(|e| {
                let key = match e.id {
                    EdgeRef::Real(id) => side.real_key(id),
                    EdgeRef::Virtual(vid) if Some(vid / 2) == parent_link[v] => Key::Parent,
                    EdgeRef::Virtual(vid) => Key::Virtual(labels[side.across(vid)] as u64),
                };
                interned(keys, &key)
            })
            .collect();
        let sig = (kind_rank(c.kind), shape(c, cols.clone(), base, opts, stats)?);
        labels[v] = interned(table, &sig);
        colors[v] = cols;
    }
    Ok(Rooted { labels, colors, parent_link })
}

fn component_map(
    c1: &Component,
    k1: &[u32],
    c2: &Component,
    k2: &[u32],
    opts: GmiOptions,
    stats: &mut GmiStats,
) -> Result<Option<IsoWitness>> {
    if c1.kind == NodeKind::Triconnected {
        stats.gi_queries += 1;
        let g1 = ColoredGraph::plain(colored_local(c1, k1.to_vec()));
        let g2 = ColoredGraph::plain(colored_local(c2, k2.to_vec()));
        if opts.strict {
            return colored_3conn_2iso(&g1, &g2);
        }
        return Ok(graph_isomorphism(&g1, &g2).and_then(|phi| edge_bijection(g1.graph(), g2.graph(), &phi)));
    }
    let mut a: Vec<usize> = (0..k1.len()).collect();
    let mut b: Vec<usize> = (0..k2.len()).collect();
    a.sort_by_key(|&i| k1[i]);
    b.sort_by_key(|&i| k2[i]);
    if a.iter().map(|&i| k1[i]).ne(b.iter().map(|&i| k2[i])) {
        return Ok(None);
    }
    let mut map = vec![0; a.len()];
    for (&i, &j) in a.iter().zip(&b) {
        map[i] = j;
    }
    Ok(Some(IsoWitness::new(map)?))
}

fn rooted_match(
    sides: &[Side<'_>; 2],
    base: usize,
    opts: GmiOptions,
    stats: &mut GmiStats,
) -> Result<Option<TreeMatch>> {
    let centers = |s: &Side<'_>| crate::gi::tree_centers(&s.adj);
    let r1 = centers(&sides[0])[0];
    let mut table = BTreeMap::new();
    let mut keys = BTreeMap::new();
    let rooted1 = root_at(&sides[0], r1, &mut table, &mut keys, base, opts, stats)?;
    for r2 in centers(&sides[1]) {
        let rooted2 = root_at(&sides[1], r2, &mut table, &mut keys, base, opts, stats)?;
        if rooted1.labels[r1] != rooted2.labels[r2] {
            continue;
        }
        let n = sides[0].t.node_count();
        let mut tm = TreeMatch { psi: vec![usize::MAX; n], chi: vec![IsoWitness::identity(0); n] };
        let mut stack = vec![(r1, r2)];
        let mut ok = true;
        while let Some((a, b)) = stack.pop() {
            let (ca, cb) = (&sides[0].t.nodes[a], &sides[1].t.nodes[b]);
            let Some(chi) = component_map(ca, &rooted1.colors[a], cb, &rooted2.colors[b], opts, stats)? else {
                ok = false;
                break;
            };
            for (i, e) in ca.edges.iter().enumerate() {
                if let EdgeRef::Virtual(vid) = e.id {
                    if Some(vid / 2) == rooted1.parent_link[a] {
                        continue;
                    }
                    let EdgeRef::Virtual(wid) = cb.edges[chi.apply(i)].id else {
                        return Err(Error::integrity("component map sends a virtual edge to a real edge"));
                    };
                    stack.push((sides[0].across(vid), sides[1].across(wid)));
                }
            }
            tm.psi[a] = b;
            tm.chi[a] = chi;
        }
        if ok {
            return Ok(Some(tm));
        }
    }
    Ok(None)
}

/// Real-edge bijection of the surgered graphs read off the component maps, after
/// checking that twin virtual edges are sent to twins across the image tree edge.
pub fn assemble_witness(t1: &DecompositionTree, t2: &DecompositionTree, tm: &TreeMatch) -> Result<IsoWitness> {
    let total = |t: &DecompositionTree| t.nodes.iter().map(|c| c.real_edges().count()).sum::<usize>();
    let m = total(t1);
    if m != total(t2) || tm.psi.len() != t1.node_count() {
        return Err(Error::integrity("tree match does not fit the trees"));
    }
    let mut sigma = vec![usize::MAX; m];
    let mut link_image = vec![usize::MAX; t1.links.len()];
    for (a, c) in t1.nodes.iter().enumerate() {
        let b = tm.psi[a];
        let target = &t2.nodes[b];
        for (i, e) in c.edges.iter().enumerate() {
            match (e.id, target.edges[tm.chi[a].apply(i)].id) {
                (EdgeRef::Real(x), EdgeRef::Real(y)) => sigma[x] = y,
                (EdgeRef::Virtual(v), EdgeRef::Virtual(w)) => {
                    if link_image[v / 2] == usize::MAX {
                        link_image[v / 2] = w / 2;
                    } else if link_image[v / 2] != w / 2 {
                        return Err(Error::integrity(format!(
                            "twins of tree edge {} land on different tree edges",
                            v / 2
                        )));
                    }
                }
                _ => return Err(Error::integrity("component map mixes real and virtual edges")),
            }
        }
    }
    for (l, link) in t1.links.iter().enumerate() {
        let img = t2.links[link_image[l]];
        let (pa, pb) = (tm.psi[link.a], tm.psi[link.b]);
        if !((pa == img.a && pb == img.b) || (pa == img.b && pb == img.a)) {
            return Err(Error::integrity(format!("tree edge {l} is not mapped along the node map")));
        }
    }
    let restricted: Vec<usize> = sigma[..t1.original_edges].to_vec();
    if restricted.iter().any(|&y| y >= t2.original_edges) {
        return Err(Error::integrity("original edge sent to a surgery edge"));
    }
    IsoWitness::new(restricted).map_err(|_| Error::integrity("component maps do not give a bijection"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{gen_modk_gadget, random_2iso_pair};
    use crate::matroid::brute_force_iso;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Multigraph {
        let edges = (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n);
                (u, (u + rng.gen_range(1..n)) % n)
            })
            .collect();
        Multigraph::new(n, edges).unwrap()
    }

    #[test]
    fn self_and_trees() {
        for g in [complete(4), cycle(5), wheel(5), petersen(), path(4), parallel(3)] {
            let w = gmi_test(&g, &g).unwrap().unwrap();
            assert!(is_matroid_isomorphism(&g, &g, &w).unwrap());
        }
        assert!(gmi_test(&star(4), &path(4)).unwrap().is_some());
        assert!(gmi_test(&cycle(4), &path(4)).unwrap().is_none());
    }

    #[test]
    fn modk_gadget_single_round() {
        let x = gen_modk_gadget(3).unwrap();
        let mut stats = GmiStats::default();
        assert!(gmi_test_with(&x, &x, GmiOptions::default(), &mut stats).unwrap().is_some());
        assert_eq!(stats.q_history, vec![vec![1, 1]]);
    }

    #[test]
    fn reversed_chain_of_components() {
        // K4 and W5 glued along one pair, against the same graph with the sides renumbered.
        let mut edges = complete(4).edges().to_vec();
        for &(u, v) in wheel(5).edges() {
            let f = |w: usize| if w <= 1 { w } else { w + 2 };
            edges.push((f(u), f(v)));
        }
        let x = Multigraph::new(10, edges).unwrap();
        let m = x.edge_count();
        let vp: Vec<usize> = (0..10).rev().collect();
        let ep: Vec<usize> = (0..m).rev().collect();
        let y = x.relabeled(&vp, &ep);
        let w = gmi_test(&x, &y).unwrap().unwrap();
        assert!(is_matroid_isomorphism(&x, &y, &w).unwrap());
    }

    #[test]
    fn whitney_pairs_accepted() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..60 {
            let g = loop {
                let g = random_graph(&mut rng, 7, 11);
                if g.is_connected() {
                    break g;
                }
            };
            let (h, _) = random_2iso_pair(&g, 5, seed);
            for strict in [false, true] {
                let w = gmi_test_with(&g, &h, GmiOptions { strict }, &mut GmiStats::default()).unwrap();
                assert!(is_matroid_isomorphism(&g, &h, &w.unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.gen_range(1..8);
            let (n1, n2) = (rng.gen_range(2..6), rng.gen_range(2..6));
            let g = random_graph(&mut rng, n1, m);
            let h = random_graph(&mut rng, n2, m);
            let mut stats = GmiStats::default();
            let fast = gmi_test_with(&g, &h, GmiOptions::default(), &mut stats).unwrap();
            assert_eq!(fast.is_some(), brute_force_iso(&g, &h).unwrap().is_some(), "{g} vs {h}");
            assert!(stats.monotone());
        }
    }

    #[test]
    fn colours_are_respected() {
        let a = cycle(4).with_colors(vec![1, 1, 2, 2]).unwrap();
        let b = cycle(4).with_colors(vec![1, 2, 1, 2]).unwrap();
        let c = cycle(4).with_colors(vec![1, 1, 1, 2]).unwrap();
        assert!(gmi_test(&a, &b).unwrap().is_some());
        assert!(gmi_test(&a, &c).unwrap().is_none());
    }
}
