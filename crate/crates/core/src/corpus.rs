//! Instance generators: exhaustive small multigraphs and seeded random families.

use crate::gi::{canonical_form, Certificate, ColoredGraph};
use crate::graph::Multigraph;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

fn certificate(g: &Multigraph) -> Certificate {
    canonical_form(&ColoredGraph::plain(g.uncolored())).0
}

/// All connected loopless multigraphs with exactly `m` edges and no isolated
/// vertices, one per isomorphism class; `result[k]` holds those with `k` edges.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Vec<Multigraph>> {
    let mut by_size = vec![vec![Multigraph::new(1, Vec::new()).expect("single vertex")]];
    for m in 1..=max_edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &by_size[m - 1] {
            let n = g.vertex_count();
            let mut candidates = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    candidates.push((u, v, n));
                }
                candidates.push((u, n, n + 1));
            }
            for (u, v, size) in candidates {
                let mut edges = g.edges().to_vec();
                edges.push((u, v));
                let h = Multigraph::new(size, edges).expect("endpoints in range");
                if seen.insert(certificate(&h)) {
                    next.push(h);
                }
            }
        }
        by_size.push(next);
    }
    by_size[0].clear();
    by_size
}

/// Uniform random loopless multigraph, rejected until connected on all `n` vertices.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    assert!(n >= 2 && m + 1 >= n, "need n >= 2 and m >= n - 1");
    loop {
        let edges = (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n);
                (u, (u + rng.gen_range(1..n)) % n)
            })
            .collect();
        let g = Multigraph::new(n, edges).expect("endpoints in range");
        if g.is_connected() {
            return g;
        }
    }
}

/// Random simple 3-connected graph on `n >= 4` vertices.
pub fn random_3connected<R: Rng>(rng: &mut R, n: usize) -> Multigraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    loop {
        let lo = (3 * n).div_ceil(2);
        let m = rng.gen_range(lo..=pairs.len());
        let edges: Vec<(usize, usize)> = pairs.choose_multiple(rng, m).copied().collect();
        let g = Multigraph::new(n, edges).expect("endpoints in range");
        if g.is_3connected() {
            return g;
        }
    }
}

/// Random relabelling of vertices and edges.
pub fn shuffled<R: Rng>(rng: &mut R, g: &Multigraph) -> Multigraph {
    let mut vp: Vec<usize> = (0..g.vertex_count()).collect();
    let mut ep: Vec<usize> = (0..g.edge_count()).collect();
    vp.shuffle(rng);
    ep.shuffle(rng);
    g.relabeled(&vp, &ep)
}

/// Simple graphs on exactly `n` vertices, one per isomorphism class (isolated vertices allowed).
pub fn simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 20, "exhaustive simple graphs only for tiny n");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = Multigraph::new(n, edges).expect("endpoints in range");
        if seen.insert(certificate(&g)) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_connected_multigraphs() {
        let all = connected_multigraphs(5);
        let counts: Vec<usize> = all.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 2, 5, 12, 33]);
    }

    #[test]
    fn simple_graph_counts() {
        assert_eq!(simple_graphs(4).len(), 11);
        assert_eq!(simple_graphs(5).len(), 34);
    }
}
