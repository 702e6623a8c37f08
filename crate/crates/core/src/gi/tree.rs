//! Canonical codes of node-coloured trees (AHU).

use crate::error::{Error, Result};

const OPEN: u64 = u64::MAX;
const CLOSE: u64 = u64::MAX - 1;
const SUPER_ROOT: u64 = u64::MAX - 2;

/// Equal codes iff colour-preserving isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(Vec<u64>);

impl TreeCode {
    pub fn tokens(&self) -> &[u64] {
        &self.0
    }
}

/// Code of the subtree hanging from `root` when the edge towards `parent` is removed.
pub fn rooted_code(adj: &[Vec<usize>], colors: &[u64], root: usize, parent: Option<usize>) -> TreeCode {
    let mut out = Vec::new();
    write_rooted(adj, colors, root, parent, &mut out);
    TreeCode(out)
}

fn write_rooted(adj: &[Vec<usize>], colors: &[u64], v: usize, parent: Option<usize>, out: &mut Vec<u64>) {
    debug_assert!(colors[v] < SUPER_ROOT);
    let mut children: Vec<Vec<u64>> = adj[v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| {
            let mut c = Vec::new();
            write_rooted(adj, colors, w, Some(v), &mut c);
            c
        })
        .collect();
    children.sort_unstable();
    out.push(OPEN);
    out.push(colors[v]);
    for c in children {
        out.extend(c);
    }
    out.push(CLOSE);
}

/// One or two centres, found by peeling leaves.
pub fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

pub(crate) fn tree_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if n == 0 || edges.len() != n - 1 {
        return Err(Error::precondition(format!("{} edges cannot form a tree on {n} nodes", edges.len())));
    }
    let mut adj = vec![Vec::new(); n];
    let mut uf = crate::graph::UnionFind::new(n);
    for &(u, v) in edges {
        if u >= n || v >= n || !uf.union(u, v) {
            return Err(Error::precondition("edge list is not a tree"));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    Ok(adj)
}

/// Centre-rooted code; bicentred trees are rooted at a virtual node joined to both centres.
pub fn tree_code(n: usize, edges: &[(usize, usize)], colors: &[u64]) -> Result<TreeCode> {
    let adj = tree_adjacency(n, edges)?;
    if colors.len() != n || colors.iter().any(|&c| c >= SUPER_ROOT) {
        return Err(Error::input("bad node colours"));
    }
    Ok(code_from_adjacency(&adj, colors))
}

pub(crate) fn code_from_adjacency(adj: &[Vec<usize>], colors: &[u64]) -> TreeCode {
    let centers = tree_centers(adj);
    if centers.len() == 1 {
        return rooted_code(adj, colors, centers[0], None);
    }
    let (a, b) = (centers[0], centers[1]);
    let mut sides = [rooted_code(adj, colors, a, Some(b)).0, rooted_code(adj, colors, b, Some(a)).0];
    sides.sort_unstable();
    let mut out = vec![OPEN, SUPER_ROOT];
    out.extend(sides[0].iter());
    out.extend(sides[1].iter());
    out.push(CLOSE);
    TreeCode(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::subset::next_permutation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(n: usize, e1: &[(usize, usize)], c1: &[u64], e2: &[(usize, usize)], c2: &[u64]) -> bool {
        let mut set2: Vec<(usize, usize)> = e2.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        set2.sort_unstable();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|v| c1[v] == c2[p[v]]) {
                let mut img: Vec<(usize, usize)> = e1.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                img.sort_unstable();
                if img == set2 {
                    return true;
                }
            }
            if !next_permutation(&mut p) {
                return false;
            }
        }
    }

    fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> (Vec<(usize, usize)>, Vec<u64>) {
        let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let colors = (0..n).map(|_| rng.gen_range(0..2)).collect();
        (edges, colors)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(tree_code(1, &[], &[7]).unwrap(), tree_code(1, &[], &[7]).unwrap());
        assert_ne!(tree_code(1, &[], &[7]).unwrap(), tree_code(1, &[], &[6]).unwrap());
        let p3 = tree_code(3, &[(0, 1), (1, 2)], &[0, 0, 0]).unwrap();
        let k12 = tree_code(3, &[(1, 0), (0, 2)], &[0, 0, 0]).unwrap();
        assert_eq!(p3, k12);
        assert!(tree_code(3, &[(0, 1)], &[0, 0, 0]).is_err());
        assert!(tree_code(3, &[(0, 1), (1, 0)], &[0, 0, 0]).is_err());
    }

    #[test]
    fn codes_decide_colored_tree_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let n = rng.gen_range(1..8);
            let (e1, c1) = random_tree(&mut rng, n);
            let (e2, c2) = if rng.gen_bool(0.5) {
                random_tree(&mut rng, n)
            } else {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                let mut c = vec![0; n];
                for v in 0..n {
                    c[p[v]] = c1[v];
                }
                (e1.iter().map(|&(u, v)| (p[u], p[v])).collect(), c)
            };
            let same = tree_code(n, &e1, &c1).unwrap() == tree_code(n, &e2, &c2).unwrap();
            assert_eq!(same, brute(n, &e1, &c1, &e2, &c2));
        }
    }
}
