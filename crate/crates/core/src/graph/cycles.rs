//! Cycle space over GF(2) and the automorphism membership test.

use super::Multigraph;
use crate::error::{Error, Result};
use crate::matroid::IsoWitness;

/// Bit vector over GF(2), 64 coordinates per word.
pub(crate) type Bits = Vec<u64>;

pub(crate) fn bits_zero(len: usize) -> Bits {
    vec![0; len.div_ceil(64)]
}

pub(crate) fn bit(v: &Bits, i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn flip(v: &mut Bits, i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn xor_into(dst: &mut Bits, src: &Bits) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_bit(v: &Bits) -> Option<usize> {
    v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Rank over GF(2).
pub(crate) fn gf2_rank(vectors: &[Bits]) -> usize {
    let mut pivots: Vec<(usize, Bits)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (p, row) in &pivots {
            if bit(&v, *p) {
                xor_into(&mut v, row);
            }
        }
        if let Some(p) = lowest_bit(&v) {
            pivots.push((p, v));
        }
    }
    pivots.len()
}

/// Edge sets of cycles, as GF(2) vectors of length m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    m: usize,
    vectors: Vec<Bits>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    #[cfg(test)]
    pub(crate) fn vectors(&self) -> &[Bits] {
        &self.vectors
    }

    pub fn edge_sets(&self) -> Vec<Vec<usize>> {
        self.vectors.iter().map(|v| (0..self.m).filter(|&e| bit(v, e)).collect()).collect()
    }
}

/// Fundamental cycles of a depth-first spanning forest, one per non-tree edge.
pub fn cycle_basis(x: &Multigraph) -> CycleBasis {
    let n = x.vertex_count();
    let m = x.edge_count();
    let adj = x.adjacency();
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; m];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let (w, e) = adj[v][top.1];
                top.1 += 1;
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = e;
                    tree[e] = true;
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    let other = |v: usize, e: usize| {
        let (a, b) = x.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    };
    let mut vectors = Vec::new();
    for e in (0..m).filter(|&e| !tree[e]) {
        let mut v = bits_zero(m);
        flip(&mut v, e);
        let (mut a, mut b) = x.endpoints(e);
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let pe = parent_edge[a];
            flip(&mut v, pe);
            a = other(a, pe);
        }
        vectors.push(v);
    }
    CycleBasis { m, vectors }
}

fn in_cycle_space(x: &Multigraph, v: &Bits) -> bool {
    let mut parity = vec![false; x.vertex_count()];
    for e in 0..x.edge_count() {
        if bit(v, e) {
            let (a, b) = x.endpoints(e);
            parity[a] ^= true;
            parity[b] ^= true;
        }
    }
    parity.iter().all(|&p| !p)
}

fn permuted(v: &Bits, pi: &[usize]) -> Bits {
    let mut out = bits_zero(pi.len());
    for (e, &t) in pi.iter().enumerate() {
        if bit(v, e) {
            flip(&mut out, t);
        }
    }
    out
}

fn check_length(x: &Multigraph, pi: &IsoWitness) -> Result<()> {
    if pi.len() != x.edge_count() {
        return Err(Error::input(format!(
            "permutation of length {} for a graph with {} edges",
            pi.len(),
            x.edge_count()
        )));
    }
    Ok(())
}

/// True iff the edge permutation `pi` preserves the circuits of the graphic matroid:
/// the image of a cycle basis lies in the cycle space and still has full rank.
pub fn is_matroid_automorphism(x: &Multigraph, pi: &IsoWitness) -> Result<bool> {
    is_matroid_isomorphism(x, x, pi)
}

/// True iff `sigma` maps the cycle space of `x1` onto that of `x2`, i.e. is an
/// isomorphism of the graphic matroids.
pub fn is_matroid_isomorphism(x1: &Multigraph, x2: &Multigraph, sigma: &IsoWitness) -> Result<bool> {
    check_length(x1, sigma)?;
    check_length(x2, sigma)?;
    let basis = cycle_basis(x1);
    if basis.len() != cycle_basis(x2).len() {
        return Ok(false);
    }
    let images: Vec<Bits> = basis.vectors.iter().map(|b| permuted(b, sigma.as_slice())).collect();
    Ok(images.iter().all(|v| in_cycle_space(x2, v)) && gf2_rank(&images) == basis.len())
}

/// The same test phrased as the linear system `b'_i = sum_k x_ik b_k` in the
/// l^2 unknowns `x_ik` (l*m equations), followed by invertibility of `X`.
pub fn is_matroid_automorphism_system(x: &Multigraph, pi: &IsoWitness) -> Result<bool> {
    check_length(x, pi)?;
    let m = x.edge_count();
    let basis = cycle_basis(x);
    let l = basis.len();
    let images: Vec<Bits> = basis.vectors.iter().map(|b| permuted(b, pi.as_slice())).collect();
    // Unknown x_ik has index i*l + k; one augmented row per (i, edge j).
    let unknowns = l * l;
    let mut rows: Vec<Bits> = Vec::with_capacity(l * m);
    for (i, image) in images.iter().enumerate() {
        for j in 0..m {
            let mut row = bits_zero(unknowns + 1);
            for (k, b) in basis.vectors.iter().enumerate() {
                if bit(b, j) {
                    flip(&mut row, i * l + k);
                }
            }
            if bit(image, j) {
                flip(&mut row, unknowns);
            }
            rows.push(row);
        }
    }
    let Some(solution) = solve_gf2(rows, unknowns) else {
        return Ok(false);
    };
    let matrix: Vec<Bits> = (0..l)
        .map(|i| {
            let mut r = bits_zero(l);
            for k in 0..l {
                if bit(&solution, i * l + k) {
                    flip(&mut r, k);
                }
            }
            r
        })
        .collect();
    Ok(gf2_rank(&matrix) == l)
}

/// One solution of an augmented GF(2) system (last column is the right-hand side).
fn solve_gf2(mut rows: Vec<Bits>, unknowns: usize) -> Option<Bits> {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                xor_into(row, &pivot);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| bit(row, unknowns)) {
        return None;
    }
    let mut x = bits_zero(unknowns);
    for (i, &c) in pivot_cols.iter().enumerate() {
        if bit(&rows[i], unknowns) {
            flip(&mut x, c);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::matroid::{circuits, subset::next_permutation};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute(x: &Multigraph, pi: &IsoWitness) -> bool {
        let c = circuits(x).unwrap();
        pi.validates(&c, &c)
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(cycle_basis(&complete(4)).len(), 3);
        assert!(cycle_basis(&path(4)).is_empty());
        let b = cycle_basis(&complete(5));
        assert_eq!(b.len(), 6);
        assert!(b.vectors().iter().all(|v| in_cycle_space(&complete(5), v)));
        assert_eq!(gf2_rank(b.vectors()), 6);
        assert_eq!(cycle_basis(&parallel(3)).edge_sets(), vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn every_permutation_of_c4_is_an_automorphism() {
        let c4 = cycle(4);
        let mut p = vec![0, 1, 2, 3];
        let mut count = 0;
        loop {
            let w = IsoWitness::new(p.clone()).unwrap();
            assert!(is_matroid_automorphism(&c4, &w).unwrap());
            assert!(is_matroid_automorphism_system(&c4, &w).unwrap());
            count += 1;
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn k4_transposition_matches_brute_force() {
        let k4 = complete(4);
        // Edges 0=(0,1) and 1=(0,2) share vertex 0.
        let w = IsoWitness::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(is_matroid_automorphism(&k4, &w).unwrap(), brute(&k4, &w));
        assert!(!brute(&k4, &w));
        let vertex_swap = IsoWitness::new(vec![0, 2, 1, 4, 3, 5]).unwrap();
        assert!(brute(&k4, &vertex_swap));
        assert!(is_matroid_automorphism(&k4, &vertex_swap).unwrap());
    }

    #[test]
    fn both_modes_agree_with_brute_force_on_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let graphs =
            [complete(4), wheel(3), cycle(5), parallel(3), petersen().edge_subgraph(&[0, 1, 2, 3, 4, 5, 6, 7])];
        for g in &graphs {
            let m = g.edge_count();
            for _ in 0..50 {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut rng);
                let w = IsoWitness::new(p).unwrap();
                let expected = brute(g, &w);
                assert_eq!(is_matroid_automorphism(g, &w).unwrap(), expected);
                assert_eq!(is_matroid_automorphism_system(g, &w).unwrap(), expected);
            }
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(is_matroid_automorphism(&cycle(3), &IsoWitness::identity(2)).is_err());
    }
}
