//! The star matroid St_k(X) and the reductions between bounded-rank linear
//! matroid isomorphism and graph isomorphism.

use super::{binomial, next_combination, PrimeFieldMatrix};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gi::ColoredGraph;
use crate::graph::Multigraph;
use crate::matroid::MatroidOracle;
use std::collections::BTreeMap;

/// `n^(2k-1)`, the field size guaranteeing the greedy assignment succeeds.
pub fn stk_field_bound(n: usize, k: usize) -> Option<u64> {
    let b = (n as u128).checked_pow(2 * k as u32 - 1)?;
    u64::try_from(b).ok()
}

/// Smallest prime field admissible for [`stk_construct`] on `n` vertices.
pub fn stk_min_field(n: usize, k: usize) -> Result<PrimeField> {
    let bound =
        stk_field_bound(n, k).ok_or_else(|| Error::precondition(format!("field bound {n}^{} overflows", 2 * k - 1)))?;
    PrimeField::at_least(bound)
}

fn is_star(x: &Multigraph, edges: &[usize]) -> bool {
    let (a, b) = x.endpoints(edges[0]);
    [a, b].iter().any(|&c| {
        edges.iter().all(|&e| {
            let (u, v) = x.endpoints(e);
            u == c || v == c
        })
    })
}

/// Polynomial over GF(p) in the St_k unknowns: monomial (sorted variable list) -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(BTreeMap<Vec<u32>, u64>);

impl Poly {
    fn constant(c: u64) -> Self {
        let mut t = BTreeMap::new();
        if c != 0 {
            t.insert(Vec::new(), c);
        }
        Poly(t)
    }

    fn var(i: usize) -> Self {
        Poly(BTreeMap::from([(vec![i as u32], 1)]))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, mono: Vec<u32>, c: u64, f: PrimeField) {
        let entry = self.0.entry(mono).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.0.retain(|_, v| *v != 0);
        }
    }

    fn add(&self, other: &Poly, f: PrimeField) -> Poly {
        let mut out = self.clone();
        for (mono, &c) in &other.0 {
            out.add_term(mono.clone(), c, f);
        }
        out
    }

    fn mul(&self, other: &Poly, f: PrimeField) -> Poly {
        let mut out = Poly(BTreeMap::new());
        for (ma, &ca) in &self.0 {
            for (mb, &cb) in &other.0 {
                let mut mono: Vec<u32> = ma.iter().chain(mb).copied().collect();
                mono.sort_unstable();
                out.add_term(mono, f.mul(ca, cb), f);
            }
        }
        out
    }

    fn scale(&self, c: u64, f: PrimeField) -> Poly {
        Poly(self.0.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).filter(|(_, v)| *v != 0).collect())
    }

    /// Substitutes `value` for variable `var`.
    fn substitute(&self, var: u32, value: u64, f: PrimeField) -> Poly {
        let mut out = Poly(BTreeMap::new());
        for (mono, &c) in &self.0 {
            let deg = mono.iter().filter(|&&v| v == var).count() as u64;
            let rest: Vec<u32> = mono.iter().copied().filter(|&v| v != var).collect();
            out.add_term(rest, f.mul(c, f.pow(value, deg)), f);
        }
        out
    }
}

/// Determinant by cofactor expansion along the first column.
fn det(cols: &[Vec<Poly>], rows: &[usize], f: PrimeField) -> Poly {
    if cols.is_empty() {
        return Poly::constant(1);
    }
    let mut acc = Poly(BTreeMap::new());
    for (i, &r) in rows.iter().enumerate() {
        if cols[0][r].is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let term = cols[0][r].mul(&det(&cols[1..], &sub_rows, f), f);
        acc = if i % 2 == 0 { acc.add(&term, f) } else { acc.add(&term.scale(f.neg(1), f), f) };
    }
    acc
}

/// Column `b_e = (1, x_u + x_v, x_u x_v, y_{e,1}, ..., y_{e,k-3})` per edge. Unknowns are
/// fixed in order (x by vertex, then y by edge) to the least value that keeps every
/// non-star k-set and every (k-1)-set independent as polynomials in the unknowns still free.
pub fn stk_construct(x: &Multigraph, k: usize, field: PrimeField) -> Result<PrimeFieldMatrix> {
    let n = x.vertex_count();
    let m = x.edge_count();
    if k < 3 {
        return Err(Error::precondition(format!("St_k needs k >= 3, got {k}")));
    }
    if !x.is_simple() {
        return Err(Error::precondition("St_k needs a simple graph"));
    }
    if x.min_degree() < k {
        return Err(Error::precondition(format!("minimum degree {} is below k = {k}", x.min_degree())));
    }
    match stk_field_bound(n, k) {
        Some(b) if field.modulus() >= b => {}
        _ => return Err(Error::precondition(format!("field of size {} is below {n}^{}", field.modulus(), 2 * k - 1))),
    }
    let f = field;
    let ys = k - 3;
    let unknowns = n + m * ys;
    let mut value: Vec<Option<u64>> = vec![None; unknowns];
    let term = |value: &[Option<u64>], i: usize| value[i].map_or_else(|| Poly::var(i), Poly::constant);
    let column = |value: &[Option<u64>], e: usize| -> Vec<Poly> {
        let (u, v) = x.endpoints(e);
        let (pu, pv) = (term(value, u), term(value, v));
        let mut c = vec![Poly::constant(1), pu.add(&pv, f), pu.mul(&pv, f)];
        c.extend((0..ys).map(|j| term(value, n + e * ys + j)));
        c
    };
    let all_rows: Vec<usize> = (0..k).collect();
    for idx in 0..unknowns {
        let touched: Vec<usize> = if idx < n {
            (0..m)
                .filter(|&e| {
                    let (u, v) = x.endpoints(e);
                    u == idx || v == idx
                })
                .collect()
        } else {
            vec![(idx - n) / ys]
        };
        let cols: Vec<Vec<Poly>> = (0..m).map(|e| column(&value, e)).collect();
        // Each constraint is a list of minors of which at least one must stay nonzero.
        let mut constraints: Vec<Vec<Poly>> = Vec::new();
        for size in [k - 1, k] {
            for_each_subset_meeting(m, size, &touched, |set| {
                if size == k && is_star(x, set) {
                    return;
                }
                let sc: Vec<Vec<Poly>> = set.iter().map(|&e| cols[e].clone()).collect();
                let minors: Vec<Poly> = if size == k {
                    vec![det(&sc, &all_rows, f)]
                } else {
                    (0..k)
                        .map(|skip| {
                            let rows: Vec<usize> = all_rows.iter().copied().filter(|&r| r != skip).collect();
                            det(&sc, &rows, f)
                        })
                        .collect()
                };
                constraints.push(minors);
            });
        }
        if let Some(bad) = constraints.iter().position(|c| c.iter().all(Poly::is_zero)) {
            return Err(Error::integrity(format!("constraint {bad} vanishes identically")));
        }
        let chosen = (0..f.modulus())
            .find(|&val| constraints.iter().all(|c| c.iter().any(|p| !p.substitute(idx as u32, val, f).is_zero())));
        match chosen {
            Some(val) => value[idx] = Some(val),
            None => return Err(Error::precondition(format!("no admissible value for unknown {idx}"))),
        }
    }
    let value: Vec<u64> = value.into_iter().map(|v| v.expect("all unknowns fixed")).collect();
    let columns: Vec<Vec<u64>> = (0..m)
        .map(|e| {
            let (u, v) = x.endpoints(e);
            let mut c = vec![1, f.add(value[u], value[v]), f.mul(value[u], value[v])];
            c.extend((0..ys).map(|j| value[n + e * ys + j]));
            c
        })
        .collect();
    PrimeFieldMatrix::from_columns(field, k, &columns)
}

/// Calls `visit` on every `size`-subset of `0..m` (sorted) containing an element of `touched`.
fn for_each_subset_meeting(m: usize, size: usize, touched: &[usize], mut visit: impl FnMut(&[usize])) {
    if size > m {
        return;
    }
    let mut comb: Vec<usize> = (0..size).collect();
    loop {
        if comb.iter().any(|e| touched.contains(e)) {
            visit(&comb);
        }
        if !next_combination(&mut comb, m) {
            break;
        }
    }
}

/// Attaches a clique of size `max(n+1, 4)` at every vertex, sharing that vertex.
pub fn pad_with_cliques(x: &Multigraph, n: usize) -> Multigraph {
    let size = (n + 1).max(4);
    let mut g = x.uncolored();
    for v in 0..x.vertex_count() {
        let mut members = vec![v];
        members.extend((1..size).map(|_| g.add_vertex()));
        for i in 0..size {
            for j in i + 1..size {
                g.add_edge(members[i], members[j], 0);
            }
        }
    }
    g
}

/// St_3 representations whose isomorphism verdict is the graph isomorphism verdict.
/// Both graphs are padded with cliques when either has minimum degree below 3.
pub fn gi_to_lmib(
    x1: &Multigraph,
    x2: &Multigraph,
    field: Option<PrimeField>,
) -> Result<(PrimeFieldMatrix, PrimeFieldMatrix)> {
    if x1.vertex_count() != x2.vertex_count() || x1.edge_count() != x2.edge_count() {
        return Err(Error::precondition("graphs differ in vertex or edge count"));
    }
    if !x1.is_simple() || !x2.is_simple() {
        return Err(Error::precondition("graph isomorphism reduction needs simple graphs"));
    }
    let n = x1.vertex_count();
    let (g1, g2) = if x1.min_degree() < 3 || x2.min_degree() < 3 {
        (pad_with_cliques(x1, n), pad_with_cliques(x2, n))
    } else {
        (x1.uncolored(), x2.uncolored())
    };
    let field = match field {
        Some(f) => f,
        None => stk_min_field(g1.vertex_count(), 3)?,
    };
    Ok((stk_construct(&g1, 3, field)?, stk_construct(&g2, 3, field)?))
}

/// Column/basis incidence graph: vertices `0..m` are columns (colour 0), then one
/// vertex per basis (colour 1).
pub fn basis_incidence_graph(a: &PrimeFieldMatrix, rank_bound: usize) -> Result<ColoredGraph> {
    const MAX_CANDIDATES: usize = 2_000_000;
    let m = a.cols();
    let r = a.rank();
    if r > rank_bound {
        return Err(Error::precondition(format!("rank {r} exceeds the bound {rank_bound}")));
    }
    let candidates = binomial(m, r);
    if candidates > MAX_CANDIDATES {
        return Err(Error::Capacity { what: "basis enumeration", size: candidates, bound: MAX_CANDIDATES });
    }
    let mut g = Multigraph::new(m, Vec::new())?;
    let mut comb: Vec<usize> = (0..r).collect();
    loop {
        if a.is_independent(&comb) {
            let b = g.add_vertex();
            for &c in &comb {
                g.add_edge(c, b, 0);
            }
        }
        if !next_combination(&mut comb, m) {
            break;
        }
    }
    let mut colors = vec![0; m];
    colors.resize(g.vertex_count(), 1);
    ColoredGraph::new(g, colors)
}

pub fn lmib_to_gi(
    a: &PrimeFieldMatrix,
    b: &PrimeFieldMatrix,
    rank_bound: usize,
) -> Result<(ColoredGraph, ColoredGraph)> {
    Ok((basis_incidence_graph(a, rank_bound)?, basis_incidence_graph(b, rank_bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gi::graph_isomorphism;
    use crate::graph::named::*;
    use crate::linear::uniform_representation;
    use crate::matroid::{brute_force_automorphisms, brute_force_iso, circuits, hyperplanes, subset::mask_elements};

    #[test]
    fn st3_of_k4() {
        let f = stk_min_field(4, 3).unwrap();
        assert_eq!(f.modulus(), 1031);
        let k4 = complete(4);
        let a = stk_construct(&k4, 3, f).unwrap();
        let mut bases = 0;
        for mask in 0u64..64 {
            let s = mask_elements(mask);
            if s.len() == 3 {
                let star = is_star(&k4, &s);
                assert_eq!(a.is_independent(&s), !star);
                bases += usize::from(!star);
            }
            if s.len() == 2 {
                assert!(a.is_independent(&s));
            }
        }
        assert_eq!(bases, 16);
        let dependent: Vec<Vec<usize>> =
            hyperplanes(&a).unwrap().into_iter().filter(|h| !a.is_independent(h)).collect();
        let mut stars: Vec<Vec<usize>> = (0..4)
            .map(|v| {
                (0..6)
                    .filter(|&e| {
                        let (x, y) = k4.endpoints(e);
                        x == v || y == v
                    })
                    .collect()
            })
            .collect();
        stars.sort();
        let mut dep = dependent.clone();
        dep.sort();
        assert_eq!(dep, stars);
        assert_eq!(brute_force_automorphisms(&a).unwrap().len(), 24);
    }

    #[test]
    fn preconditions() {
        let f = PrimeField::new(1031).unwrap();
        assert!(stk_construct(&cycle(4), 3, f).is_err());
        assert!(stk_construct(&complete(4), 3, PrimeField::new(101).unwrap()).is_err());
        assert!(stk_construct(&complete(4), 2, f).is_err());
        assert!(gi_to_lmib(&complete(4), &star(3), None).is_err());
    }

    #[test]
    fn st4_of_k5_has_independent_triples() {
        let k5 = complete(5);
        let f = stk_min_field(5, 4).unwrap();
        let a = stk_construct(&k5, 4, f).unwrap();
        assert_eq!(a.rank(), 4);
        let c = circuits(&a).unwrap();
        assert!(c.sets().iter().all(|s| s.len() >= 4));
    }

    #[test]
    fn padding_distinguishes_small_graphs() {
        let (a, b) = gi_to_lmib(&path(3), &star(3), None).unwrap();
        assert_eq!(a.cols(), 3 + 4 * 10);
        assert_ne!(a.rank(), 0);
        assert_eq!(b.cols(), a.cols());
    }

    #[test]
    fn u23_incidence_is_a_hexagon() {
        let f = PrimeField::new(5).unwrap();
        let u23 = uniform_representation(2, 3, f).unwrap();
        let g = basis_incidence_graph(&u23, 2).unwrap();
        assert_eq!(g.graph().vertex_count(), 6);
        assert_eq!(g.graph().edge_count(), 6);
        let hex = crate::gi::ColoredGraph::new(cycle(6), vec![0, 1, 0, 1, 0, 1]).unwrap();
        assert!(graph_isomorphism(&g, &hex).is_some());
        let one_dependent = PrimeFieldMatrix::from_rows(f, 3, &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        let (ga, gb) = lmib_to_gi(&u23, &one_dependent, 2).unwrap();
        assert_eq!(gb.graph().vertex_count(), 5);
        assert!(graph_isomorphism(&ga, &gb).is_none());
        assert!(brute_force_iso(&u23, &one_dependent).unwrap().is_none());
        assert!(basis_incidence_graph(&uniform_representation(3, 4, f).unwrap(), 2).is_err());
    }
}
