//! Reductions: bounded-rank matroid isomorphism to coloured GMI, and isomorphism
//! versus automorphism generators.

use crate::error::{Error, Result};
use crate::gmi::gmi_test;
use crate::graph::{color_gadget_graphic_with_base, is_matroid_automorphism, Multigraph, UnionFind};
use crate::linear::{linear_circuits, PrimeFieldMatrix};
use crate::matroid::{family_iso_colored, matroid_rank, CircuitFamily, IsoWitness, MatroidOracle};
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;

pub const BLUE: u32 = 1;
pub const RED: u32 = 2;

/// Red/blue graph of a matroid. Loops have no cycle to live on and coloops lie on no
/// circuit, so both are carried as counts next to the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueGraph {
    pub graph: Multigraph,
    pub loops: usize,
    pub coloops: usize,
}

impl RedBlueGraph {
    /// Uncoloured graph with red and blue folded into paths; `base` must be shared by
    /// both sides of a comparison.
    pub fn folded(&self, base: usize) -> Result<Multigraph> {
        color_gadget_graphic_with_base(&self.graph, base)
    }
}

/// Circuits of a matroid of rank at most `b`, found among subsets of size at most `b + 1`.
pub fn bounded_circuits<M: MatroidOracle + ?Sized>(m: &M, b: usize) -> Result<CircuitFamily> {
    let n = m.ground_size();
    let r = matroid_rank(m);
    if r > b {
        return Err(Error::precondition(format!("rank {r} exceeds the bound {b}")));
    }
    let mut sets = Vec::new();
    for k in 1..=(b + 1).min(n) {
        for c in (0..n).combinations(k) {
            if !m.is_independent(&c)
                && (0..k).all(|skip| {
                    let sub: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
                    m.is_independent(&sub)
                })
            {
                sets.push(c);
            }
        }
    }
    Ok(CircuitFamily::new(n, sets))
}

fn red_blue<M: MatroidOracle + ?Sized>(m: &M, b: usize) -> Result<RedBlueGraph> {
    let family = bounded_circuits(m, b)?;
    let mut edges = Vec::new();
    let mut colors = Vec::new();
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); m.ground_size()];
    let mut n = 0;
    let mut loops = 0;
    for c in family.sets() {
        if c.len() == 1 {
            loops += 1;
            continue;
        }
        let l = c.len();
        for (i, &s) in c.iter().enumerate() {
            let (u, v) = (n + i, n + (i + 1) % l);
            edges.push((u, v));
            colors.push(BLUE);
            ends[s].extend([u, v]);
        }
        n += l;
    }
    let mut coloops = 0;
    for (s, pts) in ends.iter().enumerate() {
        let on_loop = family.sets().iter().any(|c| c == &[s]);
        if pts.is_empty() && !on_loop {
            coloops += 1;
        }
        for (i, &u) in pts.iter().enumerate() {
            for &v in &pts[i + 1..] {
                edges.push((u, v));
                colors.push(RED);
            }
        }
    }
    let graph = Multigraph::new(n, edges)?.with_colors(colors)?;
    Ok(RedBlueGraph { graph, loops, coloops })
}

/// One blue cycle per circuit (edge `e(c, s)` per incidence) and a red clique on the
/// endpoints of each element's blue edges.
pub fn mib_to_gmi<A, B>(m1: &A, m2: &B, b: usize) -> Result<(RedBlueGraph, RedBlueGraph)>
where
    A: MatroidOracle + ?Sized,
    B: MatroidOracle + ?Sized,
{
    Ok((red_blue(m1, b)?, red_blue(m2, b)?))
}

/// Matroid isomorphism verdict read off the red/blue graphs.
pub fn red_blue_verdict(x1: &RedBlueGraph, x2: &RedBlueGraph) -> Result<bool> {
    if (x1.loops, x1.coloops) != (x2.loops, x2.coloops) {
        return Ok(false);
    }
    Ok(gmi_test(&x1.graph, &x2.graph)?.is_some())
}

/// Automorphisms harvested along a pointwise-stabilizer chain, with the orbit of each
/// base point in its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub degree: usize,
    pub generators: Vec<IsoWitness>,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

impl GeneratorSet {
    /// Product of the basic orbit sizes, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.orbit_sizes.iter().try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
    }

    pub fn orbits(&self) -> OrbitPartition {
        OrbitPartition::from_generators(self.degree, &self.generators)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn from_generators(m: usize, gens: &[IsoWitness]) -> Self {
        let mut uf = UnionFind::new(m);
        for g in gens {
            for e in 0..m {
                uf.union(e, g.apply(e));
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..m {
            by_root.entry(uf.find(e)).or_default().push(e);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_values().collect();
        blocks.sort();
        OrbitPartition { blocks }
    }
}

/// Orbit of `e` under `gens`, with a group element sending `e` to each orbit point.
fn orbit_with_words(m: usize, gens: &[IsoWitness], e: usize) -> BTreeMap<usize, IsoWitness> {
    let mut words = BTreeMap::new();
    words.insert(e, IsoWitness::identity(m));
    let mut queue = vec![e];
    while let Some(x) = queue.pop() {
        let wx = words[&x].clone();
        for g in gens {
            let y = g.apply(x);
            if let std::collections::btree_map::Entry::Vacant(slot) = words.entry(y) {
                slot.insert(wx.then(g));
                queue.push(y);
            }
        }
    }
    words
}

/// Generators of the automorphism group of an `m`-element structure, using only a
/// coloured self-isomorphism oracle: `iso(c1, c2)` returns a map of the structure onto
/// itself carrying colouring `c1` to `c2`, if one exists.
pub fn auto_from_iso<F>(m: usize, mut iso: F) -> Result<GeneratorSet>
where
    F: FnMut(&[u32], &[u32]) -> Result<Option<IsoWitness>>,
{
    let mut colors = vec![0u32; m];
    let mut generators = Vec::new();
    let mut base = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut next = 1u32;
    for e in 0..m {
        let mut level: Vec<IsoWitness> = Vec::new();
        let marked = |x: usize| {
            let mut c = colors.clone();
            c[x] = next;
            c
        };
        let source = marked(e);
        let mut orbit = orbit_with_words(m, &level, e);
        for f in e + 1..m {
            if colors[f] != 0 || orbit.contains_key(&f) {
                continue;
            }
            if let Some(w) = iso(&source, &marked(f))? {
                if w.apply(e) != f || (0..m).any(|x| colors[x] != 0 && w.apply(x) != x) {
                    return Err(Error::integrity("coloured isomorphism ignores the marks"));
                }
                level.push(w);
                orbit = orbit_with_words(m, &level, e);
            }
        }
        base.push(e);
        orbit_sizes.push(orbit.len());
        generators.extend(level);
        colors[e] = next;
        next += 1;
    }
    Ok(GeneratorSet { degree: m, generators, base, orbit_sizes })
}

/// Connected components of a matroid: classes generated by the fundamental circuits
/// of a basis.
pub fn matroid_components<M: MatroidOracle + ?Sized>(m: &M) -> Vec<Vec<usize>> {
    let n = m.ground_size();
    let all: Vec<usize> = (0..n).collect();
    let basis = crate::matroid::greedy_basis(m, &all);
    let mut uf = UnionFind::new(n);
    for x in (0..n).filter(|x| !basis.contains(x)) {
        for (i, &b) in basis.iter().enumerate() {
            let mut swapped = basis.clone();
            swapped[i] = x;
            if m.is_independent(&swapped) {
                uf.union(x, b);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        by_root.entry(uf.find(e)).or_default().push(e);
    }
    let mut comps: Vec<Vec<usize>> = by_root.into_values().collect();
    comps.sort();
    comps
}

/// Isomorphism of the two summands of `sum = M1 (+) M2` (elements `0..split` are `M1`)
/// from generators of `Aut(sum)`. Isomorphic connected components are exactly those
/// joined by the group, so the summands are isomorphic iff every orbit of components
/// meets both sides equally often; group elements found along orbits give the map.
pub fn iso_from_auto<M: MatroidOracle + ?Sized>(
    sum: &M,
    split: usize,
    gens: &GeneratorSet,
) -> Result<Option<IsoWitness>> {
    let n = sum.ground_size();
    if gens.degree != n || split > n {
        return Err(Error::input("generator degree does not match the direct sum"));
    }
    if 2 * split != n {
        return Ok(None);
    }
    let comps = matroid_components(sum);
    let mut comp_of = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &e in c {
            comp_of[e] = i;
        }
    }
    if comps.iter().any(|c| c.iter().any(|&e| e < split) && c.iter().any(|&e| e >= split)) {
        return Err(Error::input("a component of the sum meets both summands"));
    }
    let mut used = vec![false; comps.len()];
    let mut sigma = vec![usize::MAX; split];
    for c in &comps {
        if c[0] >= split {
            continue;
        }
        let words = orbit_with_words(n, &gens.generators, c[0]);
        let target = words.iter().find(|(&y, _)| y >= split && !used[comp_of[y]] && comps[comp_of[y]].len() == c.len());
        let Some((&y, g)) = target else {
            return Ok(None);
        };
        used[comp_of[y]] = true;
        for &e in c {
            let img = g.apply(e);
            if comp_of[img] != comp_of[y] {
                return Err(Error::integrity("group element does not map components onto components"));
            }
            sigma[e] = img - split;
        }
    }
    Ok(Some(IsoWitness::new(sigma)?))
}

/// Disjoint union with the vertices and edges of `x2` shifted past those of `x1`.
pub fn disjoint_union(x1: &Multigraph, x2: &Multigraph) -> Multigraph {
    let n1 = x1.vertex_count();
    let mut edges = x1.edges().to_vec();
    edges.extend(x2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    let mut colors = x1.color_vec();
    colors.extend(x2.color_vec());
    let g = Multigraph::new(n1 + x2.vertex_count(), edges).expect("shifted edges stay in range");
    if x1.colors().is_some() || x2.colors().is_some() {
        g.with_colors(colors).expect("one colour per edge")
    } else {
        g
    }
}

fn combined(base: &[u32], marks: &[u32]) -> Vec<u32> {
    let width = marks.iter().max().copied().unwrap_or(0) as u64 + 1;
    base.iter()
        .zip(marks)
        .map(|(&b, &k)| u32::try_from(b as u64 * width + k as u64).expect("colour fits in u32"))
        .collect()
}

/// Automorphism generators of a graphic matroid through coloured 2-isomorphism queries.
pub fn gma_generators(x: &Multigraph) -> Result<GeneratorSet> {
    let plain = x.color_vec();
    let gens = auto_from_iso(x.edge_count(), |c1, c2| {
        let a = x.uncolored().with_colors(combined(&plain, c1))?;
        let b = x.uncolored().with_colors(combined(&plain, c2))?;
        gmi_test(&a, &b)
    })?;
    for g in &gens.generators {
        if !is_matroid_automorphism(x, g)? {
            return Err(Error::integrity("harvested generator is not an automorphism"));
        }
    }
    Ok(gens)
}

/// Automorphism generators of a linear matroid through coloured circuit-family isomorphism.
pub fn lma_generators(a: &PrimeFieldMatrix) -> Result<GeneratorSet> {
    let family = linear_circuits(a, 1 << 20)?;
    let gens = auto_from_iso(a.cols(), |c1, c2| family_iso_colored(&family, Some(c1), &family, Some(c2)))?;
    for g in &gens.generators {
        if !g.validates(&family, &family) {
            return Err(Error::integrity("harvested generator does not preserve circuits"));
        }
    }
    Ok(gens)
}

/// Graphic isomorphism decided through automorphisms of the disjoint union.
pub fn gmi_via_auto(x1: &Multigraph, x2: &Multigraph) -> Result<Option<IsoWitness>> {
    if x1.edge_count() != x2.edge_count() {
        return Ok(None);
    }
    let sum = disjoint_union(x1, x2);
    let gens = gma_generators(&sum)?;
    iso_from_auto(&sum, x1.edge_count(), &gens)
}

/// Block-diagonal matrix of two representations over the same field.
pub fn matrix_direct_sum(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
    if a.field() != b.field() {
        return Err(Error::input("matrices live over different fields"));
    }
    let mut out = PrimeFieldMatrix::zeros(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j));
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out.set(a.rows() + i, a.cols() + j, b.get(i, j));
        }
    }
    Ok(out)
}

/// Linear isomorphism decided through automorphisms of the direct sum.
pub fn lmi_via_auto(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<Option<IsoWitness>> {
    if a.cols() != b.cols() {
        return Ok(None);
    }
    let sum = matrix_direct_sum(a, b)?;
    let gens = lma_generators(&sum)?;
    iso_from_auto(&sum, a.cols(), &gens)
}

/// Order of the group generated by `gens`, by closing under composition; `None` past `cap`.
pub fn group_order_by_closure(m: usize, gens: &[IsoWitness], cap: usize) -> Option<usize> {
    let id = IsoWitness::identity(m);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push(q);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::graph::named::*;
    use crate::graph::{gen_modk_gadget, modk_shift};
    use crate::linear::uniform_representation;
    use crate::matroid::{brute_force_automorphisms, brute_force_iso, ListMatroid};

    #[test]
    fn u23_red_blue_shape() {
        let u23 = ListMatroid::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let free = ListMatroid::new(3, vec![vec![0, 1, 2]]).unwrap();
        let (a, b) = mib_to_gmi(&u23, &free, 3).unwrap();
        assert_eq!(a.graph.edge_count(), 6);
        assert_eq!(a.graph.colors().unwrap().iter().filter(|&&c| c == RED).count(), 3);
        assert_eq!((b.graph.edge_count(), b.coloops), (0, 3));
        assert!(!red_blue_verdict(&a, &b).unwrap());
        assert!(red_blue_verdict(&a, &a.clone()).unwrap());
        assert!(a.folded(6).unwrap().colors().is_none());
        assert!(mib_to_gmi(&u23, &free, 1).is_err());
    }

    #[test]
    fn c4_group_is_symmetric() {
        let gens = gma_generators(&cycle(4)).unwrap();
        assert_eq!(gens.order(), Some(24));
        assert_eq!(group_order_by_closure(4, &gens.generators, 100), Some(24));
        assert_eq!(gens.orbits().blocks, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn k4_and_identity_matrix() {
        let k4 = gma_generators(&complete(4)).unwrap();
        assert_eq!(k4.orbits().blocks.len(), 1);
        assert_eq!(Some(k4.order().unwrap() as usize), Some(brute_force_automorphisms(&complete(4)).unwrap().len()));
        let f = PrimeField::new(5).unwrap();
        let id = PrimeFieldMatrix::from_rows(f, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(lma_generators(&id).unwrap().order(), Some(6));
        let u23 = uniform_representation(2, 3, f).unwrap();
        assert_eq!(lma_generators(&u23).unwrap().orbits().blocks, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn modk_shifts_lie_in_the_group() {
        let x = gen_modk_gadget(3).unwrap();
        let gens = gma_generators(&x).unwrap();
        let order = gens.order().unwrap();
        assert_eq!(order % 9, 0);
        for a in 0..3 {
            for b in 0..3 {
                assert!(is_matroid_automorphism(&x, &modk_shift(3, a, b)).unwrap());
            }
        }
    }

    #[test]
    fn iso_through_automorphisms() {
        let w = gmi_via_auto(&complete(4), &complete(4)).unwrap().unwrap();
        assert!(crate::graph::is_matroid_isomorphism(&complete(4), &complete(4), &w).unwrap());
        assert!(gmi_via_auto(&cycle(3), &path(3)).unwrap().is_none());
        assert!(gmi_via_auto(&star(4), &path(4)).unwrap().is_some());
        let bowtie = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let two = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(gmi_via_auto(&bowtie, &two).unwrap().is_some());
        assert_eq!(
            gmi_via_auto(&cycle(6), &two).unwrap().is_some(),
            brute_force_iso(&cycle(6), &two).unwrap().is_some()
        );
        let f = PrimeField::new(5).unwrap();
        let a = uniform_representation(2, 4, f).unwrap();
        assert!(lmi_via_auto(&a, &a).unwrap().is_some());
    }
}
