//! Representation-independent matroid semantics.
//!
//! Every realization (basis list, matrix columns, graph edges) implements
//! [`MatroidOracle`]; rank, closure, circuits, hyperplanes and the
//! exhaustive isomorphism oracles below only ever talk to that trait.

mod iso;
mod list;
pub mod subset;

pub use iso::{family_iso, family_iso_colored};
pub use list::ListMatroid;

use crate::error::{Error, Result};
use crate::text::{content_lines, numbers};
use std::collections::HashSet;
use std::fmt;
use subset::{canonical_order, image, mask_elements, masks_by_size, next_permutation};

/// Independence-query interface over the ground set `0..ground_size()`.
pub trait MatroidOracle {
    fn ground_size(&self) -> usize;

    /// `set` holds distinct in-range indices, in any order.
    fn is_independent(&self, set: &[usize]) -> bool;
}

impl<T: MatroidOracle + ?Sized> MatroidOracle for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }
}

impl<T: MatroidOracle + ?Sized> MatroidOracle for Box<T> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }
}

/// Limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    /// Ground-size limit for subset enumeration (circuits, hyperplanes, axioms).
    pub subsets: usize,
    /// Ground-size limit for factorial permutation search.
    pub factorial: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds { subsets: 16, factorial: 8 }
    }
}

fn check_subset(m: usize, set: &[usize]) -> Result<()> {
    if let Some(&bad) = set.iter().find(|&&e| e >= m) {
        return Err(Error::input(format!("element {bad} outside ground set of size {m}")));
    }
    Ok(())
}

fn sorted_distinct(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Size of a maximal independent subset of `set`, built greedily in index order.
pub fn rank<M: MatroidOracle + ?Sized>(matroid: &M, set: &[usize]) -> Result<usize> {
    check_subset(matroid.ground_size(), set)?;
    Ok(greedy_basis(matroid, &sorted_distinct(set)).len())
}

/// Greedy basis of `elems` scanning in the given order.
pub fn greedy_basis<M: MatroidOracle + ?Sized>(matroid: &M, elems: &[usize]) -> Vec<usize> {
    let mut basis = Vec::new();
    for &e in elems {
        basis.push(e);
        if !matroid.is_independent(&basis) {
            basis.pop();
        }
    }
    basis
}

/// Rank of the whole ground set.
pub fn matroid_rank<M: MatroidOracle + ?Sized>(matroid: &M) -> usize {
    let all: Vec<usize> = (0..matroid.ground_size()).collect();
    greedy_basis(matroid, &all).len()
}

/// `{x : rank(F ∪ x) = rank(F)}`, sorted.
pub fn closure<M: MatroidOracle + ?Sized>(matroid: &M, set: &[usize]) -> Result<Vec<usize>> {
    check_subset(matroid.ground_size(), set)?;
    let basis = greedy_basis(matroid, &sorted_distinct(set));
    let mut probe = basis.clone();
    let mut out = Vec::new();
    for x in 0..matroid.ground_size() {
        if basis.contains(&x) {
            out.push(x);
            continue;
        }
        probe.push(x);
        if !matroid.is_independent(&probe) {
            out.push(x);
        }
        probe.pop();
    }
    Ok(out)
}

fn ensure_enumerable(what: &'static str, m: usize, bound: usize) -> Result<()> {
    if m > bound || m > 63 {
        return Err(Error::Capacity { what, size: m, bound: bound.min(63) });
    }
    Ok(())
}

/// Independence bit for every subset mask of the ground set.
fn independence_table<M: MatroidOracle + ?Sized>(matroid: &M) -> Vec<bool> {
    let m = matroid.ground_size();
    let mut table = vec![false; 1usize << m];
    table[0] = matroid.is_independent(&[]);
    for mask in 1..(1u64 << m) {
        // Downward closure lets a dependent subset settle the answer without a query.
        let low = mask & mask.wrapping_neg();
        table[mask as usize] = table[(mask ^ low) as usize] && matroid.is_independent(&mask_elements(mask));
    }
    table
}

/// Minimal dependent sets in canonical (size, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CircuitFamily {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl CircuitFamily {
    /// Builds a family from arbitrary sets; canonicalizes order. Minimality is not checked.
    pub fn new(ground: usize, mut sets: Vec<Vec<usize>>) -> Self {
        canonical_order(&mut sets);
        CircuitFamily { ground, sets }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        let s = sorted_distinct(set);
        self.sets.binary_search_by(|c| c.len().cmp(&s.len()).then_with(|| c.as_slice().cmp(&s))).is_ok()
    }

    /// Number of circuits of each size, indexed by size.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut prof = vec![0; self.ground + 1];
        for c in &self.sets {
            prof[c.len()] += 1;
        }
        prof
    }
}

pub fn circuits<M: MatroidOracle + ?Sized>(matroid: &M) -> Result<CircuitFamily> {
    circuits_bounded(matroid, EnumBounds::default().subsets)
}

pub fn circuits_bounded<M: MatroidOracle + ?Sized>(matroid: &M, bound: usize) -> Result<CircuitFamily> {
    let m = matroid.ground_size();
    ensure_enumerable("circuit enumeration", m, bound)?;
    let indep = independence_table(matroid);
    let mut sets = Vec::new();
    for mask in 0..(1u64 << m) {
        if indep[mask as usize] {
            continue;
        }
        let minimal = mask_elements(mask).into_iter().all(|e| indep[(mask & !(1u64 << e)) as usize]);
        if minimal {
            sets.push(mask_elements(mask));
        }
    }
    Ok(CircuitFamily::new(m, sets))
}

fn rank_table(m: usize, indep: &[bool]) -> Vec<u8> {
    let mut rank = vec![0u8; 1usize << m];
    for mask in 1..(1u64 << m) as usize {
        rank[mask] = if indep[mask] {
            mask.count_ones() as u8
        } else {
            mask_elements(mask as u64).into_iter().map(|e| rank[mask & !(1usize << e)]).max().unwrap_or(0)
        };
    }
    rank
}

/// Maximal non-spanning sets (closed sets of rank r−1), canonical order.
pub fn hyperplanes<M: MatroidOracle + ?Sized>(matroid: &M) -> Result<Vec<Vec<usize>>> {
    let m = matroid.ground_size();
    ensure_enumerable("hyperplane enumeration", m, EnumBounds::default().subsets)?;
    let indep = independence_table(matroid);
    let rank = rank_table(m, &indep);
    let full = ((1u64 << m) - 1) as usize;
    let r = rank[full];
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for mask in 0..=full {
        if rank[mask] != r - 1 {
            continue;
        }
        let closed = (0..m).filter(|&x| mask & (1 << x) == 0).all(|x| rank[mask | (1 << x)] == r);
        if closed {
            out.push(mask_elements(mask as u64));
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// True iff every subset of size ≤ k is independent and every (k+1)-subset is dependent.
pub fn is_uniform<M: MatroidOracle + ?Sized>(matroid: &M, k: usize) -> Result<bool> {
    let m = matroid.ground_size();
    ensure_enumerable("uniformity test", m, EnumBounds::default().subsets)?;
    for mask in masks_by_size(m) {
        let size = mask.count_ones() as usize;
        if size > k + 1 {
            break;
        }
        let indep = matroid.is_independent(&mask_elements(mask));
        if (size <= k) != indep {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Disjoint union: the ground of `left` followed by the ground of `right`.
#[derive(Debug, Clone)]
pub struct DirectSum<A, B> {
    pub left: A,
    pub right: B,
}

pub fn direct_sum<A: MatroidOracle, B: MatroidOracle>(left: A, right: B) -> DirectSum<A, B> {
    DirectSum { left, right }
}

impl<A: MatroidOracle, B: MatroidOracle> MatroidOracle for DirectSum<A, B> {
    fn ground_size(&self) -> usize {
        self.left.ground_size() + self.right.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let split = self.left.ground_size();
        let (l, r): (Vec<usize>, Vec<usize>) = set.iter().partition(|&&e| e < split);
        let r: Vec<usize> = r.into_iter().map(|e| e - split).collect();
        self.left.is_independent(&l) && self.right.is_independent(&r)
    }
}

/// Exhaustive check of the three independence axioms.
pub fn check_axioms<M: MatroidOracle + ?Sized>(matroid: &M) -> Result<Result<(), String>> {
    let m = matroid.ground_size();
    ensure_enumerable("axiom check", m, EnumBounds::default().subsets)?;
    if !matroid.is_independent(&[]) {
        return Ok(Err("empty set is dependent".into()));
    }
    let table: Vec<bool> = (0..(1u64 << m)).map(|mask| matroid.is_independent(&mask_elements(mask))).collect();
    let full = (1u64 << m) - 1;
    for a in 0..=full {
        if !table[a as usize] {
            continue;
        }
        for e in mask_elements(a) {
            if !table[(a & !(1 << e)) as usize] {
                return Ok(Err(format!(
                    "{:?} independent but {:?} is not",
                    mask_elements(a),
                    mask_elements(a & !(1 << e))
                )));
            }
        }
    }
    let independents: Vec<u64> = (0..=full).filter(|&s| table[s as usize]).collect();
    for &small in &independents {
        for &big in &independents {
            if big.count_ones() <= small.count_ones() {
                continue;
            }
            let augmentable = mask_elements(big & !small).into_iter().any(|x| table[(small | (1 << x)) as usize]);
            if !augmentable {
                return Ok(Err(format!("exchange fails for {:?} and {:?}", mask_elements(small), mask_elements(big))));
            }
        }
    }
    Ok(Ok(()))
}

/// A ground-set bijection `source element -> target element`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    map: Vec<usize>,
}

impl IsoWitness {
    /// Fails unless `map` is a permutation of `0..map.len()`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &t in &map {
            if t >= map.len() || seen[t] {
                return Err(Error::input("witness is not a bijection"));
            }
            seen[t] = true;
        }
        Ok(IsoWitness { map })
    }

    pub fn identity(m: usize) -> Self {
        IsoWitness { map: (0..m).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        IsoWitness { map: inv }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &IsoWitness) -> Self {
        IsoWitness { map: self.map.iter().map(|&t| other.map[t]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// Circuit preservation: maps `source` onto `target` exactly.
    pub fn validates(&self, source: &CircuitFamily, target: &CircuitFamily) -> bool {
        if source.ground_size() != self.len() || target.ground_size() != self.len() || source.len() != target.len() {
            return false;
        }
        source.sets().iter().all(|c| target.contains(&image(c, &self.map)))
    }
}

impl IsoWitness {
    /// Parses `perm <m>` followed by the `m` images, whitespace separated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("perm") {
            return Err(Error::parse(hline, "expected header `perm <m>`"));
        }
        let m: usize =
            words.next().and_then(|w| w.parse().ok()).ok_or_else(|| Error::parse(hline, "bad permutation length"))?;
        let mut map = Vec::with_capacity(m);
        let mut last = hline;
        for (no, line) in lines {
            map.extend(numbers::<usize>(no, line, "edge indices")?);
            last = no;
        }
        if map.len() != m {
            return Err(Error::parse(last, format!("declared {m} images, found {}", map.len())));
        }
        IsoWitness::new(map).map_err(|e| Error::parse(last, e.to_string()))
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "perm {}", self.map.len())?;
        let words: Vec<String> = self.map.iter().map(|t| t.to_string()).collect();
        writeln!(f, "{}", words.join(" "))
    }
}

fn circuit_masks(family: &CircuitFamily) -> Vec<u64> {
    family.sets().iter().map(|c| subset::elements_mask(c)).collect()
}

fn permuted_mask(mask: u64, perm: &[usize]) -> u64 {
    mask_elements(mask).into_iter().fold(0, |acc, e| acc | (1 << perm[e]))
}

/// Lexicographically least circuit-preserving bijection, by factorial search.
pub fn brute_force_iso<A, B>(left: &A, right: &B) -> Result<Option<IsoWitness>>
where
    A: MatroidOracle + ?Sized,
    B: MatroidOracle + ?Sized,
{
    brute_force_iso_colored(left, None, right, None)
}

/// As [`brute_force_iso`], restricted to bijections preserving element colors.
pub fn brute_force_iso_colored<A, B>(
    left: &A,
    left_colors: Option<&[u32]>,
    right: &B,
    right_colors: Option<&[u32]>,
) -> Result<Option<IsoWitness>>
where
    A: MatroidOracle + ?Sized,
    B: MatroidOracle + ?Sized,
{
    let m = left.ground_size();
    let bound = EnumBounds::default().factorial;
    if m != right.ground_size() {
        return Ok(None);
    }
    ensure_enumerable("factorial isomorphism search", m, bound)?;
    let c1 = circuits(left)?;
    let c2 = circuits(right)?;
    let found = search_permutations(&c1, left_colors, &c2, right_colors).next();
    Ok(found)
}

/// All automorphisms of `matroid` by factorial search, in lexicographic order.
pub fn brute_force_automorphisms<M: MatroidOracle + ?Sized>(matroid: &M) -> Result<Vec<IsoWitness>> {
    let m = matroid.ground_size();
    ensure_enumerable("factorial automorphism search", m, EnumBounds::default().factorial)?;
    let c = circuits(matroid)?;
    Ok(search_permutations(&c, None, &c, None).collect())
}

fn search_permutations<'a>(
    c1: &'a CircuitFamily,
    col1: Option<&'a [u32]>,
    c2: &'a CircuitFamily,
    col2: Option<&'a [u32]>,
) -> impl Iterator<Item = IsoWitness> + 'a {
    let m = c1.ground_size();
    let profiles_match = c1.size_profile() == c2.size_profile();
    let src = circuit_masks(c1);
    let dst: HashSet<u64> = circuit_masks(c2).into_iter().collect();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut done = !profiles_match;
    std::iter::from_fn(move || {
        while !done {
            let ok = match (col1, col2) {
                (Some(a), Some(b)) => (0..m).all(|i| a[i] == b[perm[i]]),
                (None, None) => true,
                (Some(a), None) => a.iter().all(|&x| x == a[0]),
                (None, Some(b)) => b.iter().all(|&x| x == b[0]),
            } && src.iter().all(|&c| dst.contains(&permuted_mask(c, &perm)));
            let found = ok.then(|| IsoWitness { map: perm.clone() });
            done = !next_permutation(&mut perm);
            if found.is_some() {
                return found;
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// U_{k,m} straight from the definition.
    struct Uniform(usize, usize);

    impl MatroidOracle for Uniform {
        fn ground_size(&self) -> usize {
            self.1
        }
        fn is_independent(&self, set: &[usize]) -> bool {
            set.len() <= self.0
        }
    }

    /// Independent iff no two chosen elements share a class.
    struct Partition(Vec<usize>);

    impl MatroidOracle for Partition {
        fn ground_size(&self) -> usize {
            self.0.len()
        }
        fn is_independent(&self, set: &[usize]) -> bool {
            let mut seen = HashSet::new();
            set.iter().all(|&e| seen.insert(self.0[e]))
        }
    }

    #[test]
    fn rank_of_empty_set_is_zero() {
        assert_eq!(rank(&Uniform(2, 4), &[]).unwrap(), 0);
        assert_eq!(rank(&Uniform(2, 4), &[0, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_out_of_range() {
        assert!(matches!(rank(&Uniform(2, 4), &[4]), Err(Error::Input(_))));
        assert!(closure(&Uniform(2, 4), &[9]).is_err());
    }

    #[test]
    fn closure_of_singleton_in_u24() {
        assert_eq!(closure(&Uniform(2, 4), &[0]).unwrap(), vec![0]);
        assert_eq!(closure(&Uniform(2, 4), &[0, 3]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn free_matroid_has_no_circuits() {
        assert!(circuits(&Uniform(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn hyperplanes_of_u24_are_singletons() {
        let h = hyperplanes(&Uniform(2, 4)).unwrap();
        assert_eq!(h, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(hyperplanes(&Uniform(0, 3)).unwrap().is_empty());
    }

    #[test]
    fn uniform_detection() {
        assert!(is_uniform(&Uniform(0, 5), 0).unwrap());
        assert!(is_uniform(&Uniform(2, 5), 2).unwrap());
        assert!(!is_uniform(&Uniform(2, 5), 3).unwrap());
        assert!(!is_uniform(&Partition(vec![0, 0, 1]), 2).unwrap());
    }

    #[test]
    fn capacity_errors() {
        let big = Uniform(2, 17);
        assert!(matches!(circuits(&big), Err(Error::Capacity { .. })));
        let nine = Uniform(2, 9);
        assert!(matches!(brute_force_iso(&nine, &nine), Err(Error::Capacity { .. })));
    }

    #[test]
    fn empty_ground_set_is_legal() {
        let z = Uniform(0, 0);
        assert_eq!(matroid_rank(&z), 0);
        assert!(circuits(&z).unwrap().is_empty());
        assert!(hyperplanes(&z).unwrap().is_empty());
        assert!(brute_force_iso(&z, &z).unwrap().is_some());
    }

    #[test]
    fn direct_sum_of_coloops_is_free() {
        let s = direct_sum(Uniform(1, 1), Uniform(1, 1));
        assert!(circuits(&s).unwrap().is_empty());
        assert_eq!(matroid_rank(&s), 2);
    }

    #[test]
    fn partition_matroid_passes_axioms_but_broken_oracle_fails() {
        assert!(check_axioms(&Partition(vec![0, 0, 1, 2, 2])).unwrap().is_ok());
        struct Broken;
        impl MatroidOracle for Broken {
            fn ground_size(&self) -> usize {
                3
            }
            // {0,1} independent, {2} independent, but neither {0,2} nor {1,2}.
            fn is_independent(&self, set: &[usize]) -> bool {
                set.len() <= 1 || (set.len() == 2 && !set.contains(&2))
            }
        }
        assert!(check_axioms(&Broken).unwrap().is_err());
    }

    #[test]
    fn brute_force_prefers_identity_and_is_lexicographically_least() {
        let p = Partition(vec![0, 0, 1, 1]);
        let w = brute_force_iso(&p, &p).unwrap().unwrap();
        assert!(w.is_identity());
        let q = Partition(vec![0, 1, 0, 1]);
        let w = brute_force_iso(&p, &q).unwrap().unwrap();
        assert_eq!(w.as_slice(), &[0, 2, 1, 3]);
    }

    #[test]
    fn colored_brute_force_respects_colors() {
        let u = Uniform(1, 2);
        let w = brute_force_iso_colored(&u, Some(&[1, 2]), &u, Some(&[2, 1])).unwrap().unwrap();
        assert_eq!(w.as_slice(), &[1, 0]);
        assert!(brute_force_iso_colored(&u, Some(&[1, 1]), &u, Some(&[2, 1])).unwrap().is_none());
    }

    #[test]
    fn automorphisms_of_uniform_matroid() {
        assert_eq!(brute_force_automorphisms(&Uniform(2, 4)).unwrap().len(), 24);
        assert_eq!(brute_force_automorphisms(&Partition(vec![0, 0, 1])).unwrap().len(), 2);
    }

    #[test]
    fn witness_rejects_non_bijection() {
        assert!(IsoWitness::new(vec![0, 0]).is_err());
        let w = IsoWitness::new(vec![2, 0, 1]).unwrap();
        assert!(w.then(&w.inverse()).is_identity());
    }
}
