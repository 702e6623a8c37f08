//! Bitmask helpers for exhaustive subset enumeration.

/// Elements of `mask` in increasing order.
pub fn mask_elements(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out.push(i);
        rest &= rest - 1;
    }
    out
}

pub fn elements_mask(elems: &[usize]) -> u64 {
    elems.iter().fold(0u64, |acc, &e| acc | (1u64 << e))
}

/// Sort a set family by size, then lexicographically; dedupe.
pub fn canonical_order(family: &mut Vec<Vec<usize>>) {
    for s in family.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    family.dedup();
}

/// Image of a sorted set under `map`, re-sorted.
pub fn image(set: &[usize], map: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&e| map[e]).collect();
    out.sort_unstable();
    out
}

/// All masks of `m` bits ordered by popcount, then numerically.
pub fn masks_by_size(m: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..(1u64 << m)).collect();
    all.sort_by_key(|&s| (s.count_ones(), s));
    all
}

/// Step `perm` to its lexicographic successor. Returns false after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_enumerate_factorial_count() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![3, 2, 1, 0]);
    }

    #[test]
    fn canonical_order_sorts_by_size_then_lex() {
        let mut f = vec![vec![2, 1, 0], vec![3, 1], vec![0, 2], vec![1, 3]];
        canonical_order(&mut f);
        assert_eq!(f, vec![vec![0, 2], vec![1, 3], vec![0, 1, 2]]);
    }

    #[test]
    fn mask_round_trip() {
        let v = vec![0, 3, 5];
        assert_eq!(mask_elements(elements_mask(&v)), v);
    }
}
