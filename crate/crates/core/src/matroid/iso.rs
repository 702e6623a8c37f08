//! Exact isomorphism of explicit circuit families (hypergraph isomorphism).
//!
//! Used where factorial search is out of reach: elements are first split
//! by an iterated circuit-incidence signature, then matched by backtracking
//! with both-direction circuit checks at every step.

use super::{CircuitFamily, IsoWitness};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashSet};

const MAX_GROUND: usize = 128;

fn mask(set: &[usize]) -> u128 {
    set.iter().fold(0u128, |acc, &e| acc | (1u128 << e))
}

pub fn family_iso(left: &CircuitFamily, right: &CircuitFamily) -> Result<Option<IsoWitness>> {
    family_iso_colored(left, None, right, None)
}

pub fn family_iso_colored(
    left: &CircuitFamily,
    left_colors: Option<&[u32]>,
    right: &CircuitFamily,
    right_colors: Option<&[u32]>,
) -> Result<Option<IsoWitness>> {
    let m = left.ground_size();
    if m > MAX_GROUND {
        return Err(Error::Capacity { what: "circuit-family isomorphism", size: m, bound: MAX_GROUND });
    }
    if right.ground_size() != m || left.len() != right.len() || left.size_profile() != right.size_profile() {
        return Ok(None);
    }
    let zeros = vec![0u32; m];
    let ca = left_colors.unwrap_or(&zeros);
    let cb = right_colors.unwrap_or(&zeros);
    if ca.len() != m || cb.len() != m {
        return Err(Error::input("color array length differs from ground size"));
    }

    let (class_a, class_b) = refine(left, ca, right, cb);
    let hist = |cls: &[usize]| {
        let mut h = BTreeMap::new();
        for &c in cls {
            *h.entry(c).or_insert(0usize) += 1;
        }
        h
    };
    let hist_a = hist(&class_a);
    if hist_a != hist(&class_b) {
        return Ok(None);
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| (hist_a[&class_a[e]], class_a[e], e));
    let mut position = vec![0; m];
    for (i, &e) in order.iter().enumerate() {
        position[e] = i;
    }
    // Circuits of the left family, bucketed by the step at which they become fully mapped.
    let mut closing: Vec<Vec<&[usize]>> = vec![Vec::new(); m];
    for c in left.sets() {
        if let Some(last) = c.iter().map(|&e| position[e]).max() {
            closing[last].push(c);
        }
    }
    let mut incident_b: Vec<Vec<&[usize]>> = vec![Vec::new(); m];
    for c in right.sets() {
        for &e in c {
            incident_b[e].push(c);
        }
    }
    let mut search = Search {
        order,
        class_a,
        class_b,
        closing,
        incident_b,
        set_a: left.sets().iter().map(|c| mask(c)).collect(),
        set_b: right.sets().iter().map(|c| mask(c)).collect(),
        forward: vec![usize::MAX; m],
        backward: vec![usize::MAX; m],
    };
    if search.extend(0) {
        Ok(Some(IsoWitness::new(search.forward)?))
    } else {
        Ok(None)
    }
}

/// Joint class labels for both grounds, stable under circuit incidence.
fn refine(a: &CircuitFamily, ca: &[u32], b: &CircuitFamily, cb: &[u32]) -> (Vec<usize>, Vec<usize>) {
    let relabel = |keys_a: &[Vec<u64>], keys_b: &[Vec<u64>]| {
        let mut all: Vec<&Vec<u64>> = keys_a.iter().chain(keys_b.iter()).collect();
        all.sort();
        all.dedup();
        let id = |k: &Vec<u64>| all.binary_search(&k).unwrap();
        (keys_a.iter().map(id).collect::<Vec<_>>(), keys_b.iter().map(id).collect::<Vec<_>>(), all.len())
    };
    let init = |c: &[u32]| c.iter().map(|&x| vec![x as u64]).collect::<Vec<_>>();
    let (mut la, mut lb, mut count) = relabel(&init(ca), &init(cb));
    loop {
        let sig = |fam: &CircuitFamily, lab: &[usize]| -> Vec<Vec<u64>> {
            let mut per: Vec<Vec<Vec<u64>>> = vec![Vec::new(); lab.len()];
            for c in fam.sets() {
                let mut classes: Vec<u64> = c.iter().map(|&e| lab[e] as u64).collect();
                classes.sort_unstable();
                let mut entry = vec![c.len() as u64];
                entry.extend(classes);
                for &e in c {
                    per[e].push(entry.clone());
                }
            }
            per.into_iter()
                .enumerate()
                .map(|(e, mut entries)| {
                    entries.sort();
                    let mut key = vec![lab[e] as u64, entries.len() as u64];
                    for en in entries {
                        key.push(u64::MAX);
                        key.extend(en);
                    }
                    key
                })
                .collect()
        };
        let (na, nb, ncount) = relabel(&sig(a, &la), &sig(b, &lb));
        la = na;
        lb = nb;
        if ncount == count {
            return (la, lb);
        }
        count = ncount;
    }
}

struct Search<'a> {
    order: Vec<usize>,
    class_a: Vec<usize>,
    class_b: Vec<usize>,
    closing: Vec<Vec<&'a [usize]>>,
    incident_b: Vec<Vec<&'a [usize]>>,
    set_a: HashSet<u128>,
    set_b: HashSet<u128>,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let e = self.order[step];
        for t in 0..self.backward.len() {
            if self.backward[t] != usize::MAX || self.class_b[t] != self.class_a[e] {
                continue;
            }
            self.forward[e] = t;
            self.backward[t] = e;
            if self.consistent(step, t) && self.extend(step + 1) {
                return true;
            }
            self.forward[e] = usize::MAX;
            self.backward[t] = usize::MAX;
        }
        false
    }

    fn consistent(&self, step: usize, target: usize) -> bool {
        let fwd_ok = self.closing[step].iter().all(|c| {
            let img = c.iter().fold(0u128, |acc, &x| acc | (1u128 << self.forward[x]));
            self.set_b.contains(&img)
        });
        fwd_ok
            && self.incident_b[target].iter().all(|c| {
                if c.iter().any(|&x| self.backward[x] == usize::MAX) {
                    return true;
                }
                let pre = c.iter().fold(0u128, |acc, &x| acc | (1u128 << self.backward[x]));
                self.set_a.contains(&pre)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(m: usize, sets: &[&[usize]]) -> CircuitFamily {
        CircuitFamily::new(m, sets.iter().map(|s| s.to_vec()).collect())
    }

    #[test]
    fn relabeled_family_is_found() {
        let a = fam(5, &[&[0, 1, 2], &[2, 3, 4], &[0, 1, 3, 4]]);
        let b = fam(5, &[&[4, 3, 0], &[0, 1, 2], &[1, 2, 3, 4]]);
        let w = family_iso(&a, &b).unwrap().unwrap();
        assert!(w.validates(&a, &b));
    }

    #[test]
    fn different_structure_is_rejected() {
        let a = fam(4, &[&[0, 1], &[2, 3]]);
        let b = fam(4, &[&[0, 1], &[1, 2]]);
        assert!(family_iso(&a, &b).unwrap().is_none());
    }

    #[test]
    fn colors_restrict_matching() {
        let a = fam(3, &[&[0, 1]]);
        let b = fam(3, &[&[1, 2]]);
        assert!(family_iso_colored(&a, Some(&[1, 1, 2]), &b, Some(&[2, 1, 1])).unwrap().is_some());
        assert!(family_iso_colored(&a, Some(&[1, 2, 2]), &b, Some(&[2, 1, 1])).unwrap().is_none());
    }
}
