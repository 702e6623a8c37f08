use super::{greedy_basis, matroid_rank, subset, MatroidOracle};
use crate::error::{Error, Result};
use std::fmt;

/// A matroid given by its maximal independent sets. A set is independent
/// iff it is contained in one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListMatroid {
    ground: usize,
    bases: Vec<Vec<usize>>,
}

impl ListMatroid {
    pub fn new(ground: usize, mut bases: Vec<Vec<usize>>) -> Result<Self> {
        for b in &bases {
            if let Some(&e) = b.iter().find(|&&e| e >= ground) {
                return Err(Error::input(format!("base element {e} outside ground set of size {ground}")));
            }
        }
        if bases.is_empty() {
            bases.push(Vec::new());
        }
        subset::canonical_order(&mut bases);
        Ok(ListMatroid { ground, bases })
    }

    /// Enumerates the bases of any oracle with at most 63 elements.
    pub fn from_oracle<M: MatroidOracle + ?Sized>(matroid: &M) -> Result<Self> {
        let m = matroid.ground_size();
        if m > 63 {
            return Err(Error::Capacity { what: "basis enumeration", size: m, bound: 63 });
        }
        let r = matroid_rank(matroid);
        let mut bases = Vec::new();
        for mask in 0..(1u64 << m) {
            if mask.count_ones() as usize == r {
                let elems = subset::mask_elements(mask);
                if greedy_basis(matroid, &elems).len() == r {
                    bases.push(elems);
                }
            }
        }
        ListMatroid::new(m, bases)
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    /// Parses `matroid <m>` followed by one base per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("matroid") {
            return Err(Error::parse(hline, "expected header `matroid <m>`"));
        }
        let m: usize =
            words.next().and_then(|w| w.parse().ok()).ok_or_else(|| Error::parse(hline, "bad ground size"))?;
        let mut bases = Vec::new();
        for (no, line) in lines {
            let base: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(no, "expected element indices"))?;
            if let Some(&e) = base.iter().find(|&&e| e >= m) {
                return Err(Error::parse(no, format!("element {e} out of range")));
            }
            bases.push(base);
        }
        ListMatroid::new(m, bases)
    }
}

impl MatroidOracle for ListMatroid {
    fn ground_size(&self) -> usize {
        self.ground
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.bases.iter().any(|b| set.iter().all(|e| b.binary_search(e).is_ok()))
    }
}

impl fmt::Display for ListMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matroid {}", self.ground)?;
        for b in &self.bases {
            let words: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", words.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_axioms, circuits};

    #[test]
    fn u23_from_bases() {
        let m = ListMatroid::parse("matroid 3\n0 1\n0 2\n1 2\n").unwrap();
        assert!(m.is_independent(&[2, 0]));
        assert!(!m.is_independent(&[0, 1, 2]));
        assert_eq!(circuits(&m).unwrap().sets(), &[vec![0, 1, 2]]);
        assert!(check_axioms(&m).unwrap().is_ok());
    }

    #[test]
    fn display_round_trips() {
        let m = ListMatroid::new(4, vec![vec![3, 1], vec![0, 1]]).unwrap();
        assert_eq!(ListMatroid::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = ListMatroid::parse("matroid 2\n0 1\n0 x\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "expected element indices"));
        let err = ListMatroid::parse("matroid 2\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rank_zero_matroid_has_empty_base() {
        let m = ListMatroid::parse("matroid 3\n").unwrap();
        assert!(m.is_independent(&[]));
        assert!(!m.is_independent(&[1]));
    }
}
