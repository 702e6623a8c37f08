//! Encoding column colours into the matroid structure itself.

use super::PrimeFieldMatrix;
use crate::error::{Error, Result};
use crate::text::content_lines;
use std::collections::BTreeSet;
use std::fmt;

/// Colour class per column. Label 0 means uncoloured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnColoring {
    labels: Vec<u32>,
}

impl ColumnColoring {
    pub fn new(labels: Vec<u32>) -> Self {
        ColumnColoring { labels }
    }

    pub fn uncolored(m: usize) -> Self {
        ColumnColoring { labels: vec![0; m] }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().filter(|&&c| c > 0).collect::<BTreeSet<_>>().len()
    }

    /// Renumbers the positive labels of both colourings to `1..k` using one shared order,
    /// so colour-preserving maps between the two are unaffected.
    pub fn normalize_pair(a: &Self, b: &Self) -> (Self, Self) {
        let used: Vec<u32> =
            a.labels.iter().chain(&b.labels).copied().filter(|&c| c > 0).collect::<BTreeSet<_>>().into_iter().collect();
        let map = |c: &Self| Self {
            labels: c
                .labels
                .iter()
                .map(|&x| if x == 0 { 0 } else { used.binary_search(&x).unwrap() as u32 + 1 })
                .collect(),
        };
        (map(a), map(b))
    }

    /// Parses `colors <m>` followed by one label per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("colors") {
            return Err(Error::parse(hline, "expected header `colors <m>`"));
        }
        let m: usize =
            words.next().and_then(|w| w.parse().ok()).ok_or_else(|| Error::parse(hline, "bad column count"))?;
        let mut labels = Vec::with_capacity(m);
        for (no, line) in lines {
            let label = line.parse::<u32>().map_err(|_| Error::parse(no, "expected a non-negative class label"))?;
            labels.push(label);
        }
        if labels.len() != m {
            return Err(Error::parse(hline, format!("declared {m} labels, found {}", labels.len())));
        }
        Ok(ColumnColoring { labels })
    }
}

impl fmt::Display for ColumnColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "colors {}", self.labels.len())?;
        for l in &self.labels {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Where an output column of the gadget came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnRole {
    Original(usize),
    Gadget { column: usize, index: usize },
}

/// Replaces colours by structure: every column `e` of class `i` gets `l = m + m' + i`
/// companion columns (`m' = m + 1`) spanning fresh coordinates, so that `e` together with
/// its companions forms a circuit of length `l + 1` and no other long circuits meet them.
pub fn color_gadget_linear(
    a: &PrimeFieldMatrix,
    coloring: &ColumnColoring,
) -> Result<(PrimeFieldMatrix, Vec<ColumnRole>)> {
    let m = a.cols();
    if coloring.len() != m {
        return Err(Error::input(format!("colouring has {} labels for {m} columns", coloring.len())));
    }
    let roles_plain: Vec<ColumnRole> = (0..m).map(ColumnRole::Original).collect();
    if coloring.class_count() == 0 {
        return Ok((a.clone(), roles_plain));
    }
    if let Some(c) = (0..m).find(|&c| a.is_zero_column(c)) {
        return Err(Error::precondition(format!("column {c} is zero")));
    }
    if let Some((x, y)) = a.parallel_pair() {
        return Err(Error::precondition(format!("columns {x} and {y} are scalar multiples of each other")));
    }

    let f = a.field();
    let reduced = a.row_reduced();
    let r = reduced.rows();
    let m_prime = m + 1;
    let lengths: Vec<usize> =
        coloring.labels().iter().map(|&c| if c == 0 { 0 } else { m + m_prime + c as usize }).collect();
    let extra: usize = lengths.iter().sum();
    let mut out = PrimeFieldMatrix::zeros(f, r + extra, m + extra);
    let mut roles = roles_plain;
    for c in 0..m {
        for row in 0..r {
            out.set(row, c, reduced.get(row, c));
        }
    }
    let mut offset = r;
    let mut col = m;
    for (e, &l) in lengths.iter().enumerate() {
        for j in 0..l {
            if j < r {
                out.set(j, col, reduced.get(j, e));
            }
            out.set(offset + j, col, 1);
            out.set(offset + (j + l - 1) % l, col, f.neg(1));
            roles.push(ColumnRole::Gadget { column: e, index: j });
            col += 1;
        }
        offset += l;
    }
    Ok((out, roles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linear::linear_circuits;
    use crate::matroid::{brute_force_iso, brute_force_iso_colored, family_iso};

    fn gf5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn single_coloured_column_in_identity() {
        let a = PrimeFieldMatrix::from_rows(gf5(), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let (g, roles) = color_gadget_linear(&a, &ColumnColoring::new(vec![1, 0])).unwrap();
        let l = 2 + 3 + 1;
        assert_eq!(g.cols(), 2 + l);
        assert_eq!(g.rows(), 2 + l);
        let mut expected: Vec<usize> = vec![0];
        expected.extend(2..2 + l);
        let family = linear_circuits(&g, 1 << 20).unwrap();
        assert!(family.contains(&expected));
        assert_eq!(family.len(), 1);
        assert_eq!(roles[2], ColumnRole::Gadget { column: 0, index: 0 });
    }

    #[test]
    fn empty_colouring_is_identity() {
        let a = PrimeFieldMatrix::from_rows(gf5(), 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let (g, _) = color_gadget_linear(&a, &ColumnColoring::uncolored(3)).unwrap();
        assert_eq!(g, a);
    }

    #[test]
    fn parallel_columns_rejected() {
        let a = PrimeFieldMatrix::from_rows(gf5(), 2, &[vec![1, 2], vec![1, 2]]).unwrap();
        assert!(matches!(color_gadget_linear(&a, &ColumnColoring::new(vec![1, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn single_class_preserves_verdicts_on_2x3() {
        let a = PrimeFieldMatrix::from_rows(gf5(), 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let b = PrimeFieldMatrix::from_rows(gf5(), 3, &[vec![1, 1, 0], vec![2, 0, 1]]).unwrap();
        let all = ColumnColoring::new(vec![1, 1, 1]);
        let plain = brute_force_iso(&a, &b).unwrap().is_some();
        let (ga, _) = color_gadget_linear(&a, &all).unwrap();
        let (gb, _) = color_gadget_linear(&b, &all).unwrap();
        let gadgeted = family_iso(&linear_circuits(&ga, 1 << 20).unwrap(), &linear_circuits(&gb, 1 << 20).unwrap())
            .unwrap()
            .is_some();
        assert_eq!(plain, gadgeted);
        assert!(plain);
        let colored = brute_force_iso_colored(&a, Some(&[1, 1, 2]), &b, Some(&[2, 1, 1])).unwrap();
        assert!(colored.is_some());
    }

    #[test]
    fn colourings_normalize_jointly_and_round_trip() {
        let a = ColumnColoring::new(vec![0, 7, 3]);
        let b = ColumnColoring::new(vec![3, 9, 0]);
        let (na, nb) = ColumnColoring::normalize_pair(&a, &b);
        assert_eq!(na.labels(), &[0, 2, 1]);
        assert_eq!(nb.labels(), &[1, 3, 0]);
        assert_eq!(ColumnColoring::parse(&a.to_string()).unwrap(), a);
    }
}
