//! Linear matroids: column matroids of matrices over GF(p).

mod gadget;
mod stk;

pub use gadget::{color_gadget_linear, ColumnColoring, ColumnRole};
pub use stk::{
    basis_incidence_graph, gi_to_lmib, lmib_to_gi, pad_with_cliques, stk_construct, stk_field_bound, stk_min_field,
};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matroid::{CircuitFamily, MatroidOracle};
use crate::text::content_lines;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    /// Builds a matrix from signed row entries, reducing them mod p.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::input(format!("column {j} has wrong length")));
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % field.modulus());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.field.modulus();
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let columns: Vec<Vec<u64>> = cols.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(self.field, self.rows, &columns).expect("columns share length")
    }

    /// Rank of the selected columns.
    pub fn rank_of_columns(&self, cols: &[usize]) -> Result<usize> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::input(format!("column {c} out of range for {} columns", self.cols)));
        }
        let vectors: Vec<Vec<u64>> = cols.iter().map(|&c| self.column(c)).collect();
        Ok(vector_rank(self.field, vectors))
    }

    pub fn columns_independent(&self, cols: &[usize]) -> Result<bool> {
        Ok(self.rank_of_columns(cols)? == cols.len())
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.cols).collect();
        self.rank_of_columns(&all).expect("indices in range")
    }

    /// Reduced row echelon form with zero rows dropped. The column matroid is unchanged.
    pub fn row_reduced(&self) -> Self {
        let f = self.field;
        let mut a = self.clone();
        let mut pivot_row = 0;
        for c in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            let Some(r) = (pivot_row..a.rows).find(|&r| a.get(r, c) != 0) else {
                continue;
            };
            a.swap_rows(r, pivot_row);
            let inv = f.inv(a.get(pivot_row, c));
            for j in 0..a.cols {
                let v = f.mul(a.get(pivot_row, j), inv);
                a.set(pivot_row, j, v);
            }
            for r in 0..a.rows {
                let factor = a.get(r, c);
                if r != pivot_row && factor != 0 {
                    for j in 0..a.cols {
                        let v = f.sub(a.get(r, j), f.mul(factor, a.get(pivot_row, j)));
                        a.set(r, j, v);
                    }
                }
            }
            pivot_row += 1;
        }
        a.data.truncate(pivot_row * a.cols);
        a.rows = pivot_row;
        a
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of the right kernel `{x : Ax = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let r = self.row_reduced();
        let mut pivots = Vec::new();
        for i in 0..r.rows {
            pivots.push((0..r.cols).find(|&c| r.get(i, c) != 0).expect("nonzero row"));
        }
        let mut basis = Vec::new();
        for free in (0..r.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0; r.cols];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(i, free));
            }
            basis.push(x);
        }
        basis
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c) == 0)
    }

    /// First pair of distinct columns that are nonzero scalar multiples of each other.
    pub fn parallel_pair(&self) -> Option<(usize, usize)> {
        let normalized: Vec<Option<Vec<u64>>> =
            (0..self.cols).map(|c| normalize_vector(self.field, self.column(c))).collect();
        for a in 0..self.cols {
            for b in a + 1..self.cols {
                if normalized[a].is_some() && normalized[a] == normalized[b] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Parses `matrix <rows> <cols> <p>` followed by one line per row.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.len() != 4 || words[0] != "matrix" {
            return Err(Error::parse(hline, "expected header `matrix <rows> <cols> <p>`"));
        }
        let nums: Vec<u64> = words[1..]
            .iter()
            .map(|w| w.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hline, "header values must be non-negative integers"))?;
        let (rows, cols) = (nums[0] as usize, nums[1] as usize);
        let field = PrimeField::new(nums[2]).map_err(|e| Error::parse(hline, e.to_string()))?;
        let mut data = Vec::with_capacity(rows);
        for (no, line) in lines {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|w| w.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(no, "expected integers"))?;
            if row.len() != cols {
                return Err(Error::parse(no, format!("expected {cols} entries, found {}", row.len())));
            }
            if data.len() == rows {
                return Err(Error::parse(no, "more rows than declared"));
            }
            data.push(row);
        }
        if data.len() != rows {
            return Err(Error::parse(hline, format!("declared {rows} rows, found {}", data.len())));
        }
        Self::from_rows(field, cols, &data)
    }
}

/// Scales a vector so its first nonzero entry is 1; `None` for the zero vector.
fn normalize_vector(f: PrimeField, mut v: Vec<u64>) -> Option<Vec<u64>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead);
    for x in &mut v {
        *x = f.mul(*x, inv);
    }
    Some(v)
}

/// Rank of a list of equal-length vectors by forward elimination.
pub(crate) fn vector_rank(f: PrimeField, mut vectors: Vec<Vec<u64>>) -> usize {
    let len = vectors.first().map_or(0, Vec::len);
    let mut rank = 0;
    for pos in 0..len {
        let Some(i) = (rank..vectors.len()).find(|&i| vectors[i][pos] != 0) else {
            continue;
        };
        vectors.swap(rank, i);
        let inv = f.inv(vectors[rank][pos]);
        let (head, tail) = vectors.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail {
            let factor = f.mul(row[pos], inv);
            if factor != 0 {
                for k in pos..len {
                    row[k] = f.sub(row[k], f.mul(factor, pivot[k]));
                }
            }
        }
        rank += 1;
        if rank == vectors.len() {
            break;
        }
    }
    rank
}

impl MatroidOracle for PrimeFieldMatrix {
    fn ground_size(&self) -> usize {
        self.cols
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.columns_independent(set).unwrap_or(false)
    }
}

impl fmt::Display for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matrix {} {} {}", self.rows, self.cols, self.field.modulus())?;
        for r in 0..self.rows {
            let words: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", words.join(" "))?;
        }
        Ok(())
    }
}

/// Vandermonde representation of U_{k,m}: column i is `(1, a, a^2, ..., a^(k-1))` with `a = i+1`.
pub fn uniform_representation(k: usize, m: usize, field: PrimeField) -> Result<PrimeFieldMatrix> {
    if field.modulus() <= m as u64 {
        return Err(Error::precondition(format!(
            "field of size {} too small for {m} distinct evaluation points",
            field.modulus()
        )));
    }
    let mut a = PrimeFieldMatrix::zeros(field, k, m);
    for c in 0..m {
        for r in 0..k {
            a.set(r, c, field.pow(c as u64 + 1, r as u64));
        }
    }
    Ok(a)
}

/// Circuits of the column matroid via its kernel, for grounds beyond subset enumeration.
///
/// Each circuit is the support of a kernel vector vanishing on a set of
/// `d-1` kernel coordinates of full rank, where `d` is the nullity.
pub fn linear_circuits(a: &PrimeFieldMatrix, max_candidates: usize) -> Result<CircuitFamily> {
    let f = a.field;
    let m = a.cols;
    let kernel = a.kernel();
    let d = kernel.len();
    if d == 0 {
        return Ok(CircuitFamily::new(m, Vec::new()));
    }
    let candidates = binomial(m, d - 1);
    if candidates > max_candidates {
        return Err(Error::Capacity { what: "kernel circuit enumeration", size: candidates, bound: max_candidates });
    }
    // Column vectors of the d x m kernel matrix.
    let kcol = |c: usize| -> Vec<u64> { kernel.iter().map(|row| row[c]).collect() };
    let mut found = std::collections::BTreeSet::new();
    let mut zeros: Vec<usize> = (0..d - 1).collect();
    loop {
        let block = PrimeFieldMatrix::from_columns(f, d, &zeros.iter().map(|&c| kcol(c)).collect::<Vec<_>>())
            .expect("equal lengths");
        if d == 1 || block.rank() == d - 1 {
            // Coefficients c with c^T K_Z = 0: the left kernel of the d x (d-1) block.
            let coeffs = transpose(&block).kernel();
            let c = &coeffs[0];
            let support: Vec<usize> =
                (0..m).filter(|&e| (0..d).fold(0, |acc, i| f.add(acc, f.mul(c[i], kernel[i][e]))) != 0).collect();
            found.insert(support);
        }
        if !next_combination(&mut zeros, m) {
            break;
        }
    }
    Ok(CircuitFamily::new(m, found.into_iter().collect()))
}

fn transpose(a: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let mut t = PrimeFieldMatrix::zeros(a.field, a.cols, a.rows);
    for r in 0..a.rows {
        for c in 0..a.cols {
            t.set(c, r, a.get(r, c));
        }
    }
    t
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Advances a sorted k-combination of `0..n`; false once exhausted.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
