use std::collections::HashSet;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

pub type Int = i128;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[Int]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Usage(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Usage("dimension mismatch in product".into()));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.checked_mul(other[(k, j)]).ok_or(Error::Overflow("matrix product"))?;
                    out[(i, j)] = out[(i, j)]
                        .checked_add(t)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.rows {
            return Err(Error::Usage("vector length mismatch".into()));
        }
        let mut out: Vec<Int> = vec![0; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let t = x.checked_mul(self[(i, j)]).ok_or(Error::Overflow("vector product"))?;
                *o = o.checked_add(t).ok_or(Error::Overflow("vector product"))?;
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: Int) -> Result<()> {
        for j in 0..self.cols {
            let t = k
                .checked_mul(self.data[src * self.cols + j])
                .and_then(|t| t.checked_add(self.data[dst * self.cols + j]))
                .ok_or(Error::Overflow("row operation"))?;
            self.data[dst * self.cols + j] = t;
        }
        Ok(())
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: Int) -> Result<()> {
        for i in 0..self.rows {
            let t = k
                .checked_mul(self.data[i * self.cols + src])
                .and_then(|t| t.checked_add(self.data[i * self.cols + dst]))
                .ok_or(Error::Overflow("column operation"))?;
            self.data[i * self.cols + dst] = t;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A sparse row: `(column, coefficient)` pairs, sorted by column, no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseRow(Vec<(u32, Int)>);

impl SparseRow {
    /// Builds a row from unsorted entries; repeated columns are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, Int)>>(entries: I) -> Self {
        let mut v: Vec<(u32, Int)> = entries.into_iter().map(|(c, x)| (c as u32, x)).collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, Int)> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += x,
                _ => out.push((c, x)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseRow(out)
    }

    pub fn entries(&self) -> &[(u32, Int)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign-normalized copy, so `r` and `-r` compare equal.
    pub fn normalized(&self) -> SparseRow {
        match self.0.first() {
            Some(&(_, x)) if x < 0 => SparseRow(self.0.iter().map(|&(c, x)| (c, -x)).collect()),
            _ => self.clone(),
        }
    }
}

/// Relation rows over a fixed number of generators.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, row: SparseRow) {
        debug_assert!(row.0.iter().all(|e| (e.0 as usize) < self.cols));
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Removes rows equal up to sign, keeping first occurrences.
    pub fn dedup(&mut self) {
        let mut seen = HashSet::with_capacity(self.rows.len());
        self.rows.retain(|r| seen.insert(r.normalized()));
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, x) in r.entries() {
                m[(i, c as usize)] = x;
            }
        }
        m
    }
}
