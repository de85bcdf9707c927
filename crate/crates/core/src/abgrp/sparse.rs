//! Sparse elimination for large, very redundant relation systems.
//!
//! Rows are consumed one at a time. A row with a unit coefficient eliminates
//! that column: the column is rewritten as a combination of the remaining
//! free columns, and every stored rewrite mentioning it is updated so that
//! rewrites only ever reference free columns. Rows without a unit entry are
//! parked and folded into a small dense echelon form over the surviving
//! columns at the end.

use super::matrix::{Int, IntMatrix, SparseMatrix, SparseRow};
use crate::error::{Error, Result};
use crate::numth::ext_gcd;

type Terms = Vec<(u32, Int)>;

/// Rewrites of eliminated columns in terms of the surviving ones.
#[derive(Debug, Clone)]
pub struct Reducer {
    ncols: usize,
    rewrite: Vec<Option<Terms>>,
    free: Vec<u32>,
    // column -> position among free columns, or u32::MAX
    free_pos: Vec<u32>,
}

impl Reducer {
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn free_columns(&self) -> &[u32] {
        &self.free
    }

    /// Image of a full-length vector in free-column coordinates.
    pub fn reduce_dense(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.ncols {
            return Err(Error::Usage(format!(
                "vector has length {}, expected {}",
                v.len(),
                self.ncols
            )));
        }
        self.reduce_terms(v.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &x)| (c as u32, x)))
    }

    pub fn reduce_row(&self, row: &SparseRow) -> Result<Vec<Int>> {
        self.reduce_terms(row.entries().iter().copied())
    }

    fn reduce_terms<I: Iterator<Item = (u32, Int)>>(&self, terms: I) -> Result<Vec<Int>> {
        let mut out: Vec<Int> = vec![0; self.free.len()];
        for (c, x) in terms {
            match &self.rewrite[c as usize] {
                None => {
                    let p = self.free_pos[c as usize] as usize;
                    out[p] = out[p].checked_add(x).ok_or(Error::Overflow("reduction"))?;
                }
                Some(terms) => {
                    for &(c2, y) in terms {
                        let p = self.free_pos[c2 as usize] as usize;
                        out[p] = x
                            .checked_mul(y)
                            .and_then(|t| t.checked_add(out[p]))
                            .ok_or(Error::Overflow("reduction"))?;
                    }
                }
            }
        }
        Ok(out)
    }
}

struct Eliminator {
    ncols: usize,
    rewrite: Vec<Option<Terms>>,
    // free column -> eliminated columns whose rewrite may mention it (superset)
    users: Vec<Vec<u32>>,
    parked: Vec<Terms>,
    scratch: Vec<Int>,
    touched: Vec<u32>,
}

impl Eliminator {
    fn new(ncols: usize) -> Self {
        Eliminator {
            ncols,
            rewrite: vec![None; ncols],
            users: vec![Vec::new(); ncols],
            parked: Vec::new(),
            scratch: vec![0; ncols],
            touched: Vec::new(),
        }
    }

    fn accumulate(&mut self, c: u32, x: Int) -> Result<()> {
        let slot = &mut self.scratch[c as usize];
        if *slot == 0 {
            self.touched.push(c);
        }
        *slot = slot.checked_add(x).ok_or(Error::Overflow("sparse elimination"))?;
        Ok(())
    }

    fn substitute(&mut self, row: &[(u32, Int)]) -> Result<Terms> {
        for &(c, x) in row {
            if let Some(terms) = self.rewrite[c as usize].take() {
                for &(c2, y) in &terms {
                    let t = x.checked_mul(y).ok_or(Error::Overflow("sparse elimination"))?;
                    self.accumulate(c2, t)?;
                }
                self.rewrite[c as usize] = Some(terms);
            } else {
                self.accumulate(c, x)?;
            }
        }
        let mut out: Terms = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            let x = std::mem::take(&mut self.scratch[c as usize]);
            if x != 0 {
                out.push((c, x));
            }
        }
        self.touched.clear();
        out.sort_unstable_by_key(|e| e.0);
        Ok(out)
    }

    fn insert(&mut self, row: &[(u32, Int)]) -> Result<()> {
        let row = self.substitute(row)?;
        if row.is_empty() {
            return Ok(());
        }
        // unit pivot touching the fewest stored rewrites
        let pivot = row
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| (self.users[e.0 as usize].len(), e.0))
            .copied();
        let Some((pc, pv)) = pivot else {
            self.parked.push(row);
            return Ok(());
        };
        // pv * x_pc + sum = 0  =>  x_pc = -pv * sum
        let expr: Terms = row.iter().filter(|e| e.0 != pc).map(|&(c, x)| (c, -pv * x)).collect();

        let mut users = std::mem::take(&mut self.users[pc as usize]);
        users.sort_unstable();
        users.dedup();
        for e in users {
            let Some(old) = self.rewrite[e as usize].take() else {
                continue;
            };
            let Ok(at) = old.binary_search_by_key(&pc, |t| t.0) else {
                self.rewrite[e as usize] = Some(old);
                continue;
            };
            let k = old[at].1;
            let merged = merge(&old, at, k, &expr, |c| self.users[c as usize].push(e))?;
            self.rewrite[e as usize] = Some(merged);
        }
        for &(c, _) in &expr {
            self.users[c as usize].push(pc);
        }
        self.rewrite[pc as usize] = Some(expr);
        Ok(())
    }

    fn finish(self) -> (Reducer, Vec<Terms>) {
        let free: Vec<u32> = (0..self.ncols as u32)
            .filter(|&c| self.rewrite[c as usize].is_none())
            .collect();
        let mut free_pos = vec![u32::MAX; self.ncols];
        for (i, &c) in free.iter().enumerate() {
            free_pos[c as usize] = i as u32;
        }
        (
            Reducer {
                ncols: self.ncols,
                rewrite: self.rewrite,
                free,
                free_pos,
            },
            self.parked,
        )
    }
}

/// `old` without entry `skip`, plus `k * expr`; `on_new` sees columns that
/// were not present in `old`.
fn merge(
    old: &[(u32, Int)],
    skip: usize,
    k: Int,
    expr: &[(u32, Int)],
    mut on_new: impl FnMut(u32),
) -> Result<Terms> {
    let mut out = Vec::with_capacity(old.len() + expr.len());
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < expr.len() {
        if i == skip {
            i += 1;
            continue;
        }
        let take_old = j >= expr.len() || (i < old.len() && old[i].0 < expr[j].0);
        let take_new = i >= old.len() || (j < expr.len() && expr[j].0 < old[i].0);
        if take_old {
            out.push(old[i]);
            i += 1;
        } else if take_new {
            let t = k.checked_mul(expr[j].1).ok_or(Error::Overflow("sparse elimination"))?;
            on_new(expr[j].0);
            out.push((expr[j].0, t));
            j += 1;
        } else {
            let t = k
                .checked_mul(expr[j].1)
                .and_then(|t| t.checked_add(old[i].1))
                .ok_or(Error::Overflow("sparse elimination"))?;
            if t != 0 {
                out.push((old[i].0, t));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Row-style Hermite form over a fixed width, built incrementally.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    // pivot column -> row whose first nonzero entry is there (positive)
    pivots: Vec<Option<Vec<Int>>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            pivots: vec![None; width],
        }
    }

    pub fn insert(&mut self, mut row: Vec<Int>) -> Result<()> {
        debug_assert_eq!(row.len(), self.width);
        for col in 0..self.width {
            if row[col] == 0 {
                continue;
            }
            let Some(p) = self.pivots[col].take() else {
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                self.reduce_above(col, &mut row)?;
                self.pivots[col] = Some(row);
                self.reduce_others(col)?;
                return Ok(());
            };
            let (a, b) = (p[col], row[col]);
            let (g, x, y) = ext_gcd(a, b);
            let (pa, rb) = (a / g, b / g);
            let mut new_p = vec![0; self.width];
            let mut rest = vec![0; self.width];
            for j in col..self.width {
                new_p[j] = lin(x, p[j], y, row[j])?;
                rest[j] = lin(rb, p[j], -pa, row[j])?;
            }
            self.reduce_above(col, &mut new_p)?;
            self.pivots[col] = Some(new_p);
            self.reduce_others(col)?;
            row = rest;
        }
        Ok(())
    }

    /// Reduce entries of `row` right of `col` modulo later pivots.
    fn reduce_above(&self, col: usize, row: &mut [Int]) -> Result<()> {
        for j in col + 1..self.width {
            if let Some(p) = &self.pivots[j] {
                let q = row[j].div_euclid(p[j]);
                if q != 0 {
                    for t in j..self.width {
                        row[t] = lin(1, row[t], -q, p[t])?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduce earlier pivot rows modulo the new pivot at `col`.
    fn reduce_others(&mut self, col: usize) -> Result<()> {
        let p = self.pivots[col].clone().expect("pivot present");
        for i in 0..col {
            let Some(mut r) = self.pivots[i].take() else {
                continue;
            };
            let q = r[col].div_euclid(p[col]);
            if q != 0 {
                for t in col..self.width {
                    r[t] = lin(1, r[t], -q, p[t])?;
                }
                self.reduce_above(col, &mut r)?;
            }
            self.pivots[i] = Some(r);
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self.pivots.iter().flatten().cloned().collect();
        IntMatrix::from_rows(self.width, &rows).expect("consistent width")
    }
}

fn lin(a: Int, x: Int, b: Int, y: Int) -> Result<Int> {
    a.checked_mul(x)
        .and_then(|u| b.checked_mul(y).and_then(|v| u.checked_add(v)))
        .ok_or(Error::Overflow("echelon form"))
}

/// Eliminates unit pivots, then returns the reducer and the echelon core
/// (rows over the free columns).
pub fn eliminate(rel: &SparseMatrix) -> Result<(Reducer, IntMatrix)> {
    let mut el = Eliminator::new(rel.cols());
    for row in rel.rows() {
        el.insert(row.entries())?;
    }
    let (reducer, parked) = el.finish();
    let mut ech = Echelon::new(reducer.free.len());
    for terms in parked {
        let v = reducer.reduce_terms(terms.into_iter())?;
        if v.iter().any(|&x| x != 0) {
            ech.insert(v)?;
        }
    }
    Ok((reducer, ech.to_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_spans_same_lattice() {
        let mut e = Echelon::new(2);
        e.insert(vec![4, 6]).unwrap();
        e.insert(vec![6, 4]).unwrap();
        let m = e.to_matrix();
        // determinant is preserved up to sign
        assert_eq!((m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).abs(), 20);
        assert_eq!(m[(1, 0)], 0);
    }

    #[test]
    fn unit_rows_eliminate_everything() {
        let mut rel = SparseMatrix::new(3);
        rel.push(SparseRow::from_entries([(0, 1), (1, -1)]));
        rel.push(SparseRow::from_entries([(1, 1), (2, -1)]));
        rel.push(SparseRow::from_entries([(2, 6)]));
        let (red, core) = eliminate(&rel).unwrap();
        assert_eq!(red.free_columns().len(), 1);
        assert_eq!(core.rows(), 1);
        assert_eq!(core[(0, 0)], 6);
        // x0 = x1 = x2 in the quotient
        assert_eq!(red.reduce_dense(&[1, 0, 0]).unwrap(), red.reduce_dense(&[0, 0, 1]).unwrap());
    }
}
