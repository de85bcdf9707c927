//! Smith normal form by elementary row and column operations.
//!
//! Pivot rule: the entry of smallest nonzero magnitude in the remaining
//! block, ties broken by lowest row and then lowest column.

use super::matrix::{Int, IntMatrix};
use crate::error::{Error, Result};

/// `left * input * right = diag`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diag: IntMatrix,
    pub left: Option<IntMatrix>,
    pub right: IntMatrix,
}

impl Snf {
    /// The diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.diag.rows().min(self.diag.cols());
        (0..k).map(|i| self.diag[(i, i)]).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<Snf> {
    snf_impl(a.clone(), true)
}

/// As [`smith_normal_form`] but without accumulating the left transform.
pub fn smith_normal_form_right(a: &IntMatrix) -> Result<Snf> {
    snf_impl(a.clone(), false)
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn snf_impl(mut a: IntMatrix, track_left: bool) -> Result<Snf> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut left = track_left.then(|| IntMatrix::identity(rows));
    let mut right = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                return Ok(Snf {
                    diag: a,
                    left,
                    right,
                });
            };
            a.swap_rows(t, pi);
            if let Some(l) = left.as_mut() {
                l.swap_rows(t, pi);
            }
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let x = a[(i, t)];
                if x == 0 {
                    continue;
                }
                let q = x / p;
                a.add_row(i, t, -q)?;
                if let Some(l) = left.as_mut() {
                    l.add_row(i, t, -q)?;
                }
                clean &= a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let x = a[(t, j)];
                if x == 0 {
                    continue;
                }
                let q = x / p;
                a.add_col(j, t, -q)?;
                right.add_col(j, t, -q)?;
                clean &= a[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    a.add_row(t, i, 1)?;
                    if let Some(l) = left.as_mut() {
                        l.add_row(t, i, 1)?;
                    }
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            if let Some(l) = left.as_mut() {
                l.negate_row(t);
            }
        }
    }
    Ok(Snf {
        diag: a,
        left,
        right,
    })
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> Result<Int> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Usage("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev: Int = 1;
    for k in 0..n {
        if m[(k, k)] == 0 {
            match (k + 1..n).find(|&i| m[(i, k)] != 0) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[(i, j)]
                    .checked_mul(m[(k, k)])
                    .and_then(|x| x.checked_sub(m[(i, k)].checked_mul(m[(k, j)])?))
                    .ok_or(Error::Overflow("determinant"))?;
                m[(i, j)] = num / prev;
            }
        }
        prev = m[(k, k)];
    }
    Ok(sign * m[(n - 1, n - 1)])
}
