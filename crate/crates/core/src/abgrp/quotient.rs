use std::fmt;

use super::matrix::{Int, IntMatrix, SparseMatrix, SparseRow};
use super::snf::{smith_normal_form_right, Snf};
use super::sparse::{eliminate, Reducer};
use crate::error::{Error, Result};
use crate::numth::{gcd_i128, lcm};

/// Invariant factors `d_1 | d_2 | ... | d_k`, each `>= 2`, zeros (free
/// summands) last. The trivial group is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianStructure {
    invariant_factors: Vec<u64>,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    /// Canonical form of a direct product of cyclic groups (`0` = infinite).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let diag: Vec<Int> = orders.iter().map(|&d| d as Int).collect();
        let snf = smith_normal_form_right(&IntMatrix::diagonal(&diag)).expect("small diagonal");
        Self::from_diagonal(&snf.diagonal(), 0)
    }

    /// From an SNF diagonal plus `extra_free` further zero factors.
    fn from_diagonal(diag: &[Int], extra_free: usize) -> Self {
        let mut f: Vec<u64> = diag.iter().filter(|&&d| d != 1).map(|&d| d as u64).collect();
        f.extend(std::iter::repeat_n(0, extra_free));
        // nonzero ascending, zeros last
        f.sort_by_key(|&d| (d == 0, d));
        AbelianStructure { invariant_factors: f }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        !self.invariant_factors.contains(&0)
    }

    /// `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.invariant_factors.iter().product())
        } else {
            None
        }
    }

    /// Least common multiple of the factors; `0` if infinite.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.iter().fold(1, |e, &d| lcm(e, d))
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("C{d}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Retained decomposition of `Z^n / L` for order and membership queries.
#[derive(Debug, Clone)]
pub struct QuotientHandle {
    ngens: usize,
    reducer: Option<Reducer>,
    right: IntMatrix,
    // one modulus per coordinate after the right transform (0 = free)
    moduli: Vec<Int>,
}

impl QuotientHandle {
    fn from_snf(ngens: usize, reducer: Option<Reducer>, snf: &Snf) -> Self {
        let width = snf.right.rows();
        let mut moduli = snf.diagonal();
        moduli.resize(width, 0);
        QuotientHandle {
            ngens,
            reducer,
            right: snf.right.clone(),
            moduli,
        }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    fn coordinates(&self, vec: &[Int]) -> Result<Vec<Int>> {
        if vec.len() != self.ngens {
            return Err(Error::Usage(format!(
                "vector has length {}, expected {}",
                vec.len(),
                self.ngens
            )));
        }
        let reduced;
        let v = match &self.reducer {
            Some(r) => {
                reduced = r.reduce_dense(vec)?;
                &reduced[..]
            }
            None => vec,
        };
        self.right.left_apply(v)
    }

    /// Coordinates of the image, each reduced into `[0, d_i)` (free ones raw).
    pub fn canonical_image(&self, vec: &[Int]) -> Result<Vec<Int>> {
        let y = self.coordinates(vec)?;
        Ok(y.iter()
            .zip(&self.moduli)
            .map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d) })
            .collect())
    }

    /// Order of the image of `vec`; `0` means infinite.
    pub fn element_order(&self, vec: &[Int]) -> Result<u64> {
        let y = self.coordinates(vec)?;
        let mut order = 1u64;
        for (&x, &d) in y.iter().zip(&self.moduli) {
            if d == 0 {
                if x != 0 {
                    return Ok(0);
                }
                continue;
            }
            let o = d / gcd_i128(d, x);
            order = lcm(order, o as u64);
        }
        Ok(order)
    }

    pub fn lattice_member(&self, vec: &[Int]) -> Result<bool> {
        let y = self.coordinates(vec)?;
        Ok(y.iter()
            .zip(&self.moduli)
            .all(|(&x, &d)| if d == 0 { x == 0 } else { x % d == 0 }))
    }

    /// Sparse variant of [`QuotientHandle::lattice_member`].
    pub fn sparse_member(&self, row: &SparseRow) -> Result<bool> {
        let mut v = vec![0; self.ngens];
        for &(c, x) in row.entries() {
            let c = c as usize;
            if c >= self.ngens {
                return Err(Error::Usage(format!("column {c} out of range")));
            }
            v[c] += x;
        }
        self.lattice_member(&v)
    }

    /// Same as [`QuotientHandle::element_order`] for a sparse vector.
    pub fn sparse_order(&self, row: &SparseRow) -> Result<u64> {
        let mut v = vec![0; self.ngens];
        for &(c, x) in row.entries() {
            v[c as usize] += x;
        }
        self.element_order(&v)
    }
}

/// Structure of `Z^ngens` modulo the row lattice of `relations`.
pub fn quotient_structure(
    relations: &IntMatrix,
    ngens: usize,
) -> Result<(AbelianStructure, QuotientHandle)> {
    if relations.cols() != ngens {
        return Err(Error::Usage(format!(
            "relation matrix has {} columns, expected {ngens}",
            relations.cols()
        )));
    }
    let snf = smith_normal_form_right(relations)?;
    let diag = snf.diagonal();
    let structure = AbelianStructure::from_diagonal(&diag, ngens - diag.len());
    Ok((structure, QuotientHandle::from_snf(ngens, None, &snf)))
}

/// As [`quotient_structure`], for large sparse relation systems.
pub fn quotient_structure_sparse(
    relations: &SparseMatrix,
) -> Result<(AbelianStructure, QuotientHandle)> {
    let (reducer, core) = eliminate(relations)?;
    let width = reducer.free_columns().len();
    let snf = smith_normal_form_right(&core)?;
    let diag = snf.diagonal();
    let structure = AbelianStructure::from_diagonal(&diag, width - diag.len());
    Ok((
        structure,
        QuotientHandle::from_snf(relations.cols(), Some(reducer), &snf),
    ))
}
