//! HLT coset enumeration over the trivial subgroup.
//!
//! Cosets are numbered in creation order and never reused. Rows are scanned
//! in that order, relators in the order listed, and coincidences are
//! resolved through a queue with the smaller number surviving, so a run is
//! a deterministic function of the presentation.

use std::fmt;

use crate::metagrp::GroupParams;
use crate::presentations::{nu_presentation, tensor_structure, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// The table closed with this many live cosets.
    Closed { order: u64, cosets_used: usize },
    /// `max_cosets` was reached first.
    Overflow { cosets_used: usize },
}

impl Enumeration {
    pub fn order(self) -> Option<u64> {
        match self {
            Enumeration::Closed { order, .. } => Some(order),
            Enumeration::Overflow { .. } => None,
        }
    }

    pub fn cosets_used(self) -> usize {
        match self {
            Enumeration::Closed { cosets_used, .. } | Enumeration::Overflow { cosets_used } => cosets_used,
        }
    }
}

struct Full;

/// Columns `2i` and `2i + 1` hold the action of generator `i` and its
/// inverse.
pub struct CosetTable {
    width: usize,
    table: Vec<u32>,
    // union-find parent; `parent[c] == c` for live cosets
    parent: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl CosetTable {
    fn new(ngens: usize, max_cosets: usize) -> Self {
        let width = 2 * ngens;
        CosetTable {
            width,
            table: vec![UNDEF; width],
            parent: vec![0],
            queue: Vec::new(),
            max_cosets,
        }
    }

    pub fn cosets_defined(&self) -> usize {
        self.parent.len()
    }

    pub fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    pub fn live_count(&self) -> usize {
        (0..self.parent.len()).filter(|&c| self.is_live(c)).count()
    }

    /// Image of coset `c` under column `col`, if defined.
    pub fn get(&self, c: usize, col: usize) -> Option<usize> {
        match self.table[c * self.width + col] {
            UNDEF => None,
            d => Some(d as usize),
        }
    }

    #[inline]
    fn at(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.width + col] = d;
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), Full> {
        if self.parent.len() >= self.max_cosets {
            return Err(Full);
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.width));
        self.set(c, col, d);
        self.set(d, inv(col), c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (phi, psi) = (self.rep(k), self.rep(l));
        if phi != psi {
            let (mu, nu) = (phi.min(psi), phi.max(psi));
            self.parent[nu as usize] = mu;
            self.queue.push(nu);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let delta = self.at(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                self.set(delta, inv(x), UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mx = self.at(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nx = self.at(nu, inv(x));
                    if nx != UNDEF {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, inv(x), mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<(), Full> {
        let (mut f, mut b) = (c, c);
        // word[..i] is traced from the front, word[j..] from the back
        let (mut i, mut j) = (0usize, word.len());
        loop {
            while i < j && self.at(f, word[i]) != UNDEF {
                f = self.at(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.at(b, inv(word[j - 1])) != UNDEF {
                b = self.at(b, inv(word[j - 1]));
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                // deduction
                self.set(f, word[i], b);
                self.set(b, inv(word[i]), f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// Every defined live entry `c.x = d` has `d` live and `d.x^-1 = c`.
    pub fn check_consistency(&self) -> Result<(), String> {
        for c in 0..self.parent.len() {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.width {
                if let Some(d) = self.get(c, x) {
                    if !self.is_live(d) {
                        return Err(format!("coset {c} column {x} points to dead coset {d}"));
                    }
                    if self.get(d, inv(x)) != Some(c) {
                        return Err(format!("coset {c} column {x} -> {d} has no inverse entry"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn relator_columns(pres: &Presentation) -> Vec<Vec<usize>> {
    pres.relators()
        .iter()
        .map(|w| {
            let mut cols = Vec::new();
            for f in w.factors() {
                let col = 2 * f.generator + usize::from(f.exponent < 0);
                cols.extend(std::iter::repeat_n(col, f.exponent.unsigned_abs() as usize));
            }
            cols
        })
        .collect()
}

fn run(pres: &Presentation, max_cosets: usize) -> (CosetTable, Option<()>) {
    let rels = relator_columns(pres);
    let mut t = CosetTable::new(pres.generators().len(), max_cosets.max(1));
    let mut c = 0usize;
    while c < t.cosets_defined() {
        if t.is_live(c) {
            for w in &rels {
                if t.scan_and_fill(c as u32, w).is_err() {
                    return (t, None);
                }
                if !t.is_live(c) {
                    break;
                }
            }
            for x in 0..t.width {
                if !t.is_live(c) {
                    break;
                }
                if t.at(c as u32, x) == UNDEF && t.define(c as u32, x).is_err() {
                    return (t, None);
                }
            }
            #[cfg(debug_assertions)]
            if t.cosets_defined() <= 2048 {
                if let Err(e) = t.check_consistency() {
                    panic!("coset table inconsistent after row {c}: {e}");
                }
            }
        }
        c += 1;
    }
    (t, Some(()))
}

/// Order of the group presented by `pres`, or an overflow after
/// `max_cosets` coset definitions.
pub fn todd_coxeter(pres: &Presentation, max_cosets: usize) -> Enumeration {
    let (t, closed) = run(pres, max_cosets);
    match closed {
        Some(()) => {
            debug_assert!(t.check_consistency().is_ok());
            Enumeration::Closed {
                order: t.live_count() as u64,
                cosets_used: t.cosets_defined(),
            }
        }
        None => Enumeration::Overflow {
            cosets_used: t.cosets_defined(),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuCertificate {
    pub verdict: Verdict,
    pub predicted: u64,
    pub enumeration: Enumeration,
}

/// Enumerates the eight-generator presentation of `ν(G)` and compares with
/// `|G|^2 |G ⊗ G|`.
pub fn certify_nu_order(p: &GroupParams, max_cosets: usize) -> NuCertificate {
    let (_, tensor) = tensor_structure(p);
    let predicted = p.order() * p.order() * tensor.order().expect("finite");
    let enumeration = todd_coxeter(&nu_presentation(p), max_cosets);
    let verdict = match enumeration.order() {
        None => Verdict::Inconclusive,
        Some(o) if o == predicted => Verdict::Pass,
        Some(_) => Verdict::Fail,
    };
    NuCertificate {
        verdict,
        predicted,
        enumeration,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgrp::parse_presentation;
    use crate::metagrp::validate;

    fn order(text: &str) -> Option<u64> {
        todd_coxeter(&parse_presentation(text).unwrap(), 100_000).order()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("gens: x\nx^5"), Some(5));
        assert_eq!(order("gens: x y\nx^2\ny^2\nx * y * x * y"), Some(4));
        assert_eq!(order("gens: x\n"), None);
        assert_eq!(order("gens: x y\nx^1\ny^1"), Some(1));
        for n in 1..=100u64 {
            let text = format!("gens: r f\nr^{n}\nf^2\nf * r * f^-1 * r\n");
            assert_eq!(order(&text), Some(2 * n), "dihedral {n}");
        }
        for n in [1u64, 7, 13, 200] {
            assert_eq!(order(&format!("gens: x\nx^{n}")), Some(n));
        }
        // quaternion group and A4
        assert_eq!(order("gens: i j\ni^4\ni^2 * j^-2\nj^-1 * i * j * i"), Some(8));
        assert_eq!(order("gens: a b\na^2\nb^3\na * b * a * b * a * b"), Some(12));
    }

    #[test]
    fn nu_of_s3() {
        let p = validate(3, 2, 2, 0).unwrap();
        let c = certify_nu_order(&p, 100_000);
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.enumeration.order(), Some(216));
        let c = certify_nu_order(&p, 10);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.enumeration.cosets_used() <= 10);
    }

    #[test]
    fn monotone_in_bound() {
        let pres = nu_presentation(&validate(3, 2, 2, 0).unwrap());
        let big = todd_coxeter(&pres, 100_000);
        let needed = big.cosets_used();
        assert_eq!(todd_coxeter(&pres, needed), big);
        assert_eq!(todd_coxeter(&pres, needed * 3), big);
        assert!(matches!(todd_coxeter(&pres, needed - 1), Enumeration::Overflow { .. }));
    }
}
