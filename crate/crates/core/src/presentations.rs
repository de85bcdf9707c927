//! Closed-form presentations of `ν(G)` and `G ⊗ G`, and the derived
//! structures of `G ∧ G` and `M(G)`.
//!
//! Inside `ν(G)` the tensor square is generated by
//! `u = [a, b^φ]`, `v = [a, a^φ]`, `w = [b, b^φ]` and `z = [a, b^φ][b, a^φ]`.

use std::fmt;

use crate::abgrp::{quotient_structure, AbelianStructure, Int, IntMatrix};
use crate::error::{Error, Result};
use crate::metagrp::GroupParams;
use crate::numth::{gcd, geom_sum_mod};

/// One letter `generator^exponent` of a word; the exponent is never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Factor>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_factors(factors: Vec<Factor>) -> Result<Self> {
        if factors.iter().any(|f| f.exponent == 0) {
            return Err(Error::Usage("zero exponent in word".into()));
        }
        Ok(Word(factors))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `g^e`, dropping it when `e == 0`.
    pub fn pow(mut self, generator: usize, exponent: i64) -> Self {
        if exponent != 0 {
            self.0.push(Factor {
                generator,
                exponent,
            });
        }
        self
    }

    /// Appends the commutator `[x, y] = x^-1 y^-1 x y`.
    pub fn comm(self, x: usize, y: usize) -> Self {
        self.pow(x, -1).pow(y, -1).pow(x, 1).pow(y, 1)
    }

    /// Appends `w^k` for `k >= 0`.
    pub fn repeat(mut self, w: &Word, k: u64) -> Self {
        for _ in 0..k {
            self.0.extend_from_slice(&w.0);
        }
        self
    }

    /// Expansion into signed letters `±(generator + 1)`.
    pub fn letters(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for f in &self.0 {
            let g = f.generator as i64 + 1;
            let l = if f.exponent > 0 { g } else { -g };
            out.extend(std::iter::repeat_n(l, f.exponent.unsigned_abs() as usize));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub const NATIVE_HEADER: &str = "tensq-pres v1";

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, w) in relators.iter().enumerate() {
            if let Some(f) = w.factors().iter().find(|f| f.generator >= generators.len()) {
                return Err(Error::Usage(format!(
                    "relator {i} uses generator index {} of {}",
                    f.generator,
                    generators.len()
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The native text form; [`crate::fpgrp::parse_presentation`] inverts it.
    pub fn to_native(&self) -> String {
        let mut out = String::new();
        out.push_str(NATIVE_HEADER);
        out.push('\n');
        out.push_str("gens:");
        for g in &self.generators {
            out.push(' ');
            out.push_str(g);
        }
        out.push('\n');
        for w in &self.relators {
            let parts: Vec<String> = w
                .factors()
                .iter()
                .map(|f| format!("{}^{}", self.generators[f.generator], f.exponent))
                .collect();
            out.push_str(&parts.join(" * "));
            out.push('\n');
        }
        out
    }

    /// GAP free-group syntax.
    pub fn to_gap(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{g}\"")).collect();
        let mut out = format!("F := FreeGroup({});;\n", names.join(", "));
        for (i, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("{g} := F.{};;\n", i + 1));
        }
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                let p: Vec<String> = w
                    .factors()
                    .iter()
                    .map(|f| format!("{}^{}", self.generators[f.generator], f.exponent))
                    .collect();
                p.join("*")
            })
            .collect();
        out.push_str(&format!("G := F / [ {} ];;\n", rels.join(",\n  ")));
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_native())
    }
}

/// Exponents of the abelian presentation of `G ⊗ G` on `u, v, w, z`.
///
/// `e_rn` is `E_m(r, n)` reduced modulo `m`; since `u` and `u^-1 z` both
/// have order dividing `m`, only that residue enters any relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorDescriptor {
    pub e_u: u64,
    pub e_v: u64,
    pub e_w: u64,
    pub e_z: u64,
    pub s: u64,
    pub n: u64,
    pub e_rn: u64,
}

impl TensorDescriptor {
    pub fn new(p: &GroupParams) -> Self {
        let m = p.m();
        let r = p.r() as i64;
        let sk = p.s() * p.k();
        let e_u = gcd(gcd(m, geom_sum_mod(r, p.order_b(), m).value()), sk);
        let head = gcd(gcd(p.oprime_a(), p.oprime_b()), sk);
        let e_z = gcd(head, geom_sum_mod(r, p.oprime_b(), head).value());
        TensorDescriptor {
            e_u,
            e_v: p.oprime_a(),
            e_w: p.n() * gcd(p.k(), p.r() - 1),
            e_z,
            s: p.s(),
            n: p.n(),
            e_rn: geom_sum_mod(r, p.n(), m).value(),
        }
    }

    /// Relation rows over `(u, v, w, z)` in additive notation.
    pub fn relation_matrix(&self) -> IntMatrix {
        let (s, n, e) = (self.s as Int, self.n as Int, self.e_rn as Int);
        let rows: [[Int; 4]; 8] = [
            [self.e_u as Int, 0, 0, 0],
            [0, self.e_v as Int, 0, 0],
            [0, 0, self.e_w as Int, 0],
            [0, 0, 0, self.e_z as Int],
            // u^s = w^n
            [s, 0, -n, 0],
            // w^n = (u^-1 z)^s
            [s, 0, n, -s],
            // u^E = v^s
            [e, -s, 0, 0],
            // v^s = (u^-1 z)^E
            [e, s, 0, -e],
        ];
        IntMatrix::from_rows(4, &rows).expect("4 columns")
    }
}

pub fn tensor_structure(p: &GroupParams) -> (TensorDescriptor, AbelianStructure) {
    let desc = TensorDescriptor::new(p);
    let (structure, _) = quotient_structure(&desc.relation_matrix(), 4).expect("4x8 system");
    (desc, structure)
}

/// Orders of the sections of `ν(G)` predicted by the closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionReport {
    pub tensor: AbelianStructure,
    pub exterior: AbelianStructure,
    pub schur: AbelianStructure,
    pub delta_order: u64,
    pub nu_order_predicted: u64,
}

impl SectionReport {
    fn checked(
        p: &GroupParams,
        tensor: AbelianStructure,
        exterior: AbelianStructure,
        schur: AbelianStructure,
    ) -> Result<Self> {
        let t = tensor.order().expect("finite");
        let e = exterior.order().expect("finite");
        let sc = schur.order().expect("finite");
        if t % e != 0 {
            return Err(Error::FormulaInconsistency(format!(
                "|G∧G| = {e} does not divide |G⊗G| = {t}"
            )));
        }
        if e != sc * p.t_derived() {
            return Err(Error::FormulaInconsistency(format!(
                "|G∧G| = {e} but |M(G)|·|G'| = {sc}·{}",
                p.t_derived()
            )));
        }
        Ok(SectionReport {
            tensor,
            exterior,
            schur,
            delta_order: t / e,
            nu_order_predicted: p.order() * p.order() * t,
        })
    }
}

pub fn exterior_order(p: &GroupParams) -> u64 {
    let m = p.m();
    gcd(gcd(m, geom_sum_mod(p.r() as i64, p.n(), m).value()), p.s())
}

/// Exterior square and Schur multiplier; `|M(G)|` is read as
/// `(m, r-1) (m, E_m(r,n), s) / m`.
pub fn exterior_and_schur(p: &GroupParams) -> Result<SectionReport> {
    let (_, tensor) = tensor_structure(p);
    let ext = exterior_order(p);
    let num = p.oprime_a() * ext;
    if num % p.m() != 0 {
        return Err(Error::FormulaInconsistency(format!(
            "Schur exponent (m,r-1)(m,E,s)/m = {num}/{} is not an integer",
            p.m()
        )));
    }
    SectionReport::checked(
        p,
        tensor,
        AbelianStructure::cyclic(ext),
        AbelianStructure::cyclic(num / p.m()),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UpsilonGen {
    /// `[a, b^φ]`
    U,
    /// `[a, a^φ]`
    V,
    /// `[b, b^φ]`
    W,
    /// `[a, b^φ][b, a^φ]`
    Z,
}

impl UpsilonGen {
    pub const ALL: [UpsilonGen; 4] = [UpsilonGen::U, UpsilonGen::V, UpsilonGen::W, UpsilonGen::Z];

    pub fn name(self) -> &'static str {
        match self {
            UpsilonGen::U => "u",
            UpsilonGen::V => "v",
            UpsilonGen::W => "w",
            UpsilonGen::Z => "z",
        }
    }
}

/// Divisibility bounds on the orders of `u, v, w, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpsilonBounds {
    pub u: u64,
    pub v: u64,
    pub w: u64,
    pub z: u64,
}

impl UpsilonBounds {
    pub fn get(&self, g: UpsilonGen) -> u64 {
        match g {
            UpsilonGen::U => self.u,
            UpsilonGen::V => self.v,
            UpsilonGen::W => self.w,
            UpsilonGen::Z => self.z,
        }
    }
}

pub fn upsilon_order_bounds(p: &GroupParams) -> UpsilonBounds {
    let d = TensorDescriptor::new(p);
    UpsilonBounds {
        u: d.e_u,
        v: d.e_v,
        w: d.e_w,
        z: d.e_z,
    }
}

/// The split family `g(a,b; m,n,m-1,0)`: `G⊗G = C_m × C_n`, `G∧G = C_m`,
/// trivial multiplier.
pub fn split_specialization(p: &GroupParams) -> Result<SectionReport> {
    let (m, n, r, s) = p.tuple();
    if r != m - 1 || s != 0 || n % 2 != 0 {
        return Err(Error::Usage(format!(
            "split specialization needs r = m-1, s = 0 and n even, got {p}"
        )));
    }
    SectionReport::checked(
        p,
        AbelianStructure::from_cyclic_orders(&[m, n]),
        AbelianStructure::cyclic(m),
        AbelianStructure::trivial(),
    )
}

pub const NU_GENERATORS: [&str; 8] = ["x1", "y1", "x2", "y2", "u", "v", "w", "z"];
pub const TENSOR_GENERATORS: [&str; 4] = ["u", "v", "w", "z"];

/// `E_m(r, n)` as an exponent for `u` or `u^-1 z`: the residue mod `m`,
/// taken in `[1, m]` so the relator is never empty.
fn word_exponent_rn(d: &TensorDescriptor, m: u64) -> u64 {
    if d.e_rn == 0 {
        m
    } else {
        d.e_rn
    }
}

/// The eight-generator presentation of `ν(G)`.
pub fn nu_presentation(p: &GroupParams) -> Presentation {
    const X1: usize = 0;
    const Y1: usize = 1;
    const X2: usize = 2;
    const Y2: usize = 3;
    const U: usize = 4;
    const V: usize = 5;
    const W: usize = 6;
    const Z: usize = 7;
    let (m, n, r, s) = p.tuple();
    let (m_i, n_i, r_i, s_i) = (m as i64, n as i64, r as i64, s as i64);
    let d = TensorDescriptor::new(p);
    let e = word_exponent_rn(&d, m);
    let uinv_z_inv = Word::new().pow(Z, -1).pow(U, 1);

    let mut rels = vec![
        Word::new().pow(X1, m_i),
        Word::new().pow(X2, m_i),
        Word::new().pow(Y1, n_i).pow(X1, -s_i),
        Word::new().pow(Y2, n_i).pow(X2, -s_i),
        Word::new().comm(X1, Y1).pow(X1, 1 - r_i),
        Word::new().comm(X2, Y2).pow(X2, 1 - r_i),
        Word::new().comm(X1, Y2).pow(U, -1),
        Word::new().comm(X1, X2).pow(V, -1),
        Word::new().comm(Y1, Y2).pow(W, -1),
        Word::new().comm(Y1, X2).pow(Z, -1).pow(U, 1),
        Word::new().pow(V, d.e_v as i64),
        Word::new().pow(W, d.e_w as i64),
        Word::new().pow(U, s_i).pow(W, -n_i),
        Word::new().pow(W, n_i).repeat(&uinv_z_inv, s),
        Word::new().pow(V, s_i).repeat(&uinv_z_inv, e),
        Word::new().pow(U, e as i64).pow(V, -s_i),
        Word::new().pow(U, d.e_u as i64),
        Word::new().pow(Z, d.e_z as i64),
        Word::new().comm(U, X1),
        Word::new().comm(U, X2),
        Word::new().pow(Y1, -1).pow(U, 1).pow(Y1, 1).pow(U, -r_i),
        Word::new().pow(Y2, -1).pow(U, 1).pow(Y2, 1).pow(U, -r_i),
    ];
    for c in [V, W, Z] {
        for g in 0..8 {
            if g == c || (g > U && g < c) {
                continue;
            }
            rels.push(Word::new().comm(c, g));
        }
    }
    Presentation::new(NU_GENERATORS.iter().map(|g| g.to_string()).collect(), rels)
        .expect("indices in range")
}

/// The abelian presentation of `G ⊗ G` on `u, v, w, z`.
pub fn tensor_presentation(p: &GroupParams) -> Presentation {
    const U: usize = 0;
    const V: usize = 1;
    const W: usize = 2;
    const Z: usize = 3;
    let d = TensorDescriptor::new(p);
    let (s, n) = (d.s as i64, d.n as i64);
    let e = word_exponent_rn(&d, p.m());
    let e_i = e as i64;
    let mut rels = vec![
        Word::new().pow(U, d.e_u as i64),
        Word::new().pow(V, d.e_v as i64),
        Word::new().pow(W, d.e_w as i64),
        Word::new().pow(Z, d.e_z as i64),
        Word::new().pow(U, s).pow(W, -n),
        Word::new().pow(W, n).pow(U, s).pow(Z, -s),
        Word::new().pow(U, e_i).pow(V, -s),
        Word::new().pow(V, s).pow(U, e_i).pow(Z, -e_i),
    ];
    for (x, y) in [(U, V), (U, W), (U, Z), (V, W), (V, Z), (W, Z)] {
        rels.push(Word::new().comm(x, y));
    }
    Presentation::new(TENSOR_GENERATORS.iter().map(|g| g.to_string()).collect(), rels)
        .expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metagrp::{enumerate_tuples, validate};

    fn params(m: i64, n: i64, r: i64, s: i64) -> GroupParams {
        validate(m, n, r, s).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_structure(&params(3, 2, 2, 0)).1.invariant_factors(), &[6]);
        assert_eq!(tensor_structure(&params(5, 4, 2, 0)).1.invariant_factors(), &[20]);
        assert_eq!(tensor_structure(&params(7, 2, 6, 0)).1.invariant_factors(), &[14]);
        assert_eq!(tensor_structure(&params(9, 3, 4, 3)).1.invariant_factors(), &[3, 3, 3, 3]);
    }

    #[test]
    fn section_examples() {
        let rep = exterior_and_schur(&params(3, 2, 2, 0)).unwrap();
        assert_eq!(rep.exterior.invariant_factors(), &[3]);
        assert!(rep.schur.is_trivial());
        assert_eq!(rep.delta_order, 2);
        assert_eq!(rep.nu_order_predicted, 216);

        for m in [3i64, 5, 7, 9, 11, 13, 15] {
            for n in [2i64, 4, 6] {
                let rep = exterior_and_schur(&params(m, n, m - 1, 0)).unwrap();
                assert!(rep.schur.is_trivial());
            }
        }
    }

    #[test]
    fn beyl_family_has_trivial_multiplier() {
        let mut seen = 0;
        for p in enumerate_tuples(300, false) {
            if p.s() == p.m() / gcd(p.m(), p.r() - 1) {
                seen += 1;
                assert!(exterior_and_schur(&p).unwrap().schur.is_trivial(), "{p}");
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn bounds_examples() {
        let b = upsilon_order_bounds(&params(9, 3, 4, 3));
        assert_eq!(b.v, 3);
        assert_eq!(b.z, 3);
        assert_eq!(upsilon_order_bounds(&params(3, 2, 2, 0)).u, 3);
    }

    #[test]
    fn split_agrees_with_general_path() {
        for m in (3..30i64).step_by(2) {
            for n in (2..10i64).step_by(2) {
                let p = params(m, n, m - 1, 0);
                assert_eq!(split_specialization(&p).unwrap(), exterior_and_schur(&p).unwrap());
            }
        }
        let rep = split_specialization(&params(9, 2, 8, 0)).unwrap();
        assert_eq!(rep.exterior.invariant_factors(), &[9]);
        assert!(rep.schur.is_trivial());
        assert!(matches!(split_specialization(&params(9, 3, 4, 3)), Err(Error::Usage(_))));
    }

    #[test]
    fn report_identities_hold_everywhere() {
        for p in enumerate_tuples(400, true) {
            let rep = exterior_and_schur(&p).unwrap();
            let t = rep.tensor.order().unwrap();
            assert_eq!(t, rep.exterior.order().unwrap() * rep.delta_order);
            assert_eq!(
                rep.exterior.order().unwrap(),
                rep.schur.order().unwrap() * p.t_derived()
            );
        }
    }

    #[test]
    fn nu_presentation_shape() {
        let a = nu_presentation(&params(3, 2, 2, 0));
        let b = nu_presentation(&params(9, 3, 4, 3));
        assert_eq!(a.relators().len(), b.relators().len());
        assert_eq!(a.generators(), b.generators());
        assert!(a.relators().iter().all(|w| !w.is_empty()));
        // split case: v^(m, m-2) = v^1
        let c = nu_presentation(&params(7, 2, 6, 0));
        assert_eq!(c.relators()[10].factors(), &[Factor { generator: 5, exponent: 1 }]);
        let text = b.to_native();
        assert!(text.starts_with("tensq-pres v1\ngens: x1 y1 x2 y2 u v w z\nx1^9\nx2^9\ny1^3 * x1^-3\n"));
        assert!(text.contains("\nx1^-1 * y1^-1 * x1^1 * y1^1 * x1^-3\n"));
    }

    #[test]
    fn tensor_presentation_shape() {
        let t = tensor_presentation(&params(3, 2, 2, 0));
        assert_eq!(t.generators(), &["u", "v", "w", "z"]);
        assert!(t.to_gap().starts_with("F := FreeGroup(\"u\", \"v\", \"w\", \"z\");;"));
    }
}
