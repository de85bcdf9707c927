//! Ground truth for `G ⊗ G` straight from its defining relations.
//!
//! The tensor square is abelian for every metacyclic `G`, so it is the
//! quotient of the free abelian group on the `|G|^2` symbols `g ⊗ h`
//! (written `x(g, h)`) by
//!
//! ```text
//! x(g g1, h) = x(g^g1, h^g1) + x(g1, h)
//! x(g, h h1) = x(g, h1) + x(g^h1, h^h1)
//! ```
//!
//! Inside `ν(G)` the symbol `x(g, h)` is `[g, h^φ]`, and conjugation by `c`
//! in `G` or `G^φ` sends it to `x(g^c, h^c)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use crate::abgrp::{quotient_structure_sparse, AbelianStructure, Int, QuotientHandle, SparseMatrix, SparseRow};
use crate::error::{Error, Result};
use crate::metagrp::{derived_subgroup, order_mod, Element, GroupParams};
use crate::numth::{binom2_mod, gcd, geom_sum_mod, pow_mod};
use crate::presentations::{upsilon_order_bounds, UpsilonGen};

/// Default cap on `|G|` for the oracle; the relation matrix has `2|G|^3` rows.
pub const DEFAULT_ORACLE_BOUND: u64 = 45;

#[derive(Debug, Clone, Default)]
pub struct OracleOptions {
    /// `None` means [`DEFAULT_ORACLE_BOUND`].
    pub max_group_order: Option<u64>,
    /// Column order: `relabel[i]` is the position given to element `i` of
    /// [`GroupParams::elements`]. Must be a permutation.
    pub relabel: Option<Vec<usize>>,
}

#[derive(Debug)]
pub struct OracleModel {
    params: GroupParams,
    els: Vec<Element>,
    // element index -> label position, and back
    pos: Vec<usize>,
    at: Vec<usize>,
    relations: SparseMatrix,
    handle: QuotientHandle,
    structure: AbelianStructure,
    exterior: OnceLock<(AbelianStructure, QuotientHandle)>,
}

impl OracleModel {
    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn ncols(&self) -> usize {
        self.els.len() * self.els.len()
    }

    pub fn relations(&self) -> &SparseMatrix {
        &self.relations
    }

    pub fn handle(&self) -> &QuotientHandle {
        &self.handle
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    /// Column of the symbol `x(g, h)`.
    pub fn column(&self, g: Element, h: Element) -> usize {
        let p = &self.params;
        self.pos[p.index(g)] * self.els.len() + self.pos[p.index(h)]
    }

    /// The pair of elements behind a column.
    pub fn symbol_at(&self, col: usize) -> (Element, Element) {
        let n = self.els.len();
        (self.els[self.at[col / n]], self.els[self.at[col % n]])
    }

    /// Unit vector of `x(g, h)`.
    pub fn symbol(&self, g: Element, h: Element) -> Vec<Int> {
        let mut v = vec![0; self.ncols()];
        v[self.column(g, h)] = 1;
        v
    }

    /// Quotient by the diagonal `x(g, g) = 0`, built on first use.
    pub fn exterior(&self) -> &(AbelianStructure, QuotientHandle) {
        self.exterior.get_or_init(|| {
            let mut rel = self.relations.clone();
            for &g in &self.els {
                rel.push(SparseRow::from_entries([(self.column(g, g), 1)]));
            }
            quotient_structure_sparse(&rel).expect("exterior quotient of a finite model")
        })
    }
}

pub fn build_tensor_oracle(p: &GroupParams) -> Result<OracleModel> {
    build_tensor_oracle_with(p, &OracleOptions::default())
}

pub fn build_tensor_oracle_with(p: &GroupParams, opts: &OracleOptions) -> Result<OracleModel> {
    let bound = opts.max_group_order.unwrap_or(DEFAULT_ORACLE_BOUND);
    if p.order() > bound {
        return Err(Error::Resource(format!(
            "|G| = {} exceeds oracle bound {bound}",
            p.order()
        )));
    }
    let els: Vec<Element> = p.elements().collect();
    let n = els.len();
    let pos = match &opts.relabel {
        None => (0..n).collect::<Vec<_>>(),
        Some(perm) => {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::Usage(format!("relabel is not a permutation of 0..{n}")));
            }
            perm.clone()
        }
    };
    let mut at = vec![0; n];
    for (i, &q) in pos.iter().enumerate() {
        at[q] = i;
    }
    let col = |g: Element, h: Element| pos[p.index(g)] * n + pos[p.index(h)];

    let mut relations = SparseMatrix::new(n * n);
    let mut seen = HashSet::new();
    let mut push = |row: SparseRow| {
        if !row.is_empty() && seen.insert(row.normalized()) {
            relations.push(row);
        }
    };
    for &g in &els {
        for &g1 in &els {
            let gg1 = p.mul(g, g1);
            let g_c = p.conj(g, g1);
            for &h in &els {
                push(SparseRow::from_entries([
                    (col(gg1, h), 1),
                    (col(g_c, p.conj(h, g1)), -1),
                    (col(g1, h), -1),
                ]));
                // the second family with (g, h, h1) = (h, g, g1)
                push(SparseRow::from_entries([
                    (col(h, gg1), 1),
                    (col(h, g1), -1),
                    (col(p.conj(h, g1), g_c), -1),
                ]));
            }
        }
    }
    let (structure, handle) = quotient_structure_sparse(&relations)?;
    Ok(OracleModel {
        params: p.clone(),
        els,
        pos,
        at,
        relations,
        handle,
        structure,
        exterior: OnceLock::new(),
    })
}

pub fn exterior_oracle(model: &OracleModel) -> AbelianStructure {
    model.exterior().0.clone()
}

/// `|G ∧ G| / |G'|`; a non-integral ratio is reported as an inconsistency.
pub fn schur_order_oracle(model: &OracleModel) -> Result<u64> {
    let e = exterior_oracle(model).order().expect("finite");
    let t = model.params.t_derived();
    if e % t != 0 {
        return Err(Error::FormulaInconsistency(format!(
            "|G∧G| = {e} is not a multiple of |G'| = {t}"
        )));
    }
    Ok(e / t)
}

/// Conjugation by `c`: each `x(g, h)` goes to `x(g^c, h^c)`.
pub fn act(model: &OracleModel, vec: &[Int], c: Element) -> Result<Vec<Int>> {
    if vec.len() != model.ncols() {
        return Err(Error::Usage(format!(
            "vector has length {}, expected {}",
            vec.len(),
            model.ncols()
        )));
    }
    let p = &model.params;
    let mut out = vec![0; vec.len()];
    for (col, &x) in vec.iter().enumerate() {
        if x != 0 {
            let (g, h) = model.symbol_at(col);
            out[model.column(p.conj(g, c), p.conj(h, c))] += x;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub instance: String,
}

#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checked: usize,
    /// Instances checked per identity name.
    pub per_check: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    /// Which branch of the `n`-`s` relation `s` falls in.
    pub ns_branch: &'static str,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Dense linear combination helper over the model's columns.
struct Lin<'a> {
    model: &'a OracleModel,
    v: Vec<Int>,
}

impl<'a> Lin<'a> {
    fn zero(model: &'a OracleModel) -> Self {
        Lin {
            model,
            v: vec![0; model.ncols()],
        }
    }

    fn x(mut self, g: Element, h: Element, k: Int) -> Self {
        self.v[self.model.column(g, h)] += k;
        self
    }

    fn acted(mut self, g: Element, h: Element, c: Element, k: Int) -> Self {
        let p = &self.model.params;
        self.v[self.model.column(p.conj(g, c), p.conj(h, c))] += k;
        self
    }

    fn plus(mut self, other: &[Int], k: Int) -> Self {
        for (a, &b) in self.v.iter_mut().zip(other) {
            *a += k * b;
        }
        self
    }
}

struct Checker<'a> {
    handle: &'a QuotientHandle,
    report: IdentityReport,
}

impl Checker<'_> {
    fn count(&mut self, check: &str) {
        self.report.checked += 1;
        *self.report.per_check.entry(check.to_string()).or_default() += 1;
    }

    fn zero(&mut self, check: &str, v: &Lin, instance: impl FnOnce() -> String) {
        self.count(check);
        if !self.handle.lattice_member(&v.v).expect("length matches model") {
            self.report.failures.push(Failure {
                check: check.to_string(),
                instance: instance(),
            });
        }
    }

    fn divides(&mut self, check: &str, v: &Lin, bound: u64, instance: impl FnOnce() -> String) {
        self.count(check);
        let o = self.handle.element_order(&v.v).expect("length matches model");
        if o == 0 || bound % o != 0 {
            self.report.failures.push(Failure {
                check: check.to_string(),
                instance: format!("{}: order {o} does not divide {bound}", instance()),
            });
        }
    }
}

/// The twelve power identities, the `n`-`s` relation, the diagonal
/// memberships, and the commutator-calculus facts about `Υ(G)` that can be
/// stated with the action of `G`.
pub fn verify_identities(model: &OracleModel) -> IdentityReport {
    let p = &model.params;
    let (m, _, r, s) = p.tuple();
    let (a, b) = (p.a(), p.b());
    let ex = model.structure.exponent().max(1);
    let ri = r as Int;
    // scalars live modulo exp(Υ); binomial arguments modulo 2 exp(Υ)
    let rpow2 = |beta: u64| pow_mod(r as i64, beta, 2 * ex) as Int;
    let bin = |x: Int| binom2_mod(x, ex) as Int;
    let emod = |beta: u64| geom_sum_mod(r as i64, beta, ex).value() as Int;

    let mut ck = Checker {
        handle: &model.handle,
        report: IdentityReport::default(),
    };
    let z = || Lin::zero(model);

    for alpha in 0..p.order_a() {
        let al = alpha as Int;
        let aa = p.power(a, alpha as i64);
        let inst = || format!("alpha={alpha}");
        // (i) [a,b^φ]^{a^α} = [a,b^φ][a,a^φ]^{α(r-1)}
        ck.zero("power.i", &z().acted(a, b, aa, 1).x(a, b, -1).x(a, a, -al * (ri - 1)), inst);
        // (ii) [a^α,b^φ] = [a,b^φ]^α [a,a^φ]^{C(α,2)(r-1)}
        ck.zero("power.ii", &z().x(aa, b, 1).x(a, b, -al).x(a, a, -bin(al) * (ri - 1)), inst);
        // (vii) [b,a^φ]^{a^α} = [b,a^φ][a,a^φ]^{α(1-r)}
        ck.zero("power.vii", &z().acted(b, a, aa, 1).x(b, a, -1).x(a, a, -al * (1 - ri)), inst);
        // (viii) [b,(a^α)^φ] = [b,a^φ]^α [a,a^φ]^{C(α,2)(1-r)}
        ck.zero("power.viii", &z().x(b, aa, 1).x(b, a, -al).x(a, a, -bin(al) * (1 - ri)), inst);
    }

    for beta in 0..p.order_b() {
        let bb = p.power(b, beta as i64);
        let rb = rpow2(beta);
        let e = emod(beta);
        let tail: Int = (1..beta).map(|i| bin(rpow2(i))).sum::<Int>() % ex as Int;
        let inst = || format!("beta={beta}");
        // (iii) [a,b^φ]^{b^β} = [a,b^φ]^{r^β}[a,a^φ]^{C(r^β,2)(r-1)}
        ck.zero("power.iii", &z().acted(a, b, bb, 1).x(a, b, -rb).x(a, a, -bin(rb) * (ri - 1)), inst);
        // (iv) [a,(b^β)^φ] = [a,b^φ]^{E(r,β)}[a,a^φ]^{(r-1) Σ_{1≤i<β} C(r^i,2)}
        ck.zero("power.iv", &z().x(a, bb, 1).x(a, b, -e).x(a, a, -(ri - 1) * tail), inst);
        // (ix)
        ck.zero("power.ix", &z().acted(b, a, bb, 1).x(b, a, -rb).x(a, a, -bin(rb) * (1 - ri)), inst);
        // (x)
        ck.zero("power.x", &z().x(bb, a, 1).x(b, a, -e).x(a, a, -(1 - ri) * tail), inst);

        for alpha in 0..p.order_a() {
            let al = alpha as Int;
            let aa = p.power(a, alpha as i64);
            let arb = (al * rb) % (2 * ex as Int);
            let sum: Int = (0..beta)
                .map(|i| bin((al * rpow2(i)) % (2 * ex as Int)))
                .sum::<Int>()
                % ex as Int;
            let inst = || format!("alpha={alpha} beta={beta}");
            // (v) [a^α,b^φ]^{b^β} = [a,b^φ]^{αr^β}[a,a^φ]^{(r-1)C(αr^β,2)}
            ck.zero("power.v", &z().acted(aa, b, bb, 1).x(a, b, -arb).x(a, a, -(ri - 1) * bin(arb)), inst);
            // (vi) [a^α,(b^β)^φ] = [a,b^φ]^{αE(r,β)}[a,a^φ]^{(r-1)Σ C(αr^i,2)}
            ck.zero("power.vi", &z().x(aa, bb, 1).x(a, b, -al * e).x(a, a, -(ri - 1) * sum), inst);
            // (xi) [b,(a^α)^φ]^{b^β} = [b,a^φ]^{αr^β}[a,a^φ]^{(1-r)C(αr^β,2)}
            ck.zero("power.xi", &z().acted(b, aa, bb, 1).x(b, a, -arb).x(a, a, -(1 - ri) * bin(arb)), inst);
            // (xii) [b^β,(a^α)^φ] = [b,a^φ]^{αE(r,β)}[a,a^φ]^{(1-r)Σ C(αr^i,2)}
            ck.zero("power.xii", &z().x(bb, aa, 1).x(b, a, -al * e).x(a, a, -(1 - ri) * sum), inst);
        }
    }

    // n-s relation, branch chosen by the 2-adic valuation of s
    let (n, si) = (p.n() as Int, s as Int);
    let twice_odd = s % 4 == 2;
    ck.report.ns_branch = if twice_odd { "2||s" } else { "s odd or 4|s" };
    let extra = if twice_odd { ri - 1 } else { 0 };
    let none = String::new;
    ck.zero("ns.w-u", &z().x(b, b, n).x(a, b, -si).x(a, a, -extra), none);
    ck.zero("ns.w-ba", &z().x(b, b, n).x(b, a, -si).x(a, a, extra), none);

    // diagonal memberships: equalities in Υ, then membership in Δ
    let e_n = geom_sum_mod(r as i64, p.n(), m.max(ex)).value() as Int;
    ck.zero("diag.us=bas", &z().x(a, b, si).x(b, a, -si), none);
    ck.zero("diag.us=wn", &z().x(a, b, si).x(b, b, -n), none);
    ck.zero("diag.uE=baE", &z().x(a, b, e_n).x(b, a, -e_n), none);
    ck.zero("diag.uE=vs", &z().x(a, b, e_n).x(a, a, -si), none);
    {
        let ext = &model.exterior().1;
        let mut ext_ck = Checker {
            handle: ext,
            report: std::mem::take(&mut ck.report),
        };
        ext_ck.zero("diag.us-in-delta", &z().x(a, b, si), none);
        ext_ck.zero("diag.uE-in-delta", &z().x(a, b, e_n), none);
        ext_ck.zero("diag.vs-in-delta", &z().x(a, a, si), none);
        ck.report = ext_ck.report;
    }

    commutator_calculus(model, &mut ck);
    ck.report
}

fn commutator_calculus(model: &OracleModel, ck: &mut Checker) {
    let p = &model.params;
    let els = &model.els;
    let derived = derived_subgroup(p);
    let mut dlist: Vec<Element> = derived.iter().copied().collect();
    dlist.sort();
    let z = || Lin::zero(model);
    let show = |g: Element| g.to_string();

    // [[g,h^φ],[x,y^φ]] = [[g,h],[x,y]^φ]; Υ is abelian so the right side vanishes
    for &c1 in &dlist {
        for &c2 in &dlist {
            ck.zero("nu.i", &z().x(c1, c2, 1), || format!("{} {}", show(c1), show(c2)));
        }
    }
    for &g1 in els {
        for &g2 in els {
            let x12 = z().x(g1, g2, 1).v;
            let c12 = p.commutator(g1, g2);
            for &g3 in els {
                let inst = || format!("{} {} {}", show(g1), show(g2), show(g3));
                let c23 = p.commutator(g2, g3);
                // [g1,[g2,g3]^φ] = [g2,g3,g1^φ]^-1, in both of its expanded forms
                ck.zero("nu.ii", &z().x(g1, c23, 1).x(c23, g1, 1), inst);
                ck.zero("nu.ii", &z().x(g1, c23, 1).acted(g2, g3, g1, 1).x(g2, g3, -1), inst);
                // [[g1,g2^φ],g3] = [[g1,g2],g3^φ]
                ck.zero("nu.iv.a", &z().acted(g1, g2, g3, 1).plus(&x12, -1).x(c12, g3, -1), inst);
                // [[g1^φ,g2],g3] = [[g1,g2],g3^φ], with [g1^φ,g2] = x(g2,g1)^-1
                ck.zero(
                    "nu.iv.b",
                    &z().acted(g2, g1, g3, -1).x(g2, g1, 1).x(c12, g3, -1),
                    inst,
                );
                // [[g1,g2]^φ,g3] = [g3,[g1,g2]^φ]^-1 = [[g1,g2],g3^φ]
                ck.zero("nu.iv.c", &z().x(g3, c12, -1).x(c12, g3, -1), inst);
            }
            // x(g1,g2) is fixed by conjugation with any commutator
            for &c in &dlist {
                ck.zero("nu.iii", &z().acted(g1, g2, c, 1).plus(&x12, -1), || {
                    format!("{} {} by {}", show(g1), show(g2), show(c))
                });
            }
            // [g1,g2^φ][g2,g1^φ] is central
            for &c in els {
                ck.zero(
                    "nu.vi",
                    &z().acted(g1, g2, c, 1).acted(g2, g1, c, 1).plus(&x12, -1).x(g2, g1, -1),
                    || format!("{} {} by {}", show(g1), show(g2), show(c)),
                );
            }
            // x(g1,g2) + x(g2,g1) = x(g1g2,g1g2) - x(g2,g2) - x(g1,g1)
            let g12 = p.mul(g1, g2);
            ck.zero(
                "o.i",
                &z().plus(&x12, 1).x(g2, g1, 1).x(g12, g12, -1).x(g2, g2, 1).x(g1, g1, 1),
                || format!("{} {}", show(g1), show(g2)),
            );
            if derived.contains(&g2) || derived.contains(&g1) {
                ck.zero("o.iii", &z().plus(&x12, 1).x(g2, g1, 1), || {
                    format!("{} {}", show(g1), show(g2))
                });
            }
        }
    }
    let oprime: Vec<u64> = els.iter().map(|&g| order_mod(p, g, &derived)).collect();
    for (i, &g) in els.iter().enumerate() {
        for &c in els {
            // [g,g^φ] is central
            ck.zero("nu.v", &z().acted(g, g, c, 1).x(g, g, -1), || {
                format!("{} by {}", show(g), show(c))
            });
        }
        if derived.contains(&g) {
            ck.zero("nu.vii", &z().x(g, g, 1), || show(g));
        }
        for &c in &dlist {
            // gG' = hG' forces equal diagonal symbols
            let h = p.mul(g, c);
            ck.zero("o.iv", &z().x(g, g, 1).x(h, h, -1), || format!("{} {}", show(g), show(h)));
        }
        let o = oprime[i];
        ck.divides("o.vi", &z().x(g, g, 1), gcd(o * o, 2 * o), || show(g));
        if o % 2 == 1 {
            ck.divides("o.vii", &z().x(g, g, 1), o, || show(g));
        }
        for (j, &h) in els.iter().enumerate() {
            ck.divides(
                "o.v",
                &z().x(g, h, 1).x(h, g, 1),
                gcd(o, oprime[j]),
                || format!("{} {}", show(g), show(h)),
            );
        }
    }
}

/// Measured order of one generator of `Υ(G)` against its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub generator: UpsilonGen,
    pub measured: u64,
    pub bound: u64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.measured != 0 && self.bound % self.measured == 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct BoundsReport {
    pub generators: Vec<BoundCheck>,
    /// Elements `h` with `o'(h)` odd whose diagonal symbol order fails to
    /// divide `o'(h)`.
    pub diagonal_failures: Vec<Failure>,
    pub diagonal_checked: usize,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.generators.iter().all(BoundCheck::holds) && self.diagonal_failures.is_empty()
    }
}

pub fn upsilon_vector(model: &OracleModel, g: UpsilonGen) -> Vec<Int> {
    let p = &model.params;
    let (a, b) = (p.a(), p.b());
    let z = Lin::zero(model);
    match g {
        UpsilonGen::U => z.x(a, b, 1),
        UpsilonGen::V => z.x(a, a, 1),
        UpsilonGen::W => z.x(b, b, 1),
        UpsilonGen::Z => z.x(a, b, 1).x(b, a, 1),
    }
    .v
}

pub fn verify_bounds(model: &OracleModel) -> BoundsReport {
    let p = &model.params;
    let bounds = upsilon_order_bounds(p);
    let h = &model.handle;
    let generators = UpsilonGen::ALL
        .iter()
        .map(|&g| BoundCheck {
            generator: g,
            measured: h.element_order(&upsilon_vector(model, g)).expect("length matches"),
            bound: bounds.get(g),
        })
        .collect();
    let derived = derived_subgroup(p);
    let mut report = BoundsReport {
        generators,
        ..Default::default()
    };
    for &g in &model.els {
        let o = order_mod(p, g, &derived);
        if o % 2 == 0 {
            continue;
        }
        report.diagonal_checked += 1;
        let measured = h.element_order(&model.symbol(g, g)).expect("length matches");
        if measured == 0 || o % measured != 0 {
            report.diagonal_failures.push(Failure {
                check: "o.vii".into(),
                instance: format!("{g}: order {measured} does not divide o'={o}"),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metagrp::validate;

    fn params(m: i64, n: i64, r: i64, s: i64) -> GroupParams {
        validate(m, n, r, s).unwrap()
    }

    #[test]
    fn s3() {
        let p = params(3, 2, 2, 0);
        let model = build_tensor_oracle(&p).unwrap();
        assert_eq!(model.ncols(), 36);
        assert_eq!(model.structure().invariant_factors(), &[6]);
        assert_eq!(exterior_oracle(&model).invariant_factors(), &[3]);
        assert_eq!(schur_order_oracle(&model).unwrap(), 1);
    }

    #[test]
    fn resource_bound() {
        let p = params(7, 9, 2, 0);
        assert!(matches!(build_tensor_oracle(&p), Err(Error::Resource(_))));
        let opts = OracleOptions {
            max_group_order: Some(5),
            relabel: None,
        };
        assert!(matches!(build_tensor_oracle_with(&params(3, 2, 2, 0), &opts), Err(Error::Resource(_))));
    }

    #[test]
    fn relabel_invariance() {
        let p = params(9, 3, 4, 3);
        let base = build_tensor_oracle(&p).unwrap();
        let n = p.order() as usize;
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let opts = OracleOptions {
            max_group_order: None,
            relabel: Some(perm),
        };
        let other = build_tensor_oracle_with(&p, &opts).unwrap();
        assert_eq!(base.structure(), other.structure());
        let bad = OracleOptions {
            max_group_order: None,
            relabel: Some(vec![0; n]),
        };
        assert!(matches!(build_tensor_oracle_with(&p, &bad), Err(Error::Usage(_))));
    }

    #[test]
    fn act_examples() {
        let p = params(9, 3, 4, 3);
        let model = build_tensor_oracle(&p).unwrap();
        let (a, b) = (p.a(), p.b());
        let x = model.symbol(a, b);
        assert_eq!(act(&model, &x, p.identity()).unwrap(), x);
        let moved = act(&model, &x, b).unwrap();
        let expect = model.symbol(p.power(a, 4), b);
        let diff: Vec<Int> = moved.iter().zip(&expect).map(|(u, v)| u - v).collect();
        assert!(model.handle().lattice_member(&diff).unwrap());
        for row in model.relations().rows().iter().take(200) {
            let mut v = vec![0; model.ncols()];
            for &(c, k) in row.entries() {
                v[c as usize] = k;
            }
            let w = act(&model, &v, p.mul(a, b)).unwrap();
            assert!(model.handle().lattice_member(&w).unwrap());
        }
        assert!(matches!(act(&model, &[1, 2], a), Err(Error::Usage(_))));
    }

    #[test]
    fn suites_small() {
        let p = params(3, 2, 2, 0);
        let model = build_tensor_oracle(&p).unwrap();
        let rep = verify_identities(&model);
        assert!(rep.passed(), "{:?}", rep.failures.first());
        let b = verify_bounds(&model);
        assert!(b.passed(), "{b:?}");
        let w = b.generators.iter().find(|c| c.generator == UpsilonGen::W).unwrap();
        assert_eq!(w.bound, 2);
    }
}
