//! The metacyclic group `g(a, b; m, n, r, s) = <a, b | a^m, b^n = a^s, a^b = a^r>`.
//!
//! Elements are kept in the normal form `b^beta a^alpha` with
//! `0 <= beta < n` and `0 <= alpha < m`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result, Violation};
use crate::numth::{self, gcd, lcm, pow_mod};

/// Largest accepted `m` or `n`; keeps every derived quantity inside `u64`.
pub const PARAM_LIMIT: i64 = 1 << 20;

/// Default cap on `|G|` for [`brute_invariants`].
pub const DEFAULT_BRUTE_BOUND: u64 = 10_000;

/// A validated parameter tuple with `m` odd and `r > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupParams {
    m: u64,
    n: u64,
    r: u64,
    s: u64,
    // r^beta mod m for beta in [0, n)
    rpow: Vec<u64>,
}

impl GroupParams {
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn s(&self) -> u64 {
        self.s
    }
    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.m, self.n, self.r, self.s)
    }
    pub fn order(&self) -> u64 {
        self.m * self.n
    }
    pub fn order_a(&self) -> u64 {
        self.m
    }
    pub fn order_b(&self) -> u64 {
        self.n * (self.m / gcd(self.m, self.s))
    }
    /// `|G'| = m / (m, r-1)`.
    pub fn t_derived(&self) -> u64 {
        self.m / gcd(self.m, self.r - 1)
    }
    /// Inverse of `r` modulo `m`.
    pub fn r_inverse(&self) -> u64 {
        numth::mod_inverse(self.r as i64, self.m).expect("r is a unit")
    }
    pub fn oprime_a(&self) -> u64 {
        gcd(self.m, self.r - 1)
    }
    pub fn oprime_b(&self) -> u64 {
        let q = lcm(self.s, self.r - 1);
        self.n * gcd(self.m, q) / gcd(self.m, self.s)
    }
    pub fn k(&self) -> u64 {
        numth::capital_k(self)
    }

    fn rpow(&self, beta: u64) -> u64 {
        self.rpow[beta as usize]
    }

    pub fn identity(&self) -> Element {
        Element { beta: 0, alpha: 0 }
    }
    pub fn a(&self) -> Element {
        Element { beta: 0, alpha: 1 }
    }
    pub fn b(&self) -> Element {
        Element {
            beta: 1 % self.n,
            alpha: if self.n == 1 { self.s } else { 0 },
        }
    }

    /// The element `b^beta a^alpha` for arbitrary integer exponents.
    pub fn element(&self, beta: i64, alpha: i64) -> Element {
        let b = self.power(self.b(), beta);
        let a = Element {
            beta: 0,
            alpha: (alpha as i128).rem_euclid(self.m as i128) as u64,
        };
        self.mul(b, a)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n).flat_map(move |beta| (0..self.m).map(move |alpha| Element { beta, alpha }))
    }

    /// Position of `g` in [`GroupParams::elements`].
    pub fn index(&self, g: Element) -> usize {
        (g.beta * self.m + g.alpha) as usize
    }

    pub fn element_at(&self, idx: usize) -> Element {
        let idx = idx as u64;
        Element {
            beta: idx / self.m,
            alpha: idx % self.m,
        }
    }

    pub fn mul(&self, g: Element, h: Element) -> Element {
        let m = self.m as u128;
        let mut alpha = (h.alpha as u128 + g.alpha as u128 * self.rpow(h.beta) as u128) % m;
        let mut beta = g.beta + h.beta;
        if beta >= self.n {
            beta -= self.n;
            alpha = (alpha + self.s as u128) % m;
        }
        Element {
            beta,
            alpha: alpha as u64,
        }
    }

    pub fn inverse(&self, g: Element) -> Element {
        if g.beta == 0 {
            return Element {
                beta: 0,
                alpha: (self.m - g.alpha) % self.m,
            };
        }
        // b^-beta = b^(n-beta) a^-s
        let beta = self.n - g.beta;
        let m = self.m as i128;
        let alpha = (-(g.alpha as i128) * self.rpow(beta) as i128 - self.s as i128).rem_euclid(m);
        Element {
            beta,
            alpha: alpha as u64,
        }
    }

    /// `h^g = g^-1 h g`.
    pub fn conj(&self, h: Element, g: Element) -> Element {
        let m = self.m as i128;
        let alpha = h.alpha as i128 * self.rpow(g.beta) as i128
            + g.alpha as i128 * (1 - self.rpow(h.beta) as i128);
        Element {
            beta: h.beta,
            alpha: alpha.rem_euclid(m) as u64,
        }
    }

    pub fn commutator(&self, g: Element, h: Element) -> Element {
        self.mul(self.inverse(g), self.conj(g, h))
    }

    /// `g^sigma = b^(sigma beta) a^(alpha E(r^beta, sigma))`, with the `b`
    /// exponent reduced through `b^n = a^s`.
    pub fn power(&self, g: Element, sigma: i64) -> Element {
        if sigma < 0 {
            return self.power(self.inverse(g), -(sigma as i128) as i64);
        }
        let sigma = sigma as u64;
        let total = g.beta as u128 * sigma as u128;
        let q = (total / self.n as u128) % self.m as u128;
        let rho = (total % self.n as u128) as u64;
        let e = numth::geom_sum_mod(self.rpow(g.beta) as i64, sigma, self.m).value();
        let m = self.m as u128;
        let alpha = (self.s as u128 * q + g.alpha as u128 * e as u128) % m;
        Element {
            beta: rho,
            alpha: alpha as u64,
        }
    }

    pub fn order_of(&self, g: Element) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g(a,b;{},{},{},{})", self.m, self.n, self.r, self.s)
    }
}

/// Normal form `b^beta a^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub beta: u64,
    pub alpha: u64,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^{} a^{}", self.beta, self.alpha)
    }
}

/// Checks the Hölder conditions and the standing scope assumptions.
///
/// `s` is reduced into `[0, m)` first. Every violated condition is reported;
/// an even `m` yields [`Error::OutOfScope`] instead of [`Error::Validation`].
pub fn validate(m: i64, n: i64, r: i64, s: i64) -> Result<GroupParams> {
    let mut bad = Vec::new();
    if m < 3 {
        bad.push(Violation::ModulusTooSmall { m });
    }
    if m % 2 == 0 {
        bad.push(Violation::ModulusEven { m });
    }
    if n < 1 {
        bad.push(Violation::OrderNotPositive { n });
    }
    if m > PARAM_LIMIT || n > PARAM_LIMIT {
        bad.push(Violation::TooLarge {
            limit: PARAM_LIMIT,
        });
    }
    if m >= 1 && (r <= 1 || r >= m) {
        bad.push(Violation::ROutOfRange { r, m });
    }
    if m >= 2 && m <= PARAM_LIMIT && n >= 1 && n <= PARAM_LIMIT && r > 1 && r < m {
        let (mu, ru) = (m as u64, r as u64);
        if gcd(ru, mu) != 1 {
            bad.push(Violation::RNotCoprime { r, m });
        }
        if pow_mod(r, n as u64, mu) != 1 {
            bad.push(Violation::PowerCongruence { r, n, m });
        }
        let s_red = s.rem_euclid(m);
        if (s_red as i128 * (r as i128 - 1)) % m as i128 != 0 {
            bad.push(Violation::TwistCongruence { s: s_red, r, m });
        }
    }
    if !bad.is_empty() {
        return Err(if bad.iter().any(Violation::is_scope) {
            Error::OutOfScope(bad)
        } else {
            Error::Validation(bad)
        });
    }
    let (m, n, r) = (m as u64, n as u64, r as u64);
    let s = s.rem_euclid(m as i64) as u64;
    let mut rpow = Vec::with_capacity(n as usize);
    let mut p = 1 % m;
    for _ in 0..n {
        rpow.push(p);
        p = p * r % m;
    }
    Ok(GroupParams { m, n, r, s, rpow })
}

/// Every valid tuple with `|G| <= max_order`, ordered by `(m, n, r, s)`.
pub fn enumerate_tuples(max_order: u64, include_split_s0: bool) -> Vec<GroupParams> {
    let mut out = Vec::new();
    let mut m = 3;
    while m <= max_order {
        for n in 1..=max_order / m {
            for r in 2..m {
                for s in 0..m {
                    if s == 0 && !include_split_s0 {
                        continue;
                    }
                    if let Ok(p) = validate(m as i64, n as i64, r as i64, s as i64) {
                        out.push(p);
                    }
                }
            }
        }
        m += 2;
    }
    out
}

/// Closed-form order invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub order_g: u64,
    pub o_a: u64,
    pub o_b: u64,
    pub t_derived: u64,
    pub l: u64,
    pub oprime_a: u64,
    pub oprime_b: u64,
    pub k: u64,
    /// `|<a^t, b^l>|`
    pub center_order: u64,
}

/// Closed forms next to the values measured by enumerating `G`.
#[derive(Debug, Clone)]
pub struct BruteReport {
    pub closed: DerivedInvariants,
    pub measured: DerivedInvariants,
    pub mismatches: Vec<String>,
}

impl BruteReport {
    pub fn mismatch(&self) -> bool {
        !self.mismatches.is_empty()
    }
}

pub fn derived_invariants(p: &GroupParams) -> DerivedInvariants {
    let t = p.t_derived();
    let l = numth::mult_order(p.r as i64, p.m).expect("r is a unit");
    // Z(G) = { b^beta a^alpha : l | beta, t | alpha }; closed under products
    // because t | s and l | n
    DerivedInvariants {
        order_g: p.order(),
        o_a: p.order_a(),
        o_b: p.order_b(),
        t_derived: t,
        l,
        oprime_a: p.oprime_a(),
        oprime_b: p.oprime_b(),
        k: p.k(),
        center_order: (p.n / l) * (p.m / t),
    }
}

/// Subgroup generated by `gens`, as a set of normal forms.
pub fn generated_subgroup(p: &GroupParams, gens: &[Element]) -> HashSet<Element> {
    let mut seen = HashSet::from([p.identity()]);
    let mut frontier = vec![p.identity()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = p.mul(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn derived_subgroup(p: &GroupParams) -> HashSet<Element> {
    let els: Vec<_> = p.elements().collect();
    let comms: HashSet<_> = els
        .iter()
        .flat_map(|&g| els.iter().map(move |&h| (g, h)))
        .map(|(g, h)| p.commutator(g, h))
        .collect();
    let comms: Vec<_> = comms.into_iter().collect();
    generated_subgroup(p, &comms)
}

/// Order of `g G'` in `G/G'`.
pub fn order_mod(p: &GroupParams, g: Element, sub: &HashSet<Element>) -> u64 {
    let mut x = g;
    let mut k = 1;
    while !sub.contains(&x) {
        x = p.mul(x, g);
        k += 1;
    }
    k
}

/// Enumerates `G` and compares every closed form with the measured value.
pub fn brute_invariants(p: &GroupParams, bound: u64) -> Result<BruteReport> {
    if p.order() > bound {
        return Err(Error::Resource(format!(
            "|G| = {} exceeds enumeration bound {bound}",
            p.order()
        )));
    }
    let closed = derived_invariants(p);
    let els: Vec<_> = p.elements().collect();
    let derived = derived_subgroup(p);
    let center: HashSet<_> = els
        .iter()
        .copied()
        .filter(|&z| els.iter().all(|&g| p.mul(z, g) == p.mul(g, z)))
        .collect();
    let l = (1..=p.n)
        .find(|&beta| p.conj(p.a(), p.power(p.b(), beta as i64)) == p.a())
        .unwrap_or(0);
    let measured = DerivedInvariants {
        order_g: els.iter().collect::<HashSet<_>>().len() as u64,
        o_a: p.order_of(p.a()),
        o_b: p.order_of(p.b()),
        t_derived: derived.len() as u64,
        l,
        oprime_a: order_mod(p, p.a(), &derived),
        oprime_b: order_mod(p, p.b(), &derived),
        k: closed.k,
        center_order: center.len() as u64,
    };
    let mut mismatches = Vec::new();
    macro_rules! cmp {
        ($field:ident) => {
            if closed.$field != measured.$field {
                mismatches.push(format!(
                    "{}: closed form {} vs measured {}",
                    stringify!($field),
                    closed.$field,
                    measured.$field
                ));
            }
        };
    }
    cmp!(order_g);
    cmp!(o_a);
    cmp!(o_b);
    cmp!(t_derived);
    cmp!(l);
    cmp!(oprime_a);
    cmp!(oprime_b);
    cmp!(center_order);
    let closed_derived =
        generated_subgroup(p, &[p.power(p.a(), p.r as i64 - 1)]);
    if closed_derived != derived {
        mismatches.push("G' differs from <a^(r-1)>".into());
    }
    let t = closed.t_derived as i64;
    let closed_center =
        generated_subgroup(p, &[p.power(p.a(), t), p.power(p.b(), closed.l as i64)]);
    if closed_center != center {
        mismatches.push("Z(G) differs from <a^t, b^l>".into());
    }
    Ok(BruteReport {
        closed,
        measured,
        mismatches,
    })
}
