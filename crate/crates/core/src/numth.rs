//! Exact number theory for small moduli.
//!
//! gcd/lcm follow the zero conventions used throughout the crate:
//! `gcd(x, 0) = x`, `gcd(0, 0) = 0` and `lcm(0, x) = 0`.

use crate::error::{Error, Result};
use crate::metagrp::GroupParams;

/// A residue class `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModClass {
    value: u64,
    modulus: u64,
}

impl ModClass {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let v = value.rem_euclid(modulus as i128) as u64;
        ModClass { value: v, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn gcd_all(xs: &[u64]) -> Result<u64> {
    if xs.is_empty() {
        return Err(Error::Usage("gcd of an empty sequence".into()));
    }
    Ok(xs.iter().fold(0, |g, &x| gcd(g, x)))
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn reduce(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

pub fn pow_mod(base: i64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1);
    if modulus == 1 {
        return 0;
    }
    let mut b = reduce(base, modulus);
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    acc
}

pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Least `l >= 1` with `r^l = 1 (mod m)`.
pub fn mult_order(r: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Usage(format!("modulus {m} must be at least 2")));
    }
    if gcd(reduce(r, m), m) != 1 {
        return Err(Error::Domain(format!("{r} is not a unit modulo {m}")));
    }
    let base = reduce(r, m);
    let mut p = base;
    let mut l = 1;
    while p != 1 {
        p = mul_mod(p, base, m);
        l += 1;
    }
    Ok(l)
}

/// `1 + r + ... + r^(x-1) mod modulus`, division free.
pub fn geom_sum_mod(r: i64, x: u64, modulus: u64) -> ModClass {
    assert!(modulus >= 1);
    let rr = reduce(r, modulus);
    // (sum, r^len) for the prefix of x read from the top bit down
    let (mut sum, mut pw) = (0u64, 1 % modulus);
    for bit in (0..64 - x.leading_zeros()).rev() {
        sum = mul_mod(sum, (1 + pw) % modulus, modulus);
        pw = mul_mod(pw, pw, modulus);
        if (x >> bit) & 1 == 1 {
            sum = (sum + pw) % modulus;
            pw = mul_mod(pw, rr, modulus);
        }
    }
    ModClass { value: sum, modulus }
}

/// The geometric sum extended to negative exponents via
/// `E(r, x) = -r^x E(r, -x)`; requires `r` invertible when `x < 0`.
pub fn geom_sum_signed_mod(r: i64, x: i64, modulus: u64) -> Result<ModClass> {
    if x >= 0 {
        return Ok(geom_sum_mod(r, x as u64, modulus));
    }
    if modulus == 1 {
        return Ok(ModClass::new(0, 1));
    }
    let inv = mod_inverse(r, modulus)
        .ok_or_else(|| Error::Domain(format!("{r} is not a unit modulo {modulus}")))?;
    let k = x.unsigned_abs();
    let rx = pow_mod(inv as i64, k, modulus);
    let e = geom_sum_mod(r, k, modulus).value();
    Ok(ModClass::new(-(mul_mod(rx, e, modulus) as i128), modulus))
}

/// `binom(x, 2) mod modulus`, where only `x mod 2*modulus` is needed.
pub fn binom2_mod(x: i128, modulus: u64) -> u64 {
    let two_m = 2 * modulus as i128;
    let x = x.rem_euclid(two_m);
    ((x * (x - 1) / 2).rem_euclid(modulus as i128)) as u64
}

/// The gcd constant bounding the orders of the tensor-square generators.
pub fn capital_k(p: &GroupParams) -> u64 {
    let (m, n, r, s) = (p.m(), p.n(), p.r(), p.s());
    let ms = gcd(m, s);
    let q = lcm(s, r - 1);
    let head = gcd(gcd(m / ms, 2 * q / ms), n * (q / ms) * (q / ms));
    let e = geom_sum_mod(r as i64, p.order_b(), head).value();
    gcd(head, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sum(r: u64, x: u64, m: u64) -> u64 {
        let mut s = 0u64;
        let mut p = 1 % m;
        for _ in 0..x {
            s = (s + p) % m;
            p = p * r % m;
        }
        s
    }

    #[test]
    fn gcd_conventions() {
        assert_eq!(gcd_all(&[0, 0]).unwrap(), 0);
        assert_eq!(gcd_all(&[9, 3, 21]).unwrap(), 3);
        assert_eq!(gcd_all(&[1, 0, 0, 87381]).unwrap(), 1);
        assert!(matches!(gcd_all(&[]), Err(Error::Usage(_))));
        assert_eq!(lcm(0, 7), 0);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(gcd(7, 0), 7);
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(4, 9).unwrap(), 3);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(1, 15).unwrap(), 1);
        assert!(matches!(mult_order(3, 9), Err(Error::Domain(_))));
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(geom_sum_mod(2, 3, 1000).value(), 7);
        assert_eq!(geom_sum_mod(5, 0, 11).value(), 0);
        assert_eq!(geom_sum_mod(1, 13, 100).value(), 13);
        // 4^0 + ... + 4^8 = 87381
        assert_eq!(geom_sum_mod(4, 9, 1_000_000).value(), 87381);
        assert_eq!(geom_sum_mod(4, 9, 9).value(), 0);
    }

    #[test]
    fn geometric_sum_matches_loop() {
        for r in 0..50u64 {
            for x in 0..200u64 {
                for m in 1..100u64 {
                    assert_eq!(
                        geom_sum_mod(r as i64, x, m).value(),
                        naive_sum(r, x, m),
                        "r={r} x={x} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn negative_branch() {
        // E(r, -x) * r^x * (-1) ... check E(r,-x) + r^{-x} E(r,x) = 0 mod m
        for m in [7u64, 9, 15] {
            for r in 2..m as i64 {
                if gcd(r as u64, m) != 1 {
                    continue;
                }
                for x in 1..10i64 {
                    let neg = geom_sum_signed_mod(r, -x, m).unwrap().value();
                    // r^x * E(r,-x) = -E(r,x)
                    let lhs = mul_mod(pow_mod(r, x as u64, m), neg, m);
                    let rhs = ModClass::new(-(geom_sum_mod(r, x as u64, m).value() as i128), m);
                    assert_eq!(lhs, rhs.value());
                }
            }
        }
        assert!(geom_sum_signed_mod(3, -2, 9).is_err());
    }

    #[test]
    fn binomials() {
        for x in -40i128..40 {
            for m in 1..12u64 {
                let exact = (x * (x - 1) / 2).rem_euclid(m as i128) as u64;
                assert_eq!(binom2_mod(x, m), exact);
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -30i128..30 {
            for b in -30i128..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(g, gcd_i128(a, b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }
}
