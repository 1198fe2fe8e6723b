//! Prime-field context: primitive root, discrete-log tables and the lattice of
//! subgroups of `F_p*`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest prime for which the discrete-log tables are built.
pub const MAX_TABLE_PRIME: u64 = 10_000_000;

const DLOG_UNDEFINED: u32 = u32::MAX;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sorted divisors of `n` (which must be positive).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Precomputed context for the prime field `F_p`.
///
/// Immutable once built; share it freely across threads.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    g: u32,
    dlog: Vec<u32>,
    exp: Vec<u32>,
    divisors: Vec<u32>,
    factorization: Vec<(u32, u32)>,
}

impl FieldCtx {
    /// Builds the tables for an odd prime `p <= MAX_TABLE_PRIME`, using the
    /// smallest primitive root.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::NotOddPrime(p));
        }
        if p > MAX_TABLE_PRIME {
            return Err(Error::CapacityExceeded {
                what: "p",
                value: p,
                limit: MAX_TABLE_PRIME,
            });
        }
        if !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let order = p - 1;
        let factorization = factorize(order);
        let g = (2..p)
            .find(|&c| {
                factorization
                    .iter()
                    .all(|&(q, _)| pow_mod(c, order / q, p) != 1)
            })
            .expect("every prime has a primitive root");

        let mut exp = Vec::with_capacity(order as usize);
        let mut dlog = alloc::vec![DLOG_UNDEFINED; p as usize];
        let mut x = 1u64;
        for t in 0..order {
            exp.push(x as u32);
            dlog[x as usize] = t as u32;
            x = x * g % p;
        }

        Ok(Self {
            p: p as u32,
            g: g as u32,
            dlog,
            exp,
            divisors: divisors(order).into_iter().map(|d| d as u32).collect(),
            factorization: factorization
                .into_iter()
                .map(|(q, e)| (q as u32, e))
                .collect(),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// `p - 1`, the order of `F_p*`.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.p - 1
    }

    /// The primitive root the tables are built on.
    #[inline]
    pub fn generator(&self) -> u32 {
        self.g
    }

    /// Discrete log of `x` base `g`; `None` for `x ≡ 0`.
    #[inline]
    pub fn dlog(&self, x: u32) -> Option<u32> {
        match self.dlog[(x % self.p) as usize] {
            DLOG_UNDEFINED => None,
            t => Some(t),
        }
    }

    /// `g^t mod p`, `t` taken modulo `p - 1`.
    #[inline]
    pub fn exp(&self, t: u64) -> u32 {
        self.exp[(t % (self.p as u64 - 1)) as usize]
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Sorted divisors of `p - 1`.
    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    /// Prime factorization of `p - 1`.
    pub fn factorization(&self) -> &[(u32, u32)] {
        &self.factorization
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        ((x as u64 % p + p - y as u64 % p) % p) as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        (x as u64 * y as u64 % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.sub(0, x)
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        pow_mod(x as u64, e, self.p as u64) as u32
    }

    /// The modular inverse `x*` with `x·x* ≡ 1`.
    pub fn inverse(&self, x: u32) -> Result<u32> {
        let t = self.dlog(x).ok_or(Error::ZeroInverse)?;
        Ok(self.exp((self.group_order() - t) as u64))
    }

    /// Reduces `x` into `[0, p)`.
    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// The subgroup of the given order, which must divide `p - 1`.
    pub fn subgroup(&self, order: u32) -> Result<Subgroup> {
        if order == 0 || !self.group_order().is_multiple_of(order) {
            return Err(Error::NotASubgroupOrder(order as u64));
        }
        let index = self.group_order() / order;
        let mut elements: Vec<u32> = (0..order)
            .map(|i| self.exp(i as u64 * index as u64))
            .collect();
        elements.sort_unstable();
        Ok(Subgroup {
            order,
            index,
            generator: self.exp(index as u64),
            elements,
        })
    }

    /// One subgroup per divisor of `p - 1`, by ascending order.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        self.divisors
            .iter()
            .map(|&d| self.subgroup(d).expect("divisor of p-1"))
            .collect()
    }

    /// The subgroup whose order is closest to `√p`, ties going to the larger.
    pub fn subgroup_near_sqrt(&self) -> Subgroup {
        let root = libm::sqrt(self.p as f64);
        let mut best = self.divisors[0];
        for &d in &self.divisors[1..] {
            let (db, dd) = (libm::fabs(best as f64 - root), libm::fabs(d as f64 - root));
            if dd <= db {
                best = d;
            }
        }
        self.subgroup(best).expect("divisor of p-1")
    }
}

/// A subgroup `H < F_p*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    order: u32,
    index: u32,
    generator: u32,
    elements: Vec<u32>,
}

impl Subgroup {
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `k = (p - 1) / |H|`.
    #[inline]
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Sorted residues of `H`.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_tables() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(ctx.generator(), 3);
        assert_eq!(ctx.dlog(2), Some(2));
        assert_eq!(ctx.dlog(0), None);

        let ctx = FieldCtx::new(5).unwrap();
        assert_eq!(ctx.generator(), 2);
        assert_eq!(ctx.exp_table(), &[1, 2, 4, 3]);
    }

    #[test]
    fn smallest_primitive_root_matches_brute_force() {
        for p in (3..400u64).filter(|&p| is_prime(p)) {
            let brute = (2..p)
                .find(|&c| {
                    let mut x = c;
                    let mut ord = 1;
                    while x != 1 {
                        x = x * c % p;
                        ord += 1;
                    }
                    ord == p - 1
                })
                .unwrap();
            assert_eq!(
                FieldCtx::new(p).unwrap().generator() as u64,
                brute,
                "p = {p}"
            );
        }
    }

    #[test]
    fn rejects_non_odd_primes() {
        for bad in [0, 1, 2, 4, 9, 15, 561] {
            assert_eq!(FieldCtx::new(bad).unwrap_err(), Error::NotOddPrime(bad));
        }
        assert!(matches!(
            FieldCtx::new(10_000_019),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        assert!(is_prime(1_000_003));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn dlog_round_trip() {
        for p in [3u64, 5, 7, 101, 9973, 10007] {
            let ctx = FieldCtx::new(p).unwrap();
            for x in 1..p as u32 {
                assert_eq!(ctx.exp(ctx.dlog(x).unwrap() as u64), x);
            }
            for t in 0..ctx.group_order() {
                assert_eq!(ctx.dlog(ctx.exp(t as u64)), Some(t));
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        let ctx = FieldCtx::new(9973).unwrap();
        for &(q, _) in ctx.factorization() {
            assert_ne!(ctx.pow(ctx.generator(), (ctx.group_order() / q) as u64), 1);
        }
    }

    #[test]
    fn subgroup_lattice() {
        let ctx = FieldCtx::new(7).unwrap();
        let orders: Vec<u32> = ctx.subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 2, 3, 6]);
        assert_eq!(ctx.subgroup(3).unwrap().elements(), &[1, 2, 4]);
        assert_eq!(ctx.subgroup(4), Err(Error::NotASubgroupOrder(4)));

        let ctx = FieldCtx::new(3).unwrap();
        let orders: Vec<u32> = ctx.subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 2]);
    }

    #[test]
    fn subgroups_closed_under_mul_and_inverse() {
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            let ctx = FieldCtx::new(p).unwrap();
            let subs = ctx.subgroups();
            assert_eq!(subs.len(), divisors(p - 1).len());
            for h in &subs {
                assert!(h.contains(1));
                assert_eq!(h.elements().len(), h.order() as usize);
                for &x in h.elements() {
                    assert!(h.contains(ctx.inverse(x).unwrap()));
                    for &y in h.elements() {
                        assert!(h.contains(ctx.mul(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn near_sqrt_choice() {
        assert_eq!(FieldCtx::new(7).unwrap().subgroup_near_sqrt().order(), 3);
        assert_eq!(FieldCtx::new(5).unwrap().subgroup_near_sqrt().order(), 2);
        assert_eq!(FieldCtx::new(3).unwrap().subgroup_near_sqrt().order(), 2);
    }

    #[test]
    fn inverses() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(ctx.inverse(3), Ok(5));
        assert_eq!(ctx.inverse(1), Ok(1));
        assert_eq!(ctx.inverse(0), Err(Error::ZeroInverse));
    }
}
