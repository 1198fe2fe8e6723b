//! Exact arithmetic in the cyclotomic ring `ℤ[ζ_m]`.
//!
//! Elements are stored unreduced as `Σ c_i ζ^i` with `0 <= i < m`. Ring
//! operations stay in that representation; equality and integrality reduce the
//! difference modulo `Φ_m`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::divisors;

/// Largest root order supported in exact mode.
pub const MAX_EXACT_ORDER: usize = 10_000;

pub(crate) fn check_order(m: usize) -> Result<()> {
    if m > MAX_EXACT_ORDER {
        return Err(Error::CapacityExceeded {
            what: "root order m",
            value: m as u64,
            limit: MAX_EXACT_ORDER as u64,
        });
    }
    Ok(())
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The cyclotomic polynomial `Φ_m`, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    m: usize,
    coeffs: Vec<i128>,
}

/// Computes `Φ_m(x) = Π_{d|m} (x^d - 1)^{μ(m/d)}`.
pub fn cyclotomic_poly(m: usize) -> Result<CycPoly> {
    if m == 0 {
        return Err(Error::BadModulus(0));
    }
    check_order(m)?;
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for d in divisors(m as u64) {
        match mobius(m as u64 / d) {
            1 => numer.push(d as usize),
            -1 => denom.push(d as usize),
            _ => {}
        }
    }
    let mut poly = vec![1i128];
    for d in numer {
        // poly * (x^d - 1)
        let mut next = vec![0i128; poly.len() + d];
        for (i, &c) in poly.iter().enumerate() {
            next[i] -= c;
            next[i + d] += c;
        }
        poly = next;
    }
    for d in denom {
        // exact quotient by (x^d - 1): f_i = q_{i-d} - q_i
        let qlen = poly.len() - d;
        let mut q = vec![0i128; qlen];
        for i in 0..qlen {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - poly[i];
        }
        poly = q;
    }
    Ok(CycPoly { m, coeffs: poly })
}

impl CycPoly {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `φ(m)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Remainder of `poly` modulo `Φ_m`, of length `degree()`.
    pub fn reduce(&self, poly: &[i128]) -> Vec<i128> {
        let deg = self.degree();
        let mut rem: Vec<i128> = poly.to_vec();
        if rem.len() < deg {
            rem.resize(deg, 0);
            return rem;
        }
        let support: Vec<(usize, i128)> = self.coeffs[..deg]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for top in (deg..rem.len()).rev() {
            let lead = rem[top];
            if lead == 0 {
                continue;
            }
            rem[top] = 0;
            let base = top - deg;
            for &(i, c) in &support {
                rem[base + i] = lead
                    .checked_mul(c)
                    .and_then(|t| rem[base + i].checked_sub(t))
                    .expect("cyclotomic reduction overflowed i128");
            }
        }
        rem.truncate(deg);
        rem
    }
}

/// An element of `ℤ[ζ_m]`.
#[derive(Clone)]
pub struct CycInt {
    m: usize,
    coeffs: Vec<i128>,
}

impl CycInt {
    pub fn zero(m: usize) -> Self {
        assert!(m > 0, "root order must be positive");
        Self {
            m,
            coeffs: vec![0; m],
        }
    }

    pub fn from_int(m: usize, c: i128) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = c;
        z
    }

    pub fn one(m: usize) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^k`.
    pub fn root(m: usize, k: u64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[(k % m as u64) as usize] = 1;
        z
    }

    /// Builds `Σ c_i ζ^i`; indices past `m` wrap around.
    pub fn from_coeffs(m: usize, coeffs: &[i128]) -> Self {
        let mut z = Self::zero(m);
        for (i, &c) in coeffs.iter().enumerate() {
            z.coeffs[i % m] += c;
        }
        z
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Unreduced coefficients, length `m`.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Adds `c·ζ^k` in place.
    #[inline]
    pub fn add_root(&mut self, k: u64, c: i128) {
        let i = (k % self.m as u64) as usize;
        self.coeffs[i] += c;
    }

    /// Adds `other·ζ^shift` in place.
    pub fn add_rotated(&mut self, other: &CycInt, shift: u64) {
        assert_eq!(self.m, other.m, "mixed root orders");
        let m = self.m;
        let s = (shift % m as u64) as usize;
        for (i, &c) in other.coeffs.iter().enumerate() {
            if c != 0 {
                let j = if i + s >= m { i + s - m } else { i + s };
                self.coeffs[j] += c;
            }
        }
    }

    /// Adds `a·b` in place without allocating.
    pub fn add_product(&mut self, a: &CycInt, b: &CycInt) {
        assert!(self.m == a.m && a.m == b.m, "mixed root orders");
        let m = self.m;
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    let k = if i + j >= m { i + j - m } else { i + j };
                    self.coeffs[k] += x * y;
                }
            }
        }
    }

    /// Adds `|a|² = a·conj(a)` in place.
    pub fn add_abs_squared(&mut self, a: &CycInt) {
        assert_eq!(self.m, a.m, "mixed root orders");
        let m = self.m;
        let support: Vec<(usize, i128)> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for &(i, x) in &support {
            for &(j, y) in &support {
                let k = if i >= j { i - j } else { i + m - j };
                self.coeffs[k] += x * y;
            }
        }
    }

    pub fn scale(&self, c: i128) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<Self> {
        self.same_order(other)?;
        let mut out = Self::zero(self.m);
        out.add_product(self, other);
        Ok(out)
    }

    fn same_order(&self, other: &CycInt) -> Result<()> {
        if self.m != other.m {
            return Err(Error::MixedOrder {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    /// Complex conjugate: `ζ^i ↦ ζ^{-i}`.
    pub fn conj(&self) -> Self {
        let m = self.m;
        let mut coeffs = vec![0; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - i) % m] = c;
        }
        Self { m, coeffs }
    }

    pub fn abs_squared(&self) -> Self {
        let mut out = Self::zero(self.m);
        out.add_abs_squared(self);
        out
    }

    /// True when every stored coefficient is zero (no reduction).
    pub fn is_trivially_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Canonical coordinates in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
    pub fn reduced(&self) -> Vec<i128> {
        let phi = cyclotomic_poly(self.m).expect("root order within capacity");
        self.reduced_with(&phi)
    }

    pub fn reduced_with(&self, phi: &CycPoly) -> Vec<i128> {
        assert_eq!(phi.m(), self.m, "mixed root orders");
        phi.reduce(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.is_trivially_zero() || self.reduced().iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            return Some(self.coeffs[0]);
        }
        let phi = cyclotomic_poly(self.m).ok()?;
        self.as_integer_with(&phi)
    }

    pub fn as_integer_with(&self, phi: &CycPoly) -> Option<i128> {
        let r = self.reduced_with(phi);
        if r[1..].iter().all(|&c| c == 0) {
            Some(r[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| unit_root(self.m as u64, i as u64) * c as f64)
            .sum()
    }
}

/// `e^{2πi k/m}`, with the angle reduced into `[0, 2π)` first.
pub fn unit_root(m: u64, k: u64) -> Complex64 {
    let k = k % m;
    let theta = core::f64::consts::TAU * (k as f64 / m as f64);
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        if self.m != other.m {
            return false;
        }
        if self.coeffs == other.coeffs {
            return true;
        }
        self.try_sub(other).expect("same order").is_zero()
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(m={}, ", self.m)?;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}·ζ^{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.m, rhs.m, "mixed root orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycInt> for CycInt {
    fn sub_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.m, rhs.m, "mixed root orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("mixed root orders")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("mixed root orders")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("mixed root orders")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(mut self, rhs: CycInt) -> CycInt {
        self += &rhs;
        self
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(mut self, rhs: CycInt) -> CycInt {
        self -= &rhs;
        self
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}
