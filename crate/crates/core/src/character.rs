//! Multiplicative characters mod p.
//!
//! `χ_j(g^t) = ζ_{p-1}^{jt}` for the context's primitive root `g`, and
//! `χ_j(0) = 0`. Every character of a given `p` lives in the same ring
//! `ℤ[ζ_{p-1}]`, whatever its exact order.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cyclo::{check_order, unit_root, CycInt};
use crate::error::{Error, Result};
use crate::field::{gcd, FieldCtx, Subgroup};
use crate::value::{Mode, SumValue};

#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    ctx: &'a FieldCtx,
    index: u32,
    order: u32,
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.ctx.p() == other.ctx.p()
    }
}

impl Eq for Character<'_> {}

impl<'a> Character<'a> {
    pub fn new(ctx: &'a FieldCtx, index: u32) -> Result<Self> {
        let m = ctx.group_order();
        if index >= m {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                bound: m as u64,
            });
        }
        let order = m / gcd(index as u64, m as u64) as u32;
        Ok(Self { ctx, index, order })
    }

    pub fn principal(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, 0).expect("index 0")
    }

    /// The Legendre symbol.
    pub fn quadratic(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, ctx.group_order() / 2).expect("(p-1)/2 < p-1")
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// `p - 1`, the order of the shared root of unity.
    #[inline]
    pub fn root_order(&self) -> u32 {
        self.ctx.group_order()
    }

    /// The exponent `e` with `χ(x) = ζ_{p-1}^e`, or `None` when `x ≡ 0`.
    #[inline]
    pub fn exponent(&self, x: u32) -> Option<u32> {
        let t = self.ctx.dlog(x)?;
        Some((self.index as u64 * t as u64 % self.root_order() as u64) as u32)
    }

    pub fn eval_complex(&self, x: u32) -> Complex64 {
        match self.exponent(x) {
            Some(e) => unit_root(self.root_order() as u64, e as u64),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn eval_exact(&self, x: u32) -> Result<CycInt> {
        let m = self.root_order() as usize;
        check_order(m)?;
        Ok(match self.exponent(x) {
            Some(e) => CycInt::root(m, e as u64),
            None => CycInt::zero(m),
        })
    }

    pub fn eval(&self, x: u32, mode: Mode) -> Result<SumValue> {
        Ok(match mode {
            Mode::Exact => SumValue::Exact(self.eval_exact(x)?),
            Mode::Numeric => SumValue::Numeric(self.eval_complex(x)),
        })
    }

    /// `χ̄`, index `-j mod (p-1)`.
    pub fn conjugate(&self) -> Self {
        let m = self.root_order();
        Self::new(self.ctx, (m - self.index) % m).expect("reduced index")
    }

    /// `χ^k`.
    pub fn pow(&self, k: u64) -> Self {
        let m = self.root_order() as u64;
        Self::new(self.ctx, (self.index as u64 * (k % m) % m) as u32).expect("reduced index")
    }

    pub fn mul(&self, other: &Character<'a>) -> Self {
        let m = self.root_order();
        Self::new(self.ctx, (self.index + other.index) % m).expect("reduced index")
    }

    /// True when `χ` is identically 1 on `H`.
    pub fn is_trivial_on(&self, h: &Subgroup) -> bool {
        self.index.is_multiple_of(h.order())
    }
}

/// All `p - 1` characters, index ascending.
pub fn all_characters(ctx: &FieldCtx) -> impl Iterator<Item = Character<'_>> + '_ {
    (0..ctx.group_order()).map(move |j| Character::new(ctx, j).expect("in range"))
}

/// The `k = [F_p* : H]` characters with `ψ^k = χ₀`, i.e. those trivial on `H`.
/// Their average is the indicator function of `H`.
pub fn subgroup_character_decomposition<'a>(ctx: &'a FieldCtx, h: &Subgroup) -> Vec<Character<'a>> {
    (0..h.index())
        .map(|i| Character::new(ctx, i * h.order()).expect("multiple of |H| below p-1"))
        .collect()
}
