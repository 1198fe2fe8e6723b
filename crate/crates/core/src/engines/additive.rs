//! Sums of additive characters `e_q(x) = e^{2πi x/q}`.

use num_complex::Complex64;

use super::{check_residues, RootAcc};
use crate::cyclo::unit_root;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Subgroup};
use crate::value::{Mode, SumValue};

fn nonzero(ctx: &FieldCtx, v: u32, name: &'static str) -> Result<()> {
    if v.is_multiple_of(ctx.p()) {
        Err(Error::ZeroParameter(name))
    } else {
        Ok(())
    }
}

/// `Σ_{x∈H} e_p(kx + l·x*)`. Numeric only: additive characters live in
/// `ℤ[ζ_p]`, not in the ring the multiplicative characters share.
pub fn kloosterman_over_h(ctx: &FieldCtx, h: &Subgroup, k: u32, l: u32) -> Result<SumValue> {
    nonzero(ctx, k, "k")?;
    nonzero(ctx, l, "l")?;
    let p = ctx.p() as u64;
    let sum: Complex64 = h
        .elements()
        .iter()
        .map(|&x| {
            let inv = ctx.inverse(x).expect("subgroup elements are units");
            let arg = ctx.add(ctx.mul(k, x), ctx.mul(l, inv));
            unit_root(p, arg as u64)
        })
        .sum();
    Ok(SumValue::Numeric(sum))
}

/// `Σ_{x∈H, x≠-a} e_p(k·(x + a)*)`. Numeric only.
pub fn inverse_shift_sum(ctx: &FieldCtx, h: &Subgroup, k: u32, a: u32) -> Result<SumValue> {
    nonzero(ctx, k, "k")?;
    nonzero(ctx, a, "a")?;
    let p = ctx.p() as u64;
    let sum: Complex64 = h
        .elements()
        .iter()
        .filter_map(|&x| ctx.inverse(ctx.add(x, a)).ok())
        .map(|inv| unit_root(p, ctx.mul(k, inv) as u64))
        .sum();
    Ok(SumValue::Numeric(sum))
}

/// `Σ_{x∈D} e_q(ax)` over `ℤ/qℤ`; exact mode works in `ℤ[ζ_q]`.
pub fn exp_sum_subset(q: u32, set: &[u32], a: u32, mode: Mode) -> Result<SumValue> {
    if q < 2 {
        return Err(Error::BadModulus(q as u64));
    }
    check_residues(set, q)?;
    let mut acc = RootAcc::new(q as usize, mode)?;
    for &x in set {
        acc.push(Some((a as u64 * x as u64 % q as u64) as u32));
    }
    Ok(acc.finish())
}
