use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::transform::cyclic_correlation;
use super::{check_residues, require_nonprincipal, RootAcc};
use crate::character::Character;
use crate::cyclo::{check_order, unit_root, CycInt};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Subgroup};
use crate::value::{Mode, SumValue};

/// `Σ_{x∈D} χ(x + a)`.
pub fn shifted_sum(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    set: &[u32],
    a: u32,
    mode: Mode,
) -> Result<SumValue> {
    check_residues(set, ctx.p())?;
    let mut acc = RootAcc::new(ctx.group_order() as usize, mode)?;
    for &x in set {
        acc.push(chi.exponent(ctx.add(x, a)));
    }
    Ok(acc.finish())
}

/// `Σ_{x∈D} χ(x + a)` for every `a ∈ [0, p)`.
///
/// Exact mode is the direct double loop. Numeric mode is one length-`p`
/// cyclic correlation of the indicator of `D` against the value table of `χ`.
pub fn shifted_sum_all(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    set: &[u32],
    mode: Mode,
) -> Result<Vec<SumValue>> {
    check_residues(set, ctx.p())?;
    match mode {
        Mode::Exact => {
            let m = ctx.group_order() as usize;
            check_order(m)?;
            Ok((0..ctx.p())
                .map(|a| {
                    let mut z = CycInt::zero(m);
                    for &x in set {
                        if let Some(e) = chi.exponent(ctx.add(x, a)) {
                            z.add_root(e as u64, 1);
                        }
                    }
                    SumValue::Exact(z)
                })
                .collect())
        }
        Mode::Numeric => Ok(shifted_sum_all_complex(ctx, chi, set)?
            .into_iter()
            .map(SumValue::Numeric)
            .collect()),
    }
}

/// Numeric batch kernel behind [`shifted_sum_all`].
pub fn shifted_sum_all_complex(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    set: &[u32],
) -> Result<Vec<Complex64>> {
    check_residues(set, ctx.p())?;
    let p = ctx.p() as usize;
    let m = ctx.group_order() as u64;
    let mut indicator = vec![Complex64::new(0.0, 0.0); p];
    for &x in set {
        indicator[x as usize] += 1.0;
    }
    let mut table = vec![Complex64::new(0.0, 0.0); p];
    let j = chi.index() as u64;
    for (t, &v) in ctx.exp_table().iter().enumerate() {
        table[v as usize] = unit_root(m, j * t as u64 % m);
    }
    Ok(cyclic_correlation(&indicator, &table))
}

/// `Σ_{x∈H} χ(x(x + a))`.
pub fn nonlinear_sum_xxa(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    a: u32,
    mode: Mode,
) -> Result<SumValue> {
    require_nonprincipal(chi)?;
    if a.is_multiple_of(ctx.p()) {
        return Err(Error::ShiftNotCoprime(a as u64));
    }
    let mut acc = RootAcc::new(ctx.group_order() as usize, mode)?;
    for &x in h.elements() {
        acc.push(chi.exponent(ctx.mul(x, ctx.add(x, a))));
    }
    Ok(acc.finish())
}

/// `Σ_{x∈H} χ((x + a)(x + b))` with `ab(a - b) ≢ 0`.
pub fn shifted_product_sum(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    a: u32,
    b: u32,
    mode: Mode,
) -> Result<SumValue> {
    let degenerate = ctx.mul(ctx.mul(a, b), ctx.sub(a, b)) == 0;
    if degenerate {
        return Err(Error::DegenerateShifts {
            a: a as u64,
            b: b as u64,
        });
    }
    let mut acc = RootAcc::new(ctx.group_order() as usize, mode)?;
    for &x in h.elements() {
        acc.push(chi.exponent(ctx.mul(ctx.add(x, a), ctx.add(x, b))));
    }
    Ok(acc.finish())
}

/// `S_{y,y₁} = Σ_{x=0}^{p-1} χ(xy + a)·χ̄(xy₁ + a)`, exactly.
pub fn proof_kernel_s_yy1(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    y: u32,
    y1: u32,
    a: u32,
) -> Result<SumValue> {
    require_nonprincipal(chi)?;
    if a.is_multiple_of(ctx.p()) {
        return Err(Error::ShiftNotCoprime(a as u64));
    }
    let m = ctx.group_order();
    check_order(m as usize)?;
    let mut z = CycInt::zero(m as usize);
    for x in 0..ctx.p() {
        let first = chi.exponent(ctx.add(ctx.mul(x, y), a));
        let second = chi.exponent(ctx.add(ctx.mul(x, y1), a));
        if let (Some(e1), Some(e2)) = (first, second) {
            z.add_root((e1 + m - e2) as u64, 1);
        }
    }
    Ok(SumValue::Exact(z))
}
