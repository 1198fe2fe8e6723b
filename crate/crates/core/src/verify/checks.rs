use alloc::vec::Vec;

use super::{Claim, Params, Quantity, Verdict, TOLERANCE};
use crate::character::{all_characters, Character};
use crate::cyclo::{check_order, cyclotomic_poly, CycInt, CycPoly};
use crate::engines::{
    bilinear_s, bilinear_s_prime, exp_sum_subset, nonlinear_sum_xxa, proof_kernel_s_yy1,
    shifted_sum, shifted_sum_all, Weights,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Subgroup};
use crate::value::{Mode, SumValue};

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

fn params(ctx: &FieldCtx, chi: Option<&Character<'_>>, h: Option<&Subgroup>) -> Params {
    Params {
        chi: chi.map(Character::index),
        h_order: h.map(Subgroup::order),
        ..Params::new(ctx.p())
    }
}

fn require_nonprincipal(chi: &Character<'_>) -> Result<()> {
    if chi.is_principal() {
        Err(Error::PrincipalCharacter)
    } else {
        Ok(())
    }
}

fn normalized_set(set: &[u32]) -> Vec<u32> {
    let mut d = set.to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

/// Verdict for an exact identity `computed == target`.
fn identity_verdict(
    claim: Claim,
    params: Params,
    computed: Option<i128>,
    fallback: f64,
    target: i128,
) -> Verdict {
    let (computed, margin, pass) = match computed {
        Some(n) => (Quantity::Integer(n), (target - n) as f64, n == target),
        None => (Quantity::Real(fallback), target as f64 - fallback, false),
    };
    Verdict {
        claim,
        params,
        mode: Mode::Exact,
        computed,
        target: Quantity::Integer(target),
        margin,
        pass,
        vacuous: false,
    }
}

/// Verdict for `computed ≤ bound` (or `<` with the tolerance taken against
/// the claim when `strict`).
fn bound_verdict(
    claim: Claim,
    params: Params,
    mode: Mode,
    computed: f64,
    bound: f64,
    strict: bool,
) -> Verdict {
    let pass = if strict {
        computed < bound - TOLERANCE
    } else {
        computed <= bound + TOLERANCE
    };
    Verdict {
        claim,
        params,
        mode,
        computed: Quantity::Real(computed),
        target: Quantity::Real(bound),
        margin: bound - computed,
        pass,
        vacuous: false,
    }
}

/// `(argmax, max)` of `|S(a)|` over `a ∈ F_p*`.
fn max_shift_abs(values: &[SumValue]) -> (u32, f64) {
    values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(a, v)| (a as u32, v.abs()))
        .fold((1, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

/// `max_{a∈F_p*} |Σ_{x∈H} χ(x+a)| < √p`.
pub fn check_theorem2(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    mode: Mode,
) -> Result<Verdict> {
    require_nonprincipal(chi)?;
    let values = shifted_sum_all(ctx, chi, h.elements(), mode)?;
    let (a, max) = max_shift_abs(&values);
    let mut prm = params(ctx, Some(chi), Some(h));
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::ShiftedBound,
        prm,
        mode,
        max,
        sqrt(ctx.p() as f64),
        true,
    ))
}

/// For every `a ≠ 0`, `|Σ_{x∈H} χ(x+a)|² ≤ (p|H| - |Σ_{x∈H} χ(x)|²)/|H|`.
/// Reports the worst shift.
pub fn check_sharpened_theorem2(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    mode: Mode,
) -> Result<Verdict> {
    require_nonprincipal(chi)?;
    let values = shifted_sum_all(ctx, chi, h.elements(), mode)?;
    let abs_sq = |v: &SumValue| match v {
        SumValue::Exact(z) => z.abs_squared().to_complex().re,
        SumValue::Numeric(z) => z.norm_sqr(),
    };
    let inner = abs_sq(&values[0]);
    let n = h.order() as f64;
    let bound = (ctx.p() as f64 * n - inner) / n;
    let (a, worst) = values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(a, v)| (a as u32, abs_sq(v)))
        .fold((1, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let mut prm = params(ctx, Some(chi), Some(h));
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::SharpenedBound,
        prm,
        mode,
        worst,
        bound,
        false,
    ))
}

/// `max_{a≠0} |Σ_{x∈H} χ(x+a)| < p^{-ε}|H|` whenever `|H| > p^{1/2+ε}`;
/// vacuous otherwise.
pub fn check_eps_corollary(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    eps: f64,
    mode: Mode,
) -> Result<Verdict> {
    require_nonprincipal(chi)?;
    let p = ctx.p() as f64;
    let n = h.order() as f64;
    let bound = libm::pow(p, -eps) * n;
    let mut prm = params(ctx, Some(chi), Some(h));
    prm.eps = Some(eps);
    if n <= libm::pow(p, 0.5 + eps) {
        return Ok(Verdict {
            claim: Claim::EpsCorollary,
            params: prm,
            mode,
            computed: Quantity::Real(n),
            target: Quantity::Real(libm::pow(p, 0.5 + eps)),
            margin: 0.0,
            pass: true,
            vacuous: true,
        });
    }
    let values = shifted_sum_all(ctx, chi, h.elements(), mode)?;
    let (a, max) = max_shift_abs(&values);
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::EpsCorollary,
        prm,
        mode,
        max,
        bound,
        true,
    ))
}

/// `Σ_{a∈F_p} |Σ_{x∈D} χ(x+a)|² = p|D| - |D|²`, exactly.
pub fn check_eq2_identity(ctx: &FieldCtx, chi: &Character<'_>, set: &[u32]) -> Result<Verdict> {
    require_nonprincipal(chi)?;
    let d = normalized_set(set);
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    if d[0] == 0 {
        return Err(Error::ZeroInD);
    }
    let m = ctx.group_order() as usize;
    check_order(m)?;
    let mut total = CycInt::zero(m);
    for a in 0..ctx.p() {
        let s = shifted_sum(ctx, chi, &d, a, Mode::Exact)?;
        total.add_abs_squared(s.as_exact().expect("exact mode"));
    }
    let size = d.len() as i128;
    let target = ctx.p() as i128 * size - size * size;
    let computed = total.as_integer();
    let fallback = total.to_complex().re;
    let prm = Params {
        chi: Some(chi.index()),
        set: Some(d),
        ..Params::new(ctx.p())
    };
    Ok(identity_verdict(
        Claim::MeanSquare,
        prm,
        computed,
        fallback,
        target,
    ))
}

/// `(1/(p-1)) Σ_χ |Σ_{n∈H} χ(n+a)| ≤ √|H|`, summing over every character
/// including the principal one.
pub fn check_meanvalue2(ctx: &FieldCtx, h: &Subgroup, a: u32, mode: Mode) -> Result<Verdict> {
    if a.is_multiple_of(ctx.p()) {
        return Err(Error::ShiftNotCoprime(a as u64));
    }
    let mut total = 0.0;
    for chi in all_characters(ctx) {
        total += shifted_sum(ctx, &chi, h.elements(), a, mode)?.abs();
    }
    let average = total / ctx.group_order() as f64;
    let mut prm = params(ctx, None, Some(h));
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::CharacterAverage,
        prm,
        mode,
        average,
        sqrt(h.order() as f64),
        false,
    ))
}

/// The inner sums `Σ_{n∈H} χ(n)` for every `χ`, as integers when they are.
fn subgroup_inner_sums(
    ctx: &FieldCtx,
    h: &Subgroup,
    phi: &CycPoly,
) -> Result<Vec<(Option<i128>, f64)>> {
    all_characters(ctx)
        .map(|chi| {
            let s = shifted_sum(ctx, &chi, h.elements(), 0, Mode::Exact)?
                .into_exact()
                .expect("exact");
            Ok((s.as_integer_with(phi), s.to_complex().norm()))
        })
        .collect()
}

/// Result of the structural half of the subgroup-sum identity.
#[derive(Debug, Clone, PartialEq)]
pub struct GranvilleDetail {
    /// Characters whose inner sum is `|H|` (exactly those trivial on `H`).
    pub full: u32,
    /// Characters whose inner sum is exactly 0.
    pub vanishing: u32,
    /// Characters whose inner sum is neither (always empty when the identity holds).
    pub mismatched: Vec<u32>,
    pub total: Option<i128>,
}

/// Exact evaluation of `Σ_χ |Σ_{n∈H} χ(n)|`, character by character.
pub fn granville_detail(ctx: &FieldCtx, h: &Subgroup) -> Result<GranvilleDetail> {
    let m = ctx.group_order() as usize;
    let phi = cyclotomic_poly(m)?;
    let sums = subgroup_inner_sums(ctx, h, &phi)?;
    let mut detail = GranvilleDetail {
        full: 0,
        vanishing: 0,
        mismatched: Vec::new(),
        total: Some(0),
    };
    for (j, (value, _)) in sums.iter().enumerate() {
        let chi = Character::new(ctx, j as u32)?;
        let expected = if chi.is_trivial_on(h) {
            h.order() as i128
        } else {
            0
        };
        match value {
            Some(v) if *v == expected => {
                if expected == 0 {
                    detail.vanishing += 1;
                } else {
                    detail.full += 1;
                }
            }
            _ => detail.mismatched.push(j as u32),
        }
        detail.total = match (detail.total, value) {
            (Some(t), Some(v)) => Some(t + v.abs()),
            _ => None,
        };
    }
    Ok(detail)
}

/// `Σ_χ |Σ_{n∈H} χ(n)| = p - 1`, with each inner sum checked to be exactly
/// `|H|` (for the `k` characters trivial on `H`) or exactly 0.
pub fn check_granville(ctx: &FieldCtx, h: &Subgroup) -> Result<Verdict> {
    let detail = granville_detail(ctx, h)?;
    let target = ctx.group_order() as i128;
    let fallback = detail.total.map(|t| t as f64).unwrap_or(f64::NAN);
    let mut v = identity_verdict(
        Claim::Granville,
        params(ctx, None, Some(h)),
        detail.total,
        fallback,
        target,
    );
    v.pass &= detail.mismatched.is_empty() && detail.full == h.index();
    Ok(v)
}

/// `Σ_χ |Σ_{n∈H} χ(n)| ≤ p`, from the exact total.
pub fn check_shkredov_bound(ctx: &FieldCtx, h: &Subgroup) -> Result<Verdict> {
    let detail = granville_detail(ctx, h)?;
    let target = ctx.p() as i128;
    let prm = params(ctx, None, Some(h));
    Ok(match detail.total {
        Some(total) => Verdict {
            claim: Claim::Shkredov,
            params: prm,
            mode: Mode::Exact,
            computed: Quantity::Integer(total),
            target: Quantity::Integer(target),
            margin: (target - total) as f64,
            pass: total <= target,
            vacuous: false,
        },
        None => identity_verdict(Claim::Shkredov, prm, None, f64::NAN, target),
    })
}

/// `Σ_{a∈ℤ_q∖{0}} |Σ_{x∈D} e_q(ax)|² = |D|(q - |D|)` in `ℤ[ζ_q]`.
pub fn check_konyagin(q: u32, set: &[u32]) -> Result<Verdict> {
    if q < 2 {
        return Err(Error::BadModulus(q as u64));
    }
    check_order(q as usize)?;
    let d = normalized_set(set);
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut total = CycInt::zero(q as usize);
    for a in 1..q {
        let s = exp_sum_subset(q, &d, a, Mode::Exact)?;
        total.add_abs_squared(s.as_exact().expect("exact mode"));
    }
    let size = d.len() as i128;
    let target = size * (q as i128 - size);
    let computed = total.as_integer();
    let fallback = total.to_complex().re;
    let prm = Params {
        set: Some(d),
        ..Params::new(q)
    };
    Ok(identity_verdict(
        Claim::Konyagin,
        prm,
        computed,
        fallback,
        target,
    ))
}

/// `|S| ≤ √(pXY)` and `|S'| ≤ √(pXY)` with `X`, `Y` the actual squared norms.
/// The verdict carries `max(|S|, |S'|)`.
pub fn check_lemma3(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    xi: &Weights,
    eta: &Weights,
    a: u32,
    mode: Mode,
) -> Result<Verdict> {
    let s = bilinear_s(ctx, chi, xi, eta, a, mode)?.abs();
    let s_prime = bilinear_s_prime(ctx, chi, xi, eta, a, mode)?.abs();
    let bound = sqrt(ctx.p() as f64 * xi.norm_sq() * eta.norm_sq());
    let mut prm = params(ctx, Some(chi), None);
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::Bilinear,
        prm,
        mode,
        s.max(s_prime),
        bound,
        false,
    ))
}

/// `S_{y,y₁}` against its closed form for every pair `(y, y₁)`:
/// `p` if both vanish, 0 if exactly one does, `p - 1` if they are equal and
/// nonzero, `-χ(y/y₁)` otherwise. `computed` counts the matching pairs.
pub fn check_proof_kernel(ctx: &FieldCtx, chi: &Character<'_>, a: u32) -> Result<Verdict> {
    require_nonprincipal(chi)?;
    let p = ctx.p();
    let m = ctx.group_order() as usize;
    let phi = cyclotomic_poly(m)?;
    let mut matched = 0i128;
    for y in 0..p {
        for y1 in 0..p {
            let got = proof_kernel_s_yy1(ctx, chi, y, y1, a)?
                .into_exact()
                .expect("exact");
            let closed = match (y, y1) {
                (0, 0) => CycInt::from_int(m, p as i128),
                (0, _) | (_, 0) => CycInt::zero(m),
                _ if y == y1 => CycInt::from_int(m, p as i128 - 1),
                _ => chi.eval_exact(ctx.mul(y, ctx.inverse(y1)?))?.scale(-1),
            };
            let mut diff = got;
            diff -= &closed;
            if diff.as_integer_with(&phi) == Some(0) {
                matched += 1;
            }
        }
    }
    let mut prm = params(ctx, Some(chi), None);
    prm.a = Some(a);
    let pairs = p as i128 * p as i128;
    Ok(identity_verdict(
        Claim::ProofKernel,
        prm,
        Some(matched),
        matched as f64,
        pairs,
    ))
}

/// `|Σ_{x∈H} χ(x(x+a))| ≤ √p`.
pub fn check_nonlinear_bound(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    h: &Subgroup,
    a: u32,
    mode: Mode,
) -> Result<Verdict> {
    let s = nonlinear_sum_xxa(ctx, chi, h, a, mode)?.abs();
    let mut prm = params(ctx, Some(chi), Some(h));
    prm.a = Some(a);
    Ok(bound_verdict(
        Claim::Nonlinear,
        prm,
        mode,
        s,
        sqrt(ctx.p() as f64),
        false,
    ))
}
