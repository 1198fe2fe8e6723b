use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::*;
use super::{Claim, Verdict};
use crate::character::{all_characters, Character};
use crate::cyclo::MAX_EXACT_ORDER;
use crate::engines::Weights;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx};
use crate::value::Mode;

/// How inequality checks choose their [`Mode`]. Identities are always exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModePolicy {
    Exact,
    Numeric,
    /// Exact iff the root order `p - 1` is within exact capacity.
    Auto,
}

impl ModePolicy {
    pub fn resolve(self, root_order: u32) -> Mode {
        match self {
            ModePolicy::Exact => Mode::Exact,
            ModePolicy::Numeric => Mode::Numeric,
            ModePolicy::Auto if root_order as usize <= MAX_EXACT_ORDER => Mode::Exact,
            ModePolicy::Auto => Mode::Numeric,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub p_min: u32,
    pub p_max: u32,
    /// Claims to run; empty means all.
    pub claims: Vec<Claim>,
    pub mode: ModePolicy,
    pub seed: u64,
    /// Random sets `D` per prime for the mean-square identity.
    pub random_subsets: usize,
    /// Random sets `D` per modulus for the exponential-sum identity.
    pub konyagin_subsets: usize,
    pub bilinear_characters: usize,
    pub bilinear_pairs: usize,
    pub eps: f64,
    /// Cap on the number of records.
    pub budget: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            p_min: 3,
            p_max: 61,
            claims: Vec::new(),
            mode: ModePolicy::Auto,
            seed: 0,
            random_subsets: 20,
            konyagin_subsets: 10,
            bilinear_characters: 5,
            bilinear_pairs: 10,
            eps: 0.1,
            budget: None,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, claim: Claim) -> bool {
        self.claims.is_empty() || self.claims.contains(&claim)
    }
}

/// One suite output: a verdict, or an instance that could not be run.
#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    Verdict(Verdict),
    Skipped {
        claim: Claim,
        modulus: u32,
        reason: Error,
    },
}

impl Record {
    pub fn claim(&self) -> Claim {
        match self {
            Record::Verdict(v) => v.claim,
            Record::Skipped { claim, .. } => *claim,
        }
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rng_for(seed: u64, modulus: u32, claim: Claim) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(modulus as u64 ^ mix(claim as u64))))
}

/// A uniform subset of `[lo, hi)` of the given size, sorted.
pub fn random_subset<R: Rng>(rng: &mut R, lo: u32, hi: u32, size: usize) -> Vec<u32> {
    let span = (hi - lo) as usize;
    let mut d: Vec<u32> = sample(rng, span, size.min(span))
        .into_iter()
        .map(|i| lo + i as u32)
        .collect();
    d.sort_unstable();
    d
}

/// Complex weights with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_weights<R: Rng>(rng: &mut R, p: u32) -> Weights {
    let v = (0..p)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Weights::numeric(p, v).expect("length p")
}

/// Sizes cycle through `1, 2, ⌊√p⌋, ⌊p/2⌋`.
fn subset_size(p: u32, i: usize) -> usize {
    let s = match i % 4 {
        0 => 1,
        1 => 2,
        2 => libm::sqrt(p as f64) as u32,
        _ => p / 2,
    };
    s.clamp(1, p - 1) as usize
}

/// All records for one modulus `n`, in deterministic order: the
/// exponential-sum identity for every `n ≥ 2`, the prime-field claims when
/// `n` is an odd prime.
pub fn run_unit(n: u32, cfg: &SuiteConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for claim in Claim::ALL {
        if !cfg.wants(claim) {
            continue;
        }
        if claim == Claim::Konyagin {
            if n >= 2 {
                konyagin_records(n, cfg, &mut out);
            }
            continue;
        }
        if n < 3 || n.is_multiple_of(2) || !is_prime(n as u64) {
            continue;
        }
        let ctx = match FieldCtx::new(n as u64) {
            Ok(ctx) => ctx,
            Err(reason) => {
                out.push(Record::Skipped {
                    claim,
                    modulus: n,
                    reason,
                });
                continue;
            }
        };
        let mode = if claim.is_identity() {
            Mode::Exact
        } else {
            cfg.mode.resolve(ctx.group_order())
        };
        if mode == Mode::Exact && ctx.group_order() as usize > MAX_EXACT_ORDER {
            out.push(Record::Skipped {
                claim,
                modulus: n,
                reason: Error::CapacityExceeded {
                    what: "root order m",
                    value: ctx.group_order() as u64,
                    limit: MAX_EXACT_ORDER as u64,
                },
            });
            continue;
        }
        if let Err(reason) = prime_records(&ctx, claim, mode, cfg, &mut out) {
            out.push(Record::Skipped {
                claim,
                modulus: n,
                reason,
            });
        }
    }
    out
}

fn konyagin_records(q: u32, cfg: &SuiteConfig, out: &mut Vec<Record>) {
    let mut rng = rng_for(cfg.seed, q, Claim::Konyagin);
    for i in 0..cfg.konyagin_subsets {
        let size = rng.random_range(1..=q) as usize;
        let d = random_subset(&mut rng, 0, q, size);
        match check_konyagin(q, &d) {
            Ok(mut v) => {
                v.params.sample = Some(i as u32);
                out.push(Record::Verdict(v));
            }
            Err(reason) => {
                out.push(Record::Skipped {
                    claim: Claim::Konyagin,
                    modulus: q,
                    reason,
                });
                return;
            }
        }
    }
}

fn prime_records(
    ctx: &FieldCtx,
    claim: Claim,
    mode: Mode,
    cfg: &SuiteConfig,
    out: &mut Vec<Record>,
) -> Result<()> {
    let p = ctx.p();
    let subgroups = ctx.subgroups();
    let mut push = |v: Verdict| out.push(Record::Verdict(v));
    let nonprincipal = || all_characters(ctx).skip(1);
    match claim {
        Claim::ShiftedBound | Claim::SharpenedBound | Claim::EpsCorollary => {
            for h in &subgroups {
                for chi in nonprincipal() {
                    push(match claim {
                        Claim::ShiftedBound => check_theorem2(ctx, &chi, h, mode)?,
                        Claim::SharpenedBound => check_sharpened_theorem2(ctx, &chi, h, mode)?,
                        _ => check_eps_corollary(ctx, &chi, h, cfg.eps, mode)?,
                    });
                }
            }
        }
        Claim::MeanSquare => {
            let mut rng = rng_for(cfg.seed, p, claim);
            let random: Vec<Vec<u32>> = (0..cfg.random_subsets)
                .map(|i| random_subset(&mut rng, 1, p, subset_size(p, i)))
                .collect();
            for chi in nonprincipal() {
                for h in &subgroups {
                    let mut v = check_eq2_identity(ctx, &chi, h.elements())?;
                    v.params.set = None;
                    v.params.h_order = Some(h.order());
                    push(v);
                }
                for (i, d) in random.iter().enumerate() {
                    let mut v = check_eq2_identity(ctx, &chi, d)?;
                    v.params.sample = Some(i as u32);
                    push(v);
                }
            }
        }
        Claim::CharacterAverage => {
            for h in &subgroups {
                for a in 1..p {
                    push(check_meanvalue2(ctx, h, a, mode)?);
                }
            }
        }
        Claim::Granville => {
            for h in &subgroups {
                push(check_granville(ctx, h)?);
            }
        }
        Claim::Shkredov => {
            for h in &subgroups {
                push(check_shkredov_bound(ctx, h)?);
            }
        }
        Claim::Bilinear => {
            let mut rng = rng_for(cfg.seed, p, claim);
            for (c, chi) in bilinear_characters(ctx, cfg.bilinear_characters, &mut rng)
                .iter()
                .enumerate()
            {
                for i in 0..cfg.bilinear_pairs {
                    let xi = random_weights(&mut rng, p);
                    let eta = random_weights(&mut rng, p);
                    let a = rng.random_range(1..p);
                    let mut v = check_lemma3(ctx, chi, &xi, &eta, a, Mode::Numeric)?;
                    v.params.sample = Some((c * cfg.bilinear_pairs + i) as u32);
                    push(v);
                }
            }
        }
        Claim::ProofKernel => {
            let mut rng = rng_for(cfg.seed, p, claim);
            let a = rng.random_range(1..p);
            for chi in nonprincipal() {
                push(check_proof_kernel(ctx, &chi, a)?);
            }
        }
        Claim::Nonlinear => {
            // one verdict per (H, χ): the shift with the least margin
            for h in &subgroups {
                for chi in nonprincipal() {
                    let mut worst: Option<Verdict> = None;
                    for a in 1..p {
                        let v = check_nonlinear_bound(ctx, &chi, h, a, mode)?;
                        if worst.as_ref().is_none_or(|w| v.margin < w.margin) {
                            worst = Some(v);
                        }
                    }
                    push(worst.expect("p >= 3 gives a nonzero shift"));
                }
            }
        }
        Claim::Konyagin => unreachable!("handled per modulus"),
    }
    Ok(())
}

/// The quadratic character followed by distinct seeded random nonprincipal
/// ones, `count` in total (fewer when `p` is small).
fn bilinear_characters<'a, R: Rng>(
    ctx: &'a FieldCtx,
    count: usize,
    rng: &mut R,
) -> Vec<Character<'a>> {
    let m = ctx.group_order();
    let mut chosen = Vec::new();
    if count == 0 {
        return chosen;
    }
    let quadratic = Character::quadratic(ctx);
    chosen.push(quadratic);
    let others: Vec<u32> = (1..m).filter(|&j| j != quadratic.index()).collect();
    for i in sample(rng, others.len(), (count - 1).min(others.len())) {
        chosen.push(Character::new(ctx, others[i]).expect("in range"));
    }
    chosen
}

/// Runs every unit in `[p_min, p_max]` in order, truncated to the budget.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for n in cfg.p_min..=cfg.p_max {
        out.extend(run_unit(n, cfg));
        if cfg.budget.is_some_and(|b| out.len() >= b) {
            break;
        }
    }
    if let Some(b) = cfg.budget {
        out.truncate(b);
    }
    out
}
