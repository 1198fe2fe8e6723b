//! Empirical scans over subgroups of size about `√p`: the shifted sum, the
//! product-of-shifts sum, and the two Kloosterman-type sums. The last three
//! are open problems, so scans only record statistics.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::Character;
use crate::engines::{
    inverse_shift_sum, kloosterman_over_h, shifted_product_sum, shifted_sum,
    shifted_sum_all_complex,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Subgroup};
use crate::value::Mode;

/// Histogram bin width for `|sum|/√p`.
pub const HISTOGRAM_BIN: f64 = 0.25;
/// Bins of width [`HISTOGRAM_BIN`], the last one open-ended.
pub const HISTOGRAM_BINS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    /// `Σ_{x∈H} χ(x+a)` over `a ≠ 0`.
    ShiftedSum,
    /// `Σ_{x∈H} χ((x+a)(x+b))` over `ab(a-b) ≠ 0`.
    ShiftedProduct,
    /// `Σ_{x∈H} e_p(kx + l·x*)` over `k, l ≠ 0`.
    Kloosterman,
    /// `Σ_{x∈H∖{-a}} e_p(k(x+a)*)` over `k, a ≠ 0`.
    InverseShift,
}

impl Problem {
    pub fn id(self) -> &'static str {
        match self {
            Problem::ShiftedSum => "p1",
            Problem::ShiftedProduct => "p5",
            Problem::Kloosterman => "p6_kloosterman",
            Problem::InverseShift => "p6_inverse_shift",
        }
    }

    pub fn from_id(s: &str) -> Option<Self> {
        [
            Problem::ShiftedSum,
            Problem::ShiftedProduct,
            Problem::Kloosterman,
            Problem::InverseShift,
        ]
        .into_iter()
        .find(|p| p.id() == s)
    }

    fn uses_character(self) -> bool {
        matches!(self, Problem::ShiftedSum | Problem::ShiftedProduct)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharSelector {
    Index(u32),
    Quadratic,
    /// Every nonprincipal character.
    All,
}

impl CharSelector {
    pub fn select<'a>(self, ctx: &'a FieldCtx) -> Result<Vec<Character<'a>>> {
        Ok(match self {
            CharSelector::Index(j) => vec![Character::new(ctx, j)?],
            CharSelector::Quadratic => vec![Character::quadratic(ctx)],
            CharSelector::All => crate::character::all_characters(ctx).skip(1).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub problems: Vec<Problem>,
    pub chars: CharSelector,
    pub seed: u64,
    /// Full parameter grid up to this prime, random sampling above.
    pub full_grid_limit: u32,
    pub samples: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            problems: vec![Problem::ShiftedSum],
            chars: CharSelector::Quadratic,
            seed: 0,
            full_grid_limit: 101,
            samples: 1000,
        }
    }
}

/// The parameters at which the extremal value was attained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Achiever {
    pub a: Option<u32>,
    pub b: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub p: u32,
    pub h_order: u32,
    /// `|H|/√p`.
    pub h_ratio: f64,
    pub problem: Problem,
    pub chi: Option<u32>,
    /// `max |sum|/√p` over the parameters tried.
    pub max_ratio: f64,
    pub achiever: Achiever,
    pub tuples: u64,
    pub mean_ratio: f64,
    pub histogram: [u64; HISTOGRAM_BINS],
}

struct Stats {
    max: f64,
    achiever: Achiever,
    count: u64,
    sum: f64,
    histogram: [u64; HISTOGRAM_BINS],
}

impl Stats {
    fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            achiever: Achiever::default(),
            count: 0,
            sum: 0.0,
            histogram: [0; HISTOGRAM_BINS],
        }
    }

    fn push(&mut self, ratio: f64, at: Achiever) {
        if ratio > self.max {
            self.max = ratio;
            self.achiever = at;
        }
        self.count += 1;
        self.sum += ratio;
        let bin = ((ratio / HISTOGRAM_BIN) as usize).min(HISTOGRAM_BINS - 1);
        self.histogram[bin] += 1;
    }
}

fn grid_pairs<R: Rng>(
    p: u32,
    full: bool,
    samples: usize,
    rng: &mut R,
    keep: impl Fn(u32, u32) -> bool,
) -> Vec<(u32, u32)> {
    if full {
        (1..p)
            .flat_map(|u| (1..p).map(move |v| (u, v)))
            .filter(|&(u, v)| keep(u, v))
            .collect()
    } else {
        let mut out = Vec::with_capacity(samples);
        while out.len() < samples {
            let (u, v) = (rng.random_range(1..p), rng.random_range(1..p));
            if keep(u, v) {
                out.push((u, v));
            }
        }
        out
    }
}

/// The value `|sum|/√p` a record's achiever evaluates to, recomputed from
/// scratch with the direct engines.
pub fn reevaluate(ctx: &FieldCtx, h: &Subgroup, record: &ScanRecord) -> Result<f64> {
    let at = record.achiever;
    let need = |v: Option<u32>| v.ok_or(Error::ZeroParameter("achiever"));
    let chi = || -> Result<Character<'_>> { Character::new(ctx, need(record.chi)?) };
    let value = match record.problem {
        Problem::ShiftedSum => shifted_sum(ctx, &chi()?, h.elements(), need(at.a)?, Mode::Numeric)?,
        Problem::ShiftedProduct => {
            shifted_product_sum(ctx, &chi()?, h, need(at.a)?, need(at.b)?, Mode::Numeric)?
        }
        Problem::Kloosterman => kloosterman_over_h(ctx, h, need(at.k)?, need(at.l)?)?,
        Problem::InverseShift => inverse_shift_sum(ctx, h, need(at.k)?, need(at.a)?)?,
    };
    Ok(value.abs() / libm::sqrt(ctx.p() as f64))
}

/// Scans one prime with `H` the subgroup of order closest to `√p`.
pub fn scan_prime(ctx: &FieldCtx, cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    let p = ctx.p();
    let h = ctx.subgroup_near_sqrt();
    let root = libm::sqrt(p as f64);
    let full = p <= cfg.full_grid_limit;
    let mut out = Vec::new();
    for &problem in &cfg.problems {
        let chars: Vec<Option<Character<'_>>> = if problem.uses_character() {
            cfg.chars.select(ctx)?.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for chi in chars {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((p as u64) << 8) ^ problem as u64);
            let mut stats = Stats::new();
            match problem {
                Problem::ShiftedSum => {
                    // one correlation yields every shift at once
                    let chi = chi.expect("character problem");
                    let values = shifted_sum_all_complex(ctx, &chi, h.elements())?;
                    for (a, v) in values.iter().enumerate().skip(1) {
                        stats.push(
                            v.norm() / root,
                            Achiever {
                                a: Some(a as u32),
                                ..Achiever::default()
                            },
                        );
                    }
                }
                Problem::ShiftedProduct => {
                    let chi = chi.expect("character problem");
                    for (a, b) in grid_pairs(p, full, cfg.samples, &mut rng, |a, b| a != b) {
                        let v = shifted_product_sum(ctx, &chi, &h, a, b, Mode::Numeric)?;
                        stats.push(
                            v.abs() / root,
                            Achiever {
                                a: Some(a),
                                b: Some(b),
                                ..Achiever::default()
                            },
                        );
                    }
                }
                Problem::Kloosterman => {
                    for (k, l) in grid_pairs(p, full, cfg.samples, &mut rng, |_, _| true) {
                        let v = kloosterman_over_h(ctx, &h, k, l)?;
                        stats.push(
                            v.abs() / root,
                            Achiever {
                                k: Some(k),
                                l: Some(l),
                                ..Achiever::default()
                            },
                        );
                    }
                }
                Problem::InverseShift => {
                    for (k, a) in grid_pairs(p, full, cfg.samples, &mut rng, |_, _| true) {
                        let v = inverse_shift_sum(ctx, &h, k, a)?;
                        stats.push(
                            v.abs() / root,
                            Achiever {
                                k: Some(k),
                                a: Some(a),
                                ..Achiever::default()
                            },
                        );
                    }
                }
            }
            out.push(ScanRecord {
                p,
                h_order: h.order(),
                h_ratio: h.order() as f64 / root,
                problem,
                chi: chi.map(|c| c.index()),
                max_ratio: stats.max.max(0.0),
                achiever: stats.achiever,
                tuples: stats.count,
                mean_ratio: if stats.count == 0 {
                    0.0
                } else {
                    stats.sum / stats.count as f64
                },
                histogram: stats.histogram,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime;

    #[test]
    fn shifted_sum_scan_at_seven() {
        let ctx = FieldCtx::new(7).unwrap();
        let recs = scan_prime(&ctx, &ScanConfig::default()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.h_order, 3);
        assert_eq!(r.tuples, 6);
        assert!((r.max_ratio - 1.0 / 7f64.sqrt()).abs() < 1e-12);
        assert!((r.max_ratio - 0.37796).abs() < 1e-5);
        assert_eq!(r.histogram.iter().sum::<u64>(), 6);
    }

    #[test]
    fn achievers_reproduce_statistics() {
        let cfg = ScanConfig {
            problems: vec![
                Problem::ShiftedSum,
                Problem::ShiftedProduct,
                Problem::Kloosterman,
                Problem::InverseShift,
            ],
            chars: CharSelector::All,
            seed: 5,
            samples: 200,
            ..ScanConfig::default()
        };
        for p in (3..=151u64).filter(|&p| is_prime(p)) {
            let ctx = FieldCtx::new(p).unwrap();
            let h = ctx.subgroup_near_sqrt();
            for r in scan_prime(&ctx, &cfg).unwrap() {
                assert!(r.max_ratio >= 0.0 && r.mean_ratio >= 0.0);
                if r.tuples > 0 {
                    let again = reevaluate(&ctx, &h, &r).unwrap();
                    assert!((again - r.max_ratio).abs() < 1e-9, "p={p} {:?}", r.problem);
                }
            }
        }
    }

    #[test]
    fn product_grid_skips_degenerate_pairs() {
        let ctx = FieldCtx::new(11).unwrap();
        let cfg = ScanConfig {
            problems: vec![Problem::ShiftedProduct],
            ..ScanConfig::default()
        };
        let r = &scan_prime(&ctx, &cfg).unwrap()[0];
        assert_eq!(r.tuples, 10 * 9);
    }
}
