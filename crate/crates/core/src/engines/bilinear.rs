//! The bilinear forms `S = Σ_x Σ_y ξ(x)η(y)χ(xy + a)` and
//! `S' = Σ_x Σ_y ξ(x)η(y)χ(xy(xy + a))`.
//!
//! Terms with `x = 0` or `y = 0` all carry `χ(a)`, so they collapse to
//! `χ(a)·(ξ(0)Ση + η(0)Σξ - ξ(0)η(0))`. The rest are grouped by `t = xy` via
//! the multiplicative convolution `c(t) = Σ_{xy=t} ξ(x)η(y)`, which becomes an
//! additive cyclic convolution of length `p - 1` after taking discrete logs.
//! `c` does not depend on `χ` or `a`, so a [`BilinearForm`] can be evaluated
//! for many `(χ, a)` pairs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::require_nonprincipal;
use super::transform::cyclic_convolution;
use crate::character::Character;
use crate::cyclo::{check_order, unit_root, CycInt};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::value::{Mode, SumValue};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum WeightValues {
    /// Nonzero entries `(x, ξ(x))`, sorted by residue, values in `ℤ[ζ_{p-1}]`.
    Exact(Vec<(u32, CycInt)>),
    /// Dense values indexed by residue.
    Numeric(Vec<Complex64>),
}

/// A weight function on `F_p` together with its squared `ℓ²` norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    p: u32,
    values: WeightValues,
    norm_sq: f64,
}

impl Weights {
    pub fn numeric(p: u32, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != p as usize {
            return Err(Error::WeightLength {
                got: values.len(),
                expected: p as usize,
            });
        }
        let norm_sq = values.iter().map(|v| v.norm_sqr()).sum();
        Ok(Self {
            p,
            values: WeightValues::Numeric(values),
            norm_sq,
        })
    }

    /// Exact weights from `(x, ξ(x))` entries; repeated residues add up.
    pub fn exact(p: u32, entries: impl IntoIterator<Item = (u32, CycInt)>) -> Result<Self> {
        let m = (p - 1) as usize;
        check_order(m)?;
        let mut map: BTreeMap<u32, CycInt> = BTreeMap::new();
        for (x, v) in entries {
            if x >= p {
                return Err(Error::ResidueOutOfRange {
                    value: x as u64,
                    modulus: p as u64,
                });
            }
            if v.m() != m {
                return Err(Error::MixedOrder {
                    left: m,
                    right: v.m(),
                });
            }
            match map.get_mut(&x) {
                Some(acc) => *acc += &v,
                None => {
                    map.insert(x, v);
                }
            }
        }
        let entries: Vec<(u32, CycInt)> = map
            .into_iter()
            .filter(|(_, v)| !v.is_trivially_zero())
            .collect();
        let norm_sq = entries
            .iter()
            .map(|(_, v)| v.abs_squared().to_complex().re)
            .sum();
        Ok(Self {
            p,
            values: WeightValues::Exact(entries),
            norm_sq,
        })
    }

    /// The indicator function of `set`.
    pub fn indicator(p: u32, set: &[u32], mode: Mode) -> Result<Self> {
        super::check_residues(set, p)?;
        match mode {
            Mode::Exact => {
                let m = (p - 1) as usize;
                check_order(m)?;
                Self::exact(p, set.iter().map(|&x| (x, CycInt::one(m))))
            }
            Mode::Numeric => {
                let mut v = vec![ZERO; p as usize];
                for &x in set {
                    v[x as usize] += 1.0;
                }
                Self::numeric(p, v)
            }
        }
    }

    pub fn zero(p: u32, mode: Mode) -> Result<Self> {
        Self::indicator(p, &[], mode)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn values(&self) -> &WeightValues {
        &self.values
    }

    pub fn mode(&self) -> Mode {
        match self.values {
            WeightValues::Exact(_) => Mode::Exact,
            WeightValues::Numeric(_) => Mode::Numeric,
        }
    }

    /// `Σ_x |ξ(x)|²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn to_complex_vec(&self) -> Vec<Complex64> {
        match &self.values {
            WeightValues::Numeric(v) => v.clone(),
            WeightValues::Exact(entries) => {
                let mut v = vec![ZERO; self.p as usize];
                for (x, z) in entries {
                    v[*x as usize] = z.to_complex();
                }
                v
            }
        }
    }

    /// `c·ξ`, numeric.
    pub fn scaled(&self, c: Complex64) -> Self {
        let v = self.to_complex_vec().into_iter().map(|z| z * c).collect();
        Self::numeric(self.p, v).expect("same length")
    }

    /// `x ↦ ξ(x)χ(x)`, which vanishes at 0.
    pub fn twisted(&self, chi: &Character<'_>) -> Result<Self> {
        if chi.ctx().p() != self.p {
            return Err(Error::WeightLength {
                got: self.p as usize,
                expected: chi.ctx().p() as usize,
            });
        }
        match &self.values {
            WeightValues::Numeric(v) => {
                let t = v
                    .iter()
                    .enumerate()
                    .map(|(x, z)| z * chi.eval_complex(x as u32))
                    .collect();
                Self::numeric(self.p, t)
            }
            WeightValues::Exact(entries) => {
                let m = (self.p - 1) as usize;
                let twisted = entries.iter().filter_map(|(x, z)| {
                    chi.exponent(*x).map(|e| {
                        let mut out = CycInt::zero(m);
                        out.add_rotated(z, e as u64);
                        (*x, out)
                    })
                });
                Self::exact(self.p, twisted)
            }
        }
    }
}

type Sparse = Vec<(usize, i128)>;

fn support(z: &CycInt) -> Sparse {
    z.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

fn add_sparse_rotated(acc: &mut CycInt, s: &Sparse, shift: u32) {
    let m = acc.m();
    for &(i, c) in s {
        acc.add_root((i + shift as usize % m) as u64, c);
    }
}

#[derive(Debug, Clone)]
enum FormData {
    Exact {
        boundary: Sparse,
        /// `(t, c(t))` for the nonzero `c(t)`, `t ≠ 0`.
        conv: Vec<(u32, Sparse)>,
    },
    Numeric {
        boundary: Complex64,
        /// `c(t)` indexed by residue.
        conv: Vec<Complex64>,
    },
}

/// The pair `(ξ, η)` preprocessed for repeated evaluation of `S`.
#[derive(Debug, Clone)]
pub struct BilinearForm<'a> {
    ctx: &'a FieldCtx,
    data: FormData,
}

impl<'a> BilinearForm<'a> {
    pub fn new(ctx: &'a FieldCtx, xi: &Weights, eta: &Weights, mode: Mode) -> Result<Self> {
        for w in [xi, eta] {
            if w.p != ctx.p() {
                return Err(Error::WeightLength {
                    got: w.p as usize,
                    expected: ctx.p() as usize,
                });
            }
        }
        let data = match mode {
            Mode::Exact => match (&xi.values, &eta.values) {
                (WeightValues::Exact(a), WeightValues::Exact(b)) => Self::exact_data(ctx, a, b),
                _ => return Err(Error::ModeMismatch),
            },
            Mode::Numeric => Self::numeric_data(ctx, &xi.to_complex_vec(), &eta.to_complex_vec()),
        };
        Ok(Self { ctx, data })
    }

    fn exact_data(ctx: &FieldCtx, xi: &[(u32, CycInt)], eta: &[(u32, CycInt)]) -> FormData {
        let m = ctx.group_order() as usize;
        let at_zero = |w: &[(u32, CycInt)]| {
            w.first()
                .filter(|(x, _)| *x == 0)
                .map(|(_, z)| z.clone())
                .unwrap_or_else(|| CycInt::zero(m))
        };
        let total = |w: &[(u32, CycInt)]| {
            let mut s = CycInt::zero(m);
            for (_, z) in w {
                s += z;
            }
            s
        };
        let (xi0, eta0) = (at_zero(xi), at_zero(eta));
        let mut boundary = CycInt::zero(m);
        boundary.add_product(&xi0, &total(eta));
        boundary.add_product(&eta0, &total(xi));
        boundary -= &(&xi0 * &eta0);

        let xs: Vec<(u32, Sparse)> = xi
            .iter()
            .filter(|(x, _)| *x != 0)
            .map(|(x, z)| (*x, support(z)))
            .collect();
        let ys: Vec<(u32, Sparse)> = eta
            .iter()
            .filter(|(y, _)| *y != 0)
            .map(|(y, z)| (*y, support(z)))
            .collect();
        let mut conv: BTreeMap<u32, CycInt> = BTreeMap::new();
        for (x, sx) in &xs {
            for (y, sy) in &ys {
                let c = conv
                    .entry(ctx.mul(*x, *y))
                    .or_insert_with(|| CycInt::zero(m));
                for &(i, a) in sx {
                    for &(j, b) in sy {
                        c.add_root((i + j) as u64, a * b);
                    }
                }
            }
        }
        FormData::Exact {
            boundary: support(&boundary),
            conv: conv
                .into_iter()
                .map(|(t, c)| (t, support(&c)))
                .filter(|(_, s)| !s.is_empty())
                .collect(),
        }
    }

    fn numeric_data(ctx: &FieldCtx, xi: &[Complex64], eta: &[Complex64]) -> FormData {
        let boundary = xi[0] * eta.iter().sum::<Complex64>()
            + eta[0] * xi.iter().sum::<Complex64>()
            - xi[0] * eta[0];
        let exp = ctx.exp_table();
        let by_log =
            |w: &[Complex64]| -> Vec<Complex64> { exp.iter().map(|&x| w[x as usize]).collect() };
        let c = cyclic_convolution(&by_log(xi), &by_log(eta));
        let mut conv = vec![ZERO; ctx.p() as usize];
        for (u, v) in c.into_iter().enumerate() {
            conv[exp[u] as usize] = v;
        }
        FormData::Numeric { boundary, conv }
    }

    pub fn mode(&self) -> Mode {
        match self.data {
            FormData::Exact { .. } => Mode::Exact,
            FormData::Numeric { .. } => Mode::Numeric,
        }
    }

    /// `S` for the given character and shift.
    pub fn eval(&self, chi: &Character<'_>, a: u32) -> Result<SumValue> {
        require_nonprincipal(chi)?;
        let ctx = self.ctx;
        if a.is_multiple_of(ctx.p()) {
            return Err(Error::ShiftNotCoprime(a as u64));
        }
        let m = ctx.group_order();
        Ok(match &self.data {
            FormData::Exact { boundary, conv } => {
                let mut acc = CycInt::zero(m as usize);
                if let Some(e) = chi.exponent(a) {
                    add_sparse_rotated(&mut acc, boundary, e);
                }
                for (t, c) in conv {
                    if let Some(e) = chi.exponent(ctx.add(*t, a)) {
                        add_sparse_rotated(&mut acc, c, e);
                    }
                }
                SumValue::Exact(acc)
            }
            FormData::Numeric { boundary, conv } => {
                let j = chi.index() as u64;
                let mut acc = boundary * chi.eval_complex(a);
                let p = ctx.p() as usize;
                let a = a as usize % p;
                for (t, c) in conv.iter().enumerate().skip(1) {
                    if *c == ZERO {
                        continue;
                    }
                    let v = t + a;
                    let v = if v >= p { v - p } else { v };
                    if let Some(l) = ctx.dlog(v as u32) {
                        acc += c * unit_root(m as u64, j * l as u64 % m as u64);
                    }
                }
                SumValue::Numeric(acc)
            }
        })
    }
}

/// `S = Σ_x Σ_y ξ(x)η(y)χ(xy + a)`.
pub fn bilinear_s(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    xi: &Weights,
    eta: &Weights,
    a: u32,
    mode: Mode,
) -> Result<SumValue> {
    require_nonprincipal(chi)?;
    BilinearForm::new(ctx, xi, eta, mode)?.eval(chi, a)
}

/// `S' = Σ_x Σ_y ξ(x)η(y)χ(xy(xy + a))`, evaluated as `S` with the twisted
/// weights `ξχ` and `ηχ`.
pub fn bilinear_s_prime(
    ctx: &FieldCtx,
    chi: &Character<'_>,
    xi: &Weights,
    eta: &Weights,
    a: u32,
    mode: Mode,
) -> Result<SumValue> {
    require_nonprincipal(chi)?;
    let (xi, eta) = (xi.twisted(chi)?, eta.twisted(chi)?);
    BilinearForm::new(ctx, &xi, &eta, mode)?.eval(chi, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::all_characters;
    use crate::engines::{nonlinear_sum_xxa, shifted_sum};

    /// Direct double loop over all `(x, y)`.
    fn naive(
        ctx: &FieldCtx,
        chi: &Character<'_>,
        xi: &[Complex64],
        eta: &[Complex64],
        a: u32,
        prime: bool,
    ) -> Complex64 {
        let mut s = ZERO;
        for x in 0..ctx.p() {
            for y in 0..ctx.p() {
                let t = ctx.mul(x, y);
                let arg = if prime {
                    ctx.mul(t, ctx.add(t, a))
                } else {
                    ctx.add(t, a)
                };
                s += xi[x as usize] * eta[y as usize] * chi.eval_complex(arg);
            }
        }
        s
    }

    fn lcg_weights(p: u32, seed: &mut u64) -> Vec<Complex64> {
        let mut next = || {
            *seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (*seed >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        (0..p).map(|_| Complex64::new(next(), next())).collect()
    }

    #[test]
    fn numeric_fast_path_matches_double_loop() {
        let mut seed = 7;
        for p in [3u64, 5, 7, 11, 23, 31] {
            let ctx = FieldCtx::new(p).unwrap();
            for chi in all_characters(&ctx).skip(1) {
                let xi = lcg_weights(p as u32, &mut seed);
                let eta = lcg_weights(p as u32, &mut seed);
                let (wx, we) = (
                    Weights::numeric(p as u32, xi.clone()).unwrap(),
                    Weights::numeric(p as u32, eta.clone()).unwrap(),
                );
                for a in 1..p as u32 {
                    let s = bilinear_s(&ctx, &chi, &wx, &we, a, Mode::Numeric).unwrap();
                    assert!(
                        (s.to_complex() - naive(&ctx, &chi, &xi, &eta, a, false)).norm()
                            < 1e-9 * p as f64
                    );
                    let s = bilinear_s_prime(&ctx, &chi, &wx, &we, a, Mode::Numeric).unwrap();
                    assert!(
                        (s.to_complex() - naive(&ctx, &chi, &xi, &eta, a, true)).norm()
                            < 1e-9 * p as f64
                    );
                }
            }
        }
    }

    #[test]
    fn exact_fast_path_matches_double_loop() {
        // integer weights including nonzero values at 0
        for p in [5u32, 7, 13] {
            let ctx = FieldCtx::new(p as u64).unwrap();
            let m = (p - 1) as usize;
            let xi: Vec<i128> = (0..p).map(|x| (x as i128 * 3 + 1) % 5 - 2).collect();
            let eta: Vec<i128> = (0..p).map(|x| (x as i128 * 7 + 2) % 4 - 1).collect();
            let wx = Weights::exact(
                p,
                xi.iter()
                    .enumerate()
                    .map(|(x, &c)| (x as u32, CycInt::from_int(m, c))),
            )
            .unwrap();
            let we = Weights::exact(
                p,
                eta.iter()
                    .enumerate()
                    .map(|(x, &c)| (x as u32, CycInt::from_int(m, c))),
            )
            .unwrap();
            for chi in all_characters(&ctx).skip(1) {
                for a in 1..p {
                    let mut direct = CycInt::zero(m);
                    for x in 0..p {
                        for y in 0..p {
                            if let Some(e) = chi.exponent(ctx.add(ctx.mul(x, y), a)) {
                                direct.add_root(e as u64, xi[x as usize] * eta[y as usize]);
                            }
                        }
                    }
                    let s = bilinear_s(&ctx, &chi, &wx, &we, a, Mode::Exact).unwrap();
                    assert_eq!(s.into_exact().unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn indicator_weights_give_scaled_shifted_sum() {
        let ctx = FieldCtx::new(7).unwrap();
        let q = Character::quadratic(&ctx);
        let h = [1, 2, 4];
        let w = Weights::indicator(7, &h, Mode::Exact).unwrap();
        let s = bilinear_s(&ctx, &q, &w, &w, 1, Mode::Exact).unwrap();
        assert_eq!(s.into_exact().unwrap().as_integer(), Some(-3));
        assert!(3.0 <= (7.0f64 * 3.0 * 3.0).sqrt());

        for p in [11u64, 13, 31] {
            let ctx = FieldCtx::new(p).unwrap();
            for hg in ctx.subgroups() {
                let w = Weights::indicator(p as u32, hg.elements(), Mode::Exact).unwrap();
                for chi in all_characters(&ctx).skip(1) {
                    let form = BilinearForm::new(&ctx, &w, &w, Mode::Exact).unwrap();
                    let twisted = w.twisted(&chi).unwrap();
                    let form_prime =
                        BilinearForm::new(&ctx, &twisted, &twisted, Mode::Exact).unwrap();
                    for a in 1..p as u32 {
                        let lin = shifted_sum(&ctx, &chi, hg.elements(), a, Mode::Exact).unwrap();
                        let lin = lin.into_exact().unwrap().scale(hg.order() as i128);
                        assert_eq!(form.eval(&chi, a).unwrap().into_exact().unwrap(), lin);
                        let non = nonlinear_sum_xxa(&ctx, &chi, &hg, a, Mode::Exact).unwrap();
                        let non = non.into_exact().unwrap().scale(hg.order() as i128);
                        assert_eq!(form_prime.eval(&chi, a).unwrap().into_exact().unwrap(), non);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_weights_and_errors() {
        let ctx = FieldCtx::new(11).unwrap();
        let q = Character::quadratic(&ctx);
        let z = Weights::zero(11, Mode::Exact).unwrap();
        let w = Weights::indicator(11, &[1, 3, 4, 5, 9], Mode::Exact).unwrap();
        assert!(bilinear_s(&ctx, &q, &z, &w, 3, Mode::Exact)
            .unwrap()
            .into_exact()
            .unwrap()
            .is_zero());
        assert_eq!(z.norm_sq(), 0.0);
        assert_eq!(w.norm_sq(), 5.0);
        // support on {0} only is killed by χ(0) = 0
        let zero_only = Weights::indicator(11, &[0], Mode::Exact).unwrap();
        assert!(bilinear_s_prime(&ctx, &q, &zero_only, &w, 3, Mode::Exact)
            .unwrap()
            .into_exact()
            .unwrap()
            .is_zero());

        let chi0 = Character::principal(&ctx);
        assert_eq!(
            bilinear_s(&ctx, &chi0, &w, &w, 1, Mode::Exact).unwrap_err(),
            Error::PrincipalCharacter
        );
        assert_eq!(
            bilinear_s(&ctx, &q, &w, &w, 11, Mode::Exact).unwrap_err(),
            Error::ShiftNotCoprime(11)
        );
        let wn = Weights::indicator(11, &[1], Mode::Numeric).unwrap();
        assert_eq!(
            bilinear_s(&ctx, &q, &wn, &w, 1, Mode::Exact).unwrap_err(),
            Error::ModeMismatch
        );
        assert!(Weights::numeric(11, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn weight_scaling_is_linear() {
        let ctx = FieldCtx::new(101).unwrap();
        let mut seed = 99;
        let xi = Weights::numeric(101, lcg_weights(101, &mut seed)).unwrap();
        let eta = Weights::numeric(101, lcg_weights(101, &mut seed)).unwrap();
        let c = Complex64::new(0.3, -1.7);
        for j in [1u32, 7, 50] {
            let chi = Character::new(&ctx, j).unwrap();
            for a in [1u32, 17, 100] {
                let base = bilinear_s(&ctx, &chi, &xi, &eta, a, Mode::Numeric)
                    .unwrap()
                    .to_complex();
                let scaled = bilinear_s(&ctx, &chi, &xi.scaled(c), &eta, a, Mode::Numeric)
                    .unwrap()
                    .to_complex();
                assert!((scaled - c * base).norm() < 1e-9 * (1.0 + base.norm()));
            }
        }
    }
}
