//! Character and exponential sum engines.
//!
//! Every engine takes an explicit [`Mode`](crate::Mode). Exact evaluation is
//! plain summation in `ℤ[ζ_{p-1}]`; the numeric batch kernels go through
//! cyclic correlations and convolutions.

mod additive;
mod bilinear;
mod shifted;
pub mod transform;

pub use additive::{exp_sum_subset, inverse_shift_sum, kloosterman_over_h};
pub use bilinear::{bilinear_s, bilinear_s_prime, BilinearForm, WeightValues, Weights};
pub use shifted::{
    nonlinear_sum_xxa, proof_kernel_s_yy1, shifted_product_sum, shifted_sum, shifted_sum_all,
    shifted_sum_all_complex,
};

use num_complex::Complex64;

use crate::character::Character;
use crate::cyclo::{check_order, unit_root, CycInt};
use crate::error::{Error, Result};
use crate::value::{Mode, SumValue};

pub(crate) fn check_residues(set: &[u32], modulus: u32) -> Result<()> {
    match set.iter().find(|&&x| x >= modulus) {
        Some(&x) => Err(Error::ResidueOutOfRange {
            value: x as u64,
            modulus: modulus as u64,
        }),
        None => Ok(()),
    }
}

pub(crate) fn require_nonprincipal(chi: &Character<'_>) -> Result<()> {
    if chi.is_principal() {
        Err(Error::PrincipalCharacter)
    } else {
        Ok(())
    }
}

/// Running sum of roots of unity `ζ_m^e`.
pub(crate) enum RootAcc {
    Exact(CycInt),
    Numeric { m: u64, sum: Complex64 },
}

impl RootAcc {
    pub(crate) fn new(m: usize, mode: Mode) -> Result<Self> {
        Ok(match mode {
            Mode::Exact => {
                check_order(m)?;
                RootAcc::Exact(CycInt::zero(m))
            }
            Mode::Numeric => RootAcc::Numeric {
                m: m as u64,
                sum: Complex64::new(0.0, 0.0),
            },
        })
    }

    /// Adds `ζ^e`, or nothing for `None` (the value at 0).
    #[inline]
    pub(crate) fn push(&mut self, e: Option<u32>) {
        let Some(e) = e else { return };
        match self {
            RootAcc::Exact(z) => z.add_root(e as u64, 1),
            RootAcc::Numeric { m, sum } => *sum += unit_root(*m, e as u64),
        }
    }

    pub(crate) fn finish(self) -> SumValue {
        match self {
            RootAcc::Exact(z) => SumValue::Exact(z),
            RootAcc::Numeric { sum, .. } => SumValue::Numeric(sum),
        }
    }
}
