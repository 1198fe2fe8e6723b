//! Multiplicative character sums over subgroups of the prime field `F_p*`.
//!
//! The crate computes shifted sums `Σ_{x∈H} χ(x+a)`, Vinogradov-type bilinear
//! forms, nonlinear and Kloosterman-type variants, and checks the classical
//! identities and bounds about them. Identities are decided exactly in the
//! cyclotomic ring `ℤ[ζ_m]`; inequalities are checked numerically.
//!
//! The crate is `no_std` (with `alloc`). The default `std` feature enables the
//! FFT-backed batch kernels; without it the same entry points fall back to
//! direct summation.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod character;
pub mod cyclo;
pub mod engines;
pub mod error;
pub mod field;
pub mod scan;
pub mod value;
pub mod verify;

pub use character::{all_characters, subgroup_character_decomposition, Character};
pub use cyclo::{cyclotomic_poly, CycInt, CycPoly, MAX_EXACT_ORDER};
pub use error::{Error, Result};
pub use field::{is_prime, FieldCtx, Subgroup, MAX_TABLE_PRIME};
pub use value::{Mode, SumValue};
