//! One checker per identity or bound, each producing a [`Verdict`], plus a
//! deterministic suite runner over a range of moduli.

mod checks;
mod suite;

pub use checks::*;
pub use suite::{
    random_subset, random_weights, run_suite, run_unit, ModePolicy, Record, SuiteConfig,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::value::Mode;

/// Absolute tolerance on magnitudes for inequality checks.
pub const TOLERANCE: f64 = 1e-9;

/// The claims a [`Verdict`] can be about, in suite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// `max_{a≠0} |Σ_{x∈H} χ(x+a)| < √p`.
    ShiftedBound,
    /// `|Σ_{x∈H} χ(x+a)|² ≤ (p|H| - |Σ_{x∈H} χ(x)|²)/|H|`.
    SharpenedBound,
    /// `max_{a≠0} |Σ_{x∈H} χ(x+a)| < p^{-ε}|H|` when `|H| > p^{1/2+ε}`.
    EpsCorollary,
    /// `Σ_a |Σ_{x∈D} χ(x+a)|² = p|D| - |D|²`.
    MeanSquare,
    /// `(1/(p-1)) Σ_χ |Σ_{n∈H} χ(n+a)| ≤ √|H|`.
    CharacterAverage,
    /// `Σ_χ |Σ_{n∈H} χ(n)| = p - 1`.
    Granville,
    /// `Σ_χ |Σ_{n∈H} χ(n)| ≤ p`.
    Shkredov,
    /// `Σ_{a≠0} |Σ_{x∈D} e_q(ax)|² = |D|(q - |D|)`.
    Konyagin,
    /// `|S|, |S'| ≤ √(pXY)`.
    Bilinear,
    /// The four-case evaluation of `Σ_x χ(xy+a)χ̄(xy₁+a)`.
    ProofKernel,
    /// `|Σ_{x∈H} χ(x(x+a))| ≤ √p`.
    Nonlinear,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::ShiftedBound,
        Claim::SharpenedBound,
        Claim::EpsCorollary,
        Claim::MeanSquare,
        Claim::CharacterAverage,
        Claim::Granville,
        Claim::Shkredov,
        Claim::Konyagin,
        Claim::Bilinear,
        Claim::ProofKernel,
        Claim::Nonlinear,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ShiftedBound => "thm2",
            Claim::SharpenedBound => "thm2_sharp",
            Claim::EpsCorollary => "eps_corollary",
            Claim::MeanSquare => "eq2",
            Claim::CharacterAverage => "meanvalue2",
            Claim::Granville => "granville",
            Claim::Shkredov => "shkredov",
            Claim::Konyagin => "konyagin",
            Claim::Bilinear => "lemma3",
            Claim::ProofKernel => "lemma3_kernel",
            Claim::Nonlinear => "nonlinear",
        }
    }

    /// Identities are checked exactly whatever the requested mode.
    pub fn is_identity(self) -> bool {
        matches!(
            self,
            Claim::MeanSquare
                | Claim::Granville
                | Claim::Shkredov
                | Claim::Konyagin
                | Claim::ProofKernel
        )
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownClaim(pub String);

impl fmt::Display for UnknownClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown claim {:?}", self.0)
    }
}

impl core::error::Error for UnknownClaim {}

impl FromStr for Claim {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| UnknownClaim(s.into()))
    }
}

/// A computed or claimed quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Integer(i128),
    Real(f64),
}

impl Quantity {
    pub fn as_f64(self) -> f64 {
        match self {
            Quantity::Integer(n) => n as f64,
            Quantity::Real(x) => x,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Parameters identifying one checked instance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    /// `p`, or `q` for the exponential-sum identity.
    pub modulus: u32,
    pub chi: Option<u32>,
    pub h_order: Option<u32>,
    /// Explicit set `D` when it is not a subgroup.
    pub set: Option<Vec<u32>>,
    pub a: Option<u32>,
    pub eps: Option<f64>,
    /// Index of a random instance within its batch.
    pub sample: Option<u32>,
}

impl Params {
    pub fn new(modulus: u32) -> Self {
        Self {
            modulus,
            ..Self::default()
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub claim: Claim,
    pub params: Params,
    pub mode: Mode,
    pub computed: Quantity,
    /// The identity's value or the inequality's bound.
    pub target: Quantity,
    /// `target - computed`; exactly zero for a passing identity.
    pub margin: f64,
    pub pass: bool,
    /// The hypothesis did not hold, so the claim says nothing.
    pub vacuous: bool,
}
