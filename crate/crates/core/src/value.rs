//! Dual-mode scalar results.

use core::fmt;

use num_complex::Complex64;

use crate::cyclo::CycInt;

/// Evaluation mode. Always chosen explicitly by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Cyclotomic-integer arithmetic, no rounding.
    Exact,
    /// Double-precision complex arithmetic.
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A character-sum value, exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum SumValue {
    Exact(CycInt),
    Numeric(Complex64),
}

impl SumValue {
    pub fn mode(&self) -> Mode {
        match self {
            SumValue::Exact(_) => Mode::Exact,
            SumValue::Numeric(_) => Mode::Numeric,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            SumValue::Exact(z) => z.to_complex(),
            SumValue::Numeric(z) => *z,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn as_exact(&self) -> Option<&CycInt> {
        match self {
            SumValue::Exact(z) => Some(z),
            SumValue::Numeric(_) => None,
        }
    }

    pub fn into_exact(self) -> Option<CycInt> {
        match self {
            SumValue::Exact(z) => Some(z),
            SumValue::Numeric(_) => None,
        }
    }

    pub fn conj(&self) -> SumValue {
        match self {
            SumValue::Exact(z) => SumValue::Exact(z.conj()),
            SumValue::Numeric(z) => SumValue::Numeric(z.conj()),
        }
    }
}
