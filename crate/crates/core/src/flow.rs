//! Exact non-negative flow quantities.
//!
//! Production volumes, inter-machine traffic and edge weights are stored as
//! fixed-point integers with six decimal places, so every traffic sum is exact
//! and reproducible regardless of summation order or platform.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

/// Number of raw units in one whole unit of flow.
pub const SCALE: u64 = 1_000_000;
const DECIMALS: usize = 6;

/// A non-negative fixed-point quantity (volume, traffic, or weight).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flow(u64);

impl Flow {
    pub const ZERO: Flow = Flow(0);

    pub const fn from_int(units: u64) -> Self {
        Flow(units * SCALE)
    }

    pub const fn from_raw(raw: u64) -> Self {
        Flow(raw)
    }

    pub const fn raw(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }
}

impl Add for Flow {
    type Output = Flow;
    fn add(self, rhs: Flow) -> Flow {
        Flow(self.0.checked_add(rhs.0).expect("flow overflow"))
    }
}

impl AddAssign for Flow {
    fn add_assign(&mut self, rhs: Flow) {
        *self = *self + rhs;
    }
}

impl Sub for Flow {
    type Output = Flow;
    fn sub(self, rhs: Flow) -> Flow {
        Flow(self.0.checked_sub(rhs.0).expect("negative flow"))
    }
}

impl Mul<u64> for Flow {
    type Output = Flow;
    fn mul(self, rhs: u64) -> Flow {
        Flow(self.0.checked_mul(rhs).expect("flow overflow"))
    }
}

impl Sum for Flow {
    fn sum<I: Iterator<Item = Flow>>(iter: I) -> Flow {
        iter.fold(Flow::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Flow> for Flow {
    fn sum<I: Iterator<Item = &'a Flow>>(iter: I) -> Flow {
        iter.copied().sum()
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0 / SCALE;
        let frac = self.0 % SCALE;
        let text = if frac == 0 {
            whole.to_string()
        } else {
            let digits = format!("{frac:0width$}", width = DECIMALS);
            format!("{whole}.{}", digits.trim_end_matches('0'))
        };
        f.pad(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFlowError(pub String);

impl fmt::Display for ParseFlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseFlowError {}

impl FromStr for Flow {
    type Err = ParseFlowError;

    /// Accepts plain decimals such as `5`, `2.5` or `0.125`; no sign, no exponent.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseFlowError(format!("invalid volume {s:?}"));
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, f),
            None => (s, ""),
        };
        if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) || (s.contains('.') && frac.is_empty()) {
            return Err(bad());
        }
        if frac.len() > DECIMALS {
            return Err(ParseFlowError(format!(
                "volume {s:?} has more than {DECIMALS} decimal places"
            )));
        }
        let whole: u64 = whole.parse().map_err(|_| bad())?;
        let mut frac_raw: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        for _ in frac.len()..DECIMALS {
            frac_raw *= 10;
        }
        whole
            .checked_mul(SCALE)
            .and_then(|w| w.checked_add(frac_raw))
            .map(Flow)
            .ok_or_else(|| ParseFlowError(format!("volume {s:?} is too large")))
    }
}
