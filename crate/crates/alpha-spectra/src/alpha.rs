//! The validated alpha parameter, 0 <= alpha < 1.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphaError {
    #[error("alpha must satisfy 0 <= alpha < 1, got {0}")]
    OutOfRange(String),
    #[error("cannot parse alpha from {0:?}")]
    Unparseable(String),
}

/// A real weight in [0, 1). When constructed from a rational or a decimal
/// literal, the exact fraction p/q is kept alongside the float so that the
/// exact-arithmetic rank path can use it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    value: f64,
    exact: Option<(u32, u32)>,
}

impl AlphaParam {
    pub fn new(value: f64) -> Result<Self, AlphaError> {
        if !value.is_finite() || !(0.0..1.0).contains(&value) {
            return Err(AlphaError::OutOfRange(format!("{value}")));
        }
        Ok(Self { value, exact: None })
    }

    /// Exact rational construction; the float value is the nearest f64.
    pub fn from_rational(num: u32, den: u32) -> Result<Self, AlphaError> {
        if den == 0 || num >= den {
            return Err(AlphaError::OutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Self { value: num as f64 / den as f64, exact: Some((num / g, den / g)) })
    }

    /// Parses `p/q` or a decimal literal. Decimal literals keep their exact
    /// fraction (e.g. "0.1" is 1/10) as long as it fits in u32.
    pub fn parse(text: &str) -> Result<Self, AlphaError> {
        let text = text.trim();
        if let Some((p, q)) = text.split_once('/') {
            let p: u32 = p.trim().parse().map_err(|_| AlphaError::Unparseable(text.into()))?;
            let q: u32 = q.trim().parse().map_err(|_| AlphaError::Unparseable(text.into()))?;
            return Self::from_rational(p, q);
        }
        let value: f64 = text.parse().map_err(|_| AlphaError::Unparseable(text.into()))?;
        if !value.is_finite() || !(0.0..1.0).contains(&value) {
            return Err(AlphaError::OutOfRange(text.into()));
        }
        // Recover the exact fraction from the decimal digits.
        if let Some((int, frac)) = text.split_once('.') {
            if int.chars().all(|c| c.is_ascii_digit())
                && frac.chars().all(|c| c.is_ascii_digit())
                && frac.len() <= 9
            {
                let den = 10u32.pow(frac.len() as u32);
                if let (Ok(i), Ok(f)) = (int.parse::<u32>(), frac.parse::<u32>()) {
                    if let Some(num) = i.checked_mul(den).map(|x| x + f) {
                        if num < den {
                            return Self::from_rational(num, den);
                        }
                    }
                }
            }
        } else if text == "0" {
            return Self::from_rational(0, 1);
        }
        Self::new(value)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The reduced fraction p/q, when this alpha was built exactly.
    pub fn exact_rational(&self) -> Option<(u32, u32)> {
        self.exact
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some((0, _)) => write!(f, "0"),
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}
