// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact rational weights and probability-simplex vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used for all weights, scores and flow amounts.
pub type Ratio = BigRational;

/// Shorthand constructor for `num / den`.
pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `num/den`, or as a bare integer when `den == 1`.
pub fn format_ratio(r: &Ratio) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ratio_to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("`{0}` is not a number")]
    Invalid(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Parses an exact rational from `7`, `-2/3` or a finite decimal such as `0.125`.
pub fn parse_ratio(text: &str) -> Result<Ratio, NumberError> {
    let s = text.trim();
    let invalid = || NumberError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(NumberError::ZeroDenominator(s.to_string()));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num = BigInt::from_str(&digits).map_err(|_| invalid())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(Ratio::new(num, den));
    }
    BigInt::from_str(s).map(Ratio::from_integer).map_err(|_| invalid())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight vector is empty")]
    Empty,
    #[error("entry {index} is negative ({value})")]
    Negative { index: usize, value: String },
    #[error("entries sum to {0}, not 1")]
    NotNormalized(String),
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Number(#[from] NumberError),
}

/// A point of the probability simplex over a dense index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<Ratio>,
}

impl WeightVector {
    pub fn new(entries: Vec<Ratio>) -> Result<Self, WeightError> {
        if entries.is_empty() {
            return Err(WeightError::Empty);
        }
        if let Some((index, value)) = entries.iter().enumerate().find(|(_, e)| e.is_negative()) {
            return Err(WeightError::Negative {
                index,
                value: format_ratio(value),
            });
        }
        let total: Ratio = entries.iter().sum();
        if !total.is_one() {
            return Err(WeightError::NotNormalized(format_ratio(&total)));
        }
        Ok(WeightVector { entries })
    }

    pub fn uniform(len: usize) -> Result<Self, WeightError> {
        if len == 0 {
            return Err(WeightError::Empty);
        }
        Ok(WeightVector {
            entries: vec![ratio(1, len as i64); len],
        })
    }

    pub fn point_mass(len: usize, index: usize) -> Result<Self, WeightError> {
        if index >= len {
            return Err(WeightError::Length {
                expected: index + 1,
                found: len,
            });
        }
        let mut entries = vec![Ratio::zero(); len];
        entries[index] = Ratio::one();
        Ok(WeightVector { entries })
    }

    /// Normalizes non-negative integer counts, e.g. plurality scores divided by `n`.
    pub fn from_counts(counts: &[usize]) -> Result<Self, WeightError> {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(WeightError::NotNormalized("0".into()));
        }
        Self::new(counts.iter().map(|&c| ratio(c as i64, total as i64)).collect())
    }

    /// Parses whitespace- or comma-separated rationals, validating the simplex constraint.
    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let entries = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_ratio)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Ratio] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> &Ratio {
        &self.entries[index]
    }

    /// Indices with strictly positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(ratio_to_f64).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&format_ratio(e))?;
        }
        Ok(())
    }
}
