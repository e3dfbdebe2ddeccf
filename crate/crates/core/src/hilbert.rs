//! Hilbert functions of the `I`-adic and integral-closure filtrations,
//! their Hilbert polynomials in the signed binomial basis
//!
//! `P(n) = Σ_{i=0}^{d} (-1)^i e_i C(n+d-1-i, d-i)`,
//!
//! postulation numbers, and truncated Hilbert series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::newton::{normal_colength_with, NewtonPolyhedron};

/// Largest sample range tried by [`hilbert_data`].
pub const MAX_RANGE: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// `I^n`
    Ordinary,
    /// `closure(I^n)`
    Normal,
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filtration::Ordinary => write!(f, "ordinary"),
            Filtration::Normal => write!(f, "normal"),
        }
    }
}

/// `H(n) = λ(R/I_n)` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSamples {
    pub filtration: Filtration,
    pub dim: usize,
    pub values: Vec<u64>,
}

impl HilbertSamples {
    pub fn range(&self) -> usize {
        self.values.len() - 1
    }
}

/// Default sample range `2d + 6`.
pub fn default_range(dim: usize) -> usize {
    2 * dim + 6
}

pub fn sample(
    ideal: &MonomialIdeal,
    filtration: Filtration,
    range: usize,
) -> Result<HilbertSamples> {
    let d = ideal.dim();
    let mut values = Vec::with_capacity(range + 1);
    values.push(0);
    match filtration {
        Filtration::Ordinary => {
            ideal.pure_bounds()?;
            let mut power = ideal.clone();
            for n in 1..=range {
                if n > 1 {
                    power = power.product(ideal)?;
                }
                values.push(power.colength()?);
            }
        }
        Filtration::Normal => {
            let q = NewtonPolyhedron::build(ideal)?;
            for n in 1..=range {
                values.push(normal_colength_with(&q, n as u32));
            }
        }
    }
    Ok(HilbertSamples {
        filtration,
        dim: d,
        values,
    })
}

/// Coefficients `e_0..e_d` and the postulation number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub dim: usize,
    pub e: Vec<i64>,
    /// Largest sampled `n` with `H(n) != P(n)`; `None` if they agree on every sample.
    pub postulation: Option<i64>,
    /// Sample indices `[start, end]` the polynomial was fitted on.
    pub fit_window: (usize, usize),
}

impl HilbertData {
    pub fn e(&self, i: usize) -> i64 {
        self.e.get(i).copied().unwrap_or(0)
    }

    /// `P(n)`.
    pub fn evaluate(&self, n: i64) -> BigInt {
        let d = self.dim as i64;
        let mut total = BigInt::zero();
        for (i, &e) in self.e.iter().enumerate() {
            let i = i as i64;
            let term = BigInt::from(e) * binomial(n + d - 1 - i, (d - i) as u64);
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}

/// Generalized binomial `C(m, k)` for any integer `m`.
pub fn binomial(m: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= m - t as i64;
        den *= t + 1;
    }
    num / den
}

/// Fits the Hilbert polynomial to the last `d+1` samples, checks it against
/// the `d+2` samples before them, and locates the postulation number.
pub fn extract(samples: &HilbertSamples) -> Result<HilbertData> {
    let d = samples.dim;
    let len = samples.values.len();
    if len < 2 * d + 3 {
        return Err(Error::TooFewSamples {
            needed: 2 * d + 3,
            got: len,
        });
    }
    let start = len - 1 - d;
    let window: Vec<BigInt> = samples.values[start..]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let newton = forward_differences(&window);
    let poly = |m: i64| -> BigInt {
        newton
            .iter()
            .enumerate()
            .map(|(k, delta)| delta * binomial(m - start as i64, k as u64))
            .sum()
    };
    let check_from = start - (d + 2);
    for idx in (check_from..start).rev() {
        if poly(idx as i64) != BigInt::from(samples.values[idx]) {
            return Err(Error::RangeTooShort { index: idx });
        }
    }
    let postulation = (0..check_from)
        .rev()
        .find(|&idx| poly(idx as i64) != BigInt::from(samples.values[idx]))
        .map(|idx| idx as i64);

    // Δ^k P(-k) = (-1)^{d-k} e_{d-k}
    let at: Vec<BigInt> = (-(d as i64)..=0).map(poly).collect();
    let mut e = vec![0i64; d + 1];
    for k in 0..=d {
        // values P(-k), ..., P(0) sit at the tail of `at`
        let slice = &at[d - k..];
        let delta = forward_differences(slice)[k].clone();
        let i = d - k;
        let signed = if i.is_multiple_of(2) { delta } else { -delta };
        e[i] = signed.to_i64().expect("coefficient fits in i64");
    }
    Ok(HilbertData {
        dim: d,
        e,
        postulation,
        fit_window: (start, len - 1),
    })
}

/// `[f_0, Δf_0, Δ²f_0, ...]`.
fn forward_differences(values: &[BigInt]) -> Vec<BigInt> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Samples with the default range, doubling it (up to [`MAX_RANGE`]) until
/// the polynomial regime is detected.
pub fn hilbert_data(
    ideal: &MonomialIdeal,
    filtration: Filtration,
) -> Result<(HilbertSamples, HilbertData)> {
    hilbert_data_from(ideal, filtration, default_range(ideal.dim()))
}

pub fn hilbert_data_from(
    ideal: &MonomialIdeal,
    filtration: Filtration,
    range: usize,
) -> Result<(HilbertSamples, HilbertData)> {
    let mut range = range;
    loop {
        let samples = sample(ideal, filtration, range)?;
        match extract(&samples) {
            Ok(data) => return Ok((samples, data)),
            Err(Error::RangeTooShort { .. }) if range < MAX_RANGE => {
                range = (2 * range).min(MAX_RANGE);
            }
            Err(err) => return Err(err),
        }
    }
}

/// `λ(I_{k}/I_{k+1})` for `k = 0..N-1`: coefficients of `Σ λ(I_{n-1}/I_n) t^{n-1}`.
pub fn series(samples: &HilbertSamples) -> Vec<u64> {
    samples.values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// `(1-t)^d · F(t)`, truncated to the length of `series`.
pub fn series_numerator(series: &[u64], dim: usize) -> Vec<i64> {
    let mut coeffs: Vec<i64> = series.iter().map(|&c| c as i64).collect();
    for _ in 0..dim {
        for k in (1..coeffs.len()).rev() {
            coeffs[k] -= coeffs[k - 1];
        }
    }
    coeffs
}

/// The `k`-th finite differences of the samples.
pub fn finite_differences(values: &[u64], k: usize) -> Vec<i64> {
    let mut row: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    for _ in 0..k {
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    row
}

/// Report layout for `{"e", "postulation", "samples", "series"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub e: Vec<i64>,
    pub postulation: Option<i64>,
    pub samples: Vec<u64>,
    pub series: Vec<u64>,
}

impl HilbertReport {
    pub fn new(samples: &HilbertSamples, data: &HilbertData) -> Self {
        HilbertReport {
            e: data.e.clone(),
            postulation: data.postulation,
            samples: samples.values.clone(),
            series: series(samples),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_rows(rows).unwrap()
    }

    fn marley() -> MonomialIdeal {
        ideal(&[
            &[3, 0, 0],
            &[0, 3, 0],
            &[0, 0, 3],
            &[2, 1, 0],
            &[1, 2, 0],
            &[0, 1, 2],
            &[1, 1, 1],
        ])
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    #[test]
    fn normal_samples_of_x2_y3() {
        let s = sample(&ideal(&[&[2, 0], &[0, 3]]), Filtration::Normal, 5).unwrap();
        assert_eq!(s.values, vec![0, 5, 16, 33, 56, 85]);
        assert_eq!(series(&s), vec![5, 11, 17, 23, 29]);
    }

    #[test]
    fn ordinary_samples_of_maximal_ideal() {
        let s = sample(&MonomialIdeal::maximal(2).unwrap(), Filtration::Ordinary, 4).unwrap();
        assert_eq!(s.values, vec![0, 1, 3, 6, 10]);
        assert_eq!(series(&s), vec![1, 2, 3, 4]);
        assert!(matches!(
            extract(&s),
            Err(Error::TooFewSamples { needed: 7, got: 5 })
        ));
    }

    #[test]
    fn extraction() {
        let (_, data) = hilbert_data(&ideal(&[&[2, 0], &[0, 3]]), Filtration::Normal).unwrap();
        assert_eq!(data.e, vec![6, 1, 0]);
        assert_eq!(data.postulation, None);

        let (s, data) = hilbert_data_from(&marley(), Filtration::Ordinary, 12).unwrap();
        assert_eq!(data.e, vec![27, 18, 4, -1]);
        assert_eq!(s.values[1], 14);
        // P(0) = 1 while H(0) = 0
        assert_eq!(data.postulation, Some(0));
        for n in 1..=12 {
            assert_eq!(data.evaluate(n), BigInt::from(s.values[n as usize]));
        }

        let (_, data) =
            hilbert_data(&MonomialIdeal::maximal(2).unwrap(), Filtration::Ordinary).unwrap();
        assert_eq!(data.e, vec![1, 0, 0]);
    }

    #[test]
    fn short_range_is_reported() {
        // a function that only becomes polynomial late
        let mut values: Vec<u64> = (0..12u64).map(|n| n * n).collect();
        values[3] += 1;
        let s = HilbertSamples {
            filtration: Filtration::Ordinary,
            dim: 2,
            values: values[..8].to_vec(),
        };
        assert!(matches!(
            extract(&s),
            Err(Error::RangeTooShort { index: 3 })
        ));
        let s = HilbertSamples { values, ..s };
        let data = extract(&s).unwrap();
        assert_eq!(data.postulation, Some(3));
    }

    #[test]
    fn numerator_of_series() {
        // (x^2, y^3), normal filtration: 5 + t
        let s = sample(&ideal(&[&[2, 0], &[0, 3]]), Filtration::Normal, 6).unwrap();
        assert_eq!(series_numerator(&series(&s), 2), vec![5, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn dth_difference_is_multiplicity() {
        let s = sample(&marley(), Filtration::Ordinary, 8).unwrap();
        let diffs = finite_differences(&s.values, 3);
        assert!(diffs[2..].iter().all(|&v| v == 27));
    }
}
