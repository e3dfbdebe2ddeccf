//! Monomial ideals of `k[x_1, ..., x_d]` stored by their minimal generators.
//!
//! Every ideal is kept in canonical form: generators are minimal under the
//! componentwise order and sorted in lex monomial order, so two ideals are equal
//! exactly when their generator lists are.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^a = x_1^{a_1} ... x_d^{a_d}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    /// `k * e_i` in dimension `dim`.
    pub fn pure(dim: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; dim];
        v[i] = k;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// If the vector is `k * e_i` with `k > 0`, returns `(i, k)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut support = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (i, &k) = support.next()?;
        if support.next().is_some() {
            return None;
        }
        Some((i, k))
    }
}

impl Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A proper nonzero monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `vectors`, keeping only the minimal ones.
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        minimalize(vectors, dim)
    }

    /// Convenience constructor from raw rows; the dimension is taken from the first row.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().ok_or(Error::EmptyGenerators)?.as_ref().len();
        Self::new(
            dim,
            rows.iter()
                .map(|r| ExponentVector::new(r.as_ref().to_vec())),
        )
    }

    /// The ideal `(x_1^{a_1}, ..., x_d^{a_d})`.
    pub fn parameter(exponents: &[u32]) -> Result<Self> {
        let dim = exponents.len();
        if exponents.contains(&0) {
            return Err(Error::Invalid(
                "parameter exponents must be positive".into(),
            ));
        }
        Self::new(
            dim,
            exponents
                .iter()
                .enumerate()
                .map(|(i, &a)| ExponentVector::pure(dim, i, a)),
        )
    }

    /// The maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(dim: usize) -> Result<Self> {
        Self::parameter(&vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// Generators as plain rows, in canonical order.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.gens.iter().map(|g| g.entries().to_vec()).collect()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Pure-power exponent in each coordinate, if the ideal is m-primary.
    pub fn pure_bounds(&self) -> Result<Vec<u32>> {
        let mut bounds: Vec<Option<u32>> = vec![None; self.dim];
        for g in &self.gens {
            if let Some((i, k)) = g.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(k, |b| b.min(k)));
            }
        }
        bounds
            .into_iter()
            .enumerate()
            .map(|(variable, b)| b.ok_or(Error::NotMPrimary { variable }))
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_bounds().is_ok()
    }

    /// Generated by pure powers of all variables, i.e. by a system of parameters.
    pub fn is_parameter(&self) -> bool {
        self.gens.len() == self.dim && self.gens.iter().all(|g| g.as_pure_power().is_some())
    }

    /// Smallest total degree of a generator.
    pub fn order(&self) -> u64 {
        self.gens.iter().map(|g| g.degree()).min().unwrap_or(0)
    }

    pub fn contains_monomial(&self, a: &ExponentVector) -> Result<bool> {
        self.check_dim(a.dim())?;
        Ok(self.gens.iter().any(|g| g.divides(a)))
    }

    /// `self ⊆ other`; on failure returns a generator of `self` outside `other`.
    pub fn containment_witness(&self, other: &MonomialIdeal) -> Result<Option<ExponentVector>> {
        other.check_dim(self.dim)?;
        for g in &self.gens {
            if !other.gens.iter().any(|h| h.divides(g)) {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        Ok(self.containment_witness(other)?.is_none())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        let sums = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)));
        minimalize(sums, self.dim)
    }

    /// `I^n` for `n >= 1`, by repeated squaring.
    pub fn power(&self, n: u32) -> Result<MonomialIdeal> {
        if n == 0 {
            return Err(Error::ZeroPower);
        }
        let mut result: Option<MonomialIdeal> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.product(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.product(&base)?;
        }
        Ok(result.expect("n >= 1"))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)));
        minimalize(lcms, self.dim)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        minimalize(self.gens.iter().chain(&other.gens).cloned(), self.dim)
    }

    /// `λ(R/I)`: the number of standard monomials.
    ///
    /// Enumerates columns of the box `∏_{i<d} [0, A_i)`; within a column the
    /// standard monomials form an initial segment of the last coordinate whose
    /// length is the smallest last exponent among generators dividing the column.
    pub fn colength(&self) -> Result<u64> {
        let bounds = self.pure_bounds()?;
        let d = self.dim;
        let last = d - 1;
        let mut total = 0u64;
        for_each_point(&bounds[..last], |column| {
            let height = self
                .gens
                .iter()
                .filter(|g| g.entries()[..last].iter().zip(column).all(|(e, c)| e <= c))
                .map(|g| g[last])
                .min()
                .unwrap_or(bounds[last]);
            total += height as u64;
        });
        Ok(total)
    }

    /// `λ(self/sub)` for `sub ⊆ self`, both m-primary.
    pub fn quotient_length(&self, sub: &MonomialIdeal) -> Result<u64> {
        if let Some(witness) = sub.containment_witness(self)? {
            return Err(Error::NotContained { witness });
        }
        Ok(sub.colength()? - self.colength()?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", monomial_string(g))?;
        }
        write!(f, ")")
    }
}

/// Renders `x^a` using `x,y,z,w` for up to four variables, `x1..xd` beyond.
pub fn monomial_string(a: &ExponentVector) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let d = a.dim();
    let mut out = String::new();
    for (i, &e) in a.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if d <= 4 {
            out.push_str(NAMES[i]);
        } else {
            out.push_str(&format!("x{}", i + 1));
        }
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Keeps the componentwise-minimal elements of `vectors`, ordered by the lex
/// monomial order (largest first, `x > y > z > ...`).
pub fn minimalize(
    vectors: impl IntoIterator<Item = ExponentVector>,
    dim: usize,
) -> Result<MonomialIdeal> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut all: Vec<ExponentVector> = vectors.into_iter().collect();
    if all.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if let Some(bad) = all.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    if all.iter().any(|v| v.entries().iter().all(|&e| e == 0)) {
        return Err(Error::Invalid("the unit ideal is not representable".into()));
    }
    all.sort_unstable();
    all.dedup();
    // A divisor of v is lexicographically no larger than v, so scanning in
    // lex order and testing against the kept set is enough.
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(all.len());
    for v in all {
        if !kept.iter().any(|k| k.divides(&v)) {
            kept.push(v);
        }
    }
    kept.reverse();
    Ok(MonomialIdeal { dim, gens: kept })
}

/// Calls `f` on every point of `∏ [0, bounds[i])` in lexicographic order.
pub(crate) fn for_each_point(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let mut point = vec![0u32; bounds.len()];
    loop {
        f(&point);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            point[i] += 1;
            if point[i] < bounds[i] {
                break;
            }
            point[i] = 0;
        }
    }
}
