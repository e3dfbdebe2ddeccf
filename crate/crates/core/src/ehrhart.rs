//! Lattice-point counts of dilated integral polytopes and their Ehrhart
//! polynomials, plus the normal Hilbert function as `E_S(n) - E_P(n)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{int, LinearProgram, LpOutcome};
use crate::monomial::{for_each_point, ExponentVector, MonomialIdeal};
use crate::newton::NewtonPolyhedron;

/// Convex hull of finitely many lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<ExponentVector>,
}

impl LatticePolytope {
    pub fn new(dim: usize, vertices: Vec<ExponentVector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut unique: Vec<ExponentVector> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if !unique.contains(&v) {
                unique.push(v);
            }
        }
        Ok(LatticePolytope {
            dim,
            vertices: unique,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    fn hull_program(&self, prefix: &[u32], n: u32) -> LinearProgram {
        let k = self.vertices.len();
        let mut lp = LinearProgram::new(k);
        for (j, &c) in prefix.iter().enumerate() {
            let row = self.vertices.iter().map(|v| v[j] as i64).collect();
            lp.add_equality(row, c as i64);
        }
        lp.add_equality(vec![1; k], n as i64);
        lp
    }

    /// Whether `a ∈ n·P`.
    pub fn contains(&self, a: &ExponentVector, n: u32) -> Result<bool> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(self.hull_program(a.entries(), n).is_feasible())
    }

    /// `|nP ∩ Z^d|`.
    ///
    /// Each column over the first `d-1` coordinates meets `nP` in a segment;
    /// its endpoints come from minimizing and maximizing the last coordinate.
    pub fn count_lattice_points(&self, n: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        let d = self.dim;
        let last = d - 1;
        let bounds: Vec<u32> = (0..last)
            .map(|j| n * self.vertices.iter().map(|v| v[j]).max().unwrap_or(0) + 1)
            .collect();
        let objective: Vec<i64> = self.vertices.iter().map(|v| v[last] as i64).collect();
        let mut total = 0u64;
        for_each_point(&bounds, |column| {
            let mut lp = self.hull_program(column, n);
            lp.set_objective(objective.clone());
            let low = match lp.minimize() {
                LpOutcome::Optimal { value, .. } => value,
                LpOutcome::Infeasible => return,
                LpOutcome::Unbounded => unreachable!("polytope is bounded"),
            };
            let high = lp
                .maximize()
                .optimal_value()
                .cloned()
                .expect("feasible and bounded");
            let lo = ceil(&low);
            let hi = floor(&high);
            if hi >= lo {
                total += (hi - lo + 1u32).to_u64().expect("count fits in u64");
            }
        });
        total
    }
}

pub fn count_lattice_points(p: &LatticePolytope, n: u32) -> u64 {
    p.count_lattice_points(n)
}

fn floor(t: &BigRational) -> BigInt {
    t.numer().div_floor(t.denom())
}

fn ceil(t: &BigRational) -> BigInt {
    -((-t.numer()).div_floor(t.denom()))
}

/// A polynomial with rational coefficients in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coeffs: Vec<BigRational>,
}

impl EhrhartPolynomial {
    pub fn from_coefficients(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        EhrhartPolynomial { coeffs }
    }

    /// `c_0, c_1, ...` with trailing zeros removed.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, n: i64) -> BigRational {
        let x = int(n);
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Interpolates through `(0, values[0]), (1, values[1]), ...` via forward differences.
    pub fn interpolate(values: &[BigRational]) -> Self {
        let mut diffs: Vec<BigRational> = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        while !diffs.is_empty() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // Σ Δ^k f(0) · C(n, k), with C(n, k) expanded as falling(n, k) / k!
        let mut coeffs = vec![BigRational::zero(); values.len().max(1)];
        let mut falling = vec![BigRational::one()];
        let mut factorial = BigInt::one();
        for (k, delta) in leading.iter().enumerate() {
            if k > 0 {
                factorial *= k;
                // falling *= (n - (k - 1))
                let shift = int(k as i64 - 1);
                let mut next = vec![BigRational::zero(); falling.len() + 1];
                for (i, c) in falling.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * &shift;
                }
                falling = next;
            }
            let scale = delta / BigRational::from_integer(factorial.clone());
            for (i, c) in falling.iter().enumerate() {
                coeffs[i] += c * &scale;
            }
        }
        EhrhartPolynomial::from_coefficients(coeffs)
    }

    pub fn sub(&self, other: &EhrhartPolynomial) -> EhrhartPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        EhrhartPolynomial::from_coefficients(
            (0..len)
                .map(|k| self.coefficient(k) - other.coefficient(k))
                .collect(),
        )
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && k == 0) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Counts at `n = 0..=d`, fit exactly, then checked at `n = d+1, d+2`.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<EhrhartPolynomial> {
    let d = p.dim() as u32;
    let counts: Vec<u64> = (0..=d + 2).map(|n| p.count_lattice_points(n)).collect();
    let nodes: Vec<BigRational> = counts[..=d as usize]
        .iter()
        .map(|&c| int(c as i64))
        .collect();
    let poly = EhrhartPolynomial::interpolate(&nodes);
    for n in d + 1..=d + 2 {
        let value = poly.evaluate(n as i64);
        let counted = counts[n as usize];
        if value != int(counted as i64) {
            return Err(Error::EhrhartMismatch {
                n: n as u64,
                counted,
                interpolated: value.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Leading data of an Ehrhart polynomial relative to ambient dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    /// `c_d`: the volume when the polytope is full-dimensional, else 0.
    pub volume: BigRational,
    /// `c_{d-1}`: half the normalized boundary volume for full-dimensional polytopes.
    pub half_boundary: BigRational,
    pub lower_dimensional: bool,
    /// Leading nonzero coefficient (the relative volume for lower-dimensional polytopes).
    pub leading: BigRational,
}

pub fn leading_data(e: &EhrhartPolynomial, ambient_dim: usize) -> LeadingData {
    let volume = e.coefficient(ambient_dim);
    let half_boundary = if ambient_dim > 0 {
        e.coefficient(ambient_dim - 1)
    } else {
        BigRational::zero()
    };
    LeadingData {
        lower_dimensional: e.degree() < ambient_dim,
        leading: e.coefficient(e.degree()),
        volume,
        half_boundary,
    }
}

/// Ehrhart polynomials of `S` and `P` for an m-primary monomial ideal, with
/// `λ(R/closure(I^n)) = E_S(n) - E_P(n)`.
#[derive(Clone, Debug)]
pub struct NormalEhrhart {
    pub s: EhrhartPolynomial,
    pub p: EhrhartPolynomial,
    pub difference: EhrhartPolynomial,
}

impl NormalEhrhart {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let q = NewtonPolyhedron::build(ideal)?;
        let (s, p) = q.split();
        let s = ehrhart_polynomial(&s)?;
        let p = ehrhart_polynomial(&p)?;
        let difference = s.sub(&p);
        Ok(NormalEhrhart { s, p, difference })
    }

    pub fn value(&self, n: u32) -> Result<u64> {
        let v = self.difference.evaluate(n as i64);
        if v.is_negative() || !v.is_integer() {
            return Err(Error::violation(
                "ehrhart-difference",
                format!("E_S({n}) - E_P({n}) = {v} is not a nonnegative integer"),
            ));
        }
        Ok(v.to_integer().to_u64().expect("fits in u64"))
    }
}

pub fn normal_hilbert_via_ehrhart(ideal: &MonomialIdeal, n: u32) -> Result<u64> {
    NormalEhrhart::new(ideal)?.value(n)
}
