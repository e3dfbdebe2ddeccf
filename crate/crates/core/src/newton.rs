//! Newton polyhedra of m-primary monomial ideals and integral closures of powers.
//!
//! For `I = (x^{v_1}, ..., x^{v_q})` the Newton polyhedron is
//! `Q = conv(v_1, ..., v_q) + R_{>=0}^d`, and the integral closure of `I^n` is
//! generated by the monomials whose exponents are lattice points of `nQ`.
//! Every membership decision is an exact rational LP.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ehrhart::LatticePolytope;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::monomial::{for_each_point, minimalize, ExponentVector, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    /// Pure powers in coordinate order, then generators strictly below the
    /// hyperplane `<v, weight> = 1`, then the rest.
    generators: Vec<ExponentVector>,
    num_below: usize,
    pure_bounds: Vec<u32>,
    weight: Vec<BigRational>,
}

impl NewtonPolyhedron {
    pub fn build(ideal: &MonomialIdeal) -> Result<Self> {
        let dim = ideal.dim();
        let pure_bounds = ideal.pure_bounds()?;
        let weight: Vec<BigRational> = pure_bounds
            .iter()
            .map(|&a| BigRational::new(BigInt::one(), BigInt::from(a)))
            .collect();
        let mut generators: Vec<ExponentVector> = pure_bounds
            .iter()
            .enumerate()
            .map(|(i, &a)| ExponentVector::pure(dim, i, a))
            .collect();
        let one = BigRational::one();
        let (below, rest): (Vec<_>, Vec<_>) = ideal
            .generators()
            .iter()
            .filter(|g| g.as_pure_power().is_none())
            .cloned()
            .partition(|g| weighted_degree(&weight, g) < one);
        let num_below = below.len();
        generators.extend(below);
        generators.extend(rest);
        Ok(NewtonPolyhedron {
            dim,
            generators,
            num_below,
            pure_bounds,
            weight,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn pure_bounds(&self) -> &[u32] {
        &self.pure_bounds
    }

    /// `(1/a_1, ..., 1/a_d)`.
    pub fn weight(&self) -> &[BigRational] {
        &self.weight
    }

    /// Non-pure generators `v` with `<v, weight> < 1`.
    pub fn below_hyperplane(&self) -> &[ExponentVector] {
        &self.generators[self.dim..self.dim + self.num_below]
    }

    /// Pure powers together with the generators below the hyperplane.
    ///
    /// Any `v >= 0` with `<v, weight> >= 1` already lies in
    /// `conv(pure powers) + R_{>=0}^d`, so these points span the same `Q`.
    pub fn vertex_candidates(&self) -> &[ExponentVector] {
        &self.generators[..self.dim + self.num_below]
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

    /// Whether `a ∈ nQ`: is there `λ >= 0` with `Σλ_i = n` and `Σ λ_i v_i <= a`?
    pub fn contains(&self, a: &ExponentVector, n: u32) -> Result<bool> {
        self.check_dim(a.dim())?;
        Ok(self.contains_point(a.entries(), n))
    }

    pub(crate) fn contains_point(&self, a: &[u32], n: u32) -> bool {
        let candidates = self.vertex_candidates();
        if n == 0 {
            return true;
        }
        if candidates
            .iter()
            .any(|v| v.entries().iter().zip(a).all(|(&vi, &ai)| n * vi <= ai))
        {
            return true;
        }
        let d = self.dim;
        let k = candidates.len();
        let mut lp = LinearProgram::new(k + d);
        for j in 0..d {
            let mut row = Vec::with_capacity(k + d);
            row.extend(candidates.iter().map(|v| v[j] as i64));
            row.extend((0..d).map(|s| (s == j) as i64));
            lp.add_equality(row, a[j] as i64);
        }
        let mut total = vec![1; k];
        total.extend((0..d).map(|_| 0));
        lp.add_equality(total, n as i64);
        lp.is_feasible()
    }

    /// Least last coordinate of a point of `nQ` whose leading `d-1`
    /// coordinates are bounded by `column`.
    pub fn column_threshold(&self, column: &[u32], n: u32) -> BigRational {
        let candidates = self.vertex_candidates();
        let d = self.dim;
        let last = d - 1;
        let k = candidates.len();
        let mut lp = LinearProgram::new(k + last);
        for j in 0..last {
            let mut row = Vec::with_capacity(k + last);
            row.extend(candidates.iter().map(|v| v[j] as i64));
            row.extend((0..last).map(|s| (s == j) as i64));
            lp.add_equality(row, column[j] as i64);
        }
        let mut total = vec![1; k];
        total.extend((0..last).map(|_| 0));
        lp.add_equality(total, n as i64);
        let mut objective: Vec<i64> = candidates.iter().map(|v| v[last] as i64).collect();
        objective.extend((0..last).map(|_| 0));
        lp.set_objective(objective);
        match lp.minimize() {
            LpOutcome::Optimal { value, .. } => value,
            // n * a_d e_d is always a feasible choice and the objective is >= 0
            other => unreachable!("column LP must be bounded and feasible: {other:?}"),
        }
    }

    /// `S = conv(0, a_1 e_1, ..., a_d e_d)` and `P = conv(pure powers, generators below the hyperplane)`.
    pub fn split(&self) -> (LatticePolytope, LatticePolytope) {
        let mut s_vertices = vec![ExponentVector::zeros(self.dim)];
        s_vertices.extend(self.generators[..self.dim].iter().cloned());
        let s = LatticePolytope::new(self.dim, s_vertices).expect("nonempty");
        let p =
            LatticePolytope::new(self.dim, self.vertex_candidates().to_vec()).expect("nonempty");
        (s, p)
    }
}

/// `<v, weight>`.
pub fn weighted_degree(weight: &[BigRational], v: &ExponentVector) -> BigRational {
    v.entries()
        .iter()
        .zip(weight)
        .map(|(&e, w)| w * BigInt::from(e))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

pub fn build_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    NewtonPolyhedron::build(ideal)
}

pub fn in_scaled_polyhedron(q: &NewtonPolyhedron, a: &ExponentVector, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    q.contains(a, n)
}

pub fn split_generators(q: &NewtonPolyhedron) -> (LatticePolytope, LatticePolytope) {
    q.split()
}

/// Integral closure of `I^n`, generated by the minimal lattice points of `nQ`.
///
/// Each column of the box `∏_{i<d} [0, n a_i]` contributes the lowest lattice
/// point of `nQ` above it; the minimal elements among those generate.
pub fn integral_closure_power(ideal: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let q = NewtonPolyhedron::build(ideal)?;
    closure_with(&q, n)
}

pub(crate) fn closure_with(q: &NewtonPolyhedron, n: u32) -> Result<MonomialIdeal> {
    let d = q.dim();
    let bounds: Vec<u32> = q.pure_bounds()[..d - 1]
        .iter()
        .map(|&a| n * a + 1)
        .collect();
    let mut candidates = Vec::new();
    for_each_point(&bounds, |column| {
        let t = q.column_threshold(column, n);
        let height = ceil_to_u32(&t);
        let mut point = column.to_vec();
        point.push(height);
        candidates.push(ExponentVector::new(point));
    });
    if d == 1 {
        // the only column is the empty one
        debug_assert_eq!(candidates.len(), 1);
    }
    minimalize(candidates, d)
}

pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    integral_closure_power(ideal, 1)
}

/// `λ(R/closure(I^n)) = |N^d \ nQ|`, counted point by point with membership
/// tests. Within each column of `∏_{i<d} [0, n a_i)` the complement is an
/// initial segment, found by bisection on the last coordinate.
pub fn normal_colength(ideal: &MonomialIdeal, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let q = NewtonPolyhedron::build(ideal)?;
    Ok(normal_colength_with(&q, n))
}

pub(crate) fn normal_colength_with(q: &NewtonPolyhedron, n: u32) -> u64 {
    let d = q.dim();
    let bounds: Vec<u32> = q.pure_bounds()[..d - 1].iter().map(|&a| n * a).collect();
    let top = n * q.pure_bounds()[d - 1];
    let mut total = 0u64;
    let mut point = vec![0u32; d];
    for_each_point(&bounds, |column| {
        point[..d - 1].copy_from_slice(column);
        let (mut lo, mut hi) = (0u32, top);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            point[d - 1] = mid;
            if q.contains_point(&point, n) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        total += lo as u64;
    });
    if d == 1 {
        debug_assert_eq!(total, top as u64);
    }
    total
}

/// Whether `closure(I) * closure(J) = closure(I J)`.
pub fn closure_product_property(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<bool> {
    let lhs = integral_closure(i)?.product(&integral_closure(j)?)?;
    let rhs = integral_closure(&i.product(j)?)?;
    Ok(lhs == rhs)
}

fn ceil_to_u32(t: &BigRational) -> u32 {
    let (q, r) = t.numer().div_mod_floor(t.denom());
    let c = if r.is_zero() { q } else { q + 1 };
    c.to_u32().expect("threshold fits in u32")
}
