//! Seeded random inputs for property tests and the acceptance suite.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::face_ring::SimplicialComplex;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rlr2d::PointBasis;

pub const DEFAULT_SEED: u64 = 20_070_801;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An m-primary ideal with pure powers `x_i^{a_i}`, `2 <= a_i <= max_exp`,
/// plus up to `extra` random mixed monomials (at least two variables) inside the box.
pub fn random_ideal<R: Rng>(rng: &mut R, dim: usize, max_exp: u32, extra: usize) -> MonomialIdeal {
    let bounds: Vec<u32> = (0..dim)
        .map(|_| rng.gen_range(2.min(max_exp)..=max_exp))
        .collect();
    let mut gens: Vec<ExponentVector> = bounds
        .iter()
        .enumerate()
        .map(|(i, &a)| ExponentVector::pure(dim, i, a))
        .collect();
    let count = rng.gen_range(0..=extra);
    for _ in 0..count {
        let v: Vec<u32> = bounds.iter().map(|&a| rng.gen_range(0..a)).collect();
        if v.iter().filter(|&&x| x > 0).count() >= 2 {
            gens.push(ExponentVector::new(v));
        }
    }
    MonomialIdeal::new(dim, gens).expect("pure powers make the ideal m-primary")
}

pub fn random_parameter<R: Rng>(rng: &mut R, dim: usize, max_exp: u32) -> MonomialIdeal {
    let exps: Vec<u32> = (0..dim).map(|_| rng.gen_range(1..=max_exp)).collect();
    MonomialIdeal::parameter(&exps).expect("positive exponents")
}

/// A pure complex on at most `max_vertices` vertices.
pub fn random_pure_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let size = rng.gen_range(1..=n);
    let wanted = rng.gen_range(1..=6);
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..wanted {
        let mut facet: Vec<usize> = sample(rng, n, size).into_iter().map(|v| v + 1).collect();
        facet.sort_unstable();
        if !facets.contains(&facet) {
            facets.push(facet);
        }
    }
    SimplicialComplex::new(n, &facets).expect("equal-size distinct facets form an antichain")
}

pub fn random_point_basis<R: Rng>(rng: &mut R) -> PointBasis {
    let len = rng.gen_range(1..=4);
    let entries = (0..len)
        .map(|_| (rng.gen_range(1..=5), rng.gen_range(1..=3)))
        .collect();
    PointBasis::new(entries).expect("positive entries")
}
