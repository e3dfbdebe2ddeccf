//! Simplicial complexes and the Chern number of the maximal ideal of their
//! face rings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::ComplexJson;

const MAX_VERTICES: usize = 24;

/// A simplicial complex on vertices `1..=n`, given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// Facets as bitmasks, bit `v - 1` for vertex `v`, sorted.
    facets: Vec<u32>,
}

impl SimplicialComplex {
    pub fn new(vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidComplex("no vertices".into()));
        }
        if vertices > MAX_VERTICES {
            return Err(Error::InvalidComplex(format!(
                "at most {MAX_VERTICES} vertices supported, got {vertices}"
            )));
        }
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let mut masks = BTreeSet::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            let mut mask = 0u32;
            for &v in facet {
                if v == 0 || v > vertices {
                    return Err(Error::InvalidComplex(format!(
                        "vertex {v} outside 1..={vertices}"
                    )));
                }
                let bit = 1 << (v - 1);
                if mask & bit != 0 {
                    return Err(Error::InvalidComplex(format!(
                        "vertex {v} repeated in a facet"
                    )));
                }
                mask |= bit;
            }
            if !masks.insert(mask) {
                return Err(Error::InvalidComplex("duplicate facet".into()));
            }
        }
        let facets: Vec<u32> = masks.into_iter().collect();
        for (i, &a) in facets.iter().enumerate() {
            for &b in &facets[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::InvalidComplex("facets are not an antichain".into()));
                }
            }
        }
        Ok(SimplicialComplex { vertices, facets })
    }

    /// `Δ_n = {{1,2},{3},...,{n+2}}`.
    pub fn delta(n: usize) -> Result<Self> {
        let mut facets = vec![vec![1, 2]];
        facets.extend((3..=n + 2).map(|v| vec![v]));
        SimplicialComplex::new(n + 2, &facets)
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        SimplicialComplex::new(json.vertices, &json.facets)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|&mask| {
                (1..=self.vertices)
                    .filter(|v| mask & (1 << (v - 1)) != 0)
                    .collect()
            })
            .collect()
    }

    /// `dim Δ + 1`, the largest facet size.
    pub fn krull_dim(&self) -> usize {
        self.facets
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let first = self.facets[0].count_ones();
        self.facets.iter().all(|m| m.count_ones() == first)
    }

    pub fn faces(&self) -> BTreeSet<u32> {
        let mut faces = BTreeSet::new();
        for &facet in &self.facets {
            // enumerate submasks of the facet
            let mut sub = facet;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        faces
    }
}

/// `f[0] = f_{-1} = 1`, `f[i + 1] = f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `d`, the number of entries after `f_{-1}`.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `f_i` for `-1 <= i <= d - 1`.
    pub fn get(&self, i: i64) -> u64 {
        let k = i + 1;
        if k < 0 {
            return 0;
        }
        self.0.get(k as usize).copied().unwrap_or(0)
    }
}

pub fn f_vector(complex: &SimplicialComplex) -> FVector {
    let d = complex.krull_dim();
    let mut f = vec![0u64; d + 1];
    for face in complex.faces() {
        f[face.count_ones() as usize] += 1;
    }
    FVector(f)
}

/// Coefficients `h_0..h_d` of `Σ f_{i-1} t^i (1-t)^{d-i}`.
pub fn h_vector(f: &FVector) -> Vec<i64> {
    let d = f.dim();
    let mut h = vec![0i64; d + 1];
    for i in 0..=d {
        let fi = f.0[i] as i64;
        // t^i (1-t)^(d-i)
        let mut coeff = 1i64;
        for j in 0..=d - i {
            h[i + j] += fi * coeff;
            coeff = -coeff * (d - i - j) as i64 / (j as i64 + 1);
        }
    }
    h
}

/// `d f_{d-1} - f_{d-2}`.
pub fn chern_number(complex: &SimplicialComplex) -> i64 {
    let f = f_vector(complex);
    let d = f.dim() as i64;
    d * f.get(d - 1) as i64 - f.get(d - 2) as i64
}

/// `h'(1)`, an independent route to the Chern number.
pub fn h_derivative_at_one(h: &[i64]) -> i64 {
    h.iter().enumerate().map(|(i, &c)| i as i64 * c).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceRingReport {
    pub f: FVector,
    pub chern: i64,
    pub pure: bool,
}

/// Report with the Chern number computed both ways (`d f_{d-1} - f_{d-2}` and `h'(1)`).
pub fn face_ring_report(complex: &SimplicialComplex) -> Result<FaceRingReport> {
    let f = f_vector(complex);
    let h = h_vector(&f);
    let chern = chern_number(complex);
    let derivative = h_derivative_at_one(&h);
    if chern != derivative {
        return Err(Error::violation(
            "chern-h-derivative",
            format!("d f_(d-1) - f_(d-2) = {chern} but h'(1) = {derivative}"),
        ));
    }
    let top = f.get(f.dim() as i64 - 1) as i64;
    if h.iter().sum::<i64>() != top {
        return Err(Error::violation(
            "h-sum",
            format!("sum of h {h:?} != f_(d-1) = {top}"),
        ));
    }
    let pure = complex.is_pure();
    if pure && chern < 0 {
        return Err(Error::violation(
            "pure-chern",
            format!("chern {chern} < 0 for a pure complex"),
        ));
    }
    Ok(FaceRingReport { f, chern, pure })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::new(n, &facets).unwrap()
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(&complex(1, &[&[1]])).0, vec![1, 1]);
        assert_eq!(
            f_vector(&SimplicialComplex::delta(3).unwrap()).0,
            vec![1, 5, 1]
        );
        let hollow = complex(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(f_vector(&hollow).0, vec![1, 3, 3]);
        assert_eq!(f_vector(&complex(3, &[&[1, 2, 3]])).0, vec![1, 3, 3, 1]);
    }

    #[test]
    fn h_vectors() {
        let hollow = complex(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(h_vector(&f_vector(&hollow)), vec![1, 1, 1]);
        assert_eq!(h_vector(&FVector(vec![1, 1])), vec![1, 0]);
        assert_eq!(
            h_vector(&f_vector(&SimplicialComplex::delta(3).unwrap())),
            vec![1, 3, -3]
        );
    }

    #[test]
    fn chern_numbers() {
        for n in 2..=10 {
            let d = SimplicialComplex::delta(n).unwrap();
            assert_eq!(chern_number(&d), -(n as i64));
            assert!(!d.is_pure());
        }
        let hollow = complex(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(chern_number(&hollow), 3);
        assert!(hollow.is_pure());
        assert_eq!(chern_number(&complex(1, &[&[1]])), 0);
        assert!(complex(3, &[&[1, 2, 3]]).is_pure());
    }

    #[test]
    fn report_for_delta5() {
        let r = face_ring_report(&SimplicialComplex::delta(5).unwrap()).unwrap();
        assert_eq!(r.f.0, vec![1, 7, 1]);
        assert_eq!(r.chern, -5);
        assert!(!r.pure);
    }

    #[test]
    fn invalid_complexes() {
        for (n, facets) in [
            (0, vec![vec![1]]),
            (3, vec![]),
            (3, vec![vec![1, 4]]),
            (3, vec![vec![0]]),
            (3, vec![vec![1, 2], vec![1]]),
            (3, vec![vec![1, 1]]),
            (3, vec![vec![]]),
        ] {
            assert!(matches!(
                SimplicialComplex::new(n, &facets),
                Err(Error::InvalidComplex(_))
            ));
        }
    }
}
