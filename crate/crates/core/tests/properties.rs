use nhl::ehrhart::{count_lattice_points, LatticePolytope, NormalEhrhart};
use nhl::face_ring::{
    f_vector, face_ring_report, h_derivative_at_one, h_vector, SimplicialComplex,
};
use nhl::hilbert::{finite_differences, hilbert_data, HilbertSamples};
use nhl::monomial::minimalize;
use nhl::newton::{build_polyhedron, integral_closure, integral_closure_power, normal_colength};
use nhl::rlr2d::{hoskin_deligne, MixedPair, PointBasis};
use nhl::{ExponentVector, Filtration, MonomialIdeal};
use proptest::prelude::*;

fn ideal_in(
    dim: std::ops::RangeInclusive<usize>,
    max_exp: u32,
) -> impl Strategy<Value = MonomialIdeal> {
    dim.prop_flat_map(move |d| {
        (
            prop::collection::vec(1..=max_exp, d),
            prop::collection::vec(prop::collection::vec(0..max_exp, d), 0..4),
        )
    })
    .prop_map(|(bounds, extras)| {
        let d = bounds.len();
        let mut gens: Vec<ExponentVector> = (0..d)
            .map(|i| ExponentVector::pure(d, i, bounds[i]))
            .collect();
        for e in extras {
            let v: Vec<u32> = e.iter().zip(&bounds).map(|(&x, &b)| x % b).collect();
            if v.iter().any(|&x| x > 0) {
                gens.push(ExponentVector::new(v));
            }
        }
        MonomialIdeal::new(d, gens).unwrap()
    })
}

fn plane_ideal() -> impl Strategy<Value = MonomialIdeal> {
    ideal_in(2..=2, 6)
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    ideal_in(2..=3, 4)
}

fn contains(ideal: &MonomialIdeal, a: &[u32]) -> bool {
    ideal
        .generators()
        .iter()
        .any(|g| g.entries().iter().zip(a).all(|(x, y)| x <= y))
}

/// Every point of `[0, b_0] x ... x [0, b_{d-1}]`.
fn box_points(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Membership in `n·Q` for `d = 2` from the lower convex hull of the generators.
fn in_newton_polygon(ideal: &MonomialIdeal, a: &[u32], n: u32) -> bool {
    let mut pts: Vec<(i64, i64)> = ideal
        .generators()
        .iter()
        .map(|g| (g[0] as i64, g[1] as i64))
        .collect();
    pts.sort();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (q.0 - o.0) * (p.1 - o.1) - (q.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let n = n as i64;
    let (x, y) = (a[0] as i64, a[1] as i64);
    hull.windows(2).all(|w| {
        let (p, q) = (w[0], w[1]);
        (q.0 - p.0) * (y - n * p.1) - (q.1 - p.1) * (x - n * p.0) >= 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimalize_is_idempotent_and_order_free(ideal in small_ideal(), extra in prop::collection::vec(prop::collection::vec(0u32..6, 3), 0..5)) {
        let d = ideal.dim();
        let mut vectors: Vec<ExponentVector> = ideal.generators().to_vec();
        vectors.extend(extra.into_iter().map(|v| ExponentVector::new(v[..d].to_vec())).filter(|v| v.degree() > 0));
        let a = minimalize(vectors.clone(), d).unwrap();
        vectors.reverse();
        let b = minimalize(vectors, d).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(minimalize(a.generators().to_vec(), d).unwrap(), a);
    }

    #[test]
    fn product_and_intersection_match_membership(i in small_ideal(), j in small_ideal()) {
        prop_assume!(i.dim() == j.dim());
        let product = i.product(&j).unwrap();
        let meet = i.intersect(&j).unwrap();
        let sum = i.sum(&j).unwrap();
        for g in i.generators() {
            for h in j.generators() {
                prop_assert!(contains(&product, g.add(h).entries()));
            }
        }
        for p in product.generators() {
            let split = i.generators().iter().any(|g| j.generators().iter().any(|h| &g.add(h) == p));
            prop_assert!(split);
        }
        let bounds: Vec<u32> = i.pure_bounds().unwrap().iter().zip(j.pure_bounds().unwrap()).map(|(a, b)| a.max(&b) + 1).collect();
        for p in box_points(&bounds) {
            prop_assert_eq!(contains(&meet, &p), contains(&i, &p) && contains(&j, &p));
            prop_assert_eq!(contains(&sum, &p), contains(&i, &p) || contains(&j, &p));
        }
    }

    #[test]
    fn colength_counts_standard_monomials(i in small_ideal()) {
        let bounds: Vec<u32> = i.pure_bounds().unwrap().iter().map(|b| b - 1).collect();
        let brute = box_points(&bounds).iter().filter(|p| !contains(&i, p)).count() as u64;
        prop_assert_eq!(i.colength().unwrap(), brute);
    }

    #[test]
    fn powers_multiply_and_colength_is_monotone(i in small_ideal(), m in 1u32..3, n in 1u32..3) {
        let lhs = i.power(m + n).unwrap();
        prop_assert_eq!(&lhs, &i.power(m).unwrap().product(&i.power(n).unwrap()).unwrap());
        prop_assert!(lhs.is_subset_of(&i).unwrap());
        prop_assert!(lhs.colength().unwrap() >= i.power(m).unwrap().colength().unwrap());
    }

    #[test]
    fn newton_membership_is_monotone_and_superadditive(i in small_ideal(), m in 1u32..3, n in 1u32..3) {
        let q = build_polyhedron(&i).unwrap();
        let d = i.dim();
        let bounds: Vec<u32> = q.pure_bounds().iter().map(|&b| b * m).collect();
        let inside: Vec<Vec<u32>> = box_points(&bounds)
            .into_iter()
            .filter(|p| q.contains(&ExponentVector::new(p.clone()), m).unwrap())
            .collect();
        for p in inside.iter().take(12) {
            for k in 0..d {
                let mut up = p.clone();
                up[k] += 1;
                prop_assert!(q.contains(&ExponentVector::new(up), m).unwrap());
            }
            for g in i.generators().iter().take(3) {
                let scaled: Vec<u32> = g.entries().iter().map(|&x| x * n).collect();
                let total: Vec<u32> = p.iter().zip(&scaled).map(|(a, b)| a + b).collect();
                prop_assert!(q.contains(&ExponentVector::new(total), m + n).unwrap());
            }
        }
    }

    #[test]
    fn newton_membership_matches_hull_in_the_plane(i in plane_ideal(), n in 1u32..4) {
        let q = build_polyhedron(&i).unwrap();
        let bounds: Vec<u32> = q.pure_bounds().iter().map(|&b| b * n).collect();
        for p in box_points(&bounds) {
            prop_assert_eq!(q.contains(&ExponentVector::new(p.clone()), n).unwrap(), in_newton_polygon(&i, &p, n), "point {:?}", p);
        }
    }

    #[test]
    fn closures_contain_powers_and_are_idempotent(i in small_ideal(), n in 1u32..4) {
        let closure = integral_closure_power(&i, n).unwrap();
        prop_assert!(i.power(n).unwrap().is_subset_of(&closure).unwrap());
        prop_assert_eq!(integral_closure(&closure).unwrap(), closure.clone());
        prop_assert_eq!(normal_colength(&i, n).unwrap(), closure.colength().unwrap());
        // u^k in I^{nk} certifies u in the closure
        let square = i.power(2 * n).unwrap();
        let bounds: Vec<u32> = i.pure_bounds().unwrap().iter().map(|&b| b * n).collect();
        for p in box_points(&bounds) {
            let doubled: Vec<u32> = p.iter().map(|x| 2 * x).collect();
            if contains(&square, &doubled) {
                prop_assert!(contains(&closure, &p), "{:?}", p);
            }
        }
    }

    #[test]
    fn ehrhart_difference_is_normal_colength(i in small_ideal()) {
        let normal = NormalEhrhart::new(&i).unwrap();
        prop_assert_eq!(normal.value(0).unwrap(), 0);
        for n in 1..=3 {
            prop_assert_eq!(normal.value(n).unwrap(), normal_colength(&i, n).unwrap());
        }
        let (s, p) = build_polyhedron(&i).unwrap().split();
        for poly in [&s, &p] {
            let counts: Vec<u64> = (0..5).map(|n| count_lattice_points(poly, n)).collect();
            prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn plane_polytope_counts_match_brute_force(pts in prop::collection::vec((0u32..5, 0u32..5), 1..5), n in 0u32..4) {
        let vertices: Vec<ExponentVector> = pts.iter().map(|&(a, b)| ExponentVector::new(vec![a, b])).collect();
        let poly = LatticePolytope::new(2, vertices).unwrap();
        // a lattice point lies in conv(V) iff it is in the hull of the scaled vertices
        let scaled: Vec<(i64, i64)> = pts.iter().map(|&(a, b)| ((a * n) as i64, (b * n) as i64)).collect();
        let mut brute = 0;
        for x in 0..=(4 * n) as i64 {
            for y in 0..=(4 * n) as i64 {
                if in_hull(&scaled, (x, y)) {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(count_lattice_points(&poly, n), brute);
    }
}

/// Point-in-convex-hull for a small planar point set.
fn in_hull(points: &[(i64, i64)], p: (i64, i64)) -> bool {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return pts[0] == p;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &q in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    if hull.len() == 2 {
        let (a, b) = (hull[0], hull[1]);
        return cross(a, b, p) == 0
            && p.0 >= a.0.min(b.0)
            && p.0 <= a.0.max(b.0)
            && p.1 >= a.1.min(b.1)
            && p.1 <= a.1.max(b.1);
    }
    (0..hull.len()).all(|k| cross(hull[k], hull[(k + 1) % hull.len()], p) >= 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_coefficient_relations(i in small_ideal()) {
        let (ord_samples, ord) = hilbert_data(&i, Filtration::Ordinary).unwrap();
        let (norm_samples, norm) = hilbert_data(&i, Filtration::Normal).unwrap();
        let d = i.dim();
        prop_assert_eq!(ord.e(0), norm.e(0));
        prop_assert!(norm.e(1) >= ord.e(1));
        prop_assert!(ord.e(0) >= 1);
        for (samples, data) in [(&ord_samples, &ord), (&norm_samples, &norm)] {
            check_fit(samples, data)?;
            let diffs = finite_differences(&samples.values, d);
            prop_assert_eq!(*diffs.last().unwrap(), data.e(0));
        }
        prop_assert_eq!(norm.evaluate(0), 0.into());
    }

    #[test]
    fn pure_complexes_have_nonnegative_chern(n in 1usize..8, size in 1usize..5, picks in prop::collection::vec(prop::collection::vec(0usize..8, 4), 1..6)) {
        let size = size.min(n);
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for pick in picks {
            let mut f: Vec<usize> = Vec::new();
            for v in pick.into_iter().chain(0..n) {
                let v = v % n + 1;
                if !f.contains(&v) && f.len() < size {
                    f.push(v);
                }
            }
            f.sort_unstable();
            if !facets.contains(&f) {
                facets.push(f);
            }
        }
        let complex = SimplicialComplex::new(n, &facets).unwrap();
        let report = face_ring_report(&complex).unwrap();
        prop_assert!(report.pure && report.chern >= 0);
        let f = f_vector(&complex);
        let h = h_vector(&f);
        prop_assert_eq!(h_derivative_at_one(&h), report.chern);
        prop_assert_eq!(h.iter().sum::<i64>(), *f.0.last().unwrap() as i64);
        // face counts by brute force over all vertex subsets
        for k in 0..f.0.len() {
            let count = (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .filter(|m| complex.facets().iter().any(|fac| (0..n).all(|v| m & (1 << v) == 0 || fac.contains(&(v + 1)))))
                .count() as u64;
            prop_assert_eq!(f.0[k], count);
        }
        let used: std::collections::BTreeSet<usize> = complex.facets().into_iter().flatten().collect();
        prop_assert_eq!(f.0[1], used.len() as u64);
    }

    #[test]
    fn hoskin_deligne_identity(basis in prop::collection::vec((1u64..8, 1u64..4), 1..6)) {
        let hd = hoskin_deligne(&PointBasis::new(basis).unwrap()).unwrap();
        prop_assert_eq!(hd.e1, hd.e0 - hd.length);
        prop_assert_eq!(hd.e2, 0);
    }

    #[test]
    fn mixed_lengths_are_symmetric(i in ideal_in(2..=2, 4), j in ideal_in(2..=2, 4)) {
        let ij = MixedPair::new(&i, &j).unwrap();
        let ji = MixedPair::new(&j, &i).unwrap();
        for r in 0..3 {
            for s in 0..3 {
                prop_assert_eq!(ij.length(r, s).unwrap().observed, ji.length(s, r).unwrap().observed);
            }
        }
    }
}

fn check_fit(
    samples: &HilbertSamples,
    data: &nhl::hilbert::HilbertData,
) -> Result<(), TestCaseError> {
    let start = data.postulation.map_or(0, |p| p + 1) as usize;
    for n in start..samples.values.len() {
        prop_assert_eq!(data.evaluate(n as i64), samples.values[n].into());
    }
    if let Some(p) = data.postulation {
        prop_assert_ne!(data.evaluate(p), samples.values[p as usize].into());
    }
    Ok(())
}

#[test]
fn closure_of_marley_ideal_is_cube_of_maximal_ideal() {
    let marley = MonomialIdeal::from_rows(&[
        [3, 0, 0],
        [0, 3, 0],
        [0, 0, 3],
        [2, 1, 0],
        [1, 2, 0],
        [0, 1, 2],
        [1, 1, 1],
    ])
    .unwrap();
    let m3 = MonomialIdeal::maximal(3).unwrap().power(3).unwrap();
    assert_eq!(integral_closure(&marley).unwrap(), m3);
}
