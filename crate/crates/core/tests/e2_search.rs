use nhl::diagnostics::{E2Class, ParameterContext, Status};
use nhl::newton::integral_closure_power;
use nhl::{ExponentVector, MonomialIdeal};

const TERMS: u32 = 10;

fn parameter(exps: [u32; 3]) -> MonomialIdeal {
    let gens: Vec<_> = (0..3)
        .map(|i| ExponentVector::pure(3, i, exps[i]))
        .collect();
    MonomialIdeal::new(3, gens).unwrap()
}

/// Coefficients of `(1-t)^3 Σ λ(closure(I^n)/closure(I^{n+1})) t^n`, truncated.
fn numerator(ideal: &MonomialIdeal) -> Vec<i64> {
    let mut colength = vec![0i64];
    for n in 1..=TERMS {
        colength.push(
            integral_closure_power(ideal, n)
                .unwrap()
                .colength()
                .unwrap() as i64,
        );
    }
    let mut h: Vec<i64> = colength.windows(2).map(|w| w[1] - w[0]).collect();
    for _ in 0..3 {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    h.truncate(TERMS as usize - 3);
    h
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn exhaustive_small_exponent_scan() {
    let mut found = Vec::new();
    for a in 1..=4 {
        for b in a..=4 {
            for c in b..=4 {
                let ideal = parameter([a, b, c]);
                let h = numerator(&ideal);
                let e: Vec<i64> = (0..3)
                    .map(|i| {
                        h.iter()
                            .enumerate()
                            .map(|(k, x)| binomial(k as i64, i) * x)
                            .sum()
                    })
                    .collect();
                let ctx = ParameterContext::new(&ideal, 8).unwrap();
                let data = &ctx.normal.as_ref().unwrap().1;
                assert_eq!(
                    (data.e(0), data.e(1), data.e(2)),
                    (e[0], e[1], e[2]),
                    "{ideal}"
                );

                let (class, check) = ctx.classify_e2().unwrap();
                assert_ne!(check.status, Status::Violated, "{ideal}: {}", check.detail);
                if e[2] != 1 {
                    continue;
                }
                assert_eq!(class, E2Class::One);
                let closure = integral_closure_power(&ideal, 1).unwrap();
                let lambda = closure.colength().unwrap() as i64;
                assert_eq!(e[1], e[0] - lambda + 1, "{ideal}");
                let mut expected = vec![lambda, e[0] - lambda - 1, 1];
                expected.resize(h.len(), 0);
                assert_eq!(h, expected, "{ideal}");

                let square = integral_closure_power(&ideal, 2).unwrap();
                let cube = integral_closure_power(&ideal, 3).unwrap();
                assert_ne!(square, ideal.product(&closure).unwrap(), "{ideal}");
                assert_eq!(cube, ideal.product(&square).unwrap(), "{ideal}");
                found.push(ideal.to_string());
            }
        }
    }
    assert!(
        found.contains(&parameter([3, 3, 3]).to_string()),
        "found {found:?}"
    );
}
