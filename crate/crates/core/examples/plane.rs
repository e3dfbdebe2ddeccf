//! Complete ideals in two variables: Lipman's formula, mixed lengths of
//! closure(I^r J^s), and the Hoskin-Deligne formula.

use nhl::rlr2d::{hoskin_deligne, lipman_polynomial, MixedPair, PointBasis};
use nhl::MonomialIdeal;

fn main() -> nhl::Result<()> {
    let i = MonomialIdeal::from_rows(&[[2, 0], [0, 3]])?;
    let m = MonomialIdeal::maximal(2)?;

    let lipman = lipman_polynomial(&i, 6)?;
    println!(
        "{i}: e = {}, λ(R/closure(I)) = {}",
        lipman.e0, lipman.closure_colength
    );
    for row in &lipman.table {
        println!(
            "  n = {}: {} predicted, {} counted",
            row.n, row.predicted, row.observed
        );
    }

    let pair = MixedPair::new(&i, &m)?;
    println!("mixed lengths λ(R/closure(I^r m^s)):");
    for r in 0..=3 {
        let row: Vec<String> = (0..=3)
            .map(|s| pair.length(r, s).map(|x| format!("{:>4}", x.observed)))
            .collect::<nhl::Result<_>>()?;
        println!("  r = {r}: {}", row.join(""));
    }

    for basis in [
        vec![(1, 1)],
        vec![(2, 1), (1, 1), (1, 1)],
        vec![(3, 1)],
        vec![(4, 1), (2, 2)],
    ] {
        let hd = hoskin_deligne(&PointBasis::new(basis.clone())?)?;
        println!(
            "basis {basis:?}: length {}, e0 {}, e1 {}",
            hd.length, hd.e0, hd.e1
        );
    }
    Ok(())
}
