//! Normal colengths as a difference of two Ehrhart polynomials.

use nhl::ehrhart::{ehrhart_polynomial, leading_data, NormalEhrhart};
use nhl::newton::{build_polyhedron, normal_colength};
use nhl::MonomialIdeal;

fn main() -> nhl::Result<()> {
    let ideals = [
        MonomialIdeal::from_rows(&[[2, 0], [0, 3]])?,
        MonomialIdeal::from_rows(&[[4, 0], [1, 1], [0, 3]])?,
        MonomialIdeal::from_rows(&[[2, 0, 0], [0, 3, 0], [0, 0, 2], [1, 1, 1]])?,
    ];
    for i in &ideals {
        let d = i.dim();
        let (s, p) = build_polyhedron(i)?.split();
        let es = ehrhart_polynomial(&s)?;
        let ep = ehrhart_polynomial(&p)?;
        println!("I = {i}");
        println!("  E_S(n) = {es}   vol S = {}", leading_data(&es, d).volume);
        println!(
            "  E_P(n) = {ep}   lower-dimensional: {}",
            leading_data(&ep, d).lower_dimensional
        );
        let normal = NormalEhrhart::new(i)?;
        println!("  E_S - E_P = {}", normal.difference);
        for n in 1..=4 {
            println!(
                "    n = {n}: {} = {}",
                normal.value(n)?,
                normal_colength(i, n)?
            );
        }
    }
    Ok(())
}
