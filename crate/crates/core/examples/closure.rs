//! Integral closures of powers of (x^2, y^3) and of Marley's ideal.

use nhl::newton::{build_polyhedron, integral_closure_power, normal_colength};
use nhl::{ExponentVector, MonomialIdeal};

fn main() -> nhl::Result<()> {
    let i = MonomialIdeal::from_rows(&[[2, 0], [0, 3]])?;
    let q = build_polyhedron(&i)?;
    let vertices: Vec<String> = q
        .vertex_candidates()
        .iter()
        .map(|v| v.to_string())
        .collect();
    println!("I = {i}, Newton polyhedron vertices {}", vertices.join(" "));

    for n in 1..=4 {
        let power = i.power(n)?;
        let closure = integral_closure_power(&i, n)?;
        println!(
            "n = {n}: λ(R/I^n) = {:>3}  λ(R/closure) = {:>3}  closure = {closure}",
            power.colength()?,
            normal_colength(&i, n)?,
        );
    }

    // (xy^2)^2 = x^2y^4 is divisible by x^2y^3 in I^2
    let xy2 = ExponentVector::new(vec![1, 2]);
    println!("xy^2 in closure(I): {}", q.contains(&xy2, 1)?);

    let marley = MonomialIdeal::from_rows(&[
        [3, 0, 0],
        [0, 3, 0],
        [0, 0, 3],
        [2, 1, 0],
        [1, 2, 0],
        [0, 1, 2],
        [1, 1, 1],
    ])?;
    println!(
        "closure({marley}) = {}",
        integral_closure_power(&marley, 1)?
    );
    Ok(())
}
