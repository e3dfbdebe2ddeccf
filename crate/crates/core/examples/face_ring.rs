//! Chern numbers of face rings: the non-pure family Δ_n and a few pure complexes.

use nhl::face_ring::{f_vector, face_ring_report, h_vector, SimplicialComplex};

fn main() -> nhl::Result<()> {
    for n in 2..=6 {
        let delta = SimplicialComplex::delta(n)?;
        let report = face_ring_report(&delta)?;
        println!(
            "Δ_{n}: f = {:?}, chern = {}, pure = {}",
            report.f.0, report.chern, report.pure
        );
    }
    let pure = [
        SimplicialComplex::new(3, &[vec![1, 2], vec![2, 3], vec![1, 3]])?,
        SimplicialComplex::new(4, &[vec![1, 2, 3], vec![2, 3, 4]])?,
        SimplicialComplex::new(5, &[vec![1, 2], vec![3, 4], vec![4, 5]])?,
    ];
    for complex in &pure {
        let f = f_vector(complex);
        let report = face_ring_report(complex)?;
        println!(
            "{:?}: f = {:?}, h = {:?}, chern = {}",
            complex.facets(),
            f.0,
            h_vector(&f),
            report.chern
        );
    }
    Ok(())
}
