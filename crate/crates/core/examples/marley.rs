//! Ordinary and normal Hilbert coefficients of Marley's ideal
//! (x^3, y^3, z^3, x^2y, xy^2, yz^2, xyz).

use nhl::hilbert::{hilbert_data_from, series, series_numerator};
use nhl::{Filtration, MonomialIdeal};

fn main() -> nhl::Result<()> {
    let i = MonomialIdeal::from_rows(&[
        [3, 0, 0],
        [0, 3, 0],
        [0, 0, 3],
        [2, 1, 0],
        [1, 2, 0],
        [0, 1, 2],
        [1, 1, 1],
    ])?;
    for filtration in [Filtration::Ordinary, Filtration::Normal] {
        let (samples, data) = hilbert_data_from(&i, filtration, 12)?;
        println!("{filtration}:");
        println!("  H(n)        {:?}", samples.values);
        println!("  e           {:?}", data.e);
        println!("  postulation {:?}", data.postulation);
        println!(
            "  numerator   {:?}",
            &series_numerator(&series(&samples), 3)[..5]
        );
    }
    Ok(())
}
