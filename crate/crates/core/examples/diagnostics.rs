//! Runs every applicable coefficient check on a few parameter ideals.

use nhl::diagnostics::{diagnose, DEFAULT_NMAX};
use nhl::MonomialIdeal;

fn main() -> nhl::Result<()> {
    for exps in [&[2u32, 3][..], &[4, 5], &[3, 3, 3], &[2, 3, 4]] {
        let i = MonomialIdeal::parameter(exps)?;
        let report = diagnose(&i, DEFAULT_NMAX)?;
        println!(
            "I = {i}: e_bar = {:?}, reduction number {}",
            report.e_bar.as_deref().unwrap_or(&[]),
            report
                .reduction_bound
                .map(|r| r.to_string())
                .unwrap_or_default()
        );
        for check in &report.checks {
            println!("  {:<22} {}", check.id, check.status);
        }
        for note in &report.notes {
            println!("  note: {note}");
        }
        report.ensure_consistent()?;
    }
    Ok(())
}
