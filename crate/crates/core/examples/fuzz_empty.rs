//! Pencils spanned by two GHZ-class states always contain a non-GHZ
//! element. This samples random pencils and tallies what turns up.
//!
//! cargo run --release --example fuzz_empty [-- TRIALS]

use slocc::fuzz::{fuzz_empty, FuzzConfig};

fn main() -> slocc::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);

    let report = fuzz_empty(&FuzzConfig::new(trials, 7), false)?;
    println!("{trials} pencils, {} GHZ everywhere, {} errors", report.all_ghz_count, report.error_count);
    for (classes, count) in &report.exceptional_distribution {
        println!("  {classes:<12} {count}");
    }

    let pinned = FuzzConfig {
        pin_ghz: true,
        exact: true,
        ..FuzzConfig::new(100, 7)
    };
    let report = fuzz_empty(&pinned, false)?;
    println!(
        "pinned |000> + |111>: max |c4 - 1| = {:.2e}, exact failures = {}",
        report.max_y4_deviation.unwrap_or(f64::NAN),
        report.exact_y4_failures.unwrap_or(0)
    );
    Ok(())
}
