//! Symmetry classification of solution sets, plus the full check report.

use ssb_lab::report::{run_subcommand, Config, Subcommand};

fn main() -> ssb_lab::Result<()> {
    let manifest = run_subcommand(Subcommand::Classify, &Config::default())?;
    for (case, v) in &manifest.results["classify"].as_object().cloned().unwrap_or_default() {
        println!("{case:<28} {}", v["kind"]);
    }
    let failed = manifest.failures().count();
    println!("{} checks, {failed} failed", manifest.reports.len());
    Ok(())
}
