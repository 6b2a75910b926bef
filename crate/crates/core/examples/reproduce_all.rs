//! Runs every scripted case and writes reports, plots and density curves.
//!
//!     cargo run --release --example reproduce_all -- [out-dir]

use std::path::PathBuf;

use fuzzy_shadow::cli::{cmd_reproduce, Case};

fn main() -> fuzzy_shadow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("fuzzy-shadow-out"), PathBuf::from);
    let mut failed = 0;
    for case in Case::ALL {
        let outcome = cmd_reproduce(case)?;
        outcome.write_to(&out)?;
        println!("{}", outcome.summary);
        failed += usize::from(outcome.code != 0);
    }
    println!("artifacts in {}", out.display());
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
