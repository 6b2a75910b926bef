//! Solving `r1 * r = r2` and `r * r = r4` for each t-norm.

use fuzzy_shadow::tnorm::{check_axioms, TNorm};

fn main() -> fuzzy_shadow::Result<()> {
    for t in TNorm::ALL {
        let r = t.residuate(0.8, 0.6)?;
        let s = t.square_root(0.5)?;
        println!(
            "{:<12} residuate(0.8, 0.6) = {r:.6}  (0.8 * r = {:.6})   square_root(0.5) = {s:.6}  (s * s = {:.6})",
            t.name(),
            t.apply(0.8, r)?,
            t.apply(s, s)?
        );
    }

    let report = check_axioms(TNorm::Lukasiewicz, 10_000, 7);
    println!(
        "\nlukasiewicz axioms on 10^4 samples: {}",
        if report.all_pass() { "pass" } else { "fail" }
    );
    Ok(())
}
