//! Density-zero index sets: the skeleton `k(k+1), (k+1)^2` that carries the
//! broken steps of the transitivity construction, and an ergodic shadowing
//! search on an orbit whose
//! defects sit on that skeleton.

use fuzzy_shadow::orbits::{build_transitivity_orbit, density, npo_set, skeleton};
use fuzzy_shadow::shadowing::{ergodic_shadow_search, shadow_search};
use fuzzy_shadow::systems::{example43_map, tent, Beta, Coeff};
use fuzzy_shadow::{Dynamics, FuzzyMetric, Grid, OrbitSequence, Provenance};

fn main() -> fuzzy_shadow::Result<()> {
    let skel = density(&skeleton(1_000_000))?;
    println!("skeleton density curve:");
    for p in &skel.curve {
        println!("  n = {:>8}  d = {:.6}", p.n, p.density);
    }

    let f = tent(Beta(Coeff::Real(2.0)))?;
    let m = FuzzyMetric::standard(f.domain());
    let seq = build_transitivity_orbit(0.2, 0.7, &f, 100_000)?;
    let broken = npo_set(&seq, &f, &m, 0.01, 1.0);
    println!(
        "\nconstructed orbit: {} broken steps, all on the skeleton: {}",
        broken.len(),
        broken.is_subset_of(&skeleton(broken.universe()))
    );

    // a true orbit with outliers planted on the skeleton: no strict tracer,
    // but the misses of the orbit's own start have density zero
    let g = example43_map();
    let n = 100_000;
    let skel = skeleton(n);
    let mut states = OrbitSequence::true_orbit(&g, 0.3, n).states;
    for &i in skel.indices() {
        states[i] = 0.9;
    }
    let planted = OrbitSequence::new(states, Provenance::Constructed)?;
    let m1 = FuzzyMetric::ratio();
    let grid = Grid::uniform(g.domain(), 1e-3)?;
    let strict = shadow_search(&planted, &g, &m1, 0.1, 1.0, &grid)?;
    let v = ergodic_shadow_search(&planted, &g, &m1, 0.1, 1.0, &grid)?;
    println!("\nplanted outliers: strict witness {:?}", strict.witness);
    println!(
        "best ergodic candidate {} misses {} of {n} indices, final density {:.5} ({:?})",
        v.candidate, v.misses, v.report.final_density, v.report.verdict
    );
    Ok(())
}
