//! A pseudo-orbit of the three-piece map that hops across the repelling
//! fixed point 1/2. No true orbit follows it, classically or under the ratio
//! metrics, while the standard fuzzy metric shadows it trivially.

use fuzzy_shadow::orbits::validate_f_pseudo_orbit;
use fuzzy_shadow::shadowing::{build_nonshadowable_orbit, classical_shadow_search, shadow_search};
use fuzzy_shadow::systems::example43_map;
use fuzzy_shadow::{Dynamics, FuzzyMetric, Grid};

fn main() -> fuzzy_shadow::Result<()> {
    let f = example43_map();
    let seq = build_nonshadowable_orbit(0.01)?;
    println!("crossing pseudo-orbit: {} states", seq.len());
    for (i, x) in seq.states.iter().enumerate().skip(20).take(12) {
        println!("  x[{i}] = {x:.6}");
    }

    let fine = Grid::uniform(f.domain(), 1e-5)?;
    let c = classical_shadow_search(&seq, &f, 0.125, &fine)?;
    println!(
        "\nclassical, eps 1/8: witness {:?}, best candidate {:?} fails at {:?}",
        c.witness, c.near_miss, c.worst_index
    );

    let grid = Grid::uniform(f.domain(), 1e-4)?;
    for m in [FuzzyMetric::ratio_phi(), FuzzyMetric::ratio()] {
        assert!(validate_f_pseudo_orbit(&seq, &f, &m, 0.01, 1.0).is_empty());
        let v = shadow_search(&seq, &f, &m, 0.2, 1.0, &grid)?;
        println!(
            "{:<10} eps 1/5: witness {:?}, near miss {:?}",
            m.kind(),
            v.witness,
            v.near_miss
        );
    }

    let m = FuzzyMetric::standard(f.domain());
    let t0 = m.uniform_horizon(0.2, &grid)?.unwrap();
    let v = shadow_search(&seq, &f, &m, 0.2, t0, &grid)?;
    println!("standard   eps 1/5 at T0 = {t0:.4}: witness {:?}", v.witness);
    Ok(())
}
