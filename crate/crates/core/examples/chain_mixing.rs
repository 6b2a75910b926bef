//! Chains between points, chain mixing, and the topological mixing probe.

use fuzzy_shadow::orbits::{chain_mixing_check, chain_search};
use fuzzy_shadow::shadowing::topological_mixing_probe;
use fuzzy_shadow::systems::{example43_map, tent, Beta, Coeff};
use fuzzy_shadow::{Ball, Dynamics, FuzzyMetric, Grid};

fn main() -> fuzzy_shadow::Result<()> {
    let f = tent(Beta(Coeff::Real(2.0)))?;
    let m = FuzzyMetric::standard(f.domain());
    let grid = Grid::uniform(f.domain(), 1e-3)?;

    let chain = chain_search(0.2, 0.8, &f, &m, 0.1, 1.0, &grid)?.expect("tent map is chain transitive");
    println!("shortest chain 0.2 -> 0.8: {:?}", chain.states);

    let r = chain_mixing_check(0.2, 0.8, &f, &m, 0.1, 1.0, &grid, 64)?;
    println!(
        "chain lengths realised up to 64: N0 = {:?}, cofinite = {}",
        r.n0,
        r.is_cofinite()
    );

    let u = Ball::open(0.2, 0.1, 1.0)?;
    let v = Ball::open(0.8, 0.1, 1.0)?;
    let p = topological_mixing_probe(&f, &u, &v, &m, 64, &grid)?;
    println!("f^n(U) meets V from n = {:?} on, cofinite = {}", p.n0, p.is_cofinite());

    // the three-piece map only climbs, so nothing chains back down
    let g = example43_map();
    let grid = Grid::uniform(g.domain(), 1e-3)?;
    let none = chain_search(0.9, 0.1, &g, &FuzzyMetric::ratio_phi(), 0.05, 1.0, &grid)?;
    println!("three-piece map, 0.9 -> 0.1: {:?}", none.map(|c| c.len()));
    Ok(())
}
