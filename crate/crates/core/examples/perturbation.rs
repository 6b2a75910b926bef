use fuzzy_shadow::fuzzy_metric::perturbation_ratio_modulus;
use fuzzy_shadow::shadowing::{crossing_orbit, shadow_search};
use fuzzy_shadow::systems::{example43_map, perturbation_g};
use fuzzy_shadow::{Dynamics, FuzzyMetric, Grid};

fn main() -> fuzzy_shadow::Result<()> {
    let alpha = 1.0 / 256.0;
    let f = example43_map();
    let g = perturbation_g(alpha)?;
    println!("g has {} linear pieces", g.pieces().len());
    for x in [0.1, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0] {
        println!("  x = {x:<5} f(x) = {:.6}  g(x) = {:.6}", f.apply(x), g.apply(x));
    }

    let m = FuzzyMetric::ratio();
    let grid = Grid::uniform(g.domain(), 1e-3)?;
    let r = perturbation_ratio_modulus(&m, &f, &g, &grid);
    println!(
        "M1(g x, g y) > M1(f x, f y) / 2 on {} pairs: {} failures",
        r.pairs, r.failures
    );

    let seq = crossing_orbit(&g, 0.01)?;
    let v = shadow_search(&seq, &g, &m, 0.2, 1.0, &Grid::uniform(g.domain(), 1e-4)?)?;
    println!("crossing orbit of g ({} states) shadowed: {}", seq.len(), v.found());
    Ok(())
}
