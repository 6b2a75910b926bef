//! Every pseudo-orbit of a tent map is F-shadowed once the horizon is large
//! enough that the whole interval is "close".

use fuzzy_shadow::orbits::{random_pseudo_orbit, validate_f_pseudo_orbit};
use fuzzy_shadow::shadowing::shadow_search;
use fuzzy_shadow::systems::{tent, Beta, Coeff};
use fuzzy_shadow::{Dynamics, FuzzyMetric, Grid};

fn main() -> fuzzy_shadow::Result<()> {
    let eps = 0.1;
    for beta in [Beta::sqrt2(), Beta(Coeff::Real(1.6)), Beta(Coeff::Real(2.0))] {
        let f = tent(beta)?;
        let m = FuzzyMetric::standard(f.domain());
        let grid = Grid::uniform(f.domain(), 1e-4)?;
        let t0 = m.uniform_horizon(eps, &grid)?.expect("bounded space");
        let seq = random_pseudo_orbit(&f, &m, 0.01, t0, 0.3, 1000, 42)?;
        assert!(validate_f_pseudo_orbit(&seq, &f, &m, 0.01, t0).is_empty());
        let v = shadow_search(&seq, &f, &m, eps, t0, &grid)?;
        println!(
            "{:<11} T0 = {t0:.6}  witness = {:?}  tightest index {:?} with nearness {:?}",
            f.label(),
            v.witness,
            v.worst_index,
            v.worst_value
        );
    }
    Ok(())
}
