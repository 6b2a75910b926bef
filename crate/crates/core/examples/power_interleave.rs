use fuzzy_shadow::orbits::{interleave_for_power, ns_set};
use fuzzy_shadow::systems::{tent, Beta, Coeff, Power};
use fuzzy_shadow::{FuzzyMetric, OrbitSequence, Provenance};

fn main() -> fuzzy_shadow::Result<()> {
    let f = tent(Beta(Coeff::Real(2.0)))?;
    let m = FuzzyMetric::standard(fuzzy_shadow::Dynamics::domain(&f));
    let seq = OrbitSequence::new(vec![0.1, 0.45, 0.8, 0.33, 0.6], Provenance::Constructed)?;

    for k in [2, 3] {
        let z = interleave_for_power(&seq, k, &f)?;
        let fk = Power { map: &f, k };
        let coarse = ns_set(&seq, 0.3, &fk, &m, 0.2, 1.0);
        let fine = ns_set(&z, 0.3, &f, &m, 0.2, 1.0);
        println!(
            "k = {k}: interleaved {:?}",
            z.states.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()
        );
        println!(
            "       misses under f^k: {:?}   under f: {:?}",
            coarse.indices(),
            fine.indices()
        );
    }
    Ok(())
}
