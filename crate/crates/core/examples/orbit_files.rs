use fuzzy_shadow::orbits::{read_orbit_csv, validate_f_pseudo_orbit, write_orbit_csv};
use fuzzy_shadow::systems::example43_map;
use fuzzy_shadow::{FuzzyMetric, OrbitSequence};

fn main() -> fuzzy_shadow::Result<()> {
    let f = example43_map();
    let seq = OrbitSequence::true_orbit(&f, 0.3, 6);
    let mut buf = Vec::new();
    write_orbit_csv(&seq, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));

    let back = read_orbit_csv(buf.as_slice())?;
    let broken = validate_f_pseudo_orbit(&back, &f, &FuzzyMetric::ratio(), 1e-9, 1.0);
    println!(
        "round trip equal: {}, broken steps: {}",
        back.states == seq.states,
        broken.len()
    );

    let bad = "index,value\n0,0.5\n1,0.6\n3,0.7\n";
    match read_orbit_csv(bad.as_bytes()) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
