//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::Instant;

use fuzzy_shadow::cli::{cmd_reproduce, report_bytes, Case};
use fuzzy_shadow::fuzzy_metric::{check_axioms as metric_axioms, example43_ratio_modulus, perturbation_ratio_modulus};
use fuzzy_shadow::orbits::{
    build_transitivity_orbit, chain_mixing_check, classical_ns_set, classical_validate, density, interleave_for_power,
    ns_set, random_pseudo_orbit, skeleton, validate_f_pseudo_orbit,
};
use fuzzy_shadow::shadowing::{build_nonshadowable_orbit, classical_shadow_search, crossing_orbit, shadow_search};
use fuzzy_shadow::systems::{example43_map, perturbation_g, tent, Beta, Coeff, Power};
use fuzzy_shadow::tnorm::{check_axioms as tnorm_axioms, TOLERANCE};
use fuzzy_shadow::{Ball, Dynamics, FuzzyMetric, Grid, MetricKind, Nearness, OrbitSequence, Provenance, Space, TNorm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: fuzzy_shadow::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn tents() -> Vec<fuzzy_shadow::IntervalMap> {
    vec![
        tent(Beta::sqrt2()).unwrap(),
        tent(Beta(Coeff::Exact(num_rational::Rational64::new(8, 5)))).unwrap(),
        tent(Beta(Coeff::Exact(2.into()))).unwrap(),
    ]
}

fn c1_axiom_suites() -> Outcome {
    let start = Instant::now();
    for kind in [MetricKind::Standard, MetricKind::RatioPhi, MetricKind::Ratio] {
        let m = FuzzyMetric::from_kind(kind, Space::unit_half_open());
        let r = metric_axioms(&m, 10_000, 1);
        ensure(r.all_pass(), || format!("{kind} fails: {r:?}"))?;
    }
    for t in TNorm::ALL {
        let r = tnorm_axioms(t, 10_000, 1);
        ensure(r.all_pass(), || format!("{t} fails: {r:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("3 metrics and 3 t-norms on 10^4 samples in {secs:.2} s"))
}

fn c2_solvers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in TNorm::ALL {
        for _ in 0..10_000 {
            let (a, b): (f64, f64) = (rng.gen_range(1e-9..1.0), rng.gen_range(1e-9..1.0));
            if a == b {
                continue;
            }
            let (r1, r2) = (a.max(b), a.min(b));
            let r3 = lib(t.residuate(r1, r2))?;
            ensure(
                r3 > 0.0 && r3 < 1.0 && t.apply_unchecked(r1, r3) >= r2 - TOLERANCE,
                || format!("{t} residuate({r1}, {r2}) = {r3}"),
            )?;
            let r4: f64 = rng.gen_range(1e-9..1.0);
            let r5 = lib(t.square_root(r4))?;
            ensure(
                r5 > 0.0 && r5 < 1.0 && t.apply_unchecked(r5, r5) >= r4 - TOLERANCE,
                || format!("{t} square_root({r4}) = {r5}"),
            )?;
        }
    }
    Ok("residuate and square_root postconditions on 10^4 inputs per t-norm".into())
}

fn c3_discreteness() -> Outcome {
    let m = FuzzyMetric::ratio_phi();
    let base = Grid::uniform(Space::unit_half_open(), 1e-3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    while pairs < 1000 {
        let x = Space::unit_half_open().sample(rng.gen());
        let y = Space::unit_half_open().sample(rng.gen());
        if x == y {
            continue;
        }
        pairs += 1;
        let v = m.nearness(x, y, 0.5);
        ensure(v <= 0.5, || format!("M({x}, {y}, 1/2) = {v}"))?;
        let (grid, idx) = base.with_points(&[x]);
        let ball = lib(Ball::open(x, 0.5, 0.5))?;
        let range = ball.grid_range(&m, &grid);
        ensure(range == Some((idx[0], idx[0])), || {
            format!("B({x}, 1/2, 1/2) covers {range:?}")
        })?;
    }
    Ok("10^3 pairs with M(x,y,1/2) <= 1/2; every ball B(x,1/2,1/2) is a singleton".into())
}

fn c4_tent_family() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for f in tents() {
        let m = FuzzyMetric::standard(f.domain());
        let grid = lib(Grid::uniform(f.domain(), 1e-4))?;
        let t0 = lib(m.uniform_horizon(0.1, &grid))?.ok_or("no horizon")?;
        ensure(t0 > 8.0 && t0 <= 16.0, || format!("{}: T0 = {t0}", f.label()))?;
        let seq = lib(random_pseudo_orbit(&f, &m, 0.01, t0, 0.3, 1000, 4))?;
        ensure(validate_f_pseudo_orbit(&seq, &f, &m, 0.01, t0).is_empty(), || {
            "generator broke a step".into()
        })?;
        let v = lib(shadow_search(&seq, &f, &m, 0.1, t0, &grid))?;
        ensure(v.found(), || format!("{}: no witness", f.label()))?;
        let coarse = lib(Grid::uniform(f.domain(), 1e-3))?;
        let r = lib(chain_mixing_check(0.2, 0.8, &f, &m, 0.1, 1.0, &coarse, 64))?;
        ensure(r.is_cofinite(), || {
            format!("{}: chain lengths {:?}", f.label(), r.lengths)
        })?;
        notes.push(format!("{} T0={t0:.4} N0={}", f.label(), r.n0.unwrap()));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.2} s"))?;
    Ok(format!("{} in {secs:.2} s", notes.join(", ")))
}

fn c5_classical() -> Outcome {
    let f = example43_map();
    let seq = lib(build_nonshadowable_orbit(0.01))?;
    ensure(classical_validate(&seq, &f, 0.01).is_empty(), || {
        "not a classical 0.01-pseudo-orbit".into()
    })?;
    let grid = lib(Grid::uniform(f.domain(), 1e-5))?;
    let v = lib(classical_shadow_search(&seq, &f, 0.125, &grid))?;
    ensure(!v.found(), || format!("witness {:?}", v.witness))?;
    Ok(format!(
        "no classical tracer among {} candidates",
        v.candidates_examined
    ))
}

fn c6_ratio_phi() -> Outcome {
    let f = example43_map();
    let m = FuzzyMetric::ratio_phi();
    let coarse = lib(Grid::uniform(f.domain(), 1e-3))?;
    let r = example43_ratio_modulus(&f, &coarse);
    ensure(r.pairs >= 1_000_000 && r.holds(), || format!("{r:?}"))?;
    let seq = lib(build_nonshadowable_orbit(0.01))?;
    let grid = lib(Grid::uniform(f.domain(), 1e-4))?;
    for t0 in [1.0, 2.0, 10.0] {
        let broken = validate_f_pseudo_orbit(&seq, &f, &m, 0.01, t0);
        ensure(broken.is_empty(), || {
            format!("t0={t0}: broken steps {:?}", broken.indices())
        })?;
        let v = lib(shadow_search(&seq, &f, &m, 0.2, t0, &grid))?;
        ensure(!v.found(), || format!("t0={t0}: witness {:?}", v.witness))?;
    }
    Ok(format!(
        "modulus on {} pairs; no F-tracer at t0 in {{1, 2, 10}}",
        r.pairs
    ))
}

fn c7_perturbation() -> Outcome {
    let alpha = 1.0 / 256.0;
    let f = example43_map();
    let g = lib(perturbation_g(alpha))?;
    ensure(g.apply(0.5) == 0.5 && g.apply(1.0) == 1.0, || {
        "fixed points moved".into()
    })?;
    let fine = lib(Grid::uniform(g.domain(), 1e-5))?;
    let sup = fine
        .points()
        .iter()
        .map(|&x| (f.apply(x) - g.apply(x)).abs())
        .fold(0.0, f64::max);
    ensure(sup < alpha, || format!("sup distance {sup}"))?;
    let m = FuzzyMetric::ratio();
    let coarse = lib(Grid::uniform(g.domain(), 1e-3))?;
    let r = perturbation_ratio_modulus(&m, &f, &g, &coarse);
    ensure(r.pairs >= 1_000_000 && r.holds(), || format!("{r:?}"))?;
    let seq = lib(crossing_orbit(&g, 0.01))?;
    ensure(validate_f_pseudo_orbit(&seq, &g, &m, 0.01, 1.0).is_empty(), || {
        "crossing orbit of g broken".into()
    })?;
    let v = lib(shadow_search(
        &seq,
        &g,
        &m,
        0.2,
        1.0,
        &lib(Grid::uniform(g.domain(), 1e-4))?,
    ))?;
    ensure(!v.found(), || format!("witness {:?}", v.witness))?;
    Ok(format!(
        "sup |f-g| = {sup:.6} < 1/256; modulus on {} pairs; no F-tracer",
        r.pairs
    ))
}

fn c8_skeleton() -> Outcome {
    let n = 1_000_000;
    let d = lib(density(&skeleton(n)))?;
    let d100 = d.curve.iter().find(|p| p.n == 100).map(|p| p.density);
    ensure(d100 == Some(0.19), || format!("density at 100 = {d100:?}"))?;
    ensure(d.final_density <= 0.003, || {
        format!("density at 10^6 = {}", d.final_density)
    })?;
    let mut broken_total = 0;
    let f1 = tent(Beta(Coeff::Exact(2.into()))).unwrap();
    let f2 = example43_map();
    for (f, x, y) in [(&f1, 0.2, 0.7), (&f2, 0.3, 0.9)] {
        let m = FuzzyMetric::standard(f.domain());
        let seq = lib(build_transitivity_orbit(x, y, f, n + 1))?;
        let npo = fuzzy_shadow::orbits::npo_set(&seq, f, &m, 0.01, 1.0);
        ensure(npo.is_subset_of(&skeleton(npo.universe())), || {
            format!("{}: npo leaves the skeleton", f.label())
        })?;
        broken_total += npo.len();
    }
    ensure(broken_total > 0, || "construction has no broken steps at all".into())?;
    Ok(format!(
        "d(100) = 0.19, d(10^6) = {}; npo within skeleton",
        d.final_density
    ))
}

fn c9_interleave() -> Outcome {
    let f = tent(Beta(Coeff::Exact(2.into()))).unwrap();
    let m = FuzzyMetric::standard(f.domain());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for s in 0..100 {
        let len = rng.gen_range(1..60);
        let states: Vec<f64> = (0..len).map(|_| rng.gen()).collect();
        let seq = OrbitSequence::new(states, Provenance::Constructed).unwrap();
        let x: f64 = rng.gen();
        for k in [2, 3, 5] {
            let z = lib(interleave_for_power(&seq, k, &f))?;
            let fk = Power { map: &f, k };
            let coarse = ns_set(&seq, x, &fk, &m, 0.1, 1.0);
            let fine = ns_set(&z, x, &f, &m, 0.1, 1.0);
            for n in 0..=len {
                ensure(coarse.count_below(n) <= fine.count_below(k * n), || {
                    format!("sequence {s}, k={k}, n={n}")
                })?;
            }
        }
    }
    Ok("10^2 sequences, k in {2, 3, 5}, every prefix".into())
}

fn c10_bridge() -> Outcome {
    let f = tent(Beta(Coeff::Exact(2.into()))).unwrap();
    let m = FuzzyMetric::standard(f.domain());
    let grid = lib(Grid::uniform(f.domain(), 1e-3))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut nonempty, mut found) = (0, 0);
    for _ in 0..1000 {
        let t0 = rng.gen_range(0.2..5.0);
        let dp = rng.gen_range(0.005..0.3);
        let delta = t0 * dp / (1.0 - dp);
        let len = rng.gen_range(2..30);
        let gen_delta = rng.gen_range(0.001..0.5);
        let seq = lib(random_pseudo_orbit(&f, &m, gen_delta, t0, rng.gen(), len, rng.gen()))?;
        let fuzzy = validate_f_pseudo_orbit(&seq, &f, &m, dp, t0);
        let classical = classical_validate(&seq, &f, delta);
        ensure(fuzzy == classical, || {
            format!("validators differ at t0={t0}, delta'={dp}")
        })?;
        nonempty += usize::from(!fuzzy.is_empty());

        let x: f64 = rng.gen();
        ensure(
            ns_set(&seq, x, &f, &m, dp, t0) == classical_ns_set(&seq, x, &f, delta),
            || format!("ns sets differ at x={x}"),
        )?;
        let a = lib(shadow_search(&seq, &f, &m, dp, t0, &grid))?;
        let b = lib(classical_shadow_search(&seq, &f, delta, &grid))?;
        ensure(a.witness == b.witness, || {
            format!("searchers differ: {:?} vs {:?}", a.witness, b.witness)
        })?;
        found += usize::from(a.found());
    }
    Ok(format!(
        "10^3 sequences agree ({nonempty} with broken steps, {found} shadowed)"
    ))
}

fn c11_determinism() -> Outcome {
    let dirs = [
        tempfile::tempdir().map_err(|e| e.to_string())?,
        tempfile::tempdir().map_err(|e| e.to_string())?,
    ];
    for case in Case::ALL {
        let runs: Vec<_> = (0..2).map(|_| lib(cmd_reproduce(case))).collect::<Result<_, _>>()?;
        ensure(report_bytes(&runs[0].report) == report_bytes(&runs[1].report), || {
            format!("{} report differs", case.id())
        })?;
        let mut files = Vec::new();
        for (run, dir) in runs.iter().zip(&dirs) {
            files.push(lib(run.write_to(dir.path()))?);
        }
        for (a, b) in files[0].iter().zip(&files[1]) {
            let (x, y) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
            ensure(x == y, || format!("{} differs between runs", a.display()))?;
        }
        ensure(runs[0].code == 0, || {
            format!("{} does not reproduce its claim: {}", case.id(), runs[0].summary)
        })?;
    }
    Ok(format!(
        "{} cases, byte-identical reports and artifacts, all PASS",
        Case::ALL.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("axiom suites", c1_axiom_suites),
        ("t-norm solvers", c2_solvers),
        ("discreteness of the truncated ratio metric", c3_discreteness),
        ("tent family shadowing and chain mixing", c4_tent_family),
        ("three-piece map lacks classical shadowing", c5_classical),
        ("three-piece map lacks F-shadowing under ratio-phi", c6_ratio_phi),
        ("perturbation g", c7_perturbation),
        ("transitivity skeleton", c8_skeleton),
        ("power interleave", c9_interleave),
        ("standard-metric bridge", c10_bridge),
        ("reproduce determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("PASS  {:>2}. {name} ({secs:.2} s): {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("\n{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
