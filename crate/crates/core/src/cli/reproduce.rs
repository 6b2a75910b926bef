//! Scripted scenarios for the worked examples. Every verdict is recomputed
//! from the library primitives on each run.

use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use super::svg::render_maps;
use crate::error::Result;
use crate::fuzzy_metric::{
    certify_fuzzy_continuity, example43_ratio_modulus, perturbation_ratio_modulus, Ball, FuzzyMetric,
};
use crate::orbits::{
    build_transitivity_orbit, chain_mixing_check, chain_search, classical_validate, density, npo_set, ns_set,
    random_pseudo_orbit, skeleton, validate_f_pseudo_orbit, DensityReport,
};
use crate::shadowing::{
    build_nonshadowable_orbit, classical_shadow_search, crossing_orbit, shadow_search, topological_mixing_probe,
};
use crate::space::{Grid, Space};
use crate::systems::{example43_map, perturbation_g, tent, Beta, Coeff, Dynamics, IntervalMap};

/// The scripted scenarios accepted by `reproduce`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Case {
    #[value(name = "example-4.1")]
    Example41,
    #[value(name = "remark-4.2")]
    Remark42,
    #[value(name = "example-4.3a")]
    Example43a,
    #[value(name = "example-4.3b")]
    Example43b,
    #[value(name = "example-4.3c")]
    Example43c,
    #[value(name = "example-4.3d")]
    Example43d,
    #[value(name = "example-4.4")]
    Example44,
    #[value(name = "theorem-3.3-density")]
    Theorem33Density,
}

impl Case {
    pub const ALL: [Case; 8] = [
        Case::Example41,
        Case::Remark42,
        Case::Example43a,
        Case::Example43b,
        Case::Example43c,
        Case::Example43d,
        Case::Example44,
        Case::Theorem33Density,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Case::Example41 => "example-4.1",
            Case::Remark42 => "remark-4.2",
            Case::Example43a => "example-4.3a",
            Case::Example43b => "example-4.3b",
            Case::Example43c => "example-4.3c",
            Case::Example43d => "example-4.3d",
            Case::Example44 => "example-4.4",
            Case::Theorem33Density => "theorem-3.3-density",
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Case::Example41 => "tent:2 under the standard fuzzy metric has F-shadowing and F-chain mixing, and is mixing",
            Case::Remark42 => "every tent map with beta in [sqrt2, 2] has F-shadowing and F-chain mixing under the standard fuzzy metric",
            Case::Example43a => "the three-piece map does not have the classical shadowing property",
            Case::Example43b => "the three-piece map is fuzzy continuous and has F-shadowing under the standard fuzzy metric",
            Case::Example43c => "the three-piece map is fuzzy continuous but lacks F-shadowing under the truncated ratio metric",
            Case::Example43d => "the three-piece map is fuzzy continuous but lacks F-shadowing under the ratio metric",
            Case::Example44 => "a perturbation g of the three-piece map is fuzzy continuous and lacks both shadowing properties",
            Case::Theorem33Density => "the skeleton of the transitivity construction has density zero and carries every broken step",
        }
    }
}

/// One named, recomputed check inside a case.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

fn check(name: impl Into<String>, pass: bool, detail: Value) -> Check {
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

/// Library errors inside a case become failed checks rather than aborting it.
fn attempt(name: &str, r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| check(name, false, json!({ "error": e.to_string() })))
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: &'static str,
    pub claim: &'static str,
    pub verdict: &'static str,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn pass(&self) -> bool {
        self.verdict == "PASS"
    }
}

/// Extra files written next to the report: `(file name, contents)`.
pub type Artifacts = Vec<(String, String)>;

pub fn run_case(case: Case) -> Result<(CaseReport, Artifacts)> {
    let mut artifacts = Vec::new();
    let checks = match case {
        Case::Example41 => {
            let f = tent(Beta(Coeff::Exact(2.into())))?;
            artifacts.push(svg(case, &[&f]));
            let mut checks = tent_checks(&f);
            checks.push(attempt("topological mixing probe is cofinite", mixing_probe(&f)));
            checks
        }
        Case::Remark42 => {
            let maps = [
                tent(Beta::sqrt2())?,
                tent(Beta(Coeff::Exact(Rational64::new(8, 5))))?,
                tent(Beta(Coeff::Exact(2.into())))?,
            ];
            artifacts.push(svg(case, &maps.iter().collect::<Vec<_>>()));
            maps.iter()
                .flat_map(|f| {
                    tent_checks(f).into_iter().map(move |mut c| {
                        c.name = format!("{}: {}", f.label(), c.name);
                        c
                    })
                })
                .collect()
        }
        Case::Example43a => {
            let f = example43_map();
            artifacts.push(svg(case, &[&f]));
            example43a(&f)
        }
        Case::Example43b => {
            let f = example43_map();
            artifacts.push(svg(case, &[&f]));
            example43b(&f)
        }
        Case::Example43c => {
            let f = example43_map();
            artifacts.push(svg(case, &[&f]));
            example43c(&f)
        }
        Case::Example43d => {
            let f = example43_map();
            artifacts.push(svg(case, &[&f]));
            example43d(&f)
        }
        Case::Example44 => {
            let f = example43_map();
            let g = perturbation_g(1.0 / 256.0)?;
            artifacts.push(svg(case, &[&f, &g]));
            example44(&f, &g)
        }
        Case::Theorem33Density => {
            let (checks, csv) = theorem33()?;
            artifacts.push((format!("{}-density.csv", case.id()), csv));
            checks
        }
    };
    let verdict = if checks.iter().all(|c| c.pass) { "PASS" } else { "FAIL" };
    Ok((
        CaseReport {
            case: case.id(),
            claim: case.claim(),
            verdict,
            checks,
        },
        artifacts,
    ))
}

fn svg(case: Case, maps: &[&IntervalMap]) -> (String, String) {
    (format!("{}.svg", case.id()), render_maps(case.id(), maps))
}

fn unit_grid(space: Space, step: f64) -> Grid {
    Grid::uniform(space, step).expect("positive step")
}

const TENT_EPS: f64 = 0.1;
const TENT_DELTA: f64 = 0.01;
const ORBIT_LEN: usize = 1000;
const CHAIN_DELTA: f64 = 0.1;
const N_MAX: usize = 64;

fn tent_checks(f: &IntervalMap) -> Vec<Check> {
    let m = FuzzyMetric::standard(f.domain());
    let grid = unit_grid(f.domain(), 1e-4);
    let coarse = unit_grid(f.domain(), 1e-3);
    let mut out = Vec::new();

    let t0 = match m.uniform_horizon(TENT_EPS, &grid) {
        Ok(Some(t0)) => t0,
        other => {
            out.push(check(
                "uniform horizon",
                false,
                json!({ "error": format!("{other:?}") }),
            ));
            return out;
        }
    };
    let analytic = (1.0 - TENT_EPS) / TENT_EPS * f.domain().diameter();
    // one rung of the power-of-two ladder around the analytic value
    out.push(check(
        "uniform horizon within one ladder rung of (1-eps)/eps",
        t0 >= analytic && t0 < 2.0 * analytic,
        json!({ "eps": TENT_EPS, "t0": t0, "analytic": analytic }),
    ));

    out.push(attempt(
        "random pseudo-orbit is shadowed",
        (|| {
            let seq = random_pseudo_orbit(f, &m, TENT_DELTA, t0, 0.3, ORBIT_LEN, 0)?;
            let broken = validate_f_pseudo_orbit(&seq, f, &m, TENT_DELTA, t0);
            let v = shadow_search(&seq, f, &m, TENT_EPS, t0, &grid)?;
            Ok(check(
                "random pseudo-orbit is shadowed",
                broken.is_empty() && v.found(),
                json!({ "delta": TENT_DELTA, "length": ORBIT_LEN, "seed": 0, "broken_steps": broken.len(), "verdict": v }),
            ))
        })(),
    ));

    out.push(attempt(
        "chain mixing is cofinite",
        chain_mixing_check(0.2, 0.8, f, &m, CHAIN_DELTA, 1.0, &coarse, N_MAX).map(|r| {
            check(
                "chain mixing is cofinite",
                r.is_cofinite(),
                json!({ "from": 0.2, "to": 0.8, "report": r }),
            )
        }),
    ));
    out
}

fn mixing_probe(f: &IntervalMap) -> Result<Check> {
    let m = FuzzyMetric::standard(f.domain());
    let grid = unit_grid(f.domain(), 1e-3);
    let u = Ball::open(0.2, 0.1, 1.0)?;
    let v = Ball::open(0.8, 0.1, 1.0)?;
    let p = topological_mixing_probe(f, &u, &v, &m, N_MAX, &grid)?;
    Ok(check(
        "topological mixing probe is cofinite",
        p.is_cofinite(),
        json!({ "u": u, "v": v, "probe": p }),
    ))
}

const CROSSING_DELTA: f64 = 0.01;
const FUZZY_EPS: f64 = 0.2;
const CLASSICAL_EPS: f64 = 0.125;

fn classical_not_shadowed(f: &IntervalMap) -> Result<Check> {
    let seq = crossing_orbit(f, CROSSING_DELTA)?;
    let broken = classical_validate(&seq, f, CROSSING_DELTA);
    let grid = unit_grid(f.domain(), 1e-5);
    let v = classical_shadow_search(&seq, f, CLASSICAL_EPS, &grid)?;
    Ok(check(
        "crossing pseudo-orbit has no classical tracer",
        broken.is_empty() && !v.found(),
        json!({ "delta": CROSSING_DELTA, "length": seq.len(), "broken_steps": broken.len(), "verdict": v }),
    ))
}

fn fuzzy_not_shadowed(f: &IntervalMap, m: &FuzzyMetric, t0: f64) -> Result<Check> {
    let name = format!("crossing pseudo-orbit has no F-tracer at t0={t0}");
    let seq = crossing_orbit(f, CROSSING_DELTA)?;
    let broken = validate_f_pseudo_orbit(&seq, f, m, CROSSING_DELTA, t0);
    let grid = unit_grid(f.domain(), 1e-4);
    let v = shadow_search(&seq, f, m, FUZZY_EPS, t0, &grid)?;
    Ok(check(
        name,
        broken.is_empty() && !v.found(),
        json!({ "metric": m.kind(), "delta": CROSSING_DELTA, "length": seq.len(), "broken_steps": broken.len(), "verdict": v }),
    ))
}

fn continuity(f: &IntervalMap, m: &FuzzyMetric) -> Result<Check> {
    let grid = unit_grid(f.domain(), 1e-3);
    let r = certify_fuzzy_continuity(m, f, FUZZY_EPS, 1.0, &grid)?;
    Ok(check(
        "fuzzy continuity certificate",
        r.certified,
        json!({ "metric": m.kind(), "report": r }),
    ))
}

fn example43a(f: &IntervalMap) -> Vec<Check> {
    vec![attempt(
        "crossing pseudo-orbit has no classical tracer",
        classical_not_shadowed(f),
    )]
}

fn example43b(f: &IntervalMap) -> Vec<Check> {
    let m = FuzzyMetric::standard(f.domain());
    let mut out = vec![attempt("fuzzy continuity certificate", continuity(f, &m))];
    out.push(attempt(
        "crossing pseudo-orbit is F-shadowed by 1/2",
        (|| {
            let grid = unit_grid(f.domain(), 1e-4);
            let t0 = m
                .uniform_horizon(FUZZY_EPS, &grid)?
                .ok_or_else(|| crate::Error::Construction("no uniform horizon".into()))?;
            let seq = build_nonshadowable_orbit(CROSSING_DELTA)?;
            let broken = validate_f_pseudo_orbit(&seq, f, &m, CROSSING_DELTA, t0);
            let half_traces = ns_set(&seq, 0.5, f, &m, FUZZY_EPS, t0).is_empty();
            let v = shadow_search(&seq, f, &m, FUZZY_EPS, t0, &grid)?;
            Ok(check(
                "crossing pseudo-orbit is F-shadowed by 1/2",
                broken.is_empty() && half_traces && v.found(),
                json!({ "t0": t0, "broken_steps": broken.len(), "half_traces": half_traces, "verdict": v }),
            ))
        })(),
    ));
    out
}

fn example43c(f: &IntervalMap) -> Vec<Check> {
    let m = FuzzyMetric::ratio_phi();
    let grid = unit_grid(f.domain(), 1e-3);
    let modulus = example43_ratio_modulus(f, &grid);
    let mut out = vec![
        check(
            "ratio modulus holds on every grid pair",
            modulus.holds(),
            json!({ "grid_step": grid.step(), "report": modulus }),
        ),
        attempt("fuzzy continuity certificate", continuity(f, &m)),
    ];
    for t0 in [1.0, 2.0, 10.0] {
        out.push(attempt(
            "crossing pseudo-orbit has no F-tracer",
            fuzzy_not_shadowed(f, &m, t0),
        ));
    }
    out.push(attempt(
        "no chain from 0.9 down to 0.1",
        chain_search(0.9, 0.1, f, &m, 0.05, 1.0, &grid).map(|c| {
            check(
                "no chain from 0.9 down to 0.1",
                c.is_none(),
                json!({ "delta": 0.05, "chain": c.map(|s| s.states) }),
            )
        }),
    ));
    out
}

fn example43d(f: &IntervalMap) -> Vec<Check> {
    let m = FuzzyMetric::ratio();
    vec![
        attempt("fuzzy continuity certificate", continuity(f, &m)),
        attempt("crossing pseudo-orbit has no F-tracer", fuzzy_not_shadowed(f, &m, 1.0)),
    ]
}

fn example44(f: &IntervalMap, g: &IntervalMap) -> Vec<Check> {
    let alpha = 1.0 / 256.0;
    let fine = unit_grid(g.domain(), 1e-5);
    let sup = fine
        .points()
        .iter()
        .map(|&x| (f.apply(x) - g.apply(x)).abs())
        .fold(0.0, f64::max);
    let below_diagonal = fine
        .points()
        .iter()
        .filter(|&&x| x != 0.5 && x != 1.0 && g.apply(x) <= x)
        .count();
    let m = FuzzyMetric::ratio();
    let grid = unit_grid(g.domain(), 1e-3);
    let modulus = perturbation_ratio_modulus(&m, f, g, &grid);
    vec![
        check(
            "g fixes 1/2 and 1, stays within alpha of f, and lies above the diagonal elsewhere",
            g.apply(0.5) == 0.5 && g.apply(1.0) == 1.0 && sup < alpha && below_diagonal == 0,
            json!({
                "alpha": alpha,
                "g_half": g.apply(0.5),
                "g_one": g.apply(1.0),
                "sup_distance": sup,
                "grid_step": fine.step(),
                "points_not_above_diagonal": below_diagonal,
            }),
        ),
        check(
            "M1(g(x),g(y)) > M1(f(x),f(y))/2 on every grid pair",
            modulus.holds(),
            json!({ "grid_step": grid.step(), "report": modulus }),
        ),
        attempt("fuzzy continuity certificate", continuity(g, &m)),
        attempt("crossing pseudo-orbit has no F-tracer", fuzzy_not_shadowed(g, &m, 1.0)),
        attempt(
            "crossing pseudo-orbit has no classical tracer",
            classical_not_shadowed(g),
        ),
    ]
}

const SKELETON_N: usize = 1_000_000;

fn theorem33() -> Result<(Vec<Check>, String)> {
    let skel = density(&skeleton(SKELETON_N))?;
    let at = |r: &DensityReport, n: usize| r.curve.iter().find(|p| p.n == n).map(|p| p.density);
    let d100 = at(&skel, 100);
    let d_final = skel.final_density;

    let f = tent(Beta(Coeff::Exact(2.into())))?;
    let m = FuzzyMetric::standard(f.domain());
    let seq = build_transitivity_orbit(0.2, 0.7, &f, SKELETON_N + 1)?;
    let npo = npo_set(&seq, &f, &m, 0.01, 1.0);
    let inside = npo.is_subset_of(&skeleton(npo.universe()));
    let npo_density = density(&npo)?;

    let mut csv = String::from("n,skeleton_density,npo_density\n");
    for (p, q) in skel.curve.iter().zip(&npo_density.curve) {
        csv.push_str(&format!("{},{},{}\n", p.n, p.density, q.density));
    }

    let checks = vec![
        check(
            "skeleton density is 0.19 at n=100",
            d100 == Some(0.19),
            json!({ "density_100": d100 }),
        ),
        check(
            "skeleton density is at most 0.003 at n=10^6",
            d_final <= 0.003,
            json!({ "report": skel }),
        ),
        check(
            "broken steps of the constructed orbit lie on the skeleton",
            inside && !npo.is_empty(),
            json!({ "map": f.label(), "x": 0.2, "y": 0.7, "length": seq.len(), "broken_steps": npo.len(), "report": npo_density }),
        ),
    ];
    Ok((checks, csv))
}
