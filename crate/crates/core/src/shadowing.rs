//! Exhaustive grid search for shadowing witnesses.
//!
//! A "none" verdict is only a statement about the grid it was computed on;
//! every verdict records the grid step. Candidates are scored in parallel and
//! merged deterministically: the witness is always the smallest grid value
//! that traces the whole sequence.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy_metric::{Ball, Nearness};
use crate::orbits::{chain_mixing_check, density, ns_set, DensityReport, OrbitSequence, Provenance, DENSITY_THRESHOLD};
use crate::space::Grid;
use crate::systems::{example43_map, Dynamics, IntervalMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceMode {
    /// `M(fⁱ(x), xᵢ, t0) > 1 - eps`; worst values are minimum nearness.
    Fuzzy,
    /// `|fⁱ(x) - xᵢ| < eps`; worst values are maximum distance.
    Classical,
}

/// Result of a witness search.
#[derive(Debug, Clone, Serialize)]
pub struct ShadowingVerdict {
    pub mode: TraceMode,
    pub witness: Option<f64>,
    /// For a witness: the index where tracing is tightest. Otherwise the
    /// failure index of the best near miss.
    pub worst_index: Option<usize>,
    pub worst_value: Option<f64>,
    /// The candidate that survived longest when no witness exists.
    pub near_miss: Option<f64>,
    pub eps: f64,
    pub t0: Option<f64>,
    pub grid_step: f64,
    pub candidates_examined: usize,
}

impl ShadowingVerdict {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, Copy)]
struct Trace {
    /// first index where tracing fails, with the closeness there
    failure: Option<(usize, f64)>,
    /// index and closeness of the tightest index seen before stopping
    tightest: (usize, f64),
}

/// Follows the orbit of `x` along `seq`. `closeness` is larger-is-better and
/// tracing holds while it stays strictly above `threshold`.
fn trace(
    seq: &[f64],
    x: f64,
    f: &impl Dynamics,
    closeness: &impl Fn(f64, f64) -> f64,
    threshold: f64,
    stop_early: bool,
) -> Trace {
    let mut cur = x;
    let mut tightest = (0, f64::INFINITY);
    let mut failure = None;
    for (i, &xi) in seq.iter().enumerate() {
        if i > 0 {
            cur = f.apply(cur);
        }
        let c = closeness(cur, xi);
        if c < tightest.1 {
            tightest = (i, c);
        }
        if (c.is_nan() || c <= threshold) && failure.is_none() {
            failure = Some((i, c));
            if stop_early {
                break;
            }
        }
    }
    Trace { failure, tightest }
}

/// A grid point with its trace.
type Candidate = Option<(f64, Trace)>;

fn search(
    seq: &OrbitSequence,
    f: &impl Dynamics,
    grid: &Grid,
    closeness: impl Fn(f64, f64) -> f64 + Sync,
    threshold: f64,
) -> (Candidate, Candidate) {
    let pts = grid.points();
    let states = &seq.states;
    let witness = pts
        .par_iter()
        .find_first(|&&x| trace(states, x, f, &closeness, threshold, true).failure.is_none())
        .map(|&x| (x, trace(states, x, f, &closeness, threshold, false)));
    if witness.is_some() {
        return (witness, None);
    }
    let traces: Vec<Trace> = pts
        .par_iter()
        .map(|&x| trace(states, x, f, &closeness, threshold, true))
        .collect();
    // longest survival, smallest value on ties
    let best = traces
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| {
            let fa = a.failure.map_or(usize::MAX, |p| p.0);
            let fb = b.failure.map_or(usize::MAX, |p| p.0);
            fa.cmp(&fb).then(j.cmp(i))
        })
        .map(|(i, t)| (pts[i], *t));
    (None, best)
}

fn check_search_args(seq: &OrbitSequence, eps: f64, grid: &Grid) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::Precondition("shadowing needs a nonempty sequence".into()));
    }
    if grid.is_empty() {
        return Err(Error::Precondition("empty candidate grid".into()));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::domain("eps", eps, "(0, inf)"));
    }
    Ok(())
}

/// Tests every grid point as a candidate `x` with `M(fⁱ(x), xᵢ, t0) > 1 - eps`
/// for all `i`.
pub fn shadow_search(
    seq: &OrbitSequence,
    f: &impl Dynamics,
    m: &impl Nearness,
    eps: f64,
    t0: f64,
    grid: &Grid,
) -> Result<ShadowingVerdict> {
    check_search_args(seq, eps, grid)?;
    if eps >= 1.0 {
        return Err(Error::domain("eps", eps, "(0, 1)"));
    }
    let (witness, miss) = search(seq, f, grid, |a, b| m.nearness(a, b, t0), 1.0 - eps);
    let verdict = assemble(TraceMode::Fuzzy, witness, miss, eps, Some(t0), grid, |c| c);
    if let Some(w) = verdict.witness {
        // independent recheck of the strict inequality at every index
        let misses = ns_set(seq, w, f, m, eps, t0);
        assert!(misses.is_empty(), "witness {w} fails at {:?}", misses.indices());
    }
    Ok(verdict)
}

/// Tests every grid point as a candidate `x` with `|fⁱ(x) - xᵢ| < eps` for all `i`.
pub fn classical_shadow_search(
    seq: &OrbitSequence,
    f: &impl Dynamics,
    eps: f64,
    grid: &Grid,
) -> Result<ShadowingVerdict> {
    check_search_args(seq, eps, grid)?;
    let (witness, miss) = search(seq, f, grid, |a, b| -(a - b).abs(), -eps);
    Ok(assemble(TraceMode::Classical, witness, miss, eps, None, grid, |c| -c))
}

fn assemble(
    mode: TraceMode,
    witness: Candidate,
    miss: Candidate,
    eps: f64,
    t0: Option<f64>,
    grid: &Grid,
    report_value: impl Fn(f64) -> f64,
) -> ShadowingVerdict {
    let (witness_x, near_miss, worst) = match (witness, miss) {
        (Some((x, t)), _) => (Some(x), None, Some(t.tightest)),
        (None, Some((x, t))) => (None, Some(x), t.failure),
        (None, None) => (None, None, None),
    };
    ShadowingVerdict {
        mode,
        witness: witness_x,
        worst_index: worst.map(|w| w.0),
        worst_value: worst.map(|w| report_value(w.1)),
        near_miss,
        eps,
        t0,
        grid_step: grid.step(),
        candidates_examined: grid.len(),
    }
}

/// Orbit that climbs from `¼` toward the fixed point `½`, hops across it, and
/// climbs on toward the fixed point `1`.
///
/// The climb stops at the first `a` with `min/max(f(a), ½) > 1 - delta/2`;
/// the sequence then visits `½` and `b = ½ / (1 - delta/2)`, so both hops are
/// δ-F-steps for the ratio metrics at any horizon `t0 ≥ 1`. The tail is the
/// true orbit of `b`, run until it is within `1e-10` of `1`.
pub fn crossing_orbit(f: &impl Dynamics, delta: f64) -> Result<OrbitSequence> {
    const START: f64 = 0.25;
    const MAX_STEPS: usize = 100_000;
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Construction(format!(
            "delta = {delta} cannot isolate the crossing at ½; need 0 < delta < ½"
        )));
    }
    let ratio = |a: f64, b: f64| a.min(b) / a.max(b);
    let mut states = vec![START];
    let mut x = START;
    loop {
        let fx = f.apply(x);
        if ratio(fx, 0.5) > 1.0 - delta / 2.0 {
            break;
        }
        if fx >= 0.5 || states.len() > MAX_STEPS {
            return Err(Error::Construction("climb from ¼ never settles below ½".into()));
        }
        states.push(fx);
        x = fx;
    }
    states.push(0.5);
    let mut x = 0.5 / (1.0 - delta / 2.0);
    states.push(x);
    while 1.0 - x > 1e-10 {
        x = f.apply(x);
        states.push(x);
        if states.len() > 2 * MAX_STEPS {
            return Err(Error::Construction("climb toward 1 does not converge".into()));
        }
    }
    OrbitSequence::new(states, Provenance::Constructed)
}

/// [`crossing_orbit`] for the three-piece map.
pub fn build_nonshadowable_orbit(delta: f64) -> Result<OrbitSequence> {
    crossing_orbit(&example43_map(), delta)
}

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicVerdict {
    pub candidate: f64,
    pub misses: usize,
    pub report: DensityReport,
    /// Final prefix density under the threshold.
    pub shadowed: bool,
    pub eps: f64,
    pub t0: f64,
    pub grid_step: f64,
    pub candidates_examined: usize,
}

/// Picks the grid candidate whose miss set `N_s` has the smallest final prefix
/// density (smallest value on ties) and reports its density curve.
pub fn ergodic_shadow_search(
    seq: &OrbitSequence,
    f: &impl Dynamics,
    m: &impl Nearness,
    eps: f64,
    t0: f64,
    grid: &Grid,
) -> Result<ErgodicVerdict> {
    check_search_args(seq, eps, grid)?;
    let states = &seq.states;
    let counts: Vec<usize> = grid
        .points()
        .par_iter()
        .map(|&x| {
            let mut cur = x;
            let mut misses = 0;
            for (i, &xi) in states.iter().enumerate() {
                if i > 0 {
                    cur = f.apply(cur);
                }
                if m.nearness(cur, xi, t0) <= 1.0 - eps {
                    misses += 1;
                }
            }
            misses
        })
        .collect();
    let (best, &misses) = counts
        .iter()
        .enumerate()
        .min_by_key(|&(i, c)| (*c, i))
        .expect("nonempty grid");
    let candidate = grid.points()[best];
    let report = density(&ns_set(seq, candidate, f, m, eps, t0))?;
    Ok(ErgodicVerdict {
        candidate,
        misses,
        shadowed: report.final_density < DENSITY_THRESHOLD,
        report,
        eps,
        t0,
        grid_step: grid.step(),
        candidates_examined: grid.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingProbe {
    /// `n ∈ 1..=n_max` with `fⁿ(U) ∩ V ≠ ∅`.
    pub hits: Vec<usize>,
    pub n0: Option<usize>,
    pub n_max: usize,
    pub u_hull: (f64, f64),
    pub v_hull: (f64, f64),
}

impl MixingProbe {
    /// Same window rule as [`crate::orbits::MixingReport::is_cofinite`].
    pub fn is_cofinite(&self) -> bool {
        self.n0.is_some_and(|n0| 2 * n0 <= self.n_max + 1)
    }
}

/// Tracks the interval hull of `U`'s grid points through exact piecewise-linear
/// images and records the iterates that meet the hull of `V`'s grid points.
pub fn topological_mixing_probe(
    f: &IntervalMap,
    u: &Ball,
    v: &Ball,
    m: &impl Nearness,
    n_max: usize,
    grid: &Grid,
) -> Result<MixingProbe> {
    let hull = |b: &Ball, name: &str| {
        b.grid_range(m, grid)
            .map(|(a, z)| (grid.points()[a], grid.points()[z]))
            .ok_or_else(|| Error::EmptyBall(format!("no grid point lies in {name} around {}", b.center)))
    };
    let u_hull = hull(u, "U")?;
    let v_hull = hull(v, "V")?;
    let mut image = u_hull;
    let mut hits = Vec::new();
    for n in 1..=n_max {
        image = f.image(image.0, image.1);
        if image.0 <= v_hull.1 && v_hull.0 <= image.1 {
            hits.push(n);
        }
    }
    Ok(MixingProbe {
        n0: crate::orbits::tail_start(&hits, n_max),
        hits,
        n_max,
        u_hull,
        v_hull,
    })
}

/// Shadowing, chain mixing and topological mixing on one instance: the
/// premises and the conclusion of "shadowing + chain mixing ⇒ mixing".
#[derive(Debug, Clone, Serialize)]
pub struct MixingImplication {
    pub shadowing: bool,
    pub chain_mixing: bool,
    pub topological_mixing: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn check_mixing_implication(
    f: &IntervalMap,
    m: &impl Nearness,
    seq: &OrbitSequence,
    eps: f64,
    t0: f64,
    delta: f64,
    u: &Ball,
    v: &Ball,
    grid: &Grid,
    n_max: usize,
) -> Result<MixingImplication> {
    let shadowing = shadow_search(seq, f, m, eps, t0, grid)?.found();
    let chain_mixing = chain_mixing_check(u.center, v.center, f, m, delta, u.horizon, grid, n_max)?.is_cofinite();
    let topological_mixing = topological_mixing_probe(f, u, v, m, n_max, grid)?.is_cofinite();
    Ok(MixingImplication {
        shadowing,
        chain_mixing,
        topological_mixing,
    })
}
