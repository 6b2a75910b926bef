use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use super::Nearness;
use crate::tnorm::{AxiomOutcome, TOLERANCE};

/// Relative horizon nudge for the continuity-in-t probe.
const CONTINUITY_NUDGE: f64 = 1e-10;
const CONTINUITY_SLACK: f64 = 1e-6;

/// Per-axiom outcome of [`check_axioms`].
#[derive(Debug, Clone, Serialize)]
pub struct MetricAxiomReport {
    pub samples: usize,
    pub seed: u64,
    /// `M(x, y, t) ∈ (0, 1]`
    pub positivity: AxiomOutcome,
    /// `M(x, y, t) = 1 ⇔ x = y`
    pub identity: AxiomOutcome,
    pub symmetry: AxiomOutcome,
    /// `M(x, z, t + s) ≥ M(x, y, t) ∗ M(y, z, s)`
    pub triangle: AxiomOutcome,
    /// continuity of `t ↦ M(x, y, t)`
    pub continuity: AxiomOutcome,
    /// `t₁ < t₂ ⇒ M(x, y, t₁) ≤ M(x, y, t₂)`
    pub monotonicity: AxiomOutcome,
}

impl MetricAxiomReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.positivity,
            &self.identity,
            &self.symmetry,
            &self.triangle,
            &self.continuity,
            &self.monotonicity,
        ]
        .iter()
        .all(|a| a.passed)
    }
}

#[derive(Clone, Copy)]
struct Sample {
    x: f64,
    y: f64,
    z: f64,
    t: f64,
    s: f64,
}

#[derive(Default, Clone, Copy)]
struct Flags {
    positivity: bool,
    identity: bool,
    symmetry: bool,
    triangle: bool,
    continuity: bool,
    monotonicity: bool,
}

fn evaluate(m: &impl Nearness, p: Sample) -> Flags {
    let Sample { x, y, z, t, s } = p;
    let star = m.tnorm();
    let mxy = m.nearness(x, y, t);
    let in_range = |v: f64| v > 0.0 && v <= 1.0;

    let identity = m.nearness(x, x, t) == 1.0 && (x == y || mxy < 1.0);
    let lhs = m.nearness(x, z, t + s);
    let rhs = star.apply_unchecked(mxy, m.nearness(y, z, s));
    let nudged = m.nearness(x, y, t * (1.0 + CONTINUITY_NUDGE));
    let (t1, t2) = if t <= s { (t, s) } else { (s, t) };

    Flags {
        positivity: in_range(mxy) && in_range(m.nearness(y, z, s)),
        identity,
        symmetry: (mxy - m.nearness(y, x, t)).abs() <= TOLERANCE,
        triangle: lhs >= rhs - TOLERANCE,
        continuity: (nudged - mxy).abs() <= CONTINUITY_SLACK,
        monotonicity: m.nearness(x, y, t1) <= m.nearness(x, y, t2) + TOLERANCE,
    }
}

/// Samples seeded triples `(x, y, z)` from the metric's space and log-uniform
/// horizons `t, s ∈ [1e-3, 1e3]`, then checks the five fuzzy metric axioms
/// plus horizon monotonicity. Samples are scored in parallel; the reported
/// witness is always the lowest-index failure.
pub fn check_axioms(m: &impl Nearness, samples: usize, seed: u64) -> MetricAxiomReport {
    let space = m.space();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let horizon = |u: f64| 10f64.powf(6.0 * u - 3.0);
    let draws: Vec<Sample> = (0..samples)
        .map(|_| Sample {
            x: space.sample(rng.gen()),
            y: space.sample(rng.gen()),
            z: space.sample(rng.gen()),
            t: horizon(rng.gen()),
            s: horizon(rng.gen()),
        })
        .collect();

    let flags: Vec<Flags> = draws.par_iter().map(|&p| evaluate(m, p)).collect();

    let mut report = MetricAxiomReport {
        samples,
        seed,
        positivity: AxiomOutcome::new(),
        identity: AxiomOutcome::new(),
        symmetry: AxiomOutcome::new(),
        triangle: AxiomOutcome::new(),
        continuity: AxiomOutcome::new(),
        monotonicity: AxiomOutcome::new(),
    };
    for (p, f) in draws.iter().zip(&flags) {
        let w = || vec![p.x, p.y, p.z, p.t, p.s];
        report.positivity.record(f.positivity, w);
        report.identity.record(f.identity, w);
        report.symmetry.record(f.symmetry, w);
        report.triangle.record(f.triangle, w);
        report.continuity.record(f.continuity, w);
        report.monotonicity.record(f.monotonicity, w);
    }
    report
}
