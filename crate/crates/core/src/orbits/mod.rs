//! Pseudo-orbits, violation index sets and their prefix densities.
//!
//! Infinite sequences are handled as finite prefixes. Density "limits" are
//! reported as a curve over a geometric ladder of prefix lengths plus a
//! thresholded verdict.

mod chains;
mod constructions;
pub mod io;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy_metric::Nearness;
use crate::systems::Dynamics;

pub(crate) use chains::tail_start;
pub use chains::{chain_mixing_check, chain_search, MixingReport, TransitionGraph};
pub use constructions::{build_transitivity_orbit, interleave_for_power, skeleton, skeleton_pairs};
pub use io::{load_orbit, read_orbit_csv, write_orbit_csv};

/// A prefix density below this counts as "plausibly zero".
pub const DENSITY_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    TrueOrbit,
    Perturbed,
    Constructed,
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSequence {
    pub states: Vec<f64>,
    pub provenance: Provenance,
}

impl OrbitSequence {
    pub fn new(states: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Precondition("orbit sequences are nonempty".into()));
        }
        Ok(OrbitSequence { states, provenance })
    }

    pub fn true_orbit(f: &impl Dynamics, x: f64, len: usize) -> Self {
        OrbitSequence {
            states: f.orbit(x, len.saturating_sub(1)),
            provenance: Provenance::TrueOrbit,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Sorted violation indices within `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    indices: Vec<usize>,
    universe: usize,
}

impl IndexSet {
    pub fn new(mut indices: Vec<usize>, universe: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.last().is_some_and(|&i| i >= universe) {
            return Err(Error::Precondition(format!(
                "index {} outside universe {universe}",
                indices.last().unwrap()
            )));
        }
        Ok(IndexSet { indices, universe })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `card(S ∩ [0, n))`
    pub fn count_below(&self, n: usize) -> usize {
        self.indices.partition_point(|&i| i < n)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityVerdict {
    PlausiblyZero,
    NotZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub curve: Vec<DensityPoint>,
    pub final_density: f64,
    pub threshold: f64,
    pub verdict: DensityVerdict,
}

/// Prefix lengths `10², 10³, …` below the universe, then the universe itself.
pub fn density_ladder(universe: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = std::iter::successors(Some(100usize), |n| n.checked_mul(10))
        .take_while(|&n| n < universe)
        .collect();
    ns.push(universe);
    ns
}

/// Prefix density curve of an index set. The verdict is "plausibly zero" when
/// the curve never rises and the last density is under [`DENSITY_THRESHOLD`].
pub fn density(iset: &IndexSet) -> Result<DensityReport> {
    if iset.universe == 0 {
        return Err(Error::Precondition("density of an empty universe".into()));
    }
    let curve: Vec<DensityPoint> = density_ladder(iset.universe)
        .into_iter()
        .map(|n| DensityPoint {
            n,
            density: iset.count_below(n) as f64 / n as f64,
        })
        .collect();
    let final_density = curve.last().unwrap().density;
    let falling = curve.windows(2).all(|w| w[1].density <= w[0].density);
    Ok(DensityReport {
        final_density,
        threshold: DENSITY_THRESHOLD,
        verdict: if falling && final_density < DENSITY_THRESHOLD {
            DensityVerdict::PlausiblyZero
        } else {
            DensityVerdict::NotZero
        },
        curve,
    })
}

fn transitions_where(seq: &OrbitSequence, bad: impl Fn(f64, f64) -> bool + Sync) -> IndexSet {
    let s = &seq.states;
    let n = s.len().saturating_sub(1);
    let indices: Vec<usize> = (0..n).into_par_iter().filter(|&i| bad(s[i], s[i + 1])).collect();
    IndexSet { indices, universe: n }
}

/// Indices `i` with `M(f(xᵢ), xᵢ₊₁, t0) ≤ 1 - delta`. Empty exactly when the
/// sequence is a δ-F-pseudo-orbit at horizon `t0`. The universe is the number
/// of transitions, `len - 1`.
pub fn validate_f_pseudo_orbit(
    seq: &OrbitSequence,
    f: &impl Dynamics,
    m: &impl Nearness,
    delta: f64,
    t0: f64,
) -> IndexSet {
    transitions_where(seq, |a, b| m.nearness(f.apply(a), b, t0) <= 1.0 - delta)
}

/// Same set as [`validate_f_pseudo_orbit`]; named after the `N^f(μ, δ, t)` index set.
pub fn npo_set(seq: &OrbitSequence, f: &impl Dynamics, m: &impl Nearness, delta: f64, t: f64) -> IndexSet {
    validate_f_pseudo_orbit(seq, f, m, delta, t)
}

/// Indices `i` with `|f(xᵢ) - xᵢ₊₁| ≥ delta`.
pub fn classical_validate(seq: &OrbitSequence, f: &impl Dynamics, delta: f64) -> IndexSet {
    transitions_where(seq, |a, b| (f.apply(a) - b).abs() >= delta)
}

/// Indices `i` with `M(fⁱ(x), xᵢ, t) ≤ 1 - delta`, over the whole sequence.
pub fn ns_set(seq: &OrbitSequence, x: f64, f: &impl Dynamics, m: &impl Nearness, delta: f64, t: f64) -> IndexSet {
    shadow_misses(seq, x, f, |a, b| m.nearness(a, b, t) <= 1.0 - delta)
}

/// Indices `i` with `|fⁱ(x) - xᵢ| ≥ eps`.
pub fn classical_ns_set(seq: &OrbitSequence, x: f64, f: &impl Dynamics, eps: f64) -> IndexSet {
    shadow_misses(seq, x, f, |a, b| (a - b).abs() >= eps)
}

fn shadow_misses(seq: &OrbitSequence, x: f64, f: &impl Dynamics, miss: impl Fn(f64, f64) -> bool) -> IndexSet {
    let mut cur = x;
    let mut indices = Vec::new();
    for (i, &xi) in seq.states.iter().enumerate() {
        if i > 0 {
            cur = f.apply(cur);
        }
        if miss(cur, xi) {
            indices.push(i);
        }
    }
    IndexSet {
        indices,
        universe: seq.len(),
    }
}

/// Seeded random δ-F-pseudo-orbit: each step lands uniformly inside a window
/// around `f(xᵢ)` that is halved until the fuzzy step condition holds.
pub fn random_pseudo_orbit(
    f: &impl Dynamics,
    m: &impl Nearness,
    delta: f64,
    t0: f64,
    start: f64,
    len: usize,
    seed: u64,
) -> Result<OrbitSequence> {
    if len == 0 {
        return Err(Error::Precondition("pseudo-orbit length must be positive".into()));
    }
    let dom = f.domain();
    if !dom.contains(start) {
        return Err(Error::domain("start", start, "the map's domain"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut states = Vec::with_capacity(len);
    states.push(start);
    for _ in 1..len {
        let target = f.apply(*states.last().unwrap());
        let u: f64 = rng.gen_range(-1.0..1.0);
        let mut radius = dom.diameter() * delta;
        let mut next = target;
        for _ in 0..80 {
            let y = target + u * radius;
            if dom.contains(y) && m.nearness(target, y, t0) > 1.0 - delta {
                next = y;
                break;
            }
            radius *= 0.5;
        }
        states.push(next);
    }
    OrbitSequence::new(states, Provenance::Perturbed)
}
