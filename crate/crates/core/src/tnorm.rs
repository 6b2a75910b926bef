//! Continuous t-norms on the unit interval.
//!
//! Three classical t-norms are provided. Each is commutative, associative,
//! monotone and has `1` as identity. The two solvers [`TNorm::residuate`] and
//! [`TNorm::square_root`] invert `b ↦ a ∗ b` and `b ↦ b ∗ b` by bisection;
//! they are the numeric side of the residuation lemma used when splitting a
//! nearness budget across two steps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const TOLERANCE: f64 = 1e-12;

/// Hard cap on bisection halvings.
pub const BISECTION_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    Product,
    Minimum,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Product, TNorm::Minimum, TNorm::Lukasiewicz];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Product => "product",
            TNorm::Minimum => "minimum",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }

    /// `a ∗ b` with both arguments checked against `[0, 1]`.
    pub fn apply(self, a: f64, b: f64) -> Result<f64> {
        check_unit("a", a)?;
        check_unit("b", b)?;
        Ok(self.apply_unchecked(a, b))
    }

    #[inline]
    pub fn apply_unchecked(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Product => a * b,
            TNorm::Minimum => a.min(b),
            // identity handled apart: a + 1 - 1 does not round-trip
            TNorm::Lukasiewicz if b == 1.0 => a,
            TNorm::Lukasiewicz if a == 1.0 => b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }

    /// Smallest `r3` (within [`TOLERANCE`]) with `r1 ∗ r3 ≥ r2`, for `1 > r1 > r2 > 0`.
    pub fn residuate(self, r1: f64, r2: f64) -> Result<f64> {
        if !(r2 > 0.0 && r1 > r2 && r1 < 1.0) {
            return Err(Error::Precondition(format!(
                "residuate needs 1 > r1 > r2 > 0, got r1 = {r1}, r2 = {r2}"
            )));
        }
        Ok(bisect_least(|b| self.apply_unchecked(r1, b) >= r2))
    }

    /// Smallest `r5` (within [`TOLERANCE`]) with `r5 ∗ r5 ≥ r4`, for `r4 ∈ (0, 1)`.
    pub fn square_root(self, r4: f64) -> Result<f64> {
        if !(r4 > 0.0 && r4 < 1.0) {
            return Err(Error::Precondition(format!("square_root needs r4 in (0, 1), got {r4}")));
        }
        Ok(bisect_least(|b| self.apply_unchecked(b, b) >= r4))
    }
}

/// Least `b ∈ [0, 1]` satisfying a monotone predicate that fails at 0 and holds at 1.
/// Always returns a point where the predicate holds.
fn bisect_least(holds: impl Fn(f64) -> bool) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..BISECTION_DEPTH {
        if hi - lo <= TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(what, v, "[0, 1]"))
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(TNorm::Product),
            "minimum" | "min" => Ok(TNorm::Minimum),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::UnknownName {
                kind: "t-norm",
                name: other.to_string(),
            }),
        }
    }
}

/// Outcome of the sampled axiom check for one t-norm.
#[derive(Debug, Clone, Serialize)]
pub struct TNormAxiomReport {
    pub tnorm: TNorm,
    pub samples: usize,
    pub seed: u64,
    pub commutativity: AxiomOutcome,
    pub associativity: AxiomOutcome,
    pub monotonicity: AxiomOutcome,
    pub identity: AxiomOutcome,
}

impl TNormAxiomReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.commutativity,
            &self.associativity,
            &self.monotonicity,
            &self.identity,
        ]
        .iter()
        .all(|a| a.passed)
    }
}

/// Pass/fail for one axiom, with the first counterexample seen.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomOutcome {
    pub passed: bool,
    pub failures: usize,
    pub witness: Option<Vec<f64>>,
}

impl AxiomOutcome {
    pub(crate) fn new() -> Self {
        AxiomOutcome {
            passed: true,
            failures: 0,
            witness: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<f64>) {
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// Checks commutativity and associativity (within [`TOLERANCE`]), monotonicity
/// and identity (exactly) on seeded random quadruples.
pub fn check_axioms(t: TNorm, samples: usize, seed: u64) -> TNormAxiomReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    let mut commutativity = AxiomOutcome::new();
    let mut associativity = AxiomOutcome::new();
    let mut monotonicity = AxiomOutcome::new();
    let mut identity = AxiomOutcome::new();

    for _ in 0..samples {
        let (a, b, c, d): (f64, f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen(), rng.gen());
        let ab = t.apply_unchecked(a, b);
        let ba = t.apply_unchecked(b, a);
        commutativity.record((ab - ba).abs() <= TOLERANCE, || vec![a, b]);

        let left = t.apply_unchecked(a, t.apply_unchecked(b, c));
        let right = t.apply_unchecked(ab, c);
        associativity.record((left - right).abs() <= TOLERANCE, || vec![a, b, c]);

        // a ≤ c', b ≤ d' after sorting each pair
        let (lo1, hi1) = if a <= c { (a, c) } else { (c, a) };
        let (lo2, hi2) = if b <= d { (b, d) } else { (d, b) };
        monotonicity.record(t.apply_unchecked(lo1, lo2) <= t.apply_unchecked(hi1, hi2), || {
            vec![lo1, lo2, hi1, hi2]
        });

        identity.record(t.apply_unchecked(a, 1.0) == a, || vec![a]);
    }

    TNormAxiomReport {
        tnorm: t,
        samples,
        seed,
        commutativity,
        associativity,
        monotonicity,
        identity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        assert_eq!(TNorm::Product.apply(0.5, 0.8).unwrap(), 0.4);
        assert_eq!(TNorm::Minimum.apply(0.3, 0.7).unwrap(), 0.3);
        for t in TNorm::ALL {
            assert_eq!(t.apply(0.42, 1.0).unwrap(), 0.42);
        }
    }

    #[test]
    fn apply_rejects_out_of_range() {
        assert!(matches!(
            TNorm::Product.apply(1.5, 0.2),
            Err(Error::Domain { what: "a", .. })
        ));
        assert!(TNorm::Minimum.apply(0.2, -0.1).is_err());
    }

    #[test]
    fn residuate_examples() {
        let p = TNorm::Product.residuate(0.9, 0.45).unwrap();
        // analytic r2 / r1
        assert!((p - 0.45 / 0.9).abs() < 1e-11, "{p}");
        let m = TNorm::Minimum.residuate(0.9, 0.45).unwrap();
        assert!((m - 0.45).abs() < 1e-11);
        let l = TNorm::Lukasiewicz.residuate(0.9, 0.45).unwrap();
        assert!((l - 0.55).abs() < 1e-11);
    }

    #[test]
    fn residuate_rejects_bad_order() {
        assert!(TNorm::Product.residuate(0.4, 0.5).is_err());
        assert!(TNorm::Product.residuate(0.5, 0.5).is_err());
        assert!(TNorm::Product.residuate(1.0, 0.5).is_err());
    }

    #[test]
    fn square_root_examples() {
        assert!((TNorm::Product.square_root(0.81).unwrap() - 0.9).abs() < 1e-11);
        assert!((TNorm::Minimum.square_root(0.81).unwrap() - 0.81).abs() < 1e-11);
        assert!((TNorm::Lukasiewicz.square_root(0.8).unwrap() - 0.9).abs() < 1e-11);
        assert!(TNorm::Product.square_root(0.0).is_err());
        assert!(TNorm::Product.square_root(1.0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for t in TNorm::ALL {
            assert_eq!(t.name().parse::<TNorm>().unwrap(), t);
        }
        assert!("hamacher".parse::<TNorm>().is_err());
    }

    #[test]
    fn axiom_suite_passes() {
        for t in TNorm::ALL {
            let r = check_axioms(t, 10_000, 7);
            assert!(r.all_pass(), "{r:?}");
        }
    }
}
