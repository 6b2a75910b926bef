//! George–Veeramani fuzzy metrics on a bounded interval.
//!
//! Three constructions are built in:
//!
//! * `standard`: `M(x, y, t) = t / (t + |x - y|)` on any bounded interval,
//! * `ratio-phi`: `min/max · φ(t)` on `(0, 1]`, with `φ(t) = min(t, 1)`,
//! * `ratio`: `min/max` on `(0, 1]`, independent of the horizon.
//!
//! All three use the product t-norm. Hot loops go through the [`Nearness`]
//! trait, which skips argument validation; [`FuzzyMetric::eval`] is the checked
//! entry point.

mod axioms;
mod continuity;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{Grid, Space};
use crate::tnorm::TNorm;

pub use axioms::{check_axioms, MetricAxiomReport};
pub use continuity::{
    certify_fuzzy_continuity, example43_ratio_modulus, pairwise_bound, perturbation_ratio_modulus, ContinuityReport,
    PairwiseReport,
};

/// Geometric horizon ladder `2^-20 · 2^k`, `k = 0..=60`.
pub fn horizon_ladder() -> impl DoubleEndedIterator<Item = f64> + Clone {
    (0..=60).map(|k| (2.0_f64).powi(k - 20))
}

/// Anything that can score the nearness of two states at a horizon.
pub trait Nearness: Sync {
    /// `M(x, y, t)` without argument checks.
    fn nearness(&self, x: f64, y: f64, t: f64) -> f64;
    fn space(&self) -> Space;
    fn tnorm(&self) -> TNorm;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Standard,
    RatioPhi,
    Ratio,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Standard => "standard",
            MetricKind::RatioPhi => "ratio-phi",
            MetricKind::Ratio => "ratio",
        }
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(MetricKind::Standard),
            "ratio-phi" | "ratio_phi" => Ok(MetricKind::RatioPhi),
            "ratio" => Ok(MetricKind::Ratio),
            other => Err(Error::UnknownName {
                kind: "metric",
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzyMetric {
    kind: MetricKind,
    space: Space,
    tnorm: TNorm,
}

/// The truncation `φ(t) = t` for `t ≤ 1`, `1` above.
#[inline]
pub fn phi(t: f64) -> f64 {
    t.min(1.0)
}

#[inline]
fn ratio(x: f64, y: f64) -> f64 {
    if x <= y {
        x / y
    } else {
        y / x
    }
}

impl FuzzyMetric {
    /// `t / (t + |x - y|)` on `space`.
    pub fn standard(space: Space) -> Self {
        FuzzyMetric {
            kind: MetricKind::Standard,
            space,
            tnorm: TNorm::Product,
        }
    }

    pub fn ratio_phi() -> Self {
        FuzzyMetric {
            kind: MetricKind::RatioPhi,
            space: Space::unit_half_open(),
            tnorm: TNorm::Product,
        }
    }

    pub fn ratio() -> Self {
        FuzzyMetric {
            kind: MetricKind::Ratio,
            space: Space::unit_half_open(),
            tnorm: TNorm::Product,
        }
    }

    /// Builds a metric by name. `space` is only honoured by `standard`; the
    /// ratio metrics always live on `(0, 1]`.
    pub fn from_kind(kind: MetricKind, space: Space) -> Self {
        match kind {
            MetricKind::Standard => FuzzyMetric::standard(space),
            MetricKind::RatioPhi => FuzzyMetric::ratio_phi(),
            MetricKind::Ratio => FuzzyMetric::ratio(),
        }
    }

    /// Same nearness function paired with a different t-norm. All three
    /// metrics are built for the product; other pairings may fail the
    /// triangle axiom.
    pub fn with_tnorm(self, tnorm: TNorm) -> Self {
        FuzzyMetric { tnorm, ..self }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    /// Checked evaluation.
    pub fn eval(&self, x: f64, y: f64, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain("t", t, "(0, inf)"));
        }
        for (what, v) in [("x", x), ("y", y)] {
            if !self.space.contains(v) {
                return Err(Error::Domain {
                    what,
                    value: v,
                    range: if self.space.lo_open { "(lo, hi]" } else { "[lo, hi]" },
                });
            }
        }
        Ok(self.nearness(x, y, t))
    }

    /// Least horizon `T₀` with `M(x, y, T₀) > 1 - eps` for every pair of grid
    /// points, or `None` when no rung of [`horizon_ladder`] achieves it. The
    /// first passing rung is refined by bisection against the rung below, so
    /// the answer approaches the infimum from above.
    pub fn uniform_horizon(&self, eps: f64, grid: &Grid) -> Result<Option<f64>> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::domain("eps", eps, "(0, 1)"));
        }
        let ok = |t: f64| self.grid_infimum(grid, t) > 1.0 - eps;
        let mut below = 0.0;
        for rung in horizon_ladder() {
            if ok(rung) {
                let (mut lo, mut hi) = (below, rung);
                for _ in 0..crate::tnorm::BISECTION_DEPTH {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if ok(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Ok(Some(hi));
            }
            below = rung;
        }
        Ok(None)
    }

    /// `min M(x, y, t)` over pairs of grid points. For all three built-in
    /// metrics nearness only falls as the pair spreads apart, so the minimum
    /// sits at the two extreme grid points.
    pub fn grid_infimum(&self, grid: &Grid, t: f64) -> f64 {
        match (grid.points().first(), grid.points().last()) {
            (Some(&a), Some(&b)) => self.nearness(a, b, t),
            _ => 1.0,
        }
    }
}

impl Nearness for FuzzyMetric {
    #[inline]
    fn nearness(&self, x: f64, y: f64, t: f64) -> f64 {
        match self.kind {
            MetricKind::Standard => t / (t + (x - y).abs()),
            MetricKind::RatioPhi => {
                if x == y {
                    1.0
                } else {
                    ratio(x, y) * phi(t)
                }
            }
            MetricKind::Ratio => {
                if x == y {
                    1.0
                } else {
                    ratio(x, y)
                }
            }
        }
    }

    fn space(&self) -> Space {
        self.space
    }

    fn tnorm(&self) -> TNorm {
        self.tnorm
    }
}

impl<N: Nearness + ?Sized> Nearness for &N {
    fn nearness(&self, x: f64, y: f64, t: f64) -> f64 {
        (**self).nearness(x, y, t)
    }
    fn space(&self) -> Space {
        (**self).space()
    }
    fn tnorm(&self) -> TNorm {
        (**self).tnorm()
    }
}

/// Open ball `B(center, radius, horizon)` or closed ball `B[center, radius, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ball {
    pub center: f64,
    pub radius: f64,
    pub horizon: f64,
    pub closed: bool,
}

impl Ball {
    pub fn open(center: f64, radius: f64, horizon: f64) -> Result<Self> {
        Ball::new(center, radius, horizon, false)
    }

    pub fn closed(center: f64, radius: f64, horizon: f64) -> Result<Self> {
        Ball::new(center, radius, horizon, true)
    }

    fn new(center: f64, radius: f64, horizon: f64, closed: bool) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::domain("radius", radius, "(0, 1)"));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::domain("horizon", horizon, "(0, inf)"));
        }
        Ok(Ball {
            center,
            radius,
            horizon,
            closed,
        })
    }

    /// Exact membership: `M > 1 - r` when open, `M ≥ 1 - r` when closed.
    pub fn contains(&self, m: &impl Nearness, y: f64) -> bool {
        let v = m.nearness(self.center, y, self.horizon);
        if self.closed {
            v >= 1.0 - self.radius
        } else {
            v > 1.0 - self.radius
        }
    }

    /// Inclusive index range of the grid points inside the ball.
    pub fn grid_range(&self, m: &impl Nearness, grid: &Grid) -> Option<(usize, usize)> {
        grid.neighbourhood(self.center, |y| self.contains(m, y))
    }
}

pub fn ball_membership(m: &impl Nearness, ball: &Ball, y: f64) -> bool {
    ball.contains(m, y)
}

/// Finite-prefix convergence proxy: true when every state in the final half of
/// `seq` is within `eps` of `limit` at each of the given horizons.
pub fn converges(m: &impl Nearness, seq: &[f64], limit: f64, eps: f64, horizons: &[f64]) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::Precondition("converges needs a nonempty sequence".into()));
    }
    let tail = &seq[seq.len() / 2..];
    Ok(tail
        .iter()
        .all(|&x| horizons.iter().all(|&t| m.nearness(x, limit, t) > 1.0 - eps)))
}
