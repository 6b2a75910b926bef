use rayon::prelude::*;
use serde::Serialize;

use super::{horizon_ladder, Ball, Nearness};
use crate::error::{Error, Result};
use crate::space::Grid;
use crate::systems::Dynamics;

/// How many halvings of `delta` the certificate search tries below `eps`.
const DELTA_HALVINGS: i32 = 40;

/// Outcome of [`certify_fuzzy_continuity`].
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    pub certified: bool,
    pub eps: f64,
    pub t: f64,
    /// The `(delta, t')` pair that worked, if any.
    pub delta: Option<f64>,
    pub t_prime: Option<f64>,
    /// `(x, x0, M(f(x), f(x0), t))` for the last candidate tried, when none worked.
    pub counterexample: Option<(f64, f64, f64)>,
    pub candidates_tried: usize,
    pub grid_points: usize,
    pub grid_step: f64,
}

/// Searches for a uniform `(delta, t')` such that, for every pair of grid
/// points, `M(x, x0, t') > 1 - delta` implies `M(f(x), f(x0), t) > 1 - eps`.
///
/// Candidates run `delta = eps · 2^-j` outermost; for each `delta` the horizon
/// `t' = t` is tried first, then ladder rungs below `t` in decreasing order.
pub fn certify_fuzzy_continuity(
    m: &impl Nearness,
    f: &impl Dynamics,
    eps: f64,
    t: f64,
    grid: &Grid,
) -> Result<ContinuityReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps", eps, "(0, 1)"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "(0, inf)"));
    }
    let images: Vec<f64> = grid.points().iter().map(|&x| f.apply(x)).collect();
    let horizons: Vec<f64> = std::iter::once(t)
        .chain(horizon_ladder().rev().filter(|&r| r < t))
        .collect();

    let mut tried = 0;
    let mut last_failure = None;
    for j in 0..=DELTA_HALVINGS {
        let delta = eps * (2.0_f64).powi(-j);
        for &tp in &horizons {
            tried += 1;
            match first_violation(m, grid, &images, eps, t, delta, tp) {
                None => {
                    return Ok(ContinuityReport {
                        certified: true,
                        eps,
                        t,
                        delta: Some(delta),
                        t_prime: Some(tp),
                        counterexample: None,
                        candidates_tried: tried,
                        grid_points: grid.len(),
                        grid_step: grid.step(),
                    })
                }
                Some(c) => last_failure = Some(c),
            }
        }
    }
    Ok(ContinuityReport {
        certified: false,
        eps,
        t,
        delta: None,
        t_prime: None,
        counterexample: last_failure,
        candidates_tried: tried,
        grid_points: grid.len(),
        grid_step: grid.step(),
    })
}

fn first_violation(
    m: &impl Nearness,
    grid: &Grid,
    images: &[f64],
    eps: f64,
    t: f64,
    delta: f64,
    tp: f64,
) -> Option<(f64, f64, f64)> {
    let pts = grid.points();
    (0..pts.len()).into_par_iter().find_map_first(|i0| {
        let ball = Ball {
            center: pts[i0],
            radius: delta,
            horizon: tp,
            closed: false,
        };
        let (a, b) = ball.grid_range(m, grid)?;
        (a..=b).find_map(|i| {
            let v = m.nearness(images[i], images[i0], t);
            (v <= 1.0 - eps).then_some((pts[i], pts[i0], v))
        })
    })
}

/// Outcome of a pairwise inequality sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PairwiseReport {
    pub pairs: usize,
    pub failures: usize,
    /// Lowest (row, column) pair where the bound fails.
    pub first_counterexample: Option<(f64, f64)>,
}

impl PairwiseReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `bound(x, y)` for every ordered pair of grid points.
pub fn pairwise_bound(grid: &Grid, bound: impl Fn(f64, f64) -> bool + Sync) -> PairwiseReport {
    let pts = grid.points();
    let rows: Vec<(usize, Option<(f64, f64)>)> = pts
        .par_iter()
        .map(|&x| {
            let mut count = 0;
            let mut first = None;
            for &y in pts {
                if !bound(x, y) {
                    count += 1;
                    first.get_or_insert((x, y));
                }
            }
            (count, first)
        })
        .collect();
    PairwiseReport {
        pairs: pts.len() * pts.len(),
        failures: rows.iter().map(|r| r.0).sum(),
        first_counterexample: rows.iter().find_map(|r| r.1),
    }
}

fn min_over_max(a: f64, b: f64) -> f64 {
    a.min(b) / a.max(b)
}

/// `min{f(x), f(y)} / max{f(x), f(y)} > (1/10) · min{x, y} / max{x, y}` over
/// all grid pairs, for the three-piece map.
pub fn example43_ratio_modulus(f: &impl Dynamics, grid: &Grid) -> PairwiseReport {
    pairwise_bound(grid, |x, y| {
        min_over_max(f.apply(x), f.apply(y)) > 0.1 * min_over_max(x, y)
    })
}

/// `M₁(g(x), g(y)) > ½ · M₁(f(x), f(y))` over all grid pairs, `M₁` being the
/// horizon-free ratio metric.
pub fn perturbation_ratio_modulus(
    m: &impl Nearness,
    f: &impl Dynamics,
    g: &impl Dynamics,
    grid: &Grid,
) -> PairwiseReport {
    pairwise_bound(grid, |x, y| {
        m.nearness(g.apply(x), g.apply(y), 1.0) > 0.5 * m.nearness(f.apply(x), f.apply(y), 1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy_metric::FuzzyMetric;
    use crate::space::Space;
    use crate::systems::{example43_map, tent, Beta, Coeff};

    struct Identity;
    impl Dynamics for Identity {
        fn apply(&self, x: f64) -> f64 {
            x
        }
        fn domain(&self) -> Space {
            Space::unit_closed()
        }
    }

    #[test]
    fn identity_certified_at_first_candidate() {
        let grid = Grid::uniform(Space::unit_closed(), 1e-2).unwrap();
        let m = FuzzyMetric::standard(Space::unit_closed());
        for &eps in &[0.01, 0.3] {
            let r = certify_fuzzy_continuity(&m, &Identity, eps, 0.7, &grid).unwrap();
            assert!(r.certified);
            assert_eq!(r.delta, Some(eps));
            assert_eq!(r.t_prime, Some(0.7));
            assert_eq!(r.candidates_tried, 1);
        }
    }

    #[test]
    fn tent_certified_under_standard_metric() {
        let grid = Grid::uniform(Space::unit_closed(), 1e-3).unwrap();
        let m = FuzzyMetric::standard(Space::unit_closed());
        let f = tent(Beta(Coeff::Real(2.0))).unwrap();
        let r = certify_fuzzy_continuity(&m, &f, 0.1, 1.0, &grid).unwrap();
        assert!(r.certified, "{r:?}");
        // Lipschitz 2 means delta = eps cannot work at t' = t
        assert!(r.candidates_tried > 1);
    }

    #[test]
    fn example43_modulus_holds_on_coarse_grid() {
        let grid = Grid::uniform(Space::unit_half_open(), 1e-2).unwrap();
        assert!(example43_ratio_modulus(&example43_map(), &grid).holds());
    }

    #[test]
    fn pairwise_reports_lowest_counterexample() {
        let grid = Grid::uniform(Space::unit_closed(), 0.25).unwrap();
        let r = pairwise_bound(&grid, |x, y| x + y < 1.2);
        assert_eq!(r.pairs, 25);
        // (0.25,1), (0.5,0.75), (0.5,1), (0.75,0.5), (0.75,0.75), (0.75,1), (1,0.25), (1,0.5), (1,0.75), (1,1)
        assert_eq!(r.failures, 10);
        assert_eq!(r.first_counterexample, Some((0.25, 1.0)));
    }

    #[test]
    fn ratio_metric_certified_for_example43() {
        let grid = Grid::uniform(Space::unit_half_open(), 1e-3).unwrap();
        let r = certify_fuzzy_continuity(&FuzzyMetric::ratio(), &example43_map(), 0.2, 1.0, &grid).unwrap();
        assert!(r.certified, "{r:?}");
    }
}
