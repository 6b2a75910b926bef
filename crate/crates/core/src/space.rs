//! Interval state spaces and the uniform grids laid over them.

use serde::Serialize;

use crate::error::{Error, Result};

/// A bounded real interval `[lo, hi]`, or `(lo, hi]` when `lo_open`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Space {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
}

impl Space {
    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Precondition(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Space { lo, hi, lo_open: false })
    }

    /// The half-open unit interval `(0, 1]`.
    pub const fn unit_half_open() -> Self {
        Space {
            lo: 0.0,
            hi: 1.0,
            lo_open: true,
        }
    }

    pub const fn unit_closed() -> Self {
        Space {
            lo: 0.0,
            hi: 1.0,
            lo_open: false,
        }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        above && x <= self.hi
    }

    pub fn diameter(&self) -> f64 {
        self.hi - self.lo
    }

    /// Maps `u ∈ [0, 1)` onto the space, never hitting an open endpoint.
    pub fn sample(&self, u: f64) -> f64 {
        if self.lo_open {
            self.hi - (self.hi - self.lo) * u
        } else {
            self.lo + (self.hi - self.lo) * u
        }
    }

    pub fn describe(&self) -> String {
        let open = if self.lo_open { '(' } else { '[' };
        format!("{open}{}, {}]", self.lo, self.hi)
    }
}

/// Sorted, deduplicated sample points of a [`Space`].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    step: f64,
}

impl Grid {
    /// Uniform grid with spacing `step`. An open lower endpoint is skipped, so
    /// the grid then starts one step above it.
    pub fn uniform(space: Space, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::domain("grid step", step, "(0, inf)"));
        }
        let n = (space.diameter() / step).round().max(1.0) as usize;
        let first = usize::from(space.lo_open);
        let width = space.diameter();
        let points = (first..=n)
            .map(|k| {
                if k == n {
                    space.hi
                } else {
                    space.lo + width * (k as f64) / (n as f64)
                }
            })
            .collect();
        Ok(Grid {
            points,
            step: width / n as f64,
        })
    }

    /// Builds a grid from arbitrary points (sorted and deduplicated).
    pub fn from_points(mut points: Vec<f64>, step: f64) -> Self {
        points.sort_by(f64::total_cmp);
        points.dedup();
        Grid { points, step }
    }

    /// Returns a copy with `extra` inserted, plus the indices the extras ended up at.
    pub fn with_points(&self, extra: &[f64]) -> (Grid, Vec<usize>) {
        let mut pts = self.points.clone();
        pts.extend_from_slice(extra);
        let grid = Grid::from_points(pts, self.step);
        let idx = extra.iter().map(|&x| grid.index_of(x).unwrap()).collect();
        (grid, idx)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.points.binary_search_by(|p| p.total_cmp(&x)).ok()
    }

    /// Inclusive index range of grid points `v` with `inside(v)`, assuming the
    /// predicate is unimodal around `center`: false-then-true below it and
    /// true-then-false above it. This is how every ball of the three built-in
    /// metrics looks on the line.
    pub fn neighbourhood(&self, center: f64, inside: impl Fn(f64) -> bool) -> Option<(usize, usize)> {
        let pts = &self.points;
        let split = pts.partition_point(|&p| p < center);
        let below = &pts[..split];
        let above = &pts[split..];
        let lo = below.partition_point(|&p| !inside(p));
        let hi_len = above.partition_point(|&p| inside(p));
        if lo == split && hi_len == 0 {
            return None;
        }
        Some((lo, split + hi_len - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_open_grid_skips_zero() {
        let g = Grid::uniform(Space::unit_half_open(), 1e-4).unwrap();
        assert_eq!(g.len(), 10_000);
        assert!(g.points()[0] > 0.0);
        assert_eq!(*g.points().last().unwrap(), 1.0);
    }

    #[test]
    fn closed_grid_has_both_ends() {
        let g = Grid::uniform(Space::unit_closed(), 1e-3).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[500], 0.5);
        assert_eq!(*g.points().last().unwrap(), 1.0);
    }

    #[test]
    fn neighbourhood_matches_scan() {
        let g = Grid::uniform(Space::unit_closed(), 1e-2).unwrap();
        for &(c, r) in &[(0.5, 0.1), (0.0, 0.05), (1.0, 0.2), (0.333, 0.0001), (0.505, 0.02)] {
            let inside = |v: f64| (v - c).abs() < r;
            let scan: Vec<usize> = (0..g.len()).filter(|&i| inside(g.points()[i])).collect();
            let got = g.neighbourhood(c, inside);
            match got {
                None => assert!(scan.is_empty(), "c={c} r={r}"),
                Some((a, b)) => assert_eq!((a..=b).collect::<Vec<_>>(), scan, "c={c} r={r}"),
            }
        }
    }

    #[test]
    fn with_points_reports_indices() {
        let g = Grid::uniform(Space::unit_closed(), 0.25).unwrap();
        let (g2, idx) = g.with_points(&[0.3, 0.5]);
        assert_eq!(g2.len(), 6);
        assert_eq!(g2.points()[idx[0]], 0.3);
        assert_eq!(g2.points()[idx[1]], 0.5);
    }
}
