//! δ-F-chains as paths in the ε-net transition graph.
//!
//! Nodes are grid points plus the query endpoints. There is an edge `u → v`
//! when `M(f(u), v, t0) > 1 - delta`. Edges are never stored: the successors
//! of `u` form one contiguous run of the sorted node list, found by binary
//! search, because every ball of the built-in metrics is an interval.

use serde::Serialize;

use super::{OrbitSequence, Provenance};
use crate::error::{Error, Result};
use crate::fuzzy_metric::Nearness;
use crate::space::Grid;
use crate::systems::Dynamics;

pub struct TransitionGraph<'a, M, F> {
    m: &'a M,
    delta: f64,
    t0: f64,
    nodes: Grid,
    images: Vec<f64>,
    _map: std::marker::PhantomData<&'a F>,
}

impl<'a, M: Nearness, F: Dynamics> TransitionGraph<'a, M, F> {
    /// Returns the graph and the node indices of `extra`.
    pub fn new(f: &'a F, m: &'a M, delta: f64, t0: f64, grid: &Grid, extra: &[f64]) -> (Self, Vec<usize>) {
        let (nodes, idx) = grid.with_points(extra);
        let images = nodes.points().iter().map(|&u| f.apply(u)).collect();
        (
            TransitionGraph {
                m,
                delta,
                t0,
                nodes,
                images,
                _map: std::marker::PhantomData,
            },
            idx,
        )
    }

    pub fn nodes(&self) -> &[f64] {
        self.nodes.points()
    }

    /// Inclusive range of successors of node `u`.
    pub fn successors(&self, u: usize) -> Option<(usize, usize)> {
        let fu = self.images[u];
        self.nodes
            .neighbourhood(fu, |v| self.m.nearness(fu, v, self.t0) > 1.0 - self.delta)
    }

    /// One BFS layer: every node reachable in one step from `layer`.
    fn step(&self, layer: &[bool]) -> Vec<bool> {
        let n = layer.len();
        let mut diff = vec![0i64; n + 1];
        for u in (0..n).filter(|&u| layer[u]) {
            if let Some((a, b)) = self.successors(u) {
                diff[a] += 1;
                diff[b + 1] -= 1;
            }
        }
        let mut acc = 0;
        diff[..n]
            .iter()
            .map(|d| {
                acc += d;
                acc > 0
            })
            .collect()
    }
}

fn check_endpoints(f: &impl Dynamics, x: f64, y: f64) -> Result<()> {
    let dom = f.domain();
    for v in [x, y] {
        if !dom.contains(v) {
            return Err(Error::domain("chain endpoint", v, "the map's domain"));
        }
    }
    Ok(())
}

/// Shortest δ-F-chain (at least one step) from `x` to `y` over the grid, or
/// `None`. Frontiers are expanded in increasing node order, so each node's
/// parent is the smallest-valued predecessor in the previous layer.
pub fn chain_search(
    x: f64,
    y: f64,
    f: &impl Dynamics,
    m: &impl Nearness,
    delta: f64,
    t0: f64,
    grid: &Grid,
) -> Result<Option<OrbitSequence>> {
    check_endpoints(f, x, y)?;
    let (graph, idx) = TransitionGraph::new(f, m, delta, t0, grid, &[x, y]);
    let (src, dst) = (idx[0], idx[1]);
    let n = graph.nodes().len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut frontier = vec![src];
    let mut steps = 0;
    while !frontier.is_empty() {
        steps += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            if let Some((a, b)) = graph.successors(u) {
                for v in a..=b {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = u;
                        next.push(v);
                    }
                }
            }
        }
        if seen[dst] {
            let mut path = Vec::with_capacity(steps + 1);
            let mut node = dst;
            for _ in 0..steps {
                path.push(graph.nodes()[node]);
                node = parent[node];
            }
            debug_assert_eq!(node, src);
            path.push(x);
            path.reverse();
            return Ok(Some(OrbitSequence::new(path, Provenance::Constructed)?));
        }
        next.sort_unstable();
        frontier = next;
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingReport {
    /// Chain lengths `1 ≤ n ≤ n_max` realised from `x` to `y`.
    pub lengths: Vec<usize>,
    /// Least `N₀` with every length in `[N₀, n_max]` realised.
    pub n0: Option<usize>,
    pub n_max: usize,
    pub delta: f64,
    pub t0: f64,
    pub grid_step: f64,
}

impl MixingReport {
    /// Cofinite within the window: the realised tail covers at least the
    /// upper half of `1..=n_max`.
    pub fn is_cofinite(&self) -> bool {
        self.n0.is_some_and(|n0| 2 * n0 <= self.n_max + 1)
    }
}

/// Layered BFS over the transition graph; layer `n` holds every node that
/// ends some δ-F-chain of length exactly `n` from `x`.
#[allow(clippy::too_many_arguments)]
pub fn chain_mixing_check(
    x: f64,
    y: f64,
    f: &impl Dynamics,
    m: &impl Nearness,
    delta: f64,
    t0: f64,
    grid: &Grid,
    n_max: usize,
) -> Result<MixingReport> {
    check_endpoints(f, x, y)?;
    let (graph, idx) = TransitionGraph::new(f, m, delta, t0, grid, &[x, y]);
    let (src, dst) = (idx[0], idx[1]);
    let mut layer = vec![false; graph.nodes().len()];
    layer[src] = true;
    let mut lengths = Vec::new();
    for n in 1..=n_max {
        layer = graph.step(&layer);
        if layer[dst] {
            lengths.push(n);
        }
        if !layer.iter().any(|&b| b) {
            break;
        }
    }
    Ok(MixingReport {
        n0: tail_start(&lengths, n_max),
        lengths,
        n_max,
        delta,
        t0,
        grid_step: grid.step(),
    })
}

/// Least `N₀` such that `[N₀, n_max] ⊆ hits`, for sorted `hits`.
pub(crate) fn tail_start(hits: &[usize], n_max: usize) -> Option<usize> {
    if hits.last() != Some(&n_max) {
        return None;
    }
    let mut n0 = n_max;
    for w in hits.windows(2).rev() {
        if w[1] == w[0] + 1 {
            n0 = w[0];
        } else {
            break;
        }
    }
    Some(n0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy_metric::FuzzyMetric;
    use crate::orbits::validate_f_pseudo_orbit;
    use crate::space::Space;
    use crate::systems::{example43_map, tent, Beta, Coeff};

    #[test]
    fn tail_start_cases() {
        assert_eq!(tail_start(&[1, 2, 3], 3), Some(1));
        assert_eq!(tail_start(&[1, 3, 4, 5], 5), Some(3));
        assert_eq!(tail_start(&[1, 3, 4], 5), None);
        assert_eq!(tail_start(&[], 5), None);
    }

    #[test]
    fn fixed_point_chain_has_length_one() {
        let f = example43_map();
        let grid = Grid::uniform(Space::unit_half_open(), 1e-2).unwrap();
        let c = chain_search(0.5, 0.5, &f, &FuzzyMetric::ratio_phi(), 0.05, 1.0, &grid)
            .unwrap()
            .unwrap();
        assert_eq!(c.states, vec![0.5, 0.5]);
        let r = chain_mixing_check(0.5, 0.5, &f, &FuzzyMetric::ratio_phi(), 0.05, 1.0, &grid, 20).unwrap();
        assert_eq!(r.lengths, (1..=20).collect::<Vec<_>>());
        assert_eq!(r.n0, Some(1));
    }

    #[test]
    fn example43_cannot_descend() {
        let f = example43_map();
        let grid = Grid::uniform(Space::unit_half_open(), 1e-3).unwrap();
        let m = FuzzyMetric::ratio_phi();
        assert!(chain_search(0.9, 0.1, &f, &m, 0.05, 1.0, &grid).unwrap().is_none());
        let r = chain_mixing_check(0.9, 0.1, &f, &m, 0.05, 1.0, &grid, 40).unwrap();
        assert!(r.lengths.is_empty());
        assert!(!r.is_cofinite());
    }

    #[test]
    fn tent_chain_is_valid_pseudo_orbit() {
        let f = tent(Beta(Coeff::Real(2.0))).unwrap();
        let m = FuzzyMetric::standard(Space::unit_closed());
        let grid = Grid::uniform(Space::unit_closed(), 1e-3).unwrap();
        let c = chain_search(0.123, 0.877, &f, &m, 0.1, 1.0, &grid).unwrap().unwrap();
        assert_eq!(c.states[0], 0.123);
        assert_eq!(*c.states.last().unwrap(), 0.877);
        assert!(validate_f_pseudo_orbit(&c, &f, &m, 0.1, 1.0).is_empty());
    }

    #[test]
    fn successors_match_brute_force() {
        let f = example43_map();
        let grid = Grid::uniform(Space::unit_half_open(), 1e-2).unwrap();
        for m in [
            FuzzyMetric::ratio_phi(),
            FuzzyMetric::ratio(),
            FuzzyMetric::standard(Space::unit_half_open()),
        ] {
            let (g, _) = TransitionGraph::new(&f, &m, 0.07, 0.8, &grid, &[]);
            for u in 0..g.nodes().len() {
                let fu = f.apply(g.nodes()[u]);
                let brute: Vec<usize> = (0..g.nodes().len())
                    .filter(|&v| m.nearness(fu, g.nodes()[v], 0.8) > 1.0 - 0.07)
                    .collect();
                let got: Vec<usize> = g.successors(u).map_or(vec![], |(a, b)| (a..=b).collect());
                assert_eq!(got, brute);
            }
        }
    }
}
