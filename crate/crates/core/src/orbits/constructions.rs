use super::{OrbitSequence, Provenance};
use crate::error::{Error, Result};
use crate::systems::Dynamics;

/// `(a_k, b_k)` from `a₀ = 0, b₀ = 1, a_k = b_{k-1} + k, b_k = a_k + k + 1`.
pub fn skeleton_pairs() -> impl Iterator<Item = (usize, usize)> {
    std::iter::successors(Some((0usize, 0usize, 1usize)), |&(k, _, b)| {
        let k = k + 1;
        let a = b + k;
        Some((k, a, a + k + 1))
    })
    .map(|(_, a, b)| (a, b))
}

/// `{a_k, b_k} ∩ [0, n)` as an index set over `0..n`.
pub fn skeleton(n: usize) -> super::IndexSet {
    let mut indices = Vec::new();
    for (a, b) in skeleton_pairs() {
        if a >= n {
            break;
        }
        indices.push(a);
        if b < n {
            indices.push(b);
        }
    }
    super::IndexSet { indices, universe: n }
}

/// Interleaves true orbit segments of `x` and `y` along the skeleton blocks.
///
/// State `0` is `x`. For `a_k < i ≤ b_k` the state is `f^{i - a_k}(x)`, and for
/// `b_k < i ≤ a_{k+1}` it is `f^{i - b_k}(y)`. Every skeleton index closes a
/// block, so each step `i → i + 1` is exact unless `i` is a skeleton index.
pub fn build_transitivity_orbit(x: f64, y: f64, f: &impl Dynamics, length: usize) -> Result<OrbitSequence> {
    let dom = f.domain();
    if !dom.contains(x) || !dom.contains(y) {
        return Err(Error::Precondition(format!(
            "{x} or {y} lies outside {}",
            dom.describe()
        )));
    }
    if length == 0 {
        return Err(Error::Precondition("length must be positive".into()));
    }
    let mut states = Vec::with_capacity(length);
    states.push(x);
    let push_segment = |seed: f64, count: usize, states: &mut Vec<f64>| {
        let mut cur = seed;
        for _ in 0..count {
            if states.len() == length {
                return;
            }
            cur = f.apply(cur);
            states.push(cur);
        }
    };
    let mut pairs = skeleton_pairs().peekable();
    while states.len() < length {
        let (a, b) = pairs.next().unwrap();
        push_segment(x, b - a, &mut states);
        let next_a = pairs.peek().unwrap().0;
        push_segment(y, next_a - b, &mut states);
    }
    OrbitSequence::new(states, Provenance::Constructed)
}

/// `z_{k·i + l} = fˡ(xᵢ)` for `0 ≤ l < k`.
pub fn interleave_for_power(seq: &OrbitSequence, k: usize, f: &impl Dynamics) -> Result<OrbitSequence> {
    if k == 0 {
        return Err(Error::Precondition("interleave needs k ≥ 1".into()));
    }
    let states = seq.states.iter().flat_map(|&x| f.orbit(x, k - 1)).collect();
    OrbitSequence::new(states, seq.provenance)
}
